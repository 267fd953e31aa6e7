//! Seed derivation helpers shared by the Monte Carlo paths.

/// SplitMix64 finalizer. Good avalanche, cheap, and stable across platforms,
/// which is what the reproducibility contract needs.
#[inline]
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive an independent stream seed from a master seed and a counter.
#[inline]
pub(crate) fn substream(master: u64, index: u64) -> u64 {
    mix64(master ^ mix64(index.wrapping_add(1)))
}

/// Uniform value in `[0, 1)` from a 64-bit hash (53 mantissa bits).
#[inline]
pub(crate) fn u01(h: u64) -> f64 {
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
