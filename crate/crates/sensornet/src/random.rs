//! Uniform random deployments: `n` i.i.d. uniform nodes on the unit square,
//! links up to radius `r` that each succeed independently with probability
//! `p`.
//!
//! Coverage gets a union-bound lower bound over a virtual grid and the same
//! packing upper bound as the grid model (node positions are uniform, so
//! the ball measures are exact). Disconnectivity gets the
//! inclusion-exclusion lower bound, an upper bound truncated after the
//! isolated-pair term (the remaining component sizes are computationally out
//! of reach, and demonstrably negligible in the regime of interest), the
//! single-integral estimate that both bounds share, its k-connectivity
//! generalization, and the double-exponential asymptotic baseline.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::geometry::{clipped_disk_area, clipped_lens_area, Disk, Point, HALF};
use crate::grid::VirtualGrid;
use crate::quadrature::{integrate_octant_symmetric, mc_pair_integral, QuadResult};
use crate::util::{mix64, substream};
use crate::{Error, Result};

/// Samples used for each inner lens-area estimate inside the pair
/// integrals. The integrand is raised to the `n-2` power afterwards, so the
/// induced bias scales with the inner variance; 512 keeps it around a
/// percent of the term itself, well under the Monte Carlo noise budget.
const LENS_SAMPLES: u64 = 512;

/// Default absolute tolerance for the quadrature-backed estimates.
pub const DEFAULT_TOL: f64 = 1e-6;

/// A random-deployment instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandSpec {
    pub n: u64,
    /// Communication / sensing radius.
    pub r: f64,
    /// Link success probability.
    pub p: f64,
}

impl RandSpec {
    pub fn new(n: u64, r: f64, p: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("node count must be at least 1".into()));
        }
        if !(r >= 0.0) {
            return Err(Error::InvalidParameter(format!("radius {r} must be nonnegative")));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidParameter(format!("link probability {p} not in (0, 1]")));
        }
        Ok(RandSpec { n, r, p })
    }
}

/// Union-bound lower bound on the coverage probability of `n` uniform
/// nodes with radius `r` (taken from the virtual grid's construction
/// radius): `max(0, 1 - sum_u (1 - v(B(u, r')))^n)`.
pub fn rand_cov_lower(n: u64, vg: &VirtualGrid) -> Result<f64> {
    let rp = vg.deflated_radius();
    if rp <= 0.0 {
        return Err(Error::DeflatedRadiusNonpositive { radius: rp, l: vg.l() });
    }
    let mut miss_sum = 0.0f64;
    for u in vg.points() {
        let hit = clipped_disk_area(Disk::new(u, rp));
        miss_sum += (1.0 - hit).max(0.0).powf(n as f64);
    }
    Ok((1.0 - miss_sum).clamp(0.0, 1.0))
}

/// Packing upper bound on the coverage probability of `n` uniform nodes:
/// corner, edge, and interior test points spaced more than `2r` apart with
/// ball measures `pi r^2 / 4`, `pi r^2 / 2`, `pi r^2`.
pub fn rand_cov_upper(n: u64, r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    let disk = std::f64::consts::PI * r * r;
    let nf = n as f64;
    let corner = 1.0 - (1.0 - disk / 4.0).clamp(0.0, 1.0).powf(nf);
    if corner <= 0.0 {
        return 0.0;
    }
    let m = if r >= HALF { 0u64 } else { ((1.0 - 2.0 * r) / (2.0 * r)).floor().max(0.0) as u64 };
    let mut log_bound = 4.0 * corner.ln();
    if m > 0 {
        let edge = 1.0 - (1.0 - disk / 2.0).clamp(0.0, 1.0).powf(nf);
        let interior = 1.0 - (1.0 - disk).clamp(0.0, 1.0).powf(nf);
        if edge <= 0.0 || interior <= 0.0 {
            return 0.0;
        }
        log_bound += 4.0 * m as f64 * edge.ln() + (m * m) as f64 * interior.ln();
    }
    log_bound.exp().clamp(0.0, 1.0)
}

/// Probability that a fixed node at `x` has no working link to any of the
/// `others` uniform nodes.
#[inline]
fn isolation_integrand(x: Point, r: f64, p: f64, others: f64) -> f64 {
    let hit = clipped_disk_area(Disk::new(x, r)) * p;
    (1.0 - hit).max(0.0).powf(others)
}

/// Estimate of the disconnectivity probability:
/// `n * integral over S0 of (1 - v(B(X, r)) p)^(n-1)`.
///
/// This is the expected number of isolated nodes, which dominates the
/// disconnection modes when the network is mostly connected. The raw value
/// is returned uncapped (it exceeds 1 in degenerate regimes such as `r = 0`,
/// where it equals `n`); `converged` reflects the quadrature outcome.
pub fn disc_estimate(n: u64, r: f64, p: f64, tol: f64) -> Result<QuadResult> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2 nodes, got {n}")));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!("link probability {p} not in (0, 1]")));
    }
    if !(r >= 0.0) {
        return Err(Error::InvalidParameter(format!("radius {r} must be nonnegative")));
    }
    let others = (n - 1) as f64;
    let q = integrate_octant_symmetric(|x| isolation_integrand(x, r, p, others), tol / n as f64)?;
    let scaled = QuadResult {
        value: n as f64 * q.value,
        error_estimate: n as f64 * q.error_estimate,
        evaluations: q.evaluations,
        converged: q.converged,
    };
    if !scaled.converged {
        return Err(Error::QuadratureNotConverged {
            value: scaled.value,
            error_estimate: scaled.error_estimate,
            evaluations: scaled.evaluations,
        });
    }
    Ok(scaled)
}

/// Probability that neither of two fixed nodes at `x`, `y` links to any of
/// the `n - 2` remaining nodes: one uniform node avoids both working balls.
#[inline]
fn pair_avoidance_base(x: Point, y: Point, r: f64, p: f64, seed: u64) -> f64 {
    let vx = clipped_disk_area(Disk::new(x, r));
    let vy = clipped_disk_area(Disk::new(y, r));
    let lens = clipped_lens_area(Disk::new(x, r), Disk::new(y, r), LENS_SAMPLES, seed).value;
    (1.0 - p * vx - p * vy + p * p * lens).clamp(0.0, 1.0)
}

/// Deterministic per-pair seed for the inner lens estimate, derived from
/// the sample coordinates so the outer integral stays a pure function of
/// `(inputs, seed)` no matter how samples are scheduled.
#[inline]
fn pair_seed(master: u64, x: Point, y: Point) -> u64 {
    let h = mix64(master ^ x.x.to_bits())
        ^ mix64(x.y.to_bits().rotate_left(17))
        ^ mix64(y.x.to_bits().rotate_left(31))
        ^ mix64(y.y.to_bits().rotate_left(47));
    mix64(h)
}

/// A Monte Carlo bound value with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McBound {
    pub value: f64,
    pub std_err: f64,
}

/// Inclusion-exclusion lower bound on the disconnectivity probability:
/// the isolated-node term minus the pair correction
/// `C(n,2) * E[(1 - v_x p - v_y p + v_xy p^2)^(n-2)]`, clamped at zero.
pub fn disc_lower_bound(n: u64, r: f64, p: f64, pair_samples: u64, seed: u64) -> Result<McBound> {
    let a1 = disc_estimate(n, r, p, DEFAULT_TOL)?;
    let exponent = (n - 2) as f64;
    let pair = mc_pair_integral(
        |x, y| pair_avoidance_base(x, y, r, p, pair_seed(seed, x, y)).powf(exponent),
        pair_samples,
        seed,
    );
    let pairs = (n * (n - 1) / 2) as f64;
    Ok(McBound {
        value: (a1.value - pairs * pair.value).max(0.0),
        std_err: pairs * pair.error_estimate,
    })
}

/// The isolated-pair term of the disconnectivity upper bound:
/// `C(n,2) * Pr{two fixed nodes form a connected component}`.
///
/// The two nodes must lie within `r`, hold their mutual link (probability
/// `p`), and be avoided by everyone else. Sampled with the second node
/// drawn uniformly in the first node's disk, which removes the `d <= r`
/// rejection without biasing the estimate.
pub fn isolated_pair_term(n: u64, r: f64, p: f64, pair_samples: u64, seed: u64) -> Result<McBound> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("pair term needs n >= 4, got {n}")));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!("link probability {p} not in (0, 1]")));
    }
    if r <= 0.0 {
        return Ok(McBound { value: 0.0, std_err: 0.0 });
    }
    let samples = pair_samples.max(1);
    let exponent = (n - 2) as f64;
    let disk = std::f64::consts::PI * r * r;
    const CHUNK: u64 = 8192;
    let n_chunks = samples.div_ceil(CHUNK);
    let partials: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * CHUNK;
            let hi = ((chunk + 1) * CHUNK).min(samples);
            let mut rng = ChaCha8Rng::seed_from_u64(substream(seed, chunk));
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in lo..hi {
                let x = Point::new(rng.gen::<f64>() - HALF, rng.gen::<f64>() - HALF);
                let theta = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
                let rho = r * rng.gen::<f64>().sqrt();
                let y = Point::new(x.x + rho * theta.cos(), x.y + rho * theta.sin());
                let v = if y.x.abs() <= HALF && y.y.abs() <= HALF {
                    disk * p * pair_avoidance_base(x, y, r, p, pair_seed(seed, x, y)).powf(exponent)
                } else {
                    0.0
                };
                sum += v;
                sum_sq += v * v;
            }
            (sum, sum_sq)
        })
        .collect();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for (s, s2) in partials {
        sum += s;
        sum_sq += s2;
    }
    let nf = samples as f64;
    let mean = sum / nf;
    let var = (sum_sq / nf - mean * mean).max(0.0);
    let pairs = (n * (n - 1) / 2) as f64;
    Ok(McBound { value: pairs * mean, std_err: pairs * (var / nf).sqrt() })
}

/// Estimate of the probability that the network is not k-connected:
/// `sum_{j=0}^{k-1} n C(n,j) * integral of v^j (1 - v)^(n-j-1)`, the
/// expected-count analogue of the isolated-node estimate for nodes of
/// degree below `k`. Link probability is 1 in this model.
pub fn kdisc_estimate(n: u64, r: f64, k: u32, tol: f64) -> Result<QuadResult> {
    if k == 0 || k as u64 >= n {
        return Err(Error::InvalidParameter(format!("need 1 <= k < n, got k={k}, n={n}")));
    }
    if !(r >= 0.0) {
        return Err(Error::InvalidParameter(format!("radius {r} must be nonnegative")));
    }
    let mut total = QuadResult { value: 0.0, error_estimate: 0.0, evaluations: 0, converged: true };
    let term_tol = tol / k as f64;
    // log C(n, j) + log n, built incrementally
    let mut log_coef = (n as f64).ln();
    for j in 0..k {
        if j > 0 {
            log_coef += ((n - j as u64 + 1) as f64 / j as f64).ln();
        }
        let jf = j as f64;
        let tail = (n - 1 - j as u64) as f64;
        let q = integrate_octant_symmetric(
            |x| {
                let v = clipped_disk_area(Disk::new(x, r));
                if v <= 0.0 {
                    return if j == 0 { log_coef.exp() } else { 0.0 };
                }
                if v >= 1.0 {
                    return 0.0;
                }
                (log_coef + jf * v.ln() + tail * (-v).ln_1p()).exp()
            },
            term_tol,
        )?;
        total.value += q.value;
        total.error_estimate += q.error_estimate;
        total.evaluations += q.evaluations;
        total.converged &= q.converged;
    }
    if !total.converged {
        return Err(Error::QuadratureNotConverged {
            value: total.value,
            error_estimate: total.error_estimate,
            evaluations: total.evaluations,
        });
    }
    Ok(total)
}

/// Asymptotic disconnectivity probability `1 - exp(-n exp(-n pi r^2))`,
/// evaluated in the log domain so values at the `1e-15` scale survive.
pub fn asymptotic_disc(n: u64, r: f64) -> f64 {
    let z = ((n as f64).ln() - n as f64 * std::f64::consts::PI * r * r).exp();
    -(-z).exp_m1()
}

/// Disconnectivity bounds and estimate for one parameter point.
///
/// `upper_truncated` is `a1 + a2` only: the later terms of the component
/// sum are computationally infeasible and at least an order of magnitude
/// smaller in the regime where disconnection is rare. The shared first term
/// doubles as the estimate. Raw (unclamped) values are kept; use
/// [`DiscBoundReport::clamped`] for presentation.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscBoundReport {
    pub n: u64,
    pub r: f64,
    pub p: f64,
    pub a1: f64,
    pub a1_error: f64,
    pub a2: f64,
    pub a2_std_err: f64,
    pub lower: f64,
    pub lower_std_err: f64,
    pub upper_truncated: f64,
    pub estimate: f64,
    /// Always true: the upper bound keeps only its first two terms.
    pub truncated: bool,
}

impl DiscBoundReport {
    pub fn clamp_lower(&self) -> f64 {
        self.lower.clamp(0.0, 1.0)
    }

    pub fn clamp_upper(&self) -> f64 {
        self.upper_truncated.clamp(0.0, 1.0)
    }

    pub fn clamp_estimate(&self) -> f64 {
        self.estimate.clamp(0.0, 1.0)
    }
}

/// Assemble the disconnectivity report (lower, truncated upper, estimate).
pub fn disc_report(
    n: u64,
    r: f64,
    p: f64,
    tol: f64,
    pair_samples: u64,
    seed: u64,
) -> Result<DiscBoundReport> {
    let a1 = disc_estimate(n, r, p, tol)?;
    let a2 = isolated_pair_term(n, r, p, pair_samples, seed)?;
    let lower = disc_lower_bound(n, r, p, pair_samples, seed)?;
    Ok(DiscBoundReport {
        n,
        r,
        p,
        a1: a1.value,
        a1_error: a1.error_estimate,
        a2: a2.value,
        a2_std_err: a2.std_err,
        lower: lower.value,
        lower_std_err: lower.std_err,
        upper_truncated: a1.value + a2.value,
        estimate: a1.value,
        truncated: true,
    })
}
