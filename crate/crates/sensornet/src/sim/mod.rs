//! Ground-truth Monte Carlo: seeded deployments, geometric graphs with link
//! failures, exact connectivity / k-connectivity / k-coverage decisions, and
//! a trial harness reporting frequencies with Wilson confidence intervals.
//!
//! Reproducibility contract: per-trial seeds derive from the master seed and
//! the trial index alone, per-pair link draws are hashes of the pair, and
//! trial successes are summed as integers. Results are therefore
//! bit-identical for any worker count, grid outcomes are constant while the
//! radius stays inside one breakpoint interval, and growing the radius never
//! turns a covered trial uncovered or a connected trial disconnected under a
//! shared seed.

mod connect;
mod coverage;
mod graph;

pub use connect::{is_connected, vertex_connectivity_at_least};
pub use coverage::is_k_covered;
pub use graph::{build_geometric_graph, Graph};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::geometry::{closed_within, Point, HALF};
use crate::grid::{lattice_coord, GridSpec};
use crate::random::RandSpec;
use crate::util::{mix64, substream};

use connect::UnionFind;
use graph::{cell_of, grid_dim, pair_allows};

/// 95% normal quantile used for the reported Wilson intervals.
pub const Z95: f64 = 1.959963984540054;
/// 99% quantile, for stricter acceptance checks.
pub const Z99: f64 = 2.5758293035489004;

const EDGE_SALT: u64 = 0x9D39_247E_3377_6D41;
const TRIAL_CHUNK: u64 = 1024;

/// What gets deployed each trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scenario {
    Grid(GridSpec),
    Random(RandSpec),
}

/// The event whose frequency is being estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    KCovered { k: u32 },
    Connected,
    Disconnected,
    KConnected { k: u32 },
}

impl Property {
    pub fn label(&self) -> String {
        match self {
            Property::KCovered { k } => format!("k-covered(k={k})"),
            Property::Connected => "connected".to_string(),
            Property::Disconnected => "disconnected".to_string(),
            Property::KConnected { k } => format!("k-connected(k={k})"),
        }
    }
}

/// Outcome of a batch of seeded trials.
#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
    pub property: String,
}

/// Wilson score interval; well behaved at the 0/1 ends where the
/// interesting regimes live.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // rounding can push the ends a few ulps past the estimate at 0 and 1
    (((center - half).max(0.0).min(p)), ((center + half).min(1.0).max(p)))
}

/// Seed of one trial, a pure function of the master seed and trial index.
#[inline]
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    substream(master, trial)
}

/// Each lattice node included independently with the activation probability.
pub fn sample_grid_activation(spec: &GridSpec, seed: u64) -> Vec<Point> {
    let s = spec.side();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for j in 0..s {
        for i in 0..s {
            if rng.gen::<f64>() < spec.p {
                out.push(Point::new(lattice_coord(i, s), lattice_coord(j, s)));
            }
        }
    }
    out
}

/// `n` i.i.d. uniform points on the unit square.
pub fn sample_uniform_nodes(n: u64, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let x = rng.gen::<f64>() - HALF;
            let y = rng.gen::<f64>() - HALF;
            Point::new(x, y)
        })
        .collect()
}

/// One trial's worth of reusable buffers.
struct Scratch {
    points: Vec<Point>,
    active_idx: Vec<u32>,
    active_mask: Vec<u64>,
    uf: UnionFind,
    bins: Vec<Vec<u32>>,
}

impl Scratch {
    fn new() -> Self {
        Scratch {
            points: Vec::new(),
            active_idx: Vec::new(),
            active_mask: Vec::new(),
            uf: UnionFind::new(0),
            bins: Vec::new(),
        }
    }
}

/// Radius expressed on the lattice: offsets (di, dj) reachable within `r`.
/// Only the forward half is kept; each unordered pair is joined once.
fn forward_lattice_offsets(s: u64, r: f64) -> Vec<(i32, i32)> {
    let n = (s * s) as f64;
    let r_sq = r * r;
    let mut offsets = Vec::new();
    let s = s as i32;
    for dj in 0..s {
        for di in -(s - 1)..s {
            if dj == 0 && di <= 0 {
                continue;
            }
            let m = (di * di + dj * dj) as f64;
            if closed_within(m / n, r_sq) {
                offsets.push((di, dj));
            }
        }
    }
    offsets
}

fn fill_grid_activation(spec: &GridSpec, seed: u64, scratch: &mut Scratch) {
    let s = spec.side();
    let n = spec.n as usize;
    scratch.active_idx.clear();
    scratch.active_mask.clear();
    scratch.active_mask.resize(n.div_ceil(64), 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = 0u32;
    for _j in 0..s {
        for _i in 0..s {
            if rng.gen::<f64>() < spec.p {
                scratch.active_idx.push(idx);
                scratch.active_mask[(idx / 64) as usize] |= 1u64 << (idx % 64);
            }
            idx += 1;
        }
    }
}

fn fill_grid_points(spec: &GridSpec, scratch: &mut Scratch) {
    let s = spec.side();
    scratch.points.clear();
    for &idx in &scratch.active_idx {
        let i = idx as u64 % s;
        let j = idx as u64 / s;
        scratch.points.push(Point::new(lattice_coord(i, s), lattice_coord(j, s)));
    }
}

fn fill_uniform(n: u64, seed: u64, scratch: &mut Scratch) {
    scratch.points.clear();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n {
        let x = rng.gen::<f64>() - HALF;
        let y = rng.gen::<f64>() - HALF;
        scratch.points.push(Point::new(x, y));
    }
}

/// Union-find connectivity of the active lattice nodes without building an
/// explicit graph; this is the path the piecewise-constant experiments hammer
/// with billions of trials.
fn grid_connected_trial(spec: &GridSpec, offsets: &[(i32, i32)], seed: u64, scratch: &mut Scratch) -> bool {
    fill_grid_activation(spec, seed, scratch);
    let active = scratch.active_idx.len();
    if active <= 1 {
        return true;
    }
    let s = spec.side() as i32;
    scratch.uf.reset(spec.n as usize);
    let mut components = active as u64;
    for &idx in &scratch.active_idx {
        let i = idx as i32 % s;
        let j = idx as i32 / s;
        for &(di, dj) in offsets {
            let (ni, nj) = (i + di, j + dj);
            if ni < 0 || ni >= s || nj >= s {
                continue;
            }
            let nidx = (nj * s + ni) as u32;
            if scratch.active_mask[(nidx / 64) as usize] >> (nidx % 64) & 1 == 1
                && scratch.uf.union(idx, nidx)
            {
                components -= 1;
                if components == 1 {
                    return true;
                }
            }
        }
    }
    components == 1
}

/// Union-find connectivity of one uniform deployment via a bucket grid.
fn random_connected_trial(spec: &RandSpec, seed: u64, scratch: &mut Scratch) -> bool {
    fill_uniform(spec.n, seed, scratch);
    let n = scratch.points.len();
    if n <= 1 {
        return true;
    }
    if spec.r <= 0.0 {
        return false;
    }
    let edge_seed = mix64(seed ^ EDGE_SALT);
    let dim = grid_dim(spec.r);
    scratch.bins.resize(dim * dim, Vec::new());
    for bin in &mut scratch.bins {
        bin.clear();
    }
    for (i, p) in scratch.points.iter().enumerate() {
        scratch.bins[cell_of(p.y, dim) * dim + cell_of(p.x, dim)].push(i as u32);
    }
    scratch.uf.reset(n);
    let mut components = n as u64;
    let r_sq = spec.r * spec.r;
    for i in 0..n {
        let p = scratch.points[i];
        let (cx, cy) = (cell_of(p.x, dim) as i64, cell_of(p.y, dim) as i64);
        for dy in -1..=1i64 {
            let y = cy + dy;
            if y < 0 || y >= dim as i64 {
                continue;
            }
            for dx in -1..=1i64 {
                let x = cx + dx;
                if x < 0 || x >= dim as i64 {
                    continue;
                }
                for &j in &scratch.bins[y as usize * dim + x as usize] {
                    let ju = j as usize;
                    if ju <= i {
                        continue;
                    }
                    if closed_within(p.dist_sq(&scratch.points[ju]), r_sq)
                        && pair_allows(edge_seed, i as u32, j, spec.p)
                        && scratch.uf.union(i as u32, j)
                    {
                        components -= 1;
                        if components == 1 {
                            return true;
                        }
                    }
                }
            }
        }
    }
    components == 1
}

fn run_trial(scenario: &Scenario, property: Property, offsets: &[(i32, i32)], seed: u64, scratch: &mut Scratch) -> bool {
    match (scenario, property) {
        (Scenario::Grid(spec), Property::KCovered { k }) => {
            fill_grid_activation(spec, seed, scratch);
            fill_grid_points(spec, scratch);
            is_k_covered(&scratch.points, spec.radius, k)
        }
        (Scenario::Grid(spec), Property::Connected) => grid_connected_trial(spec, offsets, seed, scratch),
        (Scenario::Grid(spec), Property::Disconnected) => !grid_connected_trial(spec, offsets, seed, scratch),
        (Scenario::Grid(spec), Property::KConnected { k }) => {
            fill_grid_activation(spec, seed, scratch);
            fill_grid_points(spec, scratch);
            let g = build_geometric_graph(&scratch.points, spec.radius, 1.0, 0);
            vertex_connectivity_at_least(&g, k)
        }
        (Scenario::Random(spec), Property::KCovered { k }) => {
            fill_uniform(spec.n, seed, scratch);
            is_k_covered(&scratch.points, spec.r, k)
        }
        (Scenario::Random(spec), Property::Connected) => random_connected_trial(spec, seed, scratch),
        (Scenario::Random(spec), Property::Disconnected) => !random_connected_trial(spec, seed, scratch),
        (Scenario::Random(spec), Property::KConnected { k }) => {
            fill_uniform(spec.n, seed, scratch);
            let g = build_geometric_graph(&scratch.points, spec.r, spec.p, mix64(seed ^ EDGE_SALT));
            vertex_connectivity_at_least(&g, k)
        }
    }
}

/// Count successes over the trial indices in `trials`, deterministically.
///
/// Trials are sharded into fixed chunks whose seeds depend only on absolute
/// trial indices, so any sub-range of a longer run reproduces the longer
/// run's prefix exactly. That is what checkpoint/resume relies on.
pub fn successes_in_range(
    scenario: &Scenario,
    property: Property,
    trials: std::ops::Range<u64>,
    master_seed: u64,
) -> u64 {
    if trials.is_empty() {
        return 0;
    }
    let offsets = match (scenario, property) {
        (Scenario::Grid(spec), Property::Connected | Property::Disconnected) => {
            forward_lattice_offsets(spec.side(), spec.radius)
        }
        _ => Vec::new(),
    };
    let first_chunk = trials.start / TRIAL_CHUNK;
    let last_chunk = (trials.end - 1) / TRIAL_CHUNK;
    (first_chunk..=last_chunk)
        .into_par_iter()
        .map(|chunk| {
            let lo = (chunk * TRIAL_CHUNK).max(trials.start);
            let hi = ((chunk + 1) * TRIAL_CHUNK).min(trials.end);
            let mut scratch = Scratch::new();
            let mut hits = 0u64;
            for t in lo..hi {
                if run_trial(scenario, property, &offsets, trial_seed(master_seed, t), &mut scratch) {
                    hits += 1;
                }
            }
            hits
        })
        .sum()
}

/// Run seeded independent trials and report the frequency with a 95% Wilson
/// interval.
pub fn estimate_probability(
    scenario: &Scenario,
    property: Property,
    trials: u64,
    master_seed: u64,
) -> SimResult {
    let successes = successes_in_range(scenario, property, 0..trials, master_seed);
    let estimate = if trials == 0 { 0.0 } else { successes as f64 / trials as f64 };
    let (ci_low, ci_high) = wilson_interval(successes, trials, Z95);
    SimResult {
        trials,
        successes,
        estimate,
        ci_low,
        ci_high,
        seed: master_seed,
        property: property.label(),
    }
}
