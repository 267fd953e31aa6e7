//! Unreliable sensor grids: a `sqrt(n) x sqrt(n)` lattice on the unit square
//! where each sensor is independently active with probability `p`.
//!
//! Provides the lattice itself, neighbor counts around arbitrary points,
//! product-form lower and packing-based upper bounds for the k-coverage
//! probability, the breakpoint set of realizable pairwise lattice distances
//! (between consecutive breakpoints every radius-dependent property of the
//! grid is constant), and the asymptotic coverage thresholds used as a
//! baseline.

use crate::geometry::{closed_within, Point, GEO_EPS, HALF};
use crate::{Error, Result};

/// An unreliable grid instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Node count; must be a perfect square.
    pub n: u64,
    /// Activation probability.
    pub p: f64,
    /// Sensing or transmission radius, in square-side units.
    pub radius: f64,
}

impl GridSpec {
    pub fn new(n: u64, p: f64, radius: f64) -> Result<Self> {
        perfect_sqrt(n)?;
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("activation probability {p} not in [0, 1]")));
        }
        if !(radius >= 0.0) {
            return Err(Error::InvalidParameter(format!("radius {radius} must be nonnegative")));
        }
        Ok(GridSpec { n, p, radius })
    }

    /// Lattice side `sqrt(n)`.
    pub fn side(&self) -> u64 {
        (self.n as f64).sqrt().round() as u64
    }
}

/// Side length of a perfect square, or an error.
pub(crate) fn perfect_sqrt(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidParameter("node count must be at least 1".into()));
    }
    let s = (n as f64).sqrt().round() as u64;
    if s * s == n {
        Ok(s)
    } else {
        Err(Error::NotPerfectSquare(n))
    }
}

/// Coordinate of lattice index `i` of `side` along one axis (cell-centered,
/// so the layout inherits all symmetries of the square).
#[inline]
pub(crate) fn lattice_coord(i: u64, side: u64) -> f64 {
    (i as f64 + 0.5) / side as f64 - HALF
}

/// The `sqrt(n) x sqrt(n)` lattice with adjacent separation `1/sqrt(n)`.
pub fn grid_positions(n: u64) -> Result<Vec<Point>> {
    let s = perfect_sqrt(n)?;
    let mut pts = Vec::with_capacity(n as usize);
    for j in 0..s {
        for i in 0..s {
            pts.push(Point::new(lattice_coord(i, s), lattice_coord(j, s)));
        }
    }
    Ok(pts)
}

/// Number of lattice nodes within closed distance `r` of `q`.
pub fn neighbor_count(n: u64, r: f64, q: Point) -> Result<u64> {
    let s = perfect_sqrt(n)?;
    if !(r >= 0.0) {
        return Err(Error::InvalidParameter(format!("radius {r} must be nonnegative")));
    }
    let r_sq = r * r;
    let mut count = 0u64;
    for j in 0..s {
        let dy = lattice_coord(j, s) - q.y;
        let dy_sq = dy * dy;
        if dy_sq > r_sq + GEO_EPS {
            continue;
        }
        for i in 0..s {
            let dx = lattice_coord(i, s) - q.x;
            if closed_within(dx * dx + dy_sq, r_sq) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// A virtual grid of test points: covering its `sqrt(l) x sqrt(l)` lattice
/// with the deflated radius `r' = r - 1/sqrt(2l)` guarantees covering the
/// whole square with radius `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VirtualGrid {
    l: u64,
    deflated_radius: f64,
}

impl VirtualGrid {
    /// Virtual grid with `l` points for a network of radius `radius`.
    pub fn new(l: u64, radius: f64) -> Result<Self> {
        perfect_sqrt(l)?;
        let deflated = radius - 1.0 / (2.0 * l as f64).sqrt();
        if deflated <= 0.0 {
            return Err(Error::DeflatedRadiusNonpositive { radius, l });
        }
        Ok(VirtualGrid { l, deflated_radius: deflated })
    }

    /// Smallest perfect-square `l` whose deflation costs at most half the
    /// radius, so the bound stays nonvacuous at linear cost.
    pub fn for_radius(radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidParameter(format!("radius {radius} must be positive")));
        }
        let m = (std::f64::consts::SQRT_2 / radius).ceil().max(1.0) as u64;
        VirtualGrid::new(m * m, radius)
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn deflated_radius(&self) -> f64 {
        self.deflated_radius
    }

    /// The virtual lattice points.
    pub fn points(&self) -> Vec<Point> {
        grid_positions(self.l).expect("l validated at construction")
    }
}

/// `P(Bin(n, p) <= k - 1)`: the probability a test point with `n` candidate
/// sensors sees fewer than `k` of them active. Accumulated in the log
/// domain; `(1-p)^n` underflows long before the tail does.
fn binom_cdf_below(n: u64, p: f64, k: u32) -> f64 {
    debug_assert!(k >= 1);
    if p <= 0.0 {
        return 1.0;
    }
    if p >= 1.0 {
        return if n <= (k - 1) as u64 { 1.0 } else { 0.0 };
    }
    let top = ((k - 1) as u64).min(n);
    let lp = p.ln();
    let lq = (-p).ln_1p();
    let mut log_terms = Vec::with_capacity(top as usize + 1);
    let mut lt = n as f64 * lq;
    log_terms.push(lt);
    for i in 1..=top {
        lt += ((n - i + 1) as f64 / i as f64).ln() + lp - lq;
        log_terms.push(lt);
    }
    let max = log_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return 0.0;
    }
    let sum: f64 = log_terms.iter().map(|&t| (t - max).exp()).sum();
    (max + sum.ln()).exp().min(1.0)
}

/// Probability that a point with `n_near` candidate sensors is covered by at
/// least `k` of them.
#[inline]
fn point_k_coverage(n_near: u64, p: f64, k: u32) -> f64 {
    (1.0 - binom_cdf_below(n_near, p, k)).clamp(0.0, 1.0)
}

/// Product-form lower bound on the k-coverage probability.
///
/// Covering every virtual point with the deflated radius covers the square,
/// and coverage events of the virtual points are positively associated over
/// independent activations, so the joint probability dominates the product
/// of the marginals.
pub fn grid_cov_lower(spec: &GridSpec, k: u32, vg: &VirtualGrid) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParameter("coverage order k must be at least 1".into()));
    }
    let vs = perfect_sqrt(vg.l)?;
    let r = vg.deflated_radius;
    if r <= 0.0 {
        return Err(Error::DeflatedRadiusNonpositive { radius: spec.radius, l: vg.l });
    }
    let mut product = 1.0f64;
    for j in 0..vs {
        for i in 0..vs {
            let u = Point::new(lattice_coord(i, vs), lattice_coord(j, vs));
            let n_near = neighbor_count(spec.n, r, u)?;
            product *= point_k_coverage(n_near, spec.p, k);
            if product == 0.0 {
                return Ok(0.0);
            }
        }
    }
    Ok(product.clamp(0.0, 1.0))
}

/// Floor exponent `((1 - 2r) / 2r)` used by the packing upper bound,
/// clamped at zero: for `r >= 0.5` the interior and edge test points vanish
/// and only the four corner factors remain.
fn packing_exponent(r: f64) -> u64 {
    if r >= HALF {
        0
    } else {
        ((1.0 - 2.0 * r) / (2.0 * r)).floor().max(0.0) as u64
    }
}

/// Packing upper bound on the k-coverage probability.
///
/// Test points spaced more than `2r` apart are covered independently, so
/// the coverage probability of the whole square is at most the product over
/// a corner point, edge midpoints, and interior points of each point's own
/// coverage probability.
pub fn grid_cov_upper(spec: &GridSpec, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParameter("coverage order k must be at least 1".into()));
    }
    let r = spec.radius;
    if r <= 0.0 {
        // nothing is covered at zero radius; the corner test point alone
        // already has probability zero
        return Ok(0.0);
    }
    let corner = point_k_coverage(neighbor_count(spec.n, r, Point::new(HALF, HALF))?, spec.p, k);
    if corner == 0.0 {
        return Ok(0.0);
    }
    let m = packing_exponent(r);
    let mut log_bound = 4.0 * corner.ln();
    if m > 0 {
        let edge = point_k_coverage(neighbor_count(spec.n, r, Point::new(HALF, 0.0))?, spec.p, k);
        let interior = point_k_coverage(neighbor_count(spec.n, r, Point::new(0.0, 0.0))?, spec.p, k);
        if edge == 0.0 || interior == 0.0 {
            return Ok(0.0);
        }
        log_bound += 4.0 * m as f64 * edge.ln() + (m * m) as f64 * interior.ln();
    }
    Ok(log_bound.exp().clamp(0.0, 1.0))
}

/// One realizable pairwise lattice distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breakpoint {
    /// The integer `a^2 + b^2` realizing the distance.
    pub sum_squares: u64,
    /// The distance `sqrt(a^2 + b^2) / sqrt(n)`.
    pub distance: f64,
}

/// Sorted distinct realizable pairwise lattice distances, up to and
/// including the first one past `sqrt(2)/2`. Any radius-dependent property
/// of the grid is constant between consecutive entries.
#[derive(Debug, Clone, PartialEq)]
pub struct BreakpointSet {
    breakpoints: Vec<Breakpoint>,
}

impl BreakpointSet {
    pub fn as_slice(&self) -> &[Breakpoint] {
        &self.breakpoints
    }

    pub fn len(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.breakpoints.is_empty()
    }

    pub fn distances(&self) -> impl Iterator<Item = f64> + '_ {
        self.breakpoints.iter().map(|b| b.distance)
    }
}

/// Enumerate the realizable pairwise lattice distances of an `n`-node grid.
///
/// Only sums of two squares actually occurring among lattice offsets count;
/// not every integer is such a sum.
pub fn grid_breakpoints(n: u64) -> Result<BreakpointSet> {
    let s = perfect_sqrt(n)?;
    let mut sums = std::collections::BTreeSet::new();
    for a in 0..s {
        for b in 0..=a {
            if a == 0 && b == 0 {
                continue;
            }
            sums.insert(a * a + b * b);
        }
    }
    let cap = std::f64::consts::FRAC_1_SQRT_2;
    let mut breakpoints = Vec::new();
    for m in sums {
        let d = (m as f64).sqrt() / s as f64;
        breakpoints.push(Breakpoint { sum_squares: m, distance: d });
        if d > cap + GEO_EPS {
            break;
        }
    }
    Ok(BreakpointSet { breakpoints })
}

/// Asymptotic k-coverage thresholds `sqrt((1 ± eps) log(np) / (pi n p))`.
///
/// Above the high threshold the square is asymptotically covered almost
/// surely; below the low one almost surely not.
pub fn asymptotic_klb_thresholds(n: u64, p: f64, eps: f64) -> Result<(f64, f64)> {
    let np = n as f64 * p;
    if !(np > 1.0) {
        return Err(Error::InvalidParameter(format!("n*p = {np} must exceed 1 so log(np) > 0")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("eps = {eps} must lie in (0, 1)")));
    }
    let base = np.ln() / (std::f64::consts::PI * np);
    Ok((((1.0 - eps) * base).sqrt(), ((1.0 + eps) * base).sqrt()))
}

/// Analytic bounds for one parameter point, with the source of each number.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub n: u64,
    pub p: f64,
    pub r: f64,
    pub k: u32,
    pub lower: f64,
    pub upper: f64,
    /// Asymptotic prediction at this radius: 0 below the low threshold, 1
    /// above the high one, undefined in between (or when `np <= 1`).
    pub baseline: Option<f64>,
    pub lower_source: &'static str,
    pub upper_source: &'static str,
    pub baseline_source: &'static str,
    /// Set when the packing exponents were clamped to zero (`r >= 0.5`).
    pub clamped_exponents: bool,
}

/// Assemble lower/upper/baseline for a grid coverage point. `l` overrides
/// the default virtual grid size.
pub fn grid_bound_report(spec: &GridSpec, k: u32, l: Option<u64>) -> Result<BoundReport> {
    let vg = match l {
        Some(l) => VirtualGrid::new(l, spec.radius)?,
        None => VirtualGrid::for_radius(spec.radius)?,
    };
    let lower = grid_cov_lower(spec, k, &vg)?;
    let upper = grid_cov_upper(spec, k)?;
    let baseline = match asymptotic_klb_thresholds(spec.n, spec.p, 0.1) {
        Ok((r_low, r_high)) => {
            if spec.radius <= r_low {
                Some(0.0)
            } else if spec.radius >= r_high {
                Some(1.0)
            } else {
                None
            }
        }
        Err(_) => None,
    };
    Ok(BoundReport {
        n: spec.n,
        p: spec.p,
        r: spec.radius,
        k,
        lower,
        upper,
        baseline,
        lower_source: "virtual-grid-product",
        upper_source: "spaced-point-packing",
        baseline_source: "asymptotic-coverage-threshold",
        clamped_exponents: spec.radius >= HALF,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn positions_basic() {
        assert_eq!(grid_positions(1).unwrap(), vec![Point::new(0.0, 0.0)]);
        let four = grid_positions(4).unwrap();
        assert_eq!(four.len(), 4);
        for p in &four {
            assert!((p.x.abs() - 0.25).abs() < 1e-15 && (p.y.abs() - 0.25).abs() < 1e-15);
        }
        let hundred = grid_positions(100).unwrap();
        assert_eq!(hundred.len(), 100);
        let mut min_d = f64::INFINITY;
        for i in 0..hundred.len() {
            for j in 0..i {
                min_d = min_d.min(hundred[i].dist(&hundred[j]));
            }
        }
        assert!((min_d - 0.1).abs() < 1e-12);
        assert!(grid_positions(7).is_err());
    }

    #[test]
    fn neighbor_count_examples() {
        // brute-force oracle over the explicit lattice
        let oracle = |n: u64, r: f64, q: Point| -> u64 {
            grid_positions(n)
                .unwrap()
                .iter()
                .filter(|p| closed_within(p.dist_sq(&q), r * r))
                .count() as u64
        };
        assert_eq!(neighbor_count(100, 0.05, Point::new(0.0, 0.0)).unwrap(), 0);
        let center = neighbor_count(100, 0.08, Point::new(0.0, 0.0)).unwrap();
        assert_eq!(center, oracle(100, 0.08, Point::new(0.0, 0.0)));
        assert_eq!(center, 4);
        let corner = neighbor_count(100, 0.08, Point::new(0.5, 0.5)).unwrap();
        assert_eq!(corner, oracle(100, 0.08, Point::new(0.5, 0.5)));
        assert_eq!(corner, 1);
    }

    #[test]
    fn virtual_grid_construction() {
        let vg = VirtualGrid::new(400, 0.3).unwrap();
        assert!((vg.deflated_radius() - (0.3 - 1.0 / 800f64.sqrt())).abs() < 1e-15);
        assert!(VirtualGrid::new(4, 0.1).is_err()); // 0.1 - 1/sqrt(8) < 0
        let auto = VirtualGrid::for_radius(0.25).unwrap();
        assert!(auto.deflated_radius() >= 0.125);
        // minimality: the next smaller square would deflate past half
        let m = (auto.l() as f64).sqrt() as u64;
        if m > 1 {
            let smaller = (m - 1) * (m - 1);
            let smaller_deflated = 0.25 - 1.0 / (2.0 * smaller as f64).sqrt();
            assert!(smaller_deflated < 0.125);
        }
    }

    #[test]
    fn cov_lower_degenerate() {
        let vg = VirtualGrid::new(400, 0.3).unwrap();
        let full = GridSpec::new(100, 1.0, 0.3).unwrap();
        assert_eq!(grid_cov_lower(&full, 1, &vg).unwrap(), 1.0);
        let none = GridSpec::new(100, 0.0, 0.3).unwrap();
        assert_eq!(grid_cov_lower(&none, 1, &vg).unwrap(), 0.0);
        assert_eq!(grid_cov_lower(&none, 3, &vg).unwrap(), 0.0);
    }

    #[test]
    fn cov_upper_examples() {
        let spec = GridSpec::new(100, 0.2, 0.25).unwrap();
        let u = grid_cov_upper(&spec, 1).unwrap();
        // brute-force neighbor counts at the three test points
        let nc = neighbor_count(100, 0.25, Point::new(0.5, 0.5)).unwrap();
        let ne = neighbor_count(100, 0.25, Point::new(0.5, 0.0)).unwrap();
        let ni = neighbor_count(100, 0.25, Point::new(0.0, 0.0)).unwrap();
        assert_eq!((nc, ne, ni), (4, 8, 16));
        let expected = (1.0 - 0.8f64.powi(4)).powi(4)
            * (1.0 - 0.8f64.powi(8)).powi(4)
            * (1.0 - 0.8f64.powi(16));
        assert!((u - expected).abs() < 1e-12);
        // must upper-bound the observed coverage probability of 0.018
        assert!(u >= 0.018);

        assert_eq!(grid_cov_upper(&GridSpec::new(100, 0.0, 0.25).unwrap(), 1).unwrap(), 0.0);
        let big = GridSpec::new(100, 1.0, 0.3).unwrap();
        assert_eq!(grid_cov_upper(&big, 1).unwrap(), 1.0);
    }

    #[test]
    fn cov_upper_clamps_past_half() {
        // r >= 0.5: only the corner factor survives
        let spec = GridSpec::new(100, 0.3, 0.6).unwrap();
        let u = grid_cov_upper(&spec, 1).unwrap();
        let nc = neighbor_count(100, 0.6, Point::new(0.5, 0.5)).unwrap();
        let corner = 1.0 - 0.7f64.powi(nc as i32);
        assert!((u - corner.powi(4)).abs() < 1e-12);
    }

    #[test]
    fn breakpoints_small_grids() {
        let bp4 = grid_breakpoints(4).unwrap();
        let d4: Vec<f64> = bp4.distances().collect();
        assert_eq!(bp4.len(), 2);
        assert!((d4[0] - 0.5).abs() < 1e-15);
        assert!((d4[1] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);

        // 3x3: distances sqrt(m)/3 for realizable m, capped after the first
        // value past sqrt(2)/2
        let bp9 = grid_breakpoints(9).unwrap();
        let d9: Vec<f64> = bp9.distances().collect();
        let expect = [1.0f64, 2.0, 4.0, 5.0];
        assert_eq!(bp9.len(), expect.len());
        for (d, m) in d9.iter().zip(expect) {
            assert!((d - m.sqrt() / 3.0).abs() < 1e-15);
        }

        let bp100 = grid_breakpoints(100).unwrap();
        let d100: Vec<f64> = bp100.distances().collect();
        assert!((d100[0] - 0.1).abs() < 1e-15);
        assert!((d100[1] - 0.1 * 2f64.sqrt()).abs() < 1e-15);
        assert!((d100[2] - 0.2).abs() < 1e-15);
        // 3 is not a sum of two squares
        assert!(bp100.as_slice().iter().all(|b| b.sum_squares != 3));
    }

    #[test]
    fn klb_thresholds() {
        let (lo, hi) = asymptotic_klb_thresholds(100, 0.2, 0.1).unwrap();
        assert!((lo - 0.207).abs() < 5e-4);
        assert!((hi - 0.229).abs() < 5e-4);
        let (l2, h2) = asymptotic_klb_thresholds(100, 0.2, 1e-12).unwrap();
        assert!((l2 - h2).abs() < 1e-9);
        assert!(asymptotic_klb_thresholds(4, 0.2, 0.1).is_err());
    }

    #[test]
    fn bounds_right_continuous_at_breakpoints() {
        // evaluating at a breakpoint equals the limit from above (closed
        // balls). The packing bound's floor exponent has its own jump radii
        // at 1/(2(m+1)); a breakpoint coinciding with one of those (0.1
        // does, for n=100) is excluded since the exponent change is not a
        // neighbor-count effect.
        let bps = grid_breakpoints(100).unwrap();
        for bp in bps.as_slice().iter().take(6) {
            let r = bp.distance;
            for q in [Point::new(0.5, 0.5), Point::new(0.5, 0.0), Point::new(0.0, 0.0)] {
                assert_eq!(
                    neighbor_count(100, r, q).unwrap(),
                    neighbor_count(100, r * (1.0 + 1e-9), q).unwrap()
                );
            }
            let ratio = (1.0 - 2.0 * r) / (2.0 * r);
            let exponent_critical = (ratio - ratio.round()).abs() < 1e-9;
            if !exponent_critical {
                let at = grid_cov_upper(&GridSpec::new(100, 0.2, r).unwrap(), 1).unwrap();
                let above =
                    grid_cov_upper(&GridSpec::new(100, 0.2, r * (1.0 + 1e-9)).unwrap(), 1).unwrap();
                assert_eq!(at, above, "upper bound jumps at breakpoint {r}");
            }
            let lo_at = grid_cov_lower(
                &GridSpec::new(100, 0.2, r).unwrap(),
                1,
                &VirtualGrid::new(400, r).unwrap(),
            )
            .unwrap();
            let lo_above = grid_cov_lower(
                &GridSpec::new(100, 0.2, r * (1.0 + 1e-9)).unwrap(),
                1,
                &VirtualGrid::new(400, r * (1.0 + 1e-9)).unwrap(),
            )
            .unwrap();
            // the virtual points are off-lattice, so their neighbor counts
            // cannot jump exactly at a lattice breakpoint
            assert!((lo_at - lo_above).abs() < 1e-12, "lower bound jumps at {r}");
        }
    }

    #[test]
    fn neighbor_count_constant_between_breakpoints() {
        let bps = grid_breakpoints(100).unwrap();
        let ds: Vec<f64> = bps.distances().collect();
        let positions = grid_positions(100).unwrap();
        for w in ds.windows(2).take(8) {
            let (lo, hi) = (w[0], w[1]);
            let r1 = lo + 0.2 * (hi - lo);
            let r2 = lo + 0.8 * (hi - lo);
            for q in positions.iter().step_by(17) {
                assert_eq!(
                    neighbor_count(100, r1, *q).unwrap(),
                    neighbor_count(100, r2, *q).unwrap(),
                    "interval [{lo}, {hi})"
                );
            }
        }
    }

    #[test]
    fn report_sandwich() {
        for k in [1u32, 2] {
            for i in 0..13 {
                let r = 0.15 + 0.025 * i as f64;
                let spec = GridSpec::new(100, 0.2, r).unwrap();
                let rep = grid_bound_report(&spec, k, None).unwrap();
                assert!(
                    rep.lower <= rep.upper + 1e-12,
                    "k={k} r={r}: lower {} > upper {}",
                    rep.lower,
                    rep.upper
                );
            }
        }
    }

    #[test]
    fn binom_tail_edges() {
        assert_eq!(binom_cdf_below(10, 0.0, 1), 1.0);
        assert_eq!(binom_cdf_below(10, 1.0, 1), 0.0);
        assert_eq!(binom_cdf_below(0, 0.5, 3), 1.0);
        // against direct summation at moderate size
        let direct: f64 = (0..3u32)
            .map(|i| {
                let c = (0..i).fold(1.0, |acc, t| acc * (20 - t) as f64 / (t + 1) as f64);
                c * 0.3f64.powi(i as i32) * 0.7f64.powi(20 - i as i32)
            })
            .sum();
        assert!((binom_cdf_below(20, 0.3, 3) - direct).abs() < 1e-14);
        // large n does not underflow to garbage
        let tail = binom_cdf_below(100_000, 0.5, 3);
        assert!(tail >= 0.0 && tail < 1e-300_f64.max(f64::MIN_POSITIVE) || tail == 0.0);
    }

    proptest! {
        #[test]
        fn bounds_monotone(
            pi in 0.05f64..0.95, r in 0.12f64..0.45,
            dp in 0.0f64..0.04, dr in 0.0f64..0.04, k in 1u32..3,
        ) {
            let s1 = GridSpec::new(100, pi, r).unwrap();
            let s2 = GridSpec::new(100, (pi + dp).min(1.0), r + dr).unwrap();
            let u1 = grid_cov_upper(&s1, k).unwrap();
            let u2 = grid_cov_upper(&s2, k).unwrap();
            prop_assert!(u2 + 1e-12 >= u1);
            // nonincreasing in k
            let uk = grid_cov_upper(&s1, k + 1).unwrap();
            prop_assert!(uk <= u1 + 1e-12);

            let vg1 = VirtualGrid::for_radius(r).unwrap();
            let vg2 = VirtualGrid::new(vg1.l(), r + dr).unwrap();
            let l1 = grid_cov_lower(&s1, k, &vg1).unwrap();
            // same l, larger radius and p
            let l2 = grid_cov_lower(&s2, k, &vg2).unwrap();
            prop_assert!(l2 + 1e-12 >= l1);
            let lk = grid_cov_lower(&s1, k + 1, &vg1).unwrap();
            prop_assert!(lk <= l1 + 1e-12);
        }
    }
}
