//! Planar geometry on the closed unit square `S0 = [-0.5, 0.5]^2`.
//!
//! The central quantity is the clipped-disk measure: the area of a disk
//! intersected with `S0`. It is evaluated in closed form by subtracting the
//! circular segments that stick out past each of the four bounding
//! half-planes and adding back the corner regions counted twice. The lens
//! area clipped to the square is the one quantity left to seeded Monte
//! Carlo: the disk-disk-square triple intersection has too many cases to be
//! worth a closed form, and it only ever appears inside an already
//! stochastic pair integral.
//!
//! All functions here are pure; nothing holds shared mutable state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Tolerance for tangency and on-boundary classification, at the double
/// precision ULP scale for unit magnitudes.
pub const GEO_EPS: f64 = 1e-12;

/// Half the side of the deployment square.
pub const HALF: f64 = 0.5;

/// A point in the unit-square frame. Coordinates outside `[-0.5, 0.5]` are
/// legal for intermediate geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite());
        Point { x, y }
    }

    #[inline]
    pub fn dist_sq(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    #[inline]
    pub fn dist(&self, other: &Point) -> f64 {
        self.dist_sq(other).sqrt()
    }

    /// Whether the point lies in the closed square (with tolerance).
    #[inline]
    pub fn in_unit_square(&self) -> bool {
        self.x.abs() <= HALF + GEO_EPS && self.y.abs() <= HALF + GEO_EPS
    }
}

/// Euclidean distance between two points.
#[inline]
pub fn distance(u: Point, v: Point) -> f64 {
    u.dist(&v)
}

/// Closed-ball membership test used everywhere an edge or coverage decision
/// compares a squared distance against a squared radius. The slack keeps the
/// decision stable when a radius sits exactly on a realizable lattice
/// distance.
#[inline]
pub fn closed_within(dist_sq: f64, radius_sq: f64) -> bool {
    dist_sq <= radius_sq + GEO_EPS
}

/// A closed disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Point, radius: f64) -> Self {
        debug_assert!(radius >= 0.0);
        Disk { center, radius }
    }

    #[inline]
    pub fn contains(&self, p: Point) -> bool {
        closed_within(self.center.dist_sq(&p), self.radius * self.radius)
    }
}

/// Antiderivative of `sqrt(1 - x^2)`, zero at the origin.
#[inline]
fn g0(x: f64) -> f64 {
    let x = x.clamp(-1.0, 1.0);
    0.5 * (x * (1.0 - x * x).max(0.0).sqrt() + x.asin())
}

/// Area of the unit disk beyond the half-plane `{x >= t}` where `t` is the
/// signed distance to the line over the radius.
#[inline]
fn unit_segment(t: f64) -> f64 {
    if t >= 1.0 {
        0.0
    } else if t <= -1.0 {
        std::f64::consts::PI
    } else {
        t.acos() - t * (1.0 - t * t).sqrt()
    }
}

/// Area of `{x^2 + y^2 <= 1} ∩ {x >= a} ∩ {y >= b}`.
///
/// Integrates chord lengths over `x`, splitting at `x* = sqrt(1 - b^2)`
/// where the lower chord end switches between the line `y = b` and the
/// circle itself. Handles corner-inside and corner-outside cases uniformly.
fn unit_corner(a: f64, b: f64) -> f64 {
    if a >= 1.0 || b >= 1.0 {
        return 0.0;
    }
    let a = a.max(-1.0);
    let b = b.max(-1.0);
    let xs = (1.0 - b * b).max(0.0).sqrt();
    if b >= 0.0 {
        let lo = a.clamp(-xs, xs);
        g0(xs) - g0(lo) - b * (xs - lo)
    } else {
        let mut area = 0.0;
        if a < -xs {
            // full chords left of the split
            area += 2.0 * (g0(-xs) - g0(a));
        }
        let lo = a.clamp(-xs, xs);
        area += g0(xs) - g0(lo) - b * (xs - lo);
        // full chords right of the split
        area += 2.0 * (g0(1.0) - g0(xs.max(a)));
        area
    }
}

/// Area of `disk ∩ S0`, exact up to rounding.
///
/// Inclusion-exclusion against the four bounding half-planes: the parts of
/// the disk beyond opposite edges never overlap, so the expansion stops at
/// the four corner terms.
pub fn clipped_disk_area(d: Disk) -> f64 {
    let r = d.radius;
    if r <= 0.0 {
        return 0.0;
    }
    let (cx, cy) = (d.center.x, d.center.y);
    let tr = (HALF - cx) / r; // signed distance to x = +0.5, in radii
    let tl = (HALF + cx) / r; // x = -0.5
    let tt = (HALF - cy) / r; // y = +0.5
    let tb = (HALF + cy) / r; // y = -0.5

    let segments = unit_segment(tr) + unit_segment(tl) + unit_segment(tt) + unit_segment(tb);
    let corners = unit_corner(tr, tt) + unit_corner(tl, tt) + unit_corner(tr, tb) + unit_corner(tl, tb);

    let area = r * r * (std::f64::consts::PI - segments + corners);
    area.clamp(0.0, (std::f64::consts::PI * r * r).min(1.0))
}

/// Area of the intersection of two disks, ignoring the square.
///
/// Standard two-circle lens formula; collapses to the familiar equal-radius
/// form `2 r^2 acos(d/2r) - (d/2) sqrt(4r^2 - d^2)`.
pub fn lens_area_unclipped(ra: f64, rb: f64, d: f64) -> f64 {
    if d >= ra + rb {
        return 0.0;
    }
    if d <= (ra - rb).abs() {
        let r = ra.min(rb);
        return std::f64::consts::PI * r * r;
    }
    let cos_a = ((d * d + ra * ra - rb * rb) / (2.0 * d * ra)).clamp(-1.0, 1.0);
    let cos_b = ((d * d + rb * rb - ra * ra) / (2.0 * d * rb)).clamp(-1.0, 1.0);
    let tri = ((-d + ra + rb) * (d + ra - rb) * (d - ra + rb) * (d + ra + rb)).max(0.0);
    ra * ra * cos_a.acos() + rb * rb * cos_b.acos() - 0.5 * tri.sqrt()
}

/// A Monte Carlo area estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McArea {
    pub value: f64,
    pub std_err: f64,
}

impl McArea {
    fn exact(value: f64) -> Self {
        McArea { value, std_err: 0.0 }
    }
}

/// Area of `disk_a ∩ disk_b ∩ S0`.
///
/// Exact when the intersection degenerates (disjoint disks, one disk inside
/// the other) or when the whole lens sits inside the square; otherwise an
/// unbiased rejection estimate over the lens bounding box clipped to `S0`,
/// deterministic for a fixed seed.
pub fn clipped_lens_area(a: Disk, b: Disk, samples: u64, seed: u64) -> McArea {
    let d = distance(a.center, b.center);
    if d >= a.radius + b.radius {
        return McArea::exact(0.0);
    }
    if d <= (a.radius - b.radius).abs() {
        let inner = if a.radius <= b.radius { a } else { b };
        return McArea::exact(clipped_disk_area(inner));
    }

    // bounding box of the lens, clipped to the square
    let x0 = (a.center.x - a.radius).max(b.center.x - b.radius);
    let x1 = (a.center.x + a.radius).min(b.center.x + b.radius);
    let y0 = (a.center.y - a.radius).max(b.center.y - b.radius);
    let y1 = (a.center.y + a.radius).min(b.center.y + b.radius);
    if x1 >= -HALF && x0 <= HALF && y1 >= -HALF && y0 <= HALF && x0 >= -HALF && x1 <= HALF && y0 >= -HALF && y1 <= HALF
    {
        // lens fully inside the square
        return McArea::exact(lens_area_unclipped(a.radius, b.radius, d));
    }
    let bx0 = x0.max(-HALF);
    let bx1 = x1.min(HALF);
    let by0 = y0.max(-HALF);
    let by1 = y1.min(HALF);
    if bx0 >= bx1 || by0 >= by1 {
        return McArea::exact(0.0);
    }

    let box_area = (bx1 - bx0) * (by1 - by0);
    let ra2 = a.radius * a.radius;
    let rb2 = b.radius * b.radius;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = samples.max(1);
    let mut hits = 0u64;
    for _ in 0..n {
        let p = Point::new(bx0 + (bx1 - bx0) * rng.gen::<f64>(), by0 + (by1 - by0) * rng.gen::<f64>());
        if a.center.dist_sq(&p) <= ra2 && b.center.dist_sq(&p) <= rb2 {
            hits += 1;
        }
    }
    let frac = hits as f64 / n as f64;
    McArea {
        value: box_area * frac,
        std_err: box_area * (frac * (1.0 - frac) / n as f64).sqrt(),
    }
}

/// Intersection of two circle boundaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CirclePair {
    Disjoint,
    Tangent(Point),
    Crossing(Point, Point),
}

/// Intersection points of the boundaries of two circles.
///
/// Tangency is classified with [`GEO_EPS`] slack on the center distance.
/// Coincident circles are an error: their boundaries share infinitely many
/// points.
pub fn circle_pair_intersections(a: Disk, b: Disk) -> Result<CirclePair> {
    let d = distance(a.center, b.center);
    if d <= GEO_EPS && (a.radius - b.radius).abs() <= GEO_EPS {
        return Err(Error::CoincidentCircles);
    }
    let rsum = a.radius + b.radius;
    let rdiff = (a.radius - b.radius).abs();
    if d > rsum + GEO_EPS || d < rdiff - GEO_EPS {
        return Ok(CirclePair::Disjoint);
    }
    let ux = (b.center.x - a.center.x) / d;
    let uy = (b.center.y - a.center.y) / d;
    let along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    let base = Point::new(a.center.x + along * ux, a.center.y + along * uy);
    let h_sq = a.radius * a.radius - along * along;
    if (d - rsum).abs() <= GEO_EPS || (d - rdiff).abs() <= GEO_EPS || h_sq <= 0.0 {
        return Ok(CirclePair::Tangent(base));
    }
    let h = h_sq.sqrt();
    Ok(CirclePair::Crossing(
        Point::new(base.x - h * uy, base.y + h * ux),
        Point::new(base.x + h * uy, base.y - h * ux),
    ))
}

/// Points where a circle boundary crosses the four edges of `S0`.
///
/// Each returned point lies on an edge segment; a crossing exactly at a
/// corner is reported once.
pub fn circle_square_intersections(d: Disk) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    let r = d.radius;
    if r <= 0.0 {
        return out;
    }
    let mut push = |p: Point| {
        if !out.iter().any(|q| q.dist_sq(&p) <= GEO_EPS * GEO_EPS) {
            out.push(p);
        }
    };
    // vertical edges x = ±0.5
    for edge_x in [HALF, -HALF] {
        let dx = edge_x - d.center.x;
        let h_sq = r * r - dx * dx;
        if h_sq < -GEO_EPS {
            continue;
        }
        let h = h_sq.max(0.0).sqrt();
        let ys: &[f64] = if h <= GEO_EPS { &[d.center.y] } else { &[d.center.y - h, d.center.y + h] };
        for &y in ys {
            if y.abs() <= HALF + GEO_EPS {
                push(Point::new(edge_x, y.clamp(-HALF, HALF)));
            }
        }
    }
    // horizontal edges y = ±0.5
    for edge_y in [HALF, -HALF] {
        let dy = edge_y - d.center.y;
        let h_sq = r * r - dy * dy;
        if h_sq < -GEO_EPS {
            continue;
        }
        let h = h_sq.max(0.0).sqrt();
        let xs: &[f64] = if h <= GEO_EPS { &[d.center.x] } else { &[d.center.x - h, d.center.x + h] };
        for &x in xs {
            if x.abs() <= HALF + GEO_EPS {
                push(Point::new(x.clamp(-HALF, HALF), edge_y));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;
    use std::f64::consts::PI;

    /// Rejection-sampling oracle for the clipped disk area: sample uniformly
    /// in the disk, count the fraction landing in the square.
    fn disk_area_oracle(d: Disk, samples: u64, seed: u64) -> McArea {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut hits = 0u64;
        for _ in 0..samples {
            let t = 2.0 * PI * rng.gen::<f64>();
            let rho = d.radius * rng.gen::<f64>().sqrt();
            let p = Point::new(d.center.x + rho * t.cos(), d.center.y + rho * t.sin());
            if p.x.abs() <= HALF && p.y.abs() <= HALF {
                hits += 1;
            }
        }
        let disk = PI * d.radius * d.radius;
        let frac = hits as f64 / samples as f64;
        McArea {
            value: disk * frac,
            std_err: disk * (frac * (1.0 - frac) / samples as f64).sqrt(),
        }
    }

    #[test]
    fn distance_basics() {
        let o = Point::new(0.0, 0.0);
        assert_eq!(distance(o, o), 0.0);
        assert!((distance(Point::new(-0.5, -0.5), Point::new(0.5, 0.5)) - 2f64.sqrt()).abs() < 1e-15);
        assert!((distance(Point::new(0.1, 0.0), Point::new(0.0, 0.1)) - 0.02f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn disk_area_interior_edge_corner() {
        let full = clipped_disk_area(Disk::new(Point::new(0.0, 0.0), 0.3));
        assert!((full - PI * 0.09).abs() < 1e-14);
        let corner = clipped_disk_area(Disk::new(Point::new(0.5, 0.5), 0.3));
        assert!((corner - PI * 0.09 / 4.0).abs() < 1e-14);
        let edge = clipped_disk_area(Disk::new(Point::new(0.5, 0.0), 0.3));
        assert!((edge - PI * 0.09 / 2.0).abs() < 1e-14);
    }

    #[test]
    fn disk_area_near_edge_matches_oracle() {
        let d = Disk::new(Point::new(0.45, 0.0), 0.1);
        let exact = clipped_disk_area(d);
        // one circular segment cut off by x = 0.5
        let by_hand = 0.01 * (PI - unit_segment(0.5));
        assert!((exact - by_hand).abs() < 1e-15);
        let mc = disk_area_oracle(d, 10_000_000, 0xA5A5);
        assert!((exact - mc.value).abs() <= 3.0 * mc.std_err, "exact {exact} vs mc {mc:?}");
    }

    #[test]
    fn disk_area_outside_center_and_huge_radius() {
        // center outside the square, disk still reaches in
        let d = Disk::new(Point::new(0.7, 0.0), 0.3);
        let a = clipped_disk_area(d);
        assert!(a > 0.0 && a < PI * 0.09 / 2.0);
        let mc = disk_area_oracle(d, 4_000_000, 7);
        assert!((a - mc.value).abs() <= 3.0 * mc.std_err);
        // disk covering the whole square
        let whole = clipped_disk_area(Disk::new(Point::new(0.3, -0.2), 2.0));
        assert!((whole - 1.0).abs() < 1e-12);
        // far away
        assert_eq!(clipped_disk_area(Disk::new(Point::new(5.0, 5.0), 0.5)), 0.0);
    }

    #[test]
    fn disk_area_oracle_sweep() {
        // randomized agreement check against the rejection oracle
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for case in 0..300 {
            let d = Disk::new(
                Point::new(rng.gen::<f64>() * 1.6 - 0.8, rng.gen::<f64>() * 1.6 - 0.8),
                rng.gen::<f64>() * 0.8 + 1e-3,
            );
            let exact = clipped_disk_area(d);
            let mc = disk_area_oracle(d, 60_000, 1000 + case);
            assert!(
                (exact - mc.value).abs() <= 4.0 * mc.std_err + 1e-9,
                "case {case}: {d:?} exact {exact} mc {mc:?}"
            );
        }
    }

    #[test]
    fn lens_identical_and_disjoint() {
        let a = Disk::new(Point::new(0.0, 0.0), 0.2);
        let same = clipped_lens_area(a, a, 10, 1);
        assert_eq!(same.std_err, 0.0);
        assert!((same.value - PI * 0.04).abs() < 1e-14);
        let far = Disk::new(Point::new(0.45, 0.0), 0.2);
        let none = clipped_lens_area(a, far, 10, 1);
        assert_eq!(none.value, 0.0);
    }

    #[test]
    fn lens_interior_matches_closed_form() {
        let a = Disk::new(Point::new(-0.1, 0.0), 0.2);
        let b = Disk::new(Point::new(0.1, 0.0), 0.2);
        let est = clipped_lens_area(a, b, 100_000, 3);
        let expected = 2.0 * 0.04 * (0.5f64).acos() - 0.1 * (4.0f64 * 0.04 - 0.04).sqrt();
        // lens fully interior, so the fast path is exact
        assert_eq!(est.std_err, 0.0);
        assert!((est.value - expected).abs() < 1e-14);
    }

    #[test]
    fn lens_clipped_by_square() {
        // lens straddling the right edge
        let a = Disk::new(Point::new(0.42, 0.0), 0.2);
        let b = Disk::new(Point::new(0.58, 0.0), 0.2);
        let est = clipped_lens_area(a, b, 400_000, 11);
        assert!(est.std_err > 0.0);
        // oracle: unclipped lens, then sample the lens and clip
        let d = distance(a.center, b.center);
        let lens = lens_area_unclipped(0.2, 0.2, d);
        assert!(est.value < lens);
        assert!(est.value > 0.0);
        // independent estimate with another seed agrees within joint error
        let est2 = clipped_lens_area(a, b, 400_000, 99);
        let tol = 4.0 * (est.std_err + est2.std_err);
        assert!((est.value - est2.value).abs() <= tol);
    }

    #[test]
    fn circle_pair_cases() {
        let r = 0.2;
        let at = |x: f64, y: f64| Point::new(x, y);
        match circle_pair_intersections(Disk::new(at(0.0, 0.0), r), Disk::new(at(0.4, 0.0), r)).unwrap() {
            CirclePair::Tangent(p) => {
                assert!((p.x - 0.2).abs() < 1e-12 && p.y.abs() < 1e-12);
            }
            other => panic!("expected tangency, got {other:?}"),
        }
        match circle_pair_intersections(Disk::new(at(0.0, 0.0), r), Disk::new(at(0.2, 0.0), r)).unwrap() {
            CirclePair::Crossing(p, q) => {
                let h = 0.1 * 3f64.sqrt();
                assert!((p.x - 0.1).abs() < 1e-12 && (q.x - 0.1).abs() < 1e-12);
                assert!((p.y + h).abs() < 1e-12 && (q.y - h).abs() < 1e-12 || (p.y - h).abs() < 1e-12 && (q.y + h).abs() < 1e-12);
            }
            other => panic!("expected crossing, got {other:?}"),
        }
        assert_eq!(
            circle_pair_intersections(Disk::new(at(0.0, 0.0), r), Disk::new(at(1.0, 0.0), r)).unwrap(),
            CirclePair::Disjoint
        );
        assert_eq!(
            circle_pair_intersections(Disk::new(at(0.0, 0.0), r), Disk::new(at(0.0, 0.0), r)),
            Err(Error::CoincidentCircles)
        );
    }

    #[test]
    fn circle_square_crossings() {
        let pts = circle_square_intersections(Disk::new(Point::new(0.5, 0.5), 0.2));
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().any(|p| (p.x - 0.3).abs() < 1e-12 && (p.y - 0.5).abs() < 1e-12));
        assert!(pts.iter().any(|p| (p.x - 0.5).abs() < 1e-12 && (p.y - 0.3).abs() < 1e-12));

        assert!(circle_square_intersections(Disk::new(Point::new(0.0, 0.0), 0.3)).is_empty());

        let chord = circle_square_intersections(Disk::new(Point::new(0.0, 0.45), 0.1));
        let xs = (0.01f64 - 0.0025).sqrt();
        assert_eq!(chord.len(), 2);
        assert!(chord.iter().any(|p| (p.x + xs).abs() < 1e-12 && (p.y - 0.5).abs() < 1e-12));
        assert!(chord.iter().any(|p| (p.x - xs).abs() < 1e-12 && (p.y - 0.5).abs() < 1e-12));
    }

    proptest! {
        #[test]
        fn disk_area_monotone_in_radius(
            cx in -0.8f64..0.8, cy in -0.8f64..0.8,
            r in 1e-3f64..0.7, dr in 1e-4f64..0.3,
        ) {
            let c = Point::new(cx, cy);
            let small = clipped_disk_area(Disk::new(c, r));
            let big = clipped_disk_area(Disk::new(c, r + dr));
            prop_assert!(big + 1e-12 >= small);
        }

        #[test]
        fn disk_area_bounded_and_exact_inside(
            cx in -0.8f64..0.8, cy in -0.8f64..0.8, r in 1e-3f64..0.9,
        ) {
            let a = clipped_disk_area(Disk::new(Point::new(cx, cy), r));
            let disk = PI * r * r;
            prop_assert!(a >= 0.0 && a <= disk.min(1.0) + 1e-12);
            let inside = cx.abs() + r <= HALF && cy.abs() + r <= HALF;
            if inside {
                prop_assert!((a - disk).abs() < 1e-12);
            }
        }

        #[test]
        fn disk_area_dihedral_symmetry(
            cx in -0.9f64..0.9, cy in -0.9f64..0.9, r in 1e-3f64..0.9,
        ) {
            let base = clipped_disk_area(Disk::new(Point::new(cx, cy), r));
            for (ix, iy) in [(-cx, cy), (cx, -cy), (-cx, -cy), (cy, cx), (-cy, cx), (cy, -cx), (-cy, -cx)] {
                let img = clipped_disk_area(Disk::new(Point::new(ix, iy), r));
                prop_assert!((base - img).abs() <= 1e-12, "{base} vs {img} at ({ix},{iy})");
            }
        }

        #[test]
        fn lens_at_most_either_disk(
            ax in -0.6f64..0.6, ay in -0.6f64..0.6,
            bx in -0.6f64..0.6, by in -0.6f64..0.6,
            r in 1e-2f64..0.5, seed in 0u64..1_000,
        ) {
            let a = Disk::new(Point::new(ax, ay), r);
            let b = Disk::new(Point::new(bx, by), r);
            let lens = clipped_lens_area(a, b, 20_000, seed);
            let cap = clipped_disk_area(a).min(clipped_disk_area(b));
            prop_assert!(lens.value <= cap + 3.0 * lens.std_err + 1e-9);
        }
    }
}
