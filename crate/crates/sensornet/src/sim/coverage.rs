//! Exact k-coverage decision via candidate points.
//!
//! The coverage count over the square is piecewise constant on the
//! arrangement of the sensing circles, and its minimum is attained on a face
//! whose closure contains a candidate point: a corner of the square, a
//! crossing of a circle with the square boundary, or a crossing of two
//! circles. Counting sensors at a candidate alone is not enough — the
//! candidate itself lies *on* the circles bounding the minimal face (the
//! hole between three pairwise-crossing circles is the classic trap) — so
//! each candidate is also probed a hair into every adjacent face and the
//! count is taken there. Probe offsets are far above floating-point noise
//! and far below any feature scale, so the decision is exact outside a
//! sliver set of negligible measure.

use crate::geometry::{closed_within, Point, GEO_EPS, HALF};

use super::graph::{cell_of, grid_dim};

/// How far candidates are nudged into adjacent faces.
const PROBE_DELTA: f64 = 1e-7;

struct SensorIndex<'a> {
    points: &'a [Point],
    dim: usize,
    bins: Vec<Vec<u32>>,
}

impl<'a> SensorIndex<'a> {
    fn new(points: &'a [Point], r: f64) -> Self {
        let dim = grid_dim(r);
        let mut bins = vec![Vec::new(); dim * dim];
        for (i, p) in points.iter().enumerate() {
            bins[cell_of(p.y, dim) * dim + cell_of(p.x, dim)].push(i as u32);
        }
        SensorIndex { points, dim, bins }
    }

    /// Does `c` have at least `k` sensors within closed distance `r`?
    fn count_at_least(&self, c: Point, r_sq: f64, k: u32) -> bool {
        let mut remaining = k;
        let (cx, cy) = (cell_of(c.x, self.dim) as i64, cell_of(c.y, self.dim) as i64);
        for dy in -1..=1i64 {
            let y = cy + dy;
            if y < 0 || y >= self.dim as i64 {
                continue;
            }
            for dx in -1..=1i64 {
                let x = cx + dx;
                if x < 0 || x >= self.dim as i64 {
                    continue;
                }
                for &i in &self.bins[y as usize * self.dim + x as usize] {
                    if closed_within(self.points[i as usize].dist_sq(&c), r_sq) {
                        remaining -= 1;
                        if remaining == 0 {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    /// Visit each unordered sensor pair within distance `bound` once.
    fn for_close_pairs(&self, bound: f64, mut visit: impl FnMut(usize, usize) -> bool) -> bool {
        let bound_sq = bound * bound;
        let reach = (bound * self.dim as f64).ceil() as i64;
        for i in 0..self.points.len() {
            let p = self.points[i];
            let (cx, cy) = (cell_of(p.x, self.dim) as i64, cell_of(p.y, self.dim) as i64);
            for dy in -reach..=reach {
                let y = cy + dy;
                if y < 0 || y >= self.dim as i64 {
                    continue;
                }
                for dx in -reach..=reach {
                    let x = cx + dx;
                    if x < 0 || x >= self.dim as i64 {
                        continue;
                    }
                    for &j in &self.bins[y as usize * self.dim + x as usize] {
                        let j = j as usize;
                        if j > i
                            && closed_within(self.points[i].dist_sq(&self.points[j]), bound_sq)
                            && !visit(i, j)
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

#[inline]
fn in_square(p: Point) -> bool {
    p.x.abs() <= HALF && p.y.abs() <= HALF
}

/// The candidate point itself and every in-square probe around it must see
/// at least `k` sensors.
fn candidate_ok(index: &SensorIndex, v: Point, dirs: &[(f64, f64)], r_sq: f64, k: u32) -> bool {
    if !index.count_at_least(v, r_sq, k) {
        return false;
    }
    for &(dx, dy) in dirs {
        let norm = (dx * dx + dy * dy).sqrt();
        if norm < 1e-9 {
            continue; // degenerate direction (tangential contact)
        }
        let p = Point::new(v.x + PROBE_DELTA * dx / norm, v.y + PROBE_DELTA * dy / norm);
        if in_square(p) && !index.count_at_least(p, r_sq, k) {
            return false;
        }
    }
    true
}

/// Exact decision: is every point of the square within `r` of at least `k`
/// sensors?
pub fn is_k_covered(points: &[Point], r: f64, k: u32) -> bool {
    if k == 0 {
        return true;
    }
    if !(r > 0.0) || (points.len() as u64) < k as u64 {
        return false;
    }
    let r_sq = r * r;
    let index = SensorIndex::new(points, r);

    // corners, probed along the inward diagonal
    for (sx, sy) in [(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)] {
        let corner = Point::new(sx * HALF, sy * HALF);
        if !candidate_ok(&index, corner, &[(-sx, -sy)], r_sq, k) {
            return false;
        }
    }

    // circle / boundary crossings, probed into the faces on both sides of
    // the circle (inward normal of the edge ± outward normal of the circle)
    for p in points {
        for edge_x in [HALF, -HALF] {
            let dx = edge_x - p.x;
            let h_sq = r_sq - dx * dx;
            if h_sq < 0.0 {
                continue;
            }
            let h = h_sq.sqrt();
            let ne = (-edge_x.signum(), 0.0);
            for y in [p.y - h, p.y + h] {
                if y.abs() > HALF + GEO_EPS {
                    continue;
                }
                let v = Point::new(edge_x, y.clamp(-HALF, HALF));
                let u = ((v.x - p.x) / r, (v.y - p.y) / r);
                let dirs = [(ne.0 + u.0, ne.1 + u.1), (ne.0 - u.0, ne.1 - u.1)];
                if !candidate_ok(&index, v, &dirs, r_sq, k) {
                    return false;
                }
            }
        }
        for edge_y in [HALF, -HALF] {
            let dy = edge_y - p.y;
            let h_sq = r_sq - dy * dy;
            if h_sq < 0.0 {
                continue;
            }
            let h = h_sq.sqrt();
            let ne = (0.0, -edge_y.signum());
            for x in [p.x - h, p.x + h] {
                if x.abs() > HALF + GEO_EPS {
                    continue;
                }
                let v = Point::new(x.clamp(-HALF, HALF), edge_y);
                let u = ((v.x - p.x) / r, (v.y - p.y) / r);
                let dirs = [(ne.0 + u.0, ne.1 + u.1), (ne.0 - u.0, ne.1 - u.1)];
                if !candidate_ok(&index, v, &dirs, r_sq, k) {
                    return false;
                }
            }
        }
    }

    // circle / circle crossings inside the square, probed into all four
    // local faces (bisectors of the two outward normals)
    index.for_close_pairs(2.0 * r, |i, j| {
        let (a, b) = (points[i], points[j]);
        let d_sq = a.dist_sq(&b);
        if d_sq <= GEO_EPS {
            return true; // coincident sensors, no boundary crossing
        }
        let d = d_sq.sqrt();
        let along = d_sq / (2.0 * d); // equal radii
        let h_sq = r_sq - along * along;
        if h_sq < 0.0 {
            return true;
        }
        let h = h_sq.max(0.0).sqrt();
        let (ux, uy) = ((b.x - a.x) / d, (b.y - a.y) / d);
        let base = Point::new(a.x + along * ux, a.y + along * uy);
        for sign in [1.0, -1.0] {
            let v = Point::new(base.x - sign * h * uy, base.y + sign * h * ux);
            if !v.in_unit_square() {
                continue;
            }
            let na = ((v.x - a.x) / r, (v.y - a.y) / r);
            let nb = ((v.x - b.x) / r, (v.y - b.y) / r);
            let dirs = [
                (na.0 + nb.0, na.1 + nb.1),
                (na.0 - nb.0, na.1 - nb.1),
                (-na.0 + nb.0, -na.1 + nb.1),
                (-na.0 - nb.0, -na.1 - nb.1),
            ];
            if !candidate_ok(&index, v, &dirs, r_sq, k) {
                return false;
            }
            if h <= GEO_EPS {
                break; // tangency, single point
            }
        }
        true
    })
}
