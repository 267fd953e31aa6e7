//! Geometric graphs with seeded link failures.

use crate::geometry::{closed_within, Point};
use crate::util::{mix64, u01};

/// An undirected geometric graph. No self loops; adjacency lists are sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    positions: Vec<Point>,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    /// Build from an explicit edge list (mostly for tests and oracles).
    pub fn from_edges(positions: Vec<Point>, edges: &[(u32, u32)]) -> Self {
        let mut adj = vec![Vec::new(); positions.len()];
        for &(u, v) in edges {
            assert_ne!(u, v, "self loop");
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Graph { positions, adj }
    }

    pub fn node_count(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn edge_count(&self) -> u64 {
        self.adj.iter().map(|a| a.len() as u64).sum::<u64>() / 2
    }
}

/// Decide the Bernoulli link draw for one unordered node pair.
///
/// The draw is a pure hash of `(seed, min(i,j), max(i,j))`, so the edge set
/// does not depend on the order pairs are enumerated in, a spatial-index
/// construction is bit-identical to the all-pairs one, and growing the
/// radius only ever adds edges.
#[inline]
pub(crate) fn pair_allows(edge_seed: u64, i: u32, j: u32, p: f64) -> bool {
    if p >= 1.0 {
        return true;
    }
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    u01(mix64(edge_seed ^ mix64(((a as u64) << 32) | b as u64))) < p
}

/// Pick a bucket-grid resolution whose cell side is at least `r`, so a 3x3
/// neighborhood scan sees every candidate pair.
#[inline]
pub(crate) fn grid_dim(r: f64) -> usize {
    if r >= 1.0 {
        1
    } else {
        ((1.0 / r.max(1e-6)).floor() as usize).clamp(1, 64)
    }
}

#[inline]
pub(crate) fn cell_of(x: f64, dim: usize) -> usize {
    (((x + 0.5) * dim as f64).floor() as i64).clamp(0, dim as i64 - 1) as usize
}

/// Build the graph on `points` with edges between nodes at distance `<= r`
/// that also pass an independent Bernoulli(`p`) link draw. Deterministic per
/// seed; a uniform cell index keeps construction near-linear.
pub fn build_geometric_graph(points: &[Point], r: f64, p: f64, seed: u64) -> Graph {
    assert!(p > 0.0 && p <= 1.0, "link probability must be in (0, 1]");
    let n = points.len();
    let mut adj = vec![Vec::new(); n];
    if n > 0 && r > 0.0 {
        let dim = grid_dim(r);
        let mut bins = vec![Vec::<u32>::new(); dim * dim];
        for (i, pt) in points.iter().enumerate() {
            bins[cell_of(pt.y, dim) * dim + cell_of(pt.x, dim)].push(i as u32);
        }
        let r_sq = r * r;
        for i in 0..n {
            let (cx, cy) = (cell_of(points[i].x, dim) as i64, cell_of(points[i].y, dim) as i64);
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
                    for &j in &bins[y as usize * dim + x as usize] {
                        let j = j as usize;
                        if j <= i {
                            continue;
                        }
                        if closed_within(points[i].dist_sq(&points[j]), r_sq)
                            && pair_allows(seed, i as u32, j as u32, p)
                        {
                            adj[i].push(j as u32);
                            adj[j].push(i as u32);
                        }
                    }
                }
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Graph { positions: points.to_vec(), adj }
}
