//! Connectivity and exact vertex connectivity.

use super::graph::Graph;

pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    pub(crate) fn reset(&mut self, n: usize) {
        self.parent.clear();
        self.parent.extend(0..n as u32);
    }

    pub(crate) fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    /// Returns true when the two sets were distinct and got merged.
    pub(crate) fn union(&mut self, x: u32, y: u32) -> bool {
        let rx = self.find(x);
        let ry = self.find(y);
        if rx == ry {
            return false;
        }
        self.parent[rx.max(ry) as usize] = rx.min(ry);
        true
    }
}

/// Whether one connected component spans all nodes. The empty graph and a
/// single node count as connected.
pub fn is_connected(g: &Graph) -> bool {
    let n = g.node_count();
    if n <= 1 {
        return true;
    }
    let mut uf = UnionFind::new(n);
    let mut components = n as u64;
    for v in 0..n {
        for &w in g.neighbors(v) {
            if (w as usize) > v && uf.union(v as u32, w) {
                components -= 1;
                if components == 1 {
                    return true;
                }
            }
        }
    }
    components == 1
}

/// No articulation vertex (graph assumed connected, n >= 3). Iterative
/// lowlink so deep path graphs cannot blow the stack.
fn articulation_free(g: &Graph) -> bool {
    let n = g.node_count();
    let mut disc = vec![0u32; n];
    let mut low = vec![0u32; n];
    let mut parent = vec![u32::MAX; n];
    let mut next_child = vec![0usize; n];
    let mut timer = 1u32;
    let mut root_children = 0u32;
    let mut stack: Vec<u32> = vec![0];
    disc[0] = timer;
    low[0] = timer;
    timer += 1;
    while let Some(&top) = stack.last() {
        let v = top as usize;
        if next_child[v] < g.neighbors(v).len() {
            let w = g.neighbors(v)[next_child[v]];
            next_child[v] += 1;
            let wi = w as usize;
            if disc[wi] == 0 {
                parent[wi] = top;
                disc[wi] = timer;
                low[wi] = timer;
                timer += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push(w);
            } else if w != parent[v] {
                low[v] = low[v].min(disc[wi]);
            }
        } else {
            stack.pop();
            if let Some(&up) = stack.last() {
                let u = up as usize;
                low[u] = low[u].min(low[v]);
                if u != 0 && low[v] >= disc[u] {
                    return false;
                }
            }
        }
    }
    root_children < 2
}

/// Unit-capacity max flow on the vertex-split network, stopping as soon as
/// `target_flow` augmenting paths exist.
fn vertex_flow_at_least(g: &Graph, s: usize, t: usize, target_flow: u32) -> bool {
    let n = g.node_count();
    // node 2v = "in" side, 2v + 1 = "out" side
    let mut to: Vec<u32> = Vec::new();
    let mut cap: Vec<u32> = Vec::new();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); 2 * n];
    let add = |adj: &mut Vec<Vec<u32>>, to: &mut Vec<u32>, cap: &mut Vec<u32>, a: usize, b: usize, c: u32| {
        adj[a].push(to.len() as u32);
        to.push(b as u32);
        cap.push(c);
        adj[b].push(to.len() as u32);
        to.push(a as u32);
        cap.push(0);
    };
    let inf = target_flow + 1;
    for v in 0..n {
        let c = if v == s || v == t { inf } else { 1 };
        add(&mut adj, &mut to, &mut cap, 2 * v, 2 * v + 1, c);
    }
    for v in 0..n {
        for &w in g.neighbors(v) {
            add(&mut adj, &mut to, &mut cap, 2 * v + 1, 2 * w as usize, inf);
        }
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = 0u32;
    let mut prev_edge = vec![u32::MAX; 2 * n];
    let mut queue = std::collections::VecDeque::new();
    while flow < target_flow {
        prev_edge.iter_mut().for_each(|e| *e = u32::MAX);
        queue.clear();
        queue.push_back(source as u32);
        let mut reached = false;
        'bfs: while let Some(v) = queue.pop_front() {
            for &e in &adj[v as usize] {
                let w = to[e as usize];
                if cap[e as usize] > 0 && prev_edge[w as usize] == u32::MAX && w as usize != source {
                    prev_edge[w as usize] = e;
                    if w as usize == sink {
                        reached = true;
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
        }
        if !reached {
            return false;
        }
        // bottleneck then augment
        let mut bottleneck = u32::MAX;
        let mut v = sink;
        while v != source {
            let e = prev_edge[v] as usize;
            bottleneck = bottleneck.min(cap[e]);
            v = to[e ^ 1] as usize;
        }
        let mut v = sink;
        while v != source {
            let e = prev_edge[v] as usize;
            cap[e] -= bottleneck;
            cap[e ^ 1] += bottleneck;
            v = to[e ^ 1] as usize;
        }
        flow += bottleneck;
    }
    true
}

/// Exact decision of k-vertex-connectivity.
///
/// `k = 1` is plain connectivity; `k = 2` is the linear-time biconnectivity
/// check; larger `k` runs vertex-split max flows from a pivot to each
/// non-neighbor plus between non-adjacent neighbor pairs, which covers every
/// possible minimum cut. `k >= n` is false by convention (the complete graph
/// on `n` nodes is only `(n-1)`-connected).
pub fn vertex_connectivity_at_least(g: &Graph, k: u32) -> bool {
    if k == 0 {
        return true;
    }
    if k == 1 {
        return is_connected(g);
    }
    let n = g.node_count();
    if k as usize >= n {
        log::debug!("k = {k} >= node count {n}: treating as not k-connected");
        return false;
    }
    if !is_connected(g) {
        return false;
    }
    if k == 2 {
        return articulation_free(g);
    }
    if g.edge_count() == (n as u64) * (n as u64 - 1) / 2 {
        // complete graph, (n-1)-connected and k < n
        return true;
    }
    // any minimum cut either separates the pivot from some non-neighbor, or
    // contains the pivot and separates two of its (non-adjacent) neighbors
    let pivot = (0..n).max_by_key(|&v| g.degree(v)).unwrap();
    for t in 0..n {
        if t != pivot && !g.has_edge(pivot, t) && !vertex_flow_at_least(g, pivot, t, k) {
            return false;
        }
    }
    let nbrs = g.neighbors(pivot);
    for (ai, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[ai + 1..] {
            if !g.has_edge(a as usize, b as usize)
                && !vertex_flow_at_least(g, a as usize, b as usize, k)
            {
                return false;
            }
        }
    }
    true
}
