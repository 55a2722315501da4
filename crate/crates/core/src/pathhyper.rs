//! The path hypergraph `H(G, k)`: for every simple path on `k - 1` vertices
//! of `G` and every vertex off that path, the union is a k-edge. For `k = 2`
//! this is the complete graph on `V(G)`.
//!
//! "Path of length `k - 2`" means `k - 1` vertices and `k - 2` edges.

use std::collections::HashSet;

use thiserror::Error;

use crate::hypergraph::{Graph, Hypergraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathHyperError {
    #[error("uniformity must be at least 2, got {0}")]
    InvalidUniformity(usize),
    #[error("paths need at least one vertex")]
    EmptyPath,
}

/// Calls `visit` once per undirected simple path on exactly `vertices`
/// vertices. Each path is reported in the orientation whose first vertex is
/// smaller than its last; single vertices are reported as themselves.
pub fn for_each_path<F: FnMut(&[usize])>(g: &Graph, vertices: usize, mut visit: F) {
    if vertices == 0 {
        return;
    }
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(vertices);
    for start in 0..n {
        path.push(start);
        on_path[start] = true;
        extend(g, vertices, &mut path, &mut on_path, &mut visit);
        on_path[start] = false;
        path.pop();
    }
}

fn extend<F: FnMut(&[usize])>(g: &Graph, target: usize, path: &mut Vec<usize>, on_path: &mut [bool], visit: &mut F) {
    if path.len() == target {
        if target == 1 || path[0] < path[target - 1] {
            visit(path);
        }
        return;
    }
    let last = *path.last().expect("nonempty");
    for &next in g.neighbors(last) {
        if on_path[next] {
            continue;
        }
        // the last vertex must exceed the first for a canonical path
        if path.len() + 1 == target && next < path[0] {
            continue;
        }
        on_path[next] = true;
        path.push(next);
        extend(g, target, path, on_path, visit);
        path.pop();
        on_path[next] = false;
    }
}

pub fn count_paths(g: &Graph, vertices_per_path: usize) -> Result<u64, PathHyperError> {
    if vertices_per_path == 0 {
        return Err(PathHyperError::EmptyPath);
    }
    let mut count = 0u64;
    for_each_path(g, vertices_per_path, |_| count += 1);
    Ok(count)
}

pub fn path_hypergraph(g: &Graph, k: usize) -> Result<Hypergraph, PathHyperError> {
    if k < 2 {
        return Err(PathHyperError::InvalidUniformity(k));
    }
    let n = g.vertex_count();
    if n < k {
        // no path plus an off-path vertex fits
        return Ok(Hypergraph::empty(k, n).expect("k >= 2"));
    }
    if k == 2 {
        return Ok(Hypergraph::complete(n, 2).expect("n >= 2"));
    }
    let mut edges: HashSet<Vec<usize>> = HashSet::new();
    let mut on_path = vec![false; n];
    for_each_path(g, k - 1, |path| {
        for &v in path {
            on_path[v] = true;
        }
        for (extra, &taken) in on_path.iter().enumerate() {
            if !taken {
                let mut e = Vec::with_capacity(k);
                e.extend_from_slice(path);
                e.push(extra);
                e.sort_unstable();
                edges.insert(e);
            }
        }
        for &v in path {
            on_path[v] = false;
        }
    });
    Ok(Hypergraph::new(k, n, edges).expect("edges are valid k-sets"))
}

/// `e(H(G,k)) ≤ |V(G)| · #paths(k-1)`, and when `Δ(G) ≤ 2d` also
/// `≤ |V(G)|² (2d)^{k-2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeBound {
    pub edges: usize,
    pub path_bound: u128,
    pub degree_bound: Option<f64>,
}

impl EdgeBound {
    pub fn holds(&self) -> bool {
        self.edges as u128 <= self.path_bound && self.degree_bound.is_none_or(|b| self.edges as f64 <= b)
    }
}

pub fn edge_bound(g: &Graph, h: &Hypergraph, d: Option<f64>) -> EdgeBound {
    let k = h.uniformity();
    let n = g.vertex_count() as u128;
    let paths = if k >= 2 {
        count_paths(g, k - 1).expect("k - 1 >= 1") as u128
    } else {
        0
    };
    let degree_bound = d
        .filter(|&d| g.max_degree() as f64 <= 2.0 * d)
        .map(|d| (n * n) as f64 * (2.0 * d).powi(k as i32 - 2));
    EdgeBound {
        edges: h.edge_count(),
        path_bound: n * paths,
        degree_bound,
    }
}
