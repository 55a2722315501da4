//! Finite uniform hypergraphs and simple graphs on dense `0..n` vertex sets.

use std::collections::HashSet;
use std::io::{Read, Write};

use itertools::Itertools;
use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HypergraphError {
    #[error("uniformity must be at least 1, got {0}")]
    InvalidUniformity(usize),
    #[error("need at least k = {k} vertices, got {n}")]
    TooFewVertices { n: usize, k: usize },
    #[error("edge {index}: expected {expected} vertices, found {found}")]
    Arity {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("edge {index}: vertex {vertex} appears more than once")]
    RepeatedVertex { index: usize, vertex: usize },
    #[error("edge {index}: vertices must be strictly increasing")]
    NotIncreasing { index: usize },
    #[error("edge {index}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("edge {index} duplicates an earlier edge")]
    DuplicateEdge { index: usize },
    #[error("vertex {vertex} out of range for n = {n}")]
    NoSuchVertex { vertex: usize, n: usize },
    #[error("complete partite hypergraph needs at least one part")]
    NoParts,
    #[error("part {index} has size zero")]
    EmptyPart { index: usize },
    #[error("expected a graph (k = 2), got k = {0}")]
    NotAGraph(usize),
    #[error("cannot place {m} distinct edges among {available} possible")]
    TooManyEdges { m: usize, available: u128 },
    #[error("malformed hypergraph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A k-uniform hypergraph. Edges are sorted vertex tuples kept in
/// lexicographic order without duplicates. Isolated vertices are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph, sorting each edge and dropping repeated edges.
    pub fn new<I>(k: usize, n: usize, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        if k == 0 {
            return Err(HypergraphError::InvalidUniformity(k));
        }
        let mut out = Vec::new();
        for (index, mut e) in edges.into_iter().enumerate() {
            e.sort_unstable();
            check_edge(index, &e, k, n)?;
            out.push(e);
        }
        out.sort_unstable();
        out.dedup();
        Ok(Hypergraph { k, n, edges: out })
    }

    pub fn empty(k: usize, n: usize) -> Result<Self, HypergraphError> {
        Self::new(k, n, std::iter::empty())
    }

    /// All C(n, k) k-subsets of `0..n`.
    pub fn complete(n: usize, k: usize) -> Result<Self, HypergraphError> {
        if k == 0 {
            return Err(HypergraphError::InvalidUniformity(k));
        }
        if n < k {
            return Err(HypergraphError::TooFewVertices { n, k });
        }
        let edges = (0..n).combinations(k).collect();
        Ok(Hypergraph { k, n, edges })
    }

    /// Complete t-partite t-uniform hypergraph; part `i` occupies a
    /// contiguous block of vertices.
    pub fn complete_partite(part_sizes: &[usize]) -> Result<Self, HypergraphError> {
        if part_sizes.is_empty() {
            return Err(HypergraphError::NoParts);
        }
        if let Some(index) = part_sizes.iter().position(|&s| s == 0) {
            return Err(HypergraphError::EmptyPart { index });
        }
        let mut offset = 0;
        let parts: Vec<Vec<usize>> = part_sizes
            .iter()
            .map(|&s| {
                let block = (offset..offset + s).collect();
                offset += s;
                block
            })
            .collect();
        let mut edges: Vec<Vec<usize>> = parts
            .iter()
            .multi_cartesian_product()
            .map(|e| e.into_iter().copied().collect())
            .collect();
        edges.sort_unstable();
        Ok(Hypergraph {
            k: part_sizes.len(),
            n: offset,
            edges,
        })
    }

    /// `m` distinct edges drawn uniformly from all k-subsets of `0..n`.
    pub fn random<R: Rng + ?Sized>(k: usize, n: usize, m: usize, rng: &mut R) -> Result<Self, HypergraphError> {
        if k == 0 {
            return Err(HypergraphError::InvalidUniformity(k));
        }
        if n < k {
            return Err(HypergraphError::TooFewVertices { n, k });
        }
        let available = binomial_u128(n as u128, k as u128);
        if (m as u128) > available {
            return Err(HypergraphError::TooManyEdges { m, available });
        }
        let mut seen: HashSet<Vec<usize>> = HashSet::with_capacity(m);
        let mut edges = Vec::with_capacity(m);
        while edges.len() < m {
            let mut e = sample(rng, n, k).into_vec();
            e.sort_unstable();
            if seen.insert(e.clone()) {
                edges.push(e);
            }
        }
        edges.sort_unstable();
        Ok(Hypergraph { k, n, edges })
    }

    /// Removes isolated vertices, relabelling the rest in increasing order.
    pub fn without_isolated(&self) -> Hypergraph {
        let degrees = self.degrees();
        let mut relabel = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if degrees[v] > 0 {
                relabel[v] = next;
                next += 1;
            }
        }
        let mut edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| relabel[v]).collect())
            .collect();
        edges.sort_unstable();
        Hypergraph {
            k: self.k,
            n: next,
            edges,
        }
    }

    pub fn uniformity(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).is_ok()
    }

    pub fn degree(&self, v: usize) -> Result<usize, HypergraphError> {
        if v >= self.n {
            return Err(HypergraphError::NoSuchVertex { vertex: v, n: self.n });
        }
        Ok(self.edges.iter().filter(|e| e.contains(&v)).count())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        self.degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(v, _)| v)
            .collect()
    }

    /// Every edge of `self` is an edge of `other` (same k and n).
    pub fn is_subgraph_of(&self, other: &Hypergraph) -> bool {
        self.k == other.k && self.n == other.n && self.edges.iter().all(|e| other.edges.binary_search(e).is_ok())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&HypergraphFile {
            edges: self.edges.clone(),
            k: self.k,
            n: self.n,
        })
        .expect("plain integers always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, HypergraphError> {
        let raw: HypergraphFile = serde_json::from_str(s)?;
        raw.into_hypergraph()
    }
}

fn check_edge(index: usize, e: &[usize], k: usize, n: usize) -> Result<(), HypergraphError> {
    if e.len() != k {
        return Err(HypergraphError::Arity {
            index,
            expected: k,
            found: e.len(),
        });
    }
    if let Some(w) = e.windows(2).find(|w| w[0] == w[1]) {
        return Err(HypergraphError::RepeatedVertex { index, vertex: w[0] });
    }
    if let Some(&vertex) = e.iter().find(|&&v| v >= n) {
        return Err(HypergraphError::VertexOutOfRange { index, vertex, n });
    }
    Ok(())
}

pub(crate) fn binomial_u128(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

// Field order is alphabetical so the derived writer emits sorted keys.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HypergraphFile {
    edges: Vec<Vec<usize>>,
    k: usize,
    n: usize,
}

impl HypergraphFile {
    fn into_hypergraph(self) -> Result<Hypergraph, HypergraphError> {
        if self.k == 0 {
            return Err(HypergraphError::InvalidUniformity(0));
        }
        let mut seen = HashSet::with_capacity(self.edges.len());
        for (index, e) in self.edges.iter().enumerate() {
            if e.len() != self.k {
                return Err(HypergraphError::Arity {
                    index,
                    expected: self.k,
                    found: e.len(),
                });
            }
            if let Some(w) = e.windows(2).find(|w| w[0] >= w[1]) {
                return Err(if w[0] == w[1] {
                    HypergraphError::RepeatedVertex { index, vertex: w[0] }
                } else {
                    HypergraphError::NotIncreasing { index }
                });
            }
            check_edge(index, e, self.k, self.n)?;
            if !seen.insert(e.as_slice()) {
                return Err(HypergraphError::DuplicateEdge { index });
            }
        }
        Hypergraph::new(self.k, self.n, self.edges)
    }
}

pub fn read_hypergraph<R: Read>(reader: R) -> Result<Hypergraph, HypergraphError> {
    let raw: HypergraphFile = serde_json::from_reader(reader)?;
    raw.into_hypergraph()
}

/// Canonical single-line writer: sorted keys, sorted edges, trailing newline.
pub fn write_hypergraph<W: Write>(h: &Hypergraph, mut writer: W) -> Result<(), HypergraphError> {
    writer.write_all(h.to_json().as_bytes())?;
    writer.write_all(b"\n")?;
    Ok(())
}

/// A simple undirected graph: a 2-uniform hypergraph with adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    inner: Hypergraph,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let h = Hypergraph::new(2, n, edges.into_iter().map(|(u, v)| vec![u, v]))?;
        Self::from_hypergraph(h)
    }

    pub fn from_hypergraph(h: Hypergraph) -> Result<Self, HypergraphError> {
        if h.k != 2 {
            return Err(HypergraphError::NotAGraph(h.k));
        }
        let mut adjacency = vec![Vec::new(); h.n];
        for e in &h.edges {
            adjacency[e[0]].push(e[1]);
            adjacency[e[1]].push(e[0]);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { inner: h, adjacency })
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (0..n).tuple_combinations()).expect("valid by construction")
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i + 5`.
    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        Self::new(10, outer.chain(inner).chain(spokes)).expect("valid by construction")
    }

    pub fn vertex_count(&self) -> usize {
        self.inner.n
    }

    pub fn edge_count(&self) -> usize {
        self.inner.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adjacency.len() && self.adjacency[u].contains(&v)
    }

    pub fn degree(&self, v: usize) -> Result<usize, HypergraphError> {
        self.adjacency
            .get(v)
            .map(Vec::len)
            .ok_or(HypergraphError::NoSuchVertex {
                vertex: v,
                n: self.inner.n,
            })
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.inner.edges.iter().map(|e| (e[0], e[1]))
    }

    pub fn as_hypergraph(&self) -> &Hypergraph {
        &self.inner
    }

    pub fn into_hypergraph(self) -> Hypergraph {
        self.inner
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, HypergraphError> {
        Self::new(self.vertex_count(), self.edges().chain(std::iter::once((u, v))))
    }

    /// Each pair independently with probability `p`, pairs in row-major order.
    pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        Self::new(n, edges).expect("valid by construction")
    }
}

pub fn read_graph<R: Read>(reader: R) -> Result<Graph, HypergraphError> {
    Graph::from_hypergraph(read_hypergraph(reader)?)
}

pub fn write_graph<W: Write>(g: &Graph, writer: W) -> Result<(), HypergraphError> {
    write_hypergraph(&g.inner, writer)
}
