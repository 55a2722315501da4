//! Sparse random graphs with bounded degree and their edge-distribution check.
//!
//! [`generate`] samples `G(M, d/M)` and then deletes every edge touching a
//! vertex whose degree exceeds `2d`, so the maximum degree is at most `2d`
//! by construction. The edge-distribution property (every pair of disjoint
//! sets `S, T` of size at least `M/d^{1/3}` spans `(d/M)|S||T|` edges up to a
//! relative error of one half) only holds with good probability for very
//! large `d` (`d ≥ 10^9`), so [`check_edge_distribution`] reports and never
//! asserts.
//!
//! Stream discipline: one `ChaCha8Rng` seeded with `seed`, one uniform `f64`
//! draw per vertex pair in row-major order `(0,1), (0,2), .., (1,2), ..`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::Graph;

#[derive(Debug, Error, PartialEq)]
pub enum ExpanderError {
    #[error("density parameter d = {d} must satisfy 1 <= d <= M = {m}")]
    InvalidDensity { m: usize, d: f64 },
    #[error("exhaustive distribution check supports at most {max} vertices, got {m}")]
    TooLargeForExhaustive { m: usize, max: usize },
}

pub const MAX_EXHAUSTIVE_VERTICES: usize = 14;
pub const DEFAULT_TRIALS: usize = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpanderParams {
    pub m: usize,
    pub d: f64,
    pub seed: u64,
}

impl ExpanderParams {
    pub fn new(m: usize, d: f64, seed: u64) -> Result<Self, ExpanderError> {
        let p = ExpanderParams { m, d, seed };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), ExpanderError> {
        // M = 1 admits any d: there are no pairs to sample
        if !(self.d.is_finite() && self.d >= 1.0 && (self.d <= self.m as f64 || self.m <= 1)) {
            return Err(ExpanderError::InvalidDensity { m: self.m, d: self.d });
        }
        Ok(())
    }
}

/// A generated graph together with what the trimming step removed.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub graph: Graph,
    pub pre_trim_edges: usize,
    pub removed_edges: usize,
    pub trimmed_vertices: Vec<usize>,
}

pub fn generate(params: &ExpanderParams) -> Result<Graph, ExpanderError> {
    generate_with_trace(params).map(|g| g.graph)
}

pub fn generate_with_trace(params: &ExpanderParams) -> Result<Generated, ExpanderError> {
    params.validate()?;
    let m = params.m;
    let p = if m == 0 { 0.0 } else { params.d / m as f64 };
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut edges = Vec::new();
    let mut degree = vec![0usize; m];
    for u in 0..m {
        for v in u + 1..m {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
                degree[u] += 1;
                degree[v] += 1;
            }
        }
    }
    let limit = 2.0 * params.d;
    let over: Vec<bool> = degree.iter().map(|&d| d as f64 > limit).collect();
    let pre_trim_edges = edges.len();
    edges.retain(|&(u, v)| !over[u] && !over[v]);
    let graph = Graph::new(m, edges).expect("pairs are valid");
    Ok(Generated {
        removed_edges: pre_trim_edges - graph.edge_count(),
        pre_trim_edges,
        trimmed_vertices: (0..m).filter(|&v| over[v]).collect(),
        graph,
    })
}

pub fn check_max_degree(g: &Graph, d: f64) -> bool {
    g.max_degree() as f64 <= 2.0 * d
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Exhaustive,
    Sampled { trials: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub observed: usize,
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionReport {
    pub mode: CheckMode,
    pub min_set_size: usize,
    pub pairs_checked: u64,
    pub violations: Vec<Violation>,
}

impl DistributionReport {
    /// Combines two reports over disjoint portions of the pair space.
    pub fn merge(mut self, other: DistributionReport) -> DistributionReport {
        self.pairs_checked += other.pairs_checked;
        self.violations.extend(other.violations);
        self
    }
}

/// Smallest admissible `|S|`: least `s` with `s³·d ≥ M³`.
pub fn min_set_size(m: usize, d: f64) -> usize {
    let mut s = ((m as f64) / d.cbrt()).ceil().max(1.0) as usize;
    let ok = |s: usize| (s as f64).powi(3) * d >= (m as f64).powi(3);
    while s > 1 && ok(s - 1) {
        s -= 1;
    }
    while !ok(s) {
        s += 1;
    }
    s
}

/// `|e(S,T) - p|S||T|| > ½ p|S||T|` with `p = d/M`.
fn violates(observed: usize, s: usize, t: usize, m: usize, d: f64) -> Option<f64> {
    let expected = d / m as f64 * (s * t) as f64;
    ((observed as f64 - expected).abs() > 0.5 * expected).then_some(expected)
}

fn bits_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn check_edge_distribution(g: &Graph, d: f64, mode: CheckMode) -> Result<DistributionReport, ExpanderError> {
    let m = g.vertex_count();
    if mode == CheckMode::Exhaustive && m > MAX_EXHAUSTIVE_VERTICES {
        return Err(ExpanderError::TooLargeForExhaustive {
            m,
            max: MAX_EXHAUSTIVE_VERTICES,
        });
    }
    let min_size = min_set_size(m, d);
    let mut report = DistributionReport {
        mode,
        min_set_size: min_size,
        pairs_checked: 0,
        violations: Vec::new(),
    };
    if 2 * min_size > m {
        return Ok(report);
    }
    match mode {
        CheckMode::Exhaustive => {
            let adj: Vec<u32> = (0..m)
                .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &u| acc | 1 << u))
                .collect();
            let full: u32 = (1u32 << m) - 1;
            for s_mask in 1..=full {
                let s_size = s_mask.count_ones() as usize;
                if s_size < min_size {
                    continue;
                }
                let rest = full & !s_mask;
                // unordered pairs: T must have a larger lowest vertex than S
                let s_low = s_mask.trailing_zeros();
                let mut t_mask = rest;
                while t_mask != 0 {
                    let t_size = t_mask.count_ones() as usize;
                    if t_size >= min_size && t_mask.trailing_zeros() > s_low {
                        report.pairs_checked += 1;
                        let observed: usize = bits_of(s_mask)
                            .into_iter()
                            .map(|v| (adj[v] & t_mask).count_ones() as usize)
                            .sum();
                        if let Some(expected) = violates(observed, s_size, t_size, m, d) {
                            report.violations.push(Violation {
                                s: bits_of(s_mask),
                                t: bits_of(t_mask),
                                observed,
                                expected,
                            });
                        }
                    }
                    t_mask = (t_mask - 1) & rest;
                }
            }
        }
        CheckMode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut vertices: Vec<usize> = (0..m).collect();
            for _ in 0..trials {
                let s_size = rng.gen_range(min_size..=m - min_size);
                let t_size = rng.gen_range(min_size..=m - s_size);
                vertices.shuffle(&mut rng);
                let mut s: Vec<usize> = vertices[..s_size].to_vec();
                let mut t: Vec<usize> = vertices[s_size..s_size + t_size].to_vec();
                s.sort_unstable();
                t.sort_unstable();
                let mut in_t = vec![false; m];
                for &v in &t {
                    in_t[v] = true;
                }
                let observed: usize = s
                    .iter()
                    .map(|&v| g.neighbors(v).iter().filter(|&&u| in_t[u]).count())
                    .sum();
                report.pairs_checked += 1;
                if let Some(expected) = violates(observed, s_size, t_size, m, d) {
                    report.violations.push(Violation {
                        s,
                        t,
                        observed,
                        expected,
                    });
                }
            }
        }
    }
    Ok(report)
}
