//! Exhaustive and backtracking search: monochromatic copies and cliques in
//! stepped colorings, exact small Ramsey and Turán numbers, and the
//! closed-form bounds they are compared against.
//!
//! All searches count expanded nodes against a deterministic
//! [`SearchBudget`]; running out yields a distinguishable budget outcome,
//! never a wrong answer.

mod bounds;
mod embed;
mod mono;
mod pipeline;
mod ramsey;
mod turan;
mod window;

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::hypergraph::HypergraphError;
use crate::pathhyper::PathHyperError;
use crate::stepup::StepUpError;

pub use bounds::{kst_bound, supersaturation_bound, Supersaturation};
pub use mono::{
    count_mono_cliques, count_mono_cliques_table, find_mono_copy, max_mono_clique, max_mono_clique_table,
    validate_embedding, CliqueSearch, CopyOutcome, CopySearch, Embedding,
};
pub use pipeline::{verify_lower_bound_instance, PipelineReport};
pub use ramsey::{ramsey_number_small, verify_good_coloring, RamseyPattern, RamseyResult};
pub use turan::{contains_pattern, extremal_number_small, ExtremalResult};
pub use window::{WindowTable, MAX_TABLE_ENTRIES};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("search budget exhausted after {nodes_expanded} nodes")]
    Budget { nodes_expanded: u64 },
    #[error("pattern has uniformity {pattern} but the coloring has uniformity {coloring}")]
    ArityMismatch { coloring: usize, pattern: usize },
    #[error("window holds {window} labels but {needed} are needed")]
    WindowTooSmall { window: usize, needed: usize },
    #[error("window would need {entries} table entries (limit {limit})")]
    WindowTooLarge { entries: u128, limit: u128 },
    #[error("label {0} appears twice in the window")]
    DuplicateWindowLabel(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Coloring(#[from] StepUpError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    PathHypergraph(#[from] PathHyperError),
}

/// Node and wall-clock limits. Node counts make results reproducible; the
/// wall-clock limit is only a safety abort.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl SearchBudget {
    pub const fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes,
            max_time: None,
        }
    }

    pub const fn unlimited() -> Self {
        Self::nodes(u64::MAX)
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self::nodes(100_000_000)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Exhausted;

pub(crate) struct Meter {
    nodes: u64,
    budget: SearchBudget,
    start: Instant,
}

impl Meter {
    pub(crate) fn new(budget: SearchBudget) -> Self {
        Meter {
            nodes: 0,
            budget,
            start: Instant::now(),
        }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), Exhausted> {
        if self.nodes >= self.budget.max_nodes {
            return Err(Exhausted);
        }
        self.nodes += 1;
        if self.nodes & 0xfff == 0 {
            if let Some(limit) = self.budget.max_time {
                if self.start.elapsed() > limit {
                    return Err(Exhausted);
                }
            }
        }
        Ok(())
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    pub(crate) fn budget_error(&self) -> SearchError {
        SearchError::Budget {
            nodes_expanded: self.nodes,
        }
    }
}

/// Colex rank of a sorted k-subset: `Σ C(x_j, j + 1)`.
#[derive(Debug, Clone)]
pub(crate) struct Ranker {
    k: usize,
    binom: Vec<Vec<u64>>,
}

impl Ranker {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        let mut binom = vec![vec![0u64; k + 1]; n + 1];
        for i in 0..=n {
            binom[i][0] = 1;
            for j in 1..=k.min(i) {
                binom[i][j] = binom[i - 1][j - 1].saturating_add(binom[i - 1][j]);
            }
        }
        Ranker { k, binom }
    }

    #[inline]
    pub(crate) fn rank(&self, sorted: &[usize]) -> usize {
        debug_assert_eq!(sorted.len(), self.k);
        let mut r = 0u64;
        for (j, &x) in sorted.iter().enumerate() {
            r += self.binom[x][j + 1];
        }
        r as usize
    }

    pub(crate) fn count(&self, n: usize) -> u64 {
        self.binom[n][self.k]
    }
}

/// Largest uniformity the searches handle with stack buffers.
pub(crate) const MAX_K: usize = 8;

#[inline]
pub(crate) fn sorted_buf(xs: &[usize]) -> ([usize; MAX_K], usize) {
    let mut buf = [0usize; MAX_K];
    buf[..xs.len()].copy_from_slice(xs);
    buf[..xs.len()].sort_unstable();
    (buf, xs.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    #[test]
    fn colex_rank_is_a_bijection() {
        for (n, k) in [(6usize, 1usize), (7, 2), (8, 3), (9, 4)] {
            let r = Ranker::new(n, k);
            let mut ranks: Vec<usize> = (0..n).combinations(k).map(|c| r.rank(&c)).collect();
            ranks.sort_unstable();
            assert_eq!(ranks, (0..r.count(n) as usize).collect::<Vec<_>>());
        }
    }

    #[test]
    fn zero_budget_fails_first_tick() {
        let mut m = Meter::new(SearchBudget::nodes(0));
        assert_eq!(m.tick(), Err(Exhausted));
        let mut m = Meter::new(SearchBudget::nodes(2));
        assert!(m.tick().is_ok() && m.tick().is_ok());
        assert_eq!(m.tick(), Err(Exhausted));
        assert_eq!(m.nodes(), 2);
    }
}
