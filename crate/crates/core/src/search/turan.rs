use super::embed::{embed, Host, Plan};
use super::ramsey::{colex_edges, Pins};
use super::{Exhausted, Meter, Ranker, SearchBudget, SearchError, MAX_K};
use crate::hypergraph::Hypergraph;

/// Largest vertex count the extremal search will attempt.
pub const MAX_EXTREMAL_VERTICES: usize = 12;

struct EdgeSet {
    n: usize,
    ranker: Ranker,
    present: Vec<bool>,
}

impl Host for EdgeSet {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn class(&self, sorted: &[usize]) -> Option<u8> {
        self.present[self.ranker.rank(sorted)].then_some(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalResult {
    pub value: usize,
    /// An extremal host: `value` edges and no copy of the pattern.
    pub witness: Hypergraph,
    pub nodes_expanded: u64,
}

/// `ex(n, K_{s_1, .., s_t})` by branch and bound over the t-subsets of an
/// n-set in colex order, including before excluding.
pub fn extremal_number_small(n: usize, parts: &[usize], budget: SearchBudget) -> Result<ExtremalResult, SearchError> {
    let t = parts.len();
    if t == 0 || t > MAX_K {
        return Err(SearchError::InvalidParameters(format!(
            "part count must be in 1..={MAX_K}"
        )));
    }
    if n > MAX_EXTREMAL_VERTICES {
        return Err(SearchError::InvalidParameters(format!(
            "{n} vertices exceeds the limit of {MAX_EXTREMAL_VERTICES}"
        )));
    }
    let pattern = Hypergraph::complete_partite(parts)?;
    let edges = colex_edges(n, t);
    let mut meter = Meter::new(budget);
    let mut search = Search {
        host: EdgeSet {
            n,
            ranker: Ranker::new(n, t),
            present: vec![false; edges.len()],
        },
        pins: Pins::new(&pattern, false),
        edges: &edges,
        best: None,
    };
    search.branch(0, 0, &mut meter).map_err(|_| meter.budget_error())?;
    let best = search.best.expect("the empty host is always feasible");
    let chosen = edges
        .iter()
        .zip(&best)
        .filter(|(_, &keep)| keep)
        .map(|(e, _)| e.clone());
    Ok(ExtremalResult {
        value: best.iter().filter(|&&keep| keep).count(),
        witness: Hypergraph::new(t, n, chosen)?,
        nodes_expanded: meter.nodes(),
    })
}

struct Search<'a> {
    host: EdgeSet,
    pins: Pins,
    edges: &'a [Vec<usize>],
    best: Option<Vec<bool>>,
}

impl Search<'_> {
    fn best_count(&self) -> Option<usize> {
        self.best.as_ref().map(|b| b.iter().filter(|&&x| x).count())
    }

    fn branch(&mut self, i: usize, count: usize, meter: &mut Meter) -> Result<(), Exhausted> {
        if let Some(best) = self.best_count() {
            if count + (self.edges.len() - i) <= best {
                return Ok(());
            }
        }
        if i == self.edges.len() {
            self.best = Some(self.host.present.clone());
            return Ok(());
        }
        meter.tick()?;
        self.host.present[i] = true;
        if !self.pins.through(&self.host, &self.edges[i], 0, meter)? {
            self.branch(i + 1, count + 1, meter)?;
        }
        self.host.present[i] = false;
        self.branch(i + 1, count, meter)
    }
}

/// Does `host` contain a (not necessarily induced) copy of `pattern`?
pub fn contains_pattern(host: &Hypergraph, pattern: &Hypergraph, budget: SearchBudget) -> Result<bool, SearchError> {
    if host.uniformity() != pattern.uniformity() {
        return Err(SearchError::ArityMismatch {
            coloring: host.uniformity(),
            pattern: pattern.uniformity(),
        });
    }
    let n = host.vertex_count();
    let k = host.uniformity();
    let ranker = Ranker::new(n, k);
    let mut present = vec![false; ranker.count(n) as usize];
    for e in host.edges() {
        present[ranker.rank(e)] = true;
    }
    let set = EdgeSet { n, ranker, present };
    let mut meter = Meter::new(budget);
    embed(&set, &Plan::new(pattern, &[]), Some(0), &[], &mut meter)
        .map(|found| found.is_some())
        .map_err(|_| meter.budget_error())
}
