use serde::{Deserialize, Serialize};

use super::mono::{find_mono_copy_table, max_mono_clique_table, validate_embedding, CopyOutcome, Embedding};
use super::{SearchBudget, SearchError, WindowTable};
use crate::bitcore::Label;
use crate::hypergraph::{Graph, Hypergraph};
use crate::pathhyper::path_hypergraph;
use crate::stepup::{verify_base, BaseColoring, EdgeColoring};

/// Largest label universe enumerated when no window is given.
const MAX_DEFAULT_WINDOW: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    /// `found`, `not_found` or `budget`.
    pub outcome: String,
    pub witness: Option<Embedding>,
    pub witness_valid: Option<bool>,
    pub nodes_expanded: u64,
    pub elapsed_ms: u64,
    pub k: usize,
    pub n: usize,
    /// Whether the base has no monochromatic `K_n`.
    pub base_verified: bool,
    pub pattern_vertices: usize,
    pub pattern_edges: usize,
    pub window_size: usize,
}

/// Builds `H(G, k)` and `φ^{(k)}` from `base`, then looks for a
/// monochromatic copy of the former in the latter over `window`. Without a
/// window every label of the universe is used, which needs a small universe.
pub fn verify_lower_bound_instance(
    n: usize,
    k: usize,
    base: &BaseColoring,
    g: &Graph,
    window: Option<&[Label]>,
    budget: SearchBudget,
) -> Result<PipelineReport, SearchError> {
    let coloring = EdgeColoring::stepped(base.clone(), k)?;
    let pattern = path_hypergraph(g, k)?;
    let table = match window {
        Some(w) => WindowTable::new(&coloring, w)?,
        None => {
            let size = coloring
                .universe_size()
                .try_into()
                .ok()
                .filter(|&s: &usize| s <= MAX_DEFAULT_WINDOW)
                .ok_or_else(|| SearchError::InvalidParameters(format!("k = {k} needs an explicit window")))?;
            WindowTable::prefix(&coloring, size)?
        }
    };
    if table.len() < pattern.vertex_count() {
        return Err(SearchError::WindowTooSmall {
            window: table.len(),
            needed: pattern.vertex_count(),
        });
    }
    let (outcome, nodes, elapsed) = if k == 2 {
        clique_search(&table, &pattern, budget)
    } else {
        let r = find_mono_copy_table(&table, &pattern, budget);
        (r.outcome, r.nodes_expanded, r.elapsed.as_millis() as u64)
    };
    let (label, witness) = match outcome {
        CopyOutcome::Found(e) => ("found", Some(e)),
        CopyOutcome::NotFound => ("not_found", None),
        CopyOutcome::Budget => ("budget", None),
    };
    Ok(PipelineReport {
        outcome: label.to_string(),
        witness_valid: witness.as_ref().map(|e| validate_embedding(&coloring, &pattern, e)),
        witness,
        nodes_expanded: nodes,
        elapsed_ms: elapsed,
        k,
        n,
        base_verified: verify_base(base, n).ok,
        pattern_vertices: pattern.vertex_count(),
        pattern_edges: pattern.edge_count(),
        window_size: table.len(),
    })
}

/// `H(G, 2)` is complete, so a copy is a large enough monochromatic clique.
fn clique_search(table: &WindowTable, pattern: &Hypergraph, budget: SearchBudget) -> (CopyOutcome, u64, u64) {
    let start = std::time::Instant::now();
    match max_mono_clique_table(table, budget) {
        Ok(r) => {
            let outcome = if r.size >= pattern.vertex_count() {
                CopyOutcome::Found(Embedding {
                    map: r.witness[..pattern.vertex_count()].to_vec(),
                    color: r.color.filter(|_| pattern.edge_count() > 0),
                })
            } else {
                CopyOutcome::NotFound
            };
            (outcome, r.nodes_expanded, start.elapsed().as_millis() as u64)
        }
        Err(SearchError::Budget { nodes_expanded }) => {
            (CopyOutcome::Budget, nodes_expanded, start.elapsed().as_millis() as u64)
        }
        Err(e) => unreachable!("clique search only fails on budget: {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_base() -> BaseColoring {
        BaseColoring::from_red_pairs(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])
    }

    #[test]
    fn petersen_k3_completes() {
        let r = verify_lower_bound_instance(
            3,
            3,
            &cycle_base(),
            &Graph::petersen(),
            None,
            SearchBudget::nodes(100_000_000),
        )
        .unwrap();
        assert!(r.base_verified);
        assert_eq!(r.window_size, 16);
        assert_eq!(r.pattern_edges, 90);
        assert_ne!(r.outcome, "budget");
        assert_ne!(r.witness_valid, Some(false));
    }

    #[test]
    fn k2_delegates_to_cliques() {
        let base = cycle_base();
        let small = Graph::new(2, [(0, 1)]).unwrap();
        let r = verify_lower_bound_instance(3, 2, &base, &small, None, SearchBudget::default()).unwrap();
        assert_eq!(r.outcome, "found");
        assert_eq!(r.witness_valid, Some(true));
        let triangle = Graph::complete(3);
        let r = verify_lower_bound_instance(3, 2, &base, &triangle, None, SearchBudget::default()).unwrap();
        assert_eq!(r.outcome, "not_found");
    }

    #[test]
    fn window_guards() {
        let base = cycle_base();
        let big = Graph::complete(20);
        assert!(matches!(
            verify_lower_bound_instance(3, 3, &base, &big, None, SearchBudget::default()),
            Err(SearchError::WindowTooSmall { window: 16, needed: 20 })
        ));
        let g = Graph::complete(4);
        assert!(verify_lower_bound_instance(3, 4, &base, &g, None, SearchBudget::default()).is_err());
        let window: Vec<Label> = [0u64, 5, 77, 1000, 40000, 65535].into_iter().map(Label::from).collect();
        let r = verify_lower_bound_instance(3, 4, &base, &g, Some(&window), SearchBudget::default()).unwrap();
        assert_eq!(r.window_size, 6);
        assert_ne!(r.witness_valid, Some(false));
    }
}
