use itertools::Itertools;

use super::embed::{embed, Host, Plan};
use super::{Exhausted, Meter, Ranker, SearchBudget, SearchError, MAX_K};
use crate::hypergraph::Hypergraph;

/// Largest host size the Ramsey search will attempt.
pub const MAX_RAMSEY_VERTICES: usize = 24;

const UNCOLORED: u8 = u8::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RamseyPattern {
    /// The complete k-graph on this many vertices.
    Clique(usize),
    Hypergraph(Hypergraph),
}

impl RamseyPattern {
    fn build(&self, k: usize) -> Result<Hypergraph, SearchError> {
        match self {
            RamseyPattern::Clique(n) => {
                if *n < k {
                    return Err(SearchError::InvalidParameters(format!(
                        "clique on {n} vertices has no {k}-edges"
                    )));
                }
                Ok(Hypergraph::complete(*n, k)?)
            }
            RamseyPattern::Hypergraph(h) => {
                if h.uniformity() != k {
                    return Err(SearchError::InvalidParameters(format!(
                        "pattern is {}-uniform, expected {k}",
                        h.uniformity()
                    )));
                }
                Ok(h.clone())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamseyResult {
    pub n: usize,
    /// A coloring of every k-subset of `{0, .., n - 2}` with no monochromatic
    /// copy, in colex order.
    pub lower_certificate: Vec<(Vec<usize>, u8)>,
    /// Nodes of the exhausted search showing no good coloring of `K_n`.
    pub refutation_nodes: u64,
    pub nodes_expanded: u64,
}

struct Partial {
    n: usize,
    ranker: Ranker,
    colors: Vec<u8>,
}

impl Host for Partial {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn class(&self, sorted: &[usize]) -> Option<u8> {
        match self.colors[self.ranker.rank(sorted)] {
            UNCOLORED => None,
            c => Some(c),
        }
    }
}

/// Ways to force a host edge into a copy: a plan whose first `k` positions
/// hold one pattern edge, and the orders in which the host edge fills them.
pub(crate) struct Pins {
    plans: Vec<Plan>,
    orders: Vec<Vec<usize>>,
}

impl Pins {
    /// Complete patterns are transitive on ordered edges, so one pin suffices.
    pub(crate) fn new(h: &Hypergraph, transitive: bool) -> Self {
        let k = h.uniformity();
        if transitive {
            let first = &h.edges()[0];
            return Pins {
                plans: vec![Plan::new(h, first)],
                orders: vec![(0..k).collect()],
            };
        }
        Pins {
            plans: h.edges().iter().map(|e| Plan::new(h, e)).collect(),
            orders: (0..k).permutations(k).collect(),
        }
    }

    /// Is there a copy through host edge `edge` whose edges all have `class`?
    pub(crate) fn through<H: Host>(
        &self,
        host: &H,
        edge: &[usize],
        class: u8,
        meter: &mut Meter,
    ) -> Result<bool, Exhausted> {
        let mut prefix = vec![0; edge.len()];
        for plan in &self.plans {
            for order in &self.orders {
                for (slot, &i) in prefix.iter_mut().zip(order) {
                    *slot = edge[i];
                }
                if embed(host, plan, Some(class), &prefix, meter)?.is_some() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// All k-subsets of `{0, .., n - 1}` in colex order.
pub(crate) fn colex_edges(n: usize, k: usize) -> Vec<Vec<usize>> {
    let ranker = Ranker::new(n, k);
    let mut edges: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    edges.sort_by_key(|e| ranker.rank(e));
    edges
}

/// Smallest `N` such that every `q`-coloring of the k-subsets of an
/// `N`-set has a monochromatic copy of the pattern.
///
/// Colorings are enumerated edge by edge in colex order; a color is
/// rejected as soon as it closes a monochromatic copy. Colors are
/// interchangeable, so the first edge gets color 0 and each edge may use
/// at most one color beyond those already used.
pub fn ramsey_number_small(
    pattern: &RamseyPattern,
    q: usize,
    k: usize,
    budget: SearchBudget,
) -> Result<RamseyResult, SearchError> {
    if k == 0 || k > MAX_K {
        return Err(SearchError::InvalidParameters(format!(
            "uniformity must be in 1..={MAX_K}"
        )));
    }
    if q == 0 || q >= UNCOLORED as usize {
        return Err(SearchError::InvalidParameters(format!("color count {q} out of range")));
    }
    let h = pattern.build(k)?;
    let v = h.vertex_count();
    let mut meter = Meter::new(budget);
    let trivial = |n: usize| colex_edges(n, k).into_iter().map(|e| (e, 0u8)).collect::<Vec<_>>();
    if h.edge_count() == 0 {
        return Ok(RamseyResult {
            n: v,
            lower_certificate: trivial(v.saturating_sub(1)),
            refutation_nodes: 0,
            nodes_expanded: 0,
        });
    }
    let pins = Pins::new(&h, matches!(pattern, RamseyPattern::Clique(_)));
    let mut certificate = trivial(v - 1);
    for n in v..=MAX_RAMSEY_VERTICES {
        let before = meter.nodes();
        let edges = colex_edges(n, k);
        let mut host = Partial {
            n,
            ranker: Ranker::new(n, k),
            colors: vec![UNCOLORED; edges.len()],
        };
        let found = color_from(&mut host, &edges, &pins, q, 0, None, &mut meter).map_err(|_| meter.budget_error())?;
        if found {
            certificate = edges.into_iter().zip(host.colors).collect();
        } else {
            return Ok(RamseyResult {
                n,
                lower_certificate: certificate,
                refutation_nodes: meter.nodes() - before,
                nodes_expanded: meter.nodes(),
            });
        }
    }
    Err(SearchError::InvalidParameters(format!(
        "no answer up to {MAX_RAMSEY_VERTICES} vertices"
    )))
}

fn color_from(
    host: &mut Partial,
    edges: &[Vec<usize>],
    pins: &Pins,
    q: usize,
    i: usize,
    max_used: Option<u8>,
    meter: &mut Meter,
) -> Result<bool, Exhausted> {
    if i == edges.len() {
        return Ok(true);
    }
    let limit = max_used.map_or(1, |m| (m as usize + 2).min(q));
    for c in 0..limit as u8 {
        meter.tick()?;
        host.colors[i] = c;
        if !pins.through(host, &edges[i], c, meter)?
            && color_from(
                host,
                edges,
                pins,
                q,
                i + 1,
                Some(max_used.map_or(c, |m| m.max(c))),
                meter,
            )?
        {
            return Ok(true);
        }
    }
    host.colors[i] = UNCOLORED;
    Ok(false)
}

/// Independent check: `coloring` colors every k-subset of `{0, .., n - 1}`
/// with a color below `q`, and no injective image of the pattern is
/// monochromatic.
pub fn verify_good_coloring(
    pattern: &RamseyPattern,
    q: usize,
    k: usize,
    n: usize,
    coloring: &[(Vec<usize>, u8)],
) -> bool {
    let Ok(h) = pattern.build(k) else { return false };
    let mut color = std::collections::HashMap::new();
    for (e, c) in coloring {
        let mut e = e.clone();
        e.sort_unstable();
        if (*c as usize) >= q || e.iter().any(|&x| x >= n) || color.insert(e, *c).is_some() {
            return false;
        }
    }
    if (0..n).combinations(k).any(|e| !color.contains_key(&e)) {
        return false;
    }
    let image_color = |map: &[usize], e: &[usize]| {
        let mut img: Vec<usize> = e.iter().map(|&v| map[v]).collect();
        img.sort_unstable();
        color[&img]
    };
    !(0..n)
        .permutations(h.vertex_count())
        .any(|map| h.edges().iter().map(|e| image_color(&map, e)).all_equal())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_two_colors() {
        let p = RamseyPattern::Clique(3);
        let r = ramsey_number_small(&p, 2, 2, SearchBudget::default()).unwrap();
        assert_eq!(r.n, 6);
        assert_eq!(r.lower_certificate.len(), 10);
        assert!(verify_good_coloring(&p, 2, 2, 5, &r.lower_certificate));
        assert!(r.refutation_nodes > 0);
    }

    #[test]
    fn trivial_patterns() {
        for k in 2..=4 {
            for q in 1..=3 {
                let r = ramsey_number_small(&RamseyPattern::Clique(k), q, k, SearchBudget::default()).unwrap();
                assert_eq!(r.n, k);
            }
        }
        let r = ramsey_number_small(&RamseyPattern::Clique(3), 1, 2, SearchBudget::default()).unwrap();
        assert_eq!(r.n, 3);
        let empty = RamseyPattern::Hypergraph(Hypergraph::empty(2, 4).unwrap());
        assert_eq!(ramsey_number_small(&empty, 2, 2, SearchBudget::default()).unwrap().n, 4);
    }

    #[test]
    fn general_patterns() {
        // path on three vertices: a 2-coloring of K_3 always has two equal
        // edges sharing a vertex
        let p3 = RamseyPattern::Hypergraph(Hypergraph::new(2, 3, [vec![0, 1], vec![1, 2]]).unwrap());
        let r = ramsey_number_small(&p3, 2, 2, SearchBudget::default()).unwrap();
        assert_eq!(r.n, 3);
        assert!(verify_good_coloring(&p3, 2, 2, 2, &r.lower_certificate));
        // two disjoint edges: R(2K_2, 2K_2) = 5
        let m2 = RamseyPattern::Hypergraph(Hypergraph::new(2, 4, [vec![0, 1], vec![2, 3]]).unwrap());
        let r = ramsey_number_small(&m2, 2, 2, SearchBudget::default()).unwrap();
        assert_eq!(r.n, 5);
        assert!(verify_good_coloring(&m2, 2, 2, 4, &r.lower_certificate));
        // C4 in two colors: R(C4, C4) = 6
        let c4 =
            RamseyPattern::Hypergraph(Hypergraph::new(2, 4, [vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap());
        assert_eq!(ramsey_number_small(&c4, 2, 2, SearchBudget::default()).unwrap().n, 6);
    }

    #[test]
    fn budget_is_reported() {
        let r = ramsey_number_small(&RamseyPattern::Clique(3), 2, 2, SearchBudget::nodes(10));
        assert!(matches!(r, Err(SearchError::Budget { .. })));
        assert!(ramsey_number_small(&RamseyPattern::Clique(1), 2, 2, SearchBudget::default()).is_err());
    }

    #[test]
    fn verifier_rejects_bad_certificates() {
        let p = RamseyPattern::Clique(3);
        let mono: Vec<(Vec<usize>, u8)> = colex_edges(5, 2).into_iter().map(|e| (e, 0)).collect();
        assert!(!verify_good_coloring(&p, 2, 2, 5, &mono));
        assert!(!verify_good_coloring(&p, 2, 2, 5, &mono[1..]));
    }
}
