use std::collections::BTreeMap;
use std::time::Duration;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::embed::{embed, Host, Plan};
use super::{Meter, SearchBudget, SearchError, WindowTable};
use crate::bitcore::Label;
use crate::hypergraph::Hypergraph;
use crate::stepup::{Color, EdgeColoring};

/// Pattern vertex `i` maps to `map[i]`. `color` is the common color of the
/// image edges, absent when the pattern has no edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<Label>,
    pub color: Option<Color>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CopyOutcome {
    Found(Embedding),
    NotFound,
    Budget,
}

#[derive(Debug, Clone)]
pub struct CopySearch {
    pub outcome: CopyOutcome,
    pub nodes_expanded: u64,
    pub elapsed: Duration,
}

impl Host for WindowTable {
    fn vertex_count(&self) -> usize {
        self.len()
    }

    fn class(&self, sorted: &[usize]) -> Option<u8> {
        Some(self.color_sorted(sorted) as u8)
    }
}

fn color_from_class(palette: &[Color], class: u8) -> Color {
    *palette
        .iter()
        .find(|&&c| c as u8 == class)
        .expect("class comes from the palette")
}

/// Searches `window` for a copy of `h` all of whose edges get one color.
pub fn find_mono_copy(
    c: &EdgeColoring,
    h: &Hypergraph,
    window: &[Label],
    budget: SearchBudget,
) -> Result<CopySearch, SearchError> {
    if h.uniformity() != c.uniformity() {
        return Err(SearchError::ArityMismatch {
            coloring: c.uniformity(),
            pattern: h.uniformity(),
        });
    }
    if window.len() < h.vertex_count() {
        return Err(SearchError::WindowTooSmall {
            window: window.len(),
            needed: h.vertex_count(),
        });
    }
    let table = WindowTable::new(c, window)?;
    Ok(find_mono_copy_table(&table, h, budget))
}

pub(crate) fn find_mono_copy_table(table: &WindowTable, h: &Hypergraph, budget: SearchBudget) -> CopySearch {
    let plan = Plan::new(h, &[]);
    let mut meter = Meter::new(budget);
    let outcome = match embed(table, &plan, None, &[], &mut meter) {
        Ok(Some(found)) => CopyOutcome::Found(Embedding {
            map: found.map.iter().map(|&i| table.labels()[i].clone()).collect(),
            color: found.class.map(|cl| color_from_class(table.palette(), cl)),
        }),
        Ok(None) => CopyOutcome::NotFound,
        Err(_) => CopyOutcome::Budget,
    };
    CopySearch {
        outcome,
        nodes_expanded: meter.nodes(),
        elapsed: meter.elapsed(),
    }
}

/// Independent check of an embedding: injective, and every image edge has
/// the claimed color under direct evaluation of `c`.
pub fn validate_embedding(c: &EdgeColoring, h: &Hypergraph, e: &Embedding) -> bool {
    if e.map.len() != h.vertex_count() || h.uniformity() != c.uniformity() {
        return false;
    }
    if e.map.iter().duplicates().next().is_some() {
        return false;
    }
    let mut colors = h.edges().iter().map(|edge| {
        let labels: Vec<Label> = edge.iter().map(|&v| e.map[v].clone()).collect();
        c.color_of(&labels).ok()
    });
    match e.color {
        None => h.edge_count() == 0,
        Some(want) => colors.all(|got| got == Some(want)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSearch {
    pub size: usize,
    pub witness: Vec<Label>,
    /// Color of every k-subset of the witness; `None` when the witness is
    /// smaller than the uniformity.
    pub color: Option<Color>,
    pub nodes_expanded: u64,
}

/// Largest subset of `window` all of whose k-subsets share one color.
pub fn max_mono_clique(c: &EdgeColoring, window: &[Label], budget: SearchBudget) -> Result<CliqueSearch, SearchError> {
    let table = WindowTable::new(c, window)?;
    max_mono_clique_table(&table, budget)
}

pub fn max_mono_clique_table(table: &WindowTable, budget: SearchBudget) -> Result<CliqueSearch, SearchError> {
    let k = table.uniformity();
    let mut meter = Meter::new(budget);
    // any k - 1 positions are vacuously monochromatic
    let mut best: Vec<usize> = (0..table.len().min(k - 1)).collect();
    let mut best_color = None;
    for &color in table.palette() {
        let mut clique = Vec::new();
        let cand: Vec<usize> = (0..table.len()).collect();
        let mut found = best.clone();
        grow(table, color, &mut clique, &cand, &mut found, &mut meter).map_err(|_| meter.budget_error())?;
        if found.len() > best.len() {
            best = found;
            best_color = Some(color);
        }
    }
    Ok(CliqueSearch {
        size: best.len(),
        witness: best.iter().map(|&i| table.labels()[i].clone()).collect(),
        color: best_color,
        nodes_expanded: meter.nodes(),
    })
}

/// Every vertex of `cand` extends `clique` to a `color`-monochromatic set.
fn grow(
    table: &WindowTable,
    color: Color,
    clique: &mut Vec<usize>,
    cand: &[usize],
    best: &mut Vec<usize>,
    meter: &mut Meter,
) -> Result<(), super::Exhausted> {
    if clique.len() > best.len() {
        best.clone_from(clique);
    }
    let k = table.uniformity();
    for (i, &v) in cand.iter().enumerate() {
        if clique.len() + cand.len() - i <= best.len() {
            return Ok(());
        }
        meter.tick()?;
        let next: Vec<usize> = if clique.len() + 2 < k {
            cand[i + 1..].to_vec()
        } else {
            cand[i + 1..]
                .iter()
                .copied()
                .filter(|&u| {
                    clique.iter().copied().combinations(k - 2).all(|mut s| {
                        s.push(v);
                        s.push(u);
                        table.color(&s) == color
                    })
                })
                .collect()
        };
        clique.push(v);
        grow(table, color, clique, &next, best, meter)?;
        clique.pop();
    }
    Ok(())
}

/// Number of `t`-subsets of `window` that are monochromatic, per color.
pub fn count_mono_cliques(c: &EdgeColoring, t: usize, window: &[Label]) -> Result<BTreeMap<Color, u64>, SearchError> {
    let table = WindowTable::new(c, window)?;
    count_mono_cliques_table(&table, t)
}

pub fn count_mono_cliques_table(table: &WindowTable, t: usize) -> Result<BTreeMap<Color, u64>, SearchError> {
    let k = table.uniformity();
    if t < k {
        return Err(SearchError::InvalidParameters(format!(
            "clique size {t} is below the uniformity {k}"
        )));
    }
    let mut counts: BTreeMap<Color, u64> = table.palette().iter().map(|&c| (c, 0)).collect();
    for set in (0..table.len()).combinations(t) {
        let mut subsets = set.iter().copied().combinations(k);
        let first = table.color_sorted(&subsets.next().expect("t >= k"));
        if subsets.all(|s| table.color_sorted(&s) == first) {
            *counts.get_mut(&first).expect("palette color") += 1;
        }
    }
    Ok(counts)
}
