use itertools::Itertools;

use super::{sorted_buf, Ranker, SearchError, MAX_K};
use crate::bitcore::Label;
use crate::stepup::{BaseColoring, Color, EdgeColoring, StepUpError};

/// Largest number of k-subsets a window table may hold.
pub const MAX_TABLE_ENTRIES: u128 = 50_000_000;

/// The colors of every k-subset of a finite window of labels, indexed by the
/// colex rank of the subset's window positions.
#[derive(Debug, Clone)]
pub struct WindowTable {
    k: usize,
    labels: Vec<Label>,
    colors: Vec<Color>,
    palette: &'static [Color],
    ranker_binom: Ranker,
}

impl WindowTable {
    /// Tabulates `c` on `window`. Labels are sorted; positions refer to the
    /// sorted order.
    pub fn new(c: &EdgeColoring, window: &[Label]) -> Result<Self, SearchError> {
        let k = c.uniformity();
        if k > MAX_K {
            return Err(SearchError::InvalidParameters(format!(
                "uniformity {k} exceeds {MAX_K}"
            )));
        }
        let mut labels = window.to_vec();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(SearchError::DuplicateWindowLabel(w[0].to_string()));
        }
        if let Some(last) = labels.last() {
            if last.value() >= c.universe_size() {
                return Err(StepUpError::OutOfUniverse {
                    label: last.clone(),
                    universe: c.universe_size().clone(),
                }
                .into());
            }
        }
        check_size(labels.len(), k)?;
        let ranker = Ranker::new(labels.len(), k);
        let mut colors = vec![Color::Red; ranker.count(labels.len()) as usize];
        let small: Option<Vec<u64>> = labels.iter().map(Label::to_u64).collect();
        for combo in (0..labels.len()).combinations(k) {
            let color = match &small {
                Some(vals) => {
                    let xs: Vec<u64> = combo.iter().map(|&i| vals[i]).collect();
                    c.color_sorted_u64(&xs)
                }
                None => {
                    let xs: Vec<Label> = combo.iter().map(|&i| labels[i].clone()).collect();
                    c.color_of(&xs)?
                }
            };
            colors[ranker.rank(&combo)] = color;
        }
        Ok(WindowTable {
            k,
            labels,
            colors,
            palette: c.palette(),
            ranker_binom: ranker,
        })
    }

    /// The first `size` labels `0, 1, ..`.
    pub fn prefix(c: &EdgeColoring, size: usize) -> Result<Self, SearchError> {
        let window: Vec<Label> = (0..size as u64).map(Label::from).collect();
        Self::new(c, &window)
    }

    /// The base coloring on all of its vertices.
    pub fn from_base(base: &BaseColoring) -> Self {
        let n = base.vertex_count();
        let ranker = Ranker::new(n, 2);
        let mut colors = vec![Color::Red; ranker.count(n) as usize];
        for v in 1..n {
            for u in 0..v {
                colors[ranker.rank(&[u, v])] = base.color(u, v);
            }
        }
        WindowTable {
            k: 2,
            labels: (0..n as u64).map(Label::from).collect(),
            colors,
            palette: Color::palette(2),
            ranker_binom: ranker,
        }
    }

    pub fn uniformity(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn palette(&self) -> &'static [Color] {
        self.palette
    }

    /// Color of a set of distinct window positions, in any order.
    #[inline]
    pub fn color(&self, positions: &[usize]) -> Color {
        let (buf, len) = sorted_buf(positions);
        self.colors[self.ranker_binom.rank(&buf[..len])]
    }

    /// Color of window positions already in increasing order.
    #[inline]
    pub fn color_sorted(&self, positions: &[usize]) -> Color {
        self.colors[self.ranker_binom.rank(positions)]
    }
}

fn check_size(w: usize, k: usize) -> Result<(), SearchError> {
    let entries = crate::hypergraph::binomial_u128(w as u128, k as u128);
    if entries > MAX_TABLE_ENTRIES {
        return Err(SearchError::WindowTooLarge {
            entries,
            limit: MAX_TABLE_ENTRIES,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_base() -> BaseColoring {
        BaseColoring::from_red_pairs(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])
    }

    #[test]
    fn table_matches_direct_evaluation() {
        let c = EdgeColoring::stepped(cycle_base(), 4).unwrap();
        let window: Vec<Label> = [3u64, 0, 9, 17, 200, 65535, 1024]
            .into_iter()
            .map(Label::from)
            .collect();
        let t = WindowTable::new(&c, &window).unwrap();
        assert_eq!(t.labels()[0], Label::from(0));
        for combo in (0..t.len()).combinations(4) {
            let labels: Vec<Label> = combo.iter().map(|&i| t.labels()[i].clone()).collect();
            assert_eq!(t.color(&combo), c.color_of(&labels).unwrap());
            let rev: Vec<usize> = combo.iter().rev().copied().collect();
            assert_eq!(t.color(&rev), t.color_sorted(&combo));
        }
    }

    #[test]
    fn rejects_bad_windows() {
        let c = EdgeColoring::stepped(cycle_base(), 3).unwrap();
        let dup = [Label::from(1), Label::from(1), Label::from(2)];
        assert!(matches!(
            WindowTable::new(&c, &dup),
            Err(SearchError::DuplicateWindowLabel(_))
        ));
        let out = [Label::from(1), Label::from(16)];
        assert!(matches!(WindowTable::new(&c, &out), Err(SearchError::Coloring(_))));
    }

    #[test]
    fn base_table() {
        let b = cycle_base();
        let t = WindowTable::from_base(&b);
        assert_eq!(t.color(&[3, 0]), b.color(0, 3));
        assert_eq!(t.color(&[0, 2]), b.color(0, 2));
    }
}
