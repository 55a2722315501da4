//! Stepping-up colorings.
//!
//! A [`BaseColoring`] is an explicit red/blue table on the pairs of
//! `{0, .., N2 - 1}`. [`step_up`] lifts a coloring of (k-1)-subsets of
//! `{0, .., N - 1}` to a coloring of k-subsets of `{0, .., 2^N - 1}` whose
//! value on a set depends only on its delta vector:
//!
//! * k = 3: the four colors `C1..C4` encode whether `d1 < d2` and the base
//!   color of the pair `{d1, d2}`.
//! * k >= 4: a monotone delta vector inherits the lower coloring of the set
//!   of its entries; otherwise the color is `C1` when the maximum sits at an
//!   end of the vector and `C2` when it sits strictly inside.
//!
//! Stepped colorings are lazy evaluators. Nothing is ever tabulated over the
//! full universe, which for k = 5 already has 2^65536 vertices.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bitcore::{classify_slice, delta, delta_u64, Label, Monotonicity};

#[derive(Debug, Error)]
pub enum StepUpError {
    #[error("expected {expected} labels, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("label {0} appears more than once")]
    DuplicateLabel(Label),
    #[error("label {label} is outside the universe of size {universe}")]
    OutOfUniverse { label: Label, universe: BigUint },
    #[error("universe of size {0} is too large to step up")]
    UniverseTooLarge(BigUint),
    #[error("stepping up needs uniformity at least 2")]
    InvalidUniformity,
    #[error("base coloring needs at least 2 vertices, got {0}")]
    BaseTooSmall(usize),
    #[error("clique size must be at least 3, got {0}")]
    CliqueTooSmall(usize),
    #[error("no coloring of K_{n2} without a monochromatic K_{clique} found in {attempts} attempts")]
    BudgetExhausted { n2: usize, clique: usize, attempts: u64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Edge colors. Base colorings use `Red`/`Blue`; every stepped coloring
/// uses the four symbols `C1..C4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Red,
    Blue,
    C1,
    C2,
    C3,
    C4,
}

const BASE_PALETTE: [Color; 2] = [Color::Red, Color::Blue];
const STEPPED_PALETTE: [Color; 4] = [Color::C1, Color::C2, Color::C3, Color::C4];

impl Color {
    /// Palette of a coloring of the given uniformity.
    pub fn palette(k: usize) -> &'static [Color] {
        if k <= 2 {
            &BASE_PALETTE
        } else {
            &STEPPED_PALETTE
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            Color::Red => "R",
            Color::Blue => "B",
            Color::C1 => "C1",
            Color::C2 => "C2",
            Color::C3 => "C3",
            Color::C4 => "C4",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Color {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "R" | "Red" | "red" => Ok(Color::Red),
            "B" | "Blue" | "blue" => Ok(Color::Blue),
            "C1" => Ok(Color::C1),
            "C2" => Ok(Color::C2),
            "C3" => Ok(Color::C3),
            "C4" => Ok(Color::C4),
            other => Err(format!("unknown color {other:?}")),
        }
    }
}

impl Serialize for Color {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code())
    }
}

impl<'de> Deserialize<'de> for Color {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[inline]
fn pair_index(u: usize, v: usize) -> usize {
    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
    hi * (hi - 1) / 2 + lo
}

/// An explicit red/blue coloring of all pairs of `{0, .., N2 - 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseColoring {
    n2: usize,
    red: Vec<bool>,
    clique_bound: Option<usize>,
}

impl BaseColoring {
    pub fn from_fn<F: FnMut(usize, usize) -> Color>(n2: usize, mut f: F) -> Self {
        let mut red = vec![false; n2 * n2.saturating_sub(1) / 2];
        for v in 1..n2 {
            for u in 0..v {
                red[pair_index(u, v)] = f(u, v) == Color::Red;
            }
        }
        BaseColoring {
            n2,
            red,
            clique_bound: None,
        }
    }

    /// Pairs listed in `red_pairs` are red, all others blue.
    pub fn from_red_pairs(n2: usize, red_pairs: &[(usize, usize)]) -> Self {
        let mut c = Self::from_fn(n2, |_, _| Color::Blue);
        for &(u, v) in red_pairs {
            assert!(u != v && u < n2 && v < n2, "pair ({u}, {v}) invalid for N2 = {n2}");
            c.red[pair_index(u, v)] = true;
        }
        c
    }

    /// Builds from bits in pair order (pair `(u, v)`, `u < v`, sits at
    /// `v(v-1)/2 + u`); a set bit means red.
    pub fn from_mask(n2: usize, mask: u64) -> Self {
        let pairs = n2 * n2.saturating_sub(1) / 2;
        assert!(pairs <= 64, "mask encoding needs at most 64 pairs");
        BaseColoring {
            n2,
            red: (0..pairs).map(|i| (mask >> i) & 1 == 1).collect(),
            clique_bound: None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n2
    }

    pub fn clique_bound(&self) -> Option<usize> {
        self.clique_bound
    }

    pub fn color(&self, u: usize, v: usize) -> Color {
        debug_assert!(u != v && u < self.n2 && v < self.n2);
        if self.red[pair_index(u, v)] {
            Color::Red
        } else {
            Color::Blue
        }
    }

    /// Verifies that no monochromatic `K_n` exists and records `n` as the
    /// clique bound on success.
    pub fn certify(mut self, n: usize) -> Result<Self, BaseVerdict> {
        let verdict = verify_base(&self, n);
        if verdict.ok {
            self.clique_bound = Some(n);
            Ok(self)
        } else {
            Err(verdict)
        }
    }

    pub fn is_total(&self) -> bool {
        self.red.len() == self.n2 * self.n2.saturating_sub(1) / 2
    }
}

/// Outcome of [`verify_base`]: `ok` iff no color class contains `K_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseVerdict {
    pub ok: bool,
    pub witness: Option<Vec<usize>>,
    pub witness_color: Option<Color>,
}

pub fn verify_base(c: &BaseColoring, n: usize) -> BaseVerdict {
    if n > c.n2 {
        return BaseVerdict {
            ok: true,
            witness: None,
            witness_color: None,
        };
    }
    if n <= 1 {
        // a single vertex (or nothing) is trivially a clique of any color
        return BaseVerdict {
            ok: false,
            witness: Some((0..n).collect()),
            witness_color: None,
        };
    }
    for &color in &BASE_PALETTE {
        let mut clique = Vec::with_capacity(n);
        let candidates: Vec<usize> = (0..c.n2).collect();
        if find_clique(c, color, n, &mut clique, &candidates) {
            return BaseVerdict {
                ok: false,
                witness: Some(clique),
                witness_color: Some(color),
            };
        }
    }
    BaseVerdict {
        ok: true,
        witness: None,
        witness_color: None,
    }
}

fn find_clique(c: &BaseColoring, color: Color, target: usize, clique: &mut Vec<usize>, candidates: &[usize]) -> bool {
    if clique.len() == target {
        return true;
    }
    for (i, &v) in candidates.iter().enumerate() {
        if clique.len() + candidates.len() - i < target {
            return false;
        }
        let next: Vec<usize> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&u| c.color(v, u) == color)
            .collect();
        if clique.len() + 1 + next.len() < target {
            continue;
        }
        clique.push(v);
        if find_clique(c, color, target, clique, &next) {
            return true;
        }
        clique.pop();
    }
    false
}

/// Default number of rejection-sampling attempts.
pub const DEFAULT_ATTEMPTS: u64 = 10_000;

/// Draws uniformly random 2-colorings of `K_{n2}` until one has no
/// monochromatic `K_n`. Success is likely only when `n2 <= 2^{n/2}`.
pub fn random_base_coloring(n2: usize, n: usize, seed: u64, attempt_budget: u64) -> Result<BaseColoring, StepUpError> {
    if n2 < 2 {
        return Err(StepUpError::BaseTooSmall(n2));
    }
    if n < 3 {
        return Err(StepUpError::CliqueTooSmall(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempt_budget {
        let candidate = BaseColoring::from_fn(n2, |_, _| if rng.gen::<bool>() { Color::Red } else { Color::Blue });
        if let Ok(certified) = candidate.certify(n) {
            return Ok(certified);
        }
    }
    Err(StepUpError::BudgetExhausted {
        n2,
        clique: n,
        attempts: attempt_budget,
    })
}

/// `floor(2^{n/2})`, the customary base size for clique bound `n`.
pub fn suggested_base_size(n: usize) -> usize {
    2f64.powf(n as f64 / 2.0).floor() as usize
}

#[derive(Debug, Clone)]
enum Rule {
    Base(Arc<BaseColoring>),
    Stepped(Arc<EdgeColoring>),
}

/// A total coloring of the k-subsets of `{0, .., N - 1}`, evaluated lazily.
#[derive(Debug, Clone)]
pub struct EdgeColoring {
    k: usize,
    universe: BigUint,
    rule: Rule,
}

/// Largest lower universe we are willing to exponentiate.
const MAX_UNIVERSE_BITS: u64 = 1 << 24;

impl EdgeColoring {
    pub fn from_base(base: BaseColoring) -> Self {
        EdgeColoring {
            k: 2,
            universe: BigUint::from(base.n2),
            rule: Rule::Base(Arc::new(base)),
        }
    }

    /// `base` stepped up until the uniformity reaches `k`.
    pub fn stepped(base: BaseColoring, k: usize) -> Result<Self, StepUpError> {
        if k < 2 {
            return Err(StepUpError::InvalidUniformity);
        }
        let mut c = Self::from_base(base);
        while c.k < k {
            c = step_up(&c)?;
        }
        Ok(c)
    }

    pub fn uniformity(&self) -> usize {
        self.k
    }

    pub fn universe_size(&self) -> &BigUint {
        &self.universe
    }

    pub fn palette(&self) -> &'static [Color] {
        Color::palette(self.k)
    }

    /// Number of step-up applications above the base.
    pub fn steps(&self) -> usize {
        self.k - 2
    }

    pub fn base(&self) -> &BaseColoring {
        match &self.rule {
            Rule::Base(b) => b,
            Rule::Stepped(lower) => lower.base(),
        }
    }

    pub fn color_of(&self, xs: &[Label]) -> Result<Color, StepUpError> {
        if xs.len() != self.k {
            return Err(StepUpError::Arity {
                expected: self.k,
                found: xs.len(),
            });
        }
        let mut sorted: Vec<&Label> = xs.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(StepUpError::DuplicateLabel(w[0].clone()));
        }
        let last = sorted[sorted.len() - 1];
        if last.value() >= &self.universe {
            return Err(StepUpError::OutOfUniverse {
                label: last.clone(),
                universe: self.universe.clone(),
            });
        }
        if let Some(small) = sorted.iter().map(|l| l.to_u64()).collect::<Option<Vec<u64>>>() {
            return Ok(self.color_sorted_u64(&small));
        }
        let deltas: Vec<u64> = sorted
            .windows(2)
            .map(|w| delta(w[0], w[1]).expect("labels are distinct"))
            .collect();
        Ok(self.color_from_deltas(&deltas))
    }

    /// Same as [`color_of`](Self::color_of) for machine-word labels.
    pub fn color_of_u64(&self, xs: &[u64]) -> Result<Color, StepUpError> {
        if xs.len() != self.k {
            return Err(StepUpError::Arity {
                expected: self.k,
                found: xs.len(),
            });
        }
        let mut sorted = xs.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(StepUpError::DuplicateLabel(Label::from(w[0])));
        }
        let last = sorted[sorted.len() - 1];
        if BigUint::from(last) >= self.universe {
            return Err(StepUpError::OutOfUniverse {
                label: Label::from(last),
                universe: self.universe.clone(),
            });
        }
        Ok(self.color_sorted_u64(&sorted))
    }

    /// Caller guarantees: sorted, distinct, in universe, arity k.
    pub(crate) fn color_sorted_u64(&self, xs: &[u64]) -> Color {
        match &self.rule {
            Rule::Base(b) => b.color(xs[0] as usize, xs[1] as usize),
            Rule::Stepped(_) => {
                let deltas: Vec<u64> = xs
                    .windows(2)
                    .map(|w| u64::from(delta_u64(w[0], w[1]).expect("labels are distinct")))
                    .collect();
                self.color_from_deltas(&deltas)
            }
        }
    }

    fn color_from_deltas(&self, deltas: &[u64]) -> Color {
        let lower = match &self.rule {
            Rule::Stepped(lower) => lower,
            Rule::Base(_) => unreachable!("base colorings are table lookups"),
        };
        if self.k == 3 {
            let (d1, d2) = (deltas[0], deltas[1]);
            let base = lower.color_sorted_u64(&[d1.min(d2), d1.max(d2)]);
            return match (d1 < d2, base) {
                (true, Color::Red) => Color::C1,
                (true, _) => Color::C2,
                (false, Color::Red) => Color::C3,
                (false, _) => Color::C4,
            };
        }
        let argmax = argmax_unique(deltas);
        match classify_slice(deltas) {
            Monotonicity::Increasing => {
                assert!(argmax == deltas.len() - 1, "monotone vector with interior maximum");
                lower.color_sorted_u64(deltas)
            }
            Monotonicity::Decreasing => {
                assert!(argmax == 0, "monotone vector with interior maximum");
                let ascending: Vec<u64> = deltas.iter().rev().copied().collect();
                lower.color_sorted_u64(&ascending)
            }
            Monotonicity::NotMonotone => {
                if argmax == 0 || argmax == deltas.len() - 1 {
                    Color::C1
                } else {
                    Color::C2
                }
            }
        }
    }
}

/// 0-based position of the maximum; genuine delta vectors never tie.
fn argmax_unique(deltas: &[u64]) -> usize {
    let (pos, max) = deltas
        .iter()
        .copied()
        .enumerate()
        .max_by_key(|&(_, v)| v)
        .expect("nonempty");
    debug_assert_eq!(
        deltas.iter().filter(|&&v| v == max).count(),
        1,
        "tied maximum in delta vector"
    );
    pos
}

/// Lifts a coloring of uniformity `k - 1` on `N` vertices to uniformity `k`
/// on `2^N` vertices.
pub fn step_up(c: &EdgeColoring) -> Result<EdgeColoring, StepUpError> {
    let exponent = c
        .universe
        .to_u64()
        .filter(|&e| e <= MAX_UNIVERSE_BITS)
        .ok_or_else(|| StepUpError::UniverseTooLarge(c.universe.clone()))?;
    Ok(EdgeColoring {
        k: c.k + 1,
        universe: BigUint::one() << exponent,
        rule: Rule::Stepped(Arc::new(c.clone())),
    })
}

pub fn color_of(c: &EdgeColoring, xs: &[Label]) -> Result<Color, StepUpError> {
    c.color_of(xs)
}

/// Writes `base N2` followed by one `u v R|B` line per pair.
pub fn write_base_coloring<W: Write>(c: &BaseColoring, mut w: W) -> Result<(), StepUpError> {
    writeln!(w, "base {}", c.n2)?;
    for (u, v) in (0..c.n2).tuple_combinations() {
        writeln!(w, "{u} {v} {}", c.color(u, v).code())?;
    }
    Ok(())
}

pub fn read_base_coloring<R: BufRead>(r: R) -> Result<BaseColoring, StepUpError> {
    let parse_err = |line: usize, message: String| StepUpError::Parse { line, message };
    let mut n2: Option<usize> = None;
    let mut assigned: Vec<Option<bool>> = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        match n2 {
            None => {
                if fields.len() != 2 || fields[0] != "base" {
                    return Err(parse_err(lineno, "expected header `base N2`".into()));
                }
                let n: usize = fields[1]
                    .parse()
                    .map_err(|e| parse_err(lineno, format!("bad vertex count: {e}")))?;
                if n < 2 {
                    return Err(parse_err(lineno, format!("base needs at least 2 vertices, got {n}")));
                }
                n2 = Some(n);
                assigned = vec![None; n * (n - 1) / 2];
            }
            Some(n) => {
                if fields.len() != 3 {
                    return Err(parse_err(lineno, "expected `u v color`".into()));
                }
                let u: usize = fields[0]
                    .parse()
                    .map_err(|e| parse_err(lineno, format!("bad vertex: {e}")))?;
                let v: usize = fields[1]
                    .parse()
                    .map_err(|e| parse_err(lineno, format!("bad vertex: {e}")))?;
                if u == v || u >= n || v >= n {
                    return Err(parse_err(lineno, format!("invalid pair ({u}, {v}) for N2 = {n}")));
                }
                let red = match fields[2] {
                    "R" => true,
                    "B" => false,
                    other => return Err(parse_err(lineno, format!("color must be R or B, got {other:?}"))),
                };
                let slot = &mut assigned[pair_index(u, v)];
                if slot.is_some() {
                    return Err(parse_err(lineno, format!("pair ({u}, {v}) colored twice")));
                }
                *slot = Some(red);
            }
        }
    }
    let n = n2.ok_or_else(|| parse_err(0, "missing header `base N2`".into()))?;
    if let Some(missing) = assigned.iter().position(Option::is_none) {
        let (u, v) = (0..n)
            .tuple_combinations()
            .find(|&(u, v)| pair_index(u, v) == missing)
            .expect("pair exists");
        return Err(parse_err(0, format!("pair ({u}, {v}) has no color")));
    }
    Ok(BaseColoring {
        n2: n,
        red: assigned.into_iter().map(|s| s.expect("checked")).collect(),
        clique_bound: None,
    })
}

/// Writes `x1 .. xk color` for every k-subset of `window` (sorted, lexicographic).
pub fn write_window_dump<W: Write>(c: &EdgeColoring, window: &[Label], mut w: W) -> Result<(), StepUpError> {
    let mut sorted = window.to_vec();
    sorted.sort();
    sorted.dedup();
    for subset in sorted.iter().cloned().combinations(c.k) {
        let color = c.color_of(&subset)?;
        writeln!(w, "{} {}", subset.iter().join(" "), color.code())?;
    }
    Ok(())
}

pub fn read_window_dump<R: BufRead>(r: R) -> Result<Vec<(Vec<Label>, Color)>, StepUpError> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let err = |message: String| StepUpError::Parse { line: i + 1, message };
        let (color, labels) = fields.split_last().expect("nonempty");
        let color: Color = color.parse().map_err(err)?;
        let labels = labels
            .iter()
            .map(|s| s.parse::<Label>().map_err(|e| err(format!("bad label {s:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        out.push((labels, color));
    }
    Ok(out)
}
