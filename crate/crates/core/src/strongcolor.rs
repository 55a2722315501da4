//! Greedy strong coloring of uniform hypergraphs.
//!
//! A strong coloring partitions the vertices so that no edge meets a class
//! twice. The greedy algorithm buckets vertices by degree relative to
//! `Δ = √m`: `U_0` holds vertices of degree above `Δ` and gets one class per
//! vertex, and bucket `U_i` (`Δ/2^i < d ≤ Δ/2^{i-1}`) is colored first-fit
//! with at most `t_i = ⌈kΔ/2^{i-1}⌉` bucket-local classes. This yields
//! `O(√m)` classes whose sizes multiply to `2^{O(√m)}`.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Error)]
pub enum StrongColorError {
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("bucket {bucket}: vertex {vertex} needs a class beyond the budget of {budget}")]
    BudgetExceeded {
        bucket: usize,
        vertex: usize,
        budget: usize,
    },
    #[error("vertex {0} is not covered by the partition")]
    Uncovered(usize),
    #[error("vertex {0} appears in more than one class")]
    Repeated(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("class {0} is empty")]
    EmptyClass(usize),
    #[error("malformed partition JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Ordered partition of the vertex set into nonempty classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrongColoring {
    classes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColoringStats {
    pub t: usize,
    pub log2_product: f64,
}

impl StrongColoring {
    /// Wraps classes after checking they partition `0..n`.
    pub fn new(n: usize, classes: Vec<Vec<usize>>) -> Result<Self, StrongColorError> {
        check_partition(n, &classes)?;
        Ok(StrongColoring { classes })
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn stats(&self) -> ColoringStats {
        coloring_stats(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain integers always serialize")
    }
}

pub fn read_partition<R: Read>(reader: R) -> Result<StrongColoring, StrongColorError> {
    Ok(serde_json::from_reader(reader)?)
}

pub fn write_partition<W: Write>(sc: &StrongColoring, mut writer: W) -> Result<(), StrongColorError> {
    writer.write_all(sc.to_json().as_bytes())?;
    writer.write_all(b"\n")?;
    Ok(())
}

/// Degree buckets and per-bucket class budgets of one greedy run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeBucketing {
    pub m: usize,
    pub k: usize,
    /// `√m`
    pub delta: f64,
    /// `s = ⌊log₂ Δ⌋ + 1`; buckets are `U_0..=U_s`.
    pub bucket_count: usize,
    pub buckets: Vec<Vec<usize>>,
    /// `budgets[i] = t_i` for `i ≥ 1`; `budgets[0]` is `|U_0|`.
    pub budgets: Vec<usize>,
    /// Classes actually opened in each bucket.
    pub classes_used: Vec<usize>,
    /// Largest number of already-placed same-bucket neighbours seen, per bucket.
    pub max_conflicts: Vec<usize>,
}

impl DegreeBucketing {
    pub fn n0(&self) -> usize {
        self.buckets.first().map_or(0, Vec::len)
    }
}

/// Bucket of a vertex of positive degree `d`: 0 if `d² > m`, else the least
/// `i ≥ 1` with `d²·4^i > m`.
fn bucket_of(d: usize, m: usize) -> usize {
    let d2 = (d as u128) * (d as u128);
    let m = m as u128;
    if d2 > m {
        return 0;
    }
    let mut i = 1;
    while d2 << (2 * i) <= m {
        i += 1;
    }
    i
}

/// Least integer `t` with `t·2^{i-1} ≥ k√m`.
fn bucket_budget(k: usize, m: usize, i: usize) -> usize {
    let target = (k as u128) * (k as u128) * (m as u128);
    let scale = 1u128 << (i - 1);
    let fits = |t: u128| (t * scale) * (t * scale) >= target;
    let mut t = ((k as f64) * (m as f64).sqrt() / scale as f64).ceil().max(0.0) as u128;
    while t > 0 && fits(t - 1) {
        t -= 1;
    }
    while !fits(t) {
        t += 1;
    }
    t as usize
}

fn floor_log2_sqrt(m: usize) -> usize {
    // ⌊log₂ √m⌋ = ⌊log₂ m⌋ / 2 (integer division)
    (usize::BITS - 1 - m.leading_zeros()) as usize / 2
}

pub fn greedy_strong_coloring(h: &Hypergraph) -> Result<(StrongColoring, DegreeBucketing), StrongColorError> {
    let (n, m, k) = (h.vertex_count(), h.edge_count(), h.uniformity());
    let degrees = h.degrees();
    if let Some(v) = degrees.iter().position(|&d| d == 0) {
        return Err(StrongColorError::IsolatedVertex(v));
    }
    if n == 0 {
        let trace = DegreeBucketing {
            m,
            k,
            delta: 0.0,
            bucket_count: 0,
            buckets: vec![Vec::new()],
            budgets: vec![0],
            classes_used: vec![0],
            max_conflicts: vec![0],
        };
        return Ok((StrongColoring { classes: Vec::new() }, trace));
    }

    let s = floor_log2_sqrt(m) + 1;
    let mut buckets = vec![Vec::new(); s + 1];
    for (v, &d) in degrees.iter().enumerate() {
        let b = bucket_of(d, m);
        debug_assert!(b <= s);
        buckets[b].push(v);
    }
    let mut budgets = vec![buckets[0].len()];
    budgets.extend((1..=s).map(|i| bucket_budget(k, m, i)));

    let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in h.edges() {
        for &u in e {
            for &v in e {
                if u != v {
                    neighbours[u].push(v);
                }
            }
        }
    }
    for list in &mut neighbours {
        list.sort_unstable();
        list.dedup();
    }

    let mut bucket_index = vec![0usize; n];
    for (b, members) in buckets.iter().enumerate() {
        for &v in members {
            bucket_index[v] = b;
        }
    }

    let mut classes: Vec<Vec<usize>> = buckets[0].iter().map(|&v| vec![v]).collect();
    let mut classes_used = vec![buckets[0].len()];
    let mut max_conflicts = vec![0];
    // local class of each placed vertex, within its own bucket
    let mut local_class: Vec<Option<usize>> = vec![None; n];

    for (b, members) in buckets.iter().enumerate().skip(1) {
        let budget = budgets[b];
        let mut local: Vec<Vec<usize>> = Vec::new();
        let mut worst = 0;
        let mut forbidden = vec![false; budget];
        for &v in members {
            let mut conflicts = 0;
            for &u in &neighbours[v] {
                if bucket_index[u] == b {
                    if let Some(c) = local_class[u] {
                        conflicts += 1;
                        forbidden[c] = true;
                    }
                }
            }
            worst = worst.max(conflicts);
            debug_assert!(conflicts < budget.max(1), "placed neighbours exceed t_i - 1");
            let choice = (0..budget)
                .find(|&c| !forbidden[c])
                .ok_or(StrongColorError::BudgetExceeded {
                    bucket: b,
                    vertex: v,
                    budget,
                })?;
            for &u in &neighbours[v] {
                if let Some(c) = local_class[u] {
                    if bucket_index[u] == b {
                        forbidden[c] = false;
                    }
                }
            }
            local_class[v] = Some(choice);
            if choice == local.len() {
                local.push(Vec::new());
            }
            local[choice].push(v);
        }
        classes_used.push(local.len());
        max_conflicts.push(worst);
        classes.extend(local);
    }

    let trace = DegreeBucketing {
        m,
        k,
        delta: (m as f64).sqrt(),
        bucket_count: s,
        buckets,
        budgets,
        classes_used,
        max_conflicts,
    };
    Ok((StrongColoring { classes }, trace))
}

fn check_partition(n: usize, classes: &[Vec<usize>]) -> Result<(), StrongColorError> {
    let mut seen = vec![false; n];
    for (i, class) in classes.iter().enumerate() {
        if class.is_empty() {
            return Err(StrongColorError::EmptyClass(i + 1));
        }
        for &v in class {
            if v >= n {
                return Err(StrongColorError::OutOfRange { vertex: v, n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(StrongColorError::Repeated(v));
            }
        }
    }
    match seen.iter().position(|&s| !s) {
        Some(v) => Err(StrongColorError::Uncovered(v)),
        None => Ok(()),
    }
}

/// Result of [`validate_strong_coloring`]; classes are numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongValidation {
    pub ok: bool,
    pub violations: Vec<(Vec<usize>, usize)>,
}

pub fn validate_strong_coloring(
    h: &Hypergraph,
    partition: &[Vec<usize>],
) -> Result<StrongValidation, StrongColorError> {
    check_partition(h.vertex_count(), partition)?;
    let mut class_of = vec![0usize; h.vertex_count()];
    for (i, class) in partition.iter().enumerate() {
        for &v in class {
            class_of[v] = i + 1;
        }
    }
    let mut violations = Vec::new();
    for e in h.edges() {
        let mut cs: Vec<usize> = e.iter().map(|&v| class_of[v]).collect();
        cs.sort_unstable();
        let mut reported = None;
        for w in cs.windows(2) {
            if w[0] == w[1] && reported != Some(w[0]) {
                violations.push((e.clone(), w[0]));
                reported = Some(w[0]);
            }
        }
    }
    Ok(StrongValidation {
        ok: violations.is_empty(),
        violations,
    })
}

pub fn coloring_stats(sc: &StrongColoring) -> ColoringStats {
    ColoringStats {
        t: sc.classes.len(),
        log2_product: sc.classes.iter().map(|c| (c.len() as f64).log2()).sum(),
    }
}

/// The explicit bounds a greedy run is held to, with `m = e(H)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub t: usize,
    pub t_limit: f64,
    pub n0: usize,
    pub n0_limit: f64,
    pub log2_product: f64,
    pub log2_product_limit: f64,
    /// `2k√m + log₂ m`, which every measured run also meets.
    pub log2_product_tight_limit: f64,
}

impl BoundCheck {
    pub fn new(sc: &StrongColoring, trace: &DegreeBucketing) -> Self {
        let root = (trace.m as f64).sqrt();
        let k = trace.k as f64;
        let stats = sc.stats();
        BoundCheck {
            t: stats.t,
            t_limit: 3.0 * k * root + ((trace.m + 1) as f64).log2(),
            n0: trace.n0(),
            n0_limit: k * root,
            log2_product: stats.log2_product,
            log2_product_limit: 5.0 * k * root,
            log2_product_tight_limit: 2.0 * k * root + (trace.m.max(1) as f64).log2(),
        }
    }

    pub fn t_ok(&self) -> bool {
        self.t as f64 <= self.t_limit
    }

    /// Exact integer form of `n0 ≤ k√m`.
    pub fn n0_ok(&self, k: usize, m: usize) -> bool {
        (self.n0 as u128) * (self.n0 as u128) <= (k as u128) * (k as u128) * (m as u128)
    }

    pub fn product_ok(&self) -> bool {
        self.log2_product <= self.log2_product_limit
    }

    pub fn tight_product_ok(&self) -> bool {
        self.log2_product <= self.log2_product_tight_limit
    }
}
