//! Binary bit calculus on vertex labels.
//!
//! Labels are arbitrary-precision nonnegative integers. `delta(x, y)` is the
//! highest bit position at which `x` and `y` differ; the delta vector of a
//! sorted label set lists the deltas of consecutive labels. The stepping-up
//! colorings in [`crate::stepup`] are defined entirely in terms of these
//! vectors.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BitError {
    #[error("delta undefined on equal labels")]
    EqualLabels,
    #[error("labels must be strictly increasing (violation at position {index})")]
    NotStrictlyIncreasing { index: usize },
    #[error("empty label list")]
    NoLabels,
    #[error("empty delta vector")]
    EmptyVector,
    #[error("not a valid delta vector: maximum {value} attained at positions {first} and {second}")]
    TiedMaximum { value: u64, first: usize, second: usize },
    #[error("witness positions must be strictly increasing (violation at position {index})")]
    PositionsNotIncreasing { index: usize },
    #[error("tower height must be at least 1")]
    ZeroHeight,
    #[error("tower base must be a finite nonnegative number, got {0}")]
    InvalidBase(f64),
    #[error("tower overflow guard: result would need more than {max_bits} bits")]
    TowerOverflow { max_bits: u64 },
}

/// A vertex name in a stepped-up universe.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Label(BigUint);

impl Label {
    pub fn new(value: BigUint) -> Self {
        Label(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Coefficient of `2^i` in the binary expansion.
    pub fn bit(&self, i: u64) -> u8 {
        self.0.bit(i) as u8
    }
}

impl From<u64> for Label {
    fn from(v: u64) -> Self {
        Label(BigUint::from(v))
    }
}

impl From<BigUint> for Label {
    fn from(v: BigUint) -> Self {
        Label(v)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Label {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim().parse::<BigUint>().map(Label)
    }
}

// Labels travel through JSON as decimal strings so that tower-sized values
// survive the trip.
impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn bit(x: &BigUint, i: u64) -> u8 {
    x.bit(i) as u8
}

#[inline]
pub fn bit_u64(x: u64, i: u32) -> u8 {
    if i >= 64 {
        0
    } else {
        ((x >> i) & 1) as u8
    }
}

/// Highest differing bit position of two machine words, `None` if equal.
#[inline]
pub fn delta_u64(x: u64, y: u64) -> Option<u32> {
    let diff = x ^ y;
    if diff == 0 {
        None
    } else {
        Some(63 - diff.leading_zeros())
    }
}

pub fn delta(x: &Label, y: &Label) -> Result<u64, BitError> {
    if let (Some(a), Some(b)) = (x.to_u64(), y.to_u64()) {
        return delta_u64(a, b).map(u64::from).ok_or(BitError::EqualLabels);
    }
    let diff = &x.0 ^ &y.0;
    if diff.is_zero() {
        Err(BitError::EqualLabels)
    } else {
        Ok(diff.bits() - 1)
    }
}

/// Consecutive deltas of a strictly increasing label sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeltaVector {
    entries: Vec<u64>,
    source_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    NotMonotone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl DeltaVector {
    /// Wraps raw entries. `source_size` is taken as `entries.len() + 1`.
    pub fn from_entries(entries: Vec<u64>) -> Self {
        let source_size = entries.len() + 1;
        DeltaVector { entries, source_size }
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    /// 1-based index of the unique maximum entry.
    pub fn argmax(&self) -> Result<usize, BitError> {
        let (&first, rest) = self.entries.split_first().ok_or(BitError::EmptyVector)?;
        let mut best = (0usize, first);
        let mut tie: Option<usize> = None;
        for (i, &v) in rest.iter().enumerate() {
            let i = i + 1;
            if v > best.1 {
                best = (i, v);
                tie = None;
            } else if v == best.1 {
                tie.get_or_insert(i);
            }
        }
        match tie {
            Some(second) => Err(BitError::TiedMaximum {
                value: best.1,
                first: best.0 + 1,
                second: second + 1,
            }),
            None => Ok(best.0 + 1),
        }
    }

    /// Strict monotonicity. Vectors of length at most one count as increasing.
    pub fn classify(&self) -> Monotonicity {
        classify_slice(&self.entries)
    }

    /// Longest contiguous strictly monotone run as a 1-based inclusive range.
    /// Ties go to the leftmost run.
    pub fn longest_monotone_run(&self) -> Result<(usize, usize), BitError> {
        if self.entries.is_empty() {
            return Err(BitError::EmptyVector);
        }
        let mut best = (0usize, 0usize);
        let (mut inc, mut dec) = (1usize, 1usize);
        for i in 1..self.entries.len() {
            let (prev, cur) = (self.entries[i - 1], self.entries[i]);
            inc = if cur > prev { inc + 1 } else { 1 };
            dec = if cur < prev { dec + 1 } else { 1 };
            let len = inc.max(dec);
            // strictly longer only, so earlier starts win ties
            if len > best.1 - best.0 + 1 {
                best = (i + 1 - len, i);
            }
        }
        Ok((best.0 + 1, best.1 + 1))
    }
}

pub(crate) fn classify_slice(entries: &[u64]) -> Monotonicity {
    if entries.len() <= 1 {
        return Monotonicity::Increasing;
    }
    if entries.windows(2).all(|w| w[0] < w[1]) {
        Monotonicity::Increasing
    } else if entries.windows(2).all(|w| w[0] > w[1]) {
        Monotonicity::Decreasing
    } else {
        Monotonicity::NotMonotone
    }
}

pub fn delta_vector(xs: &[Label]) -> Result<DeltaVector, BitError> {
    if xs.is_empty() {
        return Err(BitError::NoLabels);
    }
    let mut entries = Vec::with_capacity(xs.len() - 1);
    for (i, w) in xs.windows(2).enumerate() {
        if w[0] >= w[1] {
            return Err(BitError::NotStrictlyIncreasing { index: i + 1 });
        }
        entries.push(delta(&w[0], &w[1])?);
    }
    Ok(DeltaVector {
        entries,
        source_size: xs.len(),
    })
}

pub fn delta_vector_u64(xs: &[u64]) -> Result<DeltaVector, BitError> {
    if xs.is_empty() {
        return Err(BitError::NoLabels);
    }
    let mut entries = Vec::with_capacity(xs.len() - 1);
    for (i, w) in xs.windows(2).enumerate() {
        if w[0] >= w[1] {
            return Err(BitError::NotStrictlyIncreasing { index: i + 1 });
        }
        entries.push(u64::from(delta_u64(w[0], w[1]).expect("distinct")));
    }
    Ok(DeltaVector {
        entries,
        source_size: xs.len(),
    })
}

pub fn argmax_delta(v: &DeltaVector) -> Result<usize, BitError> {
    v.argmax()
}

pub fn classify_monotone(v: &DeltaVector) -> Monotonicity {
    v.classify()
}

pub fn longest_monotone_run(v: &DeltaVector) -> Result<(usize, usize), BitError> {
    v.longest_monotone_run()
}

/// Builds `x_1 < ... < x_t` whose delta vector is `positions` (increasing) or
/// `positions` reversed (decreasing). Each step adds a single power of two
/// at a bit that is still clear, so no carries occur.
pub fn monotone_witness_set(positions: &[u64], direction: Direction) -> Result<Vec<Label>, BitError> {
    for (i, w) in positions.windows(2).enumerate() {
        if w[0] >= w[1] {
            return Err(BitError::PositionsNotIncreasing { index: i + 1 });
        }
    }
    let steps: Vec<u64> = match direction {
        Direction::Increasing => positions.to_vec(),
        Direction::Decreasing => positions.iter().rev().copied().collect(),
    };
    let mut current = BigUint::zero();
    let mut out = Vec::with_capacity(steps.len() + 1);
    out.push(Label(current.clone()));
    for q in steps {
        current.set_bit(q, true);
        out.push(Label(current.clone()));
    }
    Ok(out)
}

/// Size guard for [`tower_with_guard`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TowerGuard {
    pub max_bits: u64,
}

impl Default for TowerGuard {
    fn default() -> Self {
        // tw_5(2) = 2^65536 fits comfortably, tw_6(2) does not
        TowerGuard { max_bits: 1 << 24 }
    }
}

pub fn tower(k: u32, x: f64) -> Result<BigUint, BitError> {
    tower_with_guard(k, x, TowerGuard::default())
}

/// `tw_1(x) = floor(x)`, `tw_k(x) = 2^tw_{k-1}(x)`.
pub fn tower_with_guard(k: u32, x: f64, guard: TowerGuard) -> Result<BigUint, BitError> {
    if k == 0 {
        return Err(BitError::ZeroHeight);
    }
    if !x.is_finite() || x < 0.0 {
        return Err(BitError::InvalidBase(x));
    }
    let mut value = BigUint::from_f64(x.floor()).ok_or(BitError::InvalidBase(x))?;
    if value.bits() > guard.max_bits {
        return Err(BitError::TowerOverflow {
            max_bits: guard.max_bits,
        });
    }
    for _ in 1..k {
        // 2^v has v + 1 bits
        let exponent = match value.to_u64() {
            Some(e) if e < guard.max_bits => e,
            _ => {
                return Err(BitError::TowerOverflow {
                    max_bits: guard.max_bits,
                })
            }
        };
        value = BigUint::one() << exponent;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(xs: &[u64]) -> Vec<Label> {
        xs.iter().map(|&x| Label::from(x)).collect()
    }

    fn dv(xs: &[u64]) -> DeltaVector {
        DeltaVector::from_entries(xs.to_vec())
    }

    #[test]
    fn bit_examples() {
        assert_eq!(bit(&BigUint::from(5u32), 0), 1);
        assert_eq!(bit(&BigUint::from(5u32), 1), 0);
        assert_eq!(bit(&BigUint::from(0u32), 7), 0);
        assert_eq!(bit_u64(5, 2), 1);
        assert_eq!(bit_u64(5, 64), 0);
        assert_eq!(Label::from(5).bit(0), 1);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&3.into(), &5.into()), Ok(2));
        assert_eq!(delta(&6.into(), &7.into()), Ok(0));
        assert_eq!(delta(&4.into(), &4.into()), Err(BitError::EqualLabels));
    }

    #[test]
    fn delta_on_big_labels() {
        let big = Label::new(BigUint::one() << 200u32);
        let bigger = Label::new((BigUint::one() << 200u32) + BigUint::from(3u32));
        assert_eq!(delta(&big, &bigger), Ok(1));
        assert_eq!(delta(&Label::from(1), &big), Ok(200));
        assert_eq!(delta(&big, &big), Err(BitError::EqualLabels));
    }

    #[test]
    fn delta_vector_examples() {
        assert_eq!(delta_vector(&labels(&[0, 1, 2, 4])).unwrap().entries(), &[0, 1, 2]);
        assert_eq!(delta_vector(&labels(&[0, 4, 5, 6])).unwrap().entries(), &[2, 0, 1]);
        let single = delta_vector(&labels(&[7])).unwrap();
        assert!(single.is_empty());
        assert_eq!(single.source_size(), 1);
        assert_eq!(
            delta_vector(&labels(&[0, 2, 2])),
            Err(BitError::NotStrictlyIncreasing { index: 2 })
        );
        assert_eq!(
            delta_vector(&labels(&[3, 1])),
            Err(BitError::NotStrictlyIncreasing { index: 1 })
        );
        assert_eq!(delta_vector(&[]), Err(BitError::NoLabels));
        assert_eq!(delta_vector_u64(&[0, 4, 5, 6]).unwrap().entries(), &[2, 0, 1]);
    }

    #[test]
    fn argmax_examples() {
        assert_eq!(dv(&[1, 2, 0]).argmax(), Ok(2));
        assert_eq!(dv(&[2, 0, 1]).argmax(), Ok(1));
        assert!(matches!(dv(&[3, 3]).argmax(), Err(BitError::TiedMaximum { .. })));
        assert_eq!(dv(&[]).argmax(), Err(BitError::EmptyVector));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(dv(&[0, 1, 2]).classify(), Monotonicity::Increasing);
        assert_eq!(dv(&[2, 1, 0]).classify(), Monotonicity::Decreasing);
        assert_eq!(dv(&[1, 2, 0]).classify(), Monotonicity::NotMonotone);
        assert_eq!(dv(&[4]).classify(), Monotonicity::Increasing);
        assert_eq!(dv(&[]).classify(), Monotonicity::Increasing);
    }

    #[test]
    fn run_examples() {
        assert_eq!(dv(&[0, 1, 2]).longest_monotone_run(), Ok((1, 3)));
        assert_eq!(dv(&[2, 0, 1]).longest_monotone_run(), Ok((1, 2)));
        assert_eq!(dv(&[5]).longest_monotone_run(), Ok((1, 1)));
        assert_eq!(dv(&[3, 0, 1, 2, 0]).longest_monotone_run(), Ok((2, 4)));
        assert_eq!(dv(&[]).longest_monotone_run(), Err(BitError::EmptyVector));
    }

    #[test]
    fn witness_examples() {
        let inc = monotone_witness_set(&[0, 2, 4], Direction::Increasing).unwrap();
        assert_eq!(inc, labels(&[0, 1, 5, 21]));
        let dec = monotone_witness_set(&[0, 2, 4], Direction::Decreasing).unwrap();
        assert_eq!(dec, labels(&[0, 16, 20, 21]));
        assert_eq!(delta_vector(&dec).unwrap().entries(), &[4, 2, 0]);
        assert_eq!(monotone_witness_set(&[], Direction::Increasing).unwrap(), labels(&[0]));
        assert_eq!(
            monotone_witness_set(&[3, 3], Direction::Increasing),
            Err(BitError::PositionsNotIncreasing { index: 1 })
        );
    }

    #[test]
    fn tower_examples() {
        assert_eq!(tower(1, 5.0).unwrap(), BigUint::from(5u32));
        assert_eq!(tower(2, 3.0).unwrap(), BigUint::from(8u32));
        assert_eq!(tower(3, 2.0).unwrap(), BigUint::from(16u32));
        assert_eq!(tower(4, 2.0).unwrap(), BigUint::from(65536u32));
        assert_eq!(tower(5, 2.0).unwrap().bits(), 65537);
        assert_eq!(tower(2, 3.7).unwrap(), BigUint::from(8u32));
        assert!(matches!(tower(6, 2.0), Err(BitError::TowerOverflow { .. })));
        assert_eq!(tower(0, 2.0), Err(BitError::ZeroHeight));
        assert!(matches!(tower(2, -1.0), Err(BitError::InvalidBase(_))));
        let small = TowerGuard { max_bits: 10 };
        assert_eq!(tower_with_guard(3, 3.0, small).unwrap(), BigUint::from(256u32));
        assert!(tower_with_guard(4, 3.0, small).is_err());
        assert_eq!(tower_with_guard(3, 2.0, small).unwrap(), BigUint::from(16u32));
    }

    #[test]
    fn label_parsing_and_json() {
        let l: Label = "123456789012345678901234567890".parse().unwrap();
        let json = serde_json::to_string(&l).unwrap();
        assert_eq!(json, "\"123456789012345678901234567890\"");
        let back: Label = serde_json::from_str(&json).unwrap();
        assert_eq!(back, l);
        assert!("-3".parse::<Label>().is_err());
    }
}
