//! Permutations in one-line notation and their six basic statistics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default hard cap on `n` for exhaustive iteration over `S_n`.
pub const DEFAULT_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("value {value} at position {position} is outside 1..={n}")]
    OutOfRange { value: u32, position: usize, n: usize },
    #[error("value {0} occurs more than once")]
    Duplicate(u32),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("cannot parse permutation from {0:?}")]
    Parse(String),
}

/// A permutation of `{1, …, n}` in one-line notation. The empty permutation
/// is a valid value.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation(Vec<u32>);

impl Permutation {
    /// Validates that `values` is a bijection onto `{1, …, n}`.
    pub fn new(values: Vec<u32>) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for (position, &value) in values.iter().enumerate() {
            if value == 0 || value as usize > n {
                return Err(PermError::OutOfRange { value, position: position + 1, n });
            }
            if std::mem::replace(&mut seen[value as usize], true) {
                return Err(PermError::Duplicate(value));
            }
        }
        Ok(Permutation(values))
    }

    /// Caller guarantees `values` is a permutation of `1..=n`.
    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation(values)
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    /// `π_n … π_1`.
    pub fn reverse(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    /// `π_i ↦ n + 1 − π_i`.
    pub fn complement(&self) -> Self {
        let n1 = self.0.len() as u32 + 1;
        Permutation(self.0.iter().map(|&v| n1 - v).collect())
    }

    /// `self ⊕ other`: `other` is placed after `self`, shifted above it.
    pub fn direct_sum(&self, other: &Permutation) -> Self {
        let m = self.0.len() as u32;
        let mut values = self.0.clone();
        values.extend(other.0.iter().map(|&v| v + m));
        Permutation(values)
    }

    /// `self ⊖ other`: `self` is shifted above `other`, which follows it.
    pub fn skew_sum(&self, other: &Permutation) -> Self {
        let k = other.0.len() as u32;
        let mut values: Vec<u32> = self.0.iter().map(|&v| v + k).collect();
        values.extend_from_slice(&other.0);
        Permutation(values)
    }

    pub fn stats(&self) -> StatVector {
        StatVector::of(&self.0)
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = PermError;

    fn try_from(values: Vec<u32>) -> Result<Self, Self::Error> {
        Permutation::new(values)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// Single digits are concatenated (`423165`); longer permutations are
/// comma separated. `ε` prints as the empty string.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.len() > 9 { "," } else { "" };
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Accepts `423165`, `4,2,3,1,6,5`, `4 2 3 1 6 5`, and `ε` or the empty
/// string for the empty permutation.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "ε" || s == "e" {
            return Ok(Permutation::empty());
        }
        let parse_err = || PermError::Parse(s.to_string());
        let values: Vec<u32> = if s.contains(|c: char| c == ',' || c.is_whitespace()) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| parse_err()))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(parse_err))
                .collect::<Result<_, _>>()?
        };
        Permutation::new(values)
    }
}

/// Replaces each entry of a word of distinct integers by its rank.
pub fn standardize(word: &[i64]) -> Result<Permutation, PermError> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&i| word[i]);
    let mut values = vec![0u32; word.len()];
    for (rank, pair) in order.windows(2).enumerate() {
        if word[pair[0]] == word[pair[1]] {
            return Err(PermError::Duplicate(rank as u32 + 1));
        }
    }
    for (rank, &i) in order.iter().enumerate() {
        values[i] = rank as u32 + 1;
    }
    Ok(Permutation(values))
}

/// Ascents, descents and the four left-to-right / right-to-left extrema
/// counts of one permutation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StatVector {
    pub asc: u32,
    pub des: u32,
    pub lmax: u32,
    pub rmax: u32,
    pub lmin: u32,
    pub rmin: u32,
}

impl StatVector {
    /// Statistics of a sequence of distinct values (need not be standardized).
    pub fn of(values: &[u32]) -> Self {
        let mut st = StatVector::default();
        for w in values.windows(2) {
            if w[0] < w[1] {
                st.asc += 1;
            } else {
                st.des += 1;
            }
        }
        let (mut hi, mut lo) = (0u32, u32::MAX);
        for &v in values {
            if v > hi {
                hi = v;
                st.lmax += 1;
            }
            if v < lo {
                lo = v;
                st.lmin += 1;
            }
        }
        let (mut hi, mut lo) = (0u32, u32::MAX);
        for &v in values.iter().rev() {
            if v > hi {
                hi = v;
                st.rmax += 1;
            }
            if v < lo {
                lo = v;
                st.rmin += 1;
            }
        }
        st
    }

    /// Exponent vector in the fixed variable order `(p, q, u, v, s, t)`.
    pub fn exponents(&self) -> [u32; 6] {
        [self.asc, self.des, self.lmax, self.rmax, self.lmin, self.rmin]
    }
}

/// Lexicographic iterator over `S_n`.
#[derive(Debug, Clone)]
pub struct SnIter {
    current: Option<Vec<u32>>,
}

impl SnIter {
    fn new(n: usize) -> Self {
        SnIter { current: Some((1..=n as u32).collect()) }
    }
}

impl Iterator for SnIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let out = self.current.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            self.current = Some(next);
        }
        Some(Permutation(out))
    }
}

/// Advances `a` to its lexicographic successor; returns false at the last one.
pub(crate) fn next_permutation(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// All of `S_n` in lexicographic order, subject to [`DEFAULT_MAX_N`].
pub fn iter_sn(n: usize) -> Result<SnIter, PermError> {
    iter_sn_capped(n, DEFAULT_MAX_N)
}

pub fn iter_sn_capped(n: usize, cap: usize) -> Result<SnIter, PermError> {
    if n > cap {
        return Err(PermError::CapExceeded { n, cap });
    }
    Ok(SnIter::new(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(Permutation::new(vec![4, 2, 3, 1, 6, 5]).unwrap().to_string(), "423165");
        assert!(Permutation::new(vec![]).unwrap().is_empty());
        assert!(matches!(Permutation::new(vec![1, 3]), Err(PermError::OutOfRange { value: 3, .. })));
        assert_eq!(Permutation::new(vec![1, 1]), Err(PermError::Duplicate(1)));
        assert_eq!(Permutation::new(vec![0]).unwrap_err(), PermError::OutOfRange { value: 0, position: 1, n: 1 });
    }

    #[test]
    fn reverse_and_complement() {
        assert_eq!(p("423165").reverse(), p("561324"));
        assert_eq!(p("423165").complement(), p("354612"));
        assert_eq!(Permutation::empty().reverse(), Permutation::empty());
        assert_eq!(Permutation::empty().complement(), Permutation::empty());
        assert_eq!(p("1").reverse(), p("1"));
        assert_eq!(p("12").complement(), p("21"));
    }

    #[test]
    fn sums() {
        assert_eq!(p("231").direct_sum(&p("312")), p("231645"));
        assert_eq!(p("231").skew_sum(&p("312")), p("564312"));
        assert_eq!(Permutation::empty().direct_sum(&p("312")), p("312"));
        assert_eq!(Permutation::empty().skew_sum(&p("312")), p("312"));
        assert_eq!(p("1").direct_sum(&p("1")), p("12"));
        assert_eq!(p("1").skew_sum(&p("1")), p("21"));
    }

    #[test]
    fn statistics() {
        let st = p("31452").stats();
        assert_eq!(st, StatVector { asc: 2, des: 2, lmax: 3, rmax: 2, lmin: 2, rmin: 2 });
        assert_eq!(Permutation::empty().stats(), StatVector::default());
        assert_eq!(p("1").stats(), StatVector { asc: 0, des: 0, lmax: 1, rmax: 1, lmin: 1, rmin: 1 });
    }

    #[test]
    fn standardize_words() {
        assert_eq!(standardize(&[4, 1, 5]).unwrap(), p("213"));
        assert_eq!(standardize(&[7]).unwrap(), p("1"));
        assert_eq!(standardize(&[3, 4, 1]).unwrap(), p("231"));
        assert!(standardize(&[2, 5, 2]).is_err());
    }

    #[test]
    fn iterate_sn() {
        assert_eq!(iter_sn(0).unwrap().collect::<Vec<_>>(), vec![Permutation::empty()]);
        assert_eq!(iter_sn(2).unwrap().collect::<Vec<_>>(), vec![p("12"), p("21")]);
        let all: Vec<_> = iter_sn(4).unwrap().collect();
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(iter_sn(13).unwrap_err(), PermError::CapExceeded { n: 13, cap: 12 });
        assert_eq!(iter_sn_capped(13, 13).unwrap().next().unwrap(), Permutation::identity(13));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("4,2,3,1,6,5"), p("423165"));
        assert_eq!(p("ε"), Permutation::empty());
        let long = Permutation::identity(10);
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
        assert!("12a".parse::<Permutation>().is_err());
    }

    #[test]
    fn serde_rejects_invalid() {
        let ok: Permutation = serde_json::from_str("[2,1]").unwrap();
        assert_eq!(ok, p("21"));
        assert!(serde_json::from_str::<Permutation>("[2,2]").is_err());
    }
}
