//! Partially ordered patterns, occurrence testing and separable permutations.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::perm::{standardize, Permutation};

/// Largest POP size accepted; occurrence testing enumerates k-subsequences.
pub const MAX_POP_SIZE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("label {label} is outside 1..={k}")]
    LabelOutOfRange { label: usize, k: usize },
    #[error("relation contains a cycle through label {0}")]
    Cycle(usize),
    #[error("POP size {0} exceeds the supported maximum {MAX_POP_SIZE}")]
    TooLarge(usize),
    #[error("flat POP parameter must be at least 2, got {0}")]
    FlatTooSmall(usize),
    #[error("permutation {0} is not separable")]
    NotSeparable(Permutation),
    #[error("the empty permutation has no decomposition around its maximum")]
    EmptyDecomposition,
    #[error("cannot parse POP from {0:?}")]
    Parse(String),
}

/// The two flat shapes: `Pj(j)` has label 1 above the antichain `2..=j`,
/// `Pt(l)` has label `l` below the antichain `1..l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlatKind {
    Pj(usize),
    Pt(usize),
}

/// A strict partial order on labels `1..=k`, stored transitively closed.
/// Label `a` below label `b` forces the entry at the `a`-th position of an
/// occurrence to be smaller than the entry at the `b`-th position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pop {
    k: usize,
    // above[a] has bit b set iff label a is below label b (0-based labels)
    above: Vec<u32>,
}

impl Pop {
    /// Builds the transitive closure of `relations`, given as 1-based
    /// `(below, above)` pairs.
    pub fn new(k: usize, relations: &[(usize, usize)]) -> Result<Self, PatternError> {
        if k > MAX_POP_SIZE {
            return Err(PatternError::TooLarge(k));
        }
        let mut above = vec![0u32; k];
        for &(a, b) in relations {
            for label in [a, b] {
                if label == 0 || label > k {
                    return Err(PatternError::LabelOutOfRange { label, k });
                }
            }
            above[a - 1] |= 1 << (b - 1);
        }
        for mid in 0..k {
            for a in 0..k {
                if above[a] >> mid & 1 == 1 {
                    above[a] |= above[mid];
                }
            }
        }
        if let Some(a) = (0..k).find(|&a| above[a] >> a & 1 == 1) {
            return Err(PatternError::Cycle(a + 1));
        }
        Ok(Pop { k, above })
    }

    /// The chain POP of a classical pattern.
    pub fn classical(pattern: &Permutation) -> Self {
        let vals = pattern.as_slice();
        let k = vals.len();
        let mut above = vec![0u32; k];
        for a in 0..k {
            for b in 0..k {
                if vals[a] < vals[b] {
                    above[a] |= 1 << b;
                }
            }
        }
        Pop { k, above }
    }

    pub fn flat_pj(j: usize) -> Result<Self, PatternError> {
        if j < 2 {
            return Err(PatternError::FlatTooSmall(j));
        }
        let rel: Vec<_> = (2..=j).map(|b| (b, 1)).collect();
        Pop::new(j, &rel)
    }

    pub fn flat_ptilde(l: usize) -> Result<Self, PatternError> {
        if l < 2 {
            return Err(PatternError::FlatTooSmall(l));
        }
        let rel: Vec<_> = (1..l).map(|a| (l, a)).collect();
        Pop::new(l, &rel)
    }

    pub fn size(&self) -> usize {
        self.k
    }

    /// The closed relation as sorted 1-based `(below, above)` pairs.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.k {
            for b in 0..self.k {
                if self.above[a] >> b & 1 == 1 {
                    out.push((a + 1, b + 1));
                }
            }
        }
        out
    }

    pub fn is_below(&self, a: usize, b: usize) -> bool {
        a >= 1 && b >= 1 && a <= self.k && b <= self.k && self.above[a - 1] >> (b - 1) & 1 == 1
    }

    /// Recognises the flat shapes. The two-element chain `21` is reported
    /// as `Pj(2)`, which coincides with `Pt(2)`.
    pub fn flat_kind(&self) -> Option<FlatKind> {
        let k = self.k;
        if k < 2 {
            return None;
        }
        let top = 1u32;
        if (1..k).all(|a| self.above[a] == top) && self.above[0] == 0 {
            return Some(FlatKind::Pj(k));
        }
        let rest = (1u32 << (k - 1)) - 1;
        if self.above[k - 1] == rest && (0..k - 1).all(|a| self.above[a] == 0) {
            return Some(FlatKind::Pt(k));
        }
        None
    }

    /// Whether the entries at `positions` (increasing) realise the order.
    fn matches_at(&self, values: &[u32], positions: &[usize]) -> bool {
        (0..self.k).all(|a| {
            let mut bits = self.above[a];
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if values[positions[a]] >= values[positions[b]] {
                    return false;
                }
            }
            true
        })
    }

    /// Calls `f` for every occurrence; stops early when `f` returns false.
    fn for_each_occurrence(&self, values: &[u32], mut f: impl FnMut() -> bool) {
        let (k, n) = (self.k, values.len());
        if k > n {
            return;
        }
        if k == 0 {
            f();
            return;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if self.matches_at(values, &idx) && !f() {
                return;
            }
            // next k-combination of 0..n
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                return;
            }
            idx[i - 1] += 1;
            for t in i..k {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }

    pub fn count_occurrences(&self, p: &Permutation) -> BigUint {
        let mut count = 0u64;
        self.for_each_occurrence(p.as_slice(), || {
            count += 1;
            true
        });
        BigUint::from(count)
    }

    /// Generic subsequence scan with early exit.
    pub fn occurs_in(&self, p: &Permutation) -> bool {
        self.occurs_in_slice(p.as_slice())
    }

    pub(crate) fn occurs_in_slice(&self, values: &[u32]) -> bool {
        let mut found = false;
        self.for_each_occurrence(values, || {
            found = true;
            false
        });
        found
    }
}

pub fn occurs(pop: &Pop, p: &Permutation) -> bool {
    pop.occurs_in(p)
}

pub fn avoids_all(p: &Permutation, pops: &[Pop]) -> bool {
    pops.iter().all(|pop| !pop.occurs_in(p))
}

/// `P_j` occurs iff some entry has at least `j − 1` smaller entries after it.
pub fn occurs_flat_pj(j: usize, p: &Permutation) -> bool {
    occurs_flat_pj_slice(j, p.as_slice())
}

/// `P̃_ℓ` occurs iff some entry has at least `ℓ − 1` larger entries before it.
pub fn occurs_flat_ptilde(l: usize, p: &Permutation) -> bool {
    occurs_flat_ptilde_slice(l, p.as_slice())
}

pub(crate) fn occurs_flat_pj_slice(j: usize, values: &[u32]) -> bool {
    let need = j.saturating_sub(1);
    (0..values.len()).any(|i| values[i + 1..].iter().filter(|&&w| w < values[i]).count() >= need)
}

pub(crate) fn occurs_flat_ptilde_slice(l: usize, values: &[u32]) -> bool {
    let need = l.saturating_sub(1);
    (0..values.len()).any(|i| values[..i].iter().filter(|&&w| w > values[i]).count() >= need)
}

/// Separability by recursive splitting into `⊕`/`⊖` blocks.
pub fn is_separable(p: &Permutation) -> bool {
    is_separable_slice(p.as_slice())
}

pub(crate) fn is_separable_slice(values: &[u32]) -> bool {
    if values.len() <= 2 {
        return true;
    }
    let lo = *values.iter().min().unwrap();
    let hi = *values.iter().max().unwrap();
    let (mut pmin, mut pmax) = (u32::MAX, 0);
    for k in 1..values.len() {
        pmin = pmin.min(values[k - 1]);
        pmax = pmax.max(values[k - 1]);
        // prefix is an interval sitting at the bottom or the top of the range
        if pmax - pmin + 1 == k as u32 && (pmin == lo || pmax == hi) {
            return is_separable_slice(&values[..k]) && is_separable_slice(&values[k..]);
        }
    }
    false
}

/// One block of the decomposition: a standardized pattern placed on the
/// value interval `offset + 1 ..= offset + len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub pattern: Permutation,
    pub offset: u32,
}

impl Block {
    fn empty(offset: u32) -> Self {
        Block { pattern: Permutation::empty(), offset }
    }

    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = u32> + '_ {
        self.pattern.as_slice().iter().map(move |v| v + self.offset)
    }
}

/// `π = L_1 … L_m n R_m … R_1` with `R_1 < L_1 < R_2 < … < R_m < L_m`
/// blockwise; only `R_1` and `L_m` may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// `L_1, …, L_m`
    pub left: Vec<Block>,
    /// `R_1, …, R_m`
    pub right: Vec<Block>,
}

impl Decomposition {
    pub fn m(&self) -> usize {
        self.left.len()
    }

    pub fn reconstruct(&self) -> Permutation {
        let n = self.left.iter().chain(&self.right).map(Block::len).sum::<usize>() + 1;
        let mut values: Vec<u32> = self.left.iter().flat_map(Block::values).collect();
        values.push(n as u32);
        values.extend(self.right.iter().rev().flat_map(Block::values));
        Permutation::from_vec_unchecked(values)
    }
}

/// Peels the value range below `n` into alternating left/right runs. Every
/// run is maximal, which makes `m` as large as the block conditions allow.
pub fn stankova_decompose(p: &Permutation) -> Result<Decomposition, PatternError> {
    if p.is_empty() {
        return Err(PatternError::EmptyDecomposition);
    }
    if !is_separable(p) {
        return Err(PatternError::NotSeparable(p.clone()));
    }
    let values = p.as_slice();
    let n = values.len() as u32;
    let top = values.iter().position(|&v| v == n).unwrap();
    let mut on_left = vec![false; n as usize];
    for &v in &values[..top] {
        on_left[v as usize - 1] = true;
    }

    // runs of consecutive values 1..n-1 by side, starting with an R-run
    let mut runs: Vec<(bool, u32, u32)> = Vec::new();
    for v in 1..n {
        let side = on_left[v as usize - 1];
        match runs.last_mut() {
            Some((s, _, hi)) if *s == side => *hi = v,
            _ => runs.push((side, v, v)),
        }
    }
    if runs.first().map_or(true, |r| r.0) {
        runs.insert(0, (false, 1, 0));
    }
    if runs.last().unwrap().0 == false {
        let next = runs.last().unwrap().2 + 1;
        runs.push((true, next, next - 1));
    }

    let left_part = &values[..top];
    let right_part = &values[top + 1..];
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut lpos = 0usize;
    let mut rend = right_part.len();
    for &(is_left, lo, hi) in &runs {
        let len = (hi + 1 - lo) as usize;
        let (slice, block_list) = if is_left {
            let s = &left_part[lpos..lpos + len];
            lpos += len;
            (s, &mut left)
        } else {
            let s = &right_part[rend - len..rend];
            rend -= len;
            (s, &mut right)
        };
        if slice.iter().any(|&v| v < lo || v > hi) {
            return Err(PatternError::NotSeparable(p.clone()));
        }
        let block = if len == 0 {
            Block::empty(lo - 1)
        } else {
            let word: Vec<i64> = slice.iter().map(|&v| v as i64).collect();
            Block { pattern: standardize(&word).expect("distinct"), offset: lo - 1 }
        };
        block_list.push(block);
    }
    Ok(Decomposition { left, right })
}

/// Textual POP syntax: `pop k=3 below=3<1` (further relations joined with
/// `+` or listed as extra `a<b` items), `Pj:4`, `Pt:5`, `classical:2413`.
impl FromStr for Pop {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || PatternError::Parse(s.to_string());
        if let Some(rest) = s.strip_prefix("Pj:") {
            return Pop::flat_pj(rest.trim().parse().map_err(|_| err())?);
        }
        if let Some(rest) = s.strip_prefix("Pt:") {
            return Pop::flat_ptilde(rest.trim().parse().map_err(|_| err())?);
        }
        if let Some(rest) = s.strip_prefix("classical:") {
            let pattern: Permutation = rest.parse().map_err(|_| err())?;
            return Ok(Pop::classical(&pattern));
        }
        let rest = s.strip_prefix("pop").ok_or_else(err)?;
        let mut k = None;
        let mut relations = Vec::new();
        for token in rest.split_whitespace() {
            if let Some(v) = token.strip_prefix("k=") {
                k = Some(v.parse().map_err(|_| err())?);
            } else if let Some(v) = token.strip_prefix("below=") {
                for rel in v.split(['+', ',']).filter(|r| !r.is_empty()) {
                    relations.push(parse_relation(rel).ok_or_else(err)?);
                }
            } else {
                return Err(err());
            }
        }
        Pop::new(k.ok_or_else(err)?, &relations)
    }
}

fn parse_relation(rel: &str) -> Option<(usize, usize)> {
    let (a, b) = rel.split_once('<')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// Parses a comma separated list such as `Pj:4,Pt:4` or
/// `pop k=3 below=3<1,2<1,classical:21`; bare `a<b` items extend the
/// relation of the preceding `pop` entry.
pub fn parse_pop_list(s: &str) -> Result<Vec<Pop>, PatternError> {
    let mut specs: Vec<String> = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if parse_relation(item).is_some() {
            match specs.last_mut() {
                Some(prev) if prev.starts_with("pop") => {
                    prev.push('+');
                    prev.push_str(item);
                }
                _ => return Err(PatternError::Parse(s.to_string())),
            }
        } else {
            specs.push(item.to_string());
        }
    }
    specs.iter().map(|spec| spec.parse()).collect()
}

impl fmt::Display for Pop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.flat_kind() {
            Some(FlatKind::Pj(j)) => write!(f, "Pj:{j}"),
            Some(FlatKind::Pt(l)) => write!(f, "Pt:{l}"),
            None => {
                write!(f, "pop k={}", self.k)?;
                let rel = self.relations();
                if !rel.is_empty() {
                    let parts: Vec<String> = rel.iter().map(|(a, b)| format!("{a}<{b}")).collect();
                    write!(f, " below={}", parts.join("+"))?;
                }
                Ok(())
            }
        }
    }
}
