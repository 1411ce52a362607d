//! Exhaustive enumeration of avoider classes.
//!
//! Permutations are generated depth-first in lexicographic order. Flat POPs
//! prune the search at every prefix; other POPs and the separability filter
//! are checked on complete permutations.

use std::collections::HashMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::gfseries::{Monomial, MultiPoly, XSeries};
use crate::patterns::{is_separable_slice, FlatKind, Pop};
use crate::perm::{PermError, Permutation, StatVector};

/// Default cap for distribution queries and for counts with non-flat POPs.
pub const DISTRIBUTION_CAP: usize = 10;
/// Default cap for counts whose POPs are all flat.
pub const FLAT_COUNT_CAP: usize = 12;
/// Hard limit imposed by the bitmask representation.
pub const ABSOLUTE_MAX_N: usize = 31;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvoiderQuery {
    pub n: usize,
    pub pops: Vec<Pop>,
    pub separable_only: bool,
}

impl AvoiderQuery {
    pub fn new(n: usize, pops: Vec<Pop>, separable_only: bool) -> Self {
        AvoiderQuery { n, pops, separable_only }
    }

    /// The class avoiding `P_j` and `P̃_l`.
    pub fn flat_pair(n: usize, j: usize, l: usize, separable_only: bool) -> Self {
        let pops = vec![
            Pop::flat_pj(j).expect("j >= 2"),
            Pop::flat_ptilde(l).expect("l >= 2"),
        ];
        AvoiderQuery { n, pops, separable_only }
    }

    fn all_flat(&self) -> bool {
        self.pops.iter().all(|p| p.flat_kind().is_some())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumOptions {
    /// Overrides the default cap. Still bounded by [`ABSOLUTE_MAX_N`].
    pub cap: Option<usize>,
    /// Worker threads; `Some(1)` runs the sequential path, `None` uses rayon's pool.
    pub jobs: Option<usize>,
}

impl EnumOptions {
    pub fn sequential() -> Self {
        EnumOptions { cap: None, jobs: Some(1) }
    }

    fn check(&self, n: usize, default_cap: usize) -> Result<(), PermError> {
        let cap = self.cap.unwrap_or(default_cap).min(ABSOLUTE_MAX_N);
        if n > cap {
            return Err(PermError::CapExceeded { n, cap });
        }
        Ok(())
    }
}

/// Compiled query: the tightest flat thresholds plus the leftover POPs.
struct Filter<'a> {
    n: usize,
    /// an entry may have at most this many smaller entries to its right
    max_smaller_right: Option<u32>,
    /// an entry may have at most this many larger entries to its left
    max_larger_left: Option<u32>,
    generic: Vec<&'a Pop>,
    separable: bool,
}

impl<'a> Filter<'a> {
    fn new(q: &'a AvoiderQuery) -> Self {
        let mut f = Filter {
            n: q.n,
            max_smaller_right: None,
            max_larger_left: None,
            generic: Vec::new(),
            separable: q.separable_only,
        };
        for pop in &q.pops {
            match pop.flat_kind() {
                Some(FlatKind::Pj(j)) => {
                    let lim = j as u32 - 2;
                    f.max_smaller_right = Some(f.max_smaller_right.map_or(lim, |m| m.min(lim)));
                }
                Some(FlatKind::Pt(l)) => {
                    let lim = l as u32 - 2;
                    f.max_larger_left = Some(f.max_larger_left.map_or(lim, |m| m.min(lim)));
                }
                None => f.generic.push(pop),
            }
        }
        f
    }

    fn accepts_leaf(&self, values: &[u32]) -> bool {
        (!self.separable || is_separable_slice(values))
            && self.generic.iter().all(|p| !p.occurs_in_slice(values))
    }

    /// Visits every accepted permutation whose first entry is `first`
    /// (or the empty permutation when `n = 0`), in lexicographic order.
    fn walk(&self, first: Option<u32>, visit: &mut dyn FnMut(&[u32])) {
        let mut prefix = Vec::with_capacity(self.n);
        match first {
            None => self.descend(&mut prefix, 0, visit),
            Some(v) => {
                if self.can_place(0, v) {
                    prefix.push(v);
                    self.descend(&mut prefix, 1 << (v - 1), visit);
                }
            }
        }
    }

    fn can_place(&self, used: u32, v: u32) -> bool {
        let below = (1u32 << (v - 1)) - 1;
        let full = (1u32 << self.n) - 1;
        let above = full & !below & !(1u32 << (v - 1));
        if let Some(lim) = self.max_smaller_right {
            if (below & !used).count_ones() > lim {
                return false;
            }
        }
        if let Some(lim) = self.max_larger_left {
            if (above & used).count_ones() > lim {
                return false;
            }
        }
        true
    }

    fn descend(&self, prefix: &mut Vec<u32>, used: u32, visit: &mut dyn FnMut(&[u32])) {
        if prefix.len() == self.n {
            if self.accepts_leaf(prefix) {
                visit(prefix);
            }
            return;
        }
        for v in 1..=self.n as u32 {
            let bit = 1u32 << (v - 1);
            if used & bit != 0 || !self.can_place(used, v) {
                continue;
            }
            prefix.push(v);
            self.descend(prefix, used | bit, visit);
            prefix.pop();
        }
    }

    /// Folds each first-entry branch independently, then returns the
    /// per-branch results in first-entry order.
    fn fold_branches<T, F>(&self, jobs: Option<usize>, make: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&Filter<'_>, Option<u32>) -> T + Sync,
    {
        if self.n == 0 {
            return vec![make(self, None)];
        }
        let firsts: Vec<u32> = (1..=self.n as u32).collect();
        match jobs {
            Some(1) => firsts.into_iter().map(|v| make(self, Some(v))).collect(),
            Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
                Ok(pool) => pool.install(|| firsts.into_par_iter().map(|v| make(self, Some(v))).collect()),
                Err(_) => firsts.into_iter().map(|v| make(self, Some(v))).collect(),
            },
            None => firsts.into_par_iter().map(|v| make(self, Some(v))).collect(),
        }
    }
}

fn check_n(q: &AvoiderQuery, opts: &EnumOptions, counting: bool) -> Result<(), PermError> {
    let default_cap = if counting && q.all_flat() { FLAT_COUNT_CAP } else { DISTRIBUTION_CAP };
    opts.check(q.n, default_cap)
}

/// Number of length-`n` permutations in the class.
pub fn count_avoiders(q: &AvoiderQuery, opts: &EnumOptions) -> Result<BigUint, PermError> {
    check_n(q, opts, true)?;
    let filter = Filter::new(q);
    let parts = filter.fold_branches(opts.jobs, |f, first| {
        let mut c = 0u64;
        f.walk(first, &mut |_| c += 1);
        c
    });
    Ok(parts.into_iter().map(BigUint::from).sum())
}

/// Sum of `p^asc q^des u^lmax v^rmax s^lmin t^rmin` over the class.
pub fn distribution(q: &AvoiderQuery, opts: &EnumOptions) -> Result<MultiPoly, PermError> {
    check_n(q, opts, false)?;
    let filter = Filter::new(q);
    let parts = filter.fold_branches(opts.jobs, |f, first| {
        let mut acc: HashMap<[u32; 6], u64> = HashMap::new();
        f.walk(first, &mut |w| *acc.entry(StatVector::of(w).exponents()).or_default() += 1);
        acc
    });
    let mut out = MultiPoly::zero();
    for part in parts {
        for (e, c) in part {
            out.add_term(Monomial(e), c.into());
        }
    }
    Ok(out)
}

/// All members of the class, in lexicographic order.
pub fn avoiders(q: &AvoiderQuery, opts: &EnumOptions) -> Result<Vec<Permutation>, PermError> {
    check_n(q, opts, false)?;
    let filter = Filter::new(q);
    let parts = filter.fold_branches(opts.jobs, |f, first| {
        let mut out = Vec::new();
        f.walk(first, &mut |w| out.push(Permutation::from_vec_unchecked(w.to_vec())));
        out
    });
    Ok(parts.into_iter().flatten().collect())
}

/// `Σ_{n ≤ n_max} distribution(n) x^n`.
pub fn series_bruteforce(
    pops: &[Pop],
    separable_only: bool,
    n_max: usize,
    opts: &EnumOptions,
) -> Result<XSeries, PermError> {
    let coeffs = (0..=n_max)
        .map(|n| distribution(&AvoiderQuery::new(n, pops.to_vec(), separable_only), opts))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(XSeries::from_coeffs(coeffs, n_max))
}
