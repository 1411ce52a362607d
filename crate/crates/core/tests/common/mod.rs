//! Naive oracles written against the definitions only. Nothing here calls
//! the library's enumeration, matching or statistics code.

#![allow(dead_code)]

use poplab::gfseries::{Monomial, MultiPoly};

/// All permutations of 1..=n, lexicographic, by recursive insertion.
pub fn all_perms(n: usize) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, rest: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for idx in 0..rest.len() {
            let v = rest.remove(idx);
            prefix.push(v);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(idx, v);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (1..=n as u32).collect(), &mut out);
    out
}

/// Some entry has at least `j - 1` smaller entries somewhere to its right.
pub fn has_pj(p: &[u32], j: usize) -> bool {
    (0..p.len()).any(|i| p[i + 1..].iter().filter(|&&x| x < p[i]).count() + 1 >= j)
}

/// Some entry has at least `l - 1` larger entries somewhere to its left.
pub fn has_pt(p: &[u32], l: usize) -> bool {
    (0..p.len()).any(|i| p[..i].iter().filter(|&&x| x > p[i]).count() + 1 >= l)
}

/// Classical containment by scanning all index subsets of the pattern's length.
pub fn contains_classical(p: &[u32], pat: &[u32]) -> bool {
    count_classical(p, pat) > 0
}

pub fn count_classical(p: &[u32], pat: &[u32]) -> usize {
    let k = pat.len();
    let n = p.len();
    if k > n {
        return 0;
    }
    let mut count = 0;
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let ok = (0..k).all(|a| (0..k).all(|b| (pat[a] < pat[b]) == (p[idx[a]] < p[idx[b]])));
        if ok {
            count += 1;
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for t in i + 1..k {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn is_separable_naive(p: &[u32]) -> bool {
    !contains_classical(p, &[2, 4, 1, 3]) && !contains_classical(p, &[3, 1, 4, 2])
}

/// `[asc, des, lmax, rmax, lmin, rmin]`, straight from the definitions.
pub fn stats(p: &[u32]) -> [u32; 6] {
    let n = p.len();
    let asc = (1..n).filter(|&i| p[i - 1] < p[i]).count();
    let des = (1..n).filter(|&i| p[i - 1] > p[i]).count();
    let lmax = (0..n).filter(|&i| p[..i].iter().all(|&x| x < p[i])).count();
    let rmax = (0..n).filter(|&i| p[i + 1..].iter().all(|&x| x < p[i])).count();
    let lmin = (0..n).filter(|&i| p[..i].iter().all(|&x| x > p[i])).count();
    let rmin = (0..n).filter(|&i| p[i + 1..].iter().all(|&x| x > p[i])).count();
    [asc, des, lmax, rmax, lmin, rmin].map(|v| v as u32)
}

pub fn in_window(p: &[u32], a: usize, b: usize) -> bool {
    p.iter().enumerate().all(|(i, &v)| {
        let d = v as i64 - (i as i64 + 1);
        -(a as i64) < d && d < b as i64
    })
}

/// Members of S_n avoiding `P_j` and `P̃_l`, optionally separable only.
pub fn flat_class(n: usize, j: usize, l: usize, separable: bool) -> Vec<Vec<u32>> {
    all_perms(n)
        .into_iter()
        .filter(|p| !has_pj(p, j) && !has_pt(p, l))
        .filter(|p| !separable || is_separable_naive(p))
        .collect()
}

pub fn distribution_of(perms: &[Vec<u32>]) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for p in perms {
        out.add_term(Monomial(stats(p)), 1.into());
    }
    out
}

/// Terms `a_0..a_{len-1}` of `1 / (1 - c_1 x - ... )` given the denominator.
pub fn inverse_series(den: &[i64], len: usize) -> Vec<i64> {
    let mut s = vec![0i64; len];
    for n in 0..len {
        let mut v = if n == 0 { 1 } else { 0 };
        for i in 1..den.len().min(n + 1) {
            v -= den[i] * s[n - i];
        }
        s[n] = v;
    }
    s
}
