//! Functional-equation system for `F_{j,l}` with `3 <= j, l <= 5`.
//!
//! Every family of small coefficients is read off brute-force enumeration of
//! single-POP separable classes; nothing here is transcribed.

use std::collections::BTreeMap;

use super::poly::{MultiPoly, Var};
use super::series::{RationalGF, XPoly, XSeries};
use super::GfError;
use crate::enumerator::{distribution, AvoiderQuery, EnumOptions};
use crate::patterns::Pop;

/// Which single-POP separable class a coefficient is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Class {
    /// separable avoiders of `P_k`
    G(usize),
    /// separable avoiders of `P̃_k`
    Gt(usize),
    /// all separable permutations
    All,
}

fn class_coefficient(class: Class, n: usize) -> MultiPoly {
    let pops = match class {
        Class::G(k) => vec![Pop::flat_pj(k).expect("k >= 2")],
        Class::Gt(k) => vec![Pop::flat_ptilde(k).expect("k >= 2")],
        Class::All => Vec::new(),
    };
    let q = AvoiderQuery { n, pops, separable_only: true };
    distribution(&q, &EnumOptions::default()).expect("small lengths are below every cap")
}

/// Coefficient tables for one `(j, l)`. Each map is keyed by
/// `(class subscript, power of x)`; `x` is keyed by the power alone.
///
/// * `u[(j-i, a)]`: `x^a` in `G_{j-i}`
/// * `v[(l-a-1, i)]`: `x^i` in `G̃_{l-a-1}`
/// * `w[(l-1, i)]`: `x^i` in `G̃_{l-1}`
/// * `x[h]`: `x^h` over all separable permutations
/// * `y[(l-m-h-1, i-h)]`: `x^(i-h)` in `G̃_{l-m-h-1}`
/// * `z[(j-(i-h), m)]`: `x^m` in `G_{j-(i-h)}`
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SmallCoefficients {
    pub j: usize,
    pub l: usize,
    pub u: BTreeMap<(usize, usize), MultiPoly>,
    pub v: BTreeMap<(usize, usize), MultiPoly>,
    pub w: BTreeMap<(usize, usize), MultiPoly>,
    pub x: BTreeMap<usize, MultiPoly>,
    pub y: BTreeMap<(usize, usize), MultiPoly>,
    pub z: BTreeMap<(usize, usize), MultiPoly>,
}

fn check_range(j: usize, l: usize) -> Result<(), GfError> {
    if (3..=5).contains(&j) && (3..=5).contains(&l) {
        Ok(())
    } else {
        Err(GfError::Unsupported { j, l })
    }
}

/// Index triples visited by the system, shared by the table builder and the solver.
struct Terms {
    /// `(i, a)` for the `f` sums
    f: Vec<(usize, usize)>,
    /// `i` for the leading `g` terms
    g: Vec<usize>,
    /// `(i, h, m)` for the double sums in `g`
    gh: Vec<(usize, usize, usize)>,
}

fn terms(j: usize, l: usize) -> Terms {
    let mut t = Terms { f: Vec::new(), g: Vec::new(), gh: Vec::new() };
    for i in 1..=j - 2 {
        for a in 1..=l.saturating_sub(3) {
            t.f.push((i, a));
        }
        t.g.push(i);
        let hmax = (i - 1).min(l.saturating_sub(4));
        for h in 1..=hmax {
            for m in 1..=(l - h).saturating_sub(3) {
                t.gh.push((i, h, m));
            }
        }
    }
    t
}

pub fn small_coefficients(j: usize, l: usize) -> Result<SmallCoefficients, GfError> {
    check_range(j, l)?;
    let mut cache: BTreeMap<(Class, usize), MultiPoly> = BTreeMap::new();
    let mut get = |class: Class, n: usize| {
        cache.entry((class, n)).or_insert_with(|| class_coefficient(class, n)).clone()
    };
    let mut sc = SmallCoefficients { j, l, ..Default::default() };
    let t = terms(j, l);
    for &(i, a) in &t.f {
        sc.u.insert((j - i, a), get(Class::G(j - i), a));
        sc.v.insert((l - a - 1, i), get(Class::Gt(l - a - 1), i));
    }
    for &i in &t.g {
        sc.w.insert((l - 1, i), get(Class::Gt(l - 1), i));
    }
    for &(i, h, m) in &t.gh {
        sc.x.insert(h, get(Class::All, h));
        sc.y.insert((l - m - h - 1, i - h), get(Class::Gt(l - m - h - 1), i - h));
        sc.z.insert((j - (i - h), m), get(Class::G(j - (i - h)), m));
    }
    Ok(sc)
}

fn mono(e: [u32; 6]) -> MultiPoly {
    MultiPoly::monomial(e)
}

/// The linear pieces `F = 1 + A + B * (F|_{v=1} - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemParts {
    pub a: XPoly,
    pub b: XPoly,
}

pub fn system_parts(j: usize, l: usize) -> Result<SystemParts, GfError> {
    use Var::{S, T, U, V};
    let sc = small_coefficients(j, l)?;
    let mut a = XPoly::zero();
    let mut b = XPoly::zero();

    // i = 0: the entry n is last
    a.add_at(1, &mono([0, 0, 1, 1, 1, 1]));
    b.add_at(1, &mono([1, 0, 1, 1, 0, 1]));

    let t = terms(j, l);
    for &(i, ai) in &t.f {
        let uu = &sc.u[&(j - i, ai)];
        let vv = &sc.v[&(l - ai - 1, i)];
        let k = 1 + ai + i;
        let known = &uu.substitute_ones(&[V, T]) * &vv.substitute_one(U);
        a.add_at(k, &(&mono([1, 1, 1, 1, 0, 0]) * &known));
        let mult = &uu.substitute_ones(&[V, S, T]) * &vv.substitute_ones(&[U, S]);
        b.add_at(k, &(&mono([2, 1, 1, 1, 0, 0]) * &mult));
    }
    for &i in &t.g {
        let ww = &sc.w[&(l - 1, i)];
        a.add_at(1 + i, &(&mono([0, 1, 1, 1, 1, 0]) * &ww.substitute_one(U)));
        b.add_at(1 + i, &(&mono([1, 1, 1, 1, 0, 0]) * &ww.substitute_ones(&[U, S])));
    }
    for &(i, h, m) in &t.gh {
        let xx = sc.x[&h].substitute_ones(&[U, S, T]);
        let yy = &sc.y[&(l - m - h - 1, i - h)];
        let zz = &sc.z[&(j - (i - h), m)];
        let k = 1 + h + m + (i - h);
        let known = &(&xx * &zz.substitute_ones(&[V, T])) * &yy.substitute_one(U);
        a.add_at(k, &(&mono([1, 2, 1, 1, 0, 0]) * &known));
        let mult = &(&xx * &zz.substitute_ones(&[V, S, T])) * &yy.substitute_ones(&[U, S]);
        b.add_at(k, &(&mono([2, 2, 1, 1, 0, 0]) * &mult));
    }
    Ok(SystemParts { a, b })
}

/// Closed rational form of the system's solution.
///
/// Setting `v = 1` gives `F1 - 1 = A1 / (1 - B1)`; substituting back,
/// `F = ((1 + A)(1 - B1) + B A1) / (1 - B1)`.
pub fn solve_system_rational(j: usize, l: usize) -> Result<RationalGF, GfError> {
    let SystemParts { a, b } = system_parts(j, l)?;
    let a1 = a.substitute_one(Var::V);
    let b1 = b.substitute_one(Var::V);
    let den = XPoly::one().sub(&b1);
    let num = XPoly::one().add(&a).mul(&den).add(&b.mul(&a1));
    Ok(RationalGF::new(num, den))
}

/// The series of `F_{j,l}` through `x^order`, from the system alone.
pub fn solve_system(j: usize, l: usize, order: usize) -> Result<XSeries, GfError> {
    solve_system_rational(j, l)?.expand(order)
}
