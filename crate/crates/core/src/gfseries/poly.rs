use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GfError;
use crate::perm::StatVector;

/// The six statistic variables, in their fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    P,
    Q,
    U,
    V,
    S,
    T,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::P, Var::Q, Var::U, Var::V, Var::S, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["p", "q", "u", "v", "s", "t"][self.index()]
    }
}

impl FromStr for Var {
    type Err = GfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Var::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| GfError::UnknownVariable(s.to_string()))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over `(p, q, u, v, s, t)`; ordered lexicographically.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub [u32; 6]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 6]);

    pub fn of_stats(st: &StatVector) -> Self {
        Monomial(st.exponents())
    }

    pub fn exponent(&self, var: Var) -> u32 {
        self.0[var.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for var in Var::ALL {
            let e = self.exponent(var);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{var}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Sparse polynomial in `p, q, u, v, s, t` with big-integer coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        MultiPoly::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(m, c.into());
        p
    }

    /// `p^a q^b u^c v^d s^e t^f` with coefficient one.
    pub fn monomial(exponents: [u32; 6]) -> Self {
        MultiPoly::term(Monomial(exponents), 1)
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 6];
        e[v.index()] = 1;
        MultiPoly::monomial(e)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect() }
    }

    /// Sets `var = 1`, merging the coefficients that collide.
    pub fn substitute_one(&self, var: Var) -> MultiPoly {
        self.map_monomials(|mut m| {
            m.0[var.index()] = 0;
            m
        })
    }

    pub fn substitute_ones(&self, vars: &[Var]) -> MultiPoly {
        self.map_monomials(|mut m| {
            for v in vars {
                m.0[v.index()] = 0;
            }
            m
        })
    }

    /// Value at `p = q = u = v = s = t = 1`.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Applies `f` to every exponent vector and collects like terms.
    pub fn map_monomials(&self, f: impl Fn(Monomial) -> Monomial) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(f(*m), c.clone());
        }
        out
    }

    /// The reverse-complement variable exchange `u ↔ t`, `v ↔ s`.
    pub fn swap_reverse_complement(&self) -> MultiPoly {
        self.map_monomials(|Monomial([p, q, u, v, s, t])| Monomial([p, q, t, s, v, u]))
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(c)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    e: [u32; 6],
    c: String,
}

/// Serialized as the sorted list `[{"e": [..6 exponents..], "c": "<decimal>"}]`.
impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<JsonTerm> =
            self.terms.iter().map(|(m, c)| JsonTerm { e: m.0, c: c.to_string() }).collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<JsonTerm>::deserialize(deserializer)?;
        let mut out = MultiPoly::zero();
        for t in terms {
            let c: BigInt = t.c.parse().map_err(serde::de::Error::custom)?;
            let m = Monomial(t.e);
            if out.terms.contains_key(&m) {
                return Err(serde::de::Error::custom(format!("duplicate monomial {m}")));
            }
            out.add_term(m, c);
        }
        Ok(out)
    }
}
