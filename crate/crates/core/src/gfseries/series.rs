use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{MultiPoly, Var};
use super::GfError;

/// Polynomial in `x` with [`MultiPoly`] coefficients; `coeffs[i]` multiplies `x^i`.
/// Trailing zero coefficients are trimmed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct XPoly {
    coeffs: Vec<MultiPoly>,
}

impl XPoly {
    pub fn zero() -> Self {
        XPoly::default()
    }

    pub fn one() -> Self {
        XPoly::from_coeffs(vec![MultiPoly::one()])
    }

    pub fn from_coeffs(coeffs: Vec<MultiPoly>) -> Self {
        let mut p = XPoly { coeffs };
        p.trim();
        p
    }

    /// `c * x^k`.
    pub fn term(k: usize, c: MultiPoly) -> Self {
        let mut coeffs = vec![MultiPoly::zero(); k + 1];
        coeffs[k] = c;
        XPoly::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(MultiPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> MultiPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of distinct monomials, counting `x` as a variable.
    pub fn monomial_count(&self) -> usize {
        self.coeffs.iter().map(MultiPoly::len).sum()
    }

    pub fn add_at(&mut self, k: usize, c: &MultiPoly) {
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, MultiPoly::zero());
        }
        self.coeffs[k] += c;
        self.trim();
    }

    pub fn add(&self, other: &XPoly) -> XPoly {
        let mut out = self.clone();
        for (k, c) in other.coeffs.iter().enumerate() {
            out.add_at(k, c);
        }
        out
    }

    pub fn neg(&self) -> XPoly {
        XPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &XPoly) -> XPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &XPoly) -> XPoly {
        if self.is_zero() || other.is_zero() {
            return XPoly::zero();
        }
        let mut coeffs = vec![MultiPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in other.coeffs.iter().enumerate() {
                coeffs[i + k] += &(a * b);
            }
        }
        XPoly::from_coeffs(coeffs)
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> XPoly {
        XPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn substitute_one(&self, var: Var) -> XPoly {
        self.map_coeffs(|c| c.substitute_one(var))
    }

    pub fn swap_reverse_complement(&self) -> XPoly {
        self.map_coeffs(MultiPoly::swap_reverse_complement)
    }

    /// Univariate integer coefficients after setting every statistic variable to 1.
    pub fn eval_ones(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(MultiPoly::eval_ones).collect()
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_x_sum(f, &self.coeffs)
    }
}

fn write_x_sum(f: &mut fmt::Formatter<'_>, coeffs: &[MultiPoly]) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        let body = if c.len() > 1 { format!("({c})") } else { c.to_string() };
        match k {
            0 => write!(f, "{body}")?,
            1 => write!(f, "{body}*x")?,
            _ => write!(f, "{body}*x^{k}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Power series in `x` truncated after `x^order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries")]
pub struct XSeries {
    order: usize,
    coeffs: Vec<MultiPoly>,
}

#[derive(Deserialize)]
struct RawSeries {
    order: usize,
    coeffs: Vec<MultiPoly>,
}

impl TryFrom<RawSeries> for XSeries {
    type Error = String;

    fn try_from(raw: RawSeries) -> Result<Self, String> {
        if raw.coeffs.len() != raw.order + 1 {
            return Err(format!(
                "series of order {} needs {} coefficients, got {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            ));
        }
        Ok(XSeries { order: raw.order, coeffs: raw.coeffs })
    }
}

impl XSeries {
    pub fn zero(order: usize) -> Self {
        XSeries { order, coeffs: vec![MultiPoly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        XSeries::from_xpoly(&XPoly::one(), order)
    }

    /// Truncates (or pads) `coeffs` to exactly `order + 1` entries.
    pub fn from_coeffs(mut coeffs: Vec<MultiPoly>, order: usize) -> Self {
        coeffs.resize(order + 1, MultiPoly::zero());
        XSeries { order, coeffs }
    }

    pub fn from_xpoly(p: &XPoly, order: usize) -> Self {
        XSeries::from_coeffs(p.coeffs().to_vec(), order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &MultiPoly {
        &self.coeffs[n]
    }

    /// Drops every term above `x^order`.
    pub fn truncate(&self, order: usize) -> XSeries {
        assert!(order <= self.order, "cannot extend a truncated series");
        XSeries::from_coeffs(self.coeffs[..=order].to_vec(), order)
    }

    fn check(&self, other: &XSeries) -> Result<(), GfError> {
        if self.order != other.order {
            return Err(GfError::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn add(&self, other: &XSeries) -> Result<XSeries, GfError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(XSeries { order: self.order, coeffs })
    }

    pub fn sub(&self, other: &XSeries) -> Result<XSeries, GfError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(XSeries { order: self.order, coeffs })
    }

    pub fn mul(&self, other: &XSeries) -> Result<XSeries, GfError> {
        self.check(other)?;
        let n = self.order;
        let mut coeffs = vec![MultiPoly::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in other.coeffs[..=n - i].iter().enumerate() {
                coeffs[i + k] += &(a * b);
            }
        }
        Ok(XSeries { order: n, coeffs })
    }

    /// Multiplicative inverse; the constant term must be the constant ±1.
    pub fn inverse(&self) -> Result<XSeries, GfError> {
        divide(&XPoly::one(), self.coeffs(), self.order)
    }

    pub fn substitute_one(&self, var: Var) -> XSeries {
        self.map_coeffs(|c| c.substitute_one(var))
    }

    pub fn swap_reverse_complement(&self) -> XSeries {
        self.map_coeffs(MultiPoly::swap_reverse_complement)
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> XSeries {
        XSeries { order: self.order, coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Univariate coefficients with every statistic variable set to 1.
    pub fn eval_ones(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(MultiPoly::eval_ones).collect()
    }
}

impl fmt::Display for XSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_x_sum(f, &self.coeffs)?;
        write!(f, " + O(x^{})", self.order + 1)
    }
}

/// Solves `s * den = num` modulo `x^(order+1)`.
fn divide(num: &XPoly, den: &[MultiPoly], order: usize) -> Result<XSeries, GfError> {
    let d0 = den
        .first()
        .and_then(MultiPoly::as_constant)
        .filter(|c| c.abs().is_one())
        .ok_or(GfError::NonInvertible)?;
    let mut out: Vec<MultiPoly> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = num.coeff(n);
        for (i, di) in den.iter().enumerate().take(n + 1).skip(1) {
            if !di.is_zero() && !out[n - i].is_zero() {
                acc = &acc - &(di * &out[n - i]);
            }
        }
        out.push(acc.scale(&d0));
    }
    Ok(XSeries { order, coeffs: out })
}

/// Quotient of two polynomials in `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    pub numerator: XPoly,
    pub denominator: XPoly,
}

impl RationalGF {
    pub fn new(numerator: XPoly, denominator: XPoly) -> Self {
        RationalGF { numerator, denominator }
    }

    /// Flips both parts so the denominator's `x^0` coefficient is `+1`.
    pub fn normalized(&self) -> RationalGF {
        let negative = self
            .denominator
            .coeffs()
            .first()
            .and_then(MultiPoly::as_constant)
            .is_some_and(|c| c.is_negative());
        if negative {
            RationalGF::new(self.numerator.neg(), self.denominator.neg())
        } else {
            self.clone()
        }
    }

    pub fn expand(&self, order: usize) -> Result<XSeries, GfError> {
        let g = self.normalized();
        divide(&g.numerator, g.denominator.coeffs(), order)
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> RationalGF {
        RationalGF::new(self.numerator.map_coeffs(&f), self.denominator.map_coeffs(&f))
    }

    pub fn swap_reverse_complement(&self) -> RationalGF {
        self.map_coeffs(MultiPoly::swap_reverse_complement)
    }

    /// `(numerator, denominator)` monomial counts, with `x` counted as a variable.
    pub fn monomial_counts(&self) -> (usize, usize) {
        (self.numerator.monomial_count(), self.denominator.monomial_count())
    }

    /// Univariate specialization: every statistic variable set to 1.
    pub fn eval_ones(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        (self.numerator.eval_ones(), self.denominator.eval_ones())
    }
}

/// Series expansion of `gf` through `x^order`.
pub fn expand_rational(gf: &RationalGF, order: usize) -> Result<XSeries, GfError> {
    gf.expand(order)
}

/// Integer-coefficient polynomial in `x` written as `1 - x - x^2` style text.
pub fn format_int_poly(c: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, a) in c.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mag = a.abs();
        if out.is_empty() {
            if a.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if a.is_negative() { " - " } else { " + " });
        }
        let var = match k {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        };
        if k == 0 || !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(&var);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> XPoly {
        XPoly::from_coeffs(v.iter().map(|&c| MultiPoly::constant(c)).collect())
    }

    #[test]
    fn truncated_product() {
        let a = XSeries::from_xpoly(&ints(&[1, 1]), 2);
        let b = XSeries::from_xpoly(&ints(&[1, -1]), 2);
        assert_eq!(a.mul(&b).unwrap(), XSeries::from_xpoly(&ints(&[1, 0, -1]), 2));
        assert!(matches!(
            a.mul(&XSeries::one(3)),
            Err(GfError::OrderMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn univariate_expansion() {
        let gf = RationalGF::new(ints(&[1]), ints(&[1, -1, -1, -3, -1]));
        let s = gf.expand(7).unwrap().eval_ones();
        let want: Vec<BigInt> = [1, 1, 2, 6, 12, 25, 57, 124].map(BigInt::from).to_vec();
        assert_eq!(s, want);
        // global sign flip is harmless
        let flipped = RationalGF::new(ints(&[-1]), ints(&[-1, 1, 1, 3, 1]));
        assert_eq!(flipped.expand(7).unwrap().eval_ones(), want);
        assert!(RationalGF::new(ints(&[1]), ints(&[2, 1])).expand(3).is_err());
        assert!(RationalGF::new(ints(&[1]), ints(&[0, 1])).expand(3).is_err());
    }

    #[test]
    fn increasing_only() {
        let uvst = MultiPoly::monomial([0, 0, 1, 1, 1, 1]);
        let put = MultiPoly::monomial([1, 0, 1, 0, 0, 1]);
        let gf = RationalGF::new(XPoly::term(1, uvst), XPoly::one().sub(&XPoly::term(1, put)));
        let s = gf.expand(3).unwrap();
        assert!(s.coeff(0).is_zero());
        assert_eq!(*s.coeff(1), MultiPoly::monomial([0, 0, 1, 1, 1, 1]));
        assert_eq!(*s.coeff(2), MultiPoly::monomial([1, 0, 2, 1, 1, 2]));
        assert_eq!(*s.coeff(3), MultiPoly::monomial([2, 0, 3, 1, 1, 3]));
    }

    #[test]
    fn json_round_trip() {
        let s = XSeries::from_xpoly(&ints(&[1, 2, -3]), 4);
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.starts_with(r#"{"order":4,"coeffs":[[{"e":[0,0,0,0,0,0],"c":"1"}]"#));
        assert_eq!(serde_json::from_str::<XSeries>(&json).unwrap(), s);
        assert!(serde_json::from_str::<XSeries>(r#"{"order":2,"coeffs":[]}"#).is_err());
    }

    #[test]
    fn int_poly_text() {
        let c: Vec<BigInt> = [1, -1, -1, -3, -11, -7, -1].map(BigInt::from).to_vec();
        assert_eq!(format_int_poly(&c), "1 - x - x^2 - 3x^3 - 11x^4 - 7x^5 - x^6");
        assert_eq!(format_int_poly(&[BigInt::one(), -BigInt::one()]), "1 - x");
    }
}
