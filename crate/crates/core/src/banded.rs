//! Permutations with bounded displacement, minimal linear recurrences and
//! k-Fibonacci numbers.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::gfseries::format_int_poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BandedError {
    #[error("window slack must be positive, got (a, b) = ({a}, {b})")]
    ZeroSlack { a: usize, b: usize },
    #[error("window width {0} exceeds the supported 63")]
    TooWide(usize),
    #[error("flat parameters must be at least 2, got (j, l) = ({j}, {l})")]
    FlatTooSmall { j: usize, l: usize },
    #[error("k-Fibonacci needs k >= 2, got {0}")]
    KTooSmall(i64),
    #[error("no linear recurrence of order <= {max_order} fits {len} terms with two held out")]
    NoRecurrence { len: usize, max_order: usize },
    #[error("bad sequence input: {0}")]
    Parse(String),
}

/// Window `-a < π_i - i < b` for every position `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BandedSpec {
    a: usize,
    b: usize,
}

impl BandedSpec {
    pub fn new(a: usize, b: usize) -> Result<Self, BandedError> {
        if a == 0 || b == 0 {
            return Err(BandedError::ZeroSlack { a, b });
        }
        if a + b - 1 > 63 {
            return Err(BandedError::TooWide(a + b - 1));
        }
        Ok(BandedSpec { a, b })
    }

    /// Avoiding `P_j` and `P̃_l` is the window `(a, b) = (l - 1, j - 1)`.
    pub fn from_flat(j: usize, l: usize) -> Result<Self, BandedError> {
        if j < 2 || l < 2 {
            return Err(BandedError::FlatTooSmall { j, l });
        }
        BandedSpec::new(l - 1, j - 1)
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn width(&self) -> usize {
        self.a + self.b - 1
    }

    pub fn admits(&self, values: &[u32]) -> bool {
        values.iter().enumerate().all(|(i, &v)| {
            let d = v as i64 - (i as i64 + 1);
            -(self.a as i64) < d && d < self.b as i64
        })
    }
}

/// Number of length-`n` permutations inside the window.
///
/// Position `i` may take values `i-a+1 ..= i+b-1`. The state is the set of
/// used values in that window, bit `k` standing for `i-a+1+k`; the value
/// leaving the window at the bottom must already be used.
pub fn banded_count(n: usize, spec: BandedSpec) -> BigUint {
    let (a, w) = (spec.a as i64, spec.width());
    // values below 1 count as used
    let start: u64 = (1u64 << (spec.a - 1)) - 1;
    let mut states: HashMap<u64, BigUint> = HashMap::from([(start, BigUint::one())]);
    for i in 1..=n as i64 {
        let lo = i - a + 1;
        let mut next: HashMap<u64, BigUint> = HashMap::new();
        for (mask, ways) in &states {
            for k in 0..w {
                let v = lo + k as i64;
                if v > n as i64 || mask & (1 << k) != 0 {
                    continue;
                }
                let placed = mask | (1 << k);
                if placed & 1 == 0 {
                    continue;
                }
                *next.entry(placed >> 1).or_default() += ways;
            }
        }
        states = next;
    }
    states.into_values().sum()
}

/// `[banded_count(0), ..., banded_count(n_max)]`.
pub fn banded_sequence(spec: BandedSpec, n_max: usize) -> Vec<BigUint> {
    (0..=n_max).map(|n| banded_count(n, spec)).collect()
}

/// `F^{(k)}_n` with `F_1 = 1` and `F_r = 0` for `r <= 0`.
pub fn kfib(k: i64, n: i64) -> Result<BigUint, BandedError> {
    if k < 2 {
        return Err(BandedError::KTooSmall(k));
    }
    if n <= 0 {
        return Ok(BigUint::zero());
    }
    let k = k as usize;
    let mut window: Vec<BigUint> = vec![BigUint::zero(); k];
    window[k - 1] = BigUint::one();
    let mut sum = BigUint::one();
    for _ in 1..n {
        let next = sum.clone();
        sum = &sum + &next - &window[0];
        window.remove(0);
        window.push(next);
    }
    Ok(window.pop().unwrap())
}

/// `a_n = c_1 a_{n-1} + ... + c_d a_{n-d}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence {
    coeffs: Vec<BigRational>,
}

impl Recurrence {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        Recurrence { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `c_1..c_d` when every coefficient is an integer.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// `1 - c_1 x - ... - c_d x^d`, when integral.
    pub fn denominator(&self) -> Option<Vec<BigInt>> {
        let mut out = vec![BigInt::one()];
        out.extend(self.integer_coeffs()?.into_iter().map(|c| -c));
        Some(out)
    }

    /// Whether every term from index `d` on obeys the recurrence.
    pub fn fits(&self, seq: &[BigRational]) -> bool {
        let d = self.order();
        (d..seq.len()).all(|n| {
            let pred: BigRational = (1..=d).map(|i| &self.coeffs[i - 1] * &seq[n - i]).sum();
            pred == seq[n]
        })
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(den) = self.denominator() {
            return f.write_str(&format_int_poly(&den));
        }
        f.write_str("1")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_positive() { " - " } else { " + " };
            let k = i + 1;
            let var = if k == 1 { "x".to_string() } else { format!("x^{k}") };
            write!(f, "{sign}({})*{var}", c.abs())?;
        }
        Ok(())
    }
}

/// Minimal linear recurrence by Berlekamp-Massey over the rationals.
///
/// The result must be determined by at most `len - 2` terms, so at least two
/// trailing terms confirm it.
pub fn find_recurrence<T>(seq: &[T]) -> Result<Recurrence, BandedError>
where
    T: Clone + Into<BigInt>,
{
    let s: Vec<BigRational> =
        seq.iter().map(|v| BigRational::from_integer(v.clone().into())).collect();
    let len = s.len();
    let max_order = (len / 2).saturating_sub(1);
    let none = BandedError::NoRecurrence { len, max_order };
    if len < 2 {
        return Err(none);
    }
    let (c, order) = berlekamp_massey(&s);
    if len < 2 * order + 2 {
        return Err(none);
    }
    let mut coeffs: Vec<BigRational> = c.iter().skip(1).map(|x| -x).collect();
    coeffs.resize(order, BigRational::zero());
    let rec = Recurrence::new(coeffs);
    // the prefix without the two held-out terms must already force the same answer
    let (c2, order2) = berlekamp_massey(&s[..len - 2]);
    let mut prefix_coeffs: Vec<BigRational> = c2.iter().skip(1).map(|x| -x).collect();
    prefix_coeffs.resize(order2, BigRational::zero());
    if order2 != order || prefix_coeffs != rec.coeffs || !rec.fits(&s) {
        return Err(none);
    }
    Ok(rec)
}

/// Connection polynomial `C` (with `C[0] = 1`) and linear complexity.
fn berlekamp_massey(s: &[BigRational]) -> (Vec<BigRational>, usize) {
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last = BigRational::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=l.min(c.len() - 1) {
            d += &c[i] * &s[n - i];
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let factor = &d / &last;
        let prev = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] -= &factor * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            last = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.truncate(l + 1);
    (c, l)
}

/// CSV with header `n,value`.
pub fn sequence_to_csv(seq: &[BigUint]) -> String {
    let mut out = String::from("n,value\n");
    for (i, v) in seq.iter().enumerate() {
        out.push_str(&format!("{i},{v}\n"));
    }
    out
}

pub fn sequence_from_csv(text: &str) -> Result<Vec<BigUint>, BandedError> {
    let mut out = Vec::new();
    for (row, line) in text.lines().skip(1).filter(|l| !l.trim().is_empty()).enumerate() {
        let (idx, val) =
            line.split_once(',').ok_or_else(|| BandedError::Parse(format!("row `{line}`")))?;
        if idx.trim().parse::<usize>().ok() != Some(row) {
            return Err(BandedError::Parse(format!("row {row} has index `{idx}`")));
        }
        out.push(val.trim().parse().map_err(|_| BandedError::Parse(format!("value `{val}`")))?);
    }
    Ok(out)
}

/// JSON array of decimal strings.
pub fn sequence_to_json(seq: &[BigUint]) -> String {
    let strs: Vec<String> = seq.iter().map(|v| v.to_string()).collect();
    serde_json::to_string(&strs).expect("strings serialize")
}

pub fn sequence_from_json(text: &str) -> Result<Vec<BigUint>, BandedError> {
    let strs: Vec<String> =
        serde_json::from_str(text).map_err(|e| BandedError::Parse(e.to_string()))?;
    strs.iter()
        .map(|s| s.parse().map_err(|_| BandedError::Parse(format!("value `{s}`"))))
        .collect()
}
