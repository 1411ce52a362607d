//! Registry of checkable claims. Each claim compares an exact computation
//! with an independent oracle and reports every comparison.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::banded::{banded_count, find_recurrence, kfib, BandedSpec};
use crate::enumerator::{avoiders, count_avoiders, distribution, AvoiderQuery, EnumOptions};
use crate::gfseries::{solve_system, theorem_gf, MultiPoly, RationalGF, XPoly, XSeries};

/// Univariate denominators of the six explicit generating functions,
/// `1 - c_1 x - ...`, keyed by `(j, l)` with `j <= l`.
pub const UNIVARIATE_DENOMINATORS: [((usize, usize), &[i64]); 6] = [
    ((3, 3), &[1, -1, -1]),
    ((3, 4), &[1, -1, -1, -1]),
    ((3, 5), &[1, -1, -1, -1, -1]),
    ((4, 4), &[1, -1, -1, -3, -1]),
    ((4, 5), &[1, -1, -1, -3, -5, -1]),
    ((5, 5), &[1, -1, -1, -3, -11, -7, -1]),
];

/// Range used for the univariate comparison.
pub const UNIVARIATE_ORDER: usize = 12;
/// Series order handed to the recurrence finder.
pub const RECURRENCE_ORDER: usize = 16;
/// Range of `n` for the banded-vs-kfib comparison.
pub const KFIB_BANDED_MAX: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn with(label: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { label: label.into(), pass, detail: (!pass).then(|| detail.into()) }
    }

    fn error(label: impl Into<String>, err: impl fmt::Display) -> Self {
        Check { label: label.into(), pass: false, detail: Some(err.to_string()) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub id: String,
    pub title: String,
    pub n_max: usize,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl fmt::Display for ClaimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        writeln!(
            f,
            "{} {:<24} {}/{} checks  {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.checks.len() - failed,
            self.checks.len(),
            self.title
        )?;
        for c in self.checks.iter().filter(|c| !c.pass) {
            writeln!(f, "     mismatch {}: {}", c.label, c.detail.as_deref().unwrap_or(""))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub enumeration: EnumOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { n_max: 7, enumeration: EnumOptions::default() }
    }
}

pub struct Claim {
    pub id: &'static str,
    pub aliases: &'static [&'static str],
    pub title: &'static str,
    run: fn(&VerifyOptions, &[usize]) -> Vec<Check>,
    args: &'static [usize],
}

impl Claim {
    pub fn run(&self, opts: &VerifyOptions) -> ClaimReport {
        let checks = (self.run)(opts, self.args);
        ClaimReport {
            id: self.id.to_string(),
            title: self.title.to_string(),
            n_max: opts.n_max,
            pass: !checks.is_empty() && checks.iter().all(|c| c.pass),
            checks,
        }
    }

    fn matches(&self, name: &str) -> bool {
        let name = name.to_ascii_lowercase();
        self.id == name || self.aliases.contains(&name.as_str())
    }
}

pub static CLAIMS: &[Claim] = &[
    Claim { id: "gf-3-3", aliases: &[], title: "F_{3,3} series equals brute-force distribution", run: gf_vs_brute, args: &[3, 3] },
    Claim { id: "gf-3-4", aliases: &[], title: "F_{3,4} and F_{4,3} series equal brute-force distributions", run: gf_vs_brute, args: &[3, 4] },
    Claim { id: "gf-3-5", aliases: &[], title: "F_{3,5} and F_{5,3} series equal brute-force distributions", run: gf_vs_brute, args: &[3, 5] },
    Claim { id: "gf-4-4", aliases: &[], title: "F_{4,4} series equals brute-force distribution", run: gf_vs_brute, args: &[4, 4] },
    Claim { id: "gf-4-5", aliases: &[], title: "F_{4,5} and F_{5,4} series equal brute-force distributions", run: gf_vs_brute, args: &[4, 5] },
    Claim { id: "gf-5-5", aliases: &[], title: "F_{5,5} series equals brute-force distribution", run: gf_vs_brute, args: &[5, 5] },
    Claim { id: "kfib-count", aliases: &["thm2.1"], title: "|S_n(P_j, Pt_3)| = F^(j-1)_(n+1) for j = 3..6", run: kfib_claim, args: &[] },
    Claim { id: "banded-window", aliases: &[], title: "avoiding P_j and Pt_l is the window -(l-1) < p_i - i < j-1", run: banded_claim, args: &[] },
    Claim { id: "separable-superfluous", aliases: &[], title: "separability is implied when j = 3 or l = 3", run: superfluous_claim, args: &[] },
    Claim { id: "increasing-only", aliases: &["eq1.1"], title: "P_2 leaves only the increasing permutation", run: increasing_claim, args: &[] },
    Claim { id: "reverse-complement", aliases: &["inv-com"], title: "F_{j,l}(u,v,s,t) = F_{l,j}(t,s,v,u) on brute-force coefficients", run: inv_com_claim, args: &[] },
    Claim { id: "system-explicit", aliases: &[], title: "functional-equation system agrees with the explicit g.f.s", run: system_claim, args: &[] },
    Claim { id: "univariate-3-3", aliases: &[], title: "F_{3,3}(x) = 1/(1 - x - x^2)", run: univariate_claim, args: &[3, 3] },
    Claim { id: "univariate-3-4", aliases: &[], title: "F_{3,4}(x) = 1/(1 - x - x^2 - x^3)", run: univariate_claim, args: &[3, 4] },
    Claim { id: "univariate-3-5", aliases: &[], title: "F_{3,5}(x) = 1/(1 - x - x^2 - x^3 - x^4)", run: univariate_claim, args: &[3, 5] },
    Claim { id: "univariate-4-4", aliases: &[], title: "F_{4,4}(x) = 1/(1 - x - x^2 - 3x^3 - x^4)", run: univariate_claim, args: &[4, 4] },
    Claim { id: "univariate-4-5", aliases: &[], title: "F_{4,5}(x) = 1/(1 - x - x^2 - 3x^3 - 5x^4 - x^5)", run: univariate_claim, args: &[4, 5] },
    Claim { id: "univariate-5-5", aliases: &[], title: "F_{5,5}(x) = 1/(1 - x - x^2 - 3x^3 - 11x^4 - 7x^5 - x^6)", run: univariate_claim, args: &[5, 5] },
];

pub fn find_claim(name: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.matches(name))
}

/// Runs one claim; `None` for an unknown identifier.
pub fn verify_theorem(which: &str, opts: &VerifyOptions) -> Option<ClaimReport> {
    find_claim(which).map(|c| c.run(opts))
}

pub fn verify_all(opts: &VerifyOptions) -> Vec<ClaimReport> {
    CLAIMS.iter().map(|c| c.run(opts)).collect()
}

fn mismatch<T: fmt::Display>(got: T, want: T) -> String {
    format!("got {got}, expected {want}")
}

fn gf_vs_brute(opts: &VerifyOptions, args: &[usize]) -> Vec<Check> {
    let (j, l) = (args[0], args[1]);
    let mut pairs = vec![(j, l)];
    if j != l {
        pairs.push((l, j));
    }
    let mut checks = Vec::new();
    for (j, l) in pairs {
        let series = match theorem_gf(j, l).and_then(|g| g.expand(opts.n_max)) {
            Ok(s) => s,
            Err(e) => {
                checks.push(Check::error(format!("({j},{l}) expansion"), e));
                continue;
            }
        };
        for n in 0..=opts.n_max {
            let label = format!("({j},{l}) n={n}");
            let q = AvoiderQuery::flat_pair(n, j, l, true);
            match distribution(&q, &opts.enumeration) {
                Ok(d) => {
                    let got = series.coeff(n);
                    checks.push(Check::with(label, *got == d, poly_diff(got, &d)));
                }
                Err(e) => checks.push(Check::error(label, e)),
            }
        }
    }
    checks
}

fn poly_diff(got: &MultiPoly, want: &MultiPoly) -> String {
    let diff = got - want;
    format!("{} differing monomials, e.g. {}", diff.len(), diff.terms().next().map_or(String::new(), |(m, c)| format!("{c}*{m}")))
}

fn kfib_claim(opts: &VerifyOptions, _: &[usize]) -> Vec<Check> {
    let mut checks = Vec::new();
    for j in 3..=6usize {
        for n in 0..=opts.n_max {
            let label = format!("brute j={j} n={n}");
            let want = kfib(j as i64 - 1, n as i64 + 1).expect("k >= 2");
            match count_avoiders(&AvoiderQuery::flat_pair(n, j, 3, false), &opts.enumeration) {
                Ok(c) => checks.push(Check::with(label, c == want, mismatch(&c, &want))),
                Err(e) => checks.push(Check::error(label, e)),
            }
        }
        let spec = BandedSpec::from_flat(j, 3).expect("valid");
        let bad: Vec<usize> = (0..=KFIB_BANDED_MAX)
            .filter(|&n| banded_count(n, spec) != kfib(j as i64 - 1, n as i64 + 1).unwrap())
            .collect();
        checks.push(Check::with(
            format!("banded j={j} n<={KFIB_BANDED_MAX}"),
            bad.is_empty(),
            format!("differs at n = {bad:?}"),
        ));
    }
    checks
}

fn banded_claim(opts: &VerifyOptions, _: &[usize]) -> Vec<Check> {
    let mut checks = Vec::new();
    for j in 2..=6usize {
        for l in 2..=6usize {
            let spec = BandedSpec::from_flat(j, l).expect("valid");
            for n in 0..=opts.n_max {
                let label = format!("(j,l)=({j},{l}) n={n}");
                let want = banded_count(n, spec);
                match count_avoiders(&AvoiderQuery::flat_pair(n, j, l, false), &opts.enumeration) {
                    Ok(c) => checks.push(Check::with(label, c == want, mismatch(&c, &want))),
                    Err(e) => checks.push(Check::error(label, e)),
                }
            }
        }
    }
    checks
}

fn superfluous_claim(opts: &VerifyOptions, _: &[usize]) -> Vec<Check> {
    let mut checks = Vec::new();
    for (j, l) in [(3, 3), (3, 4), (3, 5), (4, 3), (5, 3)] {
        for n in 0..=opts.n_max {
            let label = format!("(j,l)=({j},{l}) n={n}");
            let sep = avoiders(&AvoiderQuery::flat_pair(n, j, l, true), &opts.enumeration);
            let all = avoiders(&AvoiderQuery::flat_pair(n, j, l, false), &opts.enumeration);
            match (sep, all) {
                (Ok(a), Ok(b)) => checks.push(Check::with(
                    label,
                    a == b,
                    format!("{} separable vs {} unrestricted members", a.len(), b.len()),
                )),
                (Err(e), _) | (_, Err(e)) => checks.push(Check::error(label, e)),
            }
        }
    }
    checks
}

fn increasing_claim(opts: &VerifyOptions, _: &[usize]) -> Vec<Check> {
    let mut checks = Vec::new();
    for l in 2..=5usize {
        for n in 0..=opts.n_max {
            let label = format!("l={l} n={n}");
            let want = if n == 0 {
                MultiPoly::one()
            } else {
                let n = n as u32;
                MultiPoly::monomial([n - 1, 0, n, 1, 1, n])
            };
            match distribution(&AvoiderQuery::flat_pair(n, 2, l, true), &opts.enumeration) {
                Ok(d) => checks.push(Check::with(label, d == want, mismatch(&d, &want))),
                Err(e) => checks.push(Check::error(label, e)),
            }
        }
    }
    checks
}

fn inv_com_claim(opts: &VerifyOptions, _: &[usize]) -> Vec<Check> {
    let mut checks = Vec::new();
    for j in 3..=5usize {
        for l in j..=5usize {
            for n in 0..=opts.n_max {
                let label = format!("(j,l)=({j},{l}) n={n}");
                let e = &opts.enumeration;
                let a = distribution(&AvoiderQuery::flat_pair(n, j, l, true), e);
                let b = distribution(&AvoiderQuery::flat_pair(n, l, j, true), e);
                match (a, b) {
                    (Ok(a), Ok(b)) => {
                        let swapped = b.swap_reverse_complement();
                        checks.push(Check::with(label, a == swapped, poly_diff(&a, &swapped)));
                    }
                    (Err(e), _) | (_, Err(e)) => checks.push(Check::error(label, e)),
                }
            }
        }
    }
    checks
}

fn system_claim(opts: &VerifyOptions, _: &[usize]) -> Vec<Check> {
    let order = opts.n_max.max(8);
    let mut checks = Vec::new();
    for j in 3..=5usize {
        for l in 3..=5usize {
            let label = format!("(j,l)=({j},{l}) order {order}");
            let sys = solve_system(j, l, order);
            let exp = theorem_gf(j, l).and_then(|g| g.expand(order));
            match (sys, exp) {
                (Ok(a), Ok(b)) => {
                    let bad: Vec<usize> = (0..=order).filter(|&n| a.coeff(n) != b.coeff(n)).collect();
                    checks.push(Check::with(label, bad.is_empty(), format!("differs at x^{bad:?}")));
                }
                (Err(e), _) | (_, Err(e)) => checks.push(Check::error(label, e)),
            }
        }
    }
    checks
}

/// The univariate denominator for `(j, l)` (either order).
pub fn univariate_denominator(j: usize, l: usize) -> Option<Vec<BigInt>> {
    let key = (j.min(l), j.max(l));
    UNIVARIATE_DENOMINATORS
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, d)| d.iter().map(|&c| BigInt::from(c)).collect())
}

/// Univariate series of the explicit g.f. for `(j, l)`.
pub fn univariate_series(j: usize, l: usize, order: usize) -> Option<Vec<BigInt>> {
    let gf = theorem_gf(j, l).ok()?;
    let (num, den) = gf.eval_ones();
    let as_poly = |c: Vec<BigInt>| XPoly::from_coeffs(c.into_iter().map(MultiPoly::constant).collect());
    let uni = RationalGF::new(as_poly(num), as_poly(den));
    uni.expand(order).ok().map(|s: XSeries| s.eval_ones())
}

fn univariate_claim(opts: &VerifyOptions, args: &[usize]) -> Vec<Check> {
    let (j, l) = (args[0], args[1]);
    let den = univariate_denominator(j, l).expect("registered pair");
    let den_poly = XPoly::from_coeffs(den.iter().cloned().map(MultiPoly::constant).collect());
    let one_over = RationalGF::new(XPoly::one(), den_poly)
        .expand(RECURRENCE_ORDER)
        .expect("unit constant")
        .eval_ones();
    let Some(series) = univariate_series(j, l, RECURRENCE_ORDER) else {
        return vec![Check::error("expansion", "fixture unavailable")];
    };
    let mut checks = Vec::new();
    let upto = UNIVARIATE_ORDER;
    checks.push(Check::with(
        format!("1/D(x) n<={upto}"),
        series[..=upto] == one_over[..=upto],
        mismatch(fmt_seq(&series[..=upto]), fmt_seq(&one_over[..=upto])),
    ));
    for n in 0..=opts.n_max {
        let label = format!("brute n={n}");
        match count_avoiders(&AvoiderQuery::flat_pair(n, j, l, true), &opts.enumeration) {
            Ok(c) => {
                let c = BigInt::from(c);
                checks.push(Check::with(label, c == series[n], mismatch(&series[n], &c)));
            }
            Err(e) => checks.push(Check::error(label, e)),
        }
    }
    match find_recurrence(&series) {
        Ok(r) => {
            let got = r.denominator();
            checks.push(Check::with(
                "minimal recurrence",
                got.as_ref() == Some(&den),
                mismatch(r.to_string(), crate::gfseries::format_int_poly(&den)),
            ));
        }
        Err(e) => checks.push(Check::error("minimal recurrence", e)),
    }
    checks
}

fn fmt_seq(s: &[BigInt]) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}
