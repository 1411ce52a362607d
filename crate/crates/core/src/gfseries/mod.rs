//! Exact polynomial and power-series arithmetic over the statistic variables,
//! the transcribed generating functions, and the functional-equation solver.

mod fixture;
mod poly;
mod series;
mod system;

pub use fixture::{load_theorem_gf, parse_fixture, theorem_gf, FixtureGf};
pub use poly::{Monomial, MultiPoly, Var};
pub use series::{expand_rational, format_int_poly, RationalGF, XPoly, XSeries};
pub use system::{
    small_coefficients, solve_system, solve_system_rational, system_parts, SmallCoefficients,
    SystemParts,
};

/// Default truncation order for series output.
pub const DEFAULT_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GfError {
    #[error("series orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },
    #[error("denominator constant term is not a unit")]
    NonInvertible,
    #[error("unknown variable `{0}` (expected one of p, q, u, v, s, t)")]
    UnknownVariable(String),
    #[error("no generating function for (j, l) = ({j}, {l})")]
    Unsupported { j: usize, l: usize },
    #[error("fixture line {line}: {msg}")]
    Fixture { line: usize, msg: String },
}

pub fn poly_add(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    a + b
}

pub fn poly_mul(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    a * b
}

pub fn series_add(a: &XSeries, b: &XSeries) -> Result<XSeries, GfError> {
    a.add(b)
}

pub fn series_mul(a: &XSeries, b: &XSeries) -> Result<XSeries, GfError> {
    a.mul(b)
}

pub fn substitute_one(a: &MultiPoly, var: &str) -> Result<MultiPoly, GfError> {
    Ok(a.substitute_one(var.parse()?))
}
