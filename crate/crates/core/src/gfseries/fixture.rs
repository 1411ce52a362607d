//! Reader for the transcribed generating-function fixtures.
//!
//! ```text
//! [gf 3 3 numerator]
//! -1 p^0 q^0 u^0 v^0 s^0 t^0 x^0
//! +1 p^1 q^0 u^1 v^0 s^0 t^1 x^1
//! ```
//! Every term names its own exponents; omitted variables have exponent 0.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::poly::{Monomial, MultiPoly, Var};
use super::series::{RationalGF, XPoly};
use super::GfError;

const SOURCES: [((usize, usize), &str); 6] = [
    ((3, 3), include_str!("../../fixtures/gf_3_3.txt")),
    ((3, 4), include_str!("../../fixtures/gf_3_4.txt")),
    ((3, 5), include_str!("../../fixtures/gf_3_5.txt")),
    ((4, 4), include_str!("../../fixtures/gf_4_4.txt")),
    ((4, 5), include_str!("../../fixtures/gf_4_5.txt")),
    ((5, 5), include_str!("../../fixtures/gf_5_5.txt")),
];

/// One parsed fixture section set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureGf {
    pub j: usize,
    pub l: usize,
    pub gf: RationalGF,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    Numerator,
    Denominator,
}

fn err(line: usize, msg: impl Into<String>) -> GfError {
    GfError::Fixture { line, msg: msg.into() }
}

/// Parses fixture text. Each `(j, l)` must supply both parts exactly once.
pub fn parse_fixture(text: &str) -> Result<Vec<FixtureGf>, GfError> {
    // (j, l, part, terms keyed by (x power, monomial))
    let mut sections: Vec<(usize, usize, Part, Vec<(usize, Monomial, BigInt)>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(inner) = line.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(|| err(lineno, "unclosed header"))?;
            let words: Vec<&str> = inner.split_whitespace().collect();
            let [tag, j, l, part] = words[..] else {
                return Err(err(lineno, format!("bad header `{line}`")));
            };
            if tag != "gf" {
                return Err(err(lineno, format!("unknown section `{tag}`")));
            }
            let j = j.parse().map_err(|_| err(lineno, "bad j"))?;
            let l = l.parse().map_err(|_| err(lineno, "bad l"))?;
            let part = match part {
                "numerator" => Part::Numerator,
                "denominator" => Part::Denominator,
                other => return Err(err(lineno, format!("unknown part `{other}`"))),
            };
            if sections.iter().any(|s| (s.0, s.1) == (j, l) && s.2 == part) {
                return Err(err(lineno, "repeated section"));
            }
            sections.push((j, l, part, Vec::new()));
            continue;
        }
        let section = sections.last_mut().ok_or_else(|| err(lineno, "term before any header"))?;
        let (k, m, c) = parse_term(line).map_err(|msg| err(lineno, msg))?;
        if section.3.iter().any(|(k2, m2, _)| *k2 == k && *m2 == m) {
            return Err(err(lineno, format!("duplicate monomial {m} x^{k}")));
        }
        section.3.push((k, m, c));
    }

    let mut out: Vec<FixtureGf> = Vec::new();
    let keys: BTreeSet<(usize, usize)> = sections.iter().map(|s| (s.0, s.1)).collect();
    for (j, l) in keys {
        let build = |part: Part| -> Result<XPoly, GfError> {
            let (_, _, _, terms) = sections
                .iter()
                .find(|s| (s.0, s.1, s.2) == (j, l, part))
                .ok_or_else(|| err(0, format!("gf {j} {l} lacks a part")))?;
            let mut p = XPoly::zero();
            for (k, m, c) in terms {
                p.add_at(*k, &MultiPoly::term(*m, c.clone()));
            }
            Ok(p)
        };
        let gf = RationalGF::new(build(Part::Numerator)?, build(Part::Denominator)?);
        out.push(FixtureGf { j, l, gf });
    }
    Ok(out)
}

fn parse_term(line: &str) -> Result<(usize, Monomial, BigInt), String> {
    let mut words = line.split_whitespace();
    let coef = words.next().ok_or("empty term")?;
    if !coef.starts_with(['+', '-']) {
        return Err(format!("coefficient `{coef}` lacks a sign"));
    }
    let c: BigInt = coef.parse().map_err(|_| format!("bad coefficient `{coef}`"))?;
    let mut e = [None::<u32>; 7];
    for w in words {
        let (name, exp) = w.split_once('^').ok_or_else(|| format!("bad factor `{w}`"))?;
        let slot = if name == "x" {
            6
        } else {
            name.parse::<Var>().map_err(|e| e.to_string())?.index()
        };
        if e[slot].is_some() {
            return Err(format!("variable `{name}` repeated"));
        }
        e[slot] = Some(exp.parse().map_err(|_| format!("bad exponent in `{w}`"))?);
    }
    let e = e.map(|v| v.unwrap_or(0));
    let m = Monomial([e[0], e[1], e[2], e[3], e[4], e[5]]);
    Ok((e[6] as usize, m, c))
}

/// The transcribed g.f. for `3 <= j <= l <= 5`, signs exactly as written
/// (denominator constant `-1`).
pub fn load_theorem_gf(j: usize, l: usize) -> Result<RationalGF, GfError> {
    let (_, text) = SOURCES
        .iter()
        .find(|(key, _)| *key == (j, l))
        .ok_or(GfError::Unsupported { j, l })?;
    let mut parsed = parse_fixture(text)?;
    match parsed.pop() {
        Some(f) if parsed.is_empty() && (f.j, f.l) == (j, l) => Ok(f.gf),
        _ => Err(err(0, format!("fixture for ({j},{l}) is malformed"))),
    }
}

/// Like [`load_theorem_gf`] but also accepts `j > l`, via the
/// reverse-complement exchange `u ↔ t`, `v ↔ s` applied to `(l, j)`.
pub fn theorem_gf(j: usize, l: usize) -> Result<RationalGF, GfError> {
    if j <= l {
        load_theorem_gf(j, l)
    } else {
        load_theorem_gf(l, j)
            .map(|g| g.swap_reverse_complement())
            .map_err(|_| GfError::Unsupported { j, l })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_denominator() {
        let g = load_theorem_gf(3, 3).unwrap();
        assert_eq!(g.monomial_counts(), (9, 3));
        let d = &g.denominator;
        assert_eq!(d.coeff(0), MultiPoly::constant(-1));
        assert_eq!(d.coeff(1), MultiPoly::monomial([1, 0, 1, 0, 0, 1]));
        assert_eq!(d.coeff(2), MultiPoly::monomial([1, 1, 1, 0, 0, 1]));
    }

    #[test]
    fn rejects_bad_input() {
        let dup = "[gf 3 3 numerator]\n+1 x^0\n+2 p^0 x^0\n[gf 3 3 denominator]\n+1\n";
        assert!(matches!(parse_fixture(dup), Err(GfError::Fixture { line: 3, .. })));
        assert!(parse_fixture("+1 p^1\n").is_err());
        assert!(parse_fixture("[gf 3 3 numerator]\n1 p^1\n").is_err());
        assert!(parse_fixture("[gf 3 3 numerator]\n+1 w^1\n").is_err());
        assert!(parse_fixture("[gf 3 3 numerator]\n+1 p^1\n").is_err());
        assert!(load_theorem_gf(5, 3).is_err());
        assert!(load_theorem_gf(2, 3).is_err());
    }

    #[test]
    fn swapped_lookup() {
        let g = theorem_gf(5, 3).unwrap();
        assert_eq!(g, load_theorem_gf(3, 5).unwrap().swap_reverse_complement());
        assert!(theorem_gf(6, 3).is_err());
    }
}
