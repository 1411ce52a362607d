use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;

use poplab::banded::{self, BandedSpec};
use poplab::enumerator::{self, AvoiderQuery, EnumOptions};
use poplab::gfseries::{self, MultiPoly as CoreMultiPoly, Var, XSeries};
use poplab::patterns::{self, Pop as CorePop};
use poplab::perm::{PermError, Permutation as CorePermutation};
use poplab::verify::{self, VerifyOptions};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn perm_err(e: PermError) -> PyErr {
    match e {
        PermError::CapExceeded { .. } => PyOverflowError::new_err(e.to_string()),
        other => value_err(other),
    }
}

fn options(cap: Option<usize>, jobs: Option<usize>) -> EnumOptions {
    EnumOptions { cap, jobs }
}

#[pyclass(name = "Permutation", module = "poplab_py", eq, frozen, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Permutation {
    inner: CorePermutation,
}

#[pymethods]
impl Permutation {
    #[new]
    fn new(values: Vec<u32>) -> PyResult<Self> {
        CorePermutation::new(values).map(|inner| Permutation { inner }).map_err(perm_err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(|inner| Permutation { inner }).map_err(value_err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Permutation { inner: CorePermutation::identity(n) }
    }

    fn values(&self) -> Vec<u32> {
        self.inner.as_slice().to_vec()
    }

    fn reverse(&self) -> Self {
        Permutation { inner: self.inner.reverse() }
    }

    fn complement(&self) -> Self {
        Permutation { inner: self.inner.complement() }
    }

    fn direct_sum(&self, other: &Permutation) -> Self {
        Permutation { inner: self.inner.direct_sum(&other.inner) }
    }

    fn skew_sum(&self, other: &Permutation) -> Self {
        Permutation { inner: self.inner.skew_sum(&other.inner) }
    }

    /// Dict with keys asc, des, lmax, rmax, lmin, rmin.
    fn stats(&self) -> BTreeMap<&'static str, u32> {
        let s = self.inner.stats();
        BTreeMap::from([
            ("asc", s.asc),
            ("des", s.des),
            ("lmax", s.lmax),
            ("rmax", s.rmax),
            ("lmin", s.lmin),
            ("rmin", s.rmin),
        ])
    }

    fn is_separable(&self) -> bool {
        patterns::is_separable(&self.inner)
    }

    /// `(left, right)` block lists; each block is `(pattern, offset)`.
    fn decompose(&self) -> PyResult<(Vec<(Vec<u32>, u32)>, Vec<(Vec<u32>, u32)>)> {
        let d = patterns::stankova_decompose(&self.inner).map_err(value_err)?;
        let blocks = |bs: &[patterns::Block]| {
            bs.iter().map(|b| (b.pattern.as_slice().to_vec(), b.offset)).collect()
        };
        Ok((blocks(&d.left), blocks(&d.right)))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?})", self.inner.as_slice())
    }
}

#[pyclass(name = "Pop", module = "poplab_py", frozen, from_py_object)]
#[derive(Clone)]
struct Pop {
    inner: CorePop,
}

#[pymethods]
impl Pop {
    /// Accepts `Pj:4`, `Pt:5`, `classical:2413` or `pop k=3 below=3<1`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(|inner| Pop { inner }).map_err(value_err)
    }

    #[staticmethod]
    fn from_relations(k: usize, relations: Vec<(usize, usize)>) -> PyResult<Self> {
        CorePop::new(k, &relations).map(|inner| Pop { inner }).map_err(value_err)
    }

    #[staticmethod]
    fn flat_pj(j: usize) -> PyResult<Self> {
        CorePop::flat_pj(j).map(|inner| Pop { inner }).map_err(value_err)
    }

    #[staticmethod]
    fn flat_ptilde(l: usize) -> PyResult<Self> {
        CorePop::flat_ptilde(l).map(|inner| Pop { inner }).map_err(value_err)
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn relations(&self) -> Vec<(usize, usize)> {
        self.inner.relations()
    }

    fn occurs_in(&self, p: &Permutation) -> bool {
        self.inner.occurs_in(&p.inner)
    }

    fn count_occurrences(&self, p: &Permutation) -> BigUint {
        self.inner.count_occurrences(&p.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Pop({:?})", self.inner.to_string())
    }
}

/// Exponent tuples over `(p, q, u, v, s, t)` mapped to coefficients.
#[pyclass(name = "MultiPoly", module = "poplab_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct MultiPoly {
    inner: CoreMultiPoly,
}

#[pymethods]
impl MultiPoly {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(|inner| MultiPoly { inner }).map_err(value_err)
    }

    fn terms(&self) -> Vec<([u32; 6], BigInt)> {
        self.inner.terms().map(|(m, c)| (m.0, c.clone())).collect()
    }

    fn coefficient(&self, exponents: [u32; 6]) -> BigInt {
        self.inner.coefficient(&gfseries::Monomial(exponents))
    }

    fn substitute_one(&self, var: &str) -> PyResult<Self> {
        let v: Var = var.parse().map_err(value_err)?;
        Ok(MultiPoly { inner: self.inner.substitute_one(v) })
    }

    fn eval_ones(&self) -> BigInt {
        self.inner.eval_ones()
    }

    fn swap_reverse_complement(&self) -> Self {
        MultiPoly { inner: self.inner.swap_reverse_complement() }
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(value_err)
    }

    fn __add__(&self, other: &MultiPoly) -> Self {
        MultiPoly { inner: &self.inner + &other.inner }
    }

    fn __sub__(&self, other: &MultiPoly) -> Self {
        MultiPoly { inner: &self.inner - &other.inner }
    }

    fn __mul__(&self, other: &MultiPoly) -> Self {
        MultiPoly { inner: &self.inner * &other.inner }
    }

    fn __eq__(&self, other: &MultiPoly) -> bool {
        self.inner == other.inner
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

fn series_out(s: XSeries) -> Vec<MultiPoly> {
    s.coeffs().iter().map(|c| MultiPoly { inner: c.clone() }).collect()
}

fn pop_list(pops: Vec<Pop>) -> Vec<CorePop> {
    pops.into_iter().map(|p| p.inner).collect()
}

#[pyfunction]
fn parse_pops(text: &str) -> PyResult<Vec<Pop>> {
    let pops = patterns::parse_pop_list(text).map_err(value_err)?;
    Ok(pops.into_iter().map(|inner| Pop { inner }).collect())
}

#[pyfunction]
#[pyo3(signature = (n, pops, separable=false, cap=None, jobs=None))]
fn count_avoiders(
    n: usize,
    pops: Vec<Pop>,
    separable: bool,
    cap: Option<usize>,
    jobs: Option<usize>,
) -> PyResult<BigUint> {
    let q = AvoiderQuery::new(n, pop_list(pops), separable);
    enumerator::count_avoiders(&q, &options(cap, jobs)).map_err(perm_err)
}

#[pyfunction]
#[pyo3(signature = (n, pops, separable=false, cap=None, jobs=None))]
fn distribution(
    n: usize,
    pops: Vec<Pop>,
    separable: bool,
    cap: Option<usize>,
    jobs: Option<usize>,
) -> PyResult<MultiPoly> {
    let q = AvoiderQuery::new(n, pop_list(pops), separable);
    enumerator::distribution(&q, &options(cap, jobs))
        .map(|inner| MultiPoly { inner })
        .map_err(perm_err)
}

#[pyfunction]
#[pyo3(signature = (n, pops, separable=false, cap=None, jobs=None))]
fn avoiders(
    n: usize,
    pops: Vec<Pop>,
    separable: bool,
    cap: Option<usize>,
    jobs: Option<usize>,
) -> PyResult<Vec<Permutation>> {
    let q = AvoiderQuery::new(n, pop_list(pops), separable);
    let perms = enumerator::avoiders(&q, &options(cap, jobs)).map_err(perm_err)?;
    Ok(perms.into_iter().map(|inner| Permutation { inner }).collect())
}

/// Coefficients of `x^0..=x^n_max` of the refined series, by enumeration.
#[pyfunction]
#[pyo3(signature = (pops, n_max, separable=false, cap=None, jobs=None))]
fn series_bruteforce(
    pops: Vec<Pop>,
    n_max: usize,
    separable: bool,
    cap: Option<usize>,
    jobs: Option<usize>,
) -> PyResult<Vec<MultiPoly>> {
    enumerator::series_bruteforce(&pop_list(pops), separable, n_max, &options(cap, jobs))
        .map(series_out)
        .map_err(perm_err)
}

/// Closed-form series for the separable class avoiding `P_j` and `P̃_l`.
#[pyfunction]
#[pyo3(signature = (j, l, order=gfseries::DEFAULT_ORDER))]
fn explicit_series(j: usize, l: usize, order: usize) -> PyResult<Vec<MultiPoly>> {
    let gf = gfseries::theorem_gf(j, l).map_err(value_err)?;
    gfseries::expand_rational(&gf, order).map(series_out).map_err(value_err)
}

/// Same class, obtained by solving the decomposition system.
#[pyfunction]
#[pyo3(signature = (j, l, order=gfseries::DEFAULT_ORDER))]
fn solve_system(j: usize, l: usize, order: usize) -> PyResult<Vec<MultiPoly>> {
    gfseries::solve_system(j, l, order).map(series_out).map_err(value_err)
}

#[pyfunction]
fn banded_count(n: usize, a: usize, b: usize) -> PyResult<BigUint> {
    let spec = BandedSpec::new(a, b).map_err(value_err)?;
    Ok(banded::banded_count(n, spec))
}

#[pyfunction]
fn banded_sequence(a: usize, b: usize, n_max: usize) -> PyResult<Vec<BigUint>> {
    let spec = BandedSpec::new(a, b).map_err(value_err)?;
    Ok(banded::banded_sequence(spec, n_max))
}

#[pyfunction]
fn kfib(k: i64, n: i64) -> PyResult<BigUint> {
    banded::kfib(k, n).map_err(value_err)
}

/// Integer recurrence coefficients `c_1..c_L` with
/// `a_n = c_1 a_{n-1} + ... + c_L a_{n-L}`.
#[pyfunction]
fn find_recurrence(seq: Vec<BigInt>) -> PyResult<Vec<BigInt>> {
    let rec = banded::find_recurrence(&seq).map_err(value_err)?;
    rec.integer_coeffs()
        .ok_or_else(|| PyValueError::new_err(format!("recurrence {rec} has non-integer coefficients")))
}

/// Runs one claim and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (claim, n_max=7))]
fn verify_claim(py: Python<'_>, claim: &str, n_max: usize) -> PyResult<Py<PyAny>> {
    let opts = VerifyOptions { n_max, ..VerifyOptions::default() };
    let report = verify::verify_theorem(claim, &opts)
        .ok_or_else(|| PyValueError::new_err(format!("unknown claim {claim:?}")))?;
    let text = serde_json::to_string(&report).map_err(value_err)?;
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (text,))?.unbind())
}

#[pyfunction]
fn claim_ids() -> Vec<&'static str> {
    verify::CLAIMS.iter().map(|c| c.id).collect()
}

#[pymodule]
fn poplab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Permutation>()?;
    m.add_class::<Pop>()?;
    m.add_class::<MultiPoly>()?;
    m.add_function(wrap_pyfunction!(parse_pops, m)?)?;
    m.add_function(wrap_pyfunction!(count_avoiders, m)?)?;
    m.add_function(wrap_pyfunction!(distribution, m)?)?;
    m.add_function(wrap_pyfunction!(avoiders, m)?)?;
    m.add_function(wrap_pyfunction!(series_bruteforce, m)?)?;
    m.add_function(wrap_pyfunction!(explicit_series, m)?)?;
    m.add_function(wrap_pyfunction!(solve_system, m)?)?;
    m.add_function(wrap_pyfunction!(banded_count, m)?)?;
    m.add_function(wrap_pyfunction!(banded_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(kfib, m)?)?;
    m.add_function(wrap_pyfunction!(find_recurrence, m)?)?;
    m.add_function(wrap_pyfunction!(verify_claim, m)?)?;
    m.add_function(wrap_pyfunction!(claim_ids, m)?)?;
    Ok(())
}
