//! Python bindings. Big integers cross the boundary as Python `int`; ring
//! elements of `W_S(R)` cross as strings in the ring's own notation (plain
//! integers, or coefficient lists for `F_q`).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use hilbert_core::arith::{parse_zpoly, TruncSeries};
use hilbert_core::filtration::drinfeld::check_degree_bound;
use hilbert_core::filtration::{
    drinfeld_presentation, FilteredModule, FilteredRing, GradedAlgebraPresentation,
};
use hilbert_core::homology::{
    bar_complex, cobar_complex, GradedAugmentedAlgebra, GradedCoalgebra, HomologyRow,
};
use hilbert_core::intz::{pair, parse_intz, IntZElement};
use hilbert_core::json::parse_json;
use hilbert_core::witt::{
    kernel::DEFAULT_BOUND, kernel_enumerate, teichmuller as teich, twisted_frobenius as twisted,
    universal_poly as unipoly, CoeffRing, FrobeniusModel, KernelOptions, OpTag, TruncationSet,
    WittVector as CoreWitt,
};
use hilbert_core::Error;

create_exception!(hilbert, FalsificationError, PyException);

fn py_err(e: Error) -> PyErr {
    if e.is_falsification() {
        FalsificationError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for hilbert_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// An integer-valued polynomial, stored in the binomial basis.
#[pyclass(name = "IntZ", module = "hilbert", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct IntZ(IntZElement);

#[pymethods]
impl IntZ {
    /// Parses `"2*C(x,2) + 3*C(x,3)"` or a polynomial in `x` with rational
    /// coefficients that is integer-valued.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_intz(text).py().map(IntZ)
    }

    /// The basis element `C(x, n)`.
    #[staticmethod]
    fn basis(n: usize) -> Self {
        IntZ(IntZElement::basis(n))
    }

    #[staticmethod]
    fn from_coeffs(coeffs: BTreeMap<usize, BigInt>) -> Self {
        IntZ(IntZElement::from_coeffs(coeffs))
    }

    fn coeffs(&self) -> BTreeMap<usize, BigInt> {
        self.0.coeffs().clone()
    }

    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn __add__(&self, other: &Self) -> Self {
        IntZ(self.0.add(&other.0))
    }

    fn __sub__(&self, other: &Self) -> Self {
        IntZ(self.0.sub(&other.0))
    }

    fn __neg__(&self) -> Self {
        IntZ(self.0.neg())
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.mult(&other.0).py().map(IntZ)
    }

    /// Coproduct as `{(m, n): c}` meaning `sum c C(x,m) (x) C(y,n)`.
    fn comult(&self) -> BTreeMap<(usize, usize), BigInt> {
        self.0.comult().coeffs().clone()
    }

    fn antipode(&self) -> PyResult<Self> {
        self.0.antipode().py().map(IntZ)
    }

    fn counit(&self) -> BigInt {
        self.0.counit()
    }

    fn __call__(&self, a: BigInt) -> BigInt {
        self.0.eval(&a)
    }

    /// Pairing with the truncated series `sum coeffs[k] u^k`.
    fn pair(&self, series: Vec<BigInt>) -> PyResult<BigInt> {
        let s = TruncSeries::from_coeffs("u", series.len(), &series);
        pair(&self.0, &s).py()
    }

    /// Pairing with the group-like series `(1+u)^a`.
    fn pair_group_like(&self, a: i64) -> PyResult<BigInt> {
        let order = self.0.degree().unwrap_or(0) + 1;
        let base = TruncSeries::from_poly(&parse_zpoly("1 + u").py()?, "u", order).py()?;
        pair(&self.0, &base.pow(a).py()?).py()
    }

    /// Checks `f^p = f mod p`.
    fn frobenius_identity(&self, p: u32) -> PyResult<bool> {
        self.0.frobenius_mod_p_identity(p).py()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("IntZ('{}')", self.0)
    }
}

fn trunc_set(elems: Vec<u64>) -> PyResult<TruncationSet> {
    TruncationSet::new(elems).py()
}

fn model(name: &str) -> PyResult<FrobeniusModel> {
    match name {
        "truncating" => Ok(FrobeniusModel::Truncating),
        "endomorphism" => Ok(FrobeniusModel::Endomorphism),
        _ => Err(PyValueError::new_err(format!("unknown model {name:?}"))),
    }
}

/// A truncated Witt vector over `Z`, `Z/m` or `F_q`.
#[pyclass(
    name = "WittVector",
    module = "hilbert",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
struct WittVector(CoreWitt);

#[pymethods]
impl WittVector {
    /// `ring` is `"Z"`, `"Zmod:m"` or `"Fq:p,k"`. Components may be ints or
    /// strings.
    #[new]
    #[pyo3(signature = (trunc, coeffs, ring = "Z"))]
    fn new(trunc: Vec<u64>, coeffs: Vec<Bound<'_, PyAny>>, ring: &str) -> PyResult<Self> {
        let ring = CoeffRing::parse(ring).py()?;
        let trunc = trunc_set(trunc)?;
        let strs = coeffs
            .iter()
            .map(|c| Ok(c.str()?.to_string()))
            .collect::<PyResult<Vec<String>>>()?;
        if strs.len() != trunc.len() {
            return Err(PyValueError::new_err(format!(
                "{} components given for the truncation set {trunc}",
                strs.len()
            )));
        }
        let refs: Vec<&str> = strs.iter().map(String::as_str).collect();
        CoreWitt::parse(&trunc, &ring, &refs).py().map(WittVector)
    }

    #[staticmethod]
    fn from_json(src: &str) -> PyResult<Self> {
        CoreWitt::from_json(&parse_json(src).py()?)
            .py()
            .map(WittVector)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    #[getter]
    fn trunc(&self) -> Vec<u64> {
        self.0.trunc().elements().to_vec()
    }

    #[getter]
    fn ring(&self) -> String {
        self.0.ring().to_string()
    }

    fn coeffs(&self) -> Vec<String> {
        self.fmt_all(self.0.coeffs())
    }

    fn ghost(&self) -> Vec<String> {
        self.fmt_all(&self.0.ghost())
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.add(&other.0).py().map(WittVector)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.sub(&other.0).py().map(WittVector)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.mul(&other.0).py().map(WittVector)
    }

    fn __neg__(&self) -> Self {
        WittVector(self.0.neg())
    }

    fn frobenius(&self, n: u64) -> PyResult<Self> {
        self.0.frobenius(n).py().map(WittVector)
    }

    /// `V_n`, landing in `target` (default: the smallest set that fits).
    #[pyo3(signature = (n, target = None))]
    fn verschiebung(&self, n: u64, target: Option<Vec<u64>>) -> PyResult<Self> {
        match target {
            Some(t) => self.0.verschiebung(n, &trunc_set(t)?),
            None => self.0.verschiebung_default(n),
        }
        .py()
        .map(WittVector)
    }

    #[pyo3(signature = (n, t, model = "endomorphism"))]
    fn twisted_frobenius(&self, n: u64, t: &str, model: &str) -> PyResult<Self> {
        let t = self.0.ring().parse_elem(t).py()?;
        twisted(n, &self.0, &t, self::model(model)?)
            .py()
            .map(WittVector)
    }

    fn __str__(&self) -> String {
        self.0.fmt_coeffs()
    }

    fn __repr__(&self) -> String {
        format!("WittVector({})", self.0.to_json())
    }
}

impl WittVector {
    fn fmt_all(&self, xs: &[hilbert_core::witt::RingElem]) -> Vec<String> {
        xs.iter().map(|x| self.0.ring().fmt_elem(x)).collect()
    }
}

/// Teichmuller representative `[r]`.
#[pyfunction]
#[pyo3(signature = (r, trunc, ring = "Z"))]
fn teichmuller(r: &str, trunc: Vec<u64>, ring: &str) -> PyResult<WittVector> {
    let ring = CoeffRing::parse(ring).py()?;
    let r = ring.parse_elem(r).py()?;
    Ok(WittVector(teich(r, &trunc_set(trunc)?, &ring)))
}

/// Kernel of the twisted Frobenius over a finite ring, in canonical order.
#[pyfunction]
#[pyo3(signature = (trunc, ring, n, t, model = "endomorphism", bound = DEFAULT_BOUND, jobs = 1))]
#[allow(clippy::too_many_arguments)]
fn kernel(
    py: Python<'_>,
    trunc: Vec<u64>,
    ring: &str,
    n: u64,
    t: &str,
    model: &str,
    bound: u64,
    jobs: usize,
) -> PyResult<Vec<WittVector>> {
    let ring = CoeffRing::parse(ring).py()?;
    let trunc = trunc_set(trunc)?;
    let t = ring.parse_elem(t).py()?;
    let m = self::model(model)?;
    let opts = KernelOptions { bound, jobs };
    let k = py
        .detach(|| kernel_enumerate(&trunc, &ring, |a| twisted(n, a, &t, m), true, &opts))
        .py()?;
    Ok(k.into_iter().map(WittVector).collect())
}

/// Universal polynomial for `op` (`sum`, `product`, `negation`,
/// `frobenius:n`) at component `n`, as text.
#[pyfunction]
fn universal_poly(op: &str, n: u64, trunc: Vec<u64>) -> PyResult<String> {
    let op = OpTag::parse(op).py()?;
    unipoly(op, n, &trunc_set(trunc)?)
        .py()
        .map(|p| p.to_string())
}

type Row = (i64, i64, usize, Vec<BigInt>);

fn rows(table: Vec<HomologyRow>) -> Vec<Row> {
    table
        .into_iter()
        .map(|r| (r.degree, r.weight, r.free_rank, r.torsion))
        .collect()
}

/// Homology of the bar construction: rows `(degree, weight, free_rank,
/// torsion)`. `algebra` is a preset name or a JSON description.
#[pyfunction]
#[pyo3(signature = (algebra, stages = 4, weight = None, jobs = 1))]
fn bar_homology(
    py: Python<'_>,
    algebra: &str,
    stages: usize,
    weight: Option<usize>,
    jobs: usize,
) -> PyResult<Vec<Row>> {
    let w = weight.unwrap_or(stages);
    let a = if algebra.trim_start().starts_with('{') {
        GradedAugmentedAlgebra::from_json(&parse_json(algebra).py()?).py()?
    } else {
        GradedAugmentedAlgebra::preset(algebra, w).py()?
    };
    let table = py
        .detach(|| bar_complex(&a, stages, w).map(|c| c.homology_table(jobs)))
        .py()?;
    Ok(rows(table))
}

/// Homology of the cobar construction, same row layout as `bar_homology`.
#[pyfunction]
#[pyo3(signature = (coalgebra, length = 4, weight = None, jobs = 1))]
fn cobar_homology(
    py: Python<'_>,
    coalgebra: &str,
    length: usize,
    weight: Option<usize>,
    jobs: usize,
) -> PyResult<Vec<Row>> {
    let w = weight.unwrap_or(length);
    let c = if coalgebra.trim_start().starts_with('{') {
        GradedCoalgebra::from_json(&parse_json(coalgebra).py()?).py()?
    } else {
        GradedCoalgebra::preset(coalgebra, w).py()?
    };
    let table = py
        .detach(|| cobar_complex(&c, length, w).map(|c| c.homology_table(jobs)))
        .py()?;
    Ok(rows(table))
}

fn constants(
    p: &GradedAlgebraPresentation,
) -> BTreeMap<(String, String), BTreeMap<String, String>> {
    let labels = p.labels();
    p.products()
        .map(|(&(i, j), out)| {
            let rhs = out
                .iter()
                .map(|(&k, c)| (labels[k].clone(), c.to_string()))
                .collect();
            ((labels[i].clone(), labels[j].clone()), rhs)
        })
        .collect()
}

/// Structure constants of the Rees algebra of `Int(Z)` through weight `n`,
/// optionally specialized at `t = at`.
#[pyfunction]
#[pyo3(signature = (n, at = None))]
fn rees(
    n: usize,
    at: Option<i64>,
) -> PyResult<BTreeMap<(String, String), BTreeMap<String, String>>> {
    let mut p = FilteredRing::int_z(n).py()?.rees().py()?;
    if let Some(t) = at {
        p = p.specialize(&BigInt::from(t));
    }
    Ok(constants(&p))
}

/// Drinfeld structure constants through weight `n`, checked against the
/// degree bound and the Rees algebra.
#[pyfunction]
#[pyo3(signature = (n, at = None))]
fn drinfeld(
    n: usize,
    at: Option<i64>,
) -> PyResult<BTreeMap<(String, String), BTreeMap<String, String>>> {
    let d = drinfeld_presentation(n).py()?;
    for (&(i, j), out) in d.products() {
        check_degree_bound(i, j, out).py()?;
    }
    if d != FilteredRing::int_z(n).py()?.rees().py()? {
        return Err(py_err(Error::Falsified(format!(
            "Drinfeld constants through weight {n} differ from the Rees algebra"
        ))));
    }
    let d = match at {
        Some(t) => d.specialize(&BigInt::from(t)),
        None => d,
    };
    Ok(constants(&d))
}

/// Day tensor of two filtered modules given as JSON; returns JSON.
#[pyfunction]
fn day_tensor(x: &str, y: &str) -> PyResult<String> {
    let x = FilteredModule::from_json(&parse_json(x).py()?).py()?;
    let y = FilteredModule::from_json(&parse_json(y).py()?).py()?;
    Ok(x.day_tensor(&y).to_json().to_string())
}

/// Ranks of the associated graded, `{weight: rank}`.
#[pyfunction]
fn associated_graded(x: &str) -> PyResult<BTreeMap<i64, usize>> {
    FilteredModule::from_json(&parse_json(x).py()?)
        .py()?
        .associated_graded()
        .py()
}

/// The degree filtration on `Int(Z)_{<=n}` as JSON.
#[pyfunction]
fn degree_filtration(n: usize) -> String {
    FilteredModule::degree_filtration(n).to_json().to_string()
}

#[pymodule]
fn hilbert(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<IntZ>()?;
    m.add_class::<WittVector>()?;
    m.add(
        "FalsificationError",
        m.py().get_type::<FalsificationError>(),
    )?;
    m.add_function(wrap_pyfunction!(teichmuller, m)?)?;
    m.add_function(wrap_pyfunction!(kernel, m)?)?;
    m.add_function(wrap_pyfunction!(universal_poly, m)?)?;
    m.add_function(wrap_pyfunction!(bar_homology, m)?)?;
    m.add_function(wrap_pyfunction!(cobar_homology, m)?)?;
    m.add_function(wrap_pyfunction!(rees, m)?)?;
    m.add_function(wrap_pyfunction!(drinfeld, m)?)?;
    m.add_function(wrap_pyfunction!(day_tensor, m)?)?;
    m.add_function(wrap_pyfunction!(associated_graded, m)?)?;
    m.add_function(wrap_pyfunction!(degree_filtration, m)?)?;
    Ok(())
}
