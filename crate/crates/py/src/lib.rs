//! Python bindings. Field elements cross the boundary in their text
//! encoding ("0", "3", "t^17"); structured reports come back as plain
//! dicts and lists.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use hullforge::eaqecc::{self, EaqeccParams};
use hullforge::hullbound;
use hullforge::io::fixtures::{self, Fixture};
use hullforge::io::tables;
use hullforge::{CodeDocument, Elem, EvalSet, FieldCtx, LinearCode, TwistedAgCode};

fn err(e: hullforge::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn field_for(q: u32) -> PyResult<Arc<FieldCtx>> {
    FieldCtx::for_q(q).map_err(err)
}

/// GF(q²) with its Conway-polynomial primitive element θ.
#[pyclass(name = "Field", module = "hullforge_py", frozen)]
struct PyField {
    inner: Arc<FieldCtx>,
}

impl PyField {
    fn parse(&self, s: &str) -> PyResult<Elem> {
        self.inner.parse_elem(s).map_err(err)
    }

    fn fmt(&self, x: Elem) -> String {
        self.inner.format_elem(x)
    }
}

#[pymethods]
impl PyField {
    #[new]
    fn new(q: u32) -> PyResult<Self> {
        Ok(PyField { inner: field_for(q)? })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn size(&self) -> u32 {
        self.inner.size()
    }

    /// Modulus coefficients over GF(p), constant term first.
    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.inner.modulus().to_vec()
    }

    fn elements(&self) -> Vec<String> {
        self.inner.elements().map(|x| self.fmt(x)).collect()
    }

    fn add(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.fmt(self.inner.add(self.parse(a)?, self.parse(b)?)))
    }

    fn sub(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.fmt(self.inner.sub(self.parse(a)?, self.parse(b)?)))
    }

    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.fmt(self.inner.mul(self.parse(a)?, self.parse(b)?)))
    }

    fn inv(&self, a: &str) -> PyResult<String> {
        Ok(self.fmt(self.inner.inv(self.parse(a)?).map_err(err)?))
    }

    fn pow(&self, a: &str, e: u64) -> PyResult<String> {
        Ok(self.fmt(self.inner.pow(self.parse(a)?, e)))
    }

    fn conjugate(&self, a: &str) -> PyResult<String> {
        Ok(self.fmt(self.inner.conjugate(self.parse(a)?)))
    }

    fn norm(&self, a: &str) -> PyResult<String> {
        Ok(self.fmt(self.inner.norm(self.parse(a)?)))
    }

    fn solve_norm(&self, c: &str) -> PyResult<String> {
        Ok(self.fmt(self.inner.solve_norm(self.parse(c)?).map_err(err)?))
    }

    fn mult_order(&self, a: &str) -> PyResult<u64> {
        self.inner.mult_order(self.parse(a)?).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Field(q={})", self.inner.q())
    }
}

#[pyclass(name = "EvalSet", module = "hullforge_py", frozen)]
struct PyEvalSet {
    inner: EvalSet,
}

#[pymethods]
impl PyEvalSet {
    #[staticmethod]
    fn subgroup(q: u32, n: usize) -> PyResult<Self> {
        Ok(PyEvalSet { inner: EvalSet::subgroup(&field_for(q)?, n).map_err(err)? })
    }

    #[staticmethod]
    fn affine(q: u32, n0: usize) -> PyResult<Self> {
        Ok(PyEvalSet { inner: EvalSet::affine(&field_for(q)?, n0).map_err(err)? })
    }

    #[staticmethod]
    fn cosets(q: u32, s: usize, t: usize) -> PyResult<Self> {
        Ok(PyEvalSet { inner: EvalSet::cosets(&field_for(q)?, s, t).map_err(err)? })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.field().q()
    }

    #[getter]
    fn family<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.family())
    }

    fn points(&self) -> Vec<String> {
        let f = self.inner.field();
        self.inner.points().iter().map(|&x| f.format_elem(x)).collect()
    }

    fn residues(&self) -> PyResult<Vec<String>> {
        let f = self.inner.field();
        Ok(self.inner.residues().map_err(err)?.into_iter().map(|x| f.format_elem(x)).collect())
    }

    fn twist_vector(&self) -> PyResult<Vec<String>> {
        let f = self.inner.field();
        Ok(self.inner.twist_vector().map_err(err)?.into_iter().map(|x| f.format_elem(x)).collect())
    }

    /// The exponent N of the nonzero points.
    fn exponent(&self) -> PyResult<u64> {
        hullbound::compute_n(&self.inner).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("EvalSet(q={}, {:?}, n={})", self.q(), self.inner.family(), self.inner.len())
    }
}

/// A linear code over GF(q²), optionally remembering the construction it came from.
#[pyclass(name = "Code", module = "hullforge_py", frozen)]
struct PyCode {
    code: LinearCode,
    twisted: Option<TwistedAgCode>,
}

#[pymethods]
impl PyCode {
    /// v·C_L(D, kO) with k = deg_g.
    #[staticmethod]
    fn build(evalset: &PyEvalSet, deg_g: usize) -> PyResult<Self> {
        let t = TwistedAgCode::build(&evalset.inner, deg_g).map_err(err)?;
        Ok(PyCode { code: t.code().clone(), twisted: Some(t) })
    }

    /// Parses a JSON or text code document.
    #[staticmethod]
    fn from_document(text: &str) -> PyResult<Self> {
        let doc = CodeDocument::parse(text).map_err(err)?;
        let twisted = doc.twisted_code().map_err(err)?;
        Ok(PyCode { code: doc.linear_code().map_err(err)?, twisted })
    }

    /// The code generated by (I₁₁ | A) for fixture "a1" or "a2".
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let fx = Fixture::from_name(name).ok_or_else(|| PyValueError::new_err(format!("unknown fixture {name:?}")))?;
        Ok(PyCode { code: fx.code().map_err(err)?, twisted: None })
    }

    /// Generator rows from text-encoded elements.
    #[staticmethod]
    fn from_rows(q: u32, rows: Vec<Vec<String>>) -> PyResult<Self> {
        let f = field_for(q)?;
        let cols = rows.first().map_or(0, Vec::len);
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| f.parse_elem(s)).collect::<hullforge::Result<Vec<_>>>())
            .collect::<hullforge::Result<Vec<_>>>()
            .map_err(err)?;
        let m = hullforge::Mat::from_rows(f, cols, parsed).map_err(err)?;
        Ok(PyCode { code: LinearCode::new(m).map_err(err)?, twisted: None })
    }

    #[getter]
    fn n(&self) -> usize {
        self.code.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.code.k()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.code.field().q()
    }

    #[getter]
    fn distance(&self) -> Option<usize> {
        self.code.distance().map(|c| c.d)
    }

    fn generator(&self) -> Vec<Vec<String>> {
        let f = self.code.field();
        self.code.generator().row_vecs().iter().map(|r| r.iter().map(|&x| f.format_elem(x)).collect()).collect()
    }

    fn hull_dim(&self) -> usize {
        self.code.hull_dim()
    }

    /// Hull dimension via explicit subspace intersection.
    fn hull_dim_oracle(&self) -> usize {
        self.code.hull_basis_oracle().rows()
    }

    fn hermitian_dual(&self) -> PyCode {
        PyCode { code: self.code.hermitian_dual(), twisted: None }
    }

    /// True iff every k×k minor is nonsingular; raises when over budget.
    fn is_mds(&self) -> PyResult<bool> {
        self.code.is_mds_minors(hullforge::Budget::from_env()).map_err(err)
    }

    /// N, L(N), L(q²−1), closed form and exact hull; only for constructed codes.
    fn hull_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let t = self
            .twisted
            .as_ref()
            .ok_or_else(|| PyValueError::new_err("hull_report needs a constructed code"))?;
        to_py(py, &hullbound::hull_report(t).map_err(err)?)
    }

    fn reduce_hull(&self, target: usize) -> PyResult<PyCode> {
        Ok(PyCode { code: eaqecc::reduce_hull(&self.code, target).map_err(err)?, twisted: None })
    }

    /// (Q₁, Q₂) from this code and its Hermitian dual.
    fn derive_pair(&self) -> PyResult<(PyEaqecc, PyEaqecc)> {
        let (a, b) = eaqecc::derive_pair(&self.code).map_err(err)?;
        Ok((PyEaqecc { inner: a }, PyEaqecc { inner: b }))
    }

    fn to_document(&self, format: &str) -> PyResult<String> {
        let doc = match &self.twisted {
            Some(t) => CodeDocument::from_twisted(t),
            None => CodeDocument::from_linear(&self.code),
        };
        match format {
            "json" => Ok(doc.to_json()),
            "text" => Ok(doc.to_text()),
            other => Err(PyValueError::new_err(format!("unknown format {other:?}"))),
        }
    }

    fn __repr__(&self) -> String {
        match self.code.distance() {
            Some(c) => format!("Code([{},{},{}]_{})", self.code.n(), self.code.k(), c.d, self.code.field().size()),
            None => format!("Code([{},{}]_{})", self.code.n(), self.code.k(), self.code.field().size()),
        }
    }
}

#[pyclass(name = "EaqeccParams", module = "hullforge_py", frozen)]
struct PyEaqecc {
    inner: EaqeccParams,
}

#[pymethods]
impl PyEaqecc {
    #[getter]
    fn q(&self) -> u32 {
        self.inner.q
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn kappa(&self) -> usize {
        self.inner.kappa
    }

    #[getter]
    fn delta(&self) -> usize {
        self.inner.delta
    }

    #[getter]
    fn c(&self) -> usize {
        self.inner.c
    }

    #[getter]
    fn mds(&self) -> bool {
        self.inner.mds
    }

    /// Per-bound slack as (numerator, denominator), None where inapplicable.
    #[getter]
    fn slack(&self) -> Vec<Option<(i64, i64)>> {
        self.inner.slack.iter().map(|s| s.map(|s| (s.num, s.den))).collect()
    }

    fn tuple(&self) -> (usize, usize, usize, usize) {
        self.inner.tuple()
    }

    fn propagate(&self, ell: usize) -> Vec<PyEaqecc> {
        eaqecc::propagate(&self.inner, ell).into_iter().map(|inner| PyEaqecc { inner }).collect()
    }

    fn __eq__(&self, other: &PyEaqecc) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyfunction]
fn derive_eaqecc(n: usize, k: usize, d: usize, ell: usize, q: u32) -> PyResult<PyEaqecc> {
    Ok(PyEaqecc { inner: eaqecc::derive_eaqecc(n, k, d, ell, q).map_err(err)? })
}

#[pyfunction]
fn classify_mds(q: u32, n: usize, kappa: usize, delta: usize, c: usize) -> PyEaqecc {
    PyEaqecc { inner: eaqecc::classify_mds(EaqeccParams::raw(q, n, kappa, delta, c)) }
}

#[pyfunction]
fn ghw_shorten(q: u32, n: usize, delta: usize, c: usize) -> PyResult<PyEaqecc> {
    Ok(PyEaqecc { inner: eaqecc::ghw_shorten(q, n, delta, c).map_err(err)? })
}

/// Returns (ℓ, case).
#[pyfunction]
fn ell_closed_form(q: usize, n0: usize, k0: usize, q0: usize, q1: usize) -> PyResult<(usize, u8)> {
    let (ell, case) = hullbound::ell_closed_form(q, n0, k0, q0, q1).map_err(err)?;
    Ok((ell, case.0))
}

#[pyfunction]
fn compute_l(modulus: u64, deg_g: usize, n: usize, q: u64) -> Vec<u64> {
    hullbound::compute_l(modulus, deg_g, n, q).into_iter().collect()
}

/// Rows of table 0, 1 or 2 as dicts.
#[pyfunction]
fn table(py: Python<'_>, which: u8) -> PyResult<Bound<'_, PyAny>> {
    match which {
        0 => to_py(py, &tables::table0().map_err(err)?),
        1 => to_py(py, &tables::table1().map_err(err)?),
        2 => to_py(py, &tables::table2().map_err(err)?),
        _ => Err(PyValueError::new_err("table must be 0, 1 or 2")),
    }
}

#[pyfunction]
#[pyo3(signature = (name, samples = 10_000, seed = 2024))]
fn verify_fixture<'py>(py: Python<'py>, name: &str, samples: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let fx = Fixture::from_name(name).ok_or_else(|| PyValueError::new_err(format!("unknown fixture {name:?}")))?;
    let report = fixtures::verify(fx, samples, seed).map_err(err)?;
    let out = to_py(py, &report)?;
    out.set_item("passed", report.passed())?;
    Ok(out)
}

#[pymodule]
fn hullforge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyEvalSet>()?;
    m.add_class::<PyCode>()?;
    m.add_class::<PyEaqecc>()?;
    m.add_function(wrap_pyfunction!(derive_eaqecc, m)?)?;
    m.add_function(wrap_pyfunction!(classify_mds, m)?)?;
    m.add_function(wrap_pyfunction!(ghw_shorten, m)?)?;
    m.add_function(wrap_pyfunction!(ell_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(compute_l, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(verify_fixture, m)?)?;
    Ok(())
}
