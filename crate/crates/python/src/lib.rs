//! Python bindings: `Ring`, `Code` and the weight and transform functions.

use std::sync::Arc;

use mspotty::macwilliams::dual_enumerator;
use mspotty::{ByteLayout, Code, EnumeratorPoly, FiniteRing, Limits, RingElement};
use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn elements(v: &[u32]) -> Vec<RingElement> {
    v.iter().map(|&x| RingElement(x)).collect()
}

fn coeffs(p: &EnumeratorPoly) -> Vec<BigInt> {
    p.coeffs().to_vec()
}

fn layout(n: usize, b: usize, t: usize) -> PyResult<ByteLayout> {
    ByteLayout::new(n, b, t).map_err(value_error)
}

#[pyclass(name = "Ring", module = "pymspotty", frozen)]
struct PyRing(Arc<FiniteRing>);

impl PyRing {
    fn element(&self, x: u32) -> PyResult<RingElement> {
        let e = RingElement(x);
        if self.0.contains(e) {
            Ok(e)
        } else {
            Err(PyValueError::new_err(format!("{x} is not an element of {}", self.0.spec())))
        }
    }
}

#[pymethods]
impl PyRing {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyRing(Arc::new(FiniteRing::parse(spec).map_err(value_error)?)))
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn spec(&self) -> String {
        self.0.spec().to_string()
    }

    #[getter]
    fn char_modulus(&self) -> u32 {
        self.0.char_modulus()
    }

    fn char_exponents(&self) -> Vec<u32> {
        self.0.char_exponents().to_vec()
    }

    fn add(&self, x: u32, y: u32) -> PyResult<u32> {
        Ok(self.0.add(self.element(x)?, self.element(y)?).0)
    }

    fn mul(&self, x: u32, y: u32) -> PyResult<u32> {
        Ok(self.0.mul(self.element(x)?, self.element(y)?).0)
    }

    fn neg(&self, x: u32) -> PyResult<u32> {
        Ok(self.0.neg(self.element(x)?).0)
    }

    fn units(&self) -> Vec<u32> {
        self.0.units().into_iter().map(|u| u.0).collect()
    }

    fn is_generating_character(&self) -> bool {
        self.0.verify_generating_character()
    }

    fn __repr__(&self) -> String {
        format!("Ring('{}')", self.0.spec())
    }
}

#[pyclass(name = "Code", module = "pymspotty", frozen)]
struct PyCode(Code);

#[pymethods]
impl PyCode {
    /// Span of `rows` over `ring` with `n` bytes of length `b`.
    #[new]
    #[pyo3(signature = (ring, n, b, t, rows, max_sweep = None))]
    fn new(ring: &PyRing, n: usize, b: usize, t: usize, rows: Vec<Vec<u32>>, max_sweep: Option<u64>) -> PyResult<Self> {
        let limits = max_sweep.map(Limits::with_max_sweep).unwrap_or_default();
        Code::from_indices(ring.0.clone(), layout(n, b, t)?, &rows, &limits)
            .map(PyCode)
            .map_err(value_error)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    #[getter]
    fn ring(&self) -> PyRing {
        PyRing(self.0.ring_arc().clone())
    }

    #[getter]
    fn layout(&self) -> (usize, usize, usize) {
        let l = self.0.layout();
        (l.n(), l.b(), l.t())
    }

    fn words(&self) -> Vec<Vec<u32>> {
        self.0.words().map(|w| w.iter().map(|x| x.0).collect()).collect()
    }

    fn __contains__(&self, word: Vec<u32>) -> bool {
        self.0.contains(&elements(&word))
    }

    fn with_t(&self, t: usize) -> PyResult<Self> {
        self.0.with_t(t).map(PyCode).map_err(value_error)
    }

    #[pyo3(signature = (max_sweep = None))]
    fn dual(&self, py: Python<'_>, max_sweep: Option<u64>) -> PyResult<Self> {
        let limits = max_sweep.map(Limits::with_max_sweep).unwrap_or_default();
        py.detach(|| self.0.dual(&limits)).map(PyCode).map_err(value_error)
    }

    /// `[(alphas, count), ...]` sorted by weight vector.
    fn distribution(&self) -> Vec<(Vec<u32>, BigUint)> {
        mspotty::distribution(&self.0)
            .iter()
            .map(|(a, c)| (a.alphas().to_vec(), c.clone()))
            .collect()
    }

    /// Coefficients of W(z), lowest power first.
    fn enumerator(&self) -> Vec<BigInt> {
        coeffs(&mspotty::enumerator(&mspotty::distribution(&self.0)))
    }

    /// Coefficients of W⊥(z) through the MacWilliams transform.
    fn dual_enumerator(&self) -> PyResult<Vec<BigInt>> {
        dual_enumerator(&self.0).map(|p| coeffs(&p)).map_err(value_error)
    }

    #[pyo3(signature = (max_sweep = None))]
    fn verify<'py>(&self, py: Python<'py>, max_sweep: Option<u64>) -> PyResult<Bound<'py, PyDict>> {
        let limits = max_sweep.map(Limits::with_max_sweep).unwrap_or_default();
        let report = py.detach(|| mspotty::verify_identity(&self.0, &limits)).map_err(value_error)?;
        let d = PyDict::new(py);
        d.set_item("size", report.card.clone())?;
        d.set_item("dual_size", report.dual_card.clone())?;
        d.set_item("enumerator", coeffs(&report.weight_enumerator))?;
        d.set_item("via_transform", coeffs(&report.via_transform))?;
        d.set_item("via_dual", coeffs(&report.via_dual))?;
        d.set_item("holds", report.holds())?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("Code(ring='{}', {}, size={})", self.0.ring().spec(), self.0.layout(), self.0.len())
    }
}

#[pyfunction]
fn s_value(order: u64, b: usize, k: usize, j: usize) -> PyResult<BigInt> {
    mspotty::s_value(order, b, k, j).map_err(value_error)
}

/// `[V_0, ..., V_b]`, each as coefficients lowest power first.
#[pyfunction]
fn v_table(order: u64, b: usize, t: usize) -> PyResult<Vec<Vec<BigInt>>> {
    let vt = mspotty::v_table(order, b, t).map_err(value_error)?;
    Ok(vt.polys().iter().map(coeffs).collect())
}

#[pyfunction]
fn rt_weight(byte: Vec<u32>) -> usize {
    mspotty::rt_weight(&elements(&byte))
}

#[pyfunction]
fn mspotty_weight(word: Vec<u32>, n: usize, b: usize, t: usize) -> PyResult<usize> {
    mspotty::mspotty_weight(&elements(&word), &layout(n, b, t)?).map_err(value_error)
}

#[pyfunction]
fn weight_vector(word: Vec<u32>, n: usize, b: usize) -> PyResult<Vec<u32>> {
    mspotty::weight_vector(&elements(&word), &layout(n, b, 1)?)
        .map(|w| w.alphas().to_vec())
        .map_err(value_error)
}

#[pyfunction]
fn mspotty_distance(ring: &PyRing, c: Vec<u32>, v: Vec<u32>, n: usize, b: usize, t: usize) -> PyResult<usize> {
    mspotty::mspotty_distance(&ring.0, &elements(&c), &elements(&v), &layout(n, b, t)?).map_err(value_error)
}

#[pymodule]
fn pymspotty(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyCode>()?;
    m.add_function(wrap_pyfunction!(s_value, m)?)?;
    m.add_function(wrap_pyfunction!(v_table, m)?)?;
    m.add_function(wrap_pyfunction!(rt_weight, m)?)?;
    m.add_function(wrap_pyfunction!(mspotty_weight, m)?)?;
    m.add_function(wrap_pyfunction!(weight_vector, m)?)?;
    m.add_function(wrap_pyfunction!(mspotty_distance, m)?)?;
    Ok(())
}
