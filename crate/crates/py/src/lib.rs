//! Python bindings for `wittmaps`.

use std::sync::Arc;

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use wittmaps::commpoly::Poly;
use wittmaps::envelope::{self, Mode};
use wittmaps::expr::parse_rational;
use wittmaps::hilbert::{closed_form as rust_closed_form, measure, Family};
use wittmaps::morphlab::EnvMorphism;
use wittmaps::scalars::{RatFunc, Rational};
use wittmaps::twisted::{self, TwistedAlgebra as RustAlgebra};
use wittmaps::veritas::{self, Config};

type Q = Rational;

fn err(e: wittmaps::Error) -> PyErr {
    match e {
        wittmaps::Error::UnknownClaim(_) | wittmaps::Error::UnknownLabel(_) => PyKeyError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn mode(s: &str) -> PyResult<Mode> {
    match s {
        "wplus" => Ok(Mode::WPlus),
        "witt" => Ok(Mode::Witt),
        _ => Err(PyValueError::new_err(format!("mode must be 'wplus' or 'witt', not {s:?}"))),
    }
}

fn json_to_py<'py>(py: Python<'py>, s: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (s,))
}

/// Element of the enveloping algebra over the rationals, kept in PBW normal form.
#[pyclass(name = "EnvElement", module = "wittmaps_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyEnv {
    inner: envelope::EnvElement<Q>,
}

#[pymethods]
impl PyEnv {
    #[new]
    #[pyo3(signature = (expr, mode = "wplus"))]
    fn new(expr: &str, mode: &str) -> PyResult<Self> {
        Ok(PyEnv { inner: envelope::EnvElement::parse(expr, self::mode(mode)?).map_err(err)? })
    }

    #[getter]
    fn mode(&self) -> String {
        self.inner.mode().to_string()
    }

    /// Degree if homogeneous, else None.
    fn degree(&self) -> Option<i64> {
        self.inner.homogeneous_degree()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn bracket(&self, other: &PyEnv) -> PyResult<PyEnv> {
        Ok(PyEnv { inner: self.inner.bracket(&other.inner).map_err(err)? })
    }

    fn __add__(&self, other: &PyEnv) -> PyResult<PyEnv> {
        Ok(PyEnv { inner: self.inner.add(&other.inner).map_err(err)? })
    }

    fn __sub__(&self, other: &PyEnv) -> PyResult<PyEnv> {
        Ok(PyEnv { inner: self.inner.sub(&other.inner).map_err(err)? })
    }

    fn __mul__(&self, other: &PyEnv) -> PyResult<PyEnv> {
        Ok(PyEnv { inner: self.inner.mul(&other.inner).map_err(err)? })
    }

    fn __neg__(&self) -> PyEnv {
        PyEnv { inner: self.inner.neg() }
    }

    fn __eq__(&self, other: &PyEnv) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("EnvElement('{}', mode='{}')", self.inner, self.inner.mode())
    }
}

enum MapInner {
    Rational(EnvMorphism<Q>),
    Generic(EnvMorphism<RatFunc>),
}

/// `lambda_a` (rational or generic `a`) or `phi`.
#[pyclass(name = "Morphism", module = "wittmaps_py", frozen)]
struct PyMorphism {
    inner: MapInner,
    mode: Mode,
}

#[pymethods]
impl PyMorphism {
    /// `kind` is "lambda" or "phi"; `a` is "generic" or a rational literal.
    #[new]
    #[pyo3(signature = (kind, a = "generic", mode = "wplus"))]
    fn new(kind: &str, a: &str, mode: &str) -> PyResult<Self> {
        let m = self::mode(mode)?;
        let inner = match (kind, a) {
            ("phi", _) => MapInner::Rational(EnvMorphism::phi(m)),
            ("lambda", "generic") => MapInner::Generic(EnvMorphism::lambda_generic(m)),
            ("lambda", a) => MapInner::Rational(EnvMorphism::lambda(parse_rational(a).map_err(err)?, m)),
            _ => return Err(PyValueError::new_err(format!("unknown map {kind:?}"))),
        };
        Ok(PyMorphism { inner, mode: m })
    }

    #[getter]
    fn name(&self) -> String {
        match &self.inner {
            MapInner::Rational(m) => m.name(),
            MapInner::Generic(m) => m.name(),
        }
    }

    /// Image of an expression (or an `EnvElement`), as text in x, y, z.
    fn eval(&self, element: &Bound<'_, PyAny>) -> PyResult<String> {
        let text = match element.cast::<PyEnv>() {
            Ok(e) => e.get().inner.to_string(),
            Err(_) => element.extract::<String>()?,
        };
        let out = match &self.inner {
            MapInner::Rational(m) => m.eval(&envelope::EnvElement::parse(&text, self.mode).map_err(err)?).map_err(err)?.to_string(),
            MapInner::Generic(m) => m.eval(&envelope::EnvElement::parse(&text, self.mode).map_err(err)?).map_err(err)?.to_string(),
        };
        Ok(out)
    }

    /// Kernel at degree `n` as a dict: dimension, image_rank, basis, excluded, verified.
    fn kernel<'py>(&self, py: Python<'py>, n: i64) -> PyResult<Bound<'py, PyAny>> {
        let v = match &self.inner {
            MapInner::Rational(m) => {
                let k = m.kernel_at_degree(n).map_err(err)?;
                (k.dimension, k.image_rank, k.basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(), k.excluded, k.verified)
            }
            MapInner::Generic(m) => {
                let k = m.kernel_at_degree(n).map_err(err)?;
                (k.dimension, k.image_rank, k.basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(), k.excluded, k.verified)
            }
        };
        let d = pyo3::types::PyDict::new(py);
        d.set_item("degree", n)?;
        d.set_item("dimension", v.0)?;
        d.set_item("image_rank", v.1)?;
        d.set_item("basis", v.2)?;
        d.set_item("excluded", v.3.iter().map(|f| f.fmt_with("a")).collect::<Vec<_>>())?;
        d.set_item("verified", v.4)?;
        Ok(d.into_any())
    }
}

/// One of the twisted rings `S`, `S^`, `Q`, `R`, `R^` over the rationals.
#[pyclass(name = "TwistedAlgebra", module = "wittmaps_py", frozen)]
struct PyAlgebra {
    inner: Arc<RustAlgebra<Q>>,
}

impl PyAlgebra {
    fn poly(&self, s: &str) -> PyResult<Poly<Q>> {
        self.inner.parse(s).map_err(err)
    }
}

#[pymethods]
impl PyAlgebra {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        let inner = match name {
            "S" => twisted::algebra_s(),
            "S^" | "S_hat" => twisted::algebra_s_hat(),
            "Q" => twisted::algebra_q(),
            "R" => twisted::algebra_r(),
            "R^" | "R_hat" => twisted::algebra_r_hat(),
            _ => return Err(PyValueError::new_err(format!("unknown algebra {name:?}"))),
        };
        Ok(PyAlgebra { inner })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    /// Twisted product `f * mu^{deg f}(g)` of two commutative expressions.
    fn mul(&self, f: &str, g: &str) -> PyResult<String> {
        Ok(self.inner.mul(&self.poly(f)?, &self.poly(g)?).map_err(err)?.to_string())
    }

    fn commutator(&self, f: &str, g: &str) -> PyResult<String> {
        Ok(self.inner.commutator(&self.poly(f)?, &self.poly(g)?).map_err(err)?.to_string())
    }

    /// Evaluates an expression whose products are twisted (`u, v, w` name the generators).
    fn parse_twisted(&self, expr: &str) -> PyResult<String> {
        Ok(self.inner.parse_twisted(expr).map_err(err)?.to_string())
    }

    fn is_normal(&self, f: &str) -> PyResult<bool> {
        Ok(self.inner.is_normal(&self.poly(f)?).map_err(err)?.normal)
    }

    fn __repr__(&self) -> String {
        format!("TwistedAlgebra('{}')", self.inner.name())
    }
}

#[pyfunction]
#[pyo3(signature = (expr, mode = "wplus"))]
fn straighten(expr: &str, mode: &str) -> PyResult<String> {
    Ok(envelope::EnvElement::<Q>::parse(expr, self::mode(mode)?).map_err(err)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (x, k, y, mode = "witt"))]
fn ad_power(x: &str, k: usize, y: &str, mode: &str) -> PyResult<String> {
    let m = self::mode(mode)?;
    let (x, y) = (
        envelope::EnvElement::<Q>::parse(x, m).map_err(err)?,
        envelope::EnvElement::<Q>::parse(y, m).map_err(err)?,
    );
    Ok(envelope::ad_power(&x, k, &y).map_err(err)?.to_string())
}

/// Graded dimensions of a family in degrees `0..=degree`.
#[pyfunction]
fn hilbert(family: &str, degree: usize) -> PyResult<Vec<usize>> {
    let f: Family = family.parse().map_err(err)?;
    Ok(measure(f, degree).map_err(err)?.coefficients)
}

#[pyfunction]
fn closed_form(family: &str) -> PyResult<Option<String>> {
    let f: Family = family.parse().map_err(err)?;
    Ok(rust_closed_form(f).map(|s| s.to_string()))
}

fn config(max_degree: Option<i64>, skip_witt: bool) -> Config {
    Config { max_degree, skip_witt, ..Config::default() }
}

#[pyfunction]
#[pyo3(signature = (id, max_degree = None, skip_witt = false))]
fn run_claim<'py>(py: Python<'py>, id: &str, max_degree: Option<i64>, skip_witt: bool) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| veritas::run_claim(id, Some(&config(max_degree, skip_witt)))).map_err(err)?;
    json_to_py(py, &serde_json::to_string(&r).expect("json"))
}

#[pyfunction]
#[pyo3(signature = (max_degree = None, skip_witt = false))]
fn run_all<'py>(py: Python<'py>, max_degree: Option<i64>, skip_witt: bool) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| veritas::run_all(&config(max_degree, skip_witt)));
    json_to_py(py, &r.to_json())
}

#[pyfunction]
fn claim_ids() -> Vec<&'static str> {
    veritas::claim_ids()
}

#[pyfunction]
fn geometry_report<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    let g = wittmaps::geomcheck::geometry_report().map_err(err)?;
    json_to_py(py, &serde_json::to_string(&g).expect("json"))
}

#[pymodule]
fn wittmaps_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEnv>()?;
    m.add_class::<PyMorphism>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(straighten, m)?)?;
    m.add_function(wrap_pyfunction!(ad_power, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(run_claim, m)?)?;
    m.add_function(wrap_pyfunction!(run_all, m)?)?;
    m.add_function(wrap_pyfunction!(claim_ids, m)?)?;
    m.add_function(wrap_pyfunction!(geometry_report, m)?)?;
    Ok(())
}
