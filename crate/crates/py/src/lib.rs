use pyo3::exceptions::{PyRuntimeError, PyTimeoutError, PyValueError};
use pyo3::prelude::*;

use spl_core::catalog::{build, ConfigId, NamedIdeal};
use spl_core::groebner::Budget;
use spl_core::hilbert::{alpha, hilbert_series};
use spl_core::idealops::IdealHandle;
use spl_core::polyexpr::{parse_poly, parse_sid, print_poly};
use spl_core::polyring::{Polynomial as CorePoly, Ring};
use spl_core::symbolic::{alpha_symbolic_with, symbolic_power_with, SandwichOptions, Strategy};
use spl_core::verify::{self, IdealSpec};
use spl_core::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded(why) => PyTimeoutError::new_err(why),
        Error::Io { .. } | Error::UnitIdeal | Error::ZeroIdeal => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn budget(seconds: Option<f64>) -> Budget {
    Budget {
        seconds,
        ..Budget::default()
    }
}

/// A polynomial with exact rational coefficients.
#[pyclass(name = "Polynomial", module = "spl", frozen)]
#[derive(Clone)]
struct PyPolynomial {
    inner: CorePoly,
}

#[pymethods]
impl PyPolynomial {
    /// Parses `expr` over the given variables (grevlex order).
    #[new]
    fn new(expr: &str, variables: Vec<String>) -> PyResult<Self> {
        let ring = Ring::grevlex(&variables).map_err(to_py)?;
        let inner = parse_poly(expr, &ring).map_err(to_py)?;
        Ok(PyPolynomial { inner })
    }

    #[getter]
    fn degree(&self) -> Option<u32> {
        self.inner.degree()
    }

    fn __str__(&self) -> String {
        print_poly(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", print_poly(&self.inner))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// An ideal given by generators.
#[pyclass(name = "Ideal", module = "spl")]
struct PyIdeal {
    inner: IdealHandle,
}

#[pymethods]
impl PyIdeal {
    /// Resolves an ideal spec such as `sym:a3:2` or `pow:fermat_like:3:2`.
    #[staticmethod]
    #[pyo3(signature = (spec, budget_seconds=None))]
    fn from_spec(py: Python<'_>, spec: &str, budget_seconds: Option<f64>) -> PyResult<Self> {
        let spec: IdealSpec = spec.parse().map_err(to_py)?;
        let inner = py.allow_threads(|| verify::resolve(&spec, &budget(budget_seconds))).map_err(to_py)?;
        Ok(PyIdeal { inner })
    }

    /// Reads `.sid` text: a `ring ...` header then `gen ...` lines.
    #[staticmethod]
    fn from_sid(text: &str) -> PyResult<Self> {
        let f = parse_sid(text).map_err(to_py)?;
        let inner = IdealHandle::new(&f.ring, f.gens).map_err(to_py)?;
        Ok(PyIdeal { inner })
    }

    fn generators(&self) -> Vec<String> {
        self.inner.gens().iter().map(print_poly).collect()
    }

    /// Reduced Groebner basis.
    fn groebner_basis(&self, py: Python<'_>) -> PyResult<Vec<String>> {
        let gb = py.allow_threads(|| self.inner.gb().cloned()).map_err(to_py)?;
        Ok(gb.basis().iter().map(print_poly).collect())
    }

    fn contains(&self, py: Python<'_>, expr: &str) -> PyResult<bool> {
        let f = parse_poly(expr, self.inner.ring()).map_err(to_py)?;
        py.allow_threads(|| self.inner.contains(&f)).map_err(to_py)
    }

    fn alpha(&self, py: Python<'_>) -> PyResult<u32> {
        py.allow_threads(|| alpha(&self.inner)).map_err(to_py)
    }

    /// Numerator of the Hilbert series of R/I, over `(1-t)^n`.
    fn hilbert_numerator(&self, py: Python<'_>) -> PyResult<String> {
        let hs = py.allow_threads(|| hilbert_series(&self.inner)).map_err(to_py)?;
        Ok(hs.numerator_string())
    }

    /// Degree of R/I.
    fn multiplicity(&self, py: Python<'_>) -> PyResult<String> {
        let hs = py.allow_threads(|| hilbert_series(&self.inner)).map_err(to_py)?;
        Ok(hs.multiplicity().to_string())
    }

    fn __len__(&self) -> usize {
        self.inner.gens().len()
    }
}

/// A catalog ideal: `fermat_like:<n>`, `a3` or `b3:<n>`.
#[pyclass(name = "CatalogIdeal", module = "spl")]
struct PyCatalogIdeal {
    inner: NamedIdeal,
}

#[pymethods]
impl PyCatalogIdeal {
    #[new]
    fn new(config: &str) -> PyResult<Self> {
        let id: ConfigId = config.parse().map_err(to_py)?;
        Ok(PyCatalogIdeal {
            inner: build(id).map_err(to_py)?,
        })
    }

    #[getter]
    fn config(&self) -> String {
        self.inner.id.to_string()
    }

    fn ideal(&self) -> PyIdeal {
        PyIdeal {
            inner: self.inner.ideal(),
        }
    }

    fn components(&self) -> Vec<Vec<String>> {
        self.inner
            .components
            .iter()
            .map(|c| c.gens().iter().map(print_poly).collect())
            .collect()
    }

    #[pyo3(signature = (m, budget_seconds=None))]
    fn symbolic_power(&self, py: Python<'_>, m: u32, budget_seconds: Option<f64>) -> PyResult<PyIdeal> {
        let sp = py
            .allow_threads(|| symbolic_power_with(&self.inner, m, &budget(budget_seconds)))
            .map_err(to_py)?;
        Ok(PyIdeal {
            inner: sp.ideal().expect("full mode").clone(),
        })
    }

    /// Bounds `(lower, upper)` for alpha of the m-th symbolic power.
    #[pyo3(signature = (m, strategy="exact", bezout=false, budget_seconds=None))]
    fn alpha_symbolic(
        &self,
        py: Python<'_>,
        m: u32,
        strategy: &str,
        bezout: bool,
        budget_seconds: Option<f64>,
    ) -> PyResult<(u32, u32)> {
        let strategy: Strategy = strategy.parse().map_err(to_py)?;
        let mut opts = SandwichOptions::verified();
        opts.bezout = bezout;
        let a = py
            .allow_threads(|| alpha_symbolic_with(&self.inner, m, strategy, &opts, &budget(budget_seconds)))
            .map_err(to_py)?;
        Ok((a.lower, a.upper))
    }

    fn __repr__(&self) -> String {
        format!("CatalogIdeal('{}')", self.inner.id)
    }
}

/// Decides `left ⊆ right`; returns `(holds, witness)`.
#[pyfunction]
#[pyo3(signature = (left, right, budget_seconds=None))]
fn contains(py: Python<'_>, left: &str, right: &str, budget_seconds: Option<f64>) -> PyResult<(bool, Option<String>)> {
    let l: IdealSpec = left.parse().map_err(to_py)?;
    let r: IdealSpec = right.parse().map_err(to_py)?;
    let c = py
        .allow_threads(|| verify::check_containment(&l, &r, &budget(budget_seconds)))
        .map_err(to_py)?;
    Ok((c.holds, c.witness.as_ref().map(print_poly)))
}

/// Regenerates the summary tables; returns the JSON report.
#[pyfunction]
fn tables(py: Python<'_>) -> PyResult<String> {
    let r = py.allow_threads(|| verify::reproduce_tables(&Budget::default())).map_err(to_py)?;
    Ok(r.to_json())
}

/// Checks the claimed resolution of a Fermat-like ideal; returns the JSON report.
#[pyfunction]
fn resolution_check(py: Python<'_>, n: u32) -> PyResult<String> {
    let r = py.allow_threads(|| verify::resolution_check_fermat_like(n)).map_err(to_py)?;
    Ok(r.to_json())
}

#[pymodule]
fn spl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyIdeal>()?;
    m.add_class::<PyCatalogIdeal>()?;
    m.add_function(wrap_pyfunction!(contains, m)?)?;
    m.add_function(wrap_pyfunction!(tables, m)?)?;
    m.add_function(wrap_pyfunction!(resolution_check, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
