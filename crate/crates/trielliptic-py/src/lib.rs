use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde::Serialize;
use serde_json::Value;

use trielliptic::census::{census as run_census, CensusOptions};
use trielliptic::geometry::{analyze, euler_holds, verify_family as run_verify_family};
use trielliptic::git::{classify_nonstable, dimension_table as run_dimension_table, enumerate_maximal_families, Sign};
use trielliptic::lattice::catalog::catalog;
use trielliptic::lattice::eichler::eichler_orbit_check as run_eichler;
use trielliptic::lattice::{root_system, theta_counts, IntegralLattice};
use trielliptic::linalg::IntMatrix;
use trielliptic::poly::{parse_rat, BiForm as CoreForm};
use trielliptic::qform::{discriminant_form, gauss_sum, isotropic_census, picard_rank, sigma_form, FiniteQuadraticForm};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_bound_py_any(py)?,
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_bound_py_any(py)?,
            (None, Some(u)) => u.into_bound_py_any(py)?,
            _ => n.as_f64().unwrap_or(f64::NAN).into_bound_py_any(py)?,
        },
        Value::String(s) => s.into_bound_py_any(py)?,
        Value::Array(a) => {
            let items = a.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_any()
        }
        Value::Object(m) => {
            let d = PyDict::new(py);
            for (k, x) in m {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn ser<'py>(py: Python<'py>, x: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &serde_json::to_value(x).map_err(|e| PyRuntimeError::new_err(e.to_string()))?)
}

/// A (2,3) form on P1 x P2, given as `coeff u v w` lines.
#[pyclass(name = "BiForm", frozen)]
struct PyBiForm {
    inner: CoreForm,
}

#[pymethods]
impl PyBiForm {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyBiForm { inner: CoreForm::parse(text).map_err(value_err)? })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn euler_holds(&self) -> bool {
        euler_holds(&self.inner)
    }

    /// Torus-level stability verdict.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        ser(py, &classify_nonstable(&self.inner).map_err(value_err)?)
    }

    /// Fibers, branch locus, matching families and (optionally) corank at a point.
    #[pyo3(signature = (point=None))]
    fn analyze<'py>(&self, py: Python<'py>, point: Option<Vec<String>>) -> PyResult<Bound<'py, PyAny>> {
        let p = match point {
            Some(cs) => {
                let rs = cs
                    .iter()
                    .map(|c| parse_rat(c).ok_or_else(|| value_err(format!("bad rational {c}"))))
                    .collect::<PyResult<Vec<_>>>()?;
                Some(<[_; 5]>::try_from(rs).map_err(|_| value_err("point needs 5 coordinates"))?)
            }
            None => None,
        };
        ser(py, &analyze(&self.inner, p.as_ref()).map_err(value_err)?)
    }

    fn __repr__(&self) -> String {
        format!("BiForm({:?})", self.inner.to_text())
    }
}

/// Finite quadratic form with values in Q/2Z.
#[pyclass(name = "FiniteQuadraticForm", frozen)]
struct PyForm {
    inner: FiniteQuadraticForm,
}

#[pymethods]
impl PyForm {
    /// Discriminant form of an even integral Gram matrix.
    #[staticmethod]
    fn from_gram(gram: Vec<Vec<i64>>) -> PyResult<Self> {
        Ok(PyForm { inner: discriminant_form(&IntMatrix::from_i64(&gram)).map_err(value_err)? })
    }

    /// The discriminant form of Sigma_n, n in 1..=3.
    #[staticmethod]
    fn sigma(n: u8) -> PyResult<Self> {
        sigma_form(n).map(|inner| PyForm { inner }).ok_or_else(|| value_err("n must be 1, 2 or 3"))
    }

    fn order(&self) -> u64 {
        self.inner.order()
    }

    fn orders(&self) -> Vec<u64> {
        self.inner.orders.clone()
    }

    fn negate(&self) -> Self {
        PyForm { inner: self.inner.negate() }
    }

    fn is_isomorphic(&self, other: &PyForm) -> bool {
        self.inner.is_isomorphic(&other.inner)
    }

    fn gauss_sum(&self, m: i64) -> (f64, f64) {
        gauss_sum(m, &self.inner).eval()
    }

    fn picard_rank<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        ser(py, &picard_rank(&self.inner).map_err(value_err)?)
    }

    fn isotropic_census<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        ser(py, &isotropic_census(&self.inner))
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.to_json())
    }
}

/// Even integral lattice from the catalog or a Gram matrix.
#[pyclass(name = "Lattice", frozen)]
struct PyLattice {
    inner: IntegralLattice,
}

#[pymethods]
impl PyLattice {
    #[new]
    fn new(name: &str, gram: Vec<Vec<i64>>) -> PyResult<Self> {
        Ok(PyLattice { inner: IntegralLattice::from_i64(name, &gram).map_err(value_err)? })
    }

    /// Catalog lookup: A8, D16, E8, U(3), T(2), K3, L8, M(D16E8), ...
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        Ok(PyLattice { inner: catalog(name).map_err(value_err)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn det(&self) -> String {
        self.inner.det().to_string()
    }

    fn signature(&self) -> (usize, usize) {
        self.inner.signature()
    }

    fn gram(&self) -> PyResult<Vec<Vec<i64>>> {
        self.inner.gram_i64().map_err(value_err)
    }

    fn root_system(&self) -> PyResult<String> {
        Ok(root_system(&self.inner).map_err(value_err)?.to_string())
    }

    /// Vector counts at norms -2, -4, ..., -2k.
    fn theta_counts(&self, k: usize) -> PyResult<Vec<u64>> {
        theta_counts(&self.inner, k).map_err(value_err)
    }

    fn discriminant_form(&self) -> PyResult<PyForm> {
        Ok(PyForm { inner: self.inner.discriminant_form().map_err(value_err)? })
    }
}

#[pyfunction]
fn maximal_families<'py>(py: Python<'py>, sign: &str) -> PyResult<Bound<'py, PyAny>> {
    let sign = match sign {
        "nonpositive" => Sign::Nonpositive,
        "negative" => Sign::Negative,
        _ => return Err(value_err("sign must be 'nonpositive' or 'negative'")),
    };
    ser(py, &enumerate_maximal_families(sign).map_err(value_err)?)
}

#[pyfunction]
fn dimension_table<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    ser(py, &run_dimension_table().map_err(value_err)?)
}

#[pyfunction]
#[pyo3(signature = (label, samples=50, seed=7))]
fn verify_family<'py>(py: Python<'py>, label: &str, samples: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    ser(py, &run_verify_family(label, samples, seed).map_err(value_err)?)
}

#[pyfunction]
fn eichler_orbit_check<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    if !(4..=16).contains(&n) {
        return Err(value_err("n must be in 4..=16"));
    }
    ser(py, &run_eichler(n))
}

/// Boundary census for n in 1..=3; releases the GIL while searching.
#[pyfunction]
fn census<'py>(py: Python<'py>, n: u8) -> PyResult<Bound<'py, PyAny>> {
    let c = py.detach(|| run_census(n, &CensusOptions::default())).map_err(value_err)?;
    let mut v = serde_json::to_value(&c).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    v["curves"] = c.curves().into();
    to_py(py, &v)
}

/// Run the command-line interface in-process; returns the exit code.
#[pyfunction]
fn main(args: Vec<String>) -> i32 {
    trielliptic::cli::run(std::iter::once("trielliptic".to_string()).chain(args))
}

#[pymodule]
fn trielliptic_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBiForm>()?;
    m.add_class::<PyForm>()?;
    m.add_class::<PyLattice>()?;
    m.add_function(wrap_pyfunction!(maximal_families, m)?)?;
    m.add_function(wrap_pyfunction!(dimension_table, m)?)?;
    m.add_function(wrap_pyfunction!(verify_family, m)?)?;
    m.add_function(wrap_pyfunction!(eichler_orbit_check, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(main, m)?)?;
    Ok(())
}
