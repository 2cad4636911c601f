//! Python bindings. Structured results cross the boundary as JSON and are
//! decoded by the standard `json` module, so they match the CLI output.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use chainfold::chain_moduli::{self, Stability};
use chainfold::cox::{irrelevant_collections, CoxData};
use chainfold::rational::IVec;
use chainfold::vinberg::{cox_vinberg_dims_for_fan, Dominance, VinbergLatticeData};

fn err(e: chainfold::Error) -> PyErr {
    PyValueError::new_err(format!("{}: {e}", e.kind()))
}

fn to_py<T: Serialize>(py: Python<'_>, x: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(x).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A root datum on `Z^r`, built from a Cartan type and an isogeny.
#[pyclass(name = "RootDatum", module = "chainfold", frozen)]
struct PyRootDatum {
    inner: chainfold::RootDatum,
}

#[pymethods]
impl PyRootDatum {
    #[new]
    #[pyo3(signature = (series, rank_of_type, isogeny = "adjoint", central_rank = 0))]
    fn new(series: &str, rank_of_type: usize, isogeny: &str, central_rank: usize) -> PyResult<Self> {
        let series = chainfold::Series::parse(series).map_err(err)?;
        let isogeny = chainfold::Isogeny::parse(isogeny).map_err(err)?;
        let inner = chainfold::RootDatum::build(series, rank_of_type, isogeny, central_rank).map_err(err)?;
        Ok(PyRootDatum { inner })
    }

    /// Explicit datum from simple roots and coroots.
    #[staticmethod]
    #[pyo3(signature = (rank, simple_roots, simple_coroots, label = None))]
    fn explicit(rank: usize, simple_roots: Vec<IVec>, simple_coroots: Vec<IVec>, label: Option<String>) -> PyResult<Self> {
        let inner = chainfold::RootDatum::new(rank, simple_roots, simple_coroots, label).map_err(err)?;
        Ok(PyRootDatum { inner })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn semisimple_rank(&self) -> usize {
        self.inner.semisimple_rank()
    }

    #[getter]
    fn simple_roots(&self) -> Vec<IVec> {
        self.inner.simple_roots().to_vec()
    }

    #[getter]
    fn simple_coroots(&self) -> Vec<IVec> {
        self.inner.simple_coroots().to_vec()
    }

    fn cartan_matrix(&self) -> Vec<IVec> {
        self.inner.cartan_matrix()
    }

    fn positive_roots(&self) -> PyResult<Vec<IVec>> {
        self.inner.positive_roots().map_err(err)
    }

    fn weyl_order(&self) -> PyResult<usize> {
        Ok(self.inner.weyl_group().map_err(err)?.len())
    }

    fn longest_word(&self) -> PyResult<Vec<usize>> {
        Ok(self.inner.longest_element().map_err(err)?.word().to_vec())
    }

    fn is_dominant(&self, cocharacter: IVec) -> PyResult<bool> {
        self.inner.is_dominant(&cocharacter).map_err(err)
    }

    /// `(dominant representative, Weyl word moving the input onto it)`.
    fn to_dominant(&self, cocharacter: IVec) -> PyResult<(IVec, Vec<usize>)> {
        let (d, w) = self.inner.to_dominant(&cocharacter).map_err(err)?;
        Ok((d, w.word().to_vec()))
    }

    /// Image of a cocharacter under a 1-based word in simple reflections.
    fn act(&self, word: Vec<usize>, cocharacter: IVec) -> PyResult<IVec> {
        let w = self.inner.element_from_word(&word).map_err(err)?;
        if cocharacter.len() != self.inner.rank() {
            return Err(err(chainfold::Error::DimensionMismatch { expected: self.inner.rank(), got: cocharacter.len() }));
        }
        Ok(w.act(&cocharacter))
    }

    fn __repr__(&self) -> String {
        format!("RootDatum({}, rank={})", self.inner.label().unwrap_or("explicit"), self.inner.rank())
    }
}

/// A fan in the dominant chamber with chosen ray vectors and an ordering.
#[pyclass(name = "StackyFan", module = "chainfold", frozen)]
struct PyStackyFan {
    inner: chainfold::StackyFan,
}

#[pymethods]
impl PyStackyFan {
    #[new]
    #[pyo3(signature = (group, ray_vectors, maximal_cones, ordering = None))]
    fn new(group: &PyRootDatum, ray_vectors: Vec<IVec>, maximal_cones: Vec<Vec<usize>>, ordering: Option<Vec<usize>>) -> PyResult<Self> {
        let inner = chainfold::StackyFan::new(group.inner.clone(), ray_vectors, maximal_cones, ordering).map_err(err)?;
        Ok(PyStackyFan { inner })
    }

    #[getter]
    fn ray_vectors(&self) -> Vec<IVec> {
        self.inner.ray_vectors().to_vec()
    }

    #[getter]
    fn maximal_cones(&self) -> Vec<Vec<usize>> {
        self.inner.maximal_cones().to_vec()
    }

    #[getter]
    fn ordering(&self) -> Vec<usize> {
        self.inner.ordering().to_vec()
    }

    fn group(&self) -> PyRootDatum {
        PyRootDatum { inner: self.inner.root_datum().clone() }
    }

    /// `{"valid": bool, "issues": [...]}`.
    fn validate(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.validate())
    }

    fn classify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.classify().map_err(err)?)
    }

    fn is_polar(&self) -> PyResult<bool> {
        self.inner.is_polar().map_err(err)
    }

    fn w_support_convex(&self) -> PyResult<bool> {
        self.inner.w_support_convex().map_err(err)
    }

    fn orbit_poset(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &chainfold::stacky_fan::orbit_poset(&self.inner.apply_longest().map_err(err)?).map_err(err)?)
    }

    /// `{"stable": true, "witness": {...}}` or `{"stable": false, "reason": ...}`.
    fn is_stable(&self, py: Python<'_>, entries: Vec<IVec>) -> PyResult<Py<PyAny>> {
        let st = chainfold::SplittingType::new(entries);
        let v = match chain_moduli::is_stable(&st, &self.inner).map_err(err)? {
            Stability::Stable(w) => serde_json::json!({"stable": true, "witness": w}),
            Stability::Unstable(r) => serde_json::json!({"stable": false, "reason": r.as_str()}),
        };
        to_py(py, &v)
    }

    /// One stable splitting type per class.
    fn enumerate_stable(&self) -> Vec<Vec<IVec>> {
        chain_moduli::enumerate_stable(&self.inner).into_iter().map(|s| s.entries).collect()
    }

    fn cox_data(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let cox = CoxData::from_fan(self.inner.fan()).map_err(err)?;
        let mut v = serde_json::to_value(&cox).map_err(|e| PyValueError::new_err(e.to_string()))?;
        v["irrelevant_collections"] = serde_json::json!(irrelevant_collections(self.inner.fan()));
        to_py(py, &v)
    }

    fn dimensions(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &cox_vinberg_dims_for_fan(self.inner.root_datum(), self.inner.fan()).map_err(err)?)
    }

    fn report(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &chain_moduli::moduli_report(&self.inner).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("StackyFan(rays={}, cones={})", self.inner.ray_vectors().len(), self.inner.maximal_cones().len())
    }
}

/// Polar fan with W-convex support containing the cone on `generators`.
#[pyfunction]
fn complete_cone(group: &PyRootDatum, generators: Vec<IVec>) -> PyResult<PyStackyFan> {
    let c = chainfold::complete_cone(&group.inner, &generators).map_err(err)?;
    Ok(PyStackyFan { inner: c.fan })
}

#[pyfunction]
#[pyo3(signature = (group, lam, mu, dominance = "lambda"))]
fn vinberg_query(py: Python<'_>, group: &PyRootDatum, lam: IVec, mu: IVec, dominance: &str) -> PyResult<Py<PyAny>> {
    let d = match dominance {
        "lambda" => Dominance::Lambda,
        "mu" => Dominance::Mu,
        "both" => Dominance::Both,
        other => return Err(PyValueError::new_err(format!("unknown dominance {other:?}"))),
    };
    let v = VinbergLatticeData::with_dominance(group.inner.clone(), d);
    to_py(py, &v.query(&lam, &mu).map_err(err)?)
}

/// Runs a CLI command on a JSON string; returns `(output, exit_code)`.
#[pyfunction]
fn run(command: &str, input: &str) -> (String, i32) {
    let r = chainfold_cli::run(command, input);
    (r.render(), r.exit_code)
}

#[pymodule]
#[pyo3(name = "chainfold")]
fn chainfold_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootDatum>()?;
    m.add_class::<PyStackyFan>()?;
    m.add_function(wrap_pyfunction!(complete_cone, m)?)?;
    m.add_function(wrap_pyfunction!(vinberg_query, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
