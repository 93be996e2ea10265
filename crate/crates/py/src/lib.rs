//! Python bindings: the move graph, its decomposition, the sub-add
//! structure reports, and the prime predictor, exposed as one extension
//! module. Build with `cargo build -p movegraph-py --release` and import
//! the produced cdylib as `movegraph_py` (see python/smoke_test.py).

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use movegraph::{
    subadd_matrix, tree_report as core_tree_report, verify_level_arcs as core_verify_level_arcs,
    verify_mixed as core_verify_mixed, verify_odd_n as core_verify_odd_n, Decomposition,
    Error as CoreError, LevelPartition, ModMatrix, Modulus, SizeBudget,
};

fn to_py_err(e: CoreError) -> PyErr {
    match e {
        CoreError::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn budget(vertices: Option<u64>) -> SizeBudget {
    vertices.map(SizeBudget).unwrap_or_default()
}

fn reduce(rows: Vec<Vec<i64>>, n: u64) -> PyResult<ModMatrix> {
    let modulus = Modulus::new(n).map_err(to_py_err)?;
    ModMatrix::new(&rows, modulus).map_err(to_py_err)
}

/// A move graph together with its (lazily computed) decomposition.
#[pyclass(name = "MoveGraph")]
struct PyMoveGraph {
    graph: movegraph::MoveGraph,
    decomposition: Option<Decomposition>,
}

impl PyMoveGraph {
    fn from_matrix(matrix: &ModMatrix, size_budget: Option<u64>) -> PyResult<Self> {
        let graph = movegraph::MoveGraph::build_with_budget(matrix, budget(size_budget))
            .map_err(to_py_err)?;
        Ok(Self {
            graph,
            decomposition: None,
        })
    }

    fn decomposed(&mut self) -> &Decomposition {
        if self.decomposition.is_none() {
            self.decomposition = Some(self.graph.decompose());
        }
        self.decomposition.as_ref().expect("just filled")
    }
}

#[pymethods]
impl PyMoveGraph {
    /// MoveGraph(rows, n): build from row-major integer entries
    /// (negatives are canonicalised mod n).
    #[new]
    #[pyo3(signature = (rows, n, size_budget=None))]
    fn new(rows: Vec<Vec<i64>>, n: u64, size_budget: Option<u64>) -> PyResult<Self> {
        Self::from_matrix(&reduce(rows, n)?, size_budget)
    }

    /// The sub-add move graph mod n.
    #[staticmethod]
    #[pyo3(signature = (n, size_budget=None))]
    fn subadd(n: u64, size_budget: Option<u64>) -> PyResult<Self> {
        let modulus = Modulus::new(n).map_err(to_py_err)?;
        Self::from_matrix(&subadd_matrix(modulus), size_budget)
    }

    /// The 3x3 cyclic-permutation move graph mod n.
    #[staticmethod]
    #[pyo3(signature = (n, size_budget=None))]
    fn perm3(n: u64, size_budget: Option<u64>) -> PyResult<Self> {
        Self::from_matrix(
            &reduce(vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]], n)?,
            size_budget,
        )
    }

    #[getter]
    fn n(&self) -> u64 {
        self.graph.modulus()
    }

    #[getter]
    fn m(&self) -> usize {
        self.graph.dim()
    }

    fn vertex_count(&self) -> u64 {
        self.graph.vertex_count()
    }

    fn successor(&self, v: u64) -> PyResult<u64> {
        if v >= self.graph.vertex_count() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.graph.successor(v))
    }

    fn successors(&self) -> Vec<u64> {
        self.graph.successors().to_vec()
    }

    fn encode(&self, coords: Vec<u64>) -> PyResult<u64> {
        if coords.len() != self.graph.dim()
            || coords.iter().any(|&c| c >= self.graph.modulus())
        {
            return Err(PyValueError::new_err("coordinates out of range"));
        }
        Ok(self.graph.encode(&coords))
    }

    fn decode(&self, v: u64) -> PyResult<Vec<u64>> {
        if v >= self.graph.vertex_count() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.graph.decode(v))
    }

    /// Cycle spectrum: {cycle length: multiplicity}.
    fn spectrum(&mut self) -> BTreeMap<u64, u64> {
        self.decomposed().spectrum().clone()
    }

    /// The cycles themselves, each rotated to its minimal vertex.
    fn cycles(&mut self) -> Vec<Vec<u64>> {
        self.decomposed().cycles().to_vec()
    }

    fn tail_lengths(&mut self) -> Vec<u32> {
        self.decomposed().tail_lengths().to_vec()
    }

    fn has_cycle_of_length(&mut self, length: u64) -> bool {
        self.decomposed().has_cycle_of_length(length)
    }

    fn weak_component_count(&self) -> u64 {
        self.graph.weak_components().count
    }

    fn zn_order(&self) -> Option<u64> {
        self.graph.matrix().zn_order()
    }

    fn to_dot(&self) -> String {
        self.graph.to_dot()
    }

    fn to_json(&self) -> String {
        self.graph.document().to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "MoveGraph(n={}, m={}, vertices={})",
            self.graph.modulus(),
            self.graph.dim(),
            self.graph.vertex_count()
        )
    }
}

#[pyfunction]
fn predict(py: Python<'_>, p: u64) -> PyResult<Py<PyDict>> {
    let prediction = movegraph::predict(p).map_err(to_py_err)?;
    let dict = PyDict::new(py);
    dict.set_item("p", prediction.p)?;
    dict.set_item("t", prediction.t)?;
    dict.set_item("k", prediction.k)?;
    dict.set_item("i_root", prediction.i_root)?;
    dict.set_item("s", prediction.s)?;
    dict.set_item("case_label", prediction.case_label.as_str())?;
    dict.set_item("secondary_exists", prediction.secondary_exists)?;
    dict.set_item("secondary_length", prediction.secondary_length)?;
    dict.set_item("secondary_count", prediction.secondary_count)?;
    dict.set_item("primary_count", prediction.primary_count)?;
    dict.set_item("fixed_points", prediction.fixed_points)?;
    dict.set_item("spectrum", prediction.predicted_spectrum())?;
    Ok(dict.into())
}

#[pyfunction]
#[pyo3(signature = (p, size_budget=None))]
fn verify_prediction(p: u64, size_budget: Option<u64>) -> PyResult<bool> {
    movegraph::verify_prediction(p, budget(size_budget)).map_err(to_py_err)
}

#[pyfunction]
fn mod8_criterion(p: u64) -> PyResult<String> {
    let criterion = movegraph::mod8_criterion(p).map_err(to_py_err)?;
    Ok(match criterion {
        movegraph::Mod8Criterion::NoneGuaranteed => "none_guaranteed",
        movegraph::Mod8Criterion::ExistsGuaranteed => "exists_guaranteed",
        movegraph::Mod8Criterion::Undetermined => "undetermined",
    }
    .to_string())
}

#[pyfunction]
fn survey_csv(p_max: u64) -> PyResult<String> {
    let rows = movegraph::survey(p_max).map_err(to_py_err)?;
    Ok(movegraph::survey_csv(&rows))
}

#[pyfunction]
#[pyo3(signature = (n_max, size_budget=None))]
fn oeis_terms(n_max: u64, size_budget: Option<u64>) -> PyResult<Vec<u64>> {
    movegraph::oeis_terms(n_max, budget(size_budget)).map_err(to_py_err)
}

#[pyfunction]
#[pyo3(signature = (r, size_budget=None))]
fn level_sizes(r: u32, size_budget: Option<u64>) -> PyResult<Vec<u64>> {
    let partition = LevelPartition::build(r, budget(size_budget)).map_err(to_py_err)?;
    Ok(partition.cardinalities())
}

#[pyfunction]
#[pyo3(signature = (r, size_budget=None))]
fn levels(r: u32, size_budget: Option<u64>) -> PyResult<Vec<Vec<u64>>> {
    let partition = LevelPartition::build(r, budget(size_budget)).map_err(to_py_err)?;
    Ok(partition.levels)
}

#[pyfunction]
#[pyo3(signature = (r, size_budget=None))]
fn verify_level_arcs(r: u32, size_budget: Option<u64>) -> PyResult<bool> {
    core_verify_level_arcs(r, budget(size_budget)).map_err(to_py_err)
}

#[pyfunction]
#[pyo3(signature = (r, size_budget=None))]
fn tree_report(py: Python<'_>, r: u32, size_budget: Option<u64>) -> PyResult<Py<PyDict>> {
    let report = core_tree_report(r, budget(size_budget)).map_err(to_py_err)?;
    let dict = PyDict::new(py);
    dict.set_item("r", report.r)?;
    dict.set_item("depth", report.depth)?;
    dict.set_item("is_inverted_pbt", report.is_inverted_pbt)?;
    dict.set_item("leaf_level_uniform", report.leaf_level_uniform)?;
    dict.set_item("root_vertex", report.root_vertex)?;
    dict.set_item("closing_arcs", report.closing_arcs.to_vec())?;
    Ok(dict.into())
}

#[pyfunction]
#[pyo3(signature = (n, size_budget=None))]
fn verify_odd_n(py: Python<'_>, n: u64, size_budget: Option<u64>) -> PyResult<Py<PyDict>> {
    let verdict = core_verify_odd_n(n, budget(size_budget)).map_err(to_py_err)?;
    let dict = PyDict::new(py);
    dict.set_item("all_cycles", verdict.all_cycles)?;
    dict.set_item("max_divisor_ok", verdict.max_divisor_ok)?;
    dict.set_item("k", verdict.k)?;
    Ok(dict.into())
}

#[pyfunction]
#[pyo3(signature = (n1, k, size_budget=None))]
fn verify_mixed(py: Python<'_>, n1: u64, k: u32, size_budget: Option<u64>) -> PyResult<Py<PyDict>> {
    let verdict = core_verify_mixed(n1, k, budget(size_budget)).map_err(to_py_err)?;
    let dict = PyDict::new(py);
    dict.set_item("copies_found", verdict.copies_found)?;
    dict.set_item("component_match", verdict.component_match)?;
    Ok(dict.into())
}

#[pyfunction]
fn zn_order(rows: Vec<Vec<i64>>, n: u64) -> PyResult<Option<u64>> {
    Ok(reduce(rows, n)?.zn_order())
}

#[pyfunction]
fn mult_order(a: u64, n: u64) -> PyResult<u64> {
    let modulus = Modulus::new(n).map_err(to_py_err)?;
    movegraph::mult_order(a, modulus).map_err(to_py_err)
}

#[pyfunction]
fn euler_phi(n: u64) -> PyResult<u64> {
    if n == 0 {
        return Err(PyValueError::new_err("n must be >= 1"));
    }
    Ok(movegraph::euler_phi(n))
}

#[pyfunction]
fn sqrt_minus_one(p: u64) -> PyResult<Option<u64>> {
    movegraph::sqrt_minus_one(p).map_err(to_py_err)
}

#[pyfunction]
fn is_prime(n: u64) -> bool {
    movegraph::is_prime(n)
}

#[pyfunction]
#[pyo3(signature = (n1, n2, size_budget=None))]
fn verify_embedding(n1: u64, n2: u64, size_budget: Option<u64>) -> PyResult<bool> {
    movegraph::verify_embedding(
        &movegraph::subadd_int_matrix(),
        n1,
        n2,
        budget(size_budget),
    )
    .map_err(to_py_err)
}

#[pymodule]
fn movegraph_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMoveGraph>()?;
    m.add_function(wrap_pyfunction!(predict, m)?)?;
    m.add_function(wrap_pyfunction!(verify_prediction, m)?)?;
    m.add_function(wrap_pyfunction!(mod8_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(survey_csv, m)?)?;
    m.add_function(wrap_pyfunction!(oeis_terms, m)?)?;
    m.add_function(wrap_pyfunction!(level_sizes, m)?)?;
    m.add_function(wrap_pyfunction!(levels, m)?)?;
    m.add_function(wrap_pyfunction!(verify_level_arcs, m)?)?;
    m.add_function(wrap_pyfunction!(tree_report, m)?)?;
    m.add_function(wrap_pyfunction!(verify_odd_n, m)?)?;
    m.add_function(wrap_pyfunction!(verify_mixed, m)?)?;
    m.add_function(wrap_pyfunction!(zn_order, m)?)?;
    m.add_function(wrap_pyfunction!(mult_order, m)?)?;
    m.add_function(wrap_pyfunction!(euler_phi, m)?)?;
    m.add_function(wrap_pyfunction!(sqrt_minus_one, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(verify_embedding, m)?)?;
    Ok(())
}
