//! Python bindings: digraphs, checkers, solvers, oracles and reductions.

use outpart::cnf::{parse_dimacs, FormulaMode};
use outpart::gadgets::make_connector;
use outpart::oracle::{
    exhaustive_partition_search, kernel_search, pruned_partition_search, sat_partition_search, Property, SearchOptions,
};
use outpart::partition::check_kernel;
use outpart::reductions::{reduce_nae_to_kk_partition, reduce_sat_to_delta_partition, reduce_sat_to_kernel};
use outpart::solvers::{
    solve_k_all_partition_2k, solve_k_all_partition_2k_plus_1, solve_one_all_2partition, solve_one_max_2partition,
    SolveOutcome,
};
use outpart::{parse_edge_list, Partition, Verdict};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Digraph", module = "outpart_py")]
#[derive(Clone)]
struct PyDigraph {
    inner: outpart::Digraph,
}

#[pymethods]
impl PyDigraph {
    #[new]
    fn new(n: usize, arcs: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = outpart::Digraph::from_arcs(n, arcs).map_err(value_err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_edge_list(text).map_err(value_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn arcs(&self) -> Vec<(usize, usize)> {
        self.inner.arcs().collect()
    }

    fn out_degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.n() {
            return Err(value_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.out_degree(v))
    }

    fn max_out_degree(&self) -> usize {
        self.inner.max_out_degree()
    }

    fn is_strong(&self) -> bool {
        self.inner.is_strong()
    }

    fn is_out_regular(&self, k: usize) -> bool {
        self.inner.is_out_regular(k)
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn __repr__(&self) -> String {
        format!("Digraph(n={}, arcs={})", self.inner.n(), self.inner.arc_count())
    }
}

fn property(spec: &str) -> PyResult<Property> {
    spec.parse().map_err(value_err)
}

/// `None` when valid, otherwise the violation as text.
#[pyfunction]
fn check(d: &PyDigraph, parts: Vec<usize>, prop: &str) -> PyResult<Option<String>> {
    let prop = property(prop)?;
    let p = parts.iter().max().map_or(1, |m| m + 1).max(2);
    let pi = Partition::new(parts, p).map_err(value_err)?;
    Ok(match prop.check(&d.inner, &pi).map_err(value_err)? {
        Verdict::Valid => None,
        Verdict::Violation(v) => Some(v.to_string()),
    })
}

#[pyfunction]
fn check_kernel_set(d: &PyDigraph, kernel: Vec<usize>) -> PyResult<Option<String>> {
    Ok(match check_kernel(&d.inner, &kernel).map_err(value_err)? {
        Verdict::Valid => None,
        Verdict::Violation(v) => Some(v.to_string()),
    })
}

/// Part list, or `None` when the solver proves non-existence.
#[pyfunction]
#[pyo3(signature = (d, k, p, variant = "all"))]
fn solve(d: &PyDigraph, k: usize, p: usize, variant: &str) -> PyResult<Option<Vec<usize>>> {
    let outcome = match (variant, k, p) {
        ("all", 1, 2) => solve_one_all_2partition(&d.inner),
        ("max", 1, 2) => solve_one_max_2partition(&d.inner),
        ("all" | "max", k, p) if p == 2 * k + 1 => solve_k_all_partition_2k_plus_1(&d.inner, k).map(SolveOutcome::Partition),
        ("all", k, p) if k >= 2 && p == 2 * k => solve_k_all_partition_2k(&d.inner, k),
        _ => {
            return Err(value_err(format!(
                "no polynomial solver for variant {variant:?}, k = {k}, p = {p}"
            )))
        }
    }
    .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(outcome.partition().map(|pi| pi.parts().to_vec()))
}

/// Exact partition search; `engine` is `exhaustive`, `pruned` or `cdcl`.
#[pyfunction]
#[pyo3(signature = (d, prop, p, engine = "exhaustive", budget = 50_000_000))]
fn oracle_partition(d: &PyDigraph, prop: &str, p: usize, engine: &str, budget: u64) -> PyResult<Option<Vec<usize>>> {
    let prop = property(prop)?;
    let opts = SearchOptions { budget, jobs: 1 };
    let found = match engine {
        "exhaustive" => exhaustive_partition_search(&d.inner, prop, p, opts),
        "pruned" => pruned_partition_search(&d.inner, prop, p, opts),
        "cdcl" => sat_partition_search(&d.inner, prop, p, opts),
        other => return Err(value_err(format!("unknown engine {other:?}"))),
    }
    .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(found.map(|pi| pi.parts().to_vec()))
}

#[pyfunction]
fn find_kernel(d: &PyDigraph) -> Option<Vec<usize>> {
    kernel_search(&d.inner)
}

/// Compiles DIMACS text; returns the digraph and the role map as JSON.
/// `kind` is `kernel`, `kernel-strong`, `delta` or `nae`.
#[pyfunction]
#[pyo3(signature = (kind, dimacs, k1 = 1, k2 = 2, k = 1))]
fn reduce(kind: &str, dimacs: &str, k1: usize, k2: usize, k: usize) -> PyResult<(PyDigraph, String)> {
    let mode = if kind == "nae" {
        FormulaMode::MonotoneNae
    } else {
        FormulaMode::Plain3Sat
    };
    let f = parse_dimacs(dimacs, mode).map_err(value_err)?;
    let artifact = match kind {
        "kernel" => reduce_sat_to_kernel(&f, false).map(|r| r.artifact),
        "kernel-strong" => reduce_sat_to_kernel(&f, true).map(|r| r.artifact),
        "delta" => reduce_sat_to_delta_partition(&f, k1, k2).map(|r| r.artifact),
        "nae" => reduce_nae_to_kk_partition(&f, k).map(|r| r.artifact),
        other => return Err(value_err(format!("unknown reduction {other:?}"))),
    }
    .map_err(value_err)?;
    let json = artifact.to_json();
    Ok((PyDigraph { inner: artifact.digraph }, json))
}

#[pyfunction]
fn connector(i: usize, p: usize) -> PyResult<(PyDigraph, String)> {
    let g = make_connector(i, p).map_err(value_err)?;
    let json = g.roles_json();
    Ok((PyDigraph { inner: g.digraph }, json))
}

#[pymodule]
fn outpart_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDigraph>()?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(check_kernel_set, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_partition, m)?)?;
    m.add_function(wrap_pyfunction!(find_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(connector, m)?)?;
    Ok(())
}
