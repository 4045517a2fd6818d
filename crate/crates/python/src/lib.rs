//! Python bindings: graphs, hopsets, missing spanners, preservers, spanners
//! and their verifiers. Rationals cross the boundary as strings like `"1/4"`.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use hopspan::derived::{
    density_net as core_density_net, directed_level_hopset, directed_preserver_pipeline, emulator_from_hopset,
    reachability_preserver_pipeline, slack_spanner, sourcewise_spanner, sourcewise_spanner_partitioned,
    derive_seed, spanner_from_emulator, undirected_preserver_pipeline, weighted_near_additive_pipeline, with_retries,
};
use hopspan::graph::{generate_graph, parse_graph, write_edge_list, GeneratorKind, GeneratorSpec, GraphFormat};
use hopspan::hopset::{folklore_exact_hopset, schedule_directed, schedule_undirected, shortcut_folklore, ScheduleLevel};
use hopspan::paths::{greedy_spanner as core_greedy, shortest_path_tree};
use hopspan::verify::{check_hopset, check_missing_spanner, check_shortcut, verify_result};
use hopspan::{ApproxMode, BaseAlgorithm, BetaSchedule, PairSet, Rational, TcwBase, INF};

create_exception!(hopspan, ConstructionError, PyException, "A randomized construction failed after its retries.");

fn err(e: hopspan::Error) -> PyErr {
    match e {
        hopspan::Error::Construction(m) => ConstructionError::new_err(m),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn rational(s: &str) -> PyResult<Rational> {
    s.parse().map_err(err)
}

type EdgeTuple = (usize, usize, u64);

#[pyclass(name = "Graph", module = "hopspan", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: hopspan::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges, directed = false))]
    fn new(n: usize, edges: Vec<EdgeTuple>, directed: bool) -> PyResult<Self> {
        Ok(PyGraph { inner: hopspan::Graph::new(n, directed, edges).map_err(err)? })
    }

    /// `kind` is one of gnp, dag, path, cycle.
    #[staticmethod]
    #[pyo3(signature = (kind, n, p = 0.1, directed = false, max_weight = 1, seed = 0))]
    fn generate(kind: &str, n: usize, p: f64, directed: bool, max_weight: u64, seed: u64) -> PyResult<Self> {
        let k = match kind {
            "gnp" => GeneratorKind::Gnp { n, p },
            "dag" => GeneratorKind::RandomDag { n, p },
            "path" => GeneratorKind::Path { n },
            "cycle" => GeneratorKind::Cycle { n },
            other => return Err(PyValueError::new_err(format!("unknown graph kind '{other}'"))),
        };
        let directed = directed || kind == "dag";
        let spec = GeneratorSpec::new(k).directed(directed).weights(max_weight).seed(seed);
        Ok(PyGraph { inner: generate_graph(&spec).map_err(err)? })
    }

    #[staticmethod]
    #[pyo3(signature = (text, directed = false))]
    fn from_edge_list(text: &str, directed: bool) -> PyResult<Self> {
        Ok(PyGraph { inner: parse_graph(text, GraphFormat::EdgeList, directed).map_err(err)? })
    }

    fn to_edge_list(&self) -> String {
        write_edge_list(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn directed(&self) -> bool {
        self.inner.is_directed()
    }

    #[getter]
    fn edges(&self) -> Vec<EdgeTuple> {
        self.inner.edges().iter().map(|e| (e.u, e.v, e.w)).collect()
    }

    /// Shortest path lengths from `source`; `None` where unreachable.
    fn distances(&self, source: usize) -> PyResult<Vec<Option<u128>>> {
        if source >= self.inner.n() {
            return Err(PyValueError::new_err("source out of range"));
        }
        let d = shortest_path_tree(&self.inner, &[source]).dist;
        Ok(d.into_iter().map(|x| (x != INF).then_some(x)).collect())
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={}, directed={})", self.inner.n(), self.inner.m(), self.inner.is_directed())
    }
}

#[pyclass(name = "Hopset", module = "hopspan", frozen)]
struct PyHopset {
    inner: hopspan::Hopset,
}

#[pymethods]
impl PyHopset {
    #[getter]
    fn edges(&self) -> Vec<EdgeTuple> {
        self.inner.edges.iter().map(|e| (e.u, e.v, e.w)).collect()
    }

    /// Claimed hopbound.
    #[getter]
    fn beta(&self) -> usize {
        self.inner.beta
    }

    #[getter]
    fn mode(&self) -> String {
        self.inner.mode.to_string()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Checks the claim (or `beta`, if given) against brute-force distances.
    #[pyo3(signature = (g, beta = None))]
    fn verify(&self, g: &PyGraph, beta: Option<usize>) -> PyReport {
        let beta = beta.unwrap_or(self.inner.beta);
        let report = if self.inner.mode.is_reachability() {
            check_shortcut(&g.inner, &self.inner, beta)
        } else {
            check_hopset(&g.inner, &self.inner, beta, &self.inner.mode)
        };
        PyReport { inner: report }
    }

    fn __repr__(&self) -> String {
        format!("Hopset(edges={}, beta={}, mode={})", self.inner.len(), self.inner.beta, self.inner.mode)
    }
}

#[pyclass(name = "MissingSpanner", module = "hopspan", frozen)]
struct PyMissingSpanner {
    inner: hopspan::MissingSpanner,
}

#[pymethods]
impl PyMissingSpanner {
    /// Edge ids of `G'`.
    #[getter]
    fn edges(&self) -> Vec<usize> {
        self.inner.g_prime.iter().copied().collect()
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r
    }

    #[getter]
    fn t(&self) -> String {
        self.inner.t.to_string()
    }

    fn size_bound(&self) -> usize {
        self.inner.size_bound()
    }

    /// The witness walk for `(u, v)` as `(vertices, length, missing edge ids)`.
    fn witness(&self, g: &PyGraph, u: usize, v: usize) -> PyResult<(Vec<usize>, u128, Vec<usize>)> {
        let w = self.inner.witness_path(&g.inner, u, v).map_err(err)?;
        Ok((w.vertices, w.length, w.missing))
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(err)
    }

    fn verify(&self, g: &PyGraph) -> PyReport {
        PyReport { inner: check_missing_spanner(&g.inner, &self.inner) }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

#[pyclass(name = "Subgraph", module = "hopspan", frozen)]
struct PySubgraph {
    inner: hopspan::SubgraphResult,
}

#[pymethods]
impl PySubgraph {
    #[getter]
    fn kind(&self) -> String {
        serde_json::to_value(self.inner.kind)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default()
    }

    /// Edge ids into the input graph.
    #[getter]
    fn edges(&self) -> Vec<usize> {
        self.inner.edges.iter().copied().collect()
    }

    /// Non-graph edges (emulators only).
    #[getter]
    fn extra(&self) -> Vec<EdgeTuple> {
        self.inner.extra.iter().map(|e| (e.u, e.v, e.w)).collect()
    }

    #[getter]
    fn alpha(&self) -> String {
        self.inner.alpha.to_string()
    }

    #[getter]
    fn beta(&self) -> u128 {
        self.inner.beta_add
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn to_graph(&self, g: &PyGraph) -> PyGraph {
        PyGraph { inner: self.inner.to_graph(&g.inner) }
    }

    fn verify(&self, g: &PyGraph) -> PyReport {
        PyReport { inner: verify_result(&g.inner, &self.inner) }
    }

    fn __repr__(&self) -> String {
        format!("Subgraph(kind={}, size={}, alpha={}, beta={})", self.kind(), self.inner.size(), self.inner.alpha, self.inner.beta_add)
    }
}

#[pyclass(name = "Report", module = "hopspan", frozen)]
struct PyReport {
    inner: hopspan::VerificationReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn passed(&self) -> bool {
        self.inner.pass
    }

    #[getter]
    fn property(&self) -> String {
        self.inner.property.clone()
    }

    #[getter]
    fn pairs_checked(&self) -> usize {
        self.inner.pairs_checked
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __bool__(&self) -> bool {
        self.inner.pass
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// Exact hopset with claimed hopbound `2*beta + 1`.
#[pyfunction]
#[pyo3(signature = (g, beta, seed = 0))]
fn folklore_hopset(g: &PyGraph, beta: usize, seed: u64) -> PyResult<PyHopset> {
    let (h, _) = with_retries(seed, |s| folklore_exact_hopset(&g.inner, beta, s)).map_err(err)?;
    Ok(PyHopset { inner: h })
}

/// Hopset with claimed hopbound at most `beta` and stretch `1 + eps`.
#[pyfunction]
#[pyo3(signature = (g, beta, eps = "0", seed = 0))]
fn hopset(g: &PyGraph, beta: usize, eps: &str, seed: u64) -> PyResult<PyHopset> {
    let mode = ApproxMode::from_epsilon(&rational(eps)?).map_err(err)?;
    let (h, _) = with_retries(seed, |s| directed_level_hopset(&g.inner, &TcwBase, beta, &mode, s)).map_err(err)?;
    Ok(PyHopset { inner: h })
}

/// Shortcut set with claimed hop diameter `3d`.
#[pyfunction]
#[pyo3(signature = (g, d, seed = 0))]
fn shortcut(g: &PyGraph, d: usize, seed: u64) -> PyResult<PyHopset> {
    let (h, _) = with_retries(seed, |s| shortcut_folklore(&g.inner, d, s)).map_err(err)?;
    Ok(PyHopset { inner: h })
}

/// Hopbounds `[β_0 = n, β_1, …]` of the directed schedule for `p` pairs.
#[pyfunction]
#[pyo3(signature = (n, p, eps = "0"))]
fn directed_schedule(n: usize, p: usize, eps: &str) -> PyResult<Vec<usize>> {
    let s = schedule_directed(n, p, TcwBase.tradeoff(), &rational(eps)?).map_err(err)?;
    Ok((0..=s.len()).map(|i| s.beta(i)).collect())
}

/// Hopbounds `[β_0 = n, β_1, …]` of the undirected schedule.
#[pyfunction]
fn undirected_schedule(n: usize, k: usize, eps: &str) -> PyResult<Vec<usize>> {
    let s = schedule_undirected(n, k, &rational(eps)?).map_err(err)?;
    Ok((0..=s.len()).map(|i| s.beta(i)).collect())
}

/// Missing spanner from an exact hierarchy with the given hopbounds.
#[pyfunction]
#[pyo3(signature = (g, betas, seed = 0))]
fn missing_spanner(g: &PyGraph, betas: Vec<usize>, seed: u64) -> PyResult<PyMissingSpanner> {
    let levels = betas.iter().map(|&beta| ScheduleLevel { beta, eps: Rational::zero() }).collect();
    let schedule = BetaSchedule::custom(g.inner.n(), levels).map_err(err)?;
    let (ms, _) = with_retries(seed, |s| {
        let hierarchy = (1..=schedule.len())
            .map(|i| directed_level_hopset(&g.inner, &TcwBase, schedule.beta(i), &ApproxMode::Exact, derive_seed(s, 1, i as u64)))
            .collect::<hopspan::Result<Vec<_>>>()?;
        hopspan::hopsets_to_missing_spanner(&g.inner, &hierarchy, &schedule)
    })
    .map_err(err)?;
    Ok(PyMissingSpanner { inner: ms })
}

fn pair_set(g: &PyGraph, pairs: Vec<(usize, usize)>) -> PyResult<PairSet> {
    PairSet::new(g.inner.n(), pairs).map_err(err)
}

/// `(1 + eps)`-preserver for `pairs`: exact directed when `eps = "0"`,
/// the undirected pipeline with parameter `k` on undirected graphs.
#[pyfunction]
#[pyo3(signature = (g, pairs, eps = "0", k = 1, seed = 0))]
fn preserver(g: &PyGraph, pairs: Vec<(usize, usize)>, eps: &str, k: usize, seed: u64) -> PyResult<PySubgraph> {
    let pairs = pair_set(g, pairs)?;
    let eps = rational(eps)?;
    let res = if g.inner.is_directed() {
        directed_preserver_pipeline(&g.inner, &pairs, &TcwBase, &eps, seed)
    } else {
        undirected_preserver_pipeline(&g.inner, &pairs, k, &eps, seed)
    };
    Ok(PySubgraph { inner: res.map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (g, pairs, seed = 0))]
fn reachability_preserver(g: &PyGraph, pairs: Vec<(usize, usize)>, seed: u64) -> PyResult<PySubgraph> {
    let pairs = pair_set(g, pairs)?;
    Ok(PySubgraph { inner: reachability_preserver_pipeline(&g.inner, &pairs, seed).map_err(err)? })
}

/// Emulator from a folklore hopset with parameter `beta`.
#[pyfunction]
#[pyo3(signature = (g, beta = 3, k = 2, seed = 0))]
fn emulator(g: &PyGraph, beta: usize, k: usize, seed: u64) -> PyResult<PySubgraph> {
    let h = folklore_hopset(g, beta, seed)?;
    Ok(PySubgraph { inner: emulator_from_hopset(&g.inner, &h.inner, k).map_err(err)? })
}

/// Subgraph `(1 + 2eps, (2k-1)β)` spanner of an unweighted graph.
#[pyfunction]
#[pyo3(signature = (g, beta = 3, k = 2, eps = "1/4", seed = 0))]
fn near_additive_spanner(g: &PyGraph, beta: usize, k: usize, eps: &str, seed: u64) -> PyResult<PySubgraph> {
    let h = folklore_hopset(g, beta, seed)?;
    Ok(PySubgraph { inner: spanner_from_emulator(&g.inner, &h.inner, k, &rational(eps)?).map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (g, k = 1, eps = "1/4", seed = 0))]
fn weighted_spanner(g: &PyGraph, k: usize, eps: &str, seed: u64) -> PyResult<PySubgraph> {
    Ok(PySubgraph { inner: weighted_near_additive_pipeline(&g.inner, k, &rational(eps)?, seed).map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (g, sources, k = 2, eps = "1/4", partitioned = false, seed = 0))]
fn sourcewise(g: &PyGraph, sources: Vec<usize>, k: usize, eps: &str, partitioned: bool, seed: u64) -> PyResult<PySubgraph> {
    let eps = rational(eps)?;
    let res = if partitioned {
        sourcewise_spanner_partitioned(&g.inner, &sources, k, &eps, seed)
    } else {
        sourcewise_spanner(&g.inner, &sources, k, &eps, seed)
    };
    Ok(PySubgraph { inner: res.map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (g, eps = "1/8", k = 2, seed = 0))]
fn slack(g: &PyGraph, eps: &str, k: usize, seed: u64) -> PyResult<PySubgraph> {
    Ok(PySubgraph { inner: slack_spanner(&g.inner, &rational(eps)?, k, seed).map_err(err)? })
}

/// `(net, radius)` of the greedy density net.
#[pyfunction]
fn density_net(g: &PyGraph, eps: &str) -> PyResult<(Vec<usize>, Vec<u128>)> {
    let dn = core_density_net(&g.inner, &rational(eps)?).map_err(err)?;
    Ok((dn.net, dn.radius))
}

/// Edge ids of the greedy `(2k-1)`-spanner.
#[pyfunction]
fn greedy_spanner(g: &PyGraph, k: usize) -> PyResult<Vec<usize>> {
    Ok(core_greedy(&g.inner, k).map_err(err)?.into_iter().collect())
}

#[pymodule]
#[pyo3(name = "hopspan")]
fn hopspan_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ConstructionError", m.py().get_type::<ConstructionError>())?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyHopset>()?;
    m.add_class::<PyMissingSpanner>()?;
    m.add_class::<PySubgraph>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(folklore_hopset, m)?)?;
    m.add_function(wrap_pyfunction!(hopset, m)?)?;
    m.add_function(wrap_pyfunction!(shortcut, m)?)?;
    m.add_function(wrap_pyfunction!(directed_schedule, m)?)?;
    m.add_function(wrap_pyfunction!(undirected_schedule, m)?)?;
    m.add_function(wrap_pyfunction!(missing_spanner, m)?)?;
    m.add_function(wrap_pyfunction!(preserver, m)?)?;
    m.add_function(wrap_pyfunction!(reachability_preserver, m)?)?;
    m.add_function(wrap_pyfunction!(emulator, m)?)?;
    m.add_function(wrap_pyfunction!(near_additive_spanner, m)?)?;
    m.add_function(wrap_pyfunction!(weighted_spanner, m)?)?;
    m.add_function(wrap_pyfunction!(sourcewise, m)?)?;
    m.add_function(wrap_pyfunction!(slack, m)?)?;
    m.add_function(wrap_pyfunction!(density_net, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_spanner, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::ffi::CString;

    use super::*;

    #[test]
    fn smoke_script_runs_embedded() {
        pyo3::append_to_inittab!(hopspan_module);
        Python::initialize();
        Python::attach(|py| {
            let code = CString::new(include_str!("../python/smoke_test.py")).unwrap();
            py.run(&code, None, None).unwrap();
        });
    }
}
