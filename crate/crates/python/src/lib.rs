//! Python bindings: posets, digraphs, walk colorings, the decision
//! procedures and the list-coloring simulation.

use std::path::Path;
use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use walkcolor_core::coloring::{
    self, bounds_report, Decision, MonoOutcome, SetRepresentation, SolverConfig,
};
use walkcolor_core::digraph::{chromatic_number, optimal_vertex_coloring, DEFAULT_MAX_CHROMATIC_N};
use walkcolor_core::poset::{self as core_poset, DEFAULT_ANTICHAIN_LIMIT, DEFAULT_PRODUCT_CAP};
use walkcolor_core::symmetry;
use walkcolor_core::{io, Digraph, Error, Poset, Verdict, WalkColoring, WalkLength};

create_exception!(walkcolor, WalkcolorError, PyException);
create_exception!(walkcolor, ResourceLimitError, WalkcolorError);

fn to_py(e: Error) -> PyErr {
    if e.is_resource_limit() {
        ResourceLimitError::new_err(e.to_string())
    } else {
        WalkcolorError::new_err(e.to_string())
    }
}

fn length_to_py(l: WalkLength) -> Option<usize> {
    l.finite()
}

fn config(limit: usize, max_nodes: u64, max_n: usize, seed: Option<u64>) -> SolverConfig {
    SolverConfig {
        antichain_limit: limit,
        max_search_nodes: max_nodes,
        max_chromatic_n: max_n,
        value_order_seed: seed,
        ..SolverConfig::default()
    }
}

/// A finite partial order on elements `0..len`, each with a label.
#[pyclass(name = "Poset", module = "walkcolor", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPoset(Arc<Poset>);

#[pymethods]
impl PyPoset {
    /// Builds the order generated by `leq` pairs `(x, y)` meaning `x <= y`.
    #[new]
    fn new(elements: Vec<String>, leq: Vec<(usize, usize)>) -> PyResult<Self> {
        let p = Poset::from_relation(elements.len(), &leq)
            .and_then(|p| p.with_labels(elements))
            .map_err(to_py)?;
        Ok(PyPoset(Arc::new(p)))
    }

    #[staticmethod]
    fn trivial(n: usize) -> Self {
        PyPoset(Arc::new(Poset::trivial(n)))
    }

    #[staticmethod]
    fn chain(n: usize) -> Self {
        PyPoset(Arc::new(Poset::chain(n)))
    }

    #[staticmethod]
    fn diamond() -> Self {
        PyPoset(Arc::new(Poset::diamond()))
    }

    /// Product of the chains `0..=b` for each bound `b`.
    #[staticmethod]
    #[pyo3(signature = (bounds, cap = DEFAULT_PRODUCT_CAP))]
    fn product(bounds: Vec<usize>, cap: usize) -> PyResult<Self> {
        let p = core_poset::product_poset(&bounds, cap).map_err(to_py)?;
        Ok(PyPoset(Arc::new(p)))
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(PyPoset(Arc::new(io::poset_from_json(s).map_err(to_py)?)))
    }

    fn to_json(&self) -> String {
        io::poset_to_json(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Poset({})", self.to_json())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn labels(&self) -> Vec<String> {
        self.0.labels().to_vec()
    }

    fn leq(&self, x: usize, y: usize) -> PyResult<bool> {
        self.0.check_element(x).map_err(to_py)?;
        self.0.check_element(y).map_err(to_py)?;
        Ok(self.0.leq(x, y))
    }

    fn dilworth(&self) -> usize {
        core_poset::dilworth_number(&self.0)
    }

    fn maximum_antichain(&self) -> Vec<usize> {
        core_poset::maximum_antichain(&self.0).into_vec()
    }

    /// Number of antichains, or `None` when there are more than `limit`.
    #[pyo3(signature = (limit = DEFAULT_ANTICHAIN_LIMIT))]
    fn count_antichains(&self, limit: usize) -> Option<usize> {
        self.0.count_antichains(limit)
    }

    /// The lattice of antichains ordered by the ideals they generate,
    /// applied `power` times.
    #[pyo3(signature = (power = 1, limit = DEFAULT_ANTICHAIN_LIMIT))]
    fn birkhoff(&self, power: usize, limit: usize) -> PyResult<Self> {
        let a = core_poset::birkhoff_power(&self.0, power, limit).map_err(to_py)?;
        Ok(PyPoset(Arc::new(a)))
    }

    fn is_lattice(&self) -> bool {
        self.0.is_lattice()
    }

    fn is_distributive(&self) -> PyResult<bool> {
        core_poset::is_distributive(&self.0).map_err(to_py)
    }

    fn join_irreducibles(&self) -> PyResult<Self> {
        let j = core_poset::join_irreducibles(&self.0).map_err(to_py)?;
        Ok(PyPoset(Arc::new(j)))
    }

    fn is_isomorphic(&self, other: &Self) -> bool {
        self.0.is_isomorphic(&other.0)
    }

    fn linear_extension(&self) -> Vec<usize> {
        self.0.linear_extension()
    }
}

/// A directed graph on vertices `0..n` without loops or parallel edges.
#[pyclass(name = "Digraph", module = "walkcolor", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDigraph(Arc<Digraph>);

#[pymethods]
impl PyDigraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyDigraph(Arc::new(Digraph::new(n, &edges).map_err(to_py)?)))
    }

    #[staticmethod]
    fn complete_symmetric(n: usize) -> Self {
        PyDigraph(Arc::new(Digraph::complete_symmetric(n)))
    }

    #[staticmethod]
    fn directed_path(n: usize) -> Self {
        PyDigraph(Arc::new(Digraph::directed_path(n)))
    }

    #[staticmethod]
    fn directed_cycle(n: usize) -> Self {
        PyDigraph(Arc::new(Digraph::directed_cycle(n)))
    }

    #[staticmethod]
    fn transitive_tournament(n: usize) -> Self {
        PyDigraph(Arc::new(Digraph::transitive_tournament(n)))
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(PyDigraph(Arc::new(
            io::digraph_from_json(s).map_err(to_py)?,
        )))
    }

    /// Parses `u v` lines; `#` starts a comment.
    #[staticmethod]
    fn from_edge_list(s: &str) -> PyResult<Self> {
        Ok(PyDigraph(Arc::new(
            io::digraph_from_edge_list(s).map_err(to_py)?,
        )))
    }

    fn to_json(&self) -> String {
        io::digraph_to_json(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Digraph({})", self.to_json())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().to_vec()
    }

    fn is_symmetric(&self) -> bool {
        self.0.is_symmetric()
    }

    fn is_acyclic(&self) -> bool {
        self.0.is_acyclic()
    }

    /// Edges in a longest walk, or `None` when there is a directed cycle.
    fn longest_walk_length(&self) -> Option<usize> {
        length_to_py(self.0.longest_walk_length())
    }

    fn count_walks(&self, k: usize) -> u128 {
        self.0.count_walks(k)
    }

    fn walks(&self, k: usize) -> Vec<Vec<usize>> {
        self.0.walks(k).collect()
    }

    #[pyo3(signature = (max_n = DEFAULT_MAX_CHROMATIC_N))]
    fn chromatic_number(&self, max_n: usize) -> PyResult<usize> {
        chromatic_number(&self.0, max_n).map_err(to_py)
    }

    #[pyo3(signature = (max_n = DEFAULT_MAX_CHROMATIC_N))]
    fn optimal_coloring(&self, max_n: usize) -> PyResult<Vec<usize>> {
        optimal_vertex_coloring(&self.0, max_n).map_err(to_py)
    }
}

/// Colors of the k-walks of a digraph, drawn from a poset.
#[pyclass(
    name = "WalkColoring",
    module = "walkcolor",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyWalkColoring(WalkColoring);

#[pymethods]
impl PyWalkColoring {
    /// Colors every k-walk with `colors[walk]`; the dict must be total.
    #[new]
    fn new(
        graph: &PyDigraph,
        poset: &PyPoset,
        k: usize,
        colors: Vec<(Vec<usize>, usize)>,
    ) -> PyResult<Self> {
        let mut c = WalkColoring::new(Arc::clone(&graph.0), Arc::clone(&poset.0), k);
        for (walk, x) in colors {
            c.set(&walk, x).map_err(to_py)?;
        }
        c.check_total().map_err(to_py)?;
        Ok(PyWalkColoring(c))
    }

    /// Parses coloring JSON for `graph`; poset paths resolve against
    /// `base_dir`.
    #[staticmethod]
    #[pyo3(signature = (s, graph, base_dir = "."))]
    fn from_json(s: &str, graph: &PyDigraph, base_dir: &str) -> PyResult<Self> {
        let c =
            io::coloring_from_json(s, Arc::clone(&graph.0), Path::new(base_dir)).map_err(to_py)?;
        Ok(PyWalkColoring(c))
    }

    fn to_json(&self) -> String {
        io::coloring_to_json(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("WalkColoring(k={}, walks={})", self.0.k(), self.0.len())
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    #[getter]
    fn graph(&self) -> PyDigraph {
        PyDigraph(Arc::clone(self.0.graph()))
    }

    #[getter]
    fn poset(&self) -> PyPoset {
        PyPoset(Arc::clone(self.0.poset()))
    }

    fn get(&self, walk: Vec<usize>) -> Option<usize> {
        self.0.get(&walk)
    }

    fn entries(&self) -> Vec<(Vec<usize>, usize)> {
        self.0.entries()
    }

    /// `None` when valid, otherwise a (k+1)-walk whose prefix color is
    /// below or equal to its suffix color.
    fn counterexample(&self) -> PyResult<Option<Vec<usize>>> {
        Ok(match coloring::verify_coloring(&self.0).map_err(to_py)? {
            Verdict::Valid => None,
            Verdict::Counterexample(w) => Some(w),
        })
    }

    fn is_valid(&self) -> PyResult<bool> {
        Ok(self.counterexample()?.is_none())
    }

    /// The induced coloring of the (k-1)-walks by antichains.
    #[pyo3(signature = (limit = DEFAULT_ANTICHAIN_LIMIT))]
    fn reduce(&self, limit: usize) -> PyResult<Self> {
        Ok(PyWalkColoring(
            coloring::reduce_coloring(&self.0, limit).map_err(to_py)?,
        ))
    }

    /// From a coloring by antichains back to a coloring of the (k+1)-walks
    /// by the base poset.
    #[pyo3(signature = (relaxed = false))]
    fn lift(&self, relaxed: bool) -> PyResult<Self> {
        let c = if relaxed {
            coloring::lift_coloring_relaxed(&self.0)
        } else {
            coloring::lift_coloring(&self.0)
        };
        Ok(PyWalkColoring(c.map_err(to_py)?))
    }

    /// Recolors the longer `k_new`-walks by their first k-walk.
    fn expand(&self, k_new: usize) -> PyResult<Self> {
        Ok(PyWalkColoring(
            coloring::expand_trivial(&self.0, k_new).map_err(to_py)?,
        ))
    }

    /// Expansion to the (k+1)-walks through the down-set representation.
    fn expand_down_sets(&self) -> PyResult<Self> {
        let rep = SetRepresentation::down_sets(Arc::clone(self.0.poset()));
        Ok(PyWalkColoring(
            coloring::expand_representation(&self.0, &rep).map_err(to_py)?,
        ))
    }

    /// Expansion to the (k+1)-walks colored by join-irreducibles; the
    /// poset must be a distributive lattice.
    fn expand_distributive(&self) -> PyResult<Self> {
        Ok(PyWalkColoring(
            coloring::expand_distributive(&self.0).map_err(to_py)?,
        ))
    }
}

/// Decides whether the k-walks of `graph` can be colored by `poset`;
/// returns a coloring or `None`.
#[pyfunction]
#[pyo3(signature = (graph, poset, k, direct = false, limit = DEFAULT_ANTICHAIN_LIMIT, max_nodes = 50_000_000, seed = None))]
fn decide(
    graph: &PyDigraph,
    poset: &PyPoset,
    k: usize,
    direct: bool,
    limit: usize,
    max_nodes: u64,
    seed: Option<u64>,
) -> PyResult<Option<PyWalkColoring>> {
    let cfg = config(limit, max_nodes, DEFAULT_MAX_CHROMATIC_N, seed);
    let d = if direct {
        coloring::search_walk_coloring_direct(&graph.0, k, &poset.0, &cfg)
    } else {
        coloring::decide_kwalk_colorable(&graph.0, k, &poset.0, &cfg)
    };
    Ok(match d.map_err(to_py)? {
        Decision::Feasible(c) => Some(PyWalkColoring(c)),
        Decision::Infeasible => None,
    })
}

/// Least number of colors for edges with consecutive edges colored
/// differently.
#[pyfunction]
#[pyo3(signature = (graph, max_nodes = 50_000_000))]
fn directed_chromatic_index(graph: &PyDigraph, max_nodes: u64) -> PyResult<usize> {
    let cfg = config(
        DEFAULT_ANTICHAIN_LIMIT,
        max_nodes,
        DEFAULT_MAX_CHROMATIC_N,
        None,
    );
    coloring::directed_chromatic_index(&graph.0, &cfg).map_err(to_py)
}

/// Orientation of the undirected version of `graph` with the least
/// possible index, and an edge coloring achieving it.
#[pyfunction]
fn min_index_orientation(graph: &PyDigraph) -> PyResult<(PyDigraph, PyWalkColoring)> {
    let (g, c) =
        coloring::min_index_orientation(&graph.0, &SolverConfig::default()).map_err(to_py)?;
    Ok((PyDigraph(Arc::new(g)), PyWalkColoring(c)))
}

/// `(chi, log2_chi, length, log2_len1, sperner_r_of_chi)`.
type BoundsTuple = (usize, usize, Option<usize>, Option<usize>, usize);

/// `(chi, log2_chi, length, log2_len1, sperner_r_of_chi)`; lengths are
/// `None` for cyclic graphs.
#[pyfunction]
#[pyo3(signature = (graph, max_n = DEFAULT_MAX_CHROMATIC_N))]
fn bounds(graph: &PyDigraph, max_n: usize) -> PyResult<BoundsTuple> {
    let r = bounds_report(&graph.0, max_n).map_err(to_py)?;
    Ok((
        r.chi,
        r.log2_chi,
        length_to_py(r.length),
        r.log2_len1,
        r.sperner_r_of_chi,
    ))
}

/// Least `r` with `C(r, floor(r/2)) >= m`.
#[pyfunction]
fn sperner_r(m: usize) -> usize {
    coloring::sperner_r(m)
}

/// Edge coloring with no color-`i` walk longer than `bounds[i]`, as
/// `(vertex_coloring, edge_coloring)`, or `None`.
#[pyfunction]
#[pyo3(signature = (graph, bounds, cap = DEFAULT_PRODUCT_CAP))]
fn mono_edge_coloring(
    graph: &PyDigraph,
    bounds: Vec<usize>,
    cap: usize,
) -> PyResult<Option<(PyWalkColoring, PyWalkColoring)>> {
    let cfg = SolverConfig {
        product_cap: cap,
        ..SolverConfig::default()
    };
    Ok(
        match coloring::bounded_mono_edge_coloring(&graph.0, &bounds, &cfg).map_err(to_py)? {
            MonoOutcome::Feasible { vertex, edges } => {
                Some((PyWalkColoring(vertex), PyWalkColoring(edges)))
            }
            MonoOutcome::Infeasible => None,
        },
    )
}

/// A proper coloring of the path `0 - 1 - ... - (n-1)`, with the
/// deterministic color-reduction steps.
#[pyclass(name = "ListState", module = "walkcolor", frozen)]
struct PyListState(symmetry::ListState);

#[pymethods]
impl PyListState {
    #[new]
    fn new(colors: Vec<u64>, domain_size: u64) -> PyResult<Self> {
        Ok(PyListState(
            symmetry::ListState::new(colors, domain_size).map_err(to_py)?,
        ))
    }

    /// A random permutation of `0..n`, seeded.
    #[staticmethod]
    #[pyo3(signature = (n, seed = 0))]
    fn random_permutation(n: usize, seed: u64) -> Self {
        PyListState(symmetry::ListState::random_permutation(n, seed))
    }

    fn colors(&self) -> Vec<u64> {
        self.0.colors().to_vec()
    }

    #[getter]
    fn round(&self) -> usize {
        self.0.round()
    }

    #[getter]
    fn domain_size(&self) -> u64 {
        self.0.domain_size()
    }

    fn is_proper(&self) -> bool {
        self.0.is_proper()
    }

    fn step(&self) -> Self {
        PyListState(self.0.cv_step())
    }

    /// Steps until at most six colors remain; returns the state and the
    /// number of rounds.
    fn run_to_small(&self) -> (Self, usize) {
        let (s, rounds) = self.0.run_to_small();
        (PyListState(s), rounds)
    }

    fn reduce_to_three(&self) -> PyResult<Self> {
        Ok(PyListState(self.0.reduce_to_three().map_err(to_py)?))
    }

    fn ruling_set(&self) -> PyResult<Vec<usize>> {
        self.0.ruling_set().map_err(to_py)
    }
}

#[pyfunction]
fn log_star(n: u64) -> usize {
    symmetry::log_star(n)
}

/// The coloring of the (steps+1)-walks of the complete symmetric digraph
/// on `n` vertices given by `steps` reduction rounds.
#[pyfunction]
#[pyo3(signature = (n, steps, max_walks = 1 << 20))]
fn composed_walk_coloring(n: usize, steps: usize, max_walks: u128) -> PyResult<PyWalkColoring> {
    let (c, _) = symmetry::composed_walk_coloring(n, steps, max_walks).map_err(to_py)?;
    Ok(PyWalkColoring(c))
}

#[pymodule]
fn walkcolor(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("WalkcolorError", m.py().get_type::<WalkcolorError>())?;
    m.add(
        "ResourceLimitError",
        m.py().get_type::<ResourceLimitError>(),
    )?;
    m.add_class::<PyPoset>()?;
    m.add_class::<PyDigraph>()?;
    m.add_class::<PyWalkColoring>()?;
    m.add_class::<PyListState>()?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(directed_chromatic_index, m)?)?;
    m.add_function(wrap_pyfunction!(min_index_orientation, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(sperner_r, m)?)?;
    m.add_function(wrap_pyfunction!(mono_edge_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(log_star, m)?)?;
    m.add_function(wrap_pyfunction!(composed_walk_coloring, m)?)?;
    Ok(())
}
