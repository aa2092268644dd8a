//! Python bindings: exposes instances, the oracle, the class solvers, the
//! instance transformers, and the cost optimizers as the `spr_py` module.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use spr_core::classes::{
    bounded_diameter_solve, chord_label, circle_solve, circular_arc_solve, hypercube_solve,
    kendall_tau as kt, permutation_solve, weakly_modular_solve, ArcRep, BoundedParams, ChordRep,
    HypercubeRep, PermutationRep, SolveOutcome,
};
use spr_core::cost::{self, CostModel, TopL};
use spr_core::io::{format_instance, load_instance};
use spr_core::reductions;
use spr_core::{
    k_step_neighbors, large_k_shortcut, reconfig_diameter, shortest_reconfig_sequence, Diameter,
    Error, ReconfigSequence, ShortestPath, StInstance, DEFAULT_PATH_CAP,
};

fn to_py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn stages_of(seq: &ReconfigSequence) -> Vec<Vec<usize>> {
    seq.stages()
}

/// An s-t instance: the graph plus its designated endpoints.
#[pyclass(frozen, name = "Instance")]
struct PyInstance {
    inner: StInstance,
}

impl PyInstance {
    fn path(&self, vertices: Vec<usize>) -> PyResult<ShortestPath> {
        ShortestPath::new(&self.inner, vertices).map_err(to_py_err)
    }
}

#[pymethods]
impl PyInstance {
    /// Parse an instance from the text file format.
    #[staticmethod]
    fn load(text: &str) -> PyResult<Self> {
        let loaded = load_instance(text).map_err(to_py_err)?;
        Ok(PyInstance {
            inner: loaded.instance,
        })
    }

    #[staticmethod]
    fn from_edges(n: usize, edges: Vec<(usize, usize)>, s: usize, t: usize) -> PyResult<Self> {
        let g = spr_core::Graph::from_edges(n, &edges).map_err(to_py_err)?;
        Ok(PyInstance {
            inner: StInstance::new(g, s, t).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn s(&self) -> usize {
        self.inner.s()
    }

    #[getter]
    fn t(&self) -> usize {
        self.inner.t()
    }

    #[getter]
    fn st_distance(&self) -> usize {
        self.inner.st_distance()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.graph().edges()
    }

    fn count_shortest_paths(&self) -> num_bigint::BigUint {
        self.inner.count_shortest_paths()
    }

    #[pyo3(signature = (cap = DEFAULT_PATH_CAP))]
    fn enumerate_shortest_paths(&self, cap: usize) -> PyResult<Vec<Vec<usize>>> {
        Ok(self
            .inner
            .enumerate_shortest_paths(cap)
            .map_err(to_py_err)?
            .into_iter()
            .map(|p| p.vertices().to_vec())
            .collect())
    }

    fn is_st_shortest_path(&self, vertices: Vec<usize>) -> bool {
        self.inner.is_st_shortest_path(&vertices)
    }

    /// BFS layer of every vertex from `source`; None marks unreachable ones.
    fn bfs_layers(&self, source: usize) -> PyResult<Vec<Option<usize>>> {
        if source >= self.inner.n() {
            return Err(PyValueError::new_err("source out of range"));
        }
        let layering = self.inner.bfs_layering(source);
        Ok((0..self.inner.n()).map(|v| layering.layer(v)).collect())
    }

    /// Subgraph of edges on at least one s-t shortest path, as an instance.
    fn prune_to_shortest_dag(&self) -> PyResult<Self> {
        let pruned = self.inner.prune_to_shortest_dag();
        Ok(PyInstance {
            inner: StInstance::new(pruned, self.inner.s(), self.inner.t()).map_err(to_py_err)?,
        })
    }

    fn interval(&self, u: usize, v: usize) -> PyResult<Vec<usize>> {
        Ok(self
            .inner
            .graph()
            .interval(u, v)
            .map_err(to_py_err)?
            .into_iter()
            .collect())
    }

    /// Canonical instance-file rendering.
    fn render(&self) -> String {
        format_instance(&self.inner, None)
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(n={}, m={}, s={}, t={}, d={})",
            self.inner.n(),
            self.inner.graph().edge_count(),
            self.inner.s(),
            self.inner.t(),
            self.inner.st_distance()
        )
    }
}

fn outcome_tuple(out: SolveOutcome) -> (bool, Option<Vec<Vec<usize>>>) {
    (out.reconfigurable, out.sequence.as_ref().map(stages_of))
}

// ----- oracle ---------------------------------------------------------------

/// All shortest paths one k-step away from `path`.
#[pyfunction(name = "k_step_neighbors")]
#[pyo3(signature = (instance, path, k = 1))]
fn py_k_step_neighbors(
    instance: &PyInstance,
    path: Vec<usize>,
    k: usize,
) -> PyResult<Vec<Vec<usize>>> {
    let p = instance.path(path)?;
    Ok(k_step_neighbors(&instance.inner, &p, k)
        .map_err(to_py_err)?
        .into_iter()
        .map(|q| q.vertices().to_vec())
        .collect())
}

/// Minimum-step sequence of stages from p to q, or None if unreachable.
#[pyfunction(name = "shortest_reconfig_sequence")]
#[pyo3(signature = (instance, p, q, k = 1, cap = DEFAULT_PATH_CAP))]
fn py_shortest_reconfig_sequence(
    instance: &PyInstance,
    p: Vec<usize>,
    q: Vec<usize>,
    k: usize,
    cap: usize,
) -> PyResult<Option<Vec<Vec<usize>>>> {
    let p = instance.path(p)?;
    let q = instance.path(q)?;
    Ok(shortest_reconfig_sequence(&instance.inner, &p, &q, k, cap)
        .map_err(to_py_err)?
        .as_ref()
        .map(stages_of))
}

/// Diameter of the k-step reconfiguration graph; None when disconnected.
#[pyfunction(name = "reconfig_diameter")]
#[pyo3(signature = (instance, k = 1, cap = DEFAULT_PATH_CAP))]
fn py_reconfig_diameter(instance: &PyInstance, k: usize, cap: usize) -> PyResult<Option<usize>> {
    match reconfig_diameter(&instance.inner, k, cap).map_err(to_py_err)? {
        Diameter::Finite(d) => Ok(Some(d)),
        Diameter::Infinite => Ok(None),
    }
}

/// At most two block steps from p to q, valid whenever k >= n/2.
#[pyfunction(name = "large_k_shortcut")]
fn py_large_k_shortcut(
    instance: &PyInstance,
    p: Vec<usize>,
    q: Vec<usize>,
    k: usize,
) -> PyResult<Vec<Vec<usize>>> {
    let p = instance.path(p)?;
    let q = instance.path(q)?;
    Ok(stages_of(
        &large_k_shortcut(&instance.inner, &p, &q, k).map_err(to_py_err)?,
    ))
}

// ----- class solvers ----------------------------------------------------------

/// Permutation-graph solver; sigma is the permutation as a list.
#[pyfunction(name = "solve_permutation")]
fn py_solve_permutation(
    sigma: Vec<usize>,
    instance: &PyInstance,
    p: Vec<usize>,
    q: Vec<usize>,
) -> PyResult<(bool, Option<Vec<Vec<usize>>>)> {
    let rep = PermutationRep::new(sigma).map_err(to_py_err)?;
    let p = instance.path(p)?;
    let q = instance.path(q)?;
    Ok(outcome_tuple(
        permutation_solve(&rep, &instance.inner, &p, &q).map_err(to_py_err)?,
    ))
}

/// Circle-graph solver; chords maps each vertex to its two circle positions.
#[pyfunction(name = "solve_circle")]
fn py_solve_circle(
    chords: Vec<(u32, u32)>,
    instance: &PyInstance,
    p: Vec<usize>,
    q: Vec<usize>,
) -> PyResult<(bool, Option<Vec<Vec<usize>>>)> {
    let rep = ChordRep::new(chords).map_err(to_py_err)?;
    let p = instance.path(p)?;
    let q = instance.path(q)?;
    Ok(outcome_tuple(
        circle_solve(&rep, &instance.inner, &p, &q).map_err(to_py_err)?,
    ))
}

/// The label a path carries in a circle instance, as a string.
#[pyfunction(name = "path_label")]
fn py_path_label(
    chords: Vec<(u32, u32)>,
    instance: &PyInstance,
    path: Vec<usize>,
) -> PyResult<String> {
    let rep = ChordRep::new(chords).map_err(to_py_err)?;
    let p = instance.path(path)?;
    Ok(chord_label(&rep, &instance.inner, &p)
        .map_err(to_py_err)?
        .to_string())
}

/// Circular-arc solver; arcs maps each vertex to its (start, end) positions.
#[pyfunction(name = "solve_circular_arc")]
#[pyo3(signature = (arcs, positions, instance, p, q))]
fn py_solve_circular_arc(
    arcs: Vec<(u32, u32)>,
    positions: u32,
    instance: &PyInstance,
    p: Vec<usize>,
    q: Vec<usize>,
) -> PyResult<(bool, Option<Vec<Vec<usize>>>)> {
    let rep = ArcRep::new(arcs, positions).map_err(to_py_err)?;
    let p = instance.path(p)?;
    let q = instance.path(q)?;
    Ok(outcome_tuple(
        circular_arc_solve(&rep, &instance.inner, &p, &q).map_err(to_py_err)?,
    ))
}

/// Weakly-modular solver; returns the stages of the merge sequence.
#[pyfunction(name = "solve_weakly_modular")]
fn py_solve_weakly_modular(
    instance: &PyInstance,
    p: Vec<usize>,
    q: Vec<usize>,
) -> PyResult<Vec<Vec<usize>>> {
    let p = instance.path(p)?;
    let q = instance.path(q)?;
    let out = weakly_modular_solve(&instance.inner, &p, &q).map_err(to_py_err)?;
    Ok(stages_of(&out.sequence))
}

/// Exact bounded-distance solver through the oracle.
#[pyfunction(name = "solve_bounded")]
#[pyo3(signature = (instance, p, q, c_max = 6, cap = DEFAULT_PATH_CAP))]
fn py_solve_bounded(
    instance: &PyInstance,
    p: Vec<usize>,
    q: Vec<usize>,
    c_max: usize,
    cap: usize,
) -> PyResult<(bool, Option<Vec<Vec<usize>>>)> {
    let p = instance.path(p)?;
    let q = instance.path(q)?;
    let params = BoundedParams {
        c_max,
        path_cap: cap,
    };
    Ok(outcome_tuple(
        bounded_diameter_solve(&instance.inner, &p, &q, &params).map_err(to_py_err)?,
    ))
}

/// Optimal hypercube solver: adjacent-transposition steps, Kendall tau many.
#[pyfunction(name = "solve_hypercube")]
fn py_solve_hypercube(
    d: u32,
    s: usize,
    t: usize,
    p: Vec<usize>,
    q: Vec<usize>,
) -> PyResult<Vec<Vec<usize>>> {
    let rep = HypercubeRep::new(d).map_err(to_py_err)?;
    let inst = spr_core::classes::hypercube_instance(d, s, t).map_err(to_py_err)?;
    let p = ShortestPath::new(&inst, p).map_err(to_py_err)?;
    let q = ShortestPath::new(&inst, q).map_err(to_py_err)?;
    Ok(stages_of(
        &hypercube_solve(&rep, s, t, &p, &q).map_err(to_py_err)?,
    ))
}

/// Number of pairwise order disagreements between two permutations.
#[pyfunction(name = "kendall_tau")]
fn py_kendall_tau(p: Vec<u32>, q: Vec<u32>) -> PyResult<u64> {
    kt(&p, &q).map_err(to_py_err)
}

// ----- reductions -------------------------------------------------------------

/// Chain of g complete-bipartite (2 x l) gadgets: exactly l^g shortest paths.
#[pyfunction(name = "gadget_chain")]
fn py_gadget_chain(g: usize, l: usize) -> PyResult<PyInstance> {
    if g == 0 || l == 0 {
        return Err(PyValueError::new_err("g and l must be positive"));
    }
    Ok(PyInstance {
        inner: reductions::gadget_chain(g, l),
    })
}

/// Boolean hypercube instance on d-bit strings.
#[pyfunction(name = "hypercube_instance")]
fn py_hypercube_instance(d: u32, s: usize, t: usize) -> PyResult<PyInstance> {
    Ok(PyInstance {
        inner: spr_core::classes::hypercube_instance(d, s, t).map_err(to_py_err)?,
    })
}

/// k-SPR line-graph reduction: the reduced instance plus the mapped paths.
#[pyfunction(name = "line_reduction")]
fn py_line_reduction(
    instance: &PyInstance,
    p: Vec<usize>,
    q: Vec<usize>,
    k: usize,
) -> PyResult<(PyInstance, Vec<usize>, Vec<usize>)> {
    let p = instance.path(p)?;
    let q = instance.path(q)?;
    let (red, pm, qm) =
        reductions::kspr_line_instance(&instance.inner, &p, &q, k).map_err(to_py_err)?;
    Ok((
        PyInstance {
            inner: red.instance,
        },
        pm.vertices().to_vec(),
        qm.vertices().to_vec(),
    ))
}

/// k-th graph power of the instance, same endpoints.
#[pyfunction(name = "graph_power")]
fn py_graph_power(instance: &PyInstance, k: usize) -> PyResult<PyInstance> {
    if k == 0 {
        return Err(PyValueError::new_err("k must be positive"));
    }
    let powered = reductions::graph_power(instance.inner.graph(), k);
    Ok(PyInstance {
        inner: StInstance::new(powered, instance.inner.s(), instance.inner.t())
            .map_err(to_py_err)?,
    })
}

/// A shortest path mapped into the k-th power: every k-th vertex plus t.
#[pyfunction(name = "power_map_path")]
fn py_power_map_path(instance: &PyInstance, path: Vec<usize>, k: usize) -> PyResult<Vec<usize>> {
    let p = instance.path(path)?;
    Ok(reductions::power_map_path(&instance.inner, &p, k))
}

/// Every edge replaced by a path with l fresh interior vertices.
#[pyfunction(name = "subdivide_uniform")]
fn py_subdivide_uniform(instance: &PyInstance, l: usize) -> PyResult<PyInstance> {
    let sub = reductions::subdivide_uniform(instance.inner.graph(), l);
    Ok(PyInstance {
        inner: StInstance::new(sub, instance.inner.s(), instance.inner.t()).map_err(to_py_err)?,
    })
}

/// Step (i) of the line-graph construction: stretch even-to-odd layer edges
/// into paths on k vertices.
#[pyfunction(name = "even_odd_subdivide")]
fn py_even_odd_subdivide(instance: &PyInstance, k: usize) -> PyResult<PyInstance> {
    let g = reductions::even_odd_subdivide(&instance.inner, k).map_err(to_py_err)?;
    Ok(PyInstance {
        inner: StInstance::new(g, instance.inner.s(), instance.inner.t()).map_err(to_py_err)?,
    })
}

// ----- cost variants -----------------------------------------------------------

fn parse_costs(costs: Vec<(BigInt, BigInt)>) -> PyResult<CostModel> {
    let entries = costs
        .into_iter()
        .map(|(num, den)| cost::Cost::new(num, den))
        .collect();
    CostModel::new(entries).map_err(to_py_err)
}

fn costed_dict(py: Python<'_>, out: &cost::CostedSequence) -> PyResult<Py<PyDict>> {
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    let to_frac = |c: &cost::Cost| -> PyResult<Py<PyAny>> {
        Ok(fraction
            .call1((c.numer().clone(), c.denom().clone()))?
            .unbind())
    };
    let d = PyDict::new(py);
    d.set_item("objective", to_frac(&out.objective)?)?;
    d.set_item("total", to_frac(&out.total)?)?;
    d.set_item("max", to_frac(&out.max)?)?;
    d.set_item(
        "step_costs",
        out.step_costs
            .iter()
            .map(to_frac)
            .collect::<PyResult<Vec<_>>>()?,
    )?;
    d.set_item("stages", stages_of(&out.sequence))?;
    Ok(d.unbind())
}

/// Minimum total cost; costs is a list of (numerator, denominator) pairs.
#[pyfunction(name = "min_sum")]
#[pyo3(signature = (instance, p, q, costs, cap = DEFAULT_PATH_CAP))]
fn py_min_sum(
    py: Python<'_>,
    instance: &PyInstance,
    p: Vec<usize>,
    q: Vec<usize>,
    costs: Vec<(BigInt, BigInt)>,
    cap: usize,
) -> PyResult<Py<PyDict>> {
    let p = instance.path(p)?;
    let q = instance.path(q)?;
    let model = parse_costs(costs)?;
    let out = cost::min_sum(&instance.inner, &p, &q, &model, cap)
        .map_err(to_py_err)?
        .expect("always feasible");
    costed_dict(py, &out)
}

/// Minimum over sequences of the largest step cost.
#[pyfunction(name = "min_max")]
#[pyo3(signature = (instance, p, q, costs, cap = DEFAULT_PATH_CAP))]
fn py_min_max(
    py: Python<'_>,
    instance: &PyInstance,
    p: Vec<usize>,
    q: Vec<usize>,
    costs: Vec<(BigInt, BigInt)>,
    cap: usize,
) -> PyResult<Py<PyDict>> {
    let p = instance.path(p)?;
    let q = instance.path(q)?;
    let model = parse_costs(costs)?;
    let out = cost::min_max(&instance.inner, &p, &q, &model, cap)
        .map_err(to_py_err)?
        .expect("always feasible");
    costed_dict(py, &out)
}

/// Minimum sum of the l largest step costs; l = None means unbounded.
#[pyfunction(name = "min_top_l")]
#[pyo3(signature = (instance, p, q, costs, l = None, cap = DEFAULT_PATH_CAP))]
fn py_min_top_l(
    py: Python<'_>,
    instance: &PyInstance,
    p: Vec<usize>,
    q: Vec<usize>,
    costs: Vec<(BigInt, BigInt)>,
    l: Option<usize>,
    cap: usize,
) -> PyResult<Py<PyDict>> {
    let p = instance.path(p)?;
    let q = instance.path(q)?;
    let model = parse_costs(costs)?;
    let l = match l {
        Some(l) => TopL::Bounded(l),
        None => TopL::Unbounded,
    };
    let out = cost::min_top_l(&instance.inner, &p, &q, &model, l, cap)
        .map_err(to_py_err)?
        .expect("always feasible");
    costed_dict(py, &out)
}

/// The SPR verdict through the two-tier cost construction.
#[pyfunction(name = "reduc_decide")]
#[pyo3(signature = (instance, p, q, l = 2, cap = DEFAULT_PATH_CAP))]
fn py_reduc_decide(
    instance: &PyInstance,
    p: Vec<usize>,
    q: Vec<usize>,
    l: usize,
    cap: usize,
) -> PyResult<bool> {
    let p = instance.path(p)?;
    let q = instance.path(q)?;
    cost::reduc_decide(&instance.inner, &p, &q, l, cap).map_err(to_py_err)
}

#[pymodule]
fn spr_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(py_k_step_neighbors, m)?)?;
    m.add_function(wrap_pyfunction!(py_shortest_reconfig_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(py_reconfig_diameter, m)?)?;
    m.add_function(wrap_pyfunction!(py_large_k_shortcut, m)?)?;
    m.add_function(wrap_pyfunction!(py_solve_permutation, m)?)?;
    m.add_function(wrap_pyfunction!(py_solve_circle, m)?)?;
    m.add_function(wrap_pyfunction!(py_path_label, m)?)?;
    m.add_function(wrap_pyfunction!(py_solve_circular_arc, m)?)?;
    m.add_function(wrap_pyfunction!(py_solve_weakly_modular, m)?)?;
    m.add_function(wrap_pyfunction!(py_solve_bounded, m)?)?;
    m.add_function(wrap_pyfunction!(py_solve_hypercube, m)?)?;
    m.add_function(wrap_pyfunction!(py_kendall_tau, m)?)?;
    m.add_function(wrap_pyfunction!(py_gadget_chain, m)?)?;
    m.add_function(wrap_pyfunction!(py_hypercube_instance, m)?)?;
    m.add_function(wrap_pyfunction!(py_line_reduction, m)?)?;
    m.add_function(wrap_pyfunction!(py_graph_power, m)?)?;
    m.add_function(wrap_pyfunction!(py_power_map_path, m)?)?;
    m.add_function(wrap_pyfunction!(py_subdivide_uniform, m)?)?;
    m.add_function(wrap_pyfunction!(py_even_odd_subdivide, m)?)?;
    m.add_function(wrap_pyfunction!(py_min_sum, m)?)?;
    m.add_function(wrap_pyfunction!(py_min_max, m)?)?;
    m.add_function(wrap_pyfunction!(py_min_top_l, m)?)?;
    m.add_function(wrap_pyfunction!(py_reduc_decide, m)?)?;
    m.add("DEFAULT_PATH_CAP", DEFAULT_PATH_CAP)?;
    Ok(())
}
