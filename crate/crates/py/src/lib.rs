//! Python module `pyenarena`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use enarena::harness::{crosscheck as run_crosscheck, random_arena as gen_arena, GenParams, Pair};
use enarena::lwpoly::universal_cycle_table;
use enarena::reductions;
use enarena::solve::{solve as run_solve, SolveOptions, SolveReport};
use enarena::violation;
use enarena::{ConstraintSpec, Kind, Measure, Objective};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse<T: std::str::FromStr<Err = String>>(s: &str) -> PyResult<T> {
    s.parse().map_err(PyValueError::new_err)
}

#[pyclass(name = "Arena", frozen)]
struct PyArena {
    inner: enarena::Arena,
}

#[pymethods]
impl PyArena {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        enarena::parse_arena(text).map(|inner| PyArena { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        enarena::parse_arena_json(text).map(|inner| PyArena { inner }).map_err(err)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        enarena::load_arena(path.as_ref()).map(|inner| PyArena { inner }).map_err(err)
    }

    #[getter]
    fn num_states(&self) -> usize {
        self.inner.num_states()
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner.states().map(|q| self.inner.name(q).to_string()).collect()
    }

    #[getter]
    fn initial(&self) -> String {
        self.inner.name(self.inner.initial()).to_string()
    }

    #[getter]
    fn targets(&self) -> Vec<String> {
        self.inner.targets().iter().map(|&q| self.inner.name(q).to_string()).collect()
    }

    /// `(src, weight, dst)` by name.
    #[getter]
    fn edges(&self) -> Vec<(String, i64, String)> {
        let a = &self.inner;
        a.edges()
            .iter()
            .map(|e| (a.name(e.src).to_string(), e.weight, a.name(e.dst).to_string()))
            .collect()
    }

    fn is_one_player(&self) -> bool {
        self.inner.is_one_player()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!("Arena(states={}, edges={})", self.inner.num_states(), self.inner.edges().len())
    }
}

#[pyclass(name = "SolveResult", frozen)]
struct PySolveResult {
    report: SolveReport,
}

#[pymethods]
impl PySolveResult {
    /// `"P1"` or `"P2"`.
    #[getter]
    fn winner(&self) -> String {
        format!("{:?}", self.report.winner)
    }

    #[getter]
    fn p1_wins(&self) -> bool {
        self.report.p1_wins()
    }

    #[getter]
    fn solver(&self) -> &'static str {
        self.report.solver
    }

    #[getter]
    fn states(&self) -> Option<Vec<String>> {
        self.report.witness.as_ref().map(|w| w.states.clone())
    }

    #[getter]
    fn levels(&self) -> Option<Vec<i64>> {
        self.report.witness.as_ref().map(|w| w.levels.clone())
    }

    #[getter]
    fn configs(&self) -> Option<usize> {
        self.report.stats.configs
    }

    #[getter]
    fn labels(&self) -> Option<usize> {
        self.report.stats.labels
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.report).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("SolveResult(winner={:?}, solver={:?})", self.report.winner, self.report.solver)
    }
}

#[pyfunction]
#[pyo3(signature = (arena, kind, L, U=None, W=None, S=None, V=None, measure=None, objective="reach", oracle=false))]
#[allow(non_snake_case, clippy::too_many_arguments)]
fn solve(
    arena: &PyArena,
    kind: &str,
    L: i64,
    U: Option<i64>,
    W: Option<i64>,
    S: Option<i64>,
    V: Option<i64>,
    measure: Option<&str>,
    objective: &str,
    oracle: bool,
) -> PyResult<PySolveResult> {
    let objective: Objective = parse(objective)?;
    let missing = |f: &str| PyValueError::new_err(format!("{f} is required for kind {kind}"));
    let spec = match parse::<Kind>(kind)? {
        Kind::L => ConstraintSpec::lower(L, objective),
        Kind::LU => ConstraintSpec::interval(L, U.ok_or_else(|| missing("U"))?, objective),
        Kind::LW => ConstraintSpec::weak(L, W.ok_or_else(|| missing("W"))?, objective),
        Kind::LV => ConstraintSpec::soft(
            L,
            S.ok_or_else(|| missing("S"))?,
            U.ok_or_else(|| missing("U"))?,
            V.ok_or_else(|| missing("V"))?,
            parse(measure.ok_or_else(|| missing("measure"))?)?,
            objective,
        ),
    };
    let opts = SolveOptions { oracle, stable: true };
    let out = run_solve(&arena.inner, &spec, opts).map_err(err)?;
    Ok(PySolveResult { report: out.report })
}

/// `(bestV, bestU)`, or `None` when no bound up to `v_max` wins.
#[pyfunction]
#[pyo3(signature = (arena, L, S, v_max, measure="count", objective="reach"))]
#[allow(non_snake_case)]
fn minimize(arena: &PyArena, L: i64, S: i64, v_max: i64, measure: &str, objective: &str) -> PyResult<Option<(i64, i64)>> {
    let m: Measure = parse(measure)?;
    let o: Objective = parse(objective)?;
    let r = violation::minimize(&arena.inner, L, S, v_max, m, o).map_err(err)?;
    Ok(r.map(|r| (r.best_v, r.best_u)))
}

/// `(count, consecutive, sum)` of positions above `S`.
#[pyfunction]
#[allow(non_snake_case)]
fn violation_stats(levels: Vec<i64>, S: i64) -> (i64, i64, i64) {
    let s = violation::violation_stats(&levels, S);
    (s.count, s.max_consecutive, s.sum)
}

/// `m_q` per state, `None` where no positive universal cycle exists.
#[pyfunction]
#[allow(non_snake_case)]
fn universal_cycle_gaps(arena: &PyArena, L: i64, W: i64) -> Vec<Option<i64>> {
    universal_cycle_table(&arena.inner, L, W)
        .cycles
        .iter()
        .map(|c| c.as_ref().map(|c| c.gap))
        .collect()
}

#[pyfunction]
fn reduce_energy_to_reach(arena: &PyArena) -> PyArena {
    PyArena {
        inner: reductions::reduce_energy_to_reach(&arena.inner).arena,
    }
}

#[pyfunction]
fn reduce_reach_to_energy(arena: &PyArena) -> PyResult<PyArena> {
    let r = reductions::reduce_reach_to_energy(&arena.inner).map_err(err)?;
    Ok(PyArena { inner: r.arena })
}

#[pyfunction]
#[pyo3(signature = (seed, states=5, p2=0.0, wmin=-4, wmax=4, density=0.35, targets=1))]
fn random_arena(seed: u64, states: usize, p2: f64, wmin: i64, wmax: i64, density: f64, targets: usize) -> PyResult<PyArena> {
    if states == 0 || wmin > wmax {
        return Err(PyValueError::new_err("need states > 0 and wmin <= wmax"));
    }
    let params = GenParams {
        seed,
        n_states: states,
        p2_fraction: p2,
        weight_min: wmin,
        weight_max: wmax,
        edge_density: density,
        target_count: targets,
    };
    Ok(PyArena {
        inner: gen_arena(&params),
    })
}

/// `(instances, divergent seeds)` for one solver/oracle pair.
#[pyfunction]
#[pyo3(signature = (pair, seeds=100, first_seed=0))]
fn crosscheck(pair: &str, seeds: u64, first_seed: u64) -> PyResult<(u64, Vec<u64>)> {
    let pair: Pair = parse(pair)?;
    let r = run_crosscheck(pair, first_seed, seeds, None).map_err(err)?;
    Ok((r.instances, r.divergences.iter().map(|d| d.seed).collect()))
}

#[pymodule]
fn pyenarena(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyArena>()?;
    m.add_class::<PySolveResult>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(minimize, m)?)?;
    m.add_function(wrap_pyfunction!(violation_stats, m)?)?;
    m.add_function(wrap_pyfunction!(universal_cycle_gaps, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_energy_to_reach, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_reach_to_energy, m)?)?;
    m.add_function(wrap_pyfunction!(random_arena, m)?)?;
    m.add_function(wrap_pyfunction!(crosscheck, m)?)?;
    Ok(())
}
