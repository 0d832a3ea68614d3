//! Python bindings for the `decisive` crate.
//!
//! Taxon and node indices are 0-based; colors are 1-based.

use decisive_core::bounds::{self, CountConfig};
use decisive_core::coloring::verify_no_rainbow;
use decisive_core::emit::{cnf, ilp};
use decisive_core::io::{self, PatternFormat};
use decisive_core::pipeline::Strategy;
use decisive_core::{nrc, oracle, reduce, Coloring, DecideOptions, Error, NrcConfig, NrcOutcome};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(decisive, DecisiveError, PyException);
create_exception!(decisive, SizeLimitError, DecisiveError);
create_exception!(decisive, ParseError, DecisiveError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::SizeLimit { .. } => SizeLimitError::new_err(e.to_string()),
        Error::Parse { .. } => ParseError::new_err(e.to_string()),
        _ => DecisiveError::new_err(e.to_string()),
    }
}

fn nrc_config(search_cap: Option<usize>, parallel: bool) -> NrcConfig {
    let mut cfg = NrcConfig { parallel, ..NrcConfig::default() };
    if let Some(cap) = search_cap {
        cfg.search_cap = cap;
    }
    cfg
}

// Vec<u8> would convert to `bytes`
fn colors(c: Option<Coloring>) -> Option<Vec<u32>> {
    c.map(|c| c.colors().iter().map(|&x| u32::from(x)).collect())
}

/// A hypergraph on nodes `0..node_count`.
#[pyclass(name = "Hypergraph", module = "decisive", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyHypergraph(decisive_core::Hypergraph);

#[pymethods]
impl PyHypergraph {
    #[new]
    fn new(node_count: usize, edges: Vec<Vec<usize>>) -> PyResult<Self> {
        decisive_core::Hypergraph::new(node_count, edges).map(PyHypergraph).map_err(to_py)
    }

    /// Parses the edge-list text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        io::parse_hypergraph_str(text).map(PyHypergraph).map_err(to_py)
    }

    fn to_text(&self) -> String {
        io::write_hypergraph(&self.0)
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.0.node_count()
    }

    #[getter]
    fn edges(&self) -> Vec<Vec<usize>> {
        self.0.edges().to_vec()
    }

    fn connected_components(&self) -> Vec<Vec<usize>> {
        let parts = self.0.connected_components();
        (0..parts.count).map(|id| parts.members(id)).collect()
    }

    /// True iff `colors` (1-based) is a no-rainbow coloring.
    fn is_no_rainbow(&self, r: u8, colors: Vec<u8>) -> PyResult<bool> {
        let c = Coloring::from_assignment(r, colors).map_err(to_py)?;
        Ok(verify_no_rainbow(&self.0, &c))
    }

    fn __len__(&self) -> usize {
        self.0.edge_count()
    }

    fn __repr__(&self) -> String {
        format!("Hypergraph(node_count={}, edges={})", self.0.node_count(), self.0.edge_count())
    }
}

/// A named taxon set with the taxa covered by each locus.
#[pyclass(name = "CoveragePattern", module = "decisive", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPattern(decisive_core::CoveragePattern);

#[pymethods]
impl PyPattern {
    #[new]
    fn new(taxa: Vec<String>, loci: Vec<(String, Vec<usize>)>) -> PyResult<Self> {
        decisive_core::CoveragePattern::new(taxa, loci).map(PyPattern).map_err(to_py)
    }

    /// Pattern on taxa `t1..tn` with loci `l1..lk`.
    #[staticmethod]
    fn from_sets(n: usize, sets: Vec<Vec<usize>>) -> PyResult<Self> {
        decisive_core::CoveragePattern::from_sets(n, &sets).map(PyPattern).map_err(to_py)
    }

    /// `format` is `"matrix-csv"` or `"locus-list"`.
    #[staticmethod]
    #[pyo3(signature = (text, format = "matrix-csv"))]
    fn parse(text: &str, format: &str) -> PyResult<Self> {
        let f: PatternFormat = format.parse().map_err(to_py)?;
        io::parse_pattern_str(text, f).map(PyPattern).map_err(to_py)
    }

    #[pyo3(signature = (format = "matrix-csv"))]
    fn to_text(&self, format: &str) -> PyResult<String> {
        let f: PatternFormat = format.parse().map_err(to_py)?;
        Ok(io::write_pattern(&self.0, f))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    #[getter]
    fn taxa(&self) -> Vec<String> {
        self.0.taxa().to_vec()
    }

    #[getter]
    fn loci(&self) -> Vec<(String, Vec<usize>)> {
        self.0.loci().iter().map(|l| (l.name.clone(), l.taxa.clone())).collect()
    }

    fn hypergraph(&self) -> PyHypergraph {
        PyHypergraph(self.0.hypergraph())
    }

    fn __repr__(&self) -> String {
        format!("CoveragePattern(n={}, k={})", self.0.n(), self.0.k())
    }
}

#[pyclass(name = "Verdict", module = "decisive", frozen, get_all)]
struct PyVerdict {
    decisive: bool,
    decided_by: &'static str,
    /// Four blocks of taxon indices, or None when decisive.
    witness: Option<Vec<Vec<usize>>>,
    explored: u64,
    quadruple_bound_hit: Option<bool>,
    elapsed_ms: f64,
}

#[pymethods]
impl PyVerdict {
    fn __bool__(&self) -> bool {
        self.decisive
    }

    fn __repr__(&self) -> String {
        format!("Verdict(decisive={}, decided_by='{}')", if self.decisive { "True" } else { "False" }, self.decided_by)
    }
}

impl From<decisive_core::Verdict> for PyVerdict {
    fn from(v: decisive_core::Verdict) -> Self {
        PyVerdict {
            decisive: v.decisive,
            decided_by: v.decided_by.as_str(),
            witness: v.witness,
            explored: v.stats.explored,
            quadruple_bound_hit: v.stats.quadruple_bound_hit,
            elapsed_ms: v.stats.elapsed.as_secs_f64() * 1e3,
        }
    }
}

fn decide_options(
    strategy: &str,
    search_cap: Option<usize>,
    oracle_cap: Option<usize>,
    parallel: bool,
) -> PyResult<DecideOptions> {
    let strategy: Strategy = strategy.parse().map_err(to_py)?;
    let mut opts = DecideOptions { strategy, nrc: nrc_config(search_cap, parallel), ..DecideOptions::default() };
    if let Some(cap) = oracle_cap {
        opts.oracle_cap = cap;
    }
    Ok(opts)
}

/// Decides whether the pattern is decisive. `strategy` is one of
/// `"auto"`, `"direct"`, `"fpt"`, `"oracle"`.
#[pyfunction]
#[pyo3(signature = (pattern, strategy = "auto", search_cap = None, oracle_cap = None, parallel = false))]
fn decide(
    py: Python<'_>,
    pattern: &PyPattern,
    strategy: &str,
    search_cap: Option<usize>,
    oracle_cap: Option<usize>,
    parallel: bool,
) -> PyResult<PyVerdict> {
    let opts = decide_options(strategy, search_cap, oracle_cap, parallel)?;
    let p = &pattern.0;
    py.detach(|| decisive_core::decide(p, &opts)).map(PyVerdict::from).map_err(to_py)
}

/// Greedily drops least-covered taxa until the rest is decisive.
/// Returns a dict with `kept`, `removed` and `decided_by`.
#[pyfunction]
#[pyo3(signature = (pattern, strategy = "auto", search_cap = None, oracle_cap = None, parallel = false))]
fn decisive_subset<'py>(
    py: Python<'py>,
    pattern: &PyPattern,
    strategy: &str,
    search_cap: Option<usize>,
    oracle_cap: Option<usize>,
    parallel: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let opts = decide_options(strategy, search_cap, oracle_cap, parallel)?;
    let p = &pattern.0;
    let trace = py.detach(|| decisive_core::decisive_subset(p, &opts)).map_err(|f| to_py(f.error))?;
    let d = PyDict::new(py);
    d.set_item("kept", trace.kept)?;
    let removed: Vec<(usize, String, usize)> =
        trace.removed.into_iter().map(|r| (r.taxon, r.name, r.coverage)).collect();
    d.set_item("removed", removed)?;
    d.set_item("decided_by", trace.verdict.decided_by.as_str())?;
    d.set_item("pattern", PyPattern(trace.pattern))?;
    Ok(d)
}

fn outcome<'py>(py: Python<'py>, out: NrcOutcome) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("rule", out.rule.as_str())?;
    d.set_item("explored", out.explored)?;
    d.set_item("coloring", colors(out.witness))?;
    Ok(d)
}

/// Searches for a no-rainbow `r`-coloring, `r` in 2..=4. Returns a dict
/// with `coloring` (None if there is none), `rule` and `explored`.
#[pyfunction(name = "nrc")]
#[pyo3(signature = (h, r = 4, search_cap = None, parallel = false))]
fn py_nrc<'py>(
    py: Python<'py>,
    h: &PyHypergraph,
    r: u8,
    search_cap: Option<usize>,
    parallel: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = nrc_config(search_cap, parallel);
    let g = &h.0;
    let out = py.detach(|| nrc::nrc(g, r, &cfg)).map_err(to_py)?;
    outcome(py, out)
}

/// The 4-color search through the reduced instance of distinct rows.
#[pyfunction]
#[pyo3(signature = (pattern, search_cap = None, parallel = false))]
fn fpt_nrc4<'py>(
    py: Python<'py>,
    pattern: &PyPattern,
    search_cap: Option<usize>,
    parallel: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = nrc_config(search_cap, parallel);
    let p = &pattern.0;
    let out = py.detach(|| reduce::fpt_nrc4(p, &cfg)).map_err(to_py)?;
    outcome(py, out)
}

/// Exhaustive search; returns a coloring or None.
#[pyfunction]
#[pyo3(signature = (h, r = 4, node_cap = oracle::DEFAULT_NODE_CAP))]
fn brute_force_nrc(py: Python<'_>, h: &PyHypergraph, r: u8, node_cap: usize) -> PyResult<Option<Vec<u32>>> {
    let g = &h.0;
    py.detach(|| oracle::brute_force_nrc(g, r, node_cap)).map(colors).map_err(to_py)
}

/// Number of surjective no-rainbow `r`-colorings, by enumeration.
#[pyfunction]
#[pyo3(signature = (h, r = 4, node_cap = oracle::DEFAULT_NODE_CAP))]
fn count_nrc(py: Python<'_>, h: &PyHypergraph, r: u8, node_cap: usize) -> PyResult<u64> {
    let g = &h.0;
    py.detach(|| oracle::count_nrc(g, r, node_cap)).map_err(to_py)
}

/// `A(n, r)` evaluated by its recurrence.
#[pyfunction]
fn a_recurrence(n: u64, r: u64) -> PyResult<num_bigint::BigUint> {
    bounds::a_recurrence(n, r).map_err(to_py)
}

/// All `r`-sets containing node 0.
#[pyfunction]
fn star_hypergraph(n: usize, r: usize) -> PyResult<PyHypergraph> {
    bounds::star_hypergraph(n, r).map(PyHypergraph).map_err(to_py)
}

/// Covered-quadruple count, threshold, triple coverage and rootedness.
#[pyfunction]
fn bound_report<'py>(py: Python<'py>, pattern: &PyPattern) -> PyResult<Bound<'py, PyDict>> {
    let b = bounds::bound_report(&pattern.0, &CountConfig::default()).map_err(to_py)?;
    let int = |s: &str| -> PyResult<num_bigint::BigUint> {
        s.parse().map_err(|_| DecisiveError::new_err(format!("bad count '{s}'")))
    };
    let d = PyDict::new(py);
    d.set_item("quadruple_count", b.quadruple_count.as_deref().map(int).transpose()?)?;
    d.set_item("threshold", int(&b.threshold)?)?;
    d.set_item("below_threshold", b.below_threshold)?;
    d.set_item("triple_coverage_ok", b.triple_coverage_ok)?;
    d.set_item("first_uncovered_triple", b.first_uncovered_triple)?;
    d.set_item("rooted", b.rooted)?;
    d.set_item("common_taxon", b.common_taxon)?;
    Ok(d)
}

/// The reduced instance: distinct incidence rows and their copies.
#[pyfunction]
fn reduce_summary<'py>(py: Python<'py>, pattern: &PyPattern) -> PyResult<Bound<'py, PyDict>> {
    let s = reduce::summarize(&pattern.0);
    let d = PyDict::new(py);
    d.set_item("reduced_n", s.reduced_n)?;
    d.set_item("spares", s.spares)?;
    d.set_item("row_count_screen", s.row_count_screen)?;
    d.set_item("zero_and_set", s.zero_and_set)?;
    d.set_item("rows", s.rows)?;
    d.set_item("copies", s.copies)?;
    Ok(d)
}

/// The feasibility ILP as LP-format text.
#[pyfunction]
fn emit_ilp(pattern: &PyPattern) -> PyResult<String> {
    ilp::emit_ilp(&pattern.0).map(|m| m.to_lp()).map_err(to_py)
}

/// The 4-coloring CNF as DIMACS text. `mode="aux"` gives one formula;
/// `mode="enumerate"` gives one per pinned color pattern.
#[pyfunction]
#[pyo3(signature = (h, mode = "aux"))]
fn emit_cnf(h: &PyHypergraph, mode: &str) -> PyResult<Vec<String>> {
    let formulas = match mode {
        "aux" => vec![cnf::emit_cnf_aux(&h.0).map_err(to_py)?],
        "enumerate" => cnf::emit_cnf_enumerate(&h.0).map_err(to_py)?,
        other => return Err(DecisiveError::new_err(format!("unknown CNF mode '{other}'"))),
    };
    Ok(formulas.iter().map(|f| f.to_dimacs()).collect())
}

#[pymodule]
fn decisive(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("DecisiveError", py.get_type::<DecisiveError>())?;
    m.add("SizeLimitError", py.get_type::<SizeLimitError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add_class::<PyHypergraph>()?;
    m.add_class::<PyPattern>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(decisive_subset, m)?)?;
    m.add_function(wrap_pyfunction!(py_nrc, m)?)?;
    m.add_function(wrap_pyfunction!(fpt_nrc4, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_nrc, m)?)?;
    m.add_function(wrap_pyfunction!(count_nrc, m)?)?;
    m.add_function(wrap_pyfunction!(a_recurrence, m)?)?;
    m.add_function(wrap_pyfunction!(star_hypergraph, m)?)?;
    m.add_function(wrap_pyfunction!(bound_report, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_summary, m)?)?;
    m.add_function(wrap_pyfunction!(emit_ilp, m)?)?;
    m.add_function(wrap_pyfunction!(emit_cnf, m)?)?;
    Ok(())
}
