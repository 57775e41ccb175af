//! Python bindings. Structured results cross the boundary as plain
//! dicts and lists built from the engines' JSON forms.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use scf_core::circle::{
    decide_scf_circle, normalize_weights, verify_witness_circle, CongruenceWitness,
};
use scf_core::fusion::{fusion_elementwise as fusion_check, EmbeddingRule};
use scf_core::so3::{
    decide_scf_so3, search_open_question, verify_witness_so3, So3Witness, SpinSequence,
};
use scf_core::sympair::{
    build_witness_so_sum, catalog as pair_catalog, classify_pair as classify, verify_pair_witness,
    PairFamily, PairParams,
};
use scf_core::weyl::weyl_orbit;
use scf_core::{conjugate_in, GroupTag, ScfError, TorusElement, Turn};
use serde::Serialize;

fn err(e: ScfError) -> PyErr {
    if e.is_refusal() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn group(family: &str, n: usize) -> PyResult<GroupTag> {
    GroupTag::parse_named(family, &n.to_string()).map_err(err)
}

fn turns(raw: Vec<String>) -> PyResult<Vec<Turn>> {
    raw.iter().map(|t| t.parse().map_err(err)).collect()
}

/// A maximal-torus element, given as turns (strings like `"1/5"`) in a
/// named group such as `("so", 8)` or `("u", 3)`.
#[pyclass(name = "TorusElement", frozen, module = "scf_tools")]
struct PyTorusElement(TorusElement);

#[pymethods]
impl PyTorusElement {
    #[new]
    fn new(turn_list: Vec<String>, family: &str, n: usize) -> PyResult<Self> {
        let g = group(family, n)?;
        Ok(Self(TorusElement::new(turns(turn_list)?, g).map_err(err)?))
    }

    #[getter]
    fn turns(&self) -> Vec<String> {
        self.0.turns().iter().map(Turn::to_string).collect()
    }

    #[getter]
    fn group(&self) -> String {
        self.0.group().to_string()
    }

    fn canonical_form<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.canonical_form())
    }

    fn conjugate(&self, other: &PyTorusElement) -> PyResult<bool> {
        conjugate_in(&self.0, &other.0, self.0.group()).map_err(err)
    }

    fn orbit_size(&self) -> PyResult<usize> {
        Ok(weyl_orbit(&self.0).map_err(err)?.len())
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(Self)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("TorusElement({})", self.0)
    }
}

/// Scans moduli up to `m_max` (default n·max(a)²) for the circle subgroup
/// with weights `a` of U(n).
#[pyfunction]
#[pyo3(signature = (weights, m_max=None))]
fn decide_circle<'py>(
    py: Python<'py>,
    weights: Vec<i64>,
    m_max: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let a = normalize_weights(&weights).map_err(err)?;
    let bound = m_max.unwrap_or_else(|| a.default_bound());
    let verdict = py.detach(|| decide_scf_circle(&a, bound)).map_err(err)?;
    to_py(py, &verdict)
}

#[pyfunction]
fn verify_circle(weights: Vec<i64>, m: i64, k: i64, permutation: Vec<usize>) -> PyResult<bool> {
    let a = normalize_weights(&weights).map_err(err)?;
    Ok(verify_witness_circle(
        &a,
        &CongruenceWitness { m, k, permutation },
    ))
}

#[pyfunction]
#[pyo3(signature = (spins, q_max=200))]
fn decide_so3<'py>(py: Python<'py>, spins: Vec<u32>, q_max: u64) -> PyResult<Bound<'py, PyAny>> {
    let a = SpinSequence::from_unsorted(spins).map_err(err)?;
    let verdict = py.detach(|| decide_scf_so3(&a, q_max)).map_err(err)?;
    to_py(py, &verdict)
}

#[pyfunction]
fn verify_so3(spins: Vec<u32>, q: i64, p: i64, p_prime: i64) -> PyResult<bool> {
    let a = SpinSequence::from_unsorted(spins).map_err(err)?;
    Ok(verify_witness_so3(&a, &So3Witness { q, p, p_prime }))
}

#[pyfunction]
#[pyo3(signature = (sum_max, q_max=200))]
fn so3_search<'py>(py: Python<'py>, sum_max: u32, q_max: u64) -> PyResult<Bound<'py, PyAny>> {
    let entries = py
        .detach(|| search_open_question(sum_max, q_max))
        .map_err(err)?;
    to_py(py, &entries)
}

/// Exhaustive q-torsion check that the torus of `sub` fuses nothing
/// inside `amb`. Groups are `(family, n)` tuples.
#[pyfunction]
#[pyo3(signature = (sub, amb, q, embed=None))]
fn fusion_elementwise(
    py: Python<'_>,
    sub: (String, usize),
    amb: (String, usize),
    q: u32,
    embed: Option<&str>,
) -> PyResult<bool> {
    let (sub, amb) = (group(&sub.0, sub.1)?, group(&amb.0, amb.1)?);
    let rule = match embed {
        Some("identity") => EmbeddingRule::Identity,
        Some("append-zero-turn") => EmbeddingRule::AppendZeroTurn,
        Some("same-turns") => EmbeddingRule::SameTurns,
        Some(other) => {
            return Err(PyValueError::new_err(format!(
                "unknown embedding {other:?}"
            )))
        }
        None => EmbeddingRule::infer(sub, amb).map_err(err)?,
    };
    py.detach(|| fusion_check(sub, amb, rule, q)).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (family, n=None, p=None, q=None, pair=None))]
fn classify_pair<'py>(
    py: Python<'py>,
    family: &str,
    n: Option<u32>,
    p: Option<u32>,
    q: Option<u32>,
    pair: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let family = PairFamily::from_name(family, PairParams { n, p, q, pair }).map_err(err)?;
    to_py(py, &classify(family).map_err(err)?)
}

/// Witness pair for (so(2p+2q+2), so(2p+1)⊕so(2q+1)) at rotation `theta`.
#[pyfunction]
#[pyo3(signature = (p, q, theta="1/5"))]
fn so_sum_witness<'py>(
    py: Python<'py>,
    p: u32,
    q: u32,
    theta: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let theta: Turn = theta.parse().map_err(err)?;
    let w = build_witness_so_sum(p, q, theta).map_err(err)?;
    let v = verify_pair_witness(&w);
    to_py(py, &serde_json::json!({ "witness": w, "verification": v }))
}

#[pyfunction]
fn catalog(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &pair_catalog())
}

#[pymodule]
fn scf_tools(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTorusElement>()?;
    m.add_function(wrap_pyfunction!(decide_circle, m)?)?;
    m.add_function(wrap_pyfunction!(verify_circle, m)?)?;
    m.add_function(wrap_pyfunction!(decide_so3, m)?)?;
    m.add_function(wrap_pyfunction!(verify_so3, m)?)?;
    m.add_function(wrap_pyfunction!(so3_search, m)?)?;
    m.add_function(wrap_pyfunction!(fusion_elementwise, m)?)?;
    m.add_function(wrap_pyfunction!(classify_pair, m)?)?;
    m.add_function(wrap_pyfunction!(so_sum_witness, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    Ok(())
}
