//! Python bindings: codes, characteristic pairs, trellis constructions,
//! structural checks, duals and the conjecture search.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tailbite::charpair::characteristic_pair;
use tailbite::code::CodeFile;
use tailbite::{
    Caps, Error, FpMatrix, IsoVerdict, Minimality, PrimeField, SearchOptions, SpanList,
};

create_exception!(tailbite_py, CapExceeded, PyException);

fn err(e: Error) -> PyErr {
    match e {
        Error::CapExceeded { .. } => CapExceeded::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn rows(m: &FpMatrix) -> Vec<String> {
    m.row_vectors().iter().map(|r| r.digits()).collect()
}

fn caps() -> Caps {
    Caps::from_env()
}

#[pyclass(frozen, module = "tailbite_py")]
struct LinearCode {
    inner: tailbite::LinearCode,
}

#[pymethods]
impl LinearCode {
    /// Generator rows as digit strings, e.g. `LinearCode(["1100", "0111"])`.
    #[new]
    #[pyo3(signature = (rows, q = 2))]
    fn new(rows: Vec<String>, q: u32) -> PyResult<Self> {
        let field = PrimeField::new(q).map_err(err)?;
        let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
        let inner = tailbite::LinearCode::from_rows(field, &refs).map_err(err)?;
        Ok(Self { inner })
    }

    /// Parses the text code-file format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let file: CodeFile = text.parse().map_err(err)?;
        Ok(Self { inner: file.code().map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.field().p()
    }

    fn generator(&self) -> Vec<String> {
        rows(self.inner.generator())
    }

    fn parity_check(&self) -> Vec<String> {
        rows(self.inner.parity_check())
    }

    fn dual(&self) -> Self {
        Self { inner: self.inner.dual() }
    }

    fn shift(&self, j: usize) -> Self {
        Self { inner: self.inner.shift(j) }
    }

    fn has_full_support(&self) -> bool {
        self.inner.has_full_support()
    }

    fn codewords(&self) -> PyResult<Vec<String>> {
        let words = self.inner.codewords(&caps()).map_err(err)?;
        Ok(words.iter().map(|w| w.digits()).collect())
    }

    fn emit(&self) -> String {
        CodeFile::from_code(&self.inner).emit()
    }

    fn characteristic_pair(&self) -> PyResult<CharacteristicPair> {
        let inner = characteristic_pair(&self.inner, &caps()).map_err(err)?;
        Ok(CharacteristicPair { inner })
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner.same_code(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!("LinearCode(q={}, n={}, k={}, G={:?})", self.q(), self.n(), self.k(), self.generator())
    }
}

#[pyclass(frozen, module = "tailbite_py")]
struct CharacteristicPair {
    inner: tailbite::CharacteristicPair,
}

#[pymethods]
impl CharacteristicPair {
    fn matrix(&self) -> Vec<String> {
        rows(self.inner.matrix())
    }

    fn spans(&self) -> Vec<String> {
        self.inner.spans().iter().map(|s| s.to_string()).collect()
    }

    fn span_matrix(&self) -> Vec<Vec<u8>> {
        self.inner.span_matrix().rows().to_vec()
    }

    /// SCP of the KV-trellis on the selected (0-based) rows.
    fn kv_scp(&self, selection: Vec<usize>) -> PyResult<Vec<usize>> {
        self.inner
            .span_matrix()
            .kv_scp_rows(&selection, self.inner.k())
            .map_err(err)
    }

    fn independent(&self, selection: Vec<usize>) -> bool {
        self.inner.independent(&selection)
    }
}

#[pyclass(frozen, module = "tailbite_py")]
struct Trellis {
    inner: tailbite::MatrixTrellis,
}

#[pymethods]
impl Trellis {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn scp(&self) -> Vec<usize> {
        self.inner.scp()
    }

    fn ecp(&self) -> Vec<usize> {
        self.inner.ecp()
    }

    fn vertex_matrices(&self) -> Vec<Vec<String>> {
        self.inner.vertex_matrices().iter().map(rows).collect()
    }

    fn labels(&self) -> Vec<String> {
        rows(self.inner.label_matrix())
    }

    fn label_code(&self) -> LinearCode {
        LinearCode {
            inner: tailbite::LinearCode::spanned_by(&self.inner.label_code()),
        }
    }

    fn is_one_to_one(&self) -> bool {
        self.inner.is_one_to_one().holds()
    }

    fn is_biproper(&self) -> bool {
        self.inner.is_biproper()
    }

    fn is_reduced(&self) -> bool {
        self.inner.to_linear().is_reduced()
    }

    fn is_non_mergeable(&self) -> PyResult<bool> {
        self.inner.is_non_mergeable(&caps()).map_err(err)
    }

    /// True or False, or None when enumeration was truncated.
    fn is_minimal(&self, code: &LinearCode) -> PyResult<Option<bool>> {
        Ok(match self.inner.is_minimal(&code.inner, &caps()).map_err(err)? {
            Minimality::Minimal => Some(true),
            Minimality::Dominated { .. } => Some(false),
            Minimality::Unknown => None,
        })
    }

    /// True or False, or None when the search budget ran out.
    fn isomorphic(&self, other: &Trellis) -> Option<bool> {
        self.inner.isomorphic(&other.inner, &caps()).as_option()
    }

    fn shift(&self) -> Self {
        Self { inner: self.inner.shift() }
    }

    /// Number of connected components of the expanded graph.
    fn components(&self) -> PyResult<usize> {
        Ok(self.inner.expand(&caps()).map_err(err)?.components())
    }

    fn __repr__(&self) -> String {
        format!("Trellis(scp={:?}, ecp={:?})", self.scp(), self.ecp())
    }
}

fn span_list(code: &LinearCode, spans: &str) -> PyResult<SpanList> {
    let s = SpanList::parse(spans, code.inner.n()).map_err(err)?;
    s.check_against(code.inner.generator()).map_err(err)?;
    Ok(s)
}

fn bcjr(code: &LinearCode, spans: &str) -> PyResult<tailbite::BcjrTrellis> {
    tailbite::span_bcjr(code.inner.generator(), &span_list(code, spans)?).map_err(err)
}

/// Product trellis of the generator rows on `spans`, e.g. "(0,2],(1,0]".
#[pyfunction]
fn product_trellis(code: &LinearCode, spans: &str) -> PyResult<Trellis> {
    let inner = tailbite::product_trellis(code.inner.generator(), &span_list(code, spans)?).map_err(err)?;
    Ok(Trellis { inner })
}

#[pyfunction]
fn bcjr_trellis(code: &LinearCode, spans: &str) -> PyResult<Trellis> {
    Ok(Trellis { inner: bcjr(code, spans)?.into_trellis() })
}

/// KV-trellis on 0-based rows of the characteristic matrix.
#[pyfunction]
fn kv_trellis(pair: &CharacteristicPair, selection: Vec<usize>) -> PyResult<Trellis> {
    let inner = tailbite::kv_trellis(&pair.inner, &selection).map_err(err)?;
    Ok(Trellis { inner })
}

#[pyfunction]
fn bcjr_dual(code: &LinearCode, spans: &str) -> PyResult<Trellis> {
    let d = tailbite::bcjr_dual(&bcjr(code, spans)?).map_err(err)?;
    Ok(Trellis { inner: d.into_trellis() })
}

#[pyfunction]
fn edge_space_dual<'py>(py: Python<'py>, code: &LinearCode, spans: &str) -> PyResult<Bound<'py, PyDict>> {
    let e = tailbite::edge_space_dual(&bcjr(code, spans)?).map_err(err)?;
    let p = e.profile();
    let d = PyDict::new(py);
    d.set_item("scp", p.scp)?;
    d.set_item("ecp", p.ecp)?;
    d.set_item("reduced", e.reduced)?;
    d.set_item("contains_bcjr_dual", e.contains_bcjr_dual.iter().all(|&b| b))?;
    Ok(d)
}

/// Product-to-BCJR merge by quotients; reports profiles and the verdicts.
#[pyfunction]
fn quotient_merge<'py>(py: Python<'py>, code: &LinearCode, spans: &str) -> PyResult<Bound<'py, PyDict>> {
    let m = tailbite::merge_product_to_bcjr(code.inner.generator(), &span_list(code, spans)?, &caps())
        .map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("product_scp", m.product.scp())?;
    d.set_item("quotient_scp", m.quotient.scp())?;
    d.set_item("bcjr_scp", m.bcjr.trellis().scp())?;
    d.set_item("coefficient_map_ok", m.coefficient_map_ok)?;
    d.set_item("isomorphic", m.isomorphic.as_option())?;
    Ok(d)
}

#[pyfunction]
fn kv_duality_check<'py>(
    py: Python<'py>,
    code: &LinearCode,
    pair: &CharacteristicPair,
    selection: Vec<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let r = tailbite::kv_duality_check(&code.inner, &pair.inner, &selection, &caps()).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("primal_scp", r.primal_scp.clone())?;
    d.set_item(
        "complementary_spans",
        r.complementary.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    )?;
    d.set_item("strong", r.strong())?;
    d.set_item("weak", r.weak())?;
    d.set_item("weak_isomorphic", r.weak_isomorphic())?;
    d.set_item("truncated", r.truncated)?;
    let iso: Vec<Option<bool>> = r
        .verdicts
        .iter()
        .map(|v| v.isomorphic_to_bcjr_dual.as_ref().and_then(IsoVerdict::as_option))
        .collect();
    d.set_item("isomorphic", iso)?;
    Ok(d)
}

/// Exhaustive conjecture search; returns the summary counts and the
/// offending records as text lines.
#[pyfunction]
#[pyo3(signature = (n_max, q = 2, n_min = 2, cyclic_dedup = true))]
fn conjecture_search<'py>(
    py: Python<'py>,
    n_max: usize,
    q: u32,
    n_min: usize,
    cyclic_dedup: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let mut opts = SearchOptions::new(PrimeField::new(q).map_err(err)?, n_max);
    opts.n_min = n_min;
    opts.cyclic_dedup = cyclic_dedup;
    opts.caps = caps();
    let r = py.detach(|| tailbite::conjecture_search(&opts)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("codes", r.codes)?;
    d.set_item("records", r.records.len())?;
    d.set_item("choice_dependent", r.choice_dependent().count())?;
    d.set_item(
        "weak_failures",
        r.weak_failures().map(|x| x.to_string()).collect::<Vec<_>>(),
    )?;
    d.set_item(
        "theorem_violations",
        r.theorem_violations().map(|x| x.to_string()).collect::<Vec<_>>(),
    )?;
    d.set_item("capped", r.capped)?;
    d.set_item("passes", r.passes())?;
    Ok(d)
}

#[pymodule]
fn tailbite_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<LinearCode>()?;
    m.add_class::<CharacteristicPair>()?;
    m.add_class::<Trellis>()?;
    m.add("CapExceeded", m.py().get_type::<CapExceeded>())?;
    m.add_function(wrap_pyfunction!(product_trellis, m)?)?;
    m.add_function(wrap_pyfunction!(bcjr_trellis, m)?)?;
    m.add_function(wrap_pyfunction!(kv_trellis, m)?)?;
    m.add_function(wrap_pyfunction!(bcjr_dual, m)?)?;
    m.add_function(wrap_pyfunction!(edge_space_dual, m)?)?;
    m.add_function(wrap_pyfunction!(quotient_merge, m)?)?;
    m.add_function(wrap_pyfunction!(kv_duality_check, m)?)?;
    m.add_function(wrap_pyfunction!(conjecture_search, m)?)?;
    Ok(())
}
