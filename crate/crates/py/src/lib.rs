//! Python bindings for lattice arithmetic, Cremona reduction, curve configurations and the catalog.

use std::collections::BTreeMap;
use std::sync::Arc;

use coble_core::catalog::{catalog, verify_example as core_verify};
use coble_core::classify::{is_k3_type, log_enriques_shape, match_rational_case as core_match, terminal_shape};
use coble_core::config::{recognize_fiber_support, CurveConfiguration, Multiset};
use coble_core::cremona::{self, MultiplicityVector as CoreVector};
use coble_core::negcurves::{enumerate_negative_classes as core_enumerate, SearchMode};
use coble_core::{BaseKind, DivisorClass as CoreClass, IntersectionLattice};
use pyo3::exceptions::{PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

fn err(e: coble_core::Error) -> PyErr {
    use coble_core::Error::*;
    match e {
        UnknownLabel(_) => PyKeyError::new_err(e.to_string()),
        Parse { .. } | Invalid(_) | Precondition(_) | NotAdmissible(_) | NotARoot(_) | Parity { .. } | RankMismatch { .. } => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_py(py: Python<'_>, v: &impl serde::Serialize) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn from_py<T: serde::de::DeserializeOwned>(py: Python<'_>, obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = match obj.extract::<String>() {
        Ok(s) => s,
        Err(_) => py.import("json")?.call_method1("dumps", (obj,))?.extract()?,
    };
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn parse_base(s: &str) -> PyResult<BaseKind> {
    match s {
        "P2" => Ok(BaseKind::P2),
        "P1xP1" => Ok(BaseKind::Hirzebruch(0)),
        _ => s
            .strip_prefix("Fb")
            .or_else(|| s.strip_prefix('F'))
            .and_then(|r| r.parse().ok())
            .map(BaseKind::Hirzebruch)
            .ok_or_else(|| PyValueError::new_err(format!("unknown base `{s}`; use P2, P1xP1 or F<b>"))),
    }
}

/// Picard lattice of P2 or F_b blown up at a number of points.
#[pyclass(name = "Lattice", frozen)]
struct Lattice {
    inner: Arc<IntersectionLattice>,
}

#[pymethods]
impl Lattice {
    #[new]
    #[pyo3(signature = (base, points))]
    fn new(base: &str, points: usize) -> PyResult<Self> {
        Ok(Lattice { inner: IntersectionLattice::new(parse_base(base)?, points) })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn canonical(&self) -> DivisorClass {
        DivisorClass { inner: self.inner.canonical() }
    }

    fn exceptional(&self, i: usize) -> PyResult<DivisorClass> {
        Ok(DivisorClass { inner: self.inner.exceptional(i).map_err(err)? })
    }

    /// Class from a coefficient list in the lattice basis.
    fn class_of(&self, coeffs: Vec<i64>) -> PyResult<DivisorClass> {
        Ok(DivisorClass { inner: self.inner.class(coeffs).map_err(err)? })
    }

    /// Class from an expression such as "3e0 - e1 - e2".
    fn parse(&self, text: &str) -> PyResult<DivisorClass> {
        Ok(DivisorClass { inner: self.inner.parse_class(text).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("Lattice({:?}, rank={})", self.inner.base(), self.inner.rank())
    }
}

#[pyclass(name = "DivisorClass", frozen, skip_from_py_object)]
#[derive(Clone)]
struct DivisorClass {
    inner: CoreClass,
}

#[pymethods]
impl DivisorClass {
    #[getter]
    fn coeffs(&self) -> Vec<i64> {
        self.inner.coeffs().to_vec()
    }

    fn dot(&self, other: &DivisorClass) -> PyResult<i64> {
        self.inner.dot(&other.inner).map_err(err)
    }

    fn self_intersection(&self) -> PyResult<i64> {
        self.inner.self_intersection().map_err(err)
    }

    fn arithmetic_genus(&self) -> PyResult<i64> {
        self.inner.arithmetic_genus().map_err(err)
    }

    fn reflect(&self, root: &DivisorClass) -> PyResult<DivisorClass> {
        Ok(DivisorClass { inner: self.inner.reflect(&root.inner).map_err(err)? })
    }

    fn __add__(&self, other: &DivisorClass) -> PyResult<DivisorClass> {
        Ok(DivisorClass { inner: self.inner.try_add(&other.inner).map_err(err)? })
    }

    fn __sub__(&self, other: &DivisorClass) -> PyResult<DivisorClass> {
        Ok(DivisorClass { inner: self.inner.try_sub(&other.inner).map_err(err)? })
    }

    fn __mul__(&self, k: i64) -> PyResult<DivisorClass> {
        Ok(DivisorClass { inner: self.inner.try_scale(k).map_err(err)? })
    }

    fn __rmul__(&self, k: i64) -> PyResult<DivisorClass> {
        self.__mul__(k)
    }

    fn __neg__(&self) -> PyResult<DivisorClass> {
        self.__mul__(-1)
    }

    fn __eq__(&self, other: &DivisorClass) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("DivisorClass({})", self.inner)
    }
}

/// Plane curve data "(d;m1,m2,...)".
#[pyclass(name = "MultiplicityVector", frozen, skip_from_py_object)]
#[derive(Clone)]
struct MultiplicityVector {
    inner: CoreVector,
}

#[pymethods]
impl MultiplicityVector {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(MultiplicityVector { inner: text.parse().map_err(err)? })
    }

    #[getter]
    fn degree(&self) -> i64 {
        self.inner.degree()
    }

    #[getter]
    fn mults(&self) -> Vec<i64> {
        self.inner.mults().to_vec()
    }

    fn genus(&self) -> PyResult<i64> {
        self.inner.genus_proxy().map_err(err)
    }

    fn singular_part(&self) -> MultiplicityVector {
        MultiplicityVector { inner: self.inner.singular_part() }
    }

    fn to_class(&self) -> PyResult<DivisorClass> {
        Ok(DivisorClass { inner: self.inner.to_class().map_err(err)? })
    }

    fn quadratic_transform(&self, i: usize, j: usize, k: usize) -> PyResult<MultiplicityVector> {
        Ok(MultiplicityVector { inner: cremona::quadratic_transform(&self.inner, i, j, k).map_err(err)? })
    }

    fn quintic_transform(&self, indices: [usize; 6]) -> PyResult<MultiplicityVector> {
        Ok(MultiplicityVector { inner: cremona::quintic_transform(&self.inner, indices).map_err(err)? })
    }

    /// Greedy quadratic reduction; returns the trace as a dict.
    #[pyo3(signature = (force = false))]
    fn reduce(&self, py: Python<'_>, force: bool) -> PyResult<Py<PyAny>> {
        let r = cremona::noether_reduce(&self.inner, force).map_err(|e| err(e.error))?;
        to_py(py, &r)
    }

    fn __eq__(&self, other: &MultiplicityVector) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("MultiplicityVector('{}')", self.inner)
    }
}

/// Numerical (-n)-classes of degree at most `cap`.
#[pyfunction]
#[pyo3(signature = (lattice, n, cap, lattice_only = false))]
fn enumerate_negative_classes(lattice: &Lattice, n: i64, cap: i64, lattice_only: bool) -> PyResult<Vec<DivisorClass>> {
    let mode = if lattice_only { SearchMode::LatticeOnly } else { SearchMode::EffectiveShape };
    let found = core_enumerate(&lattice.inner, n, cap, mode).map_err(err)?;
    Ok(found.into_iter().map(|inner| DivisorClass { inner }).collect())
}

/// Match a rational-type input (dict or JSON text) against the sixteen cases.
#[pyfunction]
fn match_rational_case(py: Python<'_>, input: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
    let inp = from_py(py, input)?;
    to_py(py, &core_match(&inp).map_err(err)?)
}

/// Analyse a curve configuration (dict or JSON text) and an optional divisor {label: mult}.
#[pyfunction]
#[pyo3(signature = (config, divisor = None))]
fn check_config(py: Python<'_>, config: &Bound<'_, PyAny>, divisor: Option<BTreeMap<String, i64>>) -> PyResult<Py<PyAny>> {
    let cfg: CurveConfiguration = from_py(py, config)?;
    let d: Multiset = divisor.unwrap_or_else(|| cfg.full_multiset());
    let report = serde_json::json!({
        "pa": cfg.divisor_pa(&d).map_err(err)?,
        "self_intersection": cfg.intersect(&d, &d).map_err(err)?,
        "snc": cfg.check_snc(),
        "k3_type": is_k3_type(&cfg).k3_type,
        "terminal": terminal_shape(&cfg),
        "log_enriques": log_enriques_shape(&cfg).log_enriques,
        "fiber": recognize_fiber_support(&cfg).map(|(t, k)| serde_json::json!({"type": t.to_string(), "scale": k})),
    });
    to_py(py, &report)
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    catalog().iter().map(|e| e.name.clone()).collect()
}

/// Verify a catalog entry; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (name, params = None))]
fn verify_example(py: Python<'_>, name: &str, params: Option<BTreeMap<String, i64>>) -> PyResult<Py<PyAny>> {
    to_py(py, &core_verify(name, &params.unwrap_or_default()).map_err(err)?)
}

#[pymodule]
fn coble(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Lattice>()?;
    m.add_class::<DivisorClass>()?;
    m.add_class::<MultiplicityVector>()?;
    m.add_function(wrap_pyfunction!(enumerate_negative_classes, m)?)?;
    m.add_function(wrap_pyfunction!(match_rational_case, m)?)?;
    m.add_function(wrap_pyfunction!(check_config, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(verify_example, m)?)?;
    Ok(())
}
