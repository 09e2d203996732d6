//! Python bindings. Structured results come back as plain dicts and lists,
//! built from the same serde output the CLI prints.

use std::collections::BTreeMap;
use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde::Serialize;

use mcgforge::geometry::{self, FactStore as CoreStore, Manifold, VolumeRecord};
use mcgforge::mcg::{self, Certificate as CoreCert, TwistWord as CoreWord};
use mcgforge::openbook::{self, OpenBook as CoreBook};
use mcgforge::surface::{self, MultiCurve, SurfaceSig, Triangulation};
use mcgforge::{links, Error};

fn err(e: Error) -> PyErr {
    match e {
        Error::Invalid(_) | Error::Parse(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Surface with a fixed triangulation. `Surface(1, 1)` is the punctured torus
/// whose curves can be given as slopes.
#[pyclass(frozen)]
struct Surface {
    tri: Arc<Triangulation>,
}

#[pymethods]
impl Surface {
    #[new]
    #[pyo3(signature = (genus, boundary = 1))]
    fn new(genus: u32, boundary: u32) -> PyResult<Self> {
        let tri = if (genus, boundary) == (1, 1) {
            surface::torus()
        } else {
            surface::standard_page(SurfaceSig::new(genus, boundary)).map_err(err)?.tri
        };
        Ok(Surface { tri })
    }

    #[getter]
    fn genus(&self) -> u32 {
        self.tri.sig().genus
    }

    #[getter]
    fn boundary(&self) -> u32 {
        self.tri.sig().boundary
    }

    fn euler(&self) -> i64 {
        self.tri.sig().euler()
    }

    fn edges(&self) -> usize {
        self.tri.num_edges()
    }

    /// Simple closed curve of slope `p/q`; torus only.
    fn slope(&self, p: i64, q: i64) -> PyResult<Curve> {
        Ok(Curve { c: surface::slope_curve(&self.tri, p, q).map_err(err)? })
    }

    /// Curve from normal coordinates, one weight per edge.
    fn curve(&self, weights: Vec<u64>) -> PyResult<Curve> {
        Ok(Curve { c: MultiCurve::new(self.tri.clone(), weights).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("Surface({})", self.tri.sig())
    }
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct Curve {
    c: MultiCurve,
}

#[pymethods]
impl Curve {
    #[getter]
    fn weights(&self) -> Vec<u64> {
        self.c.weights().to_vec()
    }

    fn total_weight(&self) -> u64 {
        self.c.total_weight()
    }

    fn is_simple(&self) -> bool {
        self.c.is_simple_curve()
    }

    fn slope(&self) -> Option<(i64, i64)> {
        surface::slope_of(&self.c)
    }

    fn intersection(&self, other: &Curve) -> PyResult<u64> {
        surface::intersection(&self.c, &other.c).map_err(err)
    }

    /// `(lower, upper)` bounds on the curve graph distance.
    #[pyo3(signature = (other, cap = 6, weight_bound = 12))]
    fn distance(&self, other: &Curve, cap: u32, weight_bound: u64) -> PyResult<(u32, Option<u32>)> {
        let e = mcg::estimate_distance(&self.c, &other.c, cap, weight_bound).map_err(err)?;
        Ok((e.lower, e.upper))
    }

    fn __eq__(&self, other: &Curve) -> bool {
        self.c == other.c
    }

    fn __repr__(&self) -> String {
        format!("Curve({})", self.c.to_text())
    }
}

fn table(curves: BTreeMap<String, Curve>) -> BTreeMap<String, MultiCurve> {
    curves.into_iter().map(|(k, v)| (k, v.c)).collect()
}

/// Product of Dehn twists, rightmost letter applied first.
#[pyclass(frozen)]
struct TwistWord {
    w: CoreWord,
}

#[pymethods]
impl TwistWord {
    /// `TwistWord(surface, {"a": c1, "b": c2}, "[a^1, b^-1]")`.
    #[new]
    fn new(surface: &Surface, curves: BTreeMap<String, Curve>, word: &str) -> PyResult<Self> {
        Ok(TwistWord { w: CoreWord::parse(surface.tri.clone(), &table(curves), word).map_err(err)? })
    }

    fn act(&self, c: &Curve) -> PyResult<Curve> {
        Ok(Curve { c: mcg::act(&self.w, &c.c).map_err(err)? })
    }

    fn inverse(&self) -> TwistWord {
        TwistWord { w: self.w.inverse() }
    }

    fn power(&self, n: u32) -> TwistWord {
        TwistWord { w: self.w.power(n) }
    }

    fn compose(&self, other: &TwistWord) -> PyResult<TwistWord> {
        Ok(TwistWord { w: self.w.compose(&other.w).map_err(err)? })
    }

    fn __len__(&self) -> usize {
        self.w.len()
    }

    /// Dilatation estimate from `i(w^n(seed), seed)`; a heuristic.
    #[pyo3(signature = (seed, iterations = 12, delta = mcg::DEFAULT_DELTA))]
    fn growth<'py>(&self, py: Python<'py>, seed: &Curve, iterations: usize, delta: f64) -> PyResult<Bound<'py, PyAny>> {
        let r = mcg::growth_estimate(&self.w, &seed.c, iterations, delta).map_err(err)?;
        let values: Vec<String> = r.values.iter().map(|v| v.to_string()).collect();
        to_py(py, &serde_json::json!({ "values": values, "estimate": r.estimate, "verdict": r.verdict }))
    }

    /// Penner pseudo-Anosov certificate for positive system `a`, negative `b`.
    fn penner_certificate(&self, a: Vec<Curve>, b: Vec<Curve>) -> PyResult<Option<Certificate>> {
        let a: Vec<MultiCurve> = a.into_iter().map(|c| c.c).collect();
        let b: Vec<MultiCurve> = b.into_iter().map(|c| c.c).collect();
        Ok(mcg::penner_certify(&self.w, &a, &b).map_err(err)?.map(|c| Certificate { c }))
    }

    fn __str__(&self) -> String {
        self.w.to_text()
    }

    fn __repr__(&self) -> String {
        format!("TwistWord({})", self.w.to_text())
    }
}

#[pyclass(frozen)]
struct Certificate {
    c: CoreCert,
}

#[pymethods]
impl Certificate {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Certificate { c: CoreCert::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.c.to_json()
    }

    /// Raises when any recorded fact fails to recompute.
    fn replay(&self) -> PyResult<()> {
        self.c.replay().map_err(err)
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.c)
    }
}

#[pyclass(frozen)]
struct OpenBook {
    ob: CoreBook,
}

#[pymethods]
impl OpenBook {
    /// Page `Σ_{g,1}` with the chain Penner monodromy.
    #[staticmethod]
    fn penner_base(genus: u32) -> PyResult<Self> {
        Ok(OpenBook { ob: CoreBook::penner_base(genus).map_err(err)? })
    }

    /// `k` positive and `k` negative Hopf stabilizations on a Penner base.
    fn stabilize(&self, k: u32) -> PyResult<OpenBook> {
        Ok(OpenBook { ob: openbook::penner_stabilize(&self.ob, k).map_err(err)? })
    }

    /// `(genus, boundary)` of the page.
    fn page(&self) -> (u32, u32) {
        let s = self.ob.page();
        (s.genus, s.boundary)
    }

    fn binding_components(&self) -> u32 {
        self.ob.binding_components()
    }

    fn monodromy(&self) -> TwistWord {
        TwistWord { w: self.ob.monodromy.clone() }
    }

    fn curve_ids(&self) -> Vec<String> {
        self.ob.curves.keys().cloned().collect()
    }

    fn framing(&self, id: &str) -> Option<i64> {
        self.ob.ledger.get(id)
    }

    fn penner_certificate(&self) -> PyResult<Option<Certificate>> {
        Ok(self.ob.penner_certificate().map_err(err)?.map(|c| Certificate { c }))
    }

    /// Abelian coset from the Stallings curves of a stabilized book.
    fn abelian_coset<'py>(&self, py: Python<'py>, exponents: Vec<i64>) -> PyResult<Bound<'py, PyAny>> {
        let ac = openbook::abelian_coset(&self.ob, &exponents).map_err(err)?;
        let stallings: Vec<_> = ac
            .stallings
            .iter()
            .map(|s| serde_json::json!({ "id": s.id, "summands": s.summands, "homology": s.homology, "framing": s.framing }))
            .collect();
        to_py(
            py,
            &serde_json::json!({
                "rank": ac.rank(),
                "word": ac.word.to_text(),
                "stallings": stallings,
                "pseudo_anosov_certificate": ac.base_certificate,
                "long_morton_certificate": ac.long_morton.as_ref().ok(),
                "long_morton_failure": ac.long_morton.as_ref().err().map(|f| f.to_string()),
            }),
        )
    }

    /// Free rank-2 coset; needs a book stabilized with `k = 4`.
    fn free_coset<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let fc = openbook::free_coset(&self.ob).map_err(err)?;
        to_py(
            py,
            &serde_json::json!({
                "a": fc.a.to_text(), "b": fc.b.to_text(),
                "intersection": fc.intersection, "certificate": fc.certificate,
            }),
        )
    }

    fn __repr__(&self) -> String {
        format!("OpenBook(page={}, monodromy_length={})", self.ob.page(), self.ob.monodromy.len())
    }
}

/// Fact store for q-hyperbolicity derivations.
#[pyclass]
struct FactStore {
    s: CoreStore,
}

#[pymethods]
impl FactStore {
    #[new]
    fn new() -> Self {
        FactStore { s: CoreStore::new() }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(FactStore { s: CoreStore::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.s.to_json()
    }

    /// Shadow facts as a JSON array or JSON lines; returns the count added.
    fn load_shadow_facts(&mut self, text: &str) -> PyResult<usize> {
        self.s.load_shadow_facts(text).map_err(err)
    }

    /// Derivation chain as a list of dicts, or None when not derivable.
    fn derive<'py>(&mut self, py: Python<'py>, goal: &str) -> PyResult<Option<Bound<'py, PyAny>>> {
        let m: Manifold = goal.parse().map_err(err)?;
        match geometry::qhyp_derive(&mut self.s, &m).map_err(err)? {
            Some(d) => {
                d.replay().map_err(err)?;
                Ok(Some(to_py(py, &d)?))
            }
            None => Ok(None),
        }
    }

    fn __len__(&self) -> usize {
        self.s.facts.len()
    }
}

/// `(lower, upper)` decimal bounds on the volume after filling along a
/// slope of length `lam`.
#[pyfunction]
#[pyo3(signature = (vol, lam, precision = geometry::DEFAULT_PRECISION))]
fn filling_bounds(vol: f64, lam: f64, precision: u32) -> PyResult<(String, String)> {
    let p = geometry::Precision::new(precision).map_err(err)?;
    let b = geometry::filling_volume_bounds(vol, lam).map_err(err)?;
    Ok((p.format(b.lower, true), p.format(b.upper, false)))
}

#[pyfunction]
#[pyo3(signature = (a, b, epsilon = geometry::DEFAULT_EPSILON))]
fn independence<'py>(py: Python<'py>, a: f64, b: f64, epsilon: f64) -> PyResult<Bound<'py, PyAny>> {
    let ra = VolumeRecord::new("a", a, vec![]).map_err(err)?;
    let rb = VolumeRecord::new("b", b, vec![]).map_err(err)?;
    to_py(py, &geometry::independence_certificate(&ra, &rb, epsilon).map_err(err)?)
}

/// Record for the link `L(l, m, k)`.
#[pyfunction]
fn family_record<'py>(py: Python<'py>, l: i64, m: i64, k: i64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &links::family_record(l, m, k).map_err(err)?)
}

/// Run the command-line tool in-process; returns `(code, stdout, stderr)`.
#[pyfunction]
#[pyo3(signature = (args, precision = None))]
fn run_cli(args: Vec<String>, precision: Option<String>) -> (i32, String, String) {
    let argv = std::iter::once("mcgforge".to_string()).chain(args);
    let o = mcgforge::cli::run(argv, precision.as_deref());
    (o.code, o.stdout, o.stderr)
}

#[pymodule]
fn mcgforge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Surface>()?;
    m.add_class::<Curve>()?;
    m.add_class::<TwistWord>()?;
    m.add_class::<Certificate>()?;
    m.add_class::<OpenBook>()?;
    m.add_class::<FactStore>()?;
    m.add_function(wrap_pyfunction!(filling_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(independence, m)?)?;
    m.add_function(wrap_pyfunction!(family_record, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add("SCHEMA_VERSION", mcgforge::cli::SCHEMA_VERSION)?;
    Ok(())
}
