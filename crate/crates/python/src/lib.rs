//! Python bindings: `import pyknotquiver`.

use knotquiver::algebra::{endomorphisms, Biquandle as CoreBiquandle};
use knotquiver::catalog::Catalog;
use knotquiver::cohomology::{self, CoeffGroup, Cocycle};
use knotquiver::homset;
use knotquiver::job::{self, JobConfig, LinkRef};
use knotquiver::polynomials::{four_polynomials, DEFAULT_PATH_LIMIT};
use knotquiver::quiver::{self, DataVector as CoreDataVector, RepQuiver};
use knotquiver::{EndoMap, Error, LinkDiagram};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    match e {
        Error::PathLimit(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn group(modulus: Option<u64>) -> PyResult<CoeffGroup> {
    match modulus {
        None => Ok(CoeffGroup::Integers),
        Some(m) => CoeffGroup::cyclic(m).map_err(err),
    }
}

fn from_json<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

fn to_json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// An oriented classical or virtual link diagram.
#[pyclass(module = "pyknotquiver", frozen)]
struct Diagram {
    inner: LinkDiagram,
}

#[pymethods]
impl Diagram {
    #[staticmethod]
    fn from_pd(code: &str) -> PyResult<Self> {
        knotquiver::parse_pd(code).map(|inner| Diagram { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_gauss(code: &str) -> PyResult<Self> {
        knotquiver::parse_gauss(code).map(|inner| Diagram { inner }).map_err(err)
    }

    /// A diagram from the built-in catalog, e.g. `"L4a1"` or `"2.1"`.
    #[staticmethod]
    fn from_catalog(name: &str) -> PyResult<Self> {
        Catalog::builtin().diagram(name).map(|inner| Diagram { inner }).map_err(err)
    }

    #[getter]
    fn crossing_count(&self) -> usize {
        self.inner.crossing_count()
    }

    #[getter]
    fn semiarc_count(&self) -> usize {
        self.inner.semiarc_count()
    }

    #[getter]
    fn component_count(&self) -> usize {
        self.inner.component_count()
    }

    #[getter]
    fn writhe(&self) -> i64 {
        self.inner.writhe()
    }

    fn mirror(&self) -> Self {
        Diagram { inner: self.inner.mirror() }
    }

    fn reverse_components(&self, which: Vec<usize>) -> PyResult<Self> {
        self.inner.reverse_components(&which).map(|inner| Diagram { inner }).map_err(err)
    }

    fn to_pd(&self) -> String {
        self.inner.to_pd()
    }

    fn __eq__(&self, other: &Diagram) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Diagram({:?})", self.inner.to_pd())
    }
}

/// A finite biquandle; quandles have trivial over operation.
#[pyclass(module = "pyknotquiver", frozen)]
struct Biquandle {
    inner: CoreBiquandle,
}

#[pymethods]
impl Biquandle {
    /// `core:M`, `alexander:M:T`, `trivial:N`, `z2bq`, `swap3` or `s3`.
    #[staticmethod]
    fn builtin(spec: &str) -> PyResult<Self> {
        job::parse_biquandle(spec).map(|inner| Biquandle { inner }).map_err(err)
    }

    /// From 1-based operation tables.
    #[staticmethod]
    #[pyo3(signature = (under, over=None))]
    fn from_tables(under: Vec<Vec<usize>>, over: Option<Vec<Vec<usize>>>) -> PyResult<Self> {
        CoreBiquandle::from_tables(&under, over.as_deref()).map(|inner| Biquandle { inner }).map_err(err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn under_table(&self) -> Vec<Vec<usize>> {
        self.inner.under_table()
    }

    fn over_table(&self) -> Vec<Vec<usize>> {
        self.inner.over_table()
    }

    fn is_quandle(&self) -> bool {
        self.inner.is_quandle()
    }

    /// Axiom violations as messages; empty when the tables are valid.
    fn check_axioms(&self) -> Vec<String> {
        self.inner.check_axioms().iter().map(|v| v.to_string()).collect()
    }

    /// All endomorphisms as 1-based image vectors.
    fn endomorphisms(&self) -> Vec<Vec<usize>> {
        endomorphisms(&self.inner).iter().map(EndoMap::one_based).collect()
    }
}

/// The data vector `(X, A, C, Z, S)`.
#[pyclass(module = "pyknotquiver", frozen)]
struct DataVector {
    inner: CoreDataVector,
}

#[pymethods]
impl DataVector {
    /// `modulus=None` means `A = Z`. With `check=False` the cochains are not
    /// required to be cocycles.
    #[new]
    #[pyo3(signature = (biquandle, modulus, cocycles, endos, check=true))]
    fn new(biquandle: &Biquandle, modulus: Option<u64>, cocycles: Vec<Vec<i64>>, endos: Vec<Vec<usize>>, check: bool) -> PyResult<Self> {
        let g = group(modulus)?;
        let c = cocycles.into_iter().map(|v| Cocycle::new(g, v)).collect();
        let s = endos.iter().map(|e| EndoMap::from_one_based(e)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        let x = biquandle.inner.clone();
        let inner = if check { CoreDataVector::new(x, g, c, s) } else { CoreDataVector::new_unchecked(x, g, c, s) };
        inner.map(|inner| DataVector { inner }).map_err(err)
    }
}

/// A cohomology quiver representation.
#[pyclass(module = "pyknotquiver", frozen)]
struct Quiver {
    inner: RepQuiver,
}

#[pymethods]
impl Quiver {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        RepQuiver::from_json(text).map(|inner| Quiver { inner }).map_err(err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertices.len()
    }

    /// `(source, target, endomorphism index, matrix)` per edge.
    fn edges(&self) -> Vec<(usize, usize, usize, Vec<Vec<i64>>)> {
        self.inner.edges.iter().map(|e| (e.source, e.target, e.endo, e.matrix.clone())).collect()
    }

    /// `(1-based coloring, chain, subspace generators)` per vertex.
    fn vertices(&self) -> Vec<(Vec<usize>, Vec<i64>, Vec<i64>)> {
        self.inner.vertices.iter().map(|v| (v.coloring.clone(), v.chain.clone(), v.subspace.clone())).collect()
    }

    fn isomorphic(&self, other: &Quiver) -> bool {
        quiver::quiver_isomorphic(&self.inner, &other.inner)
    }

    /// The edge/path characteristic and matrix polynomials as strings, plus
    /// the number of maximal paths.
    #[pyo3(signature = (path_limit=DEFAULT_PATH_LIMIT))]
    fn four_polynomials<'py>(&self, py: Python<'py>, path_limit: usize) -> PyResult<Bound<'py, PyAny>> {
        let (four, paths) = py.detach(|| four_polynomials(&self.inner, path_limit)).map_err(err)?;
        let v = serde_json::json!({
            "edge_char": four.edge_char.to_string(),
            "edge_matrix": four.edge_matrix.to_string(),
            "path_char": four.path_char.to_string(),
            "path_matrix": four.path_matrix.to_string(),
            "maximal_paths": paths.len(),
        });
        from_json(py, &v.to_string())
    }
}

/// `(1-based coloring, chain vector)` for every coloring.
#[pyfunction]
fn colorings(diagram: &Diagram, biquandle: &Biquandle) -> Vec<(Vec<usize>, Vec<i64>)> {
    homset::colorings(&diagram.inner, &biquandle.inner)
        .iter()
        .map(|c| (c.one_based(), homset::chain_vector(c, &diagram.inner, &biquandle.inner).coords().to_vec()))
        .collect()
}

#[pyfunction]
fn counting_invariant(diagram: &Diagram, biquandle: &Biquandle) -> usize {
    homset::counting_invariant(&diagram.inner, &biquandle.inner)
}

#[pyfunction]
#[pyo3(signature = (biquandle, values, modulus=None))]
fn is_cocycle(biquandle: &Biquandle, values: Vec<i64>, modulus: Option<u64>) -> PyResult<bool> {
    cohomology::is_cocycle(&Cocycle::new(group(modulus)?, values), &biquandle.inner).map_err(err)
}

/// `{"free_rank", "torsion", "generators"}` for `H^2(X; A)`.
#[pyfunction]
#[pyo3(signature = (biquandle, modulus=None))]
fn second_cohomology<'py>(py: Python<'py>, biquandle: &Biquandle, modulus: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let h = cohomology::second_cohomology(&biquandle.inner, group(modulus)?);
    let gens: Vec<&[i64]> = h.generators.iter().map(Cocycle::values).collect();
    let v = serde_json::json!({ "free_rank": h.free_rank, "torsion": h.torsion, "generators": gens });
    from_json(py, &v.to_string())
}

/// `Σ q^⟨φ, v⟩` over all colorings, as a string.
#[pyfunction]
#[pyo3(signature = (diagram, biquandle, values, modulus=None))]
fn cocycle_invariant(diagram: &Diagram, biquandle: &Biquandle, values: Vec<i64>, modulus: Option<u64>) -> PyResult<String> {
    let phi = Cocycle::new(group(modulus)?, values);
    cohomology::cocycle_invariant(&diagram.inner, &biquandle.inner, &phi).map(|p| p.to_string()).map_err(err)
}

#[pyfunction]
fn build_representation(py: Python<'_>, diagram: &Diagram, data: &DataVector) -> PyResult<Quiver> {
    py.detach(|| quiver::build_representation(&diagram.inner, &data.inner)).map(|inner| Quiver { inner }).map_err(err)
}

/// Runs a JSON job description and returns the report.
#[pyfunction]
fn run_job<'py>(py: Python<'py>, config: &str) -> PyResult<Bound<'py, PyAny>> {
    let cfg = JobConfig::from_json(config).map_err(err)?;
    let report = py.detach(|| job::run_job(&cfg, &Catalog::builtin())).map_err(err)?;
    from_json(py, &to_json(&report)?)
}

/// The four polynomials for each catalog name, with rows and path matrix
/// classes.
#[pyfunction]
fn batch<'py>(py: Python<'py>, links: Vec<String>, config: &str) -> PyResult<Bound<'py, PyAny>> {
    let cfg = JobConfig::from_json(config).map_err(err)?;
    let refs: Vec<LinkRef> = links.into_iter().map(LinkRef::Named).collect();
    let report = py.detach(|| job::run_batch(&refs, &cfg, &Catalog::builtin())).map_err(err)?;
    let v = serde_json::json!({ "rows": report.rows, "classes": report.classes() });
    from_json(py, &v.to_string())
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    Catalog::builtin().names().into_iter().map(String::from).collect()
}

#[pymodule]
fn pyknotquiver(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Diagram>()?;
    m.add_class::<Biquandle>()?;
    m.add_class::<DataVector>()?;
    m.add_class::<Quiver>()?;
    m.add_function(wrap_pyfunction!(colorings, m)?)?;
    m.add_function(wrap_pyfunction!(counting_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(is_cocycle, m)?)?;
    m.add_function(wrap_pyfunction!(second_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(cocycle_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(build_representation, m)?)?;
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    m.add_function(wrap_pyfunction!(batch, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    Ok(())
}
