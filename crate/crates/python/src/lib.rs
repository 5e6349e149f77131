//! Python bindings: presentations, Riley representations, slopes and
//! A-polynomials.

use std::sync::Arc;

use matrix::from_rows;
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use knot_slope::apoly::{self, BiLaurent};
use knot_slope::data;
use knot_slope::presentation::{parse_presentation, KnotPresentation};
use knot_slope::representation::{self as rep, Representation};
use knot_slope::slope::{self, SlopeConfig, SlopeReading};

mod matrix {
    use knot_slope::linalg::Sl2;
    use num_complex::Complex64;

    pub type Rows = [[Complex64; 2]; 2];

    pub fn to_rows(m: &Sl2) -> Rows {
        [[m.get(0, 0), m.get(0, 1)], [m.get(1, 0), m.get(1, 1)]]
    }

    pub fn from_rows(r: Rows) -> Result<Sl2, knot_slope::linalg::LinalgError> {
        Sl2::from_entries(r[0][0], r[0][1], r[1][0], r[1][1])
    }
}

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn reading(r: SlopeReading) -> Option<Complex64> {
    r.finite()
}

/// A knot group presentation with meridian and longitude words.
#[pyclass(name = "Presentation", module = "knot_slope_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyPresentation {
    inner: Arc<KnotPresentation>,
}

#[pymethods]
impl PyPresentation {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyPresentation { inner: Arc::new(parse_presentation(text).map_err(err)?) })
    }

    /// `trefoil` or `figure-eight`.
    #[staticmethod]
    fn bundled(name: &str) -> PyResult<Self> {
        Ok(PyPresentation { inner: data::load(name).map_err(err)? })
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.generators().to_vec()
    }

    #[getter]
    fn meridian(&self) -> String {
        self.inner.word_to_string(self.inner.meridian())
    }

    #[getter]
    fn longitude(&self) -> String {
        self.inner.word_to_string(self.inner.longitude())
    }

    fn format(&self) -> String {
        self.inner.format()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Presentation({:?})", self.inner.format().replace('\n', " ; "))
    }
}

/// An `SL2(C)` representation of a knot group.
#[pyclass(name = "Representation", module = "knot_slope_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyRepresentation {
    inner: Representation,
    #[pyo3(get)]
    t: Option<Complex64>,
    #[pyo3(get)]
    reducible: bool,
}

#[pymethods]
impl PyRepresentation {
    /// Images of the generators as nested lists of complex entries.
    #[new]
    #[pyo3(signature = (presentation, images, tol = 1e-8))]
    fn new(presentation: &PyPresentation, images: Vec<matrix::Rows>, tol: f64) -> PyResult<Self> {
        let images = images.into_iter().map(from_rows).collect::<Result<Vec<_>, _>>().map_err(err)?;
        let inner = Representation::with_tol(presentation.inner.clone(), images, tol).map_err(err)?;
        let reducible = rep::is_reducible(&inner, tol);
        Ok(PyRepresentation { inner, t: None, reducible })
    }

    #[getter]
    fn images(&self) -> Vec<matrix::Rows> {
        self.inner.images().iter().map(matrix::to_rows).collect()
    }

    fn max_relator_residual(&self) -> f64 {
        self.inner.max_relator_residual()
    }

    /// `(M, L)` read on a common eigenvector of the boundary images.
    #[pyo3(signature = (tol = 1e-8))]
    fn boundary(&self, tol: f64) -> PyResult<(Complex64, Complex64)> {
        let bd = rep::boundary_data(&self.inner, tol).map_err(err)?;
        Ok((bd.m, bd.l))
    }

    /// Invariant vector in the basis `(E, H, F)`.
    fn invariant_vector(&self) -> PyResult<[Complex64; 3]> {
        Ok(rep::invariant_vector(&self.inner, 1e-8).map_err(err)?.v)
    }

    /// The slope, `None` when it is infinite. Boundary-parabolic
    /// representations return their modulus.
    #[pyo3(signature = (rank_tol = 1e-8))]
    fn slope(&self, rank_tol: f64) -> PyResult<Option<Complex64>> {
        let cfg = SlopeConfig { rank_tol, ..SlopeConfig::default() };
        Ok(reading(slope::slope_of_character(&self.inner, &cfg).map_err(err)?.reading))
    }

    /// Admissibility verdict: `admissible`, `parabolic-path` or `degenerate`.
    fn verdict(&self) -> String {
        slope::admissibility(&self.inner, &SlopeConfig::default()).verdict.to_string()
    }

    fn conjugate(&self, p: matrix::Rows) -> PyResult<Self> {
        let p = from_rows(p).map_err(err)?;
        let inner = rep::conjugate_rep(&self.inner, p.matrix()).map_err(err)?;
        Ok(PyRepresentation { inner, ..self.clone() })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Representation(t={:?}, reducible={})", self.t, self.reducible)
    }
}

/// A Laurent polynomial in `L` and `M` with rational coefficients.
#[pyclass(name = "Polynomial", module = "knot_slope_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyPolynomial {
    inner: BiLaurent,
}

#[pymethods]
impl PyPolynomial {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyPolynomial { inner: apoly::parse_bilaurent(text).map_err(err)? })
    }

    /// `(i, j, "num/den")` for each term `c L^i M^j`.
    fn terms(&self) -> Vec<(i64, i64, String)> {
        self.inner.to_json().terms
    }

    fn canonical(&self) -> Self {
        PyPolynomial { inner: self.inner.canonical() }
    }

    #[pyo3(name = "eval")]
    fn evaluate(&self, l: Complex64, m: Complex64) -> Complex64 {
        self.inner.eval(l, m)
    }

    /// `-(M dA/dM) / (L dA/dL)`, `None` when infinite.
    fn log_gauss(&self, l: Complex64, m: Complex64) -> PyResult<Option<Complex64>> {
        Ok(reading(apoly::log_gauss(&self.inner, l, m).map_err(err)?))
    }

    /// Counterclockwise hull vertices.
    fn newton_polygon(&self) -> PyResult<Vec<(i64, i64)>> {
        Ok(apoly::newton_polygon(&self.inner).map_err(err)?.vertices)
    }

    /// Distinct side slopes as `"p/q"` or `"inf"`.
    fn side_slopes(&self) -> PyResult<Vec<String>> {
        let polygon = apoly::newton_polygon(&self.inner).map_err(err)?;
        Ok(apoly::side_slopes(&polygon).map_err(err)?.iter().map(|s| s.to_string()).collect())
    }

    fn ideal_slopes(&self) -> PyResult<Vec<String>> {
        let report = apoly::ideal_point_slopes(&self.inner).map_err(err)?;
        Ok(report.ideal_slopes().iter().map(|s| s.to_string()).collect())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({:?})", self.inner.to_string())
    }
}

/// Riley representations at meridian eigenvalue `m`, one per root.
#[pyfunction]
#[pyo3(signature = (presentation, m, tol = 1e-8))]
fn riley_family(presentation: &PyPresentation, m: Complex64, tol: f64) -> PyResult<Vec<PyRepresentation>> {
    let family = rep::riley_family(&presentation.inner, m, tol).map_err(err)?;
    Ok(family.into_iter().map(|r| PyRepresentation { inner: r.rep, t: Some(r.t), reducible: r.reducible }).collect())
}

/// The abelian representation sending every generator to `diag(lambda, 1/lambda)`.
#[pyfunction]
fn abelian(presentation: &PyPresentation, lam: Complex64) -> PyResult<PyRepresentation> {
    let inner = rep::abelian_rep(presentation.inner.clone(), lam).map_err(err)?;
    Ok(PyRepresentation { inner, t: None, reducible: true })
}

/// A-polynomial of a two-generator presentation.
#[pyfunction]
#[pyo3(signature = (presentation, with_reducible = false))]
fn compute_apoly(presentation: &PyPresentation, with_reducible: bool) -> PyResult<PyPolynomial> {
    let result = apoly::compute_apoly_twobridge(&presentation.inner, with_reducible).map_err(err)?;
    Ok(PyPolynomial { inner: result.polynomial })
}

#[pymodule]
fn knot_slope_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPresentation>()?;
    m.add_class::<PyRepresentation>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_function(wrap_pyfunction!(riley_family, m)?)?;
    m.add_function(wrap_pyfunction!(abelian, m)?)?;
    m.add_function(wrap_pyfunction!(compute_apoly, m)?)?;
    Ok(())
}
