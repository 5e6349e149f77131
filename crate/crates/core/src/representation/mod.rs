//! `SL2(C)` representations of knot groups: evaluation, Riley families,
//! boundary eigenvalues, invariant vectors and the parabolic modulus.

mod poly;
mod riley;

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::{Matrix2, Matrix3};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, adjoint_of, CMatrix, LinalgError, Sl2};
use crate::presentation::{GroupRingElement, KnotPresentation, Word};

pub use poly::{CPoly, PolyMat2};
pub use riley::{riley_family, riley_images, RileyRep};

/// Default tolerance for relator residuals.
pub const DEFAULT_REL_TOL: f64 = 1e-8;
/// Default tolerance for eigenvector and commutation checks.
pub const DEFAULT_EIG_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("expected {expected} generator images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("relator {index} violated: residual {residual:e}")]
    RelatorViolated { index: usize, residual: f64 },
    #[error("Riley families need a 2-generator presentation, got {0} generators")]
    NotTwoGenerator(usize),
    #[error("meridian eigenvalue must be nonzero")]
    ZeroEigenvalue,
    #[error("meridian and longitude images do not commute: residual {0:e}")]
    BoundaryNotCommuting(f64),
    #[error("meridian image is central, no preferred eigenvector")]
    CentralMeridian,
    #[error("invariant vector space has dimension {0}, expected 1")]
    DegenerateInvariantVector(usize),
    #[error("representation is not boundary-parabolic")]
    NotParabolic,
    #[error("invalid representation JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Assignment of an `SL2` matrix to each generator satisfying every relator.
#[derive(Clone, Debug)]
pub struct Representation {
    presentation: Arc<KnotPresentation>,
    images: Vec<Sl2>,
}

impl Representation {
    pub fn new(presentation: Arc<KnotPresentation>, images: Vec<Sl2>) -> Result<Self, RepError> {
        Self::with_tol(presentation, images, DEFAULT_REL_TOL)
    }

    pub fn with_tol(presentation: Arc<KnotPresentation>, images: Vec<Sl2>, rel_tol: f64) -> Result<Self, RepError> {
        let expected = presentation.generator_count();
        if images.len() != expected {
            return Err(RepError::WrongImageCount { expected, got: images.len() });
        }
        let rep = Representation { presentation, images };
        for (index, residual) in rep.relator_residuals().into_iter().enumerate() {
            if residual > rel_tol || !residual.is_finite() {
                return Err(RepError::RelatorViolated { index, residual });
            }
        }
        Ok(rep)
    }

    pub fn presentation(&self) -> &Arc<KnotPresentation> {
        &self.presentation
    }

    pub fn images(&self) -> &[Sl2] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &Sl2 {
        &self.images[generator]
    }

    /// `max |rho(lhs) - rho(rhs)|` per relation.
    pub fn relator_residuals(&self) -> Vec<f64> {
        self.presentation
            .relations()
            .iter()
            .map(|r| evaluate_word(self, &r.lhs).max_abs_diff(&evaluate_word(self, &r.rhs)))
            .collect()
    }

    pub fn max_relator_residual(&self) -> f64 {
        self.relator_residuals().into_iter().fold(0.0, f64::max)
    }

    pub fn meridian_image(&self) -> Sl2 {
        evaluate_word(self, self.presentation.meridian())
    }

    pub fn longitude_image(&self) -> Sl2 {
        evaluate_word(self, self.presentation.longitude())
    }

    /// Generator name to row-major entries as `[re, im]` pairs.
    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<&str, [[Complex64; 2]; 2]> = self
            .presentation
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(name, a)| (name.as_str(), [[a.get(0, 0), a.get(0, 1)], [a.get(1, 0), a.get(1, 1)]]))
            .collect();
        serde_json::to_value(map).expect("complex entries serialize")
    }

    pub fn from_json(presentation: Arc<KnotPresentation>, value: &serde_json::Value) -> Result<Self, RepError> {
        let map: BTreeMap<String, [[Complex64; 2]; 2]> =
            serde_json::from_value(value.clone()).map_err(|e| RepError::Json(e.to_string()))?;
        let mut images = Vec::with_capacity(presentation.generator_count());
        for name in presentation.generators() {
            let m = map.get(name).ok_or_else(|| RepError::Json(format!("missing generator `{name}`")))?;
            images.push(Sl2::new(Matrix2::new(m[0][0], m[0][1], m[1][0], m[1][1]))?);
        }
        Self::new(presentation, images)
    }
}

/// Product of generator images along the word.
pub fn evaluate_word(rep: &Representation, w: &Word) -> Sl2 {
    evaluate_word_with(&rep.images, w)
}

/// [`evaluate_word`] for a bare list of generator images.
pub fn evaluate_word_with(images: &[Sl2], w: &Word) -> Sl2 {
    let mut acc = *Sl2::identity().matrix();
    for l in w.letters() {
        let g = &images[l.generator];
        let m = if l.inverse { g.inverse() } else { *g };
        acc *= m.matrix();
    }
    Sl2::with_tol(acc, f64::INFINITY).expect("product of SL2 matrices is finite")
}

/// `sum c * Ad(rho(w))` over the terms of `e`.
pub fn evaluate_groupring(rep: &Representation, e: &GroupRingElement) -> Matrix3<Complex64> {
    evaluate_groupring_with(&rep.images, e)
}

pub fn evaluate_groupring_with(images: &[Sl2], e: &GroupRingElement) -> Matrix3<Complex64> {
    let mut out = Matrix3::zeros();
    for (w, c) in e.terms() {
        out += adjoint_of(&evaluate_word_with(images, w)).matrix() * Complex64::new(c as f64, 0.0);
    }
    out
}

/// Generator-wise `P rho(g) P^-1`, renormalized to determinant one.
pub fn conjugate_rep(rep: &Representation, p: &Matrix2<Complex64>) -> Result<Representation, RepError> {
    if p.determinant().norm() < 1e-300 {
        return Err(LinalgError::Singular.into());
    }
    let images = rep.images.iter().map(|a| a.conjugate_by(p)).collect::<Result<Vec<_>, _>>()?;
    Ok(Representation { presentation: rep.presentation.clone(), images })
}

/// The diagonal abelian representation sending every meridian generator to
/// `diag(lambda, lambda^-1)`.
pub fn abelian_rep(presentation: Arc<KnotPresentation>, lambda: Complex64) -> Result<Representation, RepError> {
    if lambda.norm() == 0.0 {
        return Err(RepError::ZeroEigenvalue);
    }
    let images = vec![Sl2::diagonal(lambda); presentation.generator_count()];
    Representation::new(presentation, images)
}

/// Unit eigenvector of `a` for `lambda`, or `None` when `a - lambda I` vanishes.
fn eigenvector(a: &Sl2, lambda: Complex64) -> Option<[Complex64; 2]> {
    let (p, q, r, s) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
    let c1 = [q, lambda - p];
    let c2 = [lambda - s, r];
    let n1 = linalg::row_norm(&c1);
    let n2 = linalg::row_norm(&c2);
    let (v, n) = if n1 >= n2 { (c1, n1) } else { (c2, n2) };
    if n == 0.0 {
        return None;
    }
    let mut v = [v[0] / n, v[1] / n];
    // fix the phase: largest coordinate real and positive
    let big = if v[0].norm() >= v[1].norm() { v[0] } else { v[1] };
    let phase = big.conj() / big.norm();
    v = [v[0] * phase, v[1] * phase];
    Some(v)
}

/// Whether the images share a common eigenvector. For two generators this
/// is the trace test `tr [A, B] = 2`.
pub fn is_reducible(rep: &Representation, tol: f64) -> bool {
    let imgs = rep.images();
    if imgs.len() == 2 {
        let (a, b) = (&imgs[0], &imgs[1]);
        let comm = a.mul(b).mul(&a.inverse()).mul(&b.inverse());
        return (comm.trace() - 2.0).norm() <= tol;
    }
    let Some(pivot) = imgs.iter().find(|a| !a.is_central(tol)) else {
        return true;
    };
    let tr = pivot.trace();
    let disc = (tr * tr - 4.0).sqrt();
    [(tr + disc) / 2.0, (tr - disc) / 2.0].into_iter().any(|lambda| {
        eigenvector(pivot, lambda).is_some_and(|v| {
            imgs.iter().all(|g| {
                let w = [g.get(0, 0) * v[0] + g.get(0, 1) * v[1], g.get(1, 0) * v[0] + g.get(1, 1) * v[1]];
                (w[0] * v[1] - w[1] * v[0]).norm() <= tol * g.matrix().norm().max(1.0)
            })
        })
    })
}

/// Eigenvalue data of the boundary torus read on a common eigenvector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryData {
    #[serde(rename = "M")]
    pub m: Complex64,
    #[serde(rename = "L")]
    pub l: Complex64,
    pub eigvec: [Complex64; 2],
    pub parabolic: bool,
}

/// Which eigenvector of the meridian image to read eigenvalues on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenBranch {
    /// `|M| >= 1`, then nonnegative imaginary part.
    Preferred,
    /// The other eigenvector, giving `(M^-1, L^-1)`.
    Other,
}

pub fn boundary_data(rep: &Representation, tol: f64) -> Result<BoundaryData, RepError> {
    boundary_data_on(rep, tol, EigenBranch::Preferred)
}

pub fn boundary_data_on(rep: &Representation, tol: f64, branch: EigenBranch) -> Result<BoundaryData, RepError> {
    boundary_data_of(&rep.meridian_image(), &rep.longitude_image(), tol, branch)
}

/// Boundary data of a commuting pair `(m, l)`.
pub fn boundary_data_of(m: &Sl2, l: &Sl2, tol: f64, branch: EigenBranch) -> Result<BoundaryData, RepError> {
    let scale = 1.0 + m.matrix().norm() * l.matrix().norm();
    let comm = (m.matrix() * l.matrix() - l.matrix() * m.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if comm > tol * scale {
        return Err(RepError::BoundaryNotCommuting(comm));
    }
    if m.is_central(tol) {
        return Err(RepError::CentralMeridian);
    }
    let tr = m.trace();
    let disc = (tr * tr - 4.0).sqrt();
    let (l1, l2) = ((tr + disc) / 2.0, (tr - disc) / 2.0);
    let preferred = if (l1.norm() - l2.norm()).abs() > tol {
        if l1.norm() > l2.norm() {
            l1
        } else {
            l2
        }
    } else if (l1.im - l2.im).abs() > tol {
        if l1.im > l2.im {
            l1
        } else {
            l2
        }
    } else {
        l1
    };
    let lambda = match branch {
        EigenBranch::Preferred => preferred,
        EigenBranch::Other => preferred.inv(),
    };
    let e = eigenvector(m, lambda).ok_or(RepError::CentralMeridian)?;
    let le = [l.get(0, 0) * e[0] + l.get(0, 1) * e[1], l.get(1, 0) * e[0] + l.get(1, 1) * e[1]];
    let big_l = linalg::inner(&e, &le);
    let parabolic = m.parabolic_defect() <= tol && l.parabolic_defect() <= tol;
    Ok(BoundaryData { m: lambda, l: big_l, eigvec: e, parabolic })
}

/// Line in `sl2` fixed by the adjoint action of the boundary, as a
/// coordinate row in the basis `(E, H, F)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InvariantVector {
    pub v: [Complex64; 3],
    pub residual: f64,
}

pub fn invariant_vector(rep: &Representation, tol: f64) -> Result<InvariantVector, RepError> {
    invariant_vector_of(&rep.meridian_image(), &rep.longitude_image(), tol)
}

/// Left null vector of `[Ad(m) - I | Ad(l) - I]`, scaled so its largest
/// coordinate is 1.
pub fn invariant_vector_of(m: &Sl2, l: &Sl2, tol: f64) -> Result<InvariantVector, RepError> {
    let am = adjoint_of(m).matrix() - Matrix3::identity();
    let al = adjoint_of(l).matrix() - Matrix3::identity();
    let mut stacked = CMatrix::zeros(3, 6);
    stacked.view_mut((0, 0), (3, 3)).copy_from(&am);
    stacked.view_mut((0, 3), (3, 3)).copy_from(&al);
    let null = linalg::nullspace(&stacked.transpose(), tol);
    if null.nrows() != 1 {
        return Err(RepError::DegenerateInvariantVector(null.nrows()));
    }
    let mut v = [null[(0, 0)], null[(0, 1)], null[(0, 2)]];
    let big = *v.iter().max_by(|a, b| a.norm().total_cmp(&b.norm())).expect("three coordinates");
    for z in &mut v {
        *z /= big;
    }
    let row = nalgebra::RowVector3::new(v[0], v[1], v[2]);
    let residual = (row * am).norm().max((row * al).norm()) / linalg::row_norm(&v);
    Ok(InvariantVector { v, residual })
}

/// Both boundary traces are `+-2` within `tol`.
pub fn is_boundary_parabolic(rep: &Representation, tol: f64) -> bool {
    rep.meridian_image().parabolic_defect() <= tol && rep.longitude_image().parabolic_defect() <= tol
}

/// Conjugates `(m, l)` so that `m = [[e, 1], [0, e]]` with `e = +-1` and
/// returns the conjugated pair.
pub fn parabolic_normal_form(m: &Sl2, l: &Sl2, tol: f64) -> Result<(Sl2, Sl2), RepError> {
    if m.parabolic_defect() > tol {
        return Err(RepError::NotParabolic);
    }
    if m.is_central(tol) {
        return Err(RepError::CentralMeridian);
    }
    let eps = if m.trace().re >= 0.0 { 1.0 } else { -1.0 };
    let n = m.matrix() - Matrix2::identity() * Complex64::new(eps, 0.0);
    let j = if n.column(0).norm() >= n.column(1).norm() { 0 } else { 1 };
    let mut q = Matrix2::zeros();
    q.set_column(0, &n.column(j));
    q[(j, 1)] = Complex64::new(1.0, 0.0);
    let q_inv = q.try_inverse().ok_or(LinalgError::Singular)?;
    Ok((m.conjugate_by(&q_inv)?, l.conjugate_by(&q_inv)?))
}

/// Modulus of a boundary-parabolic representation: the translation ratio
/// of the longitude against the meridian in the normal form
/// `rho(m) = [[e, 1], [0, e]]`, that is `(l12 / l11) * (m11 / m12)`.
///
/// For `e = 1` and `l11 = 1` this is the `(1, 2)` entry of the conjugated
/// longitude.
pub fn parabolic_modulus(rep: &Representation) -> Result<Complex64, RepError> {
    parabolic_modulus_of(&rep.meridian_image(), &rep.longitude_image(), DEFAULT_EIG_TOL)
}

pub fn parabolic_modulus_of(m: &Sl2, l: &Sl2, tol: f64) -> Result<Complex64, RepError> {
    if l.parabolic_defect() > tol {
        return Err(RepError::NotParabolic);
    }
    let (mn, ln) = parabolic_normal_form(m, l, tol)?;
    Ok(ln.get(0, 1) / ln.get(0, 0) * (mn.get(0, 0) / mn.get(0, 1)))
}

/// Every image is unitary within `tol`.
pub fn is_unitary(rep: &Representation, tol: f64) -> bool {
    rep.images.iter().all(|g| (g.matrix().adjoint() * g.matrix() - Matrix2::identity()).norm() <= tol)
}

/// Conjugates the representation into `SU(2)` when it preserves a positive
/// definite Hermitian form, returning `None` otherwise.
pub fn unitarize(rep: &Representation, tol: f64) -> Option<Representation> {
    // H -> g^* H g - H on the four entries of H, stacked over generators
    let n = rep.images.len();
    let mut sys = CMatrix::zeros(4 * n, 4);
    for (k, g) in rep.images.iter().enumerate() {
        for col in 0..4 {
            let mut h = Matrix2::zeros();
            h[(col / 2, col % 2)] = Complex64::new(1.0, 0.0);
            let img = g.matrix().adjoint() * h * g.matrix() - h;
            for row in 0..4 {
                sys[(4 * k + row, col)] = img[(row / 2, row % 2)];
            }
        }
    }
    let null = linalg::nullspace(&sys, tol);
    if null.nrows() != 1 {
        return None;
    }
    let mut h = Matrix2::new(null[(0, 0)], null[(0, 1)], null[(0, 2)], null[(0, 3)]);
    let pivot = if h[(0, 0)].norm() >= h[(1, 1)].norm() { h[(0, 0)] } else { h[(1, 1)] };
    if pivot.norm() == 0.0 {
        return None;
    }
    h /= pivot;
    if (h - h.adjoint()).norm() > tol.sqrt() {
        return None;
    }
    let h = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let det = h.determinant().re;
    if h[(0, 0)].re <= 0.0 || det <= 0.0 {
        return None;
    }
    // square root of a 2x2 positive definite Hermitian matrix
    let s = det.sqrt();
    let root =
        (h + Matrix2::identity() * Complex64::new(s, 0.0)) / Complex64::new((h.trace().re + 2.0 * s).sqrt(), 0.0);
    let out = conjugate_rep(rep, &root).ok()?;
    is_unitary(&out, tol.sqrt()).then_some(out)
}
