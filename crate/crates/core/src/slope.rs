//! The slope of a representation from the adjoint-twisted Alexander matrix
//! of the presentation augmented by the longitude.

use std::fmt;

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{self, CMatrix, Sl2, DEFAULT_RANK_TOL};
use crate::presentation::{fox_derivative, KnotPresentation, Relation, Word};
use crate::representation::{
    evaluate_groupring_with, evaluate_word, invariant_vector_of, parabolic_modulus_of, RepError, Representation,
    DEFAULT_EIG_TOL,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SlopeError {
    #[error("meridian must be a single generator to build the augmented presentation")]
    MeridianNotGenerator,
    #[error("longitude word is empty")]
    EmptyLongitude,
    #[error("representation is boundary-parabolic; use the modulus instead")]
    BoundaryParabolic,
    #[error("not admissible at tolerance: boundary classes meet the image in dimension 0")]
    NotAdmissible,
    #[error("degenerate: intersection has dimension {0}")]
    Degenerate(usize),
    #[error("intersection vector leaves the boundary span: residual {0:e}")]
    Projection(f64),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Tolerances used by the slope computation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlopeConfig {
    /// Relative singular value cutoff for ranks, null spaces and intersections.
    pub rank_tol: f64,
    /// Commutation and eigenvector tolerance.
    pub eig_tol: f64,
    /// `|tr - +-2|` below which a boundary image counts as parabolic.
    pub parabolic_tol: f64,
    /// Allowed relative distance of the intersection vector from the boundary span.
    pub projection_tol: f64,
    /// `|a|` at or below which the reading is infinite.
    pub infinity_tol: f64,
}

impl Default for SlopeConfig {
    fn default() -> Self {
        SlopeConfig {
            rank_tol: DEFAULT_RANK_TOL,
            eig_tol: DEFAULT_EIG_TOL,
            parabolic_tol: 1e-8,
            projection_tol: 1e-7,
            infinity_tol: 1e-12,
        }
    }
}

/// Point of `CP^1`, the reading of a slope.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SlopeReading {
    Finite(Complex64),
    Infinite,
}

impl SlopeReading {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            SlopeReading::Finite(z) => Some(z),
            SlopeReading::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, SlopeReading::Infinite)
    }

    /// Distance on the Riemann sphere scaled to `[0, 2]`.
    pub fn chordal_distance(self, other: SlopeReading) -> f64 {
        fn lift(r: SlopeReading) -> [f64; 3] {
            match r {
                SlopeReading::Infinite => [0.0, 0.0, 1.0],
                SlopeReading::Finite(z) => {
                    let d = 1.0 + z.norm_sqr();
                    [2.0 * z.re / d, 2.0 * z.im / d, (z.norm_sqr() - 1.0) / d]
                }
            }
        }
        let (a, b) = (lift(self), lift(other));
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
    }
}

impl fmt::Display for SlopeReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeReading::Infinite => f.write_str("inf"),
            SlopeReading::Finite(z) if z.im == 0.0 => write!(f, "{}", z.re),
            SlopeReading::Finite(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

impl Serialize for SlopeReading {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SlopeReading::Finite(z) => [z.re, z.im].serialize(s),
            SlopeReading::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Projective pair `(a : b)` with `max(|a|, |b|) = 1` and reading `-b/a`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlopeValue {
    pub a: Complex64,
    pub b: Complex64,
    pub reading: SlopeReading,
}

impl SlopeValue {
    /// Normalizes `(a : b)`; panics if both vanish.
    pub fn new(a: Complex64, b: Complex64, infinity_tol: f64) -> Self {
        let big = if a.norm() >= b.norm() { a } else { b };
        assert!(big.norm() > 0.0, "slope pair (0 : 0)");
        let (a, b) = (a / big, b / big);
        let reading = if a.norm() <= infinity_tol { SlopeReading::Infinite } else { SlopeReading::Finite(-b / a) };
        SlopeValue { a, b, reading }
    }

    /// The pair with reading `z`.
    pub fn from_reading(z: Complex64) -> Self {
        Self::new(Complex64::new(1.0, 0.0), -z, 0.0)
    }
}

/// Presentation with the longitude added as a generator, generators ordered
/// `(l, m, others)`, and relators: the base ones, `l w^-1` for the longitude
/// word `w`, and the commutator `m l m^-1 l^-1`.
#[derive(Clone, Debug)]
pub struct AugmentedPresentation {
    names: Vec<String>,
    relations: Vec<Relation>,
    relators: Vec<Word>,
    /// Augmented index of each base generator.
    base_index: Vec<usize>,
}

impl AugmentedPresentation {
    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    /// Generator count `p`.
    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    /// Relator count `q`.
    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn base_index(&self, base_generator: usize) -> usize {
        self.base_index[base_generator]
    }

    /// Images of the augmented generators under `rep`.
    pub fn images(&self, rep: &Representation) -> Vec<Sl2> {
        let mut out = vec![Sl2::identity(); self.names.len()];
        out[0] = rep.longitude_image();
        for (g, &k) in self.base_index.iter().enumerate() {
            out[k] = *rep.image(g);
        }
        out
    }
}

pub fn augment(pres: &KnotPresentation) -> Result<AugmentedPresentation, SlopeError> {
    if pres.longitude().free_reduce().is_empty() {
        return Err(SlopeError::EmptyLongitude);
    }
    let m = pres.meridian_generator().ok_or(SlopeError::MeridianNotGenerator)?;
    let n = pres.generator_count();
    let mut base_index = vec![0; n];
    base_index[m] = 1;
    let mut next = 2;
    for (g, slot) in base_index.iter_mut().enumerate() {
        if g != m {
            *slot = next;
            next += 1;
        }
    }
    let mut ell = "l".to_string();
    while pres.generators().contains(&ell) {
        ell.push('\'');
    }
    let mut names = vec![String::new(); n + 1];
    names[0] = ell;
    for (g, name) in pres.generators().iter().enumerate() {
        names[base_index[g]] = name.clone();
    }
    let relabel = |w: &Word| w.relabel(|g| base_index[g]);
    let mut relations: Vec<Relation> =
        pres.relations().iter().map(|r| Relation { lhs: relabel(&r.lhs), rhs: relabel(&r.rhs) }).collect();
    let (l_word, m_word) = (Word::generator(0), Word::generator(1));
    relations.push(Relation { lhs: l_word.clone(), rhs: relabel(pres.longitude()) });
    relations.push(Relation { lhs: m_word.concat(&l_word), rhs: l_word.concat(&m_word) });
    let relators = relations.iter().map(Relation::relator).collect();
    Ok(AugmentedPresentation { names, relations, relators, base_index })
}

/// The `3q x 3p` matrix whose `(i, j)` block is `Ad(rho)(d r_i / d x_j)`.
#[derive(Clone, Debug)]
pub struct TwistedAlexanderMatrix {
    matrix: CMatrix,
    q: usize,
    p: usize,
}

impl TwistedAlexanderMatrix {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn relator_count(&self) -> usize {
        self.q
    }

    pub fn generator_count(&self) -> usize {
        self.p
    }

    pub fn block(&self, relator: usize, generator: usize) -> Matrix3<Complex64> {
        self.matrix.fixed_view::<3, 3>(3 * relator, 3 * generator).into_owned()
    }

    /// Columns of the `dl` block.
    pub fn longitude_columns(&self) -> std::ops::Range<usize> {
        0..3
    }

    /// Columns of the `dm` block.
    pub fn meridian_columns(&self) -> std::ops::Range<usize> {
        3..6
    }
}

pub fn build_twisted_alexander(aug: &AugmentedPresentation, rep: &Representation) -> TwistedAlexanderMatrix {
    let images = aug.images(rep);
    let (q, p) = (aug.relator_count(), aug.generator_count());
    let mut matrix = CMatrix::zeros(3 * q, 3 * p);
    for (i, r) in aug.relators().iter().enumerate() {
        for j in 0..p {
            let d = fox_derivative(r, j);
            if d.is_zero() {
                continue;
            }
            let block = evaluate_groupring_with(&images, &d);
            matrix.view_mut((3 * i, 3 * j), (3, 3)).copy_from(&block);
        }
    }
    TwistedAlexanderMatrix { matrix, q, p }
}

fn boundary_rows(v: &[Complex64; 3], cols: usize) -> CMatrix {
    let mut w = CMatrix::zeros(2, cols);
    for k in 0..3 {
        w[(0, k)] = v[k];
        w[(1, 3 + k)] = v[k];
    }
    w
}

/// Slope `-b/a` where `a (v (x) dl) + b (v (x) dm)` spans the intersection of
/// the boundary span with the row space of the twisted Alexander matrix.
///
/// Reducible representations are accepted; the caller decides whether the
/// result is meaningful.
pub fn compute_slope(rep: &Representation, cfg: &SlopeConfig) -> Result<SlopeValue, SlopeError> {
    let aug = augment(rep.presentation())?;
    let (m, l) = (rep.meridian_image(), rep.longitude_image());
    if m.parabolic_defect() <= cfg.parabolic_tol && l.parabolic_defect() <= cfg.parabolic_tol {
        return Err(SlopeError::BoundaryParabolic);
    }
    let iv = invariant_vector_of(&m, &l, cfg.rank_tol)?;
    let t = build_twisted_alexander(&aug, rep);
    slope_from_matrix(&t, &iv.v, cfg).map(|(s, _)| s)
}

/// Slope read off a twisted Alexander matrix and an invariant vector,
/// together with the relative projection residual.
pub fn slope_from_matrix(
    t: &TwistedAlexanderMatrix,
    v: &[Complex64; 3],
    cfg: &SlopeConfig,
) -> Result<(SlopeValue, f64), SlopeError> {
    let cols = t.matrix().ncols();
    let w = boundary_rows(v, cols);
    let inter = linalg::subspace_intersection(&w, t.matrix(), cfg.rank_tol);
    match inter.nrows() {
        0 => return Err(SlopeError::NotAdmissible),
        1 => {}
        d => return Err(SlopeError::Degenerate(d)),
    }
    let x: Vec<Complex64> = inter.row(0).iter().copied().collect();
    let w1: Vec<Complex64> = w.row(0).iter().copied().collect();
    let w2: Vec<Complex64> = w.row(1).iter().copied().collect();
    let a = linalg::inner(&w1, &x) / linalg::inner(&w1, &w1);
    let b = linalg::inner(&w2, &x) / linalg::inner(&w2, &w2);
    let rest: Vec<Complex64> = (0..cols).map(|k| x[k] - a * w1[k] - b * w2[k]).collect();
    let residual = linalg::row_norm(&rest) / linalg::row_norm(&x);
    if residual > cfg.projection_tol {
        return Err(SlopeError::Projection(residual));
    }
    Ok((SlopeValue::new(a, b, cfg.infinity_tol), residual))
}

/// The slope as a function on characters: the modulus for
/// boundary-parabolic representations, [`compute_slope`] otherwise.
pub fn slope_of_character(rep: &Representation, cfg: &SlopeConfig) -> Result<SlopeValue, SlopeError> {
    let (m, l) = (rep.meridian_image(), rep.longitude_image());
    if m.is_central(cfg.eig_tol) {
        return Err(RepError::CentralMeridian.into());
    }
    if m.parabolic_defect() <= cfg.parabolic_tol && l.parabolic_defect() <= cfg.parabolic_tol {
        let tau = parabolic_modulus_of(&m, &l, cfg.parabolic_tol)?;
        return Ok(SlopeValue::from_reading(tau));
    }
    compute_slope(rep, cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Admissible,
    ParabolicPath,
    Degenerate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Admissible => "admissible",
            Verdict::ParabolicPath => "parabolic-path",
            Verdict::Degenerate => "degenerate",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residuals {
    /// Largest relator residual of the representation.
    pub relator: f64,
    /// Commutator `|m l - l m|` of the boundary images.
    pub boundary_commutator: f64,
    /// Relative residual of the invariant vector, when it exists.
    pub invariant_vector: Option<f64>,
    /// Relative distance of the intersection vector from the boundary span.
    pub projection: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub dim_intersection: usize,
    /// Rank of the boundary classes modulo the row space (`2 - dim_intersection`).
    pub boundary_rank: usize,
    pub residuals: Residuals,
    pub parabolic: bool,
    pub verdict: Verdict,
}

/// Diagnostics for the hypotheses of the slope computation.
pub fn admissibility(rep: &Representation, cfg: &SlopeConfig) -> AdmissibilityReport {
    let (m, l) = (rep.meridian_image(), rep.longitude_image());
    let commutator = (m.matrix() * l.matrix() - l.matrix() * m.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let parabolic = m.parabolic_defect() <= cfg.parabolic_tol && l.parabolic_defect() <= cfg.parabolic_tol;
    let mut residuals = Residuals {
        relator: rep.max_relator_residual(),
        boundary_commutator: commutator,
        invariant_vector: None,
        projection: None,
    };
    let report = |dim: usize, verdict: Verdict, residuals: Residuals| AdmissibilityReport {
        dim_intersection: dim,
        boundary_rank: 2usize.saturating_sub(dim),
        residuals,
        parabolic,
        verdict,
    };
    let (Ok(aug), Ok(iv)) = (augment(rep.presentation()), invariant_vector_of(&m, &l, cfg.rank_tol)) else {
        let verdict = if parabolic { Verdict::ParabolicPath } else { Verdict::Degenerate };
        return report(0, verdict, residuals);
    };
    residuals.invariant_vector = Some(iv.residual);
    let t = build_twisted_alexander(&aug, rep);
    let w = boundary_rows(&iv.v, t.matrix().ncols());
    let dim = linalg::subspace_intersection(&w, t.matrix(), cfg.rank_tol).nrows();
    if dim == 1 {
        if let Ok((_, res)) = slope_from_matrix(&t, &iv.v, cfg) {
            residuals.projection = Some(res);
        }
    }
    let verdict = if parabolic {
        Verdict::ParabolicPath
    } else if dim == 1 && residuals.projection.is_some() {
        Verdict::Admissible
    } else {
        Verdict::Degenerate
    };
    report(dim, verdict, residuals)
}

/// Meridian and longitude images for reporting.
pub fn boundary_images(rep: &Representation) -> (Sl2, Sl2) {
    let pres = rep.presentation();
    (evaluate_word(rep, pres.meridian()), evaluate_word(rep, pres.longitude()))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use nalgebra::Matrix2;

    use super::*;
    use crate::linalg::adjoint_of;
    use crate::presentation::parse_presentation;
    use crate::representation::{abelian_rep, riley_family};

    const TREFOIL: &str = "gens: u v ; rel: u v u = v u v ; meridian: u ; longitude: v u v^-1 u v u^-3";

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn trefoil() -> Arc<KnotPresentation> {
        Arc::new(parse_presentation(TREFOIL).unwrap())
    }

    fn triangular_trefoil(m: Complex64) -> Representation {
        let u = Sl2::new(Matrix2::new(m, c(1.0, 0.0), c(0.0, 0.0), m.inv())).unwrap();
        let v = Sl2::new(Matrix2::new(m.inv(), c(0.0, 0.0), c(-1.0, 0.0), m)).unwrap();
        Representation::new(trefoil(), vec![u, v]).unwrap()
    }

    #[test]
    fn augment_shape() {
        let aug = augment(&trefoil()).unwrap();
        assert_eq!(aug.generator_count(), 3);
        assert_eq!(aug.relator_count(), 3);
        assert_eq!(aug.generator_names(), ["l", "u", "v"]);
    }

    #[test]
    fn longitude_block_is_identity() {
        let aug = augment(&trefoil()).unwrap();
        let t = build_twisted_alexander(&aug, &triangular_trefoil(c(2.0, 0.0)));
        assert!((t.block(1, 0) - Matrix3::identity()).norm() < 1e-12);
    }

    #[test]
    fn commutator_blocks() {
        // d(m l m^-1 l^-1)/dm = 1 - m l m^-1, d/dl = m - m l m^-1 l^-1
        let rep = triangular_trefoil(c(2.0, 0.0));
        let aug = augment(&trefoil()).unwrap();
        let t = build_twisted_alexander(&aug, &rep);
        let (m, l) = boundary_images(&rep);
        let mlm = m.mul(&l).mul(&m.inverse());
        let expected_m = Matrix3::identity() - adjoint_of(&mlm).matrix();
        assert!((t.block(2, 1) - expected_m).norm() < 1e-9);
        let comm = mlm.mul(&l.inverse());
        let expected_l = adjoint_of(&m).matrix() - adjoint_of(&comm).matrix();
        assert!((t.block(2, 0) - expected_l).norm() < 1e-9);
    }

    #[test]
    fn trefoil_slope_is_minus_six() {
        let cfg = SlopeConfig::default();
        for m in [c(2.0, 0.0), c(3.0, 0.0), c(1.0, 1.0)] {
            let s = compute_slope(&triangular_trefoil(m), &cfg).unwrap();
            let z = s.reading.finite().unwrap();
            assert!((z - c(-6.0, 0.0)).norm() < 1e-8, "M = {m}: {z}");
        }
        let roots = riley_family(&trefoil(), c(2.0, 0.0), 1e-8).unwrap();
        let s = compute_slope(&roots[0].rep, &cfg).unwrap();
        assert!((s.reading.finite().unwrap() + 6.0).norm() < 1e-8);
    }

    #[test]
    fn abelian_slope_vanishes() {
        let cfg = SlopeConfig::default();
        let rep = abelian_rep(trefoil(), c(2.0, 0.0)).unwrap();
        let s = compute_slope(&rep, &cfg).unwrap();
        assert!(s.reading.finite().unwrap().norm() < 1e-10);
    }

    #[test]
    fn slope_value_normalization() {
        let s = SlopeValue::new(c(2.0, 0.0), c(12.0, 0.0), 1e-12);
        assert!((s.b - 1.0).norm() < 1e-15);
        assert!((s.reading.finite().unwrap() + 6.0).norm() < 1e-12);
        let inf = SlopeValue::new(c(0.0, 0.0), c(3.0, 0.0), 1e-12);
        assert!(inf.reading.is_infinite());
        assert_eq!(serde_json::to_string(&inf.reading).unwrap(), "\"inf\"");
    }

    #[test]
    fn modulus_becomes_reading() {
        let o = c(1.0, 0.0);
        let z = c(0.0, 0.0);
        let m = Sl2::new(Matrix2::new(o, o, z, o)).unwrap();
        let l = Sl2::new(Matrix2::new(o, c(2.0, -1.0), z, o)).unwrap();
        let tau = parabolic_modulus_of(&m, &l, 1e-8).unwrap();
        let z = SlopeValue::from_reading(tau).reading.finite().unwrap();
        assert!((z - c(2.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn admissibility_of_trefoil() {
        let r = admissibility(&triangular_trefoil(c(2.0, 0.0)), &SlopeConfig::default());
        assert_eq!(r.verdict, Verdict::Admissible);
        assert_eq!(r.dim_intersection, 1);
        assert!(!r.parabolic);
    }

    #[test]
    fn chordal_distance() {
        let a = SlopeReading::Finite(c(0.0, 0.0));
        assert!((a.chordal_distance(SlopeReading::Infinite) - 2.0).abs() < 1e-15);
        assert_eq!(a.chordal_distance(a), 0.0);
    }
}
