//! Dense complex linear algebra with explicit rank tolerances, plus the
//! `SL2` and adjoint (`3x3`) matrix types.
//!
//! Vectors are rows throughout: a subspace is given by a matrix whose rows
//! span it, and linear maps act on the right.

use nalgebra::{DMatrix, Matrix2, Matrix3};
use num_complex::Complex64;
use thiserror::Error;

pub type CMatrix = DMatrix<Complex64>;

/// Relative rank threshold used when the caller does not pass one.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;
/// Allowed `|det - 1|` for [`Sl2`] and [`Ad3`].
pub const DEFAULT_DET_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is not in SL2: |det - 1| = {0:e}")]
    NotSl2(f64),
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("matrix is singular")]
    Singular,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A 2x2 complex matrix of determinant one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sl2(Matrix2<Complex64>);

impl Sl2 {
    pub fn new(m: Matrix2<Complex64>) -> Result<Self, LinalgError> {
        Self::with_tol(m, DEFAULT_DET_TOL)
    }

    pub fn with_tol(m: Matrix2<Complex64>, det_tol: f64) -> Result<Self, LinalgError> {
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        let err = (det - Complex64::new(1.0, 0.0)).norm();
        if err > det_tol {
            return Err(LinalgError::NotSl2(err));
        }
        Ok(Sl2(m))
    }

    /// Entries in row-major order.
    pub fn from_entries(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, LinalgError> {
        Self::new(Matrix2::new(a, b, c, d))
    }

    /// Divides by a square root of the determinant.
    pub fn normalized(m: Matrix2<Complex64>) -> Result<Self, LinalgError> {
        let det = m.determinant();
        if det.norm() < 1e-300 {
            return Err(LinalgError::Singular);
        }
        Self::new(m / det.sqrt())
    }

    pub fn identity() -> Self {
        Sl2(Matrix2::identity())
    }

    pub fn diagonal(lambda: Complex64) -> Self {
        Sl2(Matrix2::new(lambda, c(0.0, 0.0), c(0.0, 0.0), lambda.inv()))
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[(0, 0)] + self.0[(1, 1)]
    }

    pub fn det(&self) -> Complex64 {
        self.0.determinant()
    }

    /// Inverse via the adjugate, exact for determinant one.
    pub fn inverse(&self) -> Sl2 {
        let m = &self.0;
        Sl2(Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]))
    }

    pub fn mul(&self, other: &Sl2) -> Sl2 {
        Sl2(self.0 * other.0)
    }

    /// `P self P^-1` for an invertible `P`, renormalized to determinant one.
    pub fn conjugate_by(&self, p: &Matrix2<Complex64>) -> Result<Sl2, LinalgError> {
        let p_inv = p.try_inverse().ok_or(LinalgError::Singular)?;
        Sl2::normalized(p * self.0 * p_inv)
    }

    pub fn max_abs_diff(&self, other: &Sl2) -> f64 {
        (self.0 - other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `|tr - 2|` or `|tr + 2|`, whichever is smaller.
    pub fn parabolic_defect(&self) -> f64 {
        let t = self.trace();
        (t - 2.0).norm().min((t + 2.0).norm())
    }

    /// Whether the matrix is `+I` or `-I` within `tol`.
    pub fn is_central(&self, tol: f64) -> bool {
        let m = &self.0;
        let off = m[(0, 1)].norm().max(m[(1, 0)].norm());
        off <= tol
            && ((m[(0, 0)] - 1.0).norm().max((m[(1, 1)] - 1.0).norm()) <= tol
                || (m[(0, 0)] + 1.0).norm().max((m[(1, 1)] + 1.0).norm()) <= tol)
    }
}

/// Matrix of the adjoint action on `sl2` in the ordered basis `(E, H, F)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ad3(Matrix3<Complex64>);

impl Ad3 {
    pub fn matrix(&self) -> &Matrix3<Complex64> {
        &self.0
    }

    pub fn det(&self) -> Complex64 {
        self.0.determinant()
    }

    pub fn mul(&self, other: &Ad3) -> Ad3 {
        Ad3(self.0 * other.0)
    }
}

/// The `sl2` basis `E = [[0,1],[0,0]]`, `H = [[1,0],[0,-1]]`, `F = [[0,0],[1,0]]`.
pub fn sl2_basis() -> [Matrix2<Complex64>; 3] {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    [Matrix2::new(z, o, z, z), Matrix2::new(o, z, z, -o), Matrix2::new(z, z, o, z)]
}

/// Coordinates of a traceless matrix in the basis `(E, H, F)`.
pub fn sl2_coords(x: &Matrix2<Complex64>) -> [Complex64; 3] {
    [x[(0, 1)], x[(0, 0)], x[(1, 0)]]
}

/// Matrix of `X -> A X A^-1` in the basis `(E, H, F)`, with column `k`
/// holding the coordinates of `A B_k A^-1`.
///
/// A coordinate row vector `v` is moved by `v * adjoint_of(A)`. This makes
/// `adjoint_of` a homomorphism, `adjoint_of(AB) = adjoint_of(A) adjoint_of(B)`,
/// so row vectors form a right module over the group ring.
pub fn adjoint_of(a: &Sl2) -> Ad3 {
    let a_inv = a.inverse();
    let mut out = Matrix3::zeros();
    for (k, b) in sl2_basis().iter().enumerate() {
        let image = a.matrix() * b * a_inv.matrix();
        for (i, z) in sl2_coords(&image).into_iter().enumerate() {
            out[(i, k)] = z;
        }
    }
    Ad3(out)
}

/// Gram matrix of the Killing form `K(X, Y) = 4 tr(XY)` in `(E, H, F)`.
pub fn killing_gram() -> Matrix3<Complex64> {
    let basis = sl2_basis();
    Matrix3::from_fn(|i, j| (basis[i] * basis[j]).trace() * 4.0)
}

pub fn is_finite(a: &CMatrix) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Singular values in decreasing order.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = a.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

fn threshold(s: &[f64], tol: f64) -> f64 {
    s.first().copied().unwrap_or(0.0) * tol
}

/// Number of singular values above `tol` times the largest one.
pub fn rank_with_tol(a: &CMatrix, tol: f64) -> usize {
    let s = singular_values(a);
    let smax = s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    let cut = threshold(&s, tol);
    s.iter().filter(|&&x| x > cut).count()
}

/// Full SVD of `a` padded with zero rows so that `V^H` is square.
/// Returns `(singular values, rows of V^H)` sorted by decreasing singular value.
fn full_right_svd(a: &CMatrix) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let n = a.ncols();
    let padded = if a.nrows() < n {
        let mut p = CMatrix::zeros(n, n);
        p.rows_mut(0, a.nrows()).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let s = order.iter().map(|&i| svd.singular_values[i]).collect();
    let rows = order.iter().map(|&i| v_t.row(i).iter().copied().collect()).collect();
    (s, rows)
}

fn rows_to_matrix(rows: &[Vec<Complex64>], ncols: usize) -> CMatrix {
    CMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j])
}

/// Orthonormal rows spanning `{x : A x = 0}`; there are `cols - rank` of them.
pub fn nullspace(a: &CMatrix, tol: f64) -> CMatrix {
    let n = a.ncols();
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let (s, rows) = full_right_svd(a);
    let smax = s.first().copied().unwrap_or(0.0);
    let cut = threshold(&s, tol);
    let null: Vec<Vec<Complex64>> = rows
        .into_iter()
        .zip(s.iter().copied().chain(std::iter::repeat(0.0)))
        .filter(|(_, sv)| smax == 0.0 || *sv <= cut)
        .map(|(r, _)| r.into_iter().map(|z| z.conj()).collect())
        .collect();
    rows_to_matrix(&null, n)
}

/// Orthonormal rows spanning the row space of `a`.
pub fn row_space(a: &CMatrix, tol: f64) -> CMatrix {
    let n = a.ncols();
    if a.nrows() == 0 || n == 0 {
        return CMatrix::zeros(0, n);
    }
    let (s, rows) = full_right_svd(a);
    let smax = s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return CMatrix::zeros(0, n);
    }
    let cut = threshold(&s, tol);
    let kept: Vec<Vec<Complex64>> =
        rows.into_iter().zip(s.iter()).filter(|(_, &sv)| sv > cut).map(|(r, _)| r).collect();
    rows_to_matrix(&kept, n)
}

/// Orthonormal rows spanning the intersection of the row spaces of `u` and
/// `w`, found from the null space of the stacked system `x U - y W = 0`.
pub fn subspace_intersection(u: &CMatrix, w: &CMatrix, tol: f64) -> CMatrix {
    assert_eq!(u.ncols(), w.ncols(), "ambient dimensions differ");
    let n = u.ncols();
    let uo = row_space(u, tol);
    let wo = row_space(w, tol);
    let (ku, kw) = (uo.nrows(), wo.nrows());
    if ku == 0 || kw == 0 {
        return CMatrix::zeros(0, n);
    }
    let mut stacked = CMatrix::zeros(ku + kw, n);
    stacked.rows_mut(0, ku).copy_from(&uo);
    stacked.rows_mut(ku, kw).copy_from(&(-&wo));
    // z * stacked = 0  <=>  stacked^T z^T = 0
    let z = nullspace(&stacked.transpose(), tol);
    if z.nrows() == 0 {
        return CMatrix::zeros(0, n);
    }
    let coeffs = z.columns(0, ku).into_owned();
    let vectors = coeffs * uo;
    row_space(&vectors, tol)
}

/// Euclidean norm of a row vector.
pub fn row_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian inner product `<x, y> = sum conj(x_i) y_i`.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}
