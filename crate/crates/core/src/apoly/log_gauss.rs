use num_complex::Complex64;

use super::bilaurent::{BiLaurent, Var};
use super::ApolyError;
use crate::slope::SlopeReading;

/// Relative cutoff below which a logarithmic partial derivative counts as zero.
pub const DEFAULT_LOG_GAUSS_TOL: f64 = 1e-12;

/// `-(M dA/dM) / (L dA/dL)` at `(L, M)`.
pub fn log_gauss(a: &BiLaurent, l: Complex64, m: Complex64) -> Result<SlopeReading, ApolyError> {
    log_gauss_with_tol(a, l, m, DEFAULT_LOG_GAUSS_TOL)
}

/// [`log_gauss`] with an explicit tolerance. Each logarithmic partial is
/// compared with the sum of the moduli of its terms at `(L, M)`.
pub fn log_gauss_with_tol(a: &BiLaurent, l: Complex64, m: Complex64, tol: f64) -> Result<SlopeReading, ApolyError> {
    if l.norm() == 0.0 || m.norm() == 0.0 {
        return Err(ApolyError::ZeroCoordinate);
    }
    let dl = a.derivative(Var::L).shift(1, 0);
    let dm = a.derivative(Var::M).shift(0, 1);
    let (num, den) = (dm.eval(l, m), dl.eval(l, m));
    let den_small = den.norm() <= tol * dl.magnitude_at(l, m);
    let num_small = num.norm() <= tol * dm.magnitude_at(l, m);
    match (den_small, num_small) {
        (true, true) => Err(ApolyError::SingularPoint),
        (true, false) => Ok(SlopeReading::Infinite),
        _ => Ok(SlopeReading::Finite(-num / den)),
    }
}

#[cfg(test)]
mod tests {
    use super::super::bilaurent::parse_bilaurent;
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trefoil_is_minus_six() {
        let a = parse_bilaurent("1 + L*M^6").unwrap();
        for m in [c(2.0, 0.0), c(0.7, 1.3)] {
            let l = -m.powi(-6);
            let s = log_gauss(&a, l, m).unwrap().finite().unwrap();
            assert!((s + 6.0).norm() < 1e-12);
        }
    }

    #[test]
    fn abelian_factor_is_zero() {
        let a = parse_bilaurent("L - 1").unwrap();
        let s = log_gauss(&a, c(1.0, 0.0), c(3.0, 1.0)).unwrap();
        assert_eq!(s, SlopeReading::Finite(c(-0.0, -0.0)));
    }

    #[test]
    fn infinite_and_singular() {
        let a = parse_bilaurent("M - 2").unwrap();
        assert_eq!(log_gauss(&a, c(1.0, 0.0), c(2.0, 0.0)).unwrap(), SlopeReading::Infinite);
        // (L - 1)^2 - (M - 1)^2 has a node at (1, 1)
        let node = parse_bilaurent("L^2 - 2*L - M^2 + 2*M").unwrap();
        assert_eq!(log_gauss(&node, c(1.0, 0.0), c(1.0, 0.0)), Err(ApolyError::SingularPoint));
        assert_eq!(log_gauss(&a, c(0.0, 0.0), c(1.0, 0.0)), Err(ApolyError::ZeroCoordinate));
    }
}
