//! Riley normal form for two-generator knot groups:
//! `u -> [[M, 1], [0, M^-1]]`, `v -> [[M, 0], [t, M^-1]]`.

use std::sync::Arc;

use nalgebra::Matrix2;
use num_complex::Complex64;

use super::poly::{CPoly, PolyMat2};
use super::{is_reducible, RepError, Representation};
use crate::linalg::Sl2;
use crate::presentation::{KnotPresentation, Word};

/// Roots closer than this are treated as one.
const CLUSTER_RADIUS: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct RileyRep {
    pub t: Complex64,
    pub rep: Representation,
    pub reducible: bool,
}

/// The Riley images of `u` and `v` at `(M, t)`.
pub fn riley_images(m: Complex64, t: Complex64) -> [Sl2; 2] {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let u = Matrix2::new(m, o, z, m.inv());
    let v = Matrix2::new(m, z, t, m.inv());
    [Sl2::with_tol(u, f64::INFINITY).expect("finite"), Sl2::with_tol(v, f64::INFINITY).expect("finite")]
}

fn symbolic_word(w: &Word, m: Complex64) -> PolyMat2 {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let mi = m.inv();
    let t = CPoly::t();
    let u = PolyMat2::constant(m, o, z, mi);
    let u_inv = PolyMat2::constant(mi, -o, z, m);
    let v = PolyMat2([CPoly::constant(m), CPoly::zero(), t.clone(), CPoly::constant(mi)]);
    let v_inv = PolyMat2([CPoly::constant(mi), CPoly::zero(), -&t, CPoly::constant(m)]);
    w.letters().iter().fold(PolyMat2::identity(), |acc, l| {
        let g = match (l.generator, l.inverse) {
            (0, false) => &u,
            (0, true) => &u_inv,
            (_, false) => &v,
            (_, true) => &v_inv,
        };
        acc.mul(g)
    })
}

/// Relator entry polynomials `rho(lhs) - rho(rhs)` in `t`, four per relation.
pub fn relator_polynomials(pres: &KnotPresentation, m: Complex64) -> Vec<CPoly> {
    let mut out = Vec::new();
    for r in pres.relations() {
        let lhs = symbolic_word(&r.lhs, m);
        let rhs = symbolic_word(&r.rhs, m);
        let scale = lhs.0.iter().chain(&rhs.0).map(CPoly::max_coeff).fold(1.0, f64::max);
        let diff = lhs.sub(&rhs);
        out.extend(diff.0.into_iter().map(|p| p.trimmed(1e-12 * scale)));
    }
    out
}

/// All Riley representations at meridian eigenvalue `M`: the common roots
/// of the relator entry polynomials, found as roots of the first nonzero
/// entry filtered by the residual of every relator.
pub fn riley_family(pres: &Arc<KnotPresentation>, m: Complex64, tol: f64) -> Result<Vec<RileyRep>, RepError> {
    if pres.generator_count() != 2 {
        return Err(RepError::NotTwoGenerator(pres.generator_count()));
    }
    if m.norm() == 0.0 || !m.re.is_finite() || !m.im.is_finite() {
        return Err(RepError::ZeroEigenvalue);
    }
    let polys = relator_polynomials(pres, m);
    let Some(first) = polys.iter().find(|p| p.degree().is_some()) else {
        return Ok(Vec::new());
    };
    let mut found: Vec<(Complex64, f64, Representation)> = Vec::new();
    for t in first.roots() {
        let rep = Representation { presentation: pres.clone(), images: riley_images(m, t).to_vec() };
        let residual = rep.max_relator_residual();
        if residual.is_nan() || residual > tol {
            continue;
        }
        match found.iter_mut().find(|(s, _, _)| (s - t).norm() <= CLUSTER_RADIUS) {
            Some(entry) if residual < entry.1 => *entry = (t, residual, rep),
            Some(_) => {}
            None => found.push((t, residual, rep)),
        }
    }
    found.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    Ok(found
        .into_iter()
        .map(|(t, _, rep)| {
            let reducible = is_reducible(&rep, tol);
            RileyRep { t, rep, reducible }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    const TREFOIL: &str = "gens: u v ; rel: u v u = v u v ; meridian: u ; longitude: v u v^-1 u v u^-3";

    #[test]
    fn trefoil_has_one_root() {
        let p = Arc::new(parse_presentation(TREFOIL).unwrap());
        let m = Complex64::new(2.0, 0.0);
        let roots = riley_family(&p, m, 1e-8).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(!roots[0].reducible);
        assert!(roots[0].rep.max_relator_residual() < 1e-10);
    }

    #[test]
    fn needs_two_generators() {
        let three = Arc::new(
            parse_presentation("gens: a b c ; rel: a = b ; rel: b = c ; meridian: a ; longitude: a b^-1").unwrap(),
        );
        assert_eq!(riley_family(&three, Complex64::new(2.0, 0.0), 1e-8).unwrap_err(), RepError::NotTwoGenerator(3));
    }

    #[test]
    fn zero_meridian_rejected() {
        let p = Arc::new(parse_presentation(TREFOIL).unwrap());
        assert_eq!(riley_family(&p, Complex64::new(0.0, 0.0), 1e-8).unwrap_err(), RepError::ZeroEigenvalue);
    }
}
