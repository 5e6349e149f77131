//! Bundled reference presentations.

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::presentation::{parse_presentation, KnotPresentation, PresentationError};
use crate::representation::{riley_family, RepError};

pub const TREFOIL: &str = include_str!("../data/trefoil.pres");
pub const FIGURE_EIGHT: &str = include_str!("../data/figure8.pres");

/// Meridian eigenvalue used to check bundled longitudes.
const CHECK_M: Complex64 = Complex64::new(1.3, 0.2);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DataError {
    #[error("unknown knot `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("longitude does not commute with the meridian: residual {0:e}")]
    LongitudeCommutator(f64),
}

/// Text of a bundled presentation by name.
pub fn text(name: &str) -> Option<&'static str> {
    match name {
        "trefoil" | "3_1" => Some(TREFOIL),
        "figure-eight" | "figure8" | "4_1" => Some(FIGURE_EIGHT),
        _ => None,
    }
}

/// Parses a bundled presentation and checks that its longitude commutes with
/// the meridian on every Riley representation at a sample eigenvalue.
pub fn load(name: &str) -> Result<Arc<KnotPresentation>, DataError> {
    let text = text(name).ok_or_else(|| DataError::Unknown(name.to_string()))?;
    let pres = Arc::new(parse_presentation(text)?);
    let residual = longitude_commutator(&pres, CHECK_M)?;
    if residual > 1e-8 {
        return Err(DataError::LongitudeCommutator(residual));
    }
    Ok(pres)
}

/// Largest `|rho(m) rho(l) - rho(l) rho(m)|` over the Riley roots at `m`.
pub fn longitude_commutator(pres: &Arc<KnotPresentation>, m: Complex64) -> Result<f64, RepError> {
    let mut worst: f64 = 0.0;
    for r in riley_family(pres, m, 1e-8)? {
        let (a, b) = (r.rep.meridian_image(), r.rep.longitude_image());
        let d = (a.matrix() * b.matrix() - b.matrix() * a.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        worst = worst.max(d);
    }
    Ok(worst)
}

pub fn trefoil() -> Arc<KnotPresentation> {
    load("trefoil").expect("bundled trefoil is valid")
}

pub fn figure_eight() -> Arc<KnotPresentation> {
    load("figure-eight").expect("bundled figure-eight is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_presentations_load() {
        assert_eq!(trefoil().generator_count(), 2);
        let f = figure_eight();
        assert_eq!(f.longitude().total_exponent(), 0);
        assert_eq!(riley_family(&f, CHECK_M, 1e-8).unwrap().len(), 2);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(load("5_2"), Err(DataError::Unknown(_))));
    }
}
