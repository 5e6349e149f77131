//! Exact A-polynomial computations: Laurent polynomial algebra, Riley
//! elimination, Newton polygons and the logarithmic Gauss map.

mod bilaurent;
mod log_gauss;
mod newton;
mod twobridge;
mod unipoly;

use thiserror::Error;

pub use bilaurent::{format_bilaurent, gcd, parse_bilaurent, BiLaurent, PolyJson, Var};
pub use log_gauss::{log_gauss, log_gauss_with_tol, DEFAULT_LOG_GAUSS_TOL};
pub use newton::{
    convex_hull, ideal_point_slopes, is_integer_slope, newton_polygon, side_slopes, IdealSlope, IdealSlopeReport,
    NewtonPolygon, Side, SideSlope,
};
pub use twobridge::{compute_apoly_twobridge, riley_polynomial, ApolyResult};
pub use unipoly::{bareiss_determinant, resultant_t, sylvester_matrix, UniPolyMat2, UniPolyOverField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApolyError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("Newton polygon is a single point")]
    DegeneratePolygon,
    #[error("resultant vanishes identically (common factor)")]
    ZeroResultant,
    #[error("A-polynomial elimination needs a 2-generator presentation, got {0} generators")]
    NotTwoGenerator(usize),
    #[error("meridian must be one of the two generators")]
    MeridianNotGenerator,
    #[error("relator entries vanish identically; presentation not of the expected shape")]
    RelatorsVanish,
    #[error("Riley polynomial is constant: no irreducible component to eliminate")]
    NoIrreducibleComponent,
    #[error("both partial derivatives vanish: singular point of the curve")]
    SingularPoint,
    #[error("L and M must be nonzero")]
    ZeroCoordinate,
}
