//! Slope invariants of knots from `SL2(C)` representations.
//!
//! Two routes are provided: Fox calculus on a presentation twisted by the
//! adjoint representation, and the logarithmic Gauss map of the A-polynomial.

pub mod apoly;
pub mod data;
pub mod linalg;
pub mod presentation;
pub mod representation;
pub mod slope;
