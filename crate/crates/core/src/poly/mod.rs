//! Exact polynomial arithmetic: dense univariate polynomials, sparse
//! homogeneous forms in `X, Y, Z`, affine bivariate models and resultants.

mod bivariate;
mod homog;
pub mod resultant;
mod uni;
pub mod zpoly;

use thiserror::Error;

pub use bivariate::BiPoly;
pub use homog::{Fiber, HomogPoly, HomogPolyModP, Monomial, Var};
pub use uni::UniPoly;

use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("fiber polynomial F({x0}, 1, z) vanishes identically (the curve contains a line)")]
    FiberIdenticallyZero { x0: Rational },
    #[error("scale factor t must be nonzero")]
    InvalidScale,
    #[error("resultant of a zero polynomial")]
    ZeroInput,
    #[error("bad reduction prime {p}: {reason}")]
    BadReductionPrime { p: u64, reason: &'static str },
    #[error("terms of degree {expected} and {found} in a homogeneous form")]
    NotHomogeneous { expected: u32, found: u32 },
}

/// Sylvester resultant of two nonzero univariate polynomials.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<Rational, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    Ok(resultant::resultant_generic(f.coeffs(), g.coeffs()))
}
