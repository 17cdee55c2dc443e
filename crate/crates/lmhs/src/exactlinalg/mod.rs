//! Exact arithmetic over ℚ(i) with formal `(2π)^k` twists, and the linear
//! algebra every other module is built on.

mod filtration;
mod gauss;
mod hermitian;
mod matrix;
mod scalar;
mod subspace;

use thiserror::Error;

pub use filtration::{check_opposed, Direction, Filtration};
pub use gauss::{rat, Gauss};
pub use hermitian::{ldl_pivots_positive, HermitianForm};
pub use matrix::{ExactMatrix, Matrix, Rref};
pub use scalar::ExactScalar;
pub use subspace::{quotient_map, Quotient, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("TwistError: cannot add (2π)^{0} and (2π)^{1} terms")]
    Twist(i32, i32),
    #[error("ContainmentError: subspace is not contained in the ambient subspace")]
    Containment,
    #[error("ShapeError: {0}")]
    Shape(String),
    #[error("FiltrationError: {0}")]
    Filtration(String),
    #[error("NotHermitian: gram differs from its conjugate transpose")]
    NotHermitian,
    #[error("NotDecidable: {0}")]
    NotDecidable(String),
    #[error("ParseError: {0}")]
    Parse(String),
}
