//! Semistable degenerations with simple normal crossing central fiber: strata
//! data, the E1 page of the weight spectral sequence, graded pieces of the
//! limit cohomology, graded pairings and their positivity.

mod complex;
mod instance;
mod limit;
mod pairing;
mod validate;

use thiserror::Error;

use crate::exactlinalg::LinalgError;
use crate::nilpotent::NilpotentError;

pub use complex::{
    alternating_maps, d1, e1_page, graded_monodromy, graded_monodromy_between, graded_piece,
    gysin_map, monodromy_on_terms, restriction_map, stratum_conj, stratum_gram, stratum_types,
    E1Page, E1Term, GradedPiece, Summand, WeightComplex,
};
pub use instance::{
    DegreeData, HodgeType, KahlerData, Piece, Restriction, SncInstance, Stratum, SCHEMA_VERSION,
};
pub use limit::{betti, limit_cohomology, top_hodge_vector, LimitCohomology};
pub use pairing::{
    gr3_polarization_verdict, gr4_positivity, pairing_gr24, pairing_gr33, pairing_well_defined,
    primitive_modify, PairingCheck, Pairings,
};
pub use validate::validate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteenbrinkError {
    #[error("SchemaError: {0}")]
    Schema(String),
    #[error("MissingPairing: no usable cup Gram on {piece} in degree {degree}")]
    MissingPairing { piece: String, degree: i64 },
    #[error("ShapeError: d1 ∘ d1 ≠ 0 in the weight-{w} complex of H^{m}")]
    NotAComplex { m: i64, w: i64 },
    #[error("HodgeTypeMismatch: d1 mixes Hodge types in the weight-{w} complex of H^{m}")]
    HodgeTypeMismatch { m: i64, w: i64 },
    #[error("NotACocycle: representative is not in ker(d1) for weight {w}")]
    NotACocycle { w: i64 },
    #[error("LiftError: N does not preserve cocycles or coboundaries on Gr_{w} H^{m}")]
    Lift { m: i64, w: i64 },
    #[error("HypothesisFailure: {0}")]
    HypothesisFailure(String),
    #[error("TwistError: pairing value carries residual twist {0}")]
    Twist(i32),
    #[error("Unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Nilpotent(#[from] NilpotentError),
}
