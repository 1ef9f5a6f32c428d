//! Level-one modular forms data and the cocycle pipelines built on it:
//! Eisenstein cocycles `Z_{2k}`, their cup products in the cone, restriction
//! to the cusp, and projections of `H^1` classes.
//!
//! Cocycles are labelled by weight: `Z_{2k}` lives in `S^{2k-2}H` and carries
//! `ζ(2k-1)`.

mod cocycle;
mod cup;
mod infinity;
mod projections;
mod qexp;

pub use cocycle::{restricted_integral_value, EisensteinCocycle};
pub use cup::{cup_g, external_cup, CupG, ExternalCup};
pub use infinity::{compare_scalar, compare_theorem, cup_infinity, eis_projection_partial, class_json, CompareReport, CupInfinity};
pub use projections::{h1_projections, H1Coordinates, PeriodCocycle};
pub use qexp::{cusp_basis, delta, dim_s, eisenstein_q, normalized_eisenstein, sigma, QExpansion};

use deligne_cone::ConeError;
use group_cochains::CochainError;
use sl2_modules::ModuleError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EisError {
    #[error("odd or small weight: {0}")]
    OddOrSmallWeight(u32),
    #[error("relation check failed")]
    RelationCheckFailed,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("ill-conditioned basis")]
    IllConditioned,
    #[error("mismatch: lhs {lhs}, rhs {rhs}")]
    Mismatch { lhs: String, rhs: String },
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}
