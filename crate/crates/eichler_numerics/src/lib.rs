//! High-precision iterated Eichler integrals of level-one modular forms, the
//! period polynomials and completed L-values of cusp forms, and the
//! reconstruction of the rational cocycle `e0` from numerics.
//!
//! Everything here is pure: precision is an argument, never global state.

mod brown;
mod e0;
mod integrals;
mod poly;
mod symbols;

pub use brown::{brown_class, declared_scalar, verify_brown_cusp, BrownReport};
pub use e0::{derive_e0, E0Certificate, E0Derivation};
pub use integrals::{
    base_point, double_primitive, eichler_integral_1, eichler_integral_2, eichler_primitive, mobius, omega, Ctx,
    DoublePrimitive, EichlerPrimitive, RegularizedIntegral,
};
pub use poly::ExpPoly;
pub use symbols::{completed_l, modular_symbol, period_relation_residual, ModularSymbol};

use eisenstein_calculus::EisError;
use group_cochains::CochainError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumError {
    #[error("insufficient truncation")]
    InsufficientTruncation,
    #[error("not cuspidal")]
    NotCuspidal,
    #[error("rationalization unstable")]
    RationalizationUnstable,
    #[error("relation check failed")]
    RelationCheckFailed,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Eisenstein(#[from] EisError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}
