//! Inhomogeneous cochains on `SL2(Z)` with the presentation
//! `<S, U | S^4 = U^6 = 1, S^2 = U^3>`, `U = ST`, and the two-term
//! Chevalley–Eilenberg complex of the Lie algebra at the cusp.

mod cochain;
mod gamma;
mod lie;
mod solve;

pub use cochain::{Cochain, CochainFn};
pub use gamma::{word_decompose, GammaElement, Letter, Word};
pub use lie::{lie_coboundary, lie_cohomology, restrict_to_lie, LieCochain, LieCohomology};
pub use solve::{check_two_cocycle, cocycle_space, relation_matrix, sample_elements, solve_delta_h, CocycleSpace};

use exact_core::PeriodScalar;
use sl2_modules::ModuleError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CochainError {
    #[error("not unimodular: det = {0}")]
    NotUnimodular(i64),
    #[error("not extendable")]
    NotExtendable,
    #[error("not a cocycle")]
    NotACocycle,
    #[error("no solution")]
    NoSolution,
    #[error("solution is not rational")]
    NotRational,
    #[error("expected {expected} arguments, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("unbound placeholder {0}")]
    UnboundPlaceholder(String),
    #[error("cochain has no coefficient context")]
    NoSeed,
    #[error("value unavailable: {0}")]
    Unavailable(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// `{"S": .., "U": .., "correction": formula or null}` for generated cochains.
pub fn cocycle_to_json(c: &Cochain<PeriodScalar>) -> Option<serde_json::Value> {
    let (s, u) = c.generators()?;
    Some(serde_json::json!({
        "S": s,
        "U": u,
        "correction": c.correction().map(|z| z.describe()),
    }))
}
