//! The mapping cone of a de Rham and a Betti cochain complex: triples
//! `[c; w, z]`, the cone differential, the products `∪_t` and extraction of
//! extension classes, over either the group of the modular curve or the Lie
//! algebra at the cusp.

mod ext;
mod theory;
mod triple;

pub use ext::{ext_class, real_reduce, ExtClass};
pub use theory::{sample_tuples, CochainTheory, GroupTheory, LieForm, LieTheory};
pub use triple::{cone_differential, cup_homotopy, cup_t, DeligneTriple, Flags};

use group_cochains::CochainError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConeError {
    #[error("w,z not reduced to zero")]
    NotReduced,
    #[error("non-real correction discarded")]
    NonRealCorrection,
    #[error("no class coordinates in degree {0}")]
    Degree(usize),
    #[error("malformed triple: {0}")]
    Shape(String),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}
