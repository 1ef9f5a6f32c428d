//! Symmetric powers `S^m H(r)` of the standard SL2 representation and their
//! two-factor tensor products, with Betti basis `a, b` and de Rham basis
//! `a, w = -x b`.
//!
//! Storage is always in Betti monomials `a^i b^(m-i)`, indexed by `i` (the
//! `a`-degree); tensor monomials are indexed lexicographically with the left
//! factor most significant.

mod element;
mod filtration;
mod matrix;
mod operators;
mod spec;

pub use element::{Basis, ModuleElement};
pub use filtration::{weight_filtration, Filtration};
pub use matrix::Mat2;
pub use operators::{
    action_matrix, binom_sum_f, clebsch_projection_p_r, d_embed, d_embed_matrix, mod_im_n, mult_matrix,
    nilpotent_n, nilpotent_matrix, partial_matrix, partial_op, ImNClass,
};
pub use spec::ModuleSpec;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("not unimodular: det = {0}")]
    NotUnimodular(i64),
    #[error("not nilpotent")]
    NotNilpotent,
    #[error("degree too small")]
    DegreeTooSmall,
    #[error("r out of range")]
    ROutOfRange,
    #[error("module mismatch: {0}")]
    SpecMismatch(String),
}
