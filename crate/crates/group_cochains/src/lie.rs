use exact_core::{Coef, Rational};
use sl2_modules::{mod_im_n, nilpotent_matrix, nilpotent_n, Basis, ImNClass, Mat2, ModuleElement, ModuleSpec};

use crate::cochain::Cochain;
use crate::CochainError;

/// A cochain of the one-dimensional Lie algebra at the cusp: a vector in
/// degree 0, the coefficient of `dλ` in degree 1.
#[derive(Clone, Debug, PartialEq)]
pub struct LieCochain<C: Coef> {
    pub degree: usize,
    pub side: Basis,
    pub value: ModuleElement<C>,
}

impl<C: Coef> LieCochain<C> {
    pub fn new(degree: usize, side: Basis, value: ModuleElement<C>) -> Self {
        assert!(degree <= 1, "the complex has length one");
        LieCochain { degree, side, value }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Class of a 1-cochain in `V / N V`.
    pub fn class(&self) -> ImNClass<C> {
        assert_eq!(self.degree, 1);
        mod_im_n(&self.value)
    }
}

/// `c(T)` against `dλ_B`, or `c(T)/x` against `dλ_DR = x dλ_B`.
pub fn restrict_to_lie<C: Coef>(c: &Cochain<C>, side: Basis) -> Result<LieCochain<C>, CochainError> {
    if c.degree != 1 {
        return Err(CochainError::DegreeMismatch { expected: 1, got: c.degree });
    }
    let t = c.evaluate(&[Mat2::T])?;
    let value = match side {
        Basis::Betti => t,
        Basis::DeRham => t.mul_x_pow(-1),
    };
    Ok(LieCochain::new(1, side, value))
}

/// `v -> N v dλ`, with `N_B` or `N_DR` to match the side.
pub fn lie_coboundary<C: Coef>(v: &LieCochain<C>) -> LieCochain<C> {
    assert_eq!(v.degree, 0, "only degree 0 has a nonzero differential");
    LieCochain::new(1, v.side, nilpotent_n(&v.value, v.side))
}

/// `H^0 = V^N` (Betti coordinates) and `H^1 = (V / NV)(-1)`, the latter
/// given by the complement monomials [`mod_im_n`] reduces onto.
#[derive(Clone, Debug)]
pub struct LieCohomology {
    pub h0: Vec<Vec<Rational>>,
    pub h1_spec: ModuleSpec,
    pub h1: Vec<Vec<u32>>,
}

pub fn lie_cohomology(spec: &ModuleSpec) -> LieCohomology {
    let n = nilpotent_matrix(spec, Basis::Betti);
    let h0 = if spec.dim() == 0 { vec![] } else { n.kernel() };
    let probe = ModuleElement::zeros(spec.clone(), &exact_core::PeriodScalar::zero());
    let support = mod_im_n(&probe).support;
    let rank = if n.is_zero() { 0 } else { n.rank() };
    debug_assert_eq!(support.len(), spec.dim() - rank);
    LieCohomology { h0, h1_spec: spec.twisted_by(-1), h1: support.iter().map(|&i| spec.mono(i)).collect() }
}
