use deligne_cone::{DeligneTriple, GroupTheory, LieForm, LieTheory};
use exact_core::{bernoulli, factorial, PeriodScalar, Rational};
use group_cochains::{restrict_to_lie, Cochain, CochainError};
use sl2_modules::{Basis, Mat2, ModuleElement, ModuleSpec};

use crate::EisError;

type P = PeriodScalar;
type Elem = ModuleElement<P>;

/// The Eisenstein cocycle `Z_{2k} = [A; I_G, x^{2k-1} e0]` in `S^{2k-2}H`.
///
/// `e0` is known exactly on `T`. Its value on `S` is an input (it comes out
/// of the numerics); without it `e0` is only defined on `Γ∞ = <T>`, which is
/// all that restriction to the cusp needs.
#[derive(Clone, Debug)]
pub struct EisensteinCocycle {
    pub weight: u32,
    pub a: Elem,
    pub e0_t: Elem,
    pub e0_s: Option<Elem>,
    pub e0: Cochain<P>,
}

/// `-B_{2k}/(2·2k)`.
fn g_constant(weight: u32) -> Rational {
    -bernoulli(weight as usize) / Rational::from(2 * weight)
}

/// `I_G(T)/x` for the regularized Eichler integral of `G_{2k}`:
/// `-(B_{2k}/4k) w^{2k-2}`.
pub fn restricted_integral_value(weight: u32) -> Elem {
    let m = weight - 2;
    Elem::dr_monomial(ModuleSpec::sym(m), &[0], P::rational(g_constant(weight)))
}

/// `e0` on `T^n`; anything outside `<T>` is unavailable.
fn cusp_only_e0(weight: u32, e0_t: Elem) -> Cochain<P> {
    let spec = ModuleSpec::sym(weight - 2);
    Cochain::from_fn(1, spec.clone(), &P::zero(), move |args: &[Mat2]| {
        let g = args[0];
        if g.c != 0 || g.a != 1 || g.d != 1 {
            return Err(CochainError::Unavailable(format!("e0 on {g:?} needs its value on S")));
        }
        let mut acc = Elem::zero(spec.clone());
        if g.b >= 0 {
            for i in 0..g.b {
                acc = acc.add(&e0_t.act_unimodular(&Mat2::T.pow(i)));
            }
        } else {
            for i in 1..=-g.b {
                acc = acc.sub(&e0_t.act_unimodular(&Mat2::T.pow(-i)));
            }
        }
        Ok(acc)
    })
}

impl EisensteinCocycle {
    /// Assemble `Z_{2k}`. With `e0_s` the relations of `SL2(Z)` are checked
    /// exactly for `(e0(S), e0(U) = e0(S) + S e0(T))`.
    pub fn build(weight: u32, e0_s: Option<&[Rational]>) -> Result<Self, EisError> {
        if weight < 4 || weight % 2 == 1 {
            return Err(EisError::OddOrSmallWeight(weight));
        }
        let m = weight - 2;
        let spec = ModuleSpec::sym(m);
        let zeta = P::zeta(m + 1).scale(&(-Rational::from(factorial(m)) / Rational::from(2)));
        let a = Elem::betti_monomial(spec.clone(), &[m], zeta);
        let e0_t = Elem::betti_monomial(spec.clone(), &[0], P::rational(g_constant(weight)));
        let (e0_s, e0) = match e0_s {
            None => (None, cusp_only_e0(weight, e0_t.clone())),
            Some(v) => {
                if v.len() != spec.dim() {
                    return Err(EisError::Precondition(format!("e0(S) needs {} coordinates", spec.dim())));
                }
                let s = Elem::from_rationals(spec.clone(), v);
                let u = s.add(&e0_t.act_unimodular(&Mat2::S));
                let e0 = Cochain::cocycle(s.clone(), u);
                if e0.relation_residuals()?.iter().any(|r| !r.is_zero()) || e0.evaluate(&[Mat2::T])? != e0_t {
                    return Err(EisError::RelationCheckFailed);
                }
                (Some(s), e0)
            }
        };
        Ok(EisensteinCocycle { weight, a, e0_t, e0_s, e0 })
    }

    /// `m = 2k - 2`, the symmetric power carrying the cocycle.
    pub fn m(&self) -> u32 {
        self.weight - 2
    }

    pub fn spec(&self) -> ModuleSpec {
        ModuleSpec::sym(self.m())
    }

    pub fn has_full_e0(&self) -> bool {
        self.e0_s.is_some()
    }

    pub fn integral_name(&self) -> String {
        format!("I[G{}]", self.weight)
    }

    /// `x^{2k-1} e0`.
    pub fn z(&self) -> Cochain<P> {
        self.e0.scale(P::x_pow(self.m() as i32 + 1))
    }

    /// The group triple; the de Rham slot is a placeholder for the Eichler
    /// integral.
    pub fn triple(&self) -> DeligneTriple<GroupTheory<P>> {
        let w = Cochain::placeholder(&self.integral_name(), 1, self.spec(), &P::zero());
        DeligneTriple::new(Some(Cochain::constant(self.a.clone())), w, self.z()).expect("well-formed triple")
    }

    /// `δA + x^{2k-1} e0`: what the cocycle condition forces the Eichler
    /// integral to be. Used to bind the placeholder in exact identities.
    pub fn integral_model(&self) -> Cochain<P> {
        Cochain::constant(self.a.clone()).coboundary().add(&self.z())
    }

    /// `Z^∞_{2k}`: restriction to the Lie algebra at the cusp, de Rham side.
    pub fn lie_triple(&self) -> Result<DeligneTriple<LieTheory<P>>, EisError> {
        let z = restrict_to_lie(&self.z(), Basis::DeRham)?.value;
        let w = restricted_integral_value(self.weight);
        Ok(DeligneTriple::new(Some(LieForm::new(0, self.a.clone())), LieForm::new(1, w), LieForm::new(1, z))?)
    }
}
