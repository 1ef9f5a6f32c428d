use deligne_cone::{cone_differential, cup_t, CochainTheory, DeligneTriple, ExtClass, GroupTheory};
use exact_core::{q, PeriodScalar, Rational};
use group_cochains::{solve_delta_h, Cochain};
use sl2_modules::{Mat2, ModuleElement, ModuleSpec};

use crate::{EisError, EisensteinCocycle};

type P = PeriodScalar;
type G = GroupTheory<P>;
type Elem = ModuleElement<P>;

/// `[ζ(2m-1); 0, 0] ∪_0 Z_{2n+2}` and its two projections.
#[derive(Clone, Debug)]
pub struct ExternalCup {
    pub m: u32,
    pub n: u32,
    pub product: DeligneTriple<G>,
    /// The `c` slot, `x^{2n+1} ζ(2m-1) e0`.
    pub top: Cochain<P>,
    /// Coefficient of `e0` in `top`, read off at `T`.
    pub lambda: P,
    pub eisenstein: ExtClass,
    /// `top - λ e0` modulo coboundaries; needs `e0` on all of `SL2(Z)`.
    pub cusp: Option<ExtClass>,
}

pub fn external_cup(m: u32, z: &EisensteinCocycle) -> Result<ExternalCup, EisError> {
    if m < 2 {
        return Err(EisError::Precondition("m ≥ 2".into()));
    }
    let n = z.m() / 2;
    let zeta = Cochain::constant(Elem::betti_monomial(ModuleSpec::trivial(), &[], P::zeta(2 * m - 1)));
    let product = cup_t(&DeligneTriple::<G>::homotopy_only(zeta), &z.triple(), &q(0, 1));
    if !G::is_zero(&product.w) || !G::is_zero(&product.z) {
        return Err(EisError::Precondition("product not of the form [E; 0, 0]".into()));
    }
    let top = product.c.clone().expect("degree 2");
    // im(T - 1) is spanned by monomials with positive a-degree, so the b^m
    // coordinate at T sees only the Eisenstein part.
    let at_t = top.evaluate(&[Mat2::T])?;
    let e0_b = z.e0_t.coords[0].as_rational().expect("rational e0");
    let lambda = at_t.coords[0].scale(&(Rational::from(1) / e0_b));
    let tate = 2 * m as i32 - 1;
    let eisenstein = ExtClass::scalar(tate, lambda.shift(-(z.m() as i32 + 1)));
    let cusp = if z.has_full_e0() {
        let rest = top.sub(&z.e0.scale(lambda.clone()));
        let (spec, coords) = G::class_coords(&rest)?;
        Some(ExtClass::new(tate + z.m() as i32 + 1, spec, coords))
    } else {
        None
    };
    Ok(ExternalCup { m, n, product, top, lambda, eisenstein, cusp })
}

/// `Z_{2j+2} ∪_{1/2} Z_{2k+2}` corrected to the shape `[E; 0, 0]`.
#[derive(Clone, Debug)]
pub struct CupG {
    pub j: u32,
    pub k: u32,
    pub product: DeligneTriple<G>,
    /// `D = [0; I_{G|G}, x^{2j+2k+2} h]`.
    pub correction: DeligneTriple<G>,
    pub corrected: DeligneTriple<G>,
    pub e: Cochain<P>,
    /// `½(A₁ ∪ δA₂ - δA₁ ∪ A₂)`.
    pub c: Cochain<P>,
    /// Rational solution of `e0 ∪ e0 + δh = 0`.
    pub h: Cochain<P>,
    /// `x^{2k+1} A₁ ∪ e0₂ - x^{2j+1} e0₁ ∪ A₂`.
    pub exact_part: Cochain<P>,
    /// `I_{G|G} + exact_part`; its imaginary part represents the class.
    pub real_representative: Cochain<P>,
}

pub const DOUBLE_INTEGRAL: &str = "I[G|G]";

pub fn cup_g(z1: &EisensteinCocycle, z2: &EisensteinCocycle) -> Result<CupG, EisError> {
    let (j, k) = (z1.m() / 2, z2.m() / 2);
    if k == 0 || j < k {
        return Err(EisError::Precondition("j ≥ k > 0".into()));
    }
    if !z1.has_full_e0() || !z2.has_full_e0() {
        return Err(EisError::Precondition("cup_G needs e0 on all of SL2(Z)".into()));
    }
    let product = cup_t(&z1.triple(), &z2.triple(), &q(1, 2));
    let spec = z1.spec().tensor(&z2.spec());
    let big_n = 2 * (j + k) as i32 + 2;

    let h = solve_delta_h(&z1.e0.cup(&z2.e0), true)?;
    let i12 = Cochain::placeholder(DOUBLE_INTEGRAL, 1, spec.clone(), &P::zero());
    let correction =
        DeligneTriple::<G>::new(Some(Cochain::zero(0, spec.clone(), &P::zero())), i12.clone(), h.scale(P::x_pow(big_n)))?;
    let corrected = product.add(&cone_differential(&correction));
    let e = corrected.c.clone().expect("degree 2");

    let a1 = Cochain::constant(z1.a.clone());
    let a2 = Cochain::constant(z2.a.clone());
    let c = Cochain::linear_combination(vec![
        (P::rational(q(1, 2)), a1.cup(&a2.coboundary())),
        (P::rational(q(-1, 2)), a1.coboundary().cup(&a2)),
    ]);
    let exact_part = Cochain::linear_combination(vec![
        (P::x_pow(2 * k as i32 + 1), a1.cup(&z2.e0)),
        (-P::x_pow(2 * j as i32 + 1), z1.e0.cup(&a2)),
    ]);
    let real_representative = i12.add(&exact_part);
    Ok(CupG { j, k, product, correction, corrected, e, c, h, exact_part, real_representative })
}

impl CupG {
    /// `E` with the single integrals bound to their models and `I_{G|G}` to
    /// zero, against `exact_part + C - x^N h` built independently.
    pub fn check_expansion(&self, z1: &EisensteinCocycle, z2: &EisensteinCocycle) -> bool {
        let spec = z1.spec().tensor(&z2.spec());
        let bound = self
            .e
            .bind(&z1.integral_name(), &z1.integral_model())
            .bind(&z2.integral_name(), &z2.integral_model())
            .bind(DOUBLE_INTEGRAL, &Cochain::zero(1, spec, &P::zero()));
        let big_n = 2 * (self.j + self.k) as i32 + 2;
        let formula = self.exact_part.add(&self.c).sub(&self.h.scale(P::x_pow(big_n)));
        G::is_zero(&bound.sub(&formula))
    }

    /// The bottom-right slot of the corrected triple vanishes.
    pub fn z_slot_vanishes(&self) -> bool {
        G::is_zero(&self.corrected.z)
    }

    pub fn c_is_real(&self) -> bool {
        G::is_zero(&self.c.imaginary_part())
    }
}
