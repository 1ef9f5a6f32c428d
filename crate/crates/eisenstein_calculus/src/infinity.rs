use deligne_cone::{cup_t, CochainTheory, DeligneTriple, ExtClass, LieTheory};
use exact_core::{bernoulli, binomial, factorial, format_rational, q, PeriodScalar, Rational};
use group_cochains::restrict_to_lie;
use serde_json::{json, Value};
use sl2_modules::{clebsch_projection_p_r, d_embed, mod_im_n, partial_op, Basis, ImNClass, ModuleElement, ModuleSpec};

use crate::{external_cup, EisError, EisensteinCocycle};

type P = PeriodScalar;
type L = LieTheory<P>;
type Elem = ModuleElement<P>;

fn check_nm(n: u32, m: u32) -> Result<(), EisError> {
    if n == 0 || m < 2 {
        return Err(EisError::Precondition("n > 0, m > 1".into()));
    }
    Ok(())
}

fn fact(n: u32) -> Rational {
    Rational::from(factorial(n))
}

/// `Z^∞_{2n+2m} ∪_0 Z^∞_{2m} = [C; 0, 0]` in the Lie cone.
#[derive(Clone, Debug)]
pub struct CupInfinity {
    pub n: u32,
    pub m: u32,
    pub product: DeligneTriple<L>,
    pub c: Elem,
    /// The two-term closed form of `C`, built directly from the formula.
    pub c_display: Elem,
    /// `-((2m-2)!/2)(B_{2n+2m}/(4n+4m)) ζ(2m-1) w^{2n+2m-2} ⊗ a^{2m-2}`.
    pub c_prime: Elem,
    /// `(r, class of p_r(C))` for `0 ≤ r ≤ 2m-2`.
    pub components: Vec<(u32, ExtClass)>,
}

pub fn cup_infinity(n: u32, m: u32) -> Result<CupInfinity, EisError> {
    check_nm(n, m)?;
    let big = EisensteinCocycle::build(2 * n + 2 * m, None)?;
    let small = EisensteinCocycle::build(2 * m, None)?;
    let product = cup_t(&big.lie_triple()?, &small.lie_triple()?, &q(0, 1));
    if !L::is_zero(&product.w) || !L::is_zero(&product.z) {
        return Err(EisError::Precondition("product not of the form [C; 0, 0]".into()));
    }
    let c = product.c.clone().expect("degree 2").value;

    let (m1, m2) = (2 * n + 2 * m - 2, 2 * m - 2);
    let spec = ModuleSpec::tensor2(m1, m2);
    let first = P::zeta(m1 + 1).scale(&(fact(m1) / 2 * bernoulli(2 * m as usize) / Rational::from(4 * m)));
    let c_prime = Elem::dr_monomial(
        spec.clone(),
        &[0, m2],
        P::zeta(2 * m - 1).scale(&(-fact(m2) / 2 * bernoulli((2 * n + 2 * m) as usize) / Rational::from(4 * (n + m)))),
    );
    let c_display = Elem::dr_monomial(spec, &[m1, 0], first).add(&c_prime);

    let mut components = Vec::new();
    for r in 0..=m2 {
        let p = clebsch_projection_p_r(&c, r)?;
        let cls = mod_im_n(&p);
        components.push((r, ExtClass::new(2 * m as i32 - 1, cls.spec.clone(), cls.dr_coords)));
    }
    Ok(CupInfinity { n, m, product, c, c_display, c_prime, components })
}

/// `∂^{2m-2}` of the class of `G^∞_{2n+2m} ∪ G^∞_{2m}`, a multiple of `w^{2n}`
/// modulo `(2πi)^{2m-1} Q`.
pub fn eis_projection_partial(n: u32, m: u32) -> Result<ExtClass, EisError> {
    let cup = cup_infinity(n, m)?;
    let mut v = cup.c;
    for _ in 0..2 * m - 2 {
        v = partial_op(&v)?;
    }
    let cls = mod_im_n(&v);
    Ok(ExtClass::new(2 * m as i32 - 1, cls.spec.clone(), cls.dr_coords))
}

/// `((2m-2)!/2) · C(2n+2,2)/C(2n+2m,2) · B_{2n+2m}/B_{2n+2}`.
pub fn compare_scalar(n: u32, m: u32) -> Rational {
    let (n, m) = (n as i64, m as i64);
    fact(2 * m as u32 - 2) / 2 * Rational::from(binomial(2 * n + 2, 2)) / Rational::from(binomial(2 * n + 2 * m, 2))
        * bernoulli((2 * n + 2 * m) as usize)
        / bernoulli((2 * n + 2) as usize)
}

#[derive(Clone, Debug)]
pub struct CompareReport {
    pub n: u32,
    pub m: u32,
    pub scalar: Rational,
    pub lhs: ImNClass<P>,
    pub rhs: ImNClass<P>,
    /// Equality modulo `im N` and `(2πi)^{2m-1} Q`.
    pub equal: bool,
    /// Equality of the canonical representatives before the lattice reduction.
    pub equal_exact: bool,
}

/// De Rham class coordinates as `[{"mono": [..], "coef": ..}]`.
pub fn class_json(c: &ImNClass<P>) -> Value {
    Value::Array(
        c.terms()
            .into_iter()
            .map(|(mono, coef)| json!({"mono": mono, "coef": serde_json::to_value(&coef).expect("serializable")}))
            .collect(),
    )
}

impl CompareReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "m": self.m,
            "scalar": format_rational(&self.scalar),
            "lhs": class_json(&self.lhs),
            "rhs": class_json(&self.rhs),
            "equal": self.equal,
            "equal_exact": self.equal_exact,
        })
    }
}

fn reduced(c: &ImNClass<P>, tate: i32) -> Vec<P> {
    c.dr_coords.iter().map(|x| x.reduce_mod_tate(tate)).collect()
}

/// Both sides of the comparison at the cusp, computed independently: the Lie
/// cup product on the left, the external cup restricted to `T` and embedded
/// by `D^{2m-2}` on the right.
pub fn compare_theorem(n: u32, m: u32) -> Result<CompareReport, EisError> {
    check_nm(n, m)?;
    let lhs = mod_im_n(&cup_infinity(n, m)?.c);

    let z = EisensteinCocycle::build(2 * n + 2, None)?;
    let ext = external_cup(m, &z)?;
    let restricted = restrict_to_lie(&ext.top, Basis::DeRham)?.value;
    let scalar = compare_scalar(n, m);
    let rhs = mod_im_n(&d_embed(&restricted, 2 * m - 2)?.scale(&scalar));

    let tate = 2 * m as i32 - 1;
    let equal_exact = lhs.dr_coords == rhs.dr_coords;
    let equal = reduced(&lhs, tate) == reduced(&rhs, tate);
    let report = CompareReport { n, m, scalar, lhs, rhs, equal, equal_exact };
    if !report.equal {
        return Err(EisError::Mismatch { lhs: class_json(&report.lhs).to_string(), rhs: class_json(&report.rhs).to_string() });
    }
    Ok(report)
}
