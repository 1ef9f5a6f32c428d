use exact_core::{factorial, rationalize, zeta_value, Complex, Float, Integer, Rational};
use eisenstein_calculus::{eisenstein_q, EisError, EisensteinCocycle};
use serde_json::{json, Value};
use sl2_modules::{Mat2, ModuleElement, ModuleSpec};

use crate::integrals::{eichler_primitive, Ctx};
use crate::symbols::complex_max;
use crate::NumError;

type N = ModuleElement<Complex>;

#[derive(Clone, Debug)]
pub struct E0Certificate {
    pub bits: u32,
    /// Same rationals at `2·bits`.
    pub stable: bool,
    pub relations_exact: bool,
    /// `e0(T)` rationalized from the integral equals `-(B_{2k}/4k) b^{2k-2}`.
    pub e0_t_exact: bool,
    /// `log2` of the largest coordinate of `-δA + I - x^{2k-1} e0` on `S` and
    /// `T`, relative to the largest coordinate of `I`.
    pub residual_log2: f64,
    pub max_denominator: Integer,
}

impl E0Certificate {
    pub fn passes(&self) -> bool {
        self.stable && self.relations_exact && self.e0_t_exact && self.residual_log2 < -(self.bits as f64 - 32.0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "bits": self.bits,
            "stable": self.stable,
            "relations_exact": self.relations_exact,
            "e0_T_exact": self.e0_t_exact,
            "residual_log2": self.residual_log2,
            "max_denominator": self.max_denominator.to_string(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct E0Derivation {
    pub e0_s: Vec<Rational>,
    pub cocycle: EisensteinCocycle,
    pub certificate: E0Certificate,
}

struct Raw {
    e0_s: N,
    e0_t: N,
    i_s: N,
    i_t: N,
    a: N,
}

fn raw(weight: u32, bits: u32) -> Result<Raw, NumError> {
    let m = weight - 2;
    let ctx = Ctx::new(bits, 1.0, weight);
    let g = eisenstein_q(weight, ctx.order as usize)?;
    let p = eichler_primitive(&g, &ctx)?;
    let spec = ModuleSpec::sym(m);
    let mut a = N::zeros(spec.clone(), &Complex::zero(ctx.wp));
    a.coords[m as usize] =
        Complex::from_real(zeta_value(m + 1, ctx.wp)).mul_rational(&(-Rational::from(factorial(m)) / Rational::from(2)));
    let i_s = p.integral(&Mat2::S);
    let i_t = p.integral(&Mat2::T);
    let xinv = ctx.x.powi(-(m as i32 + 1));
    let e0_s = i_s.sub(&a.act_unimodular(&Mat2::S).sub(&a)).mul_coef(&xinv);
    let e0_t = i_t.mul_coef(&xinv);
    Ok(Raw { e0_s, e0_t, i_s, i_t, a })
}

fn rationalize_all(v: &N, bits: u32) -> Option<Vec<Rational>> {
    let prec = v.coords[0].prec();
    let max_den = Integer::from(Integer::u_pow_u(2, bits / 4));
    let tol = Float::with_val(prec, Float::i_exp(1, -(bits as i32 - 32)));
    v.coords
        .iter()
        .map(|c| {
            let scale = Float::with_val(prec, c.abs()).max(&Float::with_val(prec, 1));
            if Float::with_val(prec, c.im.abs_ref()) > Float::with_val(prec, &tol * &scale) {
                return None;
            }
            rationalize(&c.re, &max_den, &Float::with_val(prec, &tol * &scale))
        })
        .collect()
}

/// `e0(S) = x^{-(2k-1)} (I_G(S) - (S-1)A)` rationalized, with the checks
/// that make the rationals trustworthy.
pub fn derive_e0(weight: u32, bits: u32) -> Result<E0Derivation, NumError> {
    if bits < 128 {
        return Err(NumError::Precondition("precision ≥ 128 bits".into()));
    }
    if weight < 4 || weight % 2 == 1 {
        return Err(EisError::OddOrSmallWeight(weight).into());
    }
    let lo = raw(weight, bits)?;
    let e0_s = rationalize_all(&lo.e0_s, bits).ok_or(NumError::RationalizationUnstable)?;
    let hi = raw(weight, 2 * bits)?;
    let stable = rationalize_all(&hi.e0_s, 2 * bits).as_ref() == Some(&e0_s);
    if !stable {
        return Err(NumError::RationalizationUnstable);
    }
    let cocycle = match EisensteinCocycle::build(weight, Some(&e0_s)) {
        Ok(c) => c,
        Err(EisError::RelationCheckFailed) => return Err(NumError::RelationCheckFailed),
        Err(e) => return Err(e.into()),
    };
    let e0_t_exact = rationalize_all(&lo.e0_t, bits).map(|v| ModuleElement::from_rationals(cocycle.spec(), &v)) == Some(cocycle.e0_t.clone());

    let prec = lo.i_s.coords[0].prec();
    let x = Complex::two_pi_i(prec).powi(weight as i32 - 1);
    let mut worst = Float::with_val(prec, 0);
    for (g, i, e) in [(Mat2::S, &lo.i_s, cocycle.e0_s.clone().unwrap()), (Mat2::T, &lo.i_t, cocycle.e0_t.clone())] {
        let da = lo.a.act_unimodular(&g).sub(&lo.a);
        let res = i.sub(&da).sub(&e.numeric(prec).mul_coef(&x));
        let r = complex_max(&res) / complex_max(i);
        if r > worst {
            worst = r;
        }
    }
    let residual_log2 = if worst == 0 { -(prec as f64) } else { worst.to_f64().log2() };
    let max_denominator = e0_s.iter().map(|q| q.denom().clone()).max().unwrap_or_else(|| Integer::from(1));
    let certificate = E0Certificate { bits, stable, relations_exact: true, e0_t_exact, residual_log2, max_denominator };
    Ok(E0Derivation { e0_s, cocycle, certificate })
}
