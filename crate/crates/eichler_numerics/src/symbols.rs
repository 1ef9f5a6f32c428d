use exact_core::{pi, Complex, Float, Rational};
use eisenstein_calculus::QExpansion;
use sl2_modules::{Mat2, ModuleElement};

use crate::integrals::{eichler_primitive, Ctx};
use crate::NumError;

type N = ModuleElement<Complex>;

/// `r_f = ∫_0^{i∞} ω_f = r_f^+ + i r_f^-`, with `r^+` on even and `r^-` on
/// odd `a`-degrees.
#[derive(Clone, Debug)]
pub struct ModularSymbol {
    pub r: N,
    pub plus: N,
    pub minus: N,
}

pub fn modular_symbol(f: &QExpansion, bits: u32) -> Result<ModularSymbol, NumError> {
    if !f.is_cuspidal() {
        return Err(NumError::NotCuspidal);
    }
    let ctx = Ctx::new(bits, 1.0, f.weight);
    let ctx = Ctx { order: ctx.order.min(f.order() as u32), ..ctx };
    let p = eichler_primitive(f, &ctx)?;
    // I(S) = ∫_{i∞}^{0} ω
    let r = p.integral(&Mat2::S).neg();
    let zero = Complex::zero(ctx.wp);
    let plus = N::new(r.spec.clone(), r.coords.iter().enumerate().map(|(i, c)| if i % 2 == 0 { c.clone() } else { zero.clone() }).collect());
    let minus = N::new(
        r.spec.clone(),
        r.coords.iter().enumerate().map(|(i, c)| if i % 2 == 1 { c.mul_i().mul_rational(&Rational::from(-1)) } else { zero.clone() }).collect(),
    );
    Ok(ModularSymbol { r, plus, minus })
}

/// Largest coordinate of `(1+S)r` and `(1+U+U^2)r`, relative to `r`.
pub fn period_relation_residual(r: &N) -> Float {
    let s = r.add(&r.act_unimodular(&Mat2::S));
    let u1 = r.act_unimodular(&Mat2::U);
    let u = r.add(&u1).add(&u1.act_unimodular(&Mat2::U));
    let prec = r.coords[0].prec();
    let max = |v: &N| v.coords.iter().map(|c| c.abs()).fold(Float::with_val(prec, 0), |m, x| if x > m { x } else { m });
    let scale = max(r);
    let top = max(&s).max(&max(&u));
    if scale == 0 {
        top
    } else {
        top / scale
    }
}

/// `Λ(f, s) = (2π)^{-s} Γ(s) L(f, s) = ∫_0^∞ f(it) t^{s-1} dt`, split at
/// `t = 1` and folded with `f(i/t) = (it)^k f(it)`:
/// `Σ a_n [Γ(s, 2πn)/(2πn)^s + i^k Γ(k-s, 2πn)/(2πn)^{k-s}]`.
pub fn completed_l(f: &QExpansion, s: f64, bits: u32) -> Result<Float, NumError> {
    if !f.is_cuspidal() {
        return Err(NumError::NotCuspidal);
    }
    let ctx = Ctx::new(bits, 1.0, f.weight);
    if (f.order() as u32) < ctx.order {
        return Err(NumError::InsufficientTruncation);
    }
    let wp = ctx.wp;
    let k = f.weight as f64;
    let sign = if f.weight.is_multiple_of(4) { 1 } else { -1 };
    let two_pi = Float::with_val(wp, pi(wp) * 2);
    let s1 = Float::with_val(wp, s);
    let s2 = Float::with_val(wp, k - s);
    let mut acc = Float::with_val(wp, 0);
    for n in 1..=ctx.order {
        let a = f.coefficient(n as usize);
        if a == 0 {
            continue;
        }
        let c = Float::with_val(wp, &two_pi * n);
        let term = |e: &Float| -> Float {
            let g = Float::with_val(wp, e).gamma_inc(&c);
            let p = Float::with_val(wp, exact_core::rug::ops::Pow::pow(&c, e));
            g / p
        };
        let t = term(&s1) + term(&s2) * sign;
        acc += t * Float::with_val(wp, &a);
    }
    Ok(Float::with_val(bits, acc))
}

pub(crate) fn complex_max(v: &N) -> Float {
    let prec = v.coords[0].prec();
    v.coords.iter().map(|c| c.abs()).fold(Float::with_val(prec, 0), |m, x| if x > m { x } else { m })
}
