use exact_core::{factorial, solve_complex, zeta_value, Complex, Float, Rational, RationalMatrix, GUARD_BITS};
use eisenstein_calculus::QExpansion;
use sl2_modules::{action_matrix, Mat2, ModuleElement, ModuleSpec};

use crate::poly::ExpPoly;
use crate::NumError;

type N = ModuleElement<Complex>;

/// Working precision and q-expansion truncation for one computation.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub bits: u32,
    /// `bits + GUARD_BITS`; all intermediate values live here.
    pub wp: u32,
    pub order: u32,
    pub y_min: f64,
    pub x: Complex,
}

/// `log2` of a bound for `Σ_{n > order} n^growth e^{-2πny}`, with a few bits
/// of slack for the polynomial factors.
fn tail_log2(order: u32, growth: u32, y: f64, slack: f64) -> f64 {
    let n = order as f64 + 1.0;
    let geometric = -(1.0 - (-2.0 * std::f64::consts::PI * y).exp()).log2();
    growth as f64 * n.log2() - 2.0 * std::f64::consts::PI * n * y / std::f64::consts::LN_2 + geometric + slack
}

impl Ctx {
    /// The smallest truncation whose tail is below `2^-wp` for integrands with
    /// coefficients `O(n^growth)` at points with imaginary part `≥ y_min`.
    pub fn new(bits: u32, y_min: f64, growth: u32) -> Self {
        let wp = bits + GUARD_BITS;
        let slack = 3.0 * growth as f64 + 8.0;
        let mut order = 1;
        while tail_log2(order, growth, y_min, slack) > -(wp as f64) {
            order += 1;
        }
        Ctx { bits, wp, order, y_min, x: Complex::two_pi_i(wp) }
    }

    pub fn with_order(bits: u32, y_min: f64, order: u32) -> Self {
        let wp = bits + GUARD_BITS;
        Ctx { bits, wp, order, y_min, x: Complex::two_pi_i(wp) }
    }

    pub fn check(&self, growth: u32) -> Result<(), NumError> {
        let slack = 3.0 * growth as f64 + 8.0;
        if tail_log2(self.order, growth, self.y_min, slack) > -(self.wp as f64) {
            return Err(NumError::InsufficientTruncation);
        }
        Ok(())
    }

    pub fn c(&self, q: &Rational) -> Complex {
        Complex::from_rational(q, self.wp)
    }

    /// The tolerance `2^-(bits - 32)` used for numeric identities.
    pub fn tolerance(&self) -> Float {
        Float::with_val(self.wp, Float::i_exp(1, -(self.bits as i32 - 32)))
    }
}

/// `(aτ + b)/(cτ + d)`.
pub fn mobius(g: &Mat2, tau: &Complex) -> Complex {
    let prec = tau.prec();
    let r = |v: i64| Complex::from_rational(&Rational::from(v), prec);
    &(&(&r(g.a) * tau) + &r(g.b)) / &(&(&r(g.c) * tau) + &r(g.d))
}

/// A base point `τ` with `Im τ` and `Im γτ` both `1/|c|` (or `i` when
/// `c = 0`).
pub fn base_point(g: &Mat2, prec: u32) -> Complex {
    if g.c == 0 {
        return Complex::i(prec);
    }
    let c = Rational::from(g.c);
    Complex::from_rational(&(Rational::from(-g.d) / &c), prec).add_i(&(Rational::from(1) / c))
}

trait AddI {
    fn add_i(&self, q: &Rational) -> Complex;
}

impl AddI for Complex {
    fn add_i(&self, q: &Rational) -> Complex {
        let p = self.prec();
        Complex::new(self.re.clone(), Float::with_val(p, &self.im + q))
    }
}

/// `ω_f = x f(τ) (b - τa)^m (-x)^m dτ` in Betti coordinates, i.e. `x f(τ) w(τ)^m dτ`.
pub fn omega(f: &QExpansion, ctx: &Ctx) -> ExpPoly {
    let m = f.weight - 2;
    let dim = m as usize + 1;
    let xm = &(-&ctx.x).powi(m as i32) * &ctx.x;
    let mut out = ExpPoly::new(dim, ctx.wp);
    for n in 0..=ctx.order.min(f.order() as u32) {
        let c = f.coefficient(n as usize);
        if c == 0 {
            continue;
        }
        let cn = xm.mul_rational(&c);
        let mut p = vec![vec![Complex::zero(ctx.wp); dim]; dim];
        for i in 0..dim {
            let b = Rational::from(exact_core::binomial(m as i64, i as i64)) * if i % 2 == 0 { 1 } else { -1 };
            p[i][i] = cn.mul_rational(&b);
        }
        out.terms.insert(n, p);
    }
    out
}

/// The regularized primitive `F(τ) = ∫_{∂/∂q}^τ ω_f` of one form.
///
/// Toward `i∞` the `q^n` terms integrate termwise. The constant term is
/// integrated in the flat frame, normalized so that `F(τ+1) - T F(τ)` is
/// `x a_0 w^m`; this fixes everything except the `a^m` coordinate, which is
/// `T`-invariant. That coordinate is set to `λ m! ζ(m+1)` for `f = λ G_{2k} +
/// (cusp form)`, so that the homotopy in the Eisenstein cocycle is exactly
/// `A = -(m!/2) ζ(m+1) a^m`.
#[derive(Clone, Debug)]
pub struct EichlerPrimitive {
    pub weight: u32,
    pub spec: ModuleSpec,
    pub omega: ExpPoly,
    pub f: ExpPoly,
    pub ctx: Ctx,
}

pub fn eichler_primitive(f: &QExpansion, ctx: &Ctx) -> Result<EichlerPrimitive, NumError> {
    if f.weight < 4 || f.weight % 2 == 1 {
        return Err(NumError::Precondition("even weight ≥ 4".into()));
    }
    if (f.order() as u32) < ctx.order {
        return Err(NumError::InsufficientTruncation);
    }
    ctx.check(f.weight - 1)?;
    let m = f.weight - 2;
    let spec = ModuleSpec::sym(m);
    let om = omega(f, ctx);
    let mut prim = om.primitive(&ctx.x);
    let a0 = f.coefficient(0);
    if a0 != 0 {
        let dim = m as usize + 1;
        let g0 = -exact_core::bernoulli(f.weight as usize) / Rational::from(2 * f.weight);
        let lambda = Rational::from(&a0 / &g0);
        let kappa = Complex::from_real(zeta_value(m + 1, ctx.wp)).mul_rational(&(lambda * Rational::from(factorial(m))));
        // (T - 1) v = P(1) - x a_0 w^m, rows of positive a-degree
        let p1 = ExpPoly { dim, prec: ctx.wp, terms: [(0, prim.terms[&0].clone())].into() }.eval(&Complex::one(ctx.wp), &ctx.x);
        let mut rhs = p1;
        let w_b = &(&(-&ctx.x).powi(m as i32) * &ctx.x).mul_rational(&a0);
        rhs[0] = &rhs[0] - w_b;
        let t1 = action_matrix(&Mat2::T, &spec).sub(&RationalMatrix::identity(dim));
        let a: Vec<Vec<Complex>> = (1..dim).map(|r| (0..m as usize).map(|c| ctx.c(t1.get(r, c))).collect()).collect();
        let b: Vec<Complex> = (1..dim).map(|r| &rhs[r] - &kappa.mul_rational(t1.get(r, m as usize))).collect();
        let mut v = solve_complex(a, b).ok_or(NumError::Precondition("singular normalization system".into()))?;
        v.push(kappa);
        prim.add_constant(&v);
    }
    Ok(EichlerPrimitive { weight: f.weight, spec, omega: om, f: prim, ctx: ctx.clone() })
}

impl EichlerPrimitive {
    pub fn eval(&self, tau: &Complex) -> N {
        N::new(self.spec.clone(), self.f.eval(tau, &self.ctx.x))
    }

    /// `I(γ) = F(γτ) - γ F(τ)`; independent of `τ`.
    pub fn integral_at(&self, g: &Mat2, tau: &Complex) -> N {
        self.eval(&mobius(g, tau)).sub(&self.eval(tau).act_unimodular(g))
    }

    pub fn integral(&self, g: &Mat2) -> N {
        self.integral_at(g, &base_point(g, self.ctx.wp))
    }
}

/// `F_{12}(τ) = ∫^τ ω_1 ω_2` (first form integrated first), built from the
/// regularized `F_1`.
#[derive(Clone, Debug)]
pub struct DoublePrimitive {
    pub first: EichlerPrimitive,
    pub second: EichlerPrimitive,
    pub spec: ModuleSpec,
    pub f: ExpPoly,
}

pub fn double_primitive(p1: &EichlerPrimitive, p2: &EichlerPrimitive) -> Result<DoublePrimitive, NumError> {
    let ctx = &p1.ctx;
    ctx.check(p1.weight + p2.weight)?;
    let f = p1.f.tensor(&p2.omega, ctx.order).primitive(&ctx.x);
    Ok(DoublePrimitive { first: p1.clone(), second: p2.clone(), spec: p1.spec.tensor(&p2.spec), f })
}

impl DoublePrimitive {
    pub fn eval(&self, tau: &Complex) -> N {
        N::new(self.spec.clone(), self.f.eval(tau, &self.first.ctx.x))
    }

    /// `I_{12}(γ) = F_{12}(γτ) - γF_{12}(τ) - I_1(γ) ⊗ γF_2(τ)`, which
    /// satisfies `δI_{12} = -I_1 ∪ I_2` and does not depend on `τ`.
    pub fn integral_at(&self, g: &Mat2, tau: &Complex) -> N {
        let i1 = self.first.integral_at(g, tau);
        let f2 = self.second.eval(tau).act_unimodular(g);
        self.eval(&mobius(g, tau)).sub(&self.eval(tau).act_unimodular(g)).sub(&i1.tensor(&f2))
    }

    pub fn integral(&self, g: &Mat2) -> N {
        self.integral_at(g, &base_point(g, self.first.ctx.wp))
    }
}

/// A numeric iterated integral along `γ`, rounded to the requested bits.
#[derive(Clone, Debug)]
pub struct RegularizedIntegral {
    pub value: N,
    pub path: String,
    pub length: u8,
    /// Absolute bound: `2^-(bits - 16)` times the largest coordinate.
    pub error_bound: Float,
}

fn describe_path(g: &Mat2) -> String {
    if *g == Mat2::S {
        "[i, i∞) ∪ S[i, i∞)".into()
    } else {
        format!("τ0 → γτ0 for γ = [[{}, {}], [{}, {}]]", g.a, g.b, g.c, g.d)
    }
}

fn y_of(g: &Mat2) -> f64 {
    if g.c == 0 {
        1.0
    } else {
        1.0 / g.c.unsigned_abs() as f64
    }
}

fn finish(value: N, g: &Mat2, length: u8, bits: u32) -> RegularizedIntegral {
    let scale = value.coords.iter().map(|c| c.abs()).fold(Float::with_val(bits, 0), |m, v| if v > m { v } else { m });
    let error_bound = scale * Float::with_val(bits, Float::i_exp(1, -(bits as i32 - 16)));
    let value = N::new(value.spec.clone(), value.coords.iter().map(|c| c.with_prec(bits)).collect());
    RegularizedIntegral { value, path: describe_path(g), length, error_bound }
}

pub fn eichler_integral_1(f: &QExpansion, g: &Mat2, bits: u32) -> Result<RegularizedIntegral, NumError> {
    let ctx = Ctx::new(bits, y_of(g), f.weight);
    let p = eichler_primitive(f, &Ctx { order: ctx.order.min(f.order() as u32), ..ctx.clone() })?;
    Ok(finish(p.integral(g), g, 1, bits))
}

pub fn eichler_integral_2(f1: &QExpansion, f2: &QExpansion, g: &Mat2, bits: u32) -> Result<RegularizedIntegral, NumError> {
    let ctx = Ctx::new(bits, y_of(g), f1.weight + f2.weight + 1);
    let ctx = Ctx { order: ctx.order.min(f1.order().min(f2.order()) as u32), ..ctx };
    let p1 = eichler_primitive(f1, &ctx)?;
    let p2 = eichler_primitive(f2, &ctx)?;
    let d = double_primitive(&p1, &p2)?;
    Ok(finish(d.integral(g), g, 2, bits))
}
