use exact_core::{pi, q, rationalize, Complex, Float, Integer, Rational};
use eisenstein_calculus::{cup_g, cusp_basis, eisenstein_q, h1_projections, EisensteinCocycle, H1Coordinates, PeriodCocycle};
use serde_json::{json, Value};
use sl2_modules::{clebsch_projection_p_r, Mat2, ModuleElement};

use crate::e0::derive_e0;
use crate::integrals::{double_primitive, eichler_primitive, mobius, Ctx};
use crate::symbols::{completed_l, modular_symbol};
use crate::NumError;

type N = ModuleElement<Complex>;

/// The rational normalization of the `p_r` projection against the rescaled
/// period polynomial `r̂^ε` (coordinate 1 on `a b^{m-1}` for `ε = -`, on
/// `a^2 b^{m-2}` for `ε = +`): the `r̂^ε`-coordinate is this times
/// `(2π)^{w-1} Λ(f, 2j+2k-r+2)`, `w` the weight of `f`.
pub fn declared_scalar(j: u32, k: u32, r: u32) -> Option<Rational> {
    match (j, k, r) {
        (3, 2, 0) => Some(q(-1, 35)),
        _ => None,
    }
}

fn real_of_imaginary(v: &N) -> N {
    let p = v.coords[0].prec();
    N::new(v.spec.clone(), v.coords.iter().map(|c| Complex::new(c.im.clone(), Float::new(p))).collect())
}

fn normalized(v: &N, index: usize) -> N {
    let c = v.coords[index].recip();
    v.mul_coef(&c)
}

/// The `p_r` component of the real class of `G_{2j+2} ∪ G_{2k+2}` and its
/// `H^1` coordinates.
#[derive(Clone, Debug)]
pub struct BrownClass {
    pub weight: u32,
    pub class: PeriodCocycle,
    pub coordinates: H1Coordinates,
}

/// `z1`, `z2` are the two factors, `target` the Eisenstein cocycle of weight
/// `2j+2k-2r+2`; `tau0` is the base point of the numeric integrals.
pub fn brown_class(
    z1: &EisensteinCocycle,
    z2: &EisensteinCocycle,
    target: &EisensteinCocycle,
    r: u32,
    bits: u32,
    tau0: &Complex,
) -> Result<BrownClass, NumError> {
    let (j, k) = (z1.m() / 2, z2.m() / 2);
    let weight = 2 * (j + k) - 2 * r + 2;
    if target.weight != weight || r > 2 * k {
        return Err(NumError::Precondition("target weight must be 2j+2k-2r+2 with r ≤ 2k".into()));
    }
    let cup = cup_g(z1, z2)?;
    let wp0 = bits + exact_core::GUARD_BITS;
    let tau = tau0.with_prec(wp0);
    let y = [tau.clone(), mobius(&Mat2::S, &tau), mobius(&Mat2::T, &tau)]
        .iter()
        .map(|t| t.im.to_f64())
        .fold(f64::INFINITY, f64::min);
    let ctx = Ctx::new(bits, y, z1.weight + z2.weight + 1);
    let g1 = eisenstein_q(z1.weight, ctx.order as usize)?;
    let g2 = eisenstein_q(z2.weight, ctx.order as usize)?;
    let p1 = eichler_primitive(&g1, &ctx)?;
    let p2 = eichler_primitive(&g2, &ctx)?;
    let d = double_primitive(&p1, &p2)?;

    let values = |g: Mat2| -> Result<N, NumError> {
        let i12 = d.integral_at(&g, &tau);
        let exact = cup.exact_part.evaluate(&[g])?.numeric(ctx.wp);
        let e = real_of_imaginary(&i12.add(&exact));
        Ok(clebsch_projection_p_r(&e, r).map_err(eisenstein_calculus::EisError::from)?)
    };
    let class = PeriodCocycle { s: values(Mat2::S)?, t: values(Mat2::T)? };

    let forms = cusp_basis(weight, ctx.order as usize)?;
    let mut cusp = Vec::new();
    for f in &forms {
        let sym = modular_symbol(f, bits)?;
        let re = |v: &N| N::new(v.spec.clone(), v.coords.iter().map(|c| Complex::from_real(c.re.clone())).collect());
        cusp.push((normalized(&re(&sym.plus), 2), normalized(&re(&sym.minus), 1)));
    }
    let coordinates = h1_projections(&class, target, &cusp)?;
    Ok(BrownClass { weight, class, coordinates })
}

#[derive(Clone, Debug)]
pub struct BrownReport {
    pub j: u32,
    pub k: u32,
    pub r: u32,
    pub f: String,
    pub bits: u32,
    /// Coordinate against `r̂^ε`, `ε = (-1)^{r+1}`.
    pub coordinate: Float,
    /// Coordinate against `r̂^{-ε}`.
    pub other_parity: Float,
    pub eisenstein: Float,
    pub l_value: Float,
    pub recognized_scalar: Option<Rational>,
    pub declared_scalar: Option<Rational>,
    pub lhs_over_rhs: Option<Float>,
    /// Relative change of `coordinate` under another base point and under
    /// doubled precision.
    pub base_point_drift: Float,
    pub precision_drift: Float,
    pub pass: bool,
}

impl BrownReport {
    pub fn to_json(&self) -> Value {
        let show = |f: &Float| f.to_string_radix(10, Some(25));
        json!({
            "case": {"j": self.j, "k": self.k, "r": self.r},
            "f": self.f,
            "lhs_over_rhs": self.lhs_over_rhs.as_ref().map(show),
            "bits": self.bits,
            "pass": self.pass,
            "coordinate": show(&self.coordinate),
            "other_parity": show(&self.other_parity),
            "eisenstein": show(&self.eisenstein),
            "L": show(&self.l_value),
            "declared_scalar": self.declared_scalar.as_ref().map(exact_core::format_rational),
            "recognized_scalar": self.recognized_scalar.as_ref().map(exact_core::format_rational),
            "base_point_drift": show(&self.base_point_drift),
            "precision_drift": show(&self.precision_drift),
        })
    }
}

fn pick(c: &H1Coordinates, r: u32) -> (Float, Float) {
    let (plus, minus) = &c.cusp[0];
    let (main, other) = if r.is_multiple_of(2) { (minus, plus) } else { (plus, minus) };
    (main.re.clone(), other.abs())
}

fn rel(a: &Float, b: &Float) -> Float {
    let p = a.prec();
    Float::with_val(p, a - b).abs() / Float::with_val(p, b.abs_ref())
}

pub fn verify_brown_cusp(j: u32, k: u32, r: u32, bits: u32) -> Result<BrownReport, NumError> {
    if k == 0 || j < k || r > 2 * k {
        return Err(NumError::Precondition("j ≥ k > 0 and 0 ≤ r ≤ 2k".into()));
    }
    let weight = 2 * (j + k) - 2 * r + 2;
    if eisenstein_calculus::dim_s(weight)? != 1 {
        return Err(NumError::Precondition(format!("weight {weight} does not have a one-dimensional cusp space")));
    }
    let z1 = derive_e0(2 * j + 2, bits)?.cocycle;
    let z2 = derive_e0(2 * k + 2, bits)?.cocycle;
    let zt = derive_e0(weight, bits)?.cocycle;

    let wp = bits + exact_core::GUARD_BITS;
    let i = Complex::i(wp);
    let base = brown_class(&z1, &z2, &zt, r, bits, &i)?;
    let moved = brown_class(&z1, &z2, &zt, r, bits, &Complex::new(Float::with_val(wp, 0.3), Float::with_val(wp, 1.6)))?;
    let fine = brown_class(&z1, &z2, &zt, r, 2 * bits, &Complex::i(2 * bits + exact_core::GUARD_BITS))?;

    let (coordinate, other_parity) = pick(&base.coordinates, r);
    let base_point_drift = rel(&pick(&moved.coordinates, r).0, &coordinate);
    let precision_drift = rel(&Float::with_val(wp, &pick(&fine.coordinates, r).0), &coordinate);

    let order = Ctx::new(bits, 1.0, weight).order as usize;
    let f = cusp_basis(weight, order)?.remove(0);
    let s = 2.0 * (j + k) as f64 - r as f64 + 2.0;
    let l_value = Float::with_val(wp, completed_l(&f, s, bits)?);
    let two_pi = Float::with_val(wp, pi(wp) * 2);
    let unit = Float::with_val(wp, exact_core::rug::ops::Pow::pow(&two_pi, weight as i32 - 1)) * &l_value;
    let ratio = Float::with_val(wp, &coordinate / &unit);
    let recognized_scalar = rationalize(&ratio, &Integer::from(1_000_000), &Float::with_val(wp, 1e-30));
    let declared = declared_scalar(j, k, r);
    let lhs_over_rhs = declared.as_ref().map(|d| Float::with_val(wp, &ratio / d));

    let tiny = 1e-10;
    let ok_ratio = match &lhs_over_rhs {
        Some(v) => Float::with_val(wp, v - 1u32).abs() < tiny,
        None => recognized_scalar.is_some(),
    };
    let pass = ok_ratio && other_parity < tiny && base_point_drift < tiny && precision_drift < tiny;
    Ok(BrownReport {
        j,
        k,
        r,
        f: if weight == 12 { "Delta".into() } else { format!("f{weight}") },
        bits,
        coordinate,
        other_parity,
        eisenstein: base.coordinates.eis.abs(),
        l_value,
        recognized_scalar,
        declared_scalar: declared,
        lhs_over_rhs,
        base_point_drift,
        precision_drift,
        pass,
    })
}
