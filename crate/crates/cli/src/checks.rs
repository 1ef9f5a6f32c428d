//! The acceptance suite. Criteria 1-7 are exact; 8 and 9 go through the
//! numeric pipeline.

use deligne_cone::{cone_differential, cup_homotopy, cup_t, DeligneTriple, GroupTheory, LieForm, LieTheory};
use eichler_numerics::{derive_e0, verify_brown_cusp};
use eisenstein_calculus::{compare_theorem, cup_infinity, dim_s, external_cup};
use exact_core::{factorial, q, PeriodScalar, Rational, RationalMatrix};
use group_cochains::{cocycle_space, Cochain};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sl2_modules::{
    binom_sum_f, d_embed, mod_im_n, nilpotent_matrix, nilpotent_n, partial_op, weight_filtration, Basis,
    ModuleElement, ModuleSpec,
};

type P = PeriodScalar;
type Elem = ModuleElement<P>;

pub const PRECISION: u32 = 256;

#[derive(Clone, Debug)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn line(&self) -> String {
        format!("{} criterion {} ({}): {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.name, self.detail)
    }

    pub fn to_json(&self) -> Value {
        json!({"criterion": self.id, "name": self.name, "pass": self.pass, "detail": self.detail})
    }
}

fn run(id: u8, name: &'static str, f: impl FnOnce() -> Result<String, String>) -> Check {
    match f() {
        Ok(detail) => Check { id, name, pass: true, detail },
        Err(detail) => Check { id, name, pass: false, detail },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn fact(n: u32) -> Rational {
    Rational::from(factorial(n))
}

fn one() -> P {
    P::integer(1)
}

pub fn lemma_h_wt() -> Check {
    run(1, "weight lemma", || {
        let mut cases = 0;
        for total in 0..=30u32 {
            for l in 0..=total {
                let k = total - l;
                let wk = Elem::dr_monomial(ModuleSpec::sym(k), &[0], one());
                let lhs = mod_im_n(&d_embed(&wk, l).map_err(|e| e.to_string())?);
                let top = Elem::dr_monomial(ModuleSpec::new(vec![k + l, l], l as i32), &[0, l], one());
                let rhs = mod_im_n(&top).scale(&Rational::from((k + l + 1, k + 1)));
                ensure(lhs == rhs, || format!("D^l mismatch at k={k}, l={l}"))?;
                cases += 1;
            }
        }
        for k in 0..=30u32 {
            for l in 0..=30u32 {
                ensure(binom_sum_f(k, l) == (k + l + 1, k + 1), || format!("F({k},{l})"))?;
                if k > 0 && l > 0 {
                    let lhs = Rational::from(k + l) * binom_sum_f(k, l);
                    let rhs = Rational::from(k) * binom_sum_f(k - 1, l) + Rational::from(l) * binom_sum_f(k, l - 1);
                    ensure(lhs == rhs, || format!("recursion at ({k},{l})"))?;
                }
            }
        }
        Ok(format!("{cases} pairs k+l <= 30, F and recursion for k,l <= 30"))
    })
}

pub fn partial_display() -> Check {
    run(2, "partial-projection display", || {
        let mut cases = 0;
        for n in 1..10u32 {
            for m in 1..=(10 - n) {
                let (hi, lo) = (2 * n + 2 * m - 2, 2 * m - 2);
                let mut v = Elem::dr_monomial(ModuleSpec::tensor2(hi, lo), &[0, lo], one());
                for _ in 0..lo {
                    v = partial_op(&v).map_err(|e| e.to_string())?;
                }
                let c = fact(lo) * fact(hi) / fact(2 * n);
                let want = Elem::dr_monomial(v.spec.clone(), &[0, 0], P::rational(c));
                ensure(v == want, || format!("n={n} m={m}"))?;
                cases += 1;
            }
        }
        Ok(format!("{cases} cases n+m <= 10"))
    })
}

pub fn cup_at_infinity() -> Check {
    run(3, "cup at the cusp and comparison", || {
        let mut cases = 0;
        for n in 1..8u32 {
            for m in 2..=(8 - n) {
                let c = cup_infinity(n, m).map_err(|e| e.to_string())?;
                ensure(c.c == c.c_display, || format!("C differs from its closed form at n={n} m={m}"))?;
                ensure(mod_im_n(&c.c) == mod_im_n(&c.c_prime), || format!("C' at n={n} m={m}"))?;
                for (r, cls) in &c.components {
                    ensure(cls.is_zero() == (*r < 2 * m - 2), || format!("projection r={r} at n={n} m={m}"))?;
                }
                let cmp = compare_theorem(n, m).map_err(|e| e.to_string())?;
                ensure(cmp.equal, || format!("comparison at n={n} m={m}"))?;
                cases += 1;
            }
        }
        let cmp = compare_theorem(1, 2).map_err(|e| e.to_string())?;
        ensure(cmp.scalar == q(-2, 7), || "scalar at (1,2)".into())?;
        Ok(format!("{cases} cases n+m <= 8, scalar(1,2) = -2/7"))
    })
}

pub fn external_cups(bits: u32) -> Check {
    run(4, "external cup", || {
        let mut cases = 0;
        for n in 1..=8u32 {
            let z = derive_e0(2 * n + 2, bits).map_err(|e| format!("e0 of weight {}: {e}", 2 * n + 2))?.cocycle;
            for m in 2..=8u32 {
                let e = external_cup(m, &z).map_err(|e| e.to_string())?;
                ensure(e.eisenstein.coords == vec![P::zeta(2 * m - 1)], || format!("Eisenstein part at m={m} n={n}"))?;
                ensure(e.cusp.as_ref().is_some_and(|c| c.is_zero()), || format!("cusp part at m={m} n={n}"))?;
                cases += 1;
            }
        }
        Ok(format!("{cases} cases 2 <= m <= 8, 1 <= n <= 8"))
    })
}

pub fn eichler_shimura() -> Check {
    run(5, "Eichler-Shimura dimensions", || {
        let mut dims = Vec::new();
        for n in 1..=12u32 {
            let h1 = cocycle_space(&ModuleSpec::sym(2 * n)).h1.len();
            let cusp = dim_s(2 * n + 2).map_err(|e| e.to_string())?;
            ensure(h1 == 2 * cusp + 1, || format!("n={n}: H1 = {h1}, dim S = {cusp}"))?;
            dims.push(h1.to_string());
        }
        Ok(format!("dim H1 for n = 1..12: {}", dims.join(",")))
    })
}

fn mix(seed: u64, i: u64) -> u64 {
    let mut h = seed ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    h ^= h >> 31;
    h = h.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    h ^ (h >> 29)
}

/// Small integers, sometimes times `x` or `ζ(3)`.
fn scalar(seed: u64, i: u64) -> P {
    let h = mix(seed, i);
    let n = P::integer((h % 7) as i64 - 3);
    match (h >> 8) % 4 {
        0 => &n * &P::x(),
        1 => &n * &P::zeta(3),
        _ => n,
    }
}

fn elem(spec: &ModuleSpec, seed: u64) -> Elem {
    Elem::new(spec.clone(), (0..spec.dim()).map(|i| scalar(seed, i as u64)).collect())
}

fn random_cochain(n: usize, spec: &ModuleSpec, seed: u64) -> Cochain<P> {
    if n == 0 {
        return Cochain::constant(elem(spec, seed));
    }
    let sp = spec.clone();
    Cochain::from_fn(n, spec.clone(), &P::zero(), move |args| {
        let mut key = seed;
        for m in args {
            for e in [m.a, m.b, m.c, m.d] {
                key = mix(key, e as u64);
            }
        }
        Ok(elem(&sp, key))
    })
}

fn random_triple(j: usize, spec: &ModuleSpec, seed: u64) -> Result<DeligneTriple<GroupTheory<P>>, String> {
    let c = (j > 0).then(|| random_cochain(j - 1, spec, mix(seed, 1)));
    DeligneTriple::new(c, random_cochain(j, spec, mix(seed, 2)), random_cochain(j, spec, mix(seed, 3))).map_err(|e| e.to_string())
}

/// `z` a random solver cocycle, `w = z + δv`, `c = v`.
fn random_cocycle_triple(m: u32, seed: u64) -> Result<DeligneTriple<GroupTheory<P>>, String> {
    let spec = ModuleSpec::sym(m);
    let space = cocycle_space(&spec);
    let d = spec.dim();
    let mut s = Elem::zero(spec.clone());
    let mut u = Elem::zero(spec.clone());
    for (k, v) in space.z1.iter().enumerate() {
        let c = scalar(seed, 100 + k as u64);
        s = s.add(&Elem::from_rationals(spec.clone(), &v[..d]).mul_coef(&c));
        u = u.add(&Elem::from_rationals(spec.clone(), &v[d..]).mul_coef(&c));
    }
    let v = Cochain::constant(elem(&spec, mix(seed, 7)));
    let z = Cochain::cocycle(s, u);
    DeligneTriple::new(Some(v.clone()), z.add(&v.coboundary()), z).map_err(|e| e.to_string())
}

fn lie_triple(m: u32, seed: u64, cocycle: bool) -> Result<DeligneTriple<LieTheory<P>>, String> {
    let spec = ModuleSpec::sym(m);
    let c = elem(&spec, mix(seed, 1));
    let z = elem(&spec, mix(seed, 2));
    let w = if cocycle { z.add(&nilpotent_n(&c, Basis::DeRham)) } else { elem(&spec, mix(seed, 3)) };
    DeligneTriple::new(Some(LieForm::new(0, c)), LieForm::new(1, w), LieForm::new(1, z)).map_err(|e| e.to_string())
}

fn random_t(rng: &mut ChaCha8Rng) -> Rational {
    match rng.gen_range(0..4) {
        0 => q(0, 1),
        1 => q(1, 2),
        2 => q(1, 1),
        _ => q(rng.gen_range(-5..6), rng.gen_range(1..6)),
    }
}

/// `cases` randomized instances of each of the cone identities.
pub fn cone_properties(cases: usize) -> Check {
    run(6, "cone complex", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut total = 0;
        for i in 0..cases {
            let seed: u64 = rng.gen();
            let spec = ModuleSpec::sym(rng.gen_range(0..3));
            let j = rng.gen_range(0..3);
            let a = random_triple(j, &spec, seed)?;
            ensure(cone_differential(&cone_differential(&a)).is_zero(), || format!("δ² ≠ 0, case {i}"))?;

            let (p, r) = (rng.gen_range(0..2), rng.gen_range(0..2));
            let t = random_t(&mut rng);
            let a = random_triple(p, &ModuleSpec::sym(rng.gen_range(0..3)), seed)?;
            let b = random_triple(r, &ModuleSpec::sym(rng.gen_range(0..3)), mix(seed, 99))?;
            let lhs = cone_differential(&cup_t(&a, &b, &t));
            let da_b = cup_t(&cone_differential(&a), &b, &t);
            let a_db = cup_t(&a, &cone_differential(&b), &t);
            let rhs = if p % 2 == 0 { da_b.add(&a_db) } else { da_b.sub(&a_db) };
            ensure(lhs.sub(&rhs).is_zero(), || format!("∪_t not a chain map, case {i}, t = {t}"))?;

            let a = random_cocycle_triple(2 * rng.gen_range(0..2), seed)?;
            let b = random_cocycle_triple(2 * rng.gen_range(0..2), mix(seed, 5))?;
            let diff = cup_t(&a, &b, &q(0, 1)).sub(&cup_t(&a, &b, &q(1, 1)));
            let h = cup_homotopy(&a, &b).map_err(|e| e.to_string())?;
            ensure(diff.sub(&cone_differential(&h)).is_zero(), || format!("group homotopy, case {i}"))?;

            let (m1, m2) = (rng.gen_range(0..4), rng.gen_range(0..4));
            let a = lie_triple(m1, seed, true)?;
            let b = lie_triple(m2, mix(seed, 9), true)?;
            let diff = cup_t(&a, &b, &q(0, 1)).sub(&cup_t(&a, &b, &q(1, 1)));
            let h = cup_homotopy(&a, &b).map_err(|e| e.to_string())?;
            ensure(diff.sub(&cone_differential(&h)).is_zero(), || format!("Lie homotopy, case {i}"))?;
            total += 4;
        }
        Ok(format!("{total} randomized cases"))
    })
}

fn graded_dim(m: u32, k: i32) -> usize {
    (0..=m).filter(|&i| m as i32 - 2 * i as i32 <= k).count()
}

fn span_contains(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    if basis.is_empty() {
        return v.iter().all(|c| *c == 0);
    }
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    RationalMatrix::from_rows(rows).rank() == RationalMatrix::from_rows(basis.to_vec()).rank()
}

pub fn weight_filtration_oracle() -> Check {
    run(7, "weight filtration", || {
        for m in 0..=10u32 {
            for basis in [Basis::Betti, Basis::DeRham] {
                let spec = ModuleSpec::sym(m);
                let f = weight_filtration(&nilpotent_matrix(&spec, basis), 0).map_err(|e| e.to_string())?;
                for k in -(m as i32) - 2..=(m as i32) + 2 {
                    let sub = f.subspace(k);
                    ensure(sub.len() == graded_dim(m, k), || format!("dim M_{k} on S^{m}"))?;
                    for i in 0..=m {
                        if m as i32 - 2 * i as i32 <= k {
                            let mut e = vec![Rational::new(); spec.dim()];
                            e[i as usize] = Rational::from(1);
                            ensure(span_contains(&sub, &e), || format!("M_{k} on S^{m} misses a^{i}"))?;
                        }
                    }
                }
            }
        }
        let n = nilpotent_matrix(&ModuleSpec::sym(1), Basis::Betti);
        let f = weight_filtration(&n, 1).map_err(|e| e.to_string())?;
        let idx: Vec<i32> = f.jumps.iter().map(|j| j.0).collect();
        ensure(idx == vec![0, 2] && f.subspace(0) == n.transpose().row_basis() && f.dim_at(2) == 2, || {
            format!("H with center 1: jumps {idx:?}")
        })?;
        Ok("S^m H for m <= 10 in both bases; M_0 = im N, M_2 = H".into())
    })
}

pub fn e0_derivation(bits: u32) -> Check {
    run(8, "e0 derivation", || {
        let mut worst = f64::NEG_INFINITY;
        for w in [4, 6, 8, 10, 12] {
            let d = derive_e0(w, bits).map_err(|e| format!("weight {w}: {e}"))?;
            let c = &d.certificate;
            ensure(c.stable && c.relations_exact && c.e0_t_exact, || format!("weight {w}: {}", c.to_json()))?;
            ensure(c.residual_log2 < -224.0, || format!("weight {w}: residual 2^{:.1}", c.residual_log2))?;
            worst = worst.max(c.residual_log2);
        }
        Ok(format!("weights 4-12 at {bits} bits, worst residual 2^{worst:.1}"))
    })
}

pub fn brown_cusp(bits: u32) -> Check {
    run(9, "cuspidal projection (3,2,0)", || {
        let rep = verify_brown_cusp(3, 2, 0, bits).map_err(|e| e.to_string())?;
        let j = rep.to_json();
        let detail = format!(
            "lhs/rhs = {}, other parity {}, drifts {} / {}",
            j["lhs_over_rhs"], j["other_parity"], j["base_point_drift"], j["precision_drift"]
        );
        if rep.pass { Ok(detail) } else { Err(detail) }
    })
}

/// Criteria 1-7.
pub fn exact_suite() -> Vec<Check> {
    vec![
        lemma_h_wt(),
        partial_display(),
        cup_at_infinity(),
        external_cups(PRECISION),
        eichler_shimura(),
        cone_properties(60),
        weight_filtration_oracle(),
    ]
}

pub fn all() -> Vec<Check> {
    let mut v = exact_suite();
    v.push(e0_derivation(PRECISION));
    v.push(brown_cusp(PRECISION));
    v
}
