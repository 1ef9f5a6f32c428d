use deligne_cone::*;
use exact_core::{q, PeriodScalar, Rational};
use group_cochains::{cocycle_space, Cochain};
use proptest::prelude::*;
use sl2_modules::{nilpotent_n, Basis, Mat2, ModuleElement, ModuleSpec};

type P = PeriodScalar;
type G = GroupTheory<P>;
type L = LieTheory<P>;
type Elem = ModuleElement<P>;

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

/// An arbitrary (non-cocycle) group cochain of degree `n`.
fn random_cochain(n: usize, spec: &ModuleSpec, seed: u64) -> Cochain<P> {
    if n == 0 {
        return Cochain::constant(elem(spec, seed));
    }
    let sp = spec.clone();
    Cochain::from_fn(n, spec.clone(), &P::zero(), move |args: &[Mat2]| {
        let mut key = seed;
        for m in args {
            for e in [m.a, m.b, m.c, m.d] {
                key = mix(key, e as u64);
            }
        }
        Ok(elem(&sp, key))
    })
}

fn random_triple(j: usize, spec: &ModuleSpec, seed: u64) -> DeligneTriple<G> {
    let c = (j > 0).then(|| random_cochain(j - 1, spec, mix(seed, 1)));
    DeligneTriple::new(c, random_cochain(j, spec, mix(seed, 2)), random_cochain(j, spec, mix(seed, 3))).unwrap()
}

/// `z` a random cocycle, `w = z + δv`, `c = v`.
fn random_cocycle_triple(m: u32, seed: u64) -> DeligneTriple<G> {
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
    let z = Cochain::cocycle(s, u);
    let v = Cochain::constant(elem(&spec, mix(seed, 7)));
    let w = z.add(&v.coboundary());
    DeligneTriple::new(Some(v), w, z).unwrap()
}

fn small_spec(k: u8) -> ModuleSpec {
    ModuleSpec::sym((k % 3) as u32)
}

fn rational_t(num: i64, den: i64, pick: u8) -> Rational {
    match pick % 4 {
        0 => q(0, 1),
        1 => q(1, 2),
        2 => q(1, 1),
        _ => q(num, den),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn differential_squares_to_zero(j in 0usize..3, k in any::<u8>(), seed in any::<u64>()) {
        let a = random_triple(j, &small_spec(k), seed);
        prop_assert!(cone_differential(&cone_differential(&a)).is_zero());
    }

    #[test]
    fn cup_t_is_a_chain_map(p in 0usize..2, r in 0usize..2, k1 in any::<u8>(), k2 in any::<u8>(), seed in any::<u64>(),
                            num in -5i64..6, den in 1i64..6, pick in any::<u8>()) {
        let t = rational_t(num, den, pick);
        let a = random_triple(p, &small_spec(k1), seed);
        let b = random_triple(r, &small_spec(k2), mix(seed, 99));
        let lhs = cone_differential(&cup_t(&a, &b, &t));
        let da_b = cup_t(&cone_differential(&a), &b, &t);
        let a_db = cup_t(&a, &cone_differential(&b), &t);
        let rhs = if p % 2 == 0 { da_b.add(&a_db) } else { da_b.sub(&a_db) };
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn cup_0_and_cup_1_differ_by_explicit_coboundary(m1 in 0u32..3, m2 in 0u32..3, seed in any::<u64>()) {
        let a = random_cocycle_triple(2 * (m1 % 2), seed);
        let b = random_cocycle_triple(2 * (m2 % 2), mix(seed, 5));
        prop_assert!(a.is_cocycle() && b.is_cocycle());
        let diff = cup_t(&a, &b, &q(0, 1)).sub(&cup_t(&a, &b, &q(1, 1)));
        let h = cup_homotopy(&a, &b).unwrap();
        prop_assert!(diff.sub(&cone_differential(&h)).is_zero());
        // and cup of cocycles is a cocycle
        let half = cup_t(&a, &b, &q(1, 2));
        prop_assert!(half.is_cocycle());
    }

    #[test]
    fn lie_cone_properties(m1 in 0u32..4, m2 in 0u32..4, seed in any::<u64>(), num in -4i64..5, den in 1i64..4) {
        let t = q(num, den);
        let lie_triple = |m: u32, s: u64, cocycle: bool| -> DeligneTriple<L> {
            let spec = ModuleSpec::sym(m);
            let c = elem(&spec, mix(s, 1));
            let z = elem(&spec, mix(s, 2));
            let w = if cocycle { z.add(&nilpotent_n(&c, Basis::DeRham)) } else { elem(&spec, mix(s, 3)) };
            DeligneTriple::new(Some(LieForm::new(0, c)), LieForm::new(1, w), LieForm::new(1, z)).unwrap()
        };
        let a = lie_triple(m1, seed, false);
        let b = lie_triple(m2, mix(seed, 9), false);
        prop_assert!(cone_differential(&cone_differential(&a)).is_zero());
        let lhs = cone_differential(&cup_t(&a, &b, &t));
        let rhs = cup_t(&cone_differential(&a), &b, &t).sub(&cup_t(&a, &cone_differential(&b), &t));
        prop_assert!(lhs.sub(&rhs).is_zero());
        let a = lie_triple(m1, seed, true);
        let b = lie_triple(m2, mix(seed, 9), true);
        prop_assert!(a.is_cocycle() && b.is_cocycle());
        let diff = cup_t(&a, &b, &q(0, 1)).sub(&cup_t(&a, &b, &q(1, 1)));
        prop_assert!(diff.sub(&cone_differential(&cup_homotopy(&a, &b).unwrap())).is_zero());
    }

    #[test]
    fn ext_class_invariant_under_lattice_coboundaries(seed in any::<u64>(), r in 1i32..6) {
        let e = random_cocycle_triple(2, seed).z;
        let base = DeligneTriple::<G>::homotopy_only(e);
        let spec = ModuleSpec::sym(2);
        let before = ext_class(&base, r).unwrap();
        // δ[c; 0, z] with z an x^r-rational cocycle keeps the shape [E; 0, 0]
        let space = cocycle_space(&spec);
        let zvec = &space.z1[(seed % space.z1.len() as u64) as usize];
        let d = spec.dim();
        let xr = P::x_pow(r);
        let zc = Cochain::cocycle(
            Elem::from_rationals(spec.clone(), &zvec[..d]).mul_coef(&xr),
            Elem::from_rationals(spec.clone(), &zvec[d..]).mul_coef(&xr),
        );
        let pert = DeligneTriple::new(Some(Cochain::constant(elem(&spec, mix(seed, 4)))), Cochain::zero(1, spec.clone(), &P::zero()), zc).unwrap();
        prop_assert!(pert.check_z_lattice(r).unwrap());
        let moved = base.add(&cone_differential(&pert));
        let after = ext_class(&moved, r).unwrap();
        prop_assert_eq!(before, after);
    }
}

#[test]
fn zero_triples() {
    let spec = ModuleSpec::sym(1);
    let z1 = Cochain::zero(1, spec.clone(), &P::zero());
    let zero = DeligneTriple::<G>::new(Some(Cochain::zero(0, spec.clone(), &P::zero())), z1.clone(), z1).unwrap();
    assert!(cone_differential(&zero).is_zero());
    let b = random_triple(1, &spec, 3);
    for t in [q(0, 1), q(1, 2), q(3, 7)] {
        assert!(cup_t(&zero, &b, &t).is_zero());
    }
}

#[test]
fn shape_errors() {
    let spec = ModuleSpec::sym(1);
    let w = random_cochain(1, &spec, 1);
    assert!(matches!(DeligneTriple::<G>::new(None, w.clone(), w.clone()), Err(ConeError::Shape(_))));
    let c = random_cochain(1, &spec, 2);
    assert!(matches!(DeligneTriple::<G>::new(Some(c), w.clone(), w), Err(ConeError::Shape(_))));
}

#[test]
fn ext_class_examples() {
    // [q x^r; 0, 0] lies in the lattice
    let r = 3;
    let c = Cochain::constant(Elem::betti_monomial(ModuleSpec::trivial(), &[], P::rational(q(5, 7)).shift(r)));
    let t = DeligneTriple::<G>::homotopy_only(c);
    assert!(ext_class(&t, r).unwrap().is_zero());
    let c = Cochain::constant(Elem::betti_monomial(ModuleSpec::trivial(), &[], P::zeta(3)));
    let cls = ext_class(&DeligneTriple::<G>::homotopy_only(c), r).unwrap();
    assert_eq!(cls.coords, vec![P::zeta(3)]);
    // w, z must be zero
    let a = random_triple(2, &ModuleSpec::sym(0), 8);
    assert_eq!(ext_class(&a, 1), Err(ConeError::NotReduced));
}

#[test]
fn real_reduce_examples() {
    let triv = ModuleSpec::trivial();
    let real = Cochain::constant(Elem::betti_monomial(triv.clone(), &[], &P::zeta(3) + &P::integer(2)));
    let cls = real_reduce(&DeligneTriple::<G>::homotopy_only(real), 5, true).unwrap();
    assert!(cls.is_zero());
    let xq = P::rational(q(2, 3)).shift(1);
    let im = Cochain::constant(Elem::betti_monomial(triv.clone(), &[], xq.clone()));
    let t = DeligneTriple::<G>::homotopy_only(im);
    assert_eq!(real_reduce(&t, 4, true).unwrap().coords, vec![xq]);
    assert_eq!(real_reduce(&t, 4, false), Err(ConeError::NonRealCorrection));
}

#[test]
fn lie_ext_class_reduces_mod_im_n() {
    let spec = ModuleSpec::sym(3);
    // N c dλ is exact: class zero
    let c = elem(&spec, 12);
    let e = LieForm::new(1, nilpotent_n(&c, Basis::DeRham));
    let t = DeligneTriple::<L>::homotopy_only(e);
    assert!(ext_class(&t, 1).unwrap().is_zero());
    let w3 = LieForm::new(1, Elem::dr_monomial(spec, &[0], P::zeta(5)));
    let cls = ext_class(&DeligneTriple::<L>::homotopy_only(w3), 4).unwrap();
    assert_eq!(cls.nonzero_coords(), vec![(0, &P::zeta(5))]);
}

#[test]
fn triple_json() {
    let a = random_cocycle_triple(2, 17);
    let j = a.to_json();
    assert_eq!(j["degree"], 1);
    assert!(j["z"].get("S").is_some());
    assert_eq!(j["c"]["formula"], "v");
    assert_eq!(j["flags"]["w_F0W0"], true);
}
