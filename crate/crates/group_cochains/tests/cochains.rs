use exact_core::{q, Coef, PeriodScalar, Rational};
use group_cochains::*;
use proptest::prelude::*;
use sl2_modules::{mod_im_n, Basis, Mat2, ModuleElement, ModuleSpec};

type Elem = ModuleElement<PeriodScalar>;

fn letters() -> [Letter; 4] {
    [Letter::S, Letter::SInv, Letter::T, Letter::TInv]
}

fn word_from(seed: &[u8]) -> Word {
    Word::new(seed.iter().map(|b| letters()[(*b % 4) as usize]).collect())
}

fn elem(spec: &ModuleSpec, seed: u64) -> Elem {
    let coords: Vec<Rational> = (0..spec.dim())
        .map(|i| {
            let h = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add((i as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9));
            Rational::from(((h >> 40) % 9) as i64 - 4)
        })
        .collect();
    Elem::from_rationals(spec.clone(), &coords)
}

/// A nonzero non-coboundary cocycle on `S^m H`, from the solver.
fn some_cocycle(m: u32, pick: usize) -> Cochain<PeriodScalar> {
    let space = cocycle_space(&ModuleSpec::sym(m));
    let v = &space.z1[pick % space.z1.len()];
    space.cochain(v)
}

/// Classical dimension of level-one cusp forms.
fn dim_cusp_classical(k: u32) -> usize {
    if k < 12 || k % 2 == 1 {
        return 0;
    }
    let base = (k / 12) as usize;
    if k % 12 == 2 {
        base - 1
    } else {
        base
    }
}

#[test]
fn word_examples() {
    let t5 = GammaElement::from_matrix(Mat2::T.pow(5)).unwrap();
    assert_eq!(word_decompose(&t5).letters, vec![Letter::T; 5]);
    assert_eq!(word_decompose(&GammaElement::S).letters, vec![Letter::S]);
    let g = GammaElement::new(1, 0, 1, 1).unwrap();
    let want = Mat2::S.mul(&Mat2::T.inv()).mul(&Mat2::S.inv());
    assert_eq!(want, g.matrix());
    assert_eq!(word_decompose(&g).evaluate(), want);
    assert!(word_decompose(&GammaElement::IDENTITY).is_empty());
    assert_eq!(GammaElement::new(2, 0, 0, 1), Err(CochainError::NotUnimodular(2)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn word_decompose_reproduces_matrix(seed in prop::collection::vec(any::<u8>(), 0..20)) {
        let g = GammaElement::from_matrix(word_from(&seed).evaluate()).unwrap();
        prop_assert_eq!(word_decompose(&g).evaluate(), g.matrix());
    }
}

#[test]
fn eichler_shimura_dimensions() {
    for n in 1..=12u32 {
        let space = cocycle_space(&ModuleSpec::sym(2 * n));
        assert_eq!(space.b1.len(), 2 * n as usize + 1);
        assert_eq!(space.z1.len(), space.b1.len() + space.h1.len());
        assert_eq!(space.h1.len(), 2 * dim_cusp_classical(2 * n + 2) + 1, "n = {n}");
    }
    assert_eq!(cocycle_space(&ModuleSpec::trivial()).h1.len(), 0);
    assert_eq!(cocycle_space(&ModuleSpec::sym(2)).h1.len(), 1);
    let s10 = cocycle_space(&ModuleSpec::sym(10));
    assert_eq!((s10.b1.len(), s10.h1.len()), (11, 3));
    // -1 acts by -1 on odd powers, killing all cohomology
    assert_eq!(cocycle_space(&ModuleSpec::sym(5)).h1.len(), 0);
}

#[test]
fn solver_cocycles_satisfy_relations_exactly() {
    for m in [2u32, 4, 10] {
        let space = cocycle_space(&ModuleSpec::sym(m));
        for v in &space.z1 {
            let c = space.cochain(v);
            assert!(c.relation_residuals().unwrap().iter().all(|r| r.is_zero()));
        }
    }
}

#[test]
fn cocycle_rule_on_products() {
    let c = some_cocycle(4, 2);
    let els = sample_elements();
    for a in &els {
        for b in &els {
            let lhs = c.evaluate(&[a.mul(b)]).unwrap();
            let rhs = c.evaluate(&[*a]).unwrap().add(&c.evaluate(&[*b]).unwrap().act(a).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    /// Inserting a relator (`S^4`, `(ST)^3 S^2`, or `x x^-1`) into the
    /// canonical word must not change the value.
    #[test]
    fn word_independence(seed in prop::collection::vec(any::<u8>(), 1..14), pos in any::<usize>(), kind in 0u8..3, pick in 0usize..5) {
        let g = GammaElement::from_matrix(word_from(&seed).evaluate()).unwrap();
        let canonical = word_decompose(&g);
        let relator: Vec<Letter> = match kind {
            0 => vec![Letter::S; 4],
            1 => vec![Letter::S, Letter::T, Letter::S, Letter::T, Letter::S, Letter::T, Letter::S, Letter::S],
            _ => vec![Letter::TInv, Letter::S, Letter::SInv, Letter::T],
        };
        let mut perturbed = canonical.letters.clone();
        let at = pos % (perturbed.len() + 1);
        perturbed.splice(at..at, relator);
        let perturbed = Word::new(perturbed);
        prop_assert_eq!(perturbed.evaluate(), g.matrix());
        let c = some_cocycle(6, pick);
        prop_assert_eq!(c.evaluate_word(&canonical).unwrap(), c.evaluate_word(&perturbed).unwrap());
        // and against the input word itself
        prop_assert_eq!(c.evaluate_word(&word_from(&seed)).unwrap(), c.eval1(&g).unwrap());
    }
}

#[test]
fn zero_and_coboundary_evaluations() {
    let spec = ModuleSpec::sym(3);
    let zero = Cochain::cocycle(Elem::zero(spec.clone()), Elem::zero(spec.clone()));
    for g in sample_elements() {
        assert!(zero.evaluate(&[g]).unwrap().is_zero());
    }
    let v = elem(&spec, 11);
    let dv = Cochain::constant(v.clone()).coboundary();
    for g in sample_elements() {
        assert_eq!(dv.evaluate(&[g]).unwrap(), v.act(&g).unwrap().sub(&v));
    }
    let z0 = Cochain::zero(1, spec, &PeriodScalar::zero()).coboundary();
    assert!(z0.evaluate(&[Mat2::S, Mat2::T]).unwrap().is_zero());
}

#[test]
fn coboundary_squares_to_zero() {
    let spec = ModuleSpec::sym(4);
    let v = Cochain::constant(elem(&spec, 3));
    let ddv = v.coboundary().coboundary();
    let ev = sample_elements();
    let mut count = 0;
    for a in &ev {
        for b in &ev {
            assert!(ddv.evaluate(&[*a, *b]).unwrap().is_zero());
            count += 1;
        }
    }
    assert!(count >= 20);
    // a non-cocycle 1-cochain given pointwise
    let f = Cochain::from_fn(1, spec.clone(), &PeriodScalar::zero(), move |g: &[Mat2]| {
        let m = g[0];
        let s = PeriodScalar::integer(m.a * 3 - m.b * m.c + 2 * m.d * m.d);
        Ok(Elem::betti_monomial(ModuleSpec::sym(4), &[1], s))
    });
    let ddf = f.coboundary().coboundary();
    for a in &ev {
        for b in &ev {
            let c = ev[(a.a.unsigned_abs() as usize + 2) % ev.len()];
            assert!(ddf.evaluate(&[*a, *b, c]).unwrap().is_zero());
        }
    }
    for g in some_cocycle(4, 1).coboundary().evaluate(&[Mat2::S, Mat2::U]).unwrap().coords {
        assert!(g.is_zero());
    }
}

#[test]
fn cup_products() {
    let f = some_cocycle(2, 0);
    let g = some_cocycle(4, 3);
    let fg = f.cup(&g);
    assert_eq!(fg.spec.factors, vec![2, 4]);
    let d = fg.coboundary();
    let ev = sample_elements();
    for (i, a) in ev.iter().enumerate() {
        for b in &ev {
            let c = ev[(i * 3 + 1) % ev.len()];
            assert!(d.evaluate(&[*a, *b, c]).unwrap().is_zero());
        }
    }
    let zero = Cochain::cocycle(Elem::zero(ModuleSpec::sym(2)), Elem::zero(ModuleSpec::sym(2)));
    assert!(zero.cup(&g).evaluate(&[Mat2::S, Mat2::T]).unwrap().is_zero());
    // (δv) ∪ g = δ(v ∪ g) for a cocycle g
    let v = Cochain::constant(elem(&ModuleSpec::sym(2), 5));
    let lhs = v.coboundary().cup(&g);
    let rhs = v.cup(&g).coboundary();
    for a in &ev {
        for b in &ev {
            assert_eq!(lhs.evaluate(&[*a, *b]).unwrap(), rhs.evaluate(&[*a, *b]).unwrap());
        }
    }
}

fn assert_delta_h_is_minus_z(h: &Cochain<PeriodScalar>, z: &Cochain<PeriodScalar>) {
    assert!(h.relation_residuals().unwrap().iter().all(|r| r.is_zero()));
    let dh = h.coboundary();
    for a in sample_elements() {
        for b in sample_elements() {
            let s = dh.evaluate(&[a, b]).unwrap().add(&z.evaluate(&[a, b]).unwrap());
            assert!(s.is_zero(), "δh + z ≠ 0 at {a}, {b}");
        }
    }
}

#[test]
fn solve_delta_h_on_coboundaries_and_zero() {
    let spec = ModuleSpec::sym(4);
    let f = Cochain::constant(elem(&spec, 9)).coboundary();
    let z = f.coboundary();
    let h = solve_delta_h(&z, true).unwrap();
    assert_delta_h_is_minus_z(&h, &z);
    // h + f is a cocycle
    let diff = h.add(&f);
    for a in sample_elements() {
        for b in sample_elements() {
            let lhs = diff.evaluate(&[a.mul(&b)]).unwrap();
            let rhs = diff.evaluate(&[a]).unwrap().add(&diff.evaluate(&[b]).unwrap().act(&a).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
    let z0 = Cochain::zero(2, spec, &PeriodScalar::zero());
    let h0 = solve_delta_h(&z0, true).unwrap();
    let (s, u) = h0.generators().unwrap();
    assert!(s.is_zero() && u.is_zero());
}

#[test]
fn solve_delta_h_on_cup_of_cocycles() {
    let f = some_cocycle(4, 1);
    let g = some_cocycle(2, 0);
    let z = f.cup(&g);
    let h = solve_delta_h(&z, true).unwrap();
    assert_delta_h_is_minus_z(&h, &z);
    assert!(h.generators().unwrap().0.as_rationals().is_some());
}

#[test]
fn solve_delta_h_rejects_non_cocycles() {
    let f = Cochain::from_fn(2, ModuleSpec::sym(0), &PeriodScalar::zero(), |g: &[Mat2]| {
        Ok(Elem::betti_monomial(ModuleSpec::sym(0), &[0], PeriodScalar::integer(g[0].a)))
    });
    assert_eq!(solve_delta_h(&f, false).unwrap_err(), CochainError::NotACocycle);
    assert_eq!(solve_delta_h(&some_cocycle(2, 0), false).unwrap_err(), CochainError::DegreeMismatch { expected: 2, got: 1 });
}

#[test]
fn placeholders_bind_late() {
    let spec = ModuleSpec::sym(2);
    let p = Cochain::placeholder("I", 1, spec.clone(), &PeriodScalar::zero());
    let c = some_cocycle(2, 0);
    let e = p.add(&c);
    assert!(matches!(e.evaluate(&[Mat2::S]), Err(CochainError::UnboundPlaceholder(_))));
    let bound = e.bind("I", &c);
    assert_eq!(bound.evaluate(&[Mat2::S]).unwrap(), c.evaluate(&[Mat2::S]).unwrap().scale(&q(2, 1)));
}

#[test]
fn lie_restriction() {
    let spec = ModuleSpec::sym(4);
    let zero = Cochain::cocycle(Elem::zero(spec.clone()), Elem::zero(spec.clone()));
    assert!(restrict_to_lie(&zero, Basis::DeRham).unwrap().is_zero());
    let lc = restrict_to_lie(&some_cocycle(4, 0), Basis::Betti).unwrap();
    let dr = restrict_to_lie(&some_cocycle(4, 0), Basis::DeRham).unwrap();
    assert_eq!(dr.value, lc.value.mul_x_pow(-1));
}

#[test]
fn lie_coboundaries() {
    for m in 0..=6u32 {
        let spec = ModuleSpec::sym(m);
        let wm = LieCochain::new(0, Basis::DeRham, Elem::dr_monomial(spec.clone(), &[0], PeriodScalar::one()));
        let d = lie_coboundary(&wm);
        let want = if m == 0 {
            Elem::zero(spec.clone())
        } else {
            Elem::dr_monomial(spec.clone(), &[1], PeriodScalar::integer(m as i64))
        };
        assert_eq!(d.value, want);
        assert!(d.class().is_zero());
        let am = LieCochain::new(0, Basis::DeRham, Elem::dr_monomial(spec.clone(), &[m], PeriodScalar::one()));
        assert!(lie_coboundary(&am).is_zero());
        let rnd = LieCochain::new(0, Basis::Betti, elem(&spec, m as u64));
        assert!(lie_coboundary(&rnd).class().is_zero());
    }
}

#[test]
fn restriction_induces_mod_im_n_on_cohomology() {
    for m in 0..=12u32 {
        let spec = ModuleSpec::sym(m);
        let v = elem(&spec, 100 + m as u64);
        let dv = Cochain::constant(v).coboundary();
        let r = restrict_to_lie(&dv, Basis::DeRham).unwrap();
        assert!(r.class().is_zero(), "coboundary restricts to a nonzero class, m = {m}");
        if m % 2 == 0 && m > 0 {
            let space = cocycle_space(&spec);
            for z in &space.z1 {
                let c = space.cochain(z);
                let t = c.evaluate(&[Mat2::T]).unwrap();
                let r = restrict_to_lie(&c, Basis::DeRham).unwrap();
                assert_eq!(r.class(), mod_im_n(&t.mul_x_pow(-1)));
            }
        }
    }
}

#[test]
fn lie_cohomology_examples() {
    let s = lie_cohomology(&ModuleSpec::sym(5));
    assert_eq!(s.h0.len(), 1);
    assert_eq!(s.h0[0].iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, _)| i).collect::<Vec<_>>(), vec![5]);
    assert_eq!(s.h1, vec![vec![0]]);
    assert_eq!(s.h1_spec.twist, -1);
    let t = lie_cohomology(&ModuleSpec::trivial());
    assert_eq!((t.h0.len(), t.h1.len(), t.h1_spec.twist), (1, 1, -1));
    for j in 0..=4u32 {
        for k in 0..=4u32 {
            let c = lie_cohomology(&ModuleSpec::tensor2(2 * j, 2 * k));
            // Clebsch–Gordan: one summand S^{2j+2k-2r}, r = 0..2min(j,k)
            assert_eq!(c.h1.len(), 2 * j.min(k) as usize + 1);
            assert_eq!(c.h0.len(), c.h1.len());
        }
    }
}

#[test]
fn cocycle_json() {
    let c = some_cocycle(2, 0);
    let j = cocycle_to_json(&c).unwrap();
    assert!(j.get("S").is_some() && j.get("U").is_some());
    assert!(j["correction"].is_null());
    let back: Elem = serde_json::from_value(j["S"].clone()).unwrap();
    assert_eq!(&back, c.generators().unwrap().0);
    let z = c.cup(&c);
    let h = solve_delta_h(&z, true).unwrap();
    assert_eq!(cocycle_to_json(&h).unwrap()["correction"], "cup(gen, gen)");
}

#[test]
fn numeric_coefficients_work_too() {
    let prec = 128;
    let space = cocycle_space(&ModuleSpec::sym(4));
    let c = space.cochain(&space.z1[0]);
    let (s, u) = c.generators().unwrap();
    let cn = Cochain::cocycle(s.numeric(prec), u.numeric(prec));
    let g = Mat2::new(3, -2, 5, -3);
    let exact = c.evaluate(&[g]).unwrap().numeric(prec);
    let num = cn.evaluate(&[g]).unwrap();
    for (a, b) in exact.coords.iter().zip(&num.coords) {
        assert!(a.sub_ref(b).negligible(a));
    }
    let z = cn.cup(&cn);
    let h = solve_delta_h(&z, false).unwrap();
    let dh = h.coboundary();
    let r = dh.evaluate(&[Mat2::S, Mat2::U]).unwrap().add(&z.evaluate(&[Mat2::S, Mat2::U]).unwrap());
    assert!(r.coords.iter().all(|x| x.negligible(&x.from_rational_like(&q(1, 1)))));
}
