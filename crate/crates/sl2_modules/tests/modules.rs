use exact_core::{bernoulli, factorial, q, PeriodScalar, Rational, RationalMatrix};
use proptest::prelude::*;
use sl2_modules::*;

type Elem = ModuleElement<PeriodScalar>;

fn rat(n: i64) -> PeriodScalar {
    PeriodScalar::integer(n)
}

fn b1() -> Elem {
    Elem::betti_monomial(ModuleSpec::sym(1), &[0], rat(1))
}

fn a1() -> Elem {
    Elem::betti_monomial(ModuleSpec::sym(1), &[1], rat(1))
}

#[test]
fn action_examples() {
    let t_b = b1().act(&Mat2::T).unwrap();
    assert_eq!(t_b, b1().sub(&a1()));
    assert_eq!(a1().act(&Mat2::S).unwrap(), b1().neg());
    let v = Elem::betti_monomial(ModuleSpec::tensor2(2, 3), &[1, 2], PeriodScalar::zeta(3));
    assert_eq!(v.act(&Mat2::IDENTITY).unwrap(), v);
    assert_eq!(v.act(&Mat2::new(2, 0, 0, 1)), Err(ModuleError::NotUnimodular(2)));
}

#[test]
fn s_squared_is_minus_one_on_h() {
    let m = action_matrix(&Mat2::S, &ModuleSpec::sym(1));
    assert_eq!(m.mul(&m), RationalMatrix::identity(2).scale(&q(-1, 1)));
    let u = action_matrix(&Mat2::U, &ModuleSpec::sym(1));
    assert_eq!(u.pow(3), RationalMatrix::identity(2).scale(&q(-1, 1)));
}

fn random_word(seed: &[u8]) -> Vec<Mat2> {
    seed.iter().map(|b| [Mat2::S, Mat2::T, Mat2::S.inv(), Mat2::T.inv()][(*b % 4) as usize]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn action_is_a_homomorphism(w1 in prop::collection::vec(any::<u8>(), 0..8), w2 in prop::collection::vec(any::<u8>(), 0..8), m in 0u32..=12) {
        let g1 = Mat2::product(&random_word(&w1));
        let g2 = Mat2::product(&random_word(&w2));
        let spec = ModuleSpec::sym(m);
        let lhs = action_matrix(&g1.mul(&g2), &spec);
        let rhs = action_matrix(&g1, &spec).mul(&action_matrix(&g2, &spec));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_action_matches_factorwise(w in prop::collection::vec(any::<u8>(), 0..6), m1 in 0u32..=4, m2 in 0u32..=4, seed in any::<u64>()) {
        let g = Mat2::product(&random_word(&w));
        let spec = ModuleSpec::tensor2(m1, m2);
        let coords: Vec<PeriodScalar> = (0..spec.dim()).map(|i| rat(((seed >> (i % 60)) & 7) as i64 - 3)).collect();
        let v = Elem::new(spec.clone(), coords);
        let fast = v.act(&g).unwrap();
        let slow = action_matrix(&g, &spec).apply(&v.coords);
        prop_assert_eq!(fast.coords, slow);
    }
}

#[test]
fn exp_of_n_betti_is_t() {
    for m in 0..=12 {
        let spec = ModuleSpec::sym(m);
        let n = nilpotent_matrix(&spec, Basis::Betti);
        let mut exp = RationalMatrix::identity(spec.dim());
        let mut term = RationalMatrix::identity(spec.dim());
        for k in 1..=m + 1 {
            term = term.mul(&n).scale(&q(1, k as i64));
            exp = exp.add(&term);
        }
        assert_eq!(exp, action_matrix(&Mat2::T, &spec), "m = {m}");
    }
}

#[test]
fn nilpotent_examples() {
    assert_eq!(nilpotent_n(&b1(), Basis::Betti), a1().neg());
    for m in 1..=6 {
        let spec = ModuleSpec::sym(m);
        let wm = Elem::dr_monomial(spec.clone(), &[0], rat(1));
        let expect = Elem::dr_monomial(spec.clone(), &[1], rat(m as i64));
        assert_eq!(nilpotent_n(&wm, Basis::DeRham), expect);
        let am = Elem::betti_monomial(spec, &[m], rat(1));
        assert!(nilpotent_n(&am, Basis::Betti).is_zero());
    }
}

#[test]
fn de_rham_and_betti_nilpotents_differ_by_x() {
    // w = -x b gives N_B(w) = x a, so N_DR = N_B / x.
    for spec in [ModuleSpec::sym(5), ModuleSpec::tensor2(3, 2)] {
        for i in 0..spec.dim() {
            let v = Elem::betti_monomial(spec.clone(), &spec.mono(i), PeriodScalar::zeta(5));
            let dr = nilpotent_n(&v, Basis::DeRham);
            let betti = nilpotent_n(&v, Basis::Betti);
            assert_eq!(dr, betti.mul_x_pow(-1));
        }
    }
}

#[test]
fn de_rham_round_trip() {
    let spec = ModuleSpec::tensor2(3, 2);
    let v = Elem::new(spec.clone(), (0..spec.dim()).map(|i| rat(i as i64 - 4)).collect());
    let back = Elem::from_dr_coords(spec, v.dr_coords());
    assert_eq!(back, v);
    let w = Elem::dr_monomial(ModuleSpec::sym(1), &[0], rat(1));
    assert_eq!(w, b1().mul_x_pow(1).neg());
}

fn random_elem(spec: ModuleSpec, seed: u64) -> Elem {
    let coords = (0..spec.dim())
        .map(|i| {
            let h = seed.wrapping_mul(6364136223846793005).wrapping_add((i as u64).wrapping_mul(1442695040888963407));
            rat(((h >> 33) % 11) as i64 - 5)
        })
        .collect();
    Elem::new(spec, coords)
}

#[test]
fn partial_and_d_embed_are_equivariant() {
    for g in [Mat2::S, Mat2::T] {
        for (m1, m2) in [(1, 1), (3, 2), (4, 4), (6, 2)] {
            let v = random_elem(ModuleSpec::tensor2(m1, m2), (m1 * 10 + m2) as u64);
            let lhs = partial_op(&v.act(&g).unwrap()).unwrap();
            let rhs = partial_op(&v).unwrap().act(&g).unwrap();
            assert_eq!(lhs, rhs);
        }
        for (k, l) in [(0, 1), (2, 2), (4, 3)] {
            let v = random_elem(ModuleSpec::sym(k), (k * 7 + l) as u64);
            let lhs = d_embed(&v.act(&g).unwrap(), l).unwrap();
            let rhs = d_embed(&v, l).unwrap().act(&g).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn partial_examples() {
    let s11 = ModuleSpec::tensor2(1, 1);
    let w_a = Elem::dr_monomial(s11.clone(), &[0, 1], rat(1));
    let out = partial_op(&w_a).unwrap();
    assert_eq!(out, Elem::dr_monomial(ModuleSpec::new(vec![0, 0], -1), &[0, 0], rat(1)));
    let a_a = Elem::dr_monomial(s11, &[1, 1], rat(1));
    assert!(partial_op(&a_a).unwrap().is_zero());
    let too_small = Elem::dr_monomial(ModuleSpec::tensor2(0, 2), &[0, 0], rat(1));
    assert_eq!(partial_op(&too_small), Err(ModuleError::DegreeTooSmall));
}

#[test]
fn d_embed_examples() {
    let one = Elem::betti_monomial(ModuleSpec::sym(0), &[0], rat(1));
    let got = d_embed(&one, 1).unwrap();
    let spec = ModuleSpec::new(vec![1, 1], 1);
    let want = Elem::dr_monomial(spec.clone(), &[0, 1], rat(1)).sub(&Elem::dr_monomial(spec, &[1, 0], rat(1)));
    assert_eq!(got, want);
    let v = random_elem(ModuleSpec::sym(3), 5);
    let d0 = d_embed(&v, 0).unwrap();
    assert_eq!(d0.coords, v.coords);
    assert_eq!(d0.spec.factors, vec![3, 0]);
}

fn fact(n: u32) -> Rational {
    Rational::from(factorial(n))
}

#[test]
fn partial_power_display() {
    for n in 1..10u32 {
        for m in 1..=(10 - n) {
            if m < 1 {
                continue;
            }
            let (hi, lo) = (2 * n + 2 * m - 2, 2 * m - 2);
            let mut v = Elem::dr_monomial(ModuleSpec::tensor2(hi, lo), &[0, lo], rat(1));
            for _ in 0..lo {
                v = partial_op(&v).unwrap();
            }
            let c = fact(lo) * fact(hi) / fact(2 * n);
            let want = Elem::dr_monomial(v.spec.clone(), &[0, 0], PeriodScalar::rational(c));
            assert_eq!(v, want, "n={n} m={m}");
        }
    }
}

#[test]
fn p_r_examples() {
    let (j, k) = (2u32, 1u32);
    let v = Elem::dr_monomial(ModuleSpec::tensor2(2 * j, 2 * k), &[0, 0], rat(1));
    let out = clebsch_projection_p_r(&v, 0).unwrap();
    assert_eq!(out, Elem::dr_monomial(ModuleSpec::sym(2 * j + 2 * k), &[0], rat(1)));
    assert_eq!(clebsch_projection_p_r(&v, 3), Err(ModuleError::ROutOfRange));
    let (n, m) = (2u32, 3u32);
    let v = Elem::dr_monomial(ModuleSpec::tensor2(2 * n + 2 * m - 2, 2 * m - 2), &[0, 2 * m - 2], rat(1));
    let out = clebsch_projection_p_r(&v, 2 * m - 2).unwrap();
    let c = fact(2 * m - 2) * fact(2 * n + 2 * m - 2) / fact(2 * n);
    assert_eq!(out, Elem::dr_monomial(ModuleSpec::new(vec![2 * n], -(2 * m as i32 - 2)), &[0], PeriodScalar::rational(c)));
}

#[test]
fn p_r_kills_out_of_range_weights() {
    // A monomial of sl2 weight outside [-(M-2r), M-2r], M = m1+m2, cannot
    // survive d^r followed by multiplication (weights are preserved).
    let (m1, m2) = (4u32, 2u32);
    let spec = ModuleSpec::tensor2(m1, m2);
    for r in 0..=2u32 {
        let bound = (m1 + m2 - 2 * r) as i32;
        for i in 0..spec.dim() {
            let v = Elem::betti_monomial(spec.clone(), &spec.mono(i), rat(1));
            let out = clebsch_projection_p_r(&v, r).unwrap();
            if spec.weight(i).abs() > bound {
                assert!(out.is_zero());
            }
        }
    }
}

#[test]
fn binom_sum_examples_and_recursion() {
    assert_eq!(binom_sum_f(7, 0), 1);
    assert_eq!(binom_sum_f(0, 6), 7);
    assert_eq!(binom_sum_f(2, 2), q(5, 3));
    for k in 0..=30u32 {
        for l in 0..=30u32 {
            assert_eq!(binom_sum_f(k, l), Rational::from((k + l + 1, k + 1)));
            if k >= 1 && l >= 1 {
                let lhs = Rational::from(k + l) * binom_sum_f(k, l);
                let rhs = Rational::from(k) * binom_sum_f(k - 1, l) + Rational::from(l) * binom_sum_f(k, l - 1);
                assert_eq!(lhs, rhs);
            }
        }
    }
}

/// sl2 grading oracle: on `S^m H`, `a^i b^{m-i}` has weight `m - 2i` and
/// `M_k` is spanned by the monomials of weight at most `k`.
fn graded_filtration_dims(m: u32, k: i32) -> usize {
    (0..=m).filter(|&i| m as i32 - 2 * i as i32 <= k).count()
}

fn span_contains(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    if basis.is_empty() {
        return v.iter().all(|c| *c == 0);
    }
    let m = RationalMatrix::from_rows(basis.to_vec());
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    RationalMatrix::from_rows(rows).rank() == m.rank()
}

#[test]
fn weight_filtration_matches_sl2_grading() {
    for m in 0..=10u32 {
        for basis in [Basis::Betti, Basis::DeRham] {
            let spec = ModuleSpec::sym(m);
            let n = nilpotent_matrix(&spec, basis);
            let f = weight_filtration(&n, 0).unwrap();
            for k in -(m as i32) - 2..=(m as i32) + 2 {
                let sub = f.subspace(k);
                assert_eq!(sub.len(), graded_filtration_dims(m, k), "m={m} k={k}");
                for i in 0..=m {
                    if (m as i32 - 2 * i as i32) <= k {
                        let mut e = vec![Rational::new(); spec.dim()];
                        e[i as usize] = Rational::from(1);
                        assert!(span_contains(&sub, &e));
                    }
                }
                // N M_k ⊆ M_{k-2}
                let lower = f.subspace(k - 2);
                for v in &sub {
                    assert!(span_contains(&lower, &n.mul_vec(v)));
                }
            }
            // N^k : Gr_k -> Gr_{-k} is an isomorphism.
            for k in 1..=m as i32 {
                let gr_dim = f.dim_at(k) - f.dim_at(k - 1);
                let gr_neg = f.dim_at(-k) - f.dim_at(-k - 1);
                assert_eq!(gr_dim, gr_neg);
                let nk = n.pow(k as u32);
                let mut imgs = f.subspace(-k - 1);
                imgs.extend(f.subspace(k).iter().map(|v| nk.mul_vec(v)));
                let r = if imgs.is_empty() { 0 } else { RationalMatrix::from_rows(imgs).rank() };
                assert_eq!(r, f.dim_at(-k), "m={m} k={k}");
            }
        }
    }
}

#[test]
fn footnote_example_on_h() {
    let n = nilpotent_matrix(&ModuleSpec::sym(1), Basis::Betti);
    let f = weight_filtration(&n, 1).unwrap();
    assert_eq!(f.jumps.len(), 2);
    assert_eq!(f.jumps[0].0, 0);
    assert_eq!(f.jumps[1].0, 2);
    assert_eq!(f.dim_at(-1), 0);
    assert_eq!(f.dim_at(1), 1);
    let im_n = n.transpose().row_basis();
    assert_eq!(f.subspace(0), im_n);
    assert_eq!(f.subspace(0), vec![vec![Rational::new(), Rational::from(1)]]);
}

#[test]
fn s2_filtration_jumps() {
    let n = nilpotent_matrix(&ModuleSpec::sym(2), Basis::Betti);
    let f = weight_filtration(&n, 0).unwrap();
    let idx: Vec<i32> = f.jumps.iter().map(|j| j.0).collect();
    assert_eq!(idx, vec![-2, 0, 2]);
    assert_eq!(f.subspace(-2), vec![vec![Rational::new(), Rational::new(), Rational::from(1)]]);
}

#[test]
fn trivial_nilpotent_has_single_jump() {
    let f = weight_filtration(&RationalMatrix::zeros(3, 3), 4).unwrap();
    assert_eq!(f.jumps.len(), 1);
    assert_eq!(f.jumps[0].0, 4);
    assert_eq!(f.jumps[0].1.len(), 3);
    let not_nil = RationalMatrix::identity(2);
    assert_eq!(weight_filtration(&not_nil, 0), Err(ModuleError::NotNilpotent));
}

#[test]
fn mod_im_n_examples() {
    for m in 0..=6 {
        let wm = Elem::dr_monomial(ModuleSpec::sym(m), &[0], rat(1));
        let c = mod_im_n(&wm);
        assert_eq!(c.terms(), vec![(vec![0], rat(1))]);
        assert_eq!(c.support, vec![0]);
    }
    for (n, m) in [(1u32, 2u32), (2, 3), (3, 2)] {
        let (hi, lo) = (2 * n + 2 * m - 2, 2 * m - 2);
        let v = Elem::dr_monomial(ModuleSpec::tensor2(hi, lo), &[hi, 0], rat(1));
        assert!(mod_im_n(&v).is_zero());
    }
}

#[test]
fn lemma_polynomial_model() {
    // Modulo im N, a^j w^{k+l-j} ⊗ a^{l-j} w^j ≡ (-1)^j / C(k+l, j) · w^{k+l} ⊗ a^l.
    for (k, l) in [(2u32, 2u32), (3, 4), (5, 1), (0, 3)] {
        let spec = ModuleSpec::tensor2(k + l, l);
        let top = mod_im_n(&Elem::dr_monomial(spec.clone(), &[0, l], rat(1)));
        for j in 0..=l {
            let mono = Elem::dr_monomial(spec.clone(), &[j, l - j], rat(1));
            let c = mod_im_n(&mono);
            let ratio = Rational::from((1, exact_core::binomial((k + l) as i64, j as i64))) * if j % 2 == 0 { 1 } else { -1 };
            assert_eq!(c, top.scale(&ratio), "k={k} l={l} j={j}");
        }
    }
}

#[test]
fn lemma_h_wt_full_range() {
    for total in 0..=30u32 {
        for l in 0..=total {
            let k = total - l;
            let wk = Elem::dr_monomial(ModuleSpec::sym(k), &[0], rat(1));
            let lhs = mod_im_n(&d_embed(&wk, l).unwrap());
            let top = Elem::dr_monomial(ModuleSpec::new(vec![k + l, l], l as i32), &[0, l], rat(1));
            let rhs = mod_im_n(&top).scale(&Rational::from((k + l + 1, k + 1)));
            assert_eq!(lhs, rhs, "k={k} l={l}");
        }
    }
}

#[test]
fn bernoulli_available_downstream() {
    assert_eq!(bernoulli(4), q(-1, 30));
}

#[test]
fn element_json_round_trip() {
    let spec = ModuleSpec::new(vec![2, 1], 3);
    let v = Elem::betti_monomial(spec.clone(), &[1, 0], PeriodScalar::zeta(3)).add(&Elem::betti_monomial(spec, &[2, 1], PeriodScalar::x_pow(-2)));
    let s = serde_json::to_string(&v).unwrap();
    assert!(s.starts_with(r#"{"spec":{"factors":[2,1],"twist":3},"coords":[{"mono":[1,0],"#));
    let back: Elem = serde_json::from_str(&s).unwrap();
    assert_eq!(back, v);
    assert!(v.coords[0].is_zero());
}
