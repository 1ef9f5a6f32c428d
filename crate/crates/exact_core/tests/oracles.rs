use exact_core::*;
use proptest::prelude::*;
use exact_core::rug::ops::Pow;

/// Bernoulli numbers from `sum_{k<=n} C(n+1,k) B_k = 0`, solved forward.
fn bernoulli_by_recurrence(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::from(1)];
    for m in 1..=n {
        let mut s = Rational::new();
        for (k, bk) in b.iter().enumerate() {
            s += Rational::from(binomial(m as i64 + 1, k as i64)) * bk;
        }
        b.push(-s / Rational::from(m as u64 + 1));
    }
    b
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[test]
fn bernoulli_matches_recurrence_oracle() {
    let ours = bernoulli_table(60);
    assert_eq!(ours, bernoulli_by_recurrence(60));
    assert_eq!(ours[1], q(-1, 2));
    assert_eq!(ours[12], q(-691, 2730));
}

#[test]
fn bernoulli_recurrence_holds_exactly() {
    let b = bernoulli_table(61);
    for n in 1..=60i64 {
        let mut s = Rational::new();
        for k in 0..=n {
            s += Rational::from(binomial(n + 1, k)) * &b[k as usize];
        }
        assert_eq!(s, 0, "n = {n}");
    }
}

#[test]
fn von_staudt_clausen_denominators() {
    // B_{2n} + sum_{(p-1) | 2n} 1/p is an integer.
    let b = bernoulli_table(60);
    for n in (2..=60).step_by(2) {
        let mut s = b[n].clone();
        for p in 2..=(n as u64 + 1) {
            if is_prime(p) && (n as u64).is_multiple_of(p - 1) {
                s += Rational::from((1, p));
            }
        }
        assert_eq!(*s.denom(), 1, "B_{n}");
    }
}

/// Machin: pi = 16 atan(1/5) - 4 atan(1/239), with exact rational partial sums.
fn machin_pi(prec: u32) -> Float {
    let atan_inv = |x: u64| {
        let mut s = Rational::new();
        let x2 = Integer::from(x * x);
        let mut pw = Integer::from(x);
        let terms = (prec as f64 / (2.0 * (x as f64).log2())) as u64 + 4;
        for k in 0..terms {
            let t = Rational::from((Integer::from(1), Integer::from(&pw * (2 * k + 1))));
            if k % 2 == 0 { s += t } else { s -= t }
            pw *= &x2;
        }
        s
    };
    let v = atan_inv(5) * 16u32 - atan_inv(239) * 4u32;
    Float::with_val(prec, v)
}

/// Borwein's accelerated alternating series for zeta(s).
fn borwein_zeta(s: u32, prec: u32) -> Float {
    let n = (prec as f64 / 2.5) as u64 + 10;
    let mut d = Vec::with_capacity(n as usize + 1);
    let mut acc = Rational::new();
    for i in 0..=n {
        let num = Integer::from(Integer::factorial((n + i - 1) as u32)) * Integer::from(4u32).pow(i as u32);
        let den = Integer::from(Integer::factorial((n - i) as u32)) * Integer::from(Integer::factorial((2 * i) as u32));
        acc += Rational::from((num * n, den));
        d.push(acc.clone());
    }
    let dn = d[n as usize].clone();
    let mut sum = Rational::new();
    for k in 0..n {
        let t = (Rational::from(&d[k as usize] - &dn)) / Rational::from(Integer::from(k + 1).pow(s));
        if k % 2 == 0 { sum += t } else { sum -= t }
    }
    let eta = -sum / dn;
    let f = Float::with_val(prec, eta);
    let two = Float::with_val(prec, 2);
    let one_minus = Float::with_val(prec, 1) - two.pow(1 - s as i32);
    f / one_minus
}

fn rel_close(a: &Float, b: &Float, bits: i32) -> bool {
    let d = Float::with_val(a.prec(), a - b).abs();
    let scale = Float::with_val(a.prec(), b.abs_ref());
    d <= scale * Float::with_val(a.prec(), Float::i_exp(1, -bits))
}

#[test]
fn pi_against_machin() {
    for prec in [128u32, 256, 512] {
        assert!(rel_close(&pi(prec), &machin_pi(prec + 16), prec as i32 - 2));
    }
}

#[test]
fn zeta_against_borwein() {
    for s in [3u32, 5, 7, 11, 13] {
        let ours = zeta_value(s, 256);
        assert!(rel_close(&ours, &borwein_zeta(s, 300), 250), "zeta({s})");
    }
    let z3 = zeta_value(3, 64).to_f64();
    assert!((z3 - 1.2020569031595942).abs() < 1e-15);
}

#[test]
fn numeric_eval_examples() {
    let x = PeriodScalar::x().numeric_eval(128);
    let mut two_pi = machin_pi(200);
    two_pi *= 2;
    assert!(x.re.is_zero());
    assert!(rel_close(&x.im, &two_pi, 126));
    let one = PeriodScalar::one().numeric_eval(128);
    assert_eq!(one.re, 1);
    assert!(one.im.is_zero());
}

fn scalar_strategy() -> impl Strategy<Value = PeriodScalar> {
    let term = (-3i32..=3, prop::collection::vec(prop::sample::select(vec![3u32, 5, 7]), 0..3), -9i64..=9, 1i64..=6);
    prop::collection::vec(term, 0..5).prop_map(|ts| {
        let mut v = PeriodScalar::zero();
        for (t, z, n, d) in ts {
            v += &PeriodScalar::term(PeriodMonomial::new(t, z), q(n, d));
        }
        v
    })
}

proptest! {
    #[test]
    fn conjugation_is_an_involutive_ring_map(u in scalar_strategy(), v in scalar_strategy()) {
        prop_assert_eq!((&u * &v).conj(), &u.conj() * &v.conj());
        prop_assert_eq!((&u + &v).conj(), &u.conj() + &v.conj());
        prop_assert_eq!(u.conj().conj(), u.clone());
        let half_sum = (&u + &u.conj()).scale(&q(1, 2));
        prop_assert_eq!(&u.imaginary_part() + &half_sum, u.clone());
    }

    #[test]
    fn ring_axioms(u in scalar_strategy(), v in scalar_strategy(), w in scalar_strategy()) {
        prop_assert_eq!(&u * &v, &v * &u);
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
        prop_assert_eq!(&u * &(&v + &w), &(&u * &v) + &(&u * &w));
        prop_assert_eq!(&u * &PeriodScalar::one(), u.clone());
    }

    #[test]
    fn tate_reduction_is_idempotent(u in scalar_strategy(), r in -3i32..=3) {
        let once = u.reduce_mod_tate(r);
        prop_assert_eq!(once.reduce_mod_tate(r), once.clone());
        prop_assert!((&u - &once).terms().all(|(m, _)| m.twist == r && m.zetas.is_empty()));
    }

    #[test]
    fn numeric_eval_is_multiplicative(u in scalar_strategy(), v in scalar_strategy()) {
        let p = 160;
        let lhs = (&u * &v).numeric_eval(p);
        let rhs = &u.numeric_eval(p) * &v.numeric_eval(p);
        let diff = (&lhs - &rhs).max_abs();
        let scale = Float::with_val(p, 1) + lhs.max_abs();
        prop_assert!(diff <= scale * Float::with_val(p, Float::i_exp(1, -(p as i32) + 40)));
    }

    #[test]
    fn json_round_trip(u in scalar_strategy()) {
        let s = serde_json::to_string(&u).unwrap();
        let back: PeriodScalar = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, u);
    }

    #[test]
    fn rref_is_idempotent_and_solve_is_exact(
        entries in prop::collection::vec(-4i64..=4, 12),
        rhs in prop::collection::vec(-4i64..=4, 3),
    ) {
        let rows: Vec<Vec<Rational>> = entries.chunks(4).map(|c| c.iter().map(|&v| Rational::from(v)).collect()).collect();
        let m = RationalMatrix::from_rows(rows);
        let (r, piv) = m.rref();
        prop_assert!(piv.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(r.rref().0, r.clone());
        for k in m.kernel() {
            prop_assert!(m.mul_vec(&k).iter().all(|c| *c == 0));
        }
        prop_assert_eq!(m.kernel().len() + piv.len(), 4);
        let b: Vec<Rational> = rhs.iter().map(|&v| Rational::from(v)).collect();
        match m.solve(&b) {
            Ok(y) => prop_assert_eq!(m.mul_vec(&y), b),
            Err(LinalgError::Inconsistent) => prop_assert!(m.rank() < m.hstack(&RationalMatrix::from_columns(std::slice::from_ref(&b), 3)).rank()),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn period_solve_is_componentwise() {
    let m = RationalMatrix::from_i64(&[&[2, 0], &[0, 3]]);
    let b = vec![PeriodScalar::zeta(3), &PeriodScalar::x_pow(2) + &PeriodScalar::one()];
    let y = PeriodScalar::solve_rational_system(&m, &b).unwrap();
    assert_eq!(y[0], PeriodScalar::zeta(3).scale(&q(1, 2)));
    assert_eq!(y[1], (&PeriodScalar::x_pow(2) + &PeriodScalar::one()).scale(&q(1, 3)));
}
