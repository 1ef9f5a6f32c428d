use rug::Rational;

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
///
/// Akiyama–Tanigawa produces `B_1 = +1/2`; the sign is flipped afterwards so
/// that `sum_{k<=n} C(n+1,k) B_k = 0` holds for every `n >= 1`.
pub fn bernoulli_table(n: usize) -> Vec<Rational> {
    let mut a: Vec<Rational> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(Rational::from((1, m as u64 + 1)));
        for j in (1..=m).rev() {
            let diff = Rational::from(&a[j - 1] - &a[j]);
            a[j - 1] = diff * Rational::from(j as u64);
        }
        out.push(a[0].clone());
    }
    if n >= 1 {
        out[1] = -out[1].clone();
    }
    out
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_table(n).pop().unwrap()
}
