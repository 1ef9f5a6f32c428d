use exact_core::rug::ops::Pow;
use exact_core::{bernoulli, Integer, Rational, RationalMatrix};

use crate::EisError;

/// A truncated q-expansion `Σ_{n ≤ order} coeffs[n] q^n` of a level-one form.
#[derive(Clone, Debug, PartialEq)]
pub struct QExpansion {
    pub weight: u32,
    pub coeffs: Vec<Rational>,
}

impl QExpansion {
    pub fn new(weight: u32, coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty());
        QExpansion { weight, coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        QExpansion { weight: self.weight, coeffs: self.coeffs[..=n].to_vec() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut coeffs = vec![Rational::new(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.coeffs[..=n - i].iter().enumerate() {
                coeffs[i + j] += Rational::from(a * b);
            }
        }
        QExpansion { weight: self.weight + o.weight, coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QExpansion::new(0, {
            let mut c = vec![Rational::new(); self.coeffs.len()];
            c[0] = Rational::from(1);
            c
        });
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.weight, o.weight, "adding forms of different weight");
        let n = self.order().min(o.order());
        QExpansion { weight: self.weight, coeffs: (0..=n).map(|i| Rational::from(&self.coeffs[i] + &o.coeffs[i])).collect() }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        QExpansion { weight: self.weight, coeffs: self.coeffs.iter().map(|c| Rational::from(c * q)).collect() }
    }

    pub fn is_cuspidal(&self) -> bool {
        self.coeffs[0] == 0
    }
}

/// `σ_k(n) = Σ_{d | n} d^k`.
pub fn sigma(k: u32, n: u64) -> Integer {
    let mut s = Integer::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += Integer::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += Integer::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

fn check_weight(k: u32) -> Result<(), EisError> {
    if k < 4 || k % 2 == 1 {
        return Err(EisError::OddOrSmallWeight(k));
    }
    Ok(())
}

/// `G_k = -B_k/(2k) + Σ σ_{k-1}(n) q^n`.
pub fn eisenstein_q(k: u32, order: usize) -> Result<QExpansion, EisError> {
    check_weight(k)?;
    let mut coeffs = vec![-bernoulli(k as usize) / Rational::from(2 * k)];
    coeffs.extend((1..=order as u64).map(|n| Rational::from(sigma(k - 1, n))));
    Ok(QExpansion::new(k, coeffs))
}

/// `E_k = G_k / G_k(0)`, constant term one.
pub fn normalized_eisenstein(k: u32, order: usize) -> Result<QExpansion, EisError> {
    let g = eisenstein_q(k, order)?;
    let c = g.coeffs[0].clone();
    Ok(g.scale(&(Rational::from(1) / c)))
}

/// `Δ = (E_4^3 - E_6^2) / 1728`.
pub fn delta(order: usize) -> QExpansion {
    let e4 = normalized_eisenstein(4, order).unwrap();
    let e6 = normalized_eisenstein(6, order).unwrap();
    e4.pow(3).add(&e6.pow(2).scale(&Rational::from(-1))).scale(&Rational::from((1, 1728)))
}

/// The products `Δ E_4^a E_6^b` with `4a + 6b = k - 12`, which span `S_k`.
fn cusp_spanning_set(k: u32, order: usize) -> Vec<QExpansion> {
    if k < 12 {
        return vec![];
    }
    let e4 = normalized_eisenstein(4, order).unwrap();
    let e6 = normalized_eisenstein(6, order).unwrap();
    let d = delta(order);
    let rest = k - 12;
    (0..=rest / 6)
        .filter(|b| (rest - 6 * b).is_multiple_of(4))
        .map(|b| d.mul(&e4.pow((rest - 6 * b) / 4)).mul(&e6.pow(b)))
        .collect()
}

/// Victor Miller basis of `S_k`: the echelon form `f_i = q^i + O(q^{d+1})`.
/// With one-dimensional `S_k` this is the normalized Hecke eigenform.
pub fn cusp_basis(k: u32, order: usize) -> Result<Vec<QExpansion>, EisError> {
    check_weight(k)?;
    let span = cusp_spanning_set(k, order);
    if span.is_empty() {
        return Ok(vec![]);
    }
    let rows: Vec<Vec<Rational>> = span.iter().map(|f| f.coeffs.clone()).collect();
    let (red, _) = RationalMatrix::from_rows(rows).rref();
    if red.rows() < span.len() && order <= (k / 12) as usize {
        return Err(EisError::Precondition(format!("order {order} too small to separate weight {k} cusp forms")));
    }
    Ok((0..red.rows()).map(|i| QExpansion::new(k, red.row(i).to_vec())).collect())
}

/// `dim S_k`, as the rank of the spanning products' q-expansions.
pub fn dim_s(k: u32) -> Result<usize, EisError> {
    check_weight(k)?;
    let order = (k / 12) as usize + 3;
    let span = cusp_spanning_set(k, order);
    if span.is_empty() {
        return Ok(0);
    }
    Ok(RationalMatrix::from_rows(span.iter().map(|f| f.coeffs.clone()).collect()).rank())
}
