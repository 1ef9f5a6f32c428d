use std::collections::BTreeMap;
use std::fmt::Debug;

use rug::{Float, Rational};

use crate::linalg::RationalMatrix;
use crate::numeric::Complex;
use crate::period::{PeriodMonomial, PeriodScalar};

/// Coefficient rings for module elements: the exact period ring, or
/// high-precision complex numbers.
///
/// Constructors take `&self` because a complex zero has to know its
/// precision.
pub trait Coef: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational_like(&self, q: &Rational) -> Self;
    /// `(2πi)^k` in this ring.
    fn x_pow_like(&self, k: i32) -> Self;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    fn conj(&self) -> Self;

    /// `self += q * v`.
    fn axpy(&mut self, q: &Rational, v: &Self) {
        if *q != 0 {
            *self = self.add_ref(&v.scale(q));
        }
    }

    fn imaginary_part(&self) -> Self {
        self.sub_ref(&self.conj()).scale(&Rational::from((1, 2)))
    }

    /// Zero up to the working tolerance, measured against `reference`.
    fn negligible(&self, _reference: &Self) -> bool {
        self.is_zero()
    }

    /// Whether the value lies in the rational lattice. Numeric values never do.
    fn is_rational(&self) -> bool {
        false
    }

    /// A solution of `m * y = b` with the rational matrix `m`, or `None` if
    /// the system is inconsistent.
    fn solve_rational_system(m: &RationalMatrix, b: &[Self]) -> Option<Vec<Self>>;
}

impl Coef for PeriodScalar {
    fn zero_like(&self) -> Self {
        PeriodScalar::zero()
    }
    fn is_zero(&self) -> bool {
        PeriodScalar::is_zero(self)
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        PeriodScalar::rational(q.clone())
    }
    fn x_pow_like(&self, k: i32) -> Self {
        PeriodScalar::x_pow(k)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, q: &Rational) -> Self {
        PeriodScalar::scale(self, q)
    }
    fn conj(&self) -> Self {
        PeriodScalar::conj(self)
    }
    fn axpy(&mut self, q: &Rational, v: &Self) {
        if *q != 0 {
            *self += &v.scale(q);
        }
    }
    fn imaginary_part(&self) -> Self {
        PeriodScalar::imaginary_part(self)
    }
    fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Solved one period monomial at a time, since `m` is rational.
    fn solve_rational_system(m: &RationalMatrix, b: &[Self]) -> Option<Vec<Self>> {
        let mut by_mono: BTreeMap<PeriodMonomial, Vec<Rational>> = BTreeMap::new();
        for (row, v) in b.iter().enumerate() {
            for (mono, c) in v.terms() {
                by_mono.entry(mono.clone()).or_insert_with(|| vec![Rational::new(); b.len()])[row] = c.clone();
            }
        }
        let mut out = vec![PeriodScalar::zero(); m.cols()];
        for (mono, rhs) in by_mono {
            let sol = m.solve(&rhs).ok()?;
            for (o, c) in out.iter_mut().zip(sol) {
                *o += &PeriodScalar::term(mono.clone(), c);
            }
        }
        Some(out)
    }
}

impl Coef for Complex {
    fn zero_like(&self) -> Self {
        Complex::zero(self.prec())
    }
    fn is_zero(&self) -> bool {
        Complex::is_zero(self)
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        Complex::from_rational(q, self.prec())
    }
    fn x_pow_like(&self, k: i32) -> Self {
        Complex::two_pi_i(self.prec()).powi(k)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, q: &Rational) -> Self {
        self.mul_rational(q)
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn imaginary_part(&self) -> Self {
        Complex { re: Float::new(self.prec()), im: self.im.clone() }
    }

    /// `|self| <= 2^-(prec-32) * max(1, |reference|)`.
    fn negligible(&self, reference: &Self) -> bool {
        let p = self.prec();
        let mut r = reference.abs();
        if r < 1 {
            r = Float::with_val(p, 1);
        }
        let tol = r * Float::with_val(p, Float::i_exp(1, -(p as i32 - 32)));
        self.abs() <= tol
    }

    /// Gaussian elimination with partial pivoting. Rows whose pivot falls
    /// below `2^(-prec/2)` times the largest entry count as zero; they must
    /// then carry a negligible right-hand side.
    fn solve_rational_system(m: &RationalMatrix, b: &[Self]) -> Option<Vec<Self>> {
        let prec = b.first().map(|c| c.prec()).unwrap_or(64);
        let a: Vec<Vec<Complex>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| Complex::from_rational(m.get(i, j), prec)).collect())
            .collect();
        solve_complex(a, b.to_vec())
    }
}

/// Dense complex solve used for rational and complex matrices alike.
pub fn solve_complex(mut a: Vec<Vec<Complex>>, mut b: Vec<Complex>) -> Option<Vec<Complex>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let prec = b.first().map(|c| c.prec()).unwrap_or(64);
    let mut scale = Float::new(prec);
    for row in &a {
        for v in row {
            let m = v.max_abs();
            if m > scale {
                scale = m;
            }
        }
    }
    let tiny = Float::with_val(prec, &scale * Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 2)));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (best, best_abs) = (r..rows)
            .map(|i| (i, a[i][c].max_abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .unwrap();
        if best_abs <= tiny {
            continue;
        }
        a.swap(r, best);
        b.swap(r, best);
        let inv = a[r][c].recip();
        for j in c..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] = &a[i][j] - &t;
                }
                let t = &f * &b[r];
                b[i] = &b[i] - &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut bscale = Float::with_val(prec, 1);
    for v in &b {
        let m = v.max_abs();
        if m > bscale {
            bscale = m;
        }
    }
    let btiny = Float::with_val(prec, &bscale * Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 2)));
    for v in &b[r..] {
        if v.max_abs() > btiny {
            return None;
        }
    }
    let mut x = vec![Complex::zero(prec); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = b[i].clone();
    }
    Some(x)
}
