use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::{Float, Integer, Rational};

/// Extra working bits used by every routine that hands back a rounded value.
pub const GUARD_BITS: u32 = 32;

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// `zeta(n)` for an integer `n >= 2`, correctly rounded by MPFR.
pub fn zeta_value(n: u32, prec: u32) -> Float {
    Float::with_val(prec, Float::zeta_u(n))
}

pub fn two_pi_i(prec: u32) -> Complex {
    Complex::two_pi_i(prec)
}

/// A complex number as a pair of MPFR floats sharing one precision.
#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re.to_string_radix(10, Some(20)), self.im.to_string_radix(10, Some(20)))
    }
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        let p = re.prec().max(im.prec());
        Complex { re: Float::with_val(p, re), im: Float::with_val(p, im) }
    }

    pub fn zero(prec: u32) -> Self {
        Complex { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Complex { re: Float::with_val(prec, 1), im: Float::new(prec) }
    }

    pub fn i(prec: u32) -> Self {
        Complex { re: Float::new(prec), im: Float::with_val(prec, 1) }
    }

    pub fn from_real(re: Float) -> Self {
        let p = re.prec();
        Complex { re, im: Float::new(p) }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        Complex { re: Float::with_val(prec, q), im: Float::new(prec) }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Complex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn two_pi_i(prec: u32) -> Self {
        let mut im = pi(prec);
        im *= 2;
        Complex { re: Float::new(prec), im }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Complex { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Complex { re: self.re.clone(), im: Float::with_val(self.prec(), -&self.im) }
    }

    pub fn abs(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.hypot_ref(&self.im))
    }

    pub fn mul_real(&self, r: &Float) -> Self {
        let p = self.prec();
        Complex { re: Float::with_val(p, &self.re * r), im: Float::with_val(p, &self.im * r) }
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        let p = self.prec();
        Complex { re: Float::with_val(p, &self.re * q), im: Float::with_val(p, &self.im * q) }
    }

    pub fn mul_i(&self) -> Self {
        Complex { re: Float::with_val(self.prec(), -&self.im), im: self.re.clone() }
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let n = Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref());
        Complex { re: Float::with_val(p, &self.re / &n), im: -Float::with_val(p, &self.im / &n) }
    }

    pub fn powi(&self, k: i32) -> Self {
        let p = self.prec();
        if k < 0 {
            return self.recip().powi(-k);
        }
        let mut base = self.clone();
        let mut out = Complex::one(p);
        let mut e = k as u32;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        out
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Complex { re: Float::with_val(p, &r * &c), im: Float::with_val(p, &r * &s) }
    }

    /// `max(|re|, |im|)`, a cheap norm used for tolerances.
    pub fn max_abs(&self) -> Float {
        let a = Float::with_val(self.prec(), self.re.abs_ref());
        let b = Float::with_val(self.prec(), self.im.abs_ref());
        if a > b { a } else { b }
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        let p = self.prec().max(o.prec());
        Complex { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        let p = self.prec().max(o.prec());
        Complex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        let p = self.prec().max(o.prec());
        let rr = Float::with_val(p, &self.re * &o.re);
        let ii = Float::with_val(p, &self.im * &o.im);
        let ri = Float::with_val(p, &self.re * &o.im);
        let ir = Float::with_val(p, &self.im * &o.re);
        Complex { re: rr - ii, im: ri + ir }
    }
}

impl Div for &Complex {
    type Output = Complex;
    fn div(self, o: &Complex) -> Complex {
        self * &o.recip()
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        let p = self.prec();
        Complex { re: Float::with_val(p, -&self.re), im: Float::with_val(p, -&self.im) }
    }
}

/// Best rational approximation of `v` with denominator at most `max_den`,
/// from the continued-fraction convergents. Returns `None` if no convergent
/// is within `tol` of `v`.
pub fn rationalize(v: &Float, max_den: &Integer, tol: &Float) -> Option<Rational> {
    let prec = v.prec();
    let mut rest = v.clone();
    let (mut p0, mut q0) = (Integer::from(0), Integer::from(1));
    let (mut p1, mut q1) = (Integer::from(1), Integer::from(0));
    for _ in 0..(prec as usize) {
        let a = rest.clone().floor().to_integer()?;
        let p2 = Integer::from(&a * &p1) + &p0;
        let q2 = Integer::from(&a * &q1) + &q0;
        if q2 > *max_den {
            break;
        }
        let cand = Rational::from((p2.clone(), q2.clone()));
        let err = Float::with_val(prec, v - &cand).abs();
        if err <= *tol {
            return Some(cand);
        }
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = Float::with_val(prec, &rest - &a);
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
    }
    None
}
