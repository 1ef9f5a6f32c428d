use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use rug::Rational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::numeric::{zeta_value, Complex, GUARD_BITS};
use crate::rational::parse_rational;

/// `x^twist * prod zeta(z)` with the zeta arguments sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeriodMonomial {
    pub twist: i32,
    pub zetas: Vec<u32>,
}

impl PeriodMonomial {
    pub fn new(twist: i32, mut zetas: Vec<u32>) -> Self {
        for &z in &zetas {
            assert!(z >= 3 && z % 2 == 1, "zeta({z}) is not an odd value >= 3");
        }
        zetas.sort_unstable();
        PeriodMonomial { twist, zetas }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut zetas = self.zetas.clone();
        zetas.extend_from_slice(&other.zetas);
        zetas.sort_unstable();
        PeriodMonomial { twist: self.twist + other.twist, zetas }
    }
}

/// Element of `Q[x, 1/x][zeta(3), zeta(5), ...]`, `x = 2πi`, with the zeta
/// symbols algebraically free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PeriodScalar {
    terms: BTreeMap<PeriodMonomial, Rational>,
}

impl PeriodScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(Rational::from(1))
    }

    pub fn rational(q: Rational) -> Self {
        Self::term(PeriodMonomial::new(0, vec![]), q)
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(Rational::from(n))
    }

    pub fn term(mono: PeriodMonomial, coef: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if coef != 0 {
            terms.insert(mono, coef);
        }
        PeriodScalar { terms }
    }

    /// `x^k`.
    pub fn x_pow(k: i32) -> Self {
        Self::term(PeriodMonomial::new(k, vec![]), Rational::from(1))
    }

    pub fn x() -> Self {
        Self::x_pow(1)
    }

    /// The symbol `zeta(n)` for odd `n >= 3`.
    pub fn zeta(n: u32) -> Self {
        Self::term(PeriodMonomial::new(0, vec![n]), Rational::from(1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PeriodMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &PeriodMonomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// The value as a plain rational, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::new()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.twist == 0 && m.zetas.is_empty()).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, mono: PeriodMonomial, coef: &Rational) {
        if *coef == 0 {
            return;
        }
        let entry = self.terms.entry(mono.clone()).or_default();
        *entry += coef;
        if *entry == 0 {
            self.terms.remove(&mono);
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if *q == 0 {
            return Self::zero();
        }
        PeriodScalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::from(c * q)))
                .collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        PeriodScalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (PeriodMonomial { twist: m.twist + k, zetas: m.zetas.clone() }, c.clone())
                })
                .collect(),
        }
    }

    /// Complex conjugation: `x` is imaginary, the zeta values are real.
    pub fn conj(&self) -> Self {
        PeriodScalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if m.twist.rem_euclid(2) == 1 { Rational::from(-c) } else { c.clone() };
                    (m.clone(), c)
                })
                .collect(),
        }
    }

    fn parity_part(&self, odd: bool) -> Self {
        PeriodScalar {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| (m.twist.rem_euclid(2) == 1) == odd)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `(v - conj v) / 2`: the odd-twist part.
    pub fn imaginary_part(&self) -> Self {
        self.parity_part(true)
    }

    /// `(v + conj v) / 2`.
    pub fn real_part(&self) -> Self {
        self.parity_part(false)
    }

    /// Drop the lattice term `x^r` (coefficient of `x^r` with no zeta factor).
    pub fn reduce_mod_tate(&self, r: i32) -> Self {
        let mut out = self.clone();
        out.terms.remove(&PeriodMonomial { twist: r, zetas: vec![] });
        out
    }

    /// Substitute `x = 2πi` and the numerical zeta values.
    ///
    /// Everything is evaluated with `GUARD_BITS` extra bits and rounded to
    /// `precision_bits`; the relative error of each term is below
    /// `2^(GUARD_BITS - precision_bits)` after cancellation-free summation.
    pub fn numeric_eval(&self, precision_bits: u32) -> Complex {
        assert!(precision_bits >= 64, "numeric_eval needs at least 64 bits");
        let work = precision_bits + GUARD_BITS;
        let x = Complex::two_pi_i(work);
        let mut acc = Complex::zero(work);
        let mut zeta_cache: BTreeMap<u32, rug::Float> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = x.powi(m.twist);
            for &z in &m.zetas {
                let zv = zeta_cache.entry(z).or_insert_with(|| zeta_value(z, work)).clone();
                t = t.mul_real(&zv);
            }
            acc = &acc + &t.mul_rational(c);
        }
        acc.with_prec(precision_bits)
    }
}

impl From<Rational> for PeriodScalar {
    fn from(q: Rational) -> Self {
        PeriodScalar::rational(q)
    }
}

impl From<i64> for PeriodScalar {
    fn from(n: i64) -> Self {
        PeriodScalar::integer(n)
    }
}

impl AddAssign<&PeriodScalar> for PeriodScalar {
    fn add_assign(&mut self, rhs: &PeriodScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&PeriodScalar> for PeriodScalar {
    fn sub_assign(&mut self, rhs: &PeriodScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), &Rational::from(-c));
        }
    }
}

impl Add for &PeriodScalar {
    type Output = PeriodScalar;
    fn add(self, rhs: &PeriodScalar) -> PeriodScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &PeriodScalar {
    type Output = PeriodScalar;
    fn sub(self, rhs: &PeriodScalar) -> PeriodScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &PeriodScalar {
    type Output = PeriodScalar;
    fn neg(self) -> PeriodScalar {
        self.scale(&Rational::from(-1))
    }
}

impl Mul for &PeriodScalar {
    type Output = PeriodScalar;
    fn mul(self, rhs: &PeriodScalar) -> PeriodScalar {
        let mut out = PeriodScalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &Rational::from(c1 * c2));
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for PeriodScalar {
            type Output = PeriodScalar;
            fn $f(self, rhs: PeriodScalar) -> PeriodScalar { (&self).$f(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for PeriodScalar {
    type Output = PeriodScalar;
    fn neg(self) -> PeriodScalar {
        -&self
    }
}

impl fmt::Display for PeriodScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            if m.twist != 0 {
                write!(f, "*x^{}", m.twist)?;
            }
            for z in &m.zetas {
                write!(f, "*zeta({z})")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    twist: i32,
    zetas: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct ScalarJson {
    terms: Vec<TermJson>,
}

impl Serialize for PeriodScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarJson {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson { twist: m.twist, zetas: m.zetas.clone(), coef: c.to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PeriodScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = ScalarJson::deserialize(d)?;
        let mut out = PeriodScalar::zero();
        for t in raw.terms {
            if t.zetas.iter().any(|&z| z < 3 || z % 2 == 0) {
                return Err(D::Error::custom("zeta arguments must be odd and >= 3"));
            }
            let c = parse_rational(&t.coef)
                .ok_or_else(|| D::Error::custom(format!("bad rational {:?}", t.coef)))?;
            out.add_term(PeriodMonomial::new(t.twist, t.zetas), &c);
        }
        Ok(out)
    }
}
