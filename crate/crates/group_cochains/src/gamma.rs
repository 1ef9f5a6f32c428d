use std::fmt;

use sl2_modules::Mat2;

use crate::CochainError;

/// An element of `SL2(Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GammaElement(Mat2);

impl GammaElement {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, CochainError> {
        Self::from_matrix(Mat2::new(a, b, c, d))
    }

    pub fn from_matrix(m: Mat2) -> Result<Self, CochainError> {
        if m.det() != 1 {
            return Err(CochainError::NotUnimodular(m.det()));
        }
        Ok(GammaElement(m))
    }

    pub fn matrix(&self) -> Mat2 {
        self.0
    }

    pub fn mul(&self, o: &GammaElement) -> GammaElement {
        GammaElement(self.0.mul(&o.0))
    }

    pub fn inv(&self) -> GammaElement {
        GammaElement(self.0.inv())
    }

    pub const S: GammaElement = GammaElement(Mat2::S);
    pub const T: GammaElement = GammaElement(Mat2::T);
    pub const U: GammaElement = GammaElement(Mat2::U);
    pub const IDENTITY: GammaElement = GammaElement(Mat2::IDENTITY);
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    S,
    SInv,
    T,
    TInv,
}

impl Letter {
    pub fn matrix(self) -> Mat2 {
        match self {
            Letter::S => Mat2::S,
            Letter::SInv => Mat2::S.inv(),
            Letter::T => Mat2::T,
            Letter::TInv => Mat2::T.inv(),
        }
    }

    pub fn inverse(self) -> Letter {
        match self {
            Letter::S => Letter::SInv,
            Letter::SInv => Letter::S,
            Letter::T => Letter::TInv,
            Letter::TInv => Letter::T,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn evaluate(&self) -> Mat2 {
        self.letters.iter().fold(Mat2::IDENTITY, |acc, l| acc.mul(&l.matrix()))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn push_t_power(&mut self, e: i64) {
        let l = if e >= 0 { Letter::T } else { Letter::TInv };
        self.letters.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
    }
}

/// Continued-fraction reduction. Left-multiplying by `T^-q` and then `S^-1`
/// shrinks the lower-left entry until it vanishes; what remains is `T^b` or
/// `S^2 T^-b`.
pub fn word_decompose(g: &GammaElement) -> Word {
    let mut m = g.matrix();
    let mut word = Word::default();
    while m.c != 0 {
        let q = m.a.div_euclid(m.c);
        m = Mat2::T.pow(-q).mul(&m);
        word.push_t_power(q);
        m = Mat2::S.inv().mul(&m);
        word.letters.push(Letter::S);
    }
    if m.a == 1 {
        word.push_t_power(m.b);
    } else {
        word.letters.extend([Letter::S, Letter::S]);
        word.push_t_power(-m.b);
    }
    debug_assert_eq!(word.evaluate(), g.matrix());
    word
}
