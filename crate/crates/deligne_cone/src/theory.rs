use std::fmt::Debug;
use std::marker::PhantomData;

use exact_core::{Coef, Rational, RationalMatrix};
use group_cochains::{cocycle_space, sample_elements, Cochain};
use sl2_modules::{mod_im_n, nilpotent_n, Basis, Mat2, ModuleElement, ModuleSpec};

use crate::ConeError;

/// What the cone needs from a cochain complex with cup products.
pub trait CochainTheory {
    type C: Coef;
    type Cochain: Clone + Debug;

    fn degree(c: &Self::Cochain) -> usize;
    fn spec(c: &Self::Cochain) -> ModuleSpec;
    fn zero(degree: usize, spec: ModuleSpec, seed: &Self::C) -> Self::Cochain;
    fn seed(c: &Self::Cochain) -> Option<Self::C>;
    fn d(c: &Self::Cochain) -> Self::Cochain;
    fn cup(a: &Self::Cochain, b: &Self::Cochain) -> Self::Cochain;
    fn combine(terms: &[(Rational, &Self::Cochain)]) -> Self::Cochain;
    fn imaginary_part(c: &Self::Cochain) -> Self::Cochain;
    /// Exact on a spanning set of inputs where the theory has one, otherwise
    /// on a fixed sample.
    fn is_zero(c: &Self::Cochain) -> bool;
    /// Coordinates of a cocycle's cohomology class (degree 0 or 1).
    fn class_coords(c: &Self::Cochain) -> Result<(ModuleSpec, Vec<Self::C>), ConeError>;
}

/// Inhomogeneous cochains on `SL2(Z)`, compared on sample tuples.
pub struct GroupTheory<C>(PhantomData<C>);

/// Argument tuples used to compare lazy group cochains of degree `n`.
pub fn sample_tuples(n: usize) -> Vec<Vec<Mat2>> {
    let els = sample_elements();
    let k = els.len();
    match n {
        0 => vec![vec![]],
        1 => els.iter().map(|g| vec![*g]).collect(),
        _ => (0..12).map(|i| (0..n).map(|j| els[(i * (j + 2) + j * j + i / 3) % k]).collect()).collect(),
    }
}

impl<C: Coef> CochainTheory for GroupTheory<C> {
    type C = C;
    type Cochain = Cochain<C>;

    fn degree(c: &Cochain<C>) -> usize {
        c.degree
    }
    fn spec(c: &Cochain<C>) -> ModuleSpec {
        c.spec.clone()
    }
    fn zero(degree: usize, spec: ModuleSpec, seed: &C) -> Cochain<C> {
        Cochain::zero(degree, spec, seed)
    }
    fn seed(c: &Cochain<C>) -> Option<C> {
        c.seed()
    }
    fn d(c: &Cochain<C>) -> Cochain<C> {
        c.coboundary()
    }
    fn cup(a: &Cochain<C>, b: &Cochain<C>) -> Cochain<C> {
        a.cup(b)
    }
    fn combine(terms: &[(Rational, &Cochain<C>)]) -> Cochain<C> {
        let seed = terms.iter().find_map(|(_, t)| t.seed()).expect("a coefficient seed");
        Cochain::linear_combination(terms.iter().map(|(q, t)| (seed.from_rational_like(q), (*t).clone())).collect())
    }
    fn imaginary_part(c: &Cochain<C>) -> Cochain<C> {
        c.imaginary_part()
    }
    fn is_zero(c: &Cochain<C>) -> bool {
        if c.is_zero_node() {
            return true;
        }
        sample_tuples(c.degree).iter().all(|args| c.evaluate(args).map(|v| v.is_zero()).unwrap_or(false))
    }

    /// Degree 0: the invariant vector. Degree 1: `(c(S), c(U))` reduced
    /// modulo the coboundaries.
    fn class_coords(c: &Cochain<C>) -> Result<(ModuleSpec, Vec<C>), ConeError> {
        match c.degree {
            0 => Ok((c.spec.clone(), c.evaluate(&[])?.coords)),
            1 => {
                let mut v = c.evaluate(&[Mat2::S])?.coords;
                v.extend(c.evaluate(&[Mat2::U])?.coords);
                let space = cocycle_space(&c.spec);
                if !space.b1.is_empty() {
                    let (red, piv) = RationalMatrix::from_rows(space.b1.clone()).rref();
                    for (r, &p) in piv.iter().enumerate() {
                        let k = v[p].clone();
                        if k.is_zero() {
                            continue;
                        }
                        for (x, e) in v.iter_mut().zip(red.row(r)) {
                            *x = x.sub_ref(&k.scale(e));
                        }
                    }
                }
                Ok((c.spec.clone(), v))
            }
            d => Err(ConeError::Degree(d)),
        }
    }
}

/// A cochain of the one-dimensional Lie algebra at the cusp, de Rham side:
/// `value` is the vector in degree 0 and the coefficient of `dλ_DR` in
/// degree 1; everything of degree ≥ 2 vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct LieForm<C: Coef> {
    pub degree: usize,
    pub value: ModuleElement<C>,
}

impl<C: Coef> LieForm<C> {
    pub fn new(degree: usize, value: ModuleElement<C>) -> Self {
        let value = if degree >= 2 { value.zero_like() } else { value };
        LieForm { degree, value }
    }
}

pub struct LieTheory<C>(PhantomData<C>);

impl<C: Coef> CochainTheory for LieTheory<C> {
    type C = C;
    type Cochain = LieForm<C>;

    fn degree(c: &LieForm<C>) -> usize {
        c.degree
    }
    fn spec(c: &LieForm<C>) -> ModuleSpec {
        c.value.spec.clone()
    }
    fn zero(degree: usize, spec: ModuleSpec, seed: &C) -> LieForm<C> {
        LieForm::new(degree, ModuleElement::zeros(spec, seed))
    }
    fn seed(c: &LieForm<C>) -> Option<C> {
        Some(c.value.coords[0].clone())
    }
    fn d(c: &LieForm<C>) -> LieForm<C> {
        match c.degree {
            0 => LieForm::new(1, nilpotent_n(&c.value, Basis::DeRham)),
            d => LieForm::new(d + 1, c.value.zero_like()),
        }
    }
    /// Wedge on `Λ(dλ) ⊗ V`; `dλ ∧ dλ = 0`.
    fn cup(a: &LieForm<C>, b: &LieForm<C>) -> LieForm<C> {
        LieForm::new(a.degree + b.degree, a.value.tensor(&b.value))
    }
    fn combine(terms: &[(Rational, &LieForm<C>)]) -> LieForm<C> {
        let mut acc = terms[0].1.value.scale(&terms[0].0);
        for (q, t) in &terms[1..] {
            assert_eq!(t.degree, terms[0].1.degree);
            acc = acc.add(&t.value.scale(q).with_twist(acc.spec.twist));
        }
        LieForm::new(terms[0].1.degree, acc)
    }
    fn imaginary_part(c: &LieForm<C>) -> LieForm<C> {
        LieForm::new(c.degree, c.value.imaginary_part())
    }
    fn is_zero(c: &LieForm<C>) -> bool {
        c.value.is_zero()
    }
    /// Degree 0: the vector. Degree 1: its image in `V / N V`.
    fn class_coords(c: &LieForm<C>) -> Result<(ModuleSpec, Vec<C>), ConeError> {
        match c.degree {
            0 => Ok((c.value.spec.clone(), c.value.dr_coords())),
            1 => {
                let cls = mod_im_n(&c.value);
                Ok((cls.spec, cls.dr_coords))
            }
            d => Err(ConeError::Degree(d)),
        }
    }
}
