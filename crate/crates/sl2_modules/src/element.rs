use exact_core::{Coef, Complex, PeriodScalar, Rational};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::operators::{act_coords, apply_nilpotent};
use crate::{Mat2, ModuleError, ModuleSpec};

/// Which of the two rational structures a coordinate vector refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    Betti,
    DeRham,
}

/// A vector in a module, Betti coordinates over a coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleElement<C: Coef> {
    pub spec: ModuleSpec,
    pub coords: Vec<C>,
}

impl<C: Coef> ModuleElement<C> {
    pub fn new(spec: ModuleSpec, coords: Vec<C>) -> Self {
        assert_eq!(spec.dim(), coords.len(), "coordinate count does not match the module");
        ModuleElement { spec, coords }
    }

    /// The zero vector; `seed` only supplies the coefficient context.
    pub fn zeros(spec: ModuleSpec, seed: &C) -> Self {
        let z = seed.zero_like();
        ModuleElement { coords: vec![z; spec.dim()], spec }
    }

    pub fn zero_like(&self) -> Self {
        Self::zeros(self.spec.clone(), &self.coords[0])
    }

    /// `coef * a^{i1} b^{m1-i1} ⊗ ...`
    pub fn betti_monomial(spec: ModuleSpec, mono: &[u32], coef: C) -> Self {
        let mut v = Self::zeros(spec, &coef);
        let idx = v.spec.index(mono);
        v.coords[idx] = coef;
        v
    }

    /// `coef * a^{i1} w^{m1-i1} ⊗ ...`
    pub fn dr_monomial(spec: ModuleSpec, mono: &[u32], coef: C) -> Self {
        let mut v = Self::zeros(spec, &coef);
        let idx = v.spec.index(mono);
        v.coords[idx] = coef;
        let dr = v.coords.clone();
        v.set_dr_coords(dr);
        v
    }

    /// Factor `(-x)^(w-degree)` relating de Rham to Betti coordinates.
    fn dr_factor(&self, idx: usize, seed: &C) -> C {
        let k = self.spec.w_degree(idx) as i32;
        let xk = seed.x_pow_like(k);
        if k % 2 == 0 { xk } else { xk.neg_ref() }
    }

    /// Coordinates on the monomials `a^i w^(m-i)`.
    pub fn dr_coords(&self) -> Vec<C> {
        let seed = &self.coords[0];
        self.coords
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let k = self.spec.w_degree(i) as i32;
                let xk = seed.x_pow_like(-k);
                let f = if k % 2 == 0 { xk } else { xk.neg_ref() };
                c.mul_ref(&f)
            })
            .collect()
    }

    pub fn set_dr_coords(&mut self, dr: Vec<C>) {
        assert_eq!(dr.len(), self.coords.len());
        let seed = dr[0].clone();
        self.coords = dr.into_iter().enumerate().map(|(i, c)| c.mul_ref(&self.dr_factor(i, &seed))).collect();
    }

    pub fn from_dr_coords(spec: ModuleSpec, dr: Vec<C>) -> Self {
        let mut v = ModuleElement { spec, coords: dr.clone() };
        v.set_dr_coords(dr);
        v
    }

    pub fn coords_in(&self, basis: Basis) -> Vec<C> {
        match basis {
            Basis::Betti => self.coords.clone(),
            Basis::DeRham => self.dr_coords(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn check_same(&self, o: &Self) {
        assert!(self.spec.same_module(&o.spec), "adding elements of {:?} and {:?}", self.spec, o.spec);
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_same(o);
        ModuleElement { spec: self.spec.clone(), coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a.add_ref(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_same(o);
        ModuleElement { spec: self.spec.clone(), coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a.sub_ref(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(|c| c.scale(q))
    }

    pub fn mul_coef(&self, s: &C) -> Self {
        self.map(|c| c.mul_ref(s))
    }

    /// Multiply by `(2πi)^k`.
    pub fn mul_x_pow(&self, k: i32) -> Self {
        let xk = self.coords[0].x_pow_like(k);
        self.mul_coef(&xk)
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        ModuleElement { spec: self.spec.clone(), coords: self.coords.iter().map(f).collect() }
    }

    pub fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }

    pub fn imaginary_part(&self) -> Self {
        self.map(|c| c.imaginary_part())
    }

    pub fn with_twist(&self, twist: i32) -> Self {
        ModuleElement { spec: self.spec.with_twist(twist), coords: self.coords.clone() }
    }

    /// `self ⊗ o`, with twists added.
    pub fn tensor(&self, o: &Self) -> Self {
        let spec = self.spec.tensor(&o.spec);
        let mut coords = Vec::with_capacity(spec.dim());
        for a in &self.coords {
            for b in &o.coords {
                coords.push(a.mul_ref(b));
            }
        }
        ModuleElement { spec, coords }
    }

    /// Left action; the twist label is untouched.
    pub fn act(&self, g: &Mat2) -> Result<Self, ModuleError> {
        if g.det() != 1 {
            return Err(ModuleError::NotUnimodular(g.det()));
        }
        if *g == Mat2::IDENTITY {
            return Ok(self.clone());
        }
        Ok(ModuleElement { spec: self.spec.clone(), coords: act_coords(g, &self.spec, &self.coords) })
    }

    /// Act by a matrix already known to have determinant one.
    pub fn act_unimodular(&self, g: &Mat2) -> Self {
        self.act(g).expect("matrix with det 1")
    }

    pub fn nilpotent(&self, basis: Basis) -> Self {
        match basis {
            Basis::Betti => ModuleElement { spec: self.spec.clone(), coords: apply_nilpotent(&self.spec, &self.coords, basis) },
            Basis::DeRham => Self::from_dr_coords(self.spec.clone(), apply_nilpotent(&self.spec, &self.dr_coords(), basis)),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl ModuleElement<PeriodScalar> {
    pub fn zero(spec: ModuleSpec) -> Self {
        Self::zeros(spec, &PeriodScalar::zero())
    }

    pub fn from_rationals(spec: ModuleSpec, coords: &[Rational]) -> Self {
        ModuleElement::new(spec, coords.iter().map(|q| PeriodScalar::rational(q.clone())).collect())
    }

    /// Coordinates as rationals, if every one of them is rational.
    pub fn as_rationals(&self) -> Option<Vec<Rational>> {
        self.coords.iter().map(|c| c.as_rational()).collect()
    }

    pub fn numeric(&self, prec: u32) -> ModuleElement<Complex> {
        ModuleElement { spec: self.spec.clone(), coords: self.coords.iter().map(|c| c.numeric_eval(prec)).collect() }
    }
}

impl ModuleElement<Complex> {
    pub fn max_abs(&self) -> exact_core::Float {
        let p = self.coords[0].prec();
        let mut m = exact_core::Float::new(p);
        for c in &self.coords {
            let a = c.max_abs();
            if a > m {
                m = a;
            }
        }
        m
    }
}

#[derive(Serialize, Deserialize)]
struct CoordJson {
    mono: Vec<u32>,
    value: PeriodScalar,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    spec: ModuleSpec,
    coords: Vec<CoordJson>,
}

impl Serialize for ModuleElement<PeriodScalar> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ElementJson {
            spec: self.spec.clone(),
            coords: self
                .coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| CoordJson { mono: self.spec.mono(i), value: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModuleElement<PeriodScalar> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = ElementJson::deserialize(d)?;
        let mut v = ModuleElement::zero(raw.spec);
        for c in raw.coords {
            if c.mono.len() != v.spec.factors.len() || c.mono.iter().zip(&v.spec.factors).any(|(i, m)| i > m) {
                return Err(D::Error::custom(format!("monomial {:?} not in module", c.mono)));
            }
            let idx = v.spec.index(&c.mono);
            v.coords[idx] += &c.value;
        }
        Ok(v)
    }
}
