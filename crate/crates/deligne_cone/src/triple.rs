use std::fmt;

use exact_core::{Coef, PeriodScalar, Rational};
use group_cochains::cocycle_to_json;
use sl2_modules::ModuleSpec;

use crate::theory::{CochainTheory, GroupTheory};
use crate::ConeError;

/// Declared filtration memberships; they are carried along, not derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flags {
    pub w_f0w0: bool,
    pub z_w0_rational: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags { w_f0w0: true, z_w0_rational: true }
    }
}

/// A degree-`j` element `[c; w, z]` of the cone: `w` de Rham, `z` Betti,
/// `c` the homotopy of degree `j - 1` (absent when `j = 0`).
pub struct DeligneTriple<T: CochainTheory> {
    pub degree: usize,
    pub c: Option<T::Cochain>,
    pub w: T::Cochain,
    pub z: T::Cochain,
    pub flags: Flags,
}

impl<T: CochainTheory> Clone for DeligneTriple<T> {
    fn clone(&self) -> Self {
        DeligneTriple { degree: self.degree, c: self.c.clone(), w: self.w.clone(), z: self.z.clone(), flags: self.flags }
    }
}

impl<T: CochainTheory> fmt::Debug for DeligneTriple<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DeligneTriple")
            .field("degree", &self.degree)
            .field("c", &self.c)
            .field("w", &self.w)
            .field("z", &self.z)
            .finish()
    }
}

fn sign(k: usize) -> Rational {
    Rational::from(if k.is_multiple_of(2) { 1 } else { -1 })
}

impl<T: CochainTheory> DeligneTriple<T> {
    pub fn new(c: Option<T::Cochain>, w: T::Cochain, z: T::Cochain) -> Result<Self, ConeError> {
        let degree = T::degree(&w);
        if T::degree(&z) != degree {
            return Err(ConeError::Shape("w and z have different degrees".into()));
        }
        match &c {
            None if degree > 0 => return Err(ConeError::Shape("missing homotopy component".into())),
            Some(c) if T::degree(c) + 1 != degree => return Err(ConeError::Shape("homotopy has the wrong degree".into())),
            _ => {}
        }
        Ok(DeligneTriple { degree, c, w, z, flags: Flags::default() })
    }

    pub fn with_flags(mut self, flags: Flags) -> Self {
        self.flags = flags;
        self
    }

    pub fn spec(&self) -> ModuleSpec {
        T::spec(&self.w)
    }

    fn seed(&self) -> T::C {
        T::seed(&self.w)
            .or_else(|| T::seed(&self.z))
            .or_else(|| self.c.as_ref().and_then(T::seed))
            .expect("triple without coefficient context")
    }

    /// The triple `[c; 0, 0]`.
    pub fn homotopy_only(c: T::Cochain) -> Self {
        let seed = T::seed(&c).expect("coefficient context");
        let j = T::degree(&c) + 1;
        let spec = T::spec(&c);
        DeligneTriple { degree: j, w: T::zero(j, spec.clone(), &seed), z: T::zero(j, spec, &seed), c: Some(c), flags: Flags::default() }
    }

    pub fn is_zero(&self) -> bool {
        T::is_zero(&self.w) && T::is_zero(&self.z) && self.c.as_ref().is_none_or(T::is_zero)
    }

    pub fn is_cocycle(&self) -> bool {
        cone_differential(self).is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(&Rational::from(1), o, &Rational::from(1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(&Rational::from(1), o, &Rational::from(-1))
    }

    fn combine(&self, p: &Rational, o: &Self, q: &Rational) -> Self {
        assert_eq!(self.degree, o.degree);
        let c = match (&self.c, &o.c) {
            (Some(a), Some(b)) => Some(T::combine(&[(p.clone(), a), (q.clone(), b)])),
            _ => None,
        };
        DeligneTriple {
            degree: self.degree,
            c,
            w: T::combine(&[(p.clone(), &self.w), (q.clone(), &o.w)]),
            z: T::combine(&[(p.clone(), &self.z), (q.clone(), &o.z)]),
            flags: Flags { w_f0w0: self.flags.w_f0w0 && o.flags.w_f0w0, z_w0_rational: self.flags.z_w0_rational && o.flags.z_w0_rational },
        }
    }
}

/// `δ[c; w, z] = [-dc + w - z; dw, dz]`.
pub fn cone_differential<T: CochainTheory>(a: &DeligneTriple<T>) -> DeligneTriple<T> {
    let one = Rational::from(1);
    let top = match &a.c {
        Some(c) => {
            let dc = T::d(c);
            T::combine(&[(Rational::from(-1), &dc), (one.clone(), &a.w), (Rational::from(-1), &a.z)])
        }
        None => T::combine(&[(one, &a.w), (Rational::from(-1), &a.z)]),
    };
    DeligneTriple { degree: a.degree + 1, c: Some(top), w: T::d(&a.w), z: T::d(&a.z), flags: a.flags }
}

/// `[c_t; w'∪w'', z'∪z'']` with `c_t = (1-t) c_0 + t c_1`,
/// `c_0 = c'∪z'' + (-1)^{|w'|} w'∪c''`, `c_1 = c'∪w'' + (-1)^{|z'|} z'∪c''`.
pub fn cup_t<T: CochainTheory>(a: &DeligneTriple<T>, b: &DeligneTriple<T>, t: &Rational) -> DeligneTriple<T> {
    let w = T::cup(&a.w, &b.w);
    let z = T::cup(&a.z, &b.z);
    let j = a.degree + b.degree;
    let spec = a.spec().tensor(&b.spec());
    let mut terms: Vec<(Rational, T::Cochain)> = Vec::new();
    let s = t.clone();
    let one_minus = Rational::from(1) - t.clone();
    let sg = sign(a.degree);
    if let Some(c1) = &a.c {
        terms.push((one_minus.clone(), T::cup(c1, &b.z)));
        terms.push((s.clone(), T::cup(c1, &b.w)));
    }
    if let Some(c2) = &b.c {
        terms.push((Rational::from(&one_minus * &sg), T::cup(&a.w, c2)));
        terms.push((Rational::from(&s * &sg), T::cup(&a.z, c2)));
    }
    let c = if j == 0 {
        None
    } else if terms.is_empty() {
        Some(T::zero(j - 1, spec, &a.seed()))
    } else {
        let refs: Vec<(Rational, &T::Cochain)> = terms.iter().map(|(q, c)| (q.clone(), c)).collect();
        Some(T::combine(&refs))
    };
    let flags = Flags { w_f0w0: a.flags.w_f0w0 && b.flags.w_f0w0, z_w0_rational: a.flags.z_w0_rational && b.flags.z_w0_rational };
    DeligneTriple { degree: j, c, w, z, flags }
}

/// `[(-1)^{|a|+1} c'∪c''; 0, 0]`; for cocycles `a` and `b`,
/// `a ∪_0 b - a ∪_1 b = δ` of it.
pub fn cup_homotopy<T: CochainTheory>(a: &DeligneTriple<T>, b: &DeligneTriple<T>) -> Result<DeligneTriple<T>, ConeError> {
    let (Some(c1), Some(c2)) = (&a.c, &b.c) else {
        return Err(ConeError::Shape("both factors need a homotopy component".into()));
    };
    let cc = T::cup(c1, c2);
    let top = T::combine(&[(sign(a.degree + 1), &cc)]);
    Ok(DeligneTriple::homotopy_only(top))
}

impl DeligneTriple<GroupTheory<PeriodScalar>> {
    /// `{"degree", "w", "z", "c", "flags"}`; generated cochains appear as
    /// their generator values, others as a formula string.
    pub fn to_json(&self) -> serde_json::Value {
        let enc = |c: &group_cochains::Cochain<PeriodScalar>| {
            cocycle_to_json(c).unwrap_or_else(|| serde_json::json!({ "formula": c.describe() }))
        };
        serde_json::json!({
            "degree": self.degree,
            "w": enc(&self.w),
            "z": enc(&self.z),
            "c": self.c.as_ref().map(enc),
            "flags": { "w_F0W0": self.flags.w_f0w0, "z_W0_rational": self.flags.z_w0_rational },
        })
    }
}

impl DeligneTriple<GroupTheory<PeriodScalar>> {
    /// Checks the declared Betti-lattice flag on a degree-1 triple: `z(S)`,
    /// `z(U)` in `x^r V_Q`.
    pub fn check_z_lattice(&self, r: i32) -> Result<bool, ConeError> {
        for g in [sl2_modules::Mat2::S, sl2_modules::Mat2::U] {
            let v = self.z.evaluate(&[g])?;
            if !v.coords.iter().all(|c| c.shift(-r).is_rational()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
