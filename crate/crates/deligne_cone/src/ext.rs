use exact_core::PeriodScalar;
use sl2_modules::ModuleSpec;

use crate::theory::CochainTheory;
use crate::triple::DeligneTriple;
use crate::ConeError;

/// An extension class: cohomology-class coordinates with every coordinate
/// reduced modulo `(2πi)^twist Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtClass {
    pub twist: i32,
    pub spec: ModuleSpec,
    pub coords: Vec<PeriodScalar>,
}

impl ExtClass {
    pub fn new(twist: i32, spec: ModuleSpec, coords: Vec<PeriodScalar>) -> Self {
        let coords = coords.iter().map(|c| c.reduce_mod_tate(twist)).collect();
        ExtClass { twist, spec, coords }
    }

    pub fn scalar(twist: i32, value: PeriodScalar) -> Self {
        Self::new(twist, ModuleSpec::trivial(), vec![value])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn nonzero_coords(&self) -> Vec<(usize, &PeriodScalar)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }
}

fn check_reduced<T: CochainTheory>(a: &DeligneTriple<T>) -> Result<&T::Cochain, ConeError> {
    if !T::is_zero(&a.w) || !T::is_zero(&a.z) {
        return Err(ConeError::NotReduced);
    }
    a.c.as_ref().ok_or(ConeError::NotReduced)
}

/// For `[E; 0, 0]`: the class of `E` modulo coboundaries (and `im N` on the
/// Lie side), its coordinates taken modulo `(2πi)^twist Q`.
pub fn ext_class<T>(a: &DeligneTriple<T>, twist: i32) -> Result<ExtClass, ConeError>
where
    T: CochainTheory<C = PeriodScalar>,
{
    let e = check_reduced(a)?;
    let (spec, coords) = T::class_coords(e)?;
    Ok(ExtClass::new(twist, spec, coords))
}

/// As [`ext_class`], after taking imaginary parts of `E`; only valid if the
/// corrections that were dropped to reach `[E; 0, 0]` were real.
pub fn real_reduce<T>(a: &DeligneTriple<T>, twist: i32, discarded_real: bool) -> Result<ExtClass, ConeError>
where
    T: CochainTheory<C = PeriodScalar>,
{
    if !discarded_real {
        return Err(ConeError::NonRealCorrection);
    }
    let e = check_reduced(a)?;
    let (spec, coords) = T::class_coords(&T::imaginary_part(e))?;
    Ok(ExtClass::new(twist, spec, coords))
}
