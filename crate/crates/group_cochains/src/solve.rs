use exact_core::{Coef, PeriodScalar, Rational, RationalMatrix};
use sl2_modules::{action_matrix, Mat2, ModuleElement, ModuleSpec};

use crate::cochain::Cochain;
use crate::CochainError;

/// Bases of `Z^1`, `B^1` and a complement `H^1`, as stacked generator values
/// `(c(S), c(U))` of length `2 dim V`.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub spec: ModuleSpec,
    pub z1: Vec<Vec<Rational>>,
    pub b1: Vec<Vec<Rational>>,
    pub h1: Vec<Vec<Rational>>,
}

impl CocycleSpace {
    /// The generated cochain with stacked generator values `v`.
    pub fn cochain(&self, v: &[Rational]) -> Cochain<PeriodScalar> {
        let d = self.spec.dim();
        Cochain::cocycle(
            ModuleElement::from_rationals(self.spec.clone(), &v[..d]),
            ModuleElement::from_rationals(self.spec.clone(), &v[d..]),
        )
    }
}

fn geometric_sum(g: &RationalMatrix, n: u32) -> RationalMatrix {
    let mut acc = RationalMatrix::identity(g.rows());
    let mut p = RationalMatrix::identity(g.rows());
    for _ in 1..n {
        p = p.mul(g);
        acc = acc.add(&p);
    }
    acc
}

/// The linear part of the three relation equations in the unknowns
/// `(c(S), c(U))`: rows `(1+S+S^2+S^3)c_S`, `(1+U+...+U^5)c_U` and
/// `(1+S)c_S - (1+U+U^2)c_U`.
pub fn relation_matrix(spec: &ModuleSpec) -> RationalMatrix {
    let d = spec.dim();
    let s = action_matrix(&Mat2::S, spec);
    let u = action_matrix(&Mat2::U, spec);
    let z = RationalMatrix::zeros(d, d);
    let r1 = geometric_sum(&s, 4).hstack(&z);
    let r2 = z.hstack(&geometric_sum(&u, 6));
    let r3 = geometric_sum(&s, 2).hstack(&geometric_sum(&u, 3).scale(&Rational::from(-1)));
    r1.vstack(&r2).vstack(&r3)
}

pub fn cocycle_space(spec: &ModuleSpec) -> CocycleSpace {
    let d = spec.dim();
    let z1 = relation_matrix(spec).kernel();
    let s1 = action_matrix(&Mat2::S, spec).sub(&RationalMatrix::identity(d));
    let u1 = action_matrix(&Mat2::U, spec).sub(&RationalMatrix::identity(d));
    // v -> ((S-1)v, (U-1)v), one column per basis vector v
    let cob = s1.vstack(&u1);
    let b1 = cob.transpose().row_basis();
    let h1 = complement(&b1, &z1);
    CocycleSpace { spec: spec.clone(), z1, b1, h1 }
}

/// Reduce `vs` modulo the row space of `sub` and echelonize what is left.
fn complement(sub: &[Vec<Rational>], vs: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if vs.is_empty() {
        return vec![];
    }
    let (red, piv) = if sub.is_empty() {
        (RationalMatrix::zeros(0, vs[0].len()), vec![])
    } else {
        RationalMatrix::from_rows(sub.to_vec()).rref()
    };
    let reduced: Vec<Vec<Rational>> = vs
        .iter()
        .map(|v| {
            let mut v = v.clone();
            for (r, &p) in piv.iter().enumerate() {
                let c = v[p].clone();
                if c != 0 {
                    for (x, e) in v.iter_mut().zip(red.row(r)) {
                        *x -= Rational::from(&c * e);
                    }
                }
            }
            v
        })
        .filter(|v| v.iter().any(|c| *c != 0))
        .collect();
    if reduced.is_empty() {
        return vec![];
    }
    RationalMatrix::from_rows(reduced).row_basis()
}

/// Group elements on which lazy cocycle conditions get spot-checked.
pub fn sample_elements() -> Vec<Mat2> {
    vec![
        Mat2::S,
        Mat2::T,
        Mat2::U,
        Mat2::T.inv(),
        Mat2::new(2, 1, 1, 1),
        Mat2::new(1, 0, 3, 1),
        Mat2::new(3, -2, 5, -3),
    ]
}

/// Checks `δz = 0` on triples drawn from [`sample_elements`].
pub fn check_two_cocycle<C: Coef>(z: &Cochain<C>) -> Result<(), CochainError> {
    let dz = z.coboundary();
    let els = sample_elements();
    for (i, a) in els.iter().enumerate() {
        for (j, b) in els.iter().enumerate() {
            let c = &els[(i + 2 * j + 1) % els.len()];
            let v = dz.evaluate(&[*a, *b, *c])?;
            let reference = z.evaluate(&[*a, *b])?;
            // negligible against the largest coordinate of z
            let small = |x: &C| reference.coords.iter().any(|r| x.negligible(r));
            if !v.coords.iter().all(small) {
                return Err(CochainError::NotACocycle);
            }
        }
    }
    Ok(())
}

/// A 1-cochain `h` with `δh = -z`, found from its values on `S` and `U`.
///
/// Under the corrected extension rule the relation words evaluate to
/// `L(h_S, h_U) + K`, with `L` the cocycle relation matrix and `K` the value
/// at `h_S = h_U = 0`; solving `L(h_S, h_U) = -K` is the whole problem.
/// Assumes `z` is normalized, `z(1, g) = z(g, 1) = 0`.
pub fn solve_delta_h<C: Coef>(z: &Cochain<C>, require_rational: bool) -> Result<Cochain<C>, CochainError> {
    if z.degree != 2 {
        return Err(CochainError::DegreeMismatch { expected: 2, got: z.degree });
    }
    check_two_cocycle(z)?;
    let seed = z.seed().ok_or(CochainError::NoSeed)?;
    let spec = z.spec.clone();
    let zero = ModuleElement::zeros(spec.clone(), &seed);
    let base = Cochain::generated(zero.clone(), zero, Some(z.clone()));
    let k: Vec<C> = base.relation_residuals()?.into_iter().flat_map(|e| e.coords).collect();
    let rhs: Vec<C> = k.iter().map(|c| c.neg_ref()).collect();
    let m = relation_matrix(&spec);
    let sol = C::solve_rational_system(&m, &rhs).ok_or(CochainError::NoSolution)?;
    if require_rational && !sol.iter().all(|c| c.is_rational()) {
        return Err(CochainError::NotRational);
    }
    let d = spec.dim();
    let hs = ModuleElement::new(spec.clone(), sol[..d].to_vec());
    let hu = ModuleElement::new(spec, sol[d..].to_vec());
    Ok(Cochain::generated(hs, hu, Some(z.clone())))
}
