use exact_core::{solve_complex, Complex, Float};
use sl2_modules::{Mat2, ModuleElement, ModuleSpec};

use crate::{EisError, EisensteinCocycle};

type N = ModuleElement<Complex>;

/// A numeric 1-cocycle given by its values on `S` and `T`.
#[derive(Clone, Debug)]
pub struct PeriodCocycle {
    pub s: N,
    pub t: N,
}

impl PeriodCocycle {
    /// The cocycle `S ↦ r`, `T ↦ 0` of a period polynomial.
    pub fn period_polynomial(r: N) -> Self {
        let t = r.zero_like();
        PeriodCocycle { s: r, t }
    }

    fn stacked(&self) -> Vec<Complex> {
        self.s.coords.iter().chain(&self.t.coords).cloned().collect()
    }
}

/// Coordinates of a class in `H^1(SL2(Z); S^{2n}H)` against the Eisenstein
/// cocycle and the period-polynomial cocycles `r_f^±`.
#[derive(Clone, Debug)]
pub struct H1Coordinates {
    pub eis: Complex,
    /// `(plus, minus)` per eigenform, in the order given.
    pub cusp: Vec<(Complex, Complex)>,
    /// The Eisenstein coordinate read off from the `b^{2n}` coordinate at `T`.
    pub eis_check: Complex,
    /// Coordinates of the coboundary part `δv` (Betti basis of `v`).
    pub coboundary: Vec<Complex>,
}

/// Solves `class = λ e0 + Σ (μ_f^+ r_f^+ + μ_f^- r_f^-) + δv` numerically.
pub fn h1_projections(class: &PeriodCocycle, e0: &EisensteinCocycle, cusp: &[(N, N)]) -> Result<H1Coordinates, EisError> {
    let spec: ModuleSpec = e0.spec();
    let e0_s = e0.e0_s.as_ref().ok_or_else(|| EisError::Precondition("e0 on S required".into()))?;
    let prec = class.s.coords[0].prec();
    let zero = Complex::zero(prec);
    let d = spec.dim();

    let mut cols: Vec<Vec<Complex>> = vec![PeriodCocycle { s: e0_s.numeric(prec), t: e0.e0_t.numeric(prec) }.stacked()];
    for (rp, rm) in cusp {
        cols.push(PeriodCocycle::period_polynomial(rp.clone()).stacked());
        cols.push(PeriodCocycle::period_polynomial(rm.clone()).stacked());
    }
    for i in 0..d {
        let mut e = N::zeros(spec.clone(), &zero);
        e.coords[i] = Complex::one(prec);
        let s = e.act_unimodular(&Mat2::S).sub(&e);
        let t = e.act_unimodular(&Mat2::T).sub(&e);
        cols.push(PeriodCocycle { s, t }.stacked());
    }
    let rhs = class.stacked();
    let rows = 2 * d;
    let a: Vec<Vec<Complex>> = (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let y = solve_complex(a.clone(), rhs.clone()).ok_or(EisError::IllConditioned)?;

    // accept only if the solution reproduces the class to half the precision
    let scale = rhs.iter().chain(a.iter().flatten()).map(|c| c.abs()).fold(Float::with_val(prec, 1), |m, v| m.max(&v));
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 2)) * &scale;
    for (row, b) in a.iter().zip(&rhs) {
        let mut acc = zero.clone();
        for (c, v) in row.iter().zip(&y) {
            acc = &acc + &(c * v);
        }
        if (&acc - b).abs() > tol {
            return Err(EisError::IllConditioned);
        }
    }

    let eis_check = &class.t.coords[0] / &e0.e0_t.numeric(prec).coords[0];
    let nf = cusp.len();
    Ok(H1Coordinates {
        eis: y[0].clone(),
        cusp: (0..nf).map(|f| (y[1 + 2 * f].clone(), y[2 + 2 * f].clone())).collect(),
        eis_check,
        coboundary: y[1 + 2 * nf..].to_vec(),
    })
}
