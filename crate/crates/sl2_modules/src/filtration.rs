use exact_core::{Rational, RationalMatrix};

use crate::ModuleError;

/// An increasing filtration given by its jumps: `(index, basis of M_index)`,
/// listed where the dimension strictly increases.
#[derive(Clone, Debug, PartialEq)]
pub struct Filtration {
    pub dim: usize,
    pub jumps: Vec<(i32, Vec<Vec<Rational>>)>,
}

impl Filtration {
    /// Basis of `M_k` (empty below the first jump).
    pub fn subspace(&self, k: i32) -> Vec<Vec<Rational>> {
        self.jumps.iter().take_while(|(i, _)| *i <= k).last().map(|(_, b)| b.clone()).unwrap_or_default()
    }

    pub fn dim_at(&self, k: i32) -> usize {
        self.subspace(k).len()
    }
}

fn column_space(m: &RationalMatrix) -> RationalMatrix {
    RationalMatrix::from_rows(m.transpose().row_basis()).transpose_or_empty(m.rows())
}

trait EmptyAware {
    fn transpose_or_empty(&self, rows: usize) -> RationalMatrix;
}

impl EmptyAware for RationalMatrix {
    /// Matrix whose columns are the rows of `self`; `rows x 0` if empty.
    fn transpose_or_empty(&self, rows: usize) -> RationalMatrix {
        if self.rows() == 0 { RationalMatrix::zeros(rows, 0) } else { self.transpose() }
    }
}

/// Columns spanning `ker a ∩ im b` (`b` given by columns).
fn ker_meet_im(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    if b.cols() == 0 {
        return b.clone();
    }
    let k = a.mul(b).kernel();
    if k.is_empty() {
        return RationalMatrix::zeros(b.rows(), 0);
    }
    column_space(&b.mul(&RationalMatrix::from_columns(&k, b.cols())))
}

/// Monodromy weight filtration of the nilpotent `n`, centered at `center`:
/// `M_k = sum_{j >= max(0,-k)} ker N^{k+j+1} ∩ im N^j` (centered at 0),
/// then shifted.
pub fn weight_filtration(n: &RationalMatrix, center: i32) -> Result<Filtration, ModuleError> {
    let dim = n.rows();
    assert_eq!(dim, n.cols(), "weight_filtration needs a square matrix");
    let powers: Vec<RationalMatrix> = (0..=dim + 1).map(|e| n.pow(e as u32)).collect();
    if !powers[dim].is_zero() {
        return Err(ModuleError::NotNilpotent);
    }
    let d = dim as i32;
    let mut jumps = Vec::new();
    let mut last = 0;
    for k in -d..=d {
        let mut span = RationalMatrix::zeros(dim, 0);
        for j in (0i32.max(-k))..=d {
            let ke = (k + j + 1).min(d + 1) as usize;
            let piece = ker_meet_im(&powers[ke], &column_space(&powers[j as usize]));
            span = span.hstack(&piece);
        }
        let basis = span.transpose().row_basis();
        if basis.len() > last {
            last = basis.len();
            jumps.push((k + center, basis));
        }
    }
    Ok(Filtration { dim, jumps })
}
