use std::fmt;

use rug::Rational;
use thiserror::Error;

use crate::coef::Coef;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("inconsistent system")]
    Inconsistent,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Dense matrix over `Q`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::new(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::from(1));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        RationalMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Integer entries, convenient in tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rational::from(v)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| *v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if *a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if *b != 0 {
                        *out.get_mut(i, j) += Rational::from(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| Rational::from(a + b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| Rational::from(a * q)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut out = Self::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Kronecker product; row/column index `i * o.rows + k`.
    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if *a == 0 {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out.set(i * o.rows + k, j * o.cols + l, Rational::from(a * o.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Stack `self` on top of `o`.
    pub fn vstack(&self, o: &Self) -> Self {
        if self.rows == 0 {
            return o.clone();
        }
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        RationalMatrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, o: &Self) -> Self {
        self.transpose().vstack(&o.transpose()).transpose()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::new();
                for (a, b) in self.row(i).iter().zip(v) {
                    if *a != 0 && *b != 0 {
                        acc += Rational::from(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// `self * v` for a vector over any coefficient ring.
    pub fn apply<C: Coef>(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.cols, v.len(), "apply: dimension mismatch");
        let z = v[0].zero_like();
        (0..self.rows)
            .map(|i| {
                let mut acc = z.clone();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.axpy(a, b);
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form, processing columns in the given order.
    /// Returns the reduced matrix (zero rows removed) and the pivot columns
    /// in the order they were found.
    pub fn rref_with_order(&self, order: &[usize]) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for &c in order {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| *m.get(i, c) != 0) else { continue };
            m.swap_rows(r, p);
            let inv = Rational::from(m.get(r, c).recip_ref());
            for j in 0..m.cols {
                if *m.get(r, j) != 0 {
                    *m.get_mut(r, j) *= &inv;
                }
            }
            for i in 0..m.rows {
                if i == r || *m.get(i, c) == 0 {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let t = m.get(r, j);
                    if *t != 0 {
                        let d = Rational::from(&f * t);
                        *m.get_mut(i, j) -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    /// Reduced row echelon form; pivot columns strictly increasing.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let order: Vec<usize> = (0..self.cols).collect();
        self.rref_with_order(&order)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Basis of the null space `{v : M v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::new(); self.cols];
                v[f] = Rational::from(1);
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = Rational::from(-r.get(i, f));
                }
                v
            })
            .collect()
    }

    /// A particular solution of `M y = b` (free variables set to zero).
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Dimension(format!("{} rows vs rhs of length {}", self.rows, b.len())));
        }
        let aug = self.hstack(&RationalMatrix::from_columns(&[b.to_vec()], self.rows));
        let order: Vec<usize> = (0..self.cols + 1).collect();
        let (r, pivots) = aug.rref_with_order(&order);
        if pivots.contains(&self.cols) {
            return Err(LinalgError::Inconsistent);
        }
        let mut y = vec![Rational::new(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            y[p] = r.get(i, self.cols).clone();
        }
        Ok(y)
    }

    /// Row space basis (the nonzero rows of the RREF).
    pub fn row_basis(&self) -> Vec<Vec<Rational>> {
        let (r, _) = self.rref();
        (0..r.rows).map(|i| r.row(i).to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        assert!(RationalMatrix::identity(2).kernel().is_empty());
        let k = RationalMatrix::from_i64(&[&[1, 1], &[1, 1]]).kernel();
        assert_eq!(k, vec![vec![Rational::from(-1), Rational::from(1)]]);
    }

    #[test]
    fn solve_examples() {
        let m = RationalMatrix::from_i64(&[&[2]]);
        assert_eq!(m.solve(&[Rational::from(3)]).unwrap(), vec![Rational::from((3, 2))]);
        let m = RationalMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.solve(&[Rational::from(1), Rational::from(2)]), Err(LinalgError::Inconsistent));
    }
}
