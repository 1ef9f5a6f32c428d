use std::collections::BTreeMap;

use exact_core::Complex;

/// `Σ_n q^n P_n(τ)` with `q = e^{2πiτ}` and vector-valued polynomials
/// `P_n`, stored as `terms[n][degree][coordinate]`.
#[derive(Clone, Debug)]
pub struct ExpPoly {
    pub dim: usize,
    pub prec: u32,
    pub terms: BTreeMap<u32, Vec<Vec<Complex>>>,
}

fn horner(p: &[Vec<Complex>], t: &Complex, dim: usize, prec: u32) -> Vec<Complex> {
    let mut acc = vec![Complex::zero(prec); dim];
    for row in p.iter().rev() {
        for (a, c) in acc.iter_mut().zip(row) {
            *a = &(&*a * t) + c;
        }
    }
    acc
}

fn derivative(p: &[Vec<Complex>]) -> Vec<Vec<Complex>> {
    p.iter().enumerate().skip(1).map(|(k, row)| row.iter().map(|c| c.mul_rational(&(k as i64).into())).collect()).collect()
}

impl ExpPoly {
    pub fn new(dim: usize, prec: u32) -> Self {
        ExpPoly { dim, prec, terms: BTreeMap::new() }
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    /// Value at `τ`; `x = 2πi` at the working precision.
    pub fn eval(&self, tau: &Complex, x: &Complex) -> Vec<Complex> {
        let q = (x * tau).exp();
        let mut out = vec![Complex::zero(self.prec); self.dim];
        let mut qn = Complex::one(self.prec);
        let mut at = 0u32;
        for (&n, p) in &self.terms {
            while at < n {
                qn = &qn * &q;
                at += 1;
            }
            let v = horner(p, tau, self.dim, self.prec);
            for (o, c) in out.iter_mut().zip(&v) {
                *o = &*o + &(c * &qn);
            }
        }
        out
    }

    /// Termwise primitive: from `i∞` for `n > 0`, i.e.
    /// `∫ q^n P = q^n Σ_k (-1)^k P^{(k)} / (xn)^{k+1}`, and the polynomial
    /// primitive without constant term for `n = 0`.
    pub fn primitive(&self, x: &Complex) -> ExpPoly {
        let mut out = ExpPoly::new(self.dim, self.prec);
        for (&n, p) in &self.terms {
            let q = if n == 0 {
                let mut q = vec![vec![Complex::zero(self.prec); self.dim]];
                for (k, row) in p.iter().enumerate() {
                    let inv = exact_core::Rational::from((1, k as i64 + 1));
                    q.push(row.iter().map(|c| c.mul_rational(&inv)).collect());
                }
                q
            } else {
                let lam = x.mul_rational(&(n as i64).into());
                let inv = lam.recip();
                let mut q = vec![vec![Complex::zero(self.prec); self.dim]; p.len()];
                let mut d = p.to_vec();
                let mut factor = inv.clone();
                let mut k = 0;
                while !d.is_empty() {
                    let f = if k % 2 == 0 { factor.clone() } else { -&factor };
                    for (qi, di) in q.iter_mut().zip(&d) {
                        for (a, c) in qi.iter_mut().zip(di) {
                            *a = &*a + &(c * &f);
                        }
                    }
                    d = derivative(&d);
                    factor = &factor * &inv;
                    k += 1;
                }
                q
            };
            out.terms.insert(n, q);
        }
        out
    }

    /// Coordinatewise tensor product, dropping `q^n` with `n > nmax`. Left
    /// coordinates are the more significant.
    pub fn tensor(&self, o: &ExpPoly, nmax: u32) -> ExpPoly {
        let dim = self.dim * o.dim;
        let mut out = ExpPoly::new(dim, self.prec);
        for (&n1, p) in &self.terms {
            for (&n2, q) in &o.terms {
                if n1 + n2 > nmax {
                    break;
                }
                let entry = out.terms.entry(n1 + n2).or_default();
                let deg = p.len() + q.len() - 1;
                while entry.len() < deg {
                    entry.push(vec![Complex::zero(self.prec); dim]);
                }
                for (i, pi) in p.iter().enumerate() {
                    for (j, qj) in q.iter().enumerate() {
                        let row = &mut entry[i + j];
                        for (a, pa) in pi.iter().enumerate() {
                            if pa.is_zero() {
                                continue;
                            }
                            for (b, qb) in qj.iter().enumerate() {
                                let t = pa * qb;
                                let r = &mut row[a * o.dim + b];
                                *r = &*r + &t;
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Adds `v` to the constant coefficient of the `q^0` part.
    pub fn add_constant(&mut self, v: &[Complex]) {
        let p = self.terms.entry(0).or_insert_with(|| vec![vec![Complex::zero(self.prec); v.len()]]);
        for (a, c) in p[0].iter_mut().zip(v) {
            *a = &*a + c;
        }
    }
}
