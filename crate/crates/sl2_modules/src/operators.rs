use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use exact_core::{binomial, Coef, Rational, RationalMatrix};

use crate::element::{Basis, ModuleElement};
use crate::{Mat2, ModuleError, ModuleSpec};

type ActionCache = Mutex<HashMap<(Mat2, u32), Arc<RationalMatrix>>>;

fn action_cache() -> &'static ActionCache {
    static CACHE: OnceLock<ActionCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Polynomial product in `a` for homogeneous forms (index = `a`-degree).
fn poly_mul(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::new(); p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            out[i + j] += Rational::from(x * y);
        }
    }
    out
}

/// `g` on `S^m H`: `a -> alpha a - c b`, `b -> -beta a + delta b`.
fn sym_action(g: &Mat2, m: u32) -> Arc<RationalMatrix> {
    if let Some(hit) = action_cache().lock().unwrap().get(&(*g, m)) {
        return hit.clone();
    }
    let img_a = [Rational::from(-g.c), Rational::from(g.a)];
    let img_b = [Rational::from(g.d), Rational::from(-g.b)];
    let n = m as usize + 1;
    let mut out = RationalMatrix::zeros(n, n);
    for i in 0..n {
        let mut p = vec![Rational::from(1)];
        for _ in 0..i {
            p = poly_mul(&p, &img_a);
        }
        for _ in i..(n - 1) {
            p = poly_mul(&p, &img_b);
        }
        for (r, c) in p.into_iter().enumerate() {
            out.set(r, i, c);
        }
    }
    let out = Arc::new(out);
    action_cache().lock().unwrap().insert((*g, m), out.clone());
    out
}

/// The Betti matrix of `g` on a (tensor) module.
pub fn action_matrix(g: &Mat2, spec: &ModuleSpec) -> RationalMatrix {
    spec.factors
        .iter()
        .fold(RationalMatrix::identity(1), |acc, &m| acc.kron(&sym_action(g, m)))
}

/// Apply one single-factor matrix to tensor coordinates along factor `f`.
fn apply_on_factor<C: Coef>(spec: &ModuleSpec, f: usize, m: &RationalMatrix, coords: &[C]) -> Vec<C> {
    let n = spec.factors[f] as usize + 1;
    let inner: usize = spec.factors[f + 1..].iter().map(|&k| k as usize + 1).product();
    let outer = coords.len() / (n * inner);
    let zero = coords[0].zero_like();
    let mut out = vec![zero; coords.len()];
    for o in 0..outer {
        for i in 0..inner {
            for r in 0..n {
                let acc = &mut out[(o * n + r) * inner + i];
                for c in 0..n {
                    let e = m.get(r, c);
                    if *e != 0 {
                        acc.axpy(e, &coords[(o * n + c) * inner + i]);
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn act_coords<C: Coef>(g: &Mat2, spec: &ModuleSpec, coords: &[C]) -> Vec<C> {
    let mut v = coords.to_vec();
    for (f, &m) in spec.factors.iter().enumerate() {
        v = apply_on_factor(spec, f, &sym_action(g, m), &v);
    }
    v
}

fn sym_nilpotent(m: u32, basis: Basis) -> RationalMatrix {
    let n = m as usize + 1;
    let mut out = RationalMatrix::zeros(n, n);
    let sign = if basis == Basis::Betti { -1 } else { 1 };
    for i in 0..(n - 1) {
        out.set(i + 1, i, Rational::from(sign * (m as i64 - i as i64)));
    }
    out
}

/// `N_B = -a d/db` on Betti coordinates, or `N = a d/dw` on de Rham
/// coordinates, extended to tensors by the Leibniz rule.
pub fn nilpotent_matrix(spec: &ModuleSpec, basis: Basis) -> RationalMatrix {
    let dim = spec.dim();
    let mut total = RationalMatrix::zeros(dim, dim);
    for f in 0..spec.factors.len() {
        let mut term = RationalMatrix::identity(1);
        for (g, &m) in spec.factors.iter().enumerate() {
            let piece = if f == g { sym_nilpotent(m, basis) } else { RationalMatrix::identity(m as usize + 1) };
            term = term.kron(&piece);
        }
        total = total.add(&term);
    }
    total
}

/// Sparse image of one monomial under `N` (Leibniz over factors).
pub(crate) fn nilpotent_image(spec: &ModuleSpec, idx: usize, basis: Basis) -> Vec<(usize, Rational)> {
    let sign = if basis == Basis::Betti { -1 } else { 1 };
    let mono = spec.mono(idx);
    let mut out = Vec::new();
    for (f, &m) in spec.factors.iter().enumerate() {
        if mono[f] < m {
            let mut t = mono.clone();
            t[f] += 1;
            out.push((spec.index(&t), Rational::from(sign * (m - mono[f]) as i64)));
        }
    }
    out
}

pub(crate) fn apply_nilpotent<C: Coef>(spec: &ModuleSpec, coords: &[C], basis: Basis) -> Vec<C> {
    let mut out = vec![coords[0].zero_like(); coords.len()];
    for (j, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (r, e) in nilpotent_image(spec, j, basis) {
            out[r].axpy(&e, c);
        }
    }
    out
}

pub fn nilpotent_n<C: Coef>(v: &ModuleElement<C>, basis: Basis) -> ModuleElement<C> {
    v.nilpotent(basis)
}

fn two_factors(spec: &ModuleSpec) -> Result<(u32, u32), ModuleError> {
    match spec.factors[..] {
        [m1, m2] => Ok((m1, m2)),
        _ => Err(ModuleError::SpecMismatch(format!("expected two tensor factors, got {:?}", spec.factors))),
    }
}

/// `d = d/dw ⊗ d/da - d/da ⊗ d/dw` on de Rham coordinates,
/// `S^{m1} ⊗ S^{m2} -> S^{m1-1} ⊗ S^{m2-1}`.
pub fn partial_matrix(m1: u32, m2: u32) -> RationalMatrix {
    let src = ModuleSpec::tensor2(m1, m2);
    let dst = ModuleSpec::tensor2(m1 - 1, m2 - 1);
    let mut out = RationalMatrix::zeros(dst.dim(), src.dim());
    for (j, mono) in src.monomials().into_iter().enumerate() {
        let (i1, i2) = (mono[0], mono[1]);
        if i1 < m1 && i2 > 0 {
            let r = dst.index(&[i1, i2 - 1]);
            *out.get_mut(r, j) += Rational::from((m1 - i1) as i64 * i2 as i64);
        }
        if i1 > 0 && i2 < m2 {
            let r = dst.index(&[i1 - 1, i2]);
            *out.get_mut(r, j) -= Rational::from(i1 as i64 * (m2 - i2) as i64);
        }
    }
    out
}

fn apply_dr<C: Coef>(m: &RationalMatrix, v: &ModuleElement<C>, dst: ModuleSpec) -> ModuleElement<C> {
    ModuleElement::from_dr_coords(dst, m.apply(&v.dr_coords()))
}

/// The bi-derivation `d`; lowers the twist by one.
pub fn partial_op<C: Coef>(v: &ModuleElement<C>) -> Result<ModuleElement<C>, ModuleError> {
    let (m1, m2) = two_factors(&v.spec)?;
    if m1 == 0 || m2 == 0 {
        return Err(ModuleError::DegreeTooSmall);
    }
    let dst = ModuleSpec::new(vec![m1 - 1, m2 - 1], v.spec.twist - 1);
    Ok(apply_dr(&partial_matrix(m1, m2), v, dst))
}

/// `f -> (w⊗a - a⊗w)^l (f⊗1)`, `S^k -> S^{k+l} ⊗ S^l`, de Rham coordinates.
pub fn d_embed_matrix(k: u32, l: u32) -> RationalMatrix {
    let dst = ModuleSpec::tensor2(k + l, l);
    let mut out = RationalMatrix::zeros(dst.dim(), k as usize + 1);
    for i in 0..=k {
        for j in 0..=l {
            let c = Rational::from(binomial(l as i64, j as i64)) * if j % 2 == 0 { 1 } else { -1 };
            let r = dst.index(&[i + j, l - j]);
            *out.get_mut(r, i as usize) += c;
        }
    }
    out
}

/// `D^l`; raises the twist by `l`.
pub fn d_embed<C: Coef>(v: &ModuleElement<C>, l: u32) -> Result<ModuleElement<C>, ModuleError> {
    let [k] = v.spec.factors[..] else {
        return Err(ModuleError::SpecMismatch(format!("d_embed needs S^k H, got {:?}", v.spec.factors)));
    };
    let dst = ModuleSpec::new(vec![k + l, l], v.spec.twist + l as i32);
    Ok(apply_dr(&d_embed_matrix(k, l), v, dst))
}

/// Symmetric multiplication `S^{m1} ⊗ S^{m2} -> S^{m1+m2}` (same matrix in
/// both bases).
pub fn mult_matrix(m1: u32, m2: u32) -> RationalMatrix {
    let src = ModuleSpec::tensor2(m1, m2);
    let mut out = RationalMatrix::zeros((m1 + m2) as usize + 1, src.dim());
    for (j, mono) in src.monomials().into_iter().enumerate() {
        out.set((mono[0] + mono[1]) as usize, j, Rational::from(1));
    }
    out
}

/// `p_r = mult ∘ d^r`: `S^{m1} ⊗ S^{m2} -> S^{m1+m2-2r}`, twist lowered by `r`.
pub fn clebsch_projection_p_r<C: Coef>(v: &ModuleElement<C>, r: u32) -> Result<ModuleElement<C>, ModuleError> {
    let (m1, m2) = two_factors(&v.spec)?;
    if r > m1.min(m2) {
        return Err(ModuleError::ROutOfRange);
    }
    let mut cur = v.clone();
    for _ in 0..r {
        cur = partial_op(&cur)?;
    }
    let (a, b) = (m1 - r, m2 - r);
    let dst = ModuleSpec::new(vec![a + b], cur.spec.twist);
    Ok(ModuleElement::new(dst, mult_matrix(a, b).apply(&cur.coords)))
}

/// `sum_{j<=l} C(l,j) / C(k+l,j)`.
pub fn binom_sum_f(k: u32, l: u32) -> Rational {
    (0..=l as i64)
        .map(|j| Rational::from((binomial(l as i64, j), binomial((k + l) as i64, j))))
        .sum()
}

/// A class in `V / N V`, given by de Rham coordinates on the monomials that
/// are not pivots of `im N`.
///
/// Pivots are taken lowest monomial first, where monomials are ordered by
/// `w`-degree of the left factor, then of the right factor. The surviving
/// monomials are therefore the `w`-heavy ones, e.g. `w^m` on `S^m H`.
#[derive(Clone, Debug, PartialEq)]
pub struct ImNClass<C: Coef> {
    pub spec: ModuleSpec,
    /// Full de Rham coordinate vector, zero on pivot monomials.
    pub dr_coords: Vec<C>,
    /// Monomial indices spanning the complement.
    pub support: Vec<usize>,
}

impl<C: Coef> ImNClass<C> {
    pub fn is_zero(&self) -> bool {
        self.dr_coords.iter().all(|c| c.is_zero())
    }

    /// `(monomial a-degrees, coefficient)` for the nonzero coordinates.
    pub fn terms(&self) -> Vec<(Vec<u32>, C)> {
        self.support
            .iter()
            .filter(|&&i| !self.dr_coords[i].is_zero())
            .map(|&i| (self.spec.mono(i), self.dr_coords[i].clone()))
            .collect()
    }

    pub fn coefficient(&self, mono: &[u32]) -> C {
        self.dr_coords[self.spec.index(mono)].clone()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        ImNClass { spec: self.spec.clone(), dr_coords: self.dr_coords.iter().map(|c| c.scale(q)).collect(), support: self.support.clone() }
    }
}

/// RREF rows of `im N` (de Rham), computed one total `a`-degree at a time;
/// `N` raises the total `a`-degree by one so the image is graded.
fn im_n_rref(spec: &ModuleSpec) -> Vec<(usize, Vec<(usize, Rational)>)> {
    let dim = spec.dim();
    let total_a = |i: usize| spec.mono(i).iter().sum::<u32>();
    let max_deg: u32 = spec.factors.iter().sum();
    let mut rows = Vec::new();
    for d in 1..=max_deg {
        let block: Vec<usize> = (0..dim).rev().filter(|&i| total_a(i) == d).collect();
        let sources: Vec<usize> = (0..dim).filter(|&i| total_a(i) == d - 1).collect();
        let pos: HashMap<usize, usize> = block.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        let gens: Vec<Vec<Rational>> = sources
            .iter()
            .map(|&s| {
                let mut row = vec![Rational::new(); block.len()];
                for (r, e) in nilpotent_image(spec, s, Basis::DeRham) {
                    row[pos[&r]] += e;
                }
                row
            })
            .collect();
        if gens.is_empty() {
            continue;
        }
        let (red, piv) = RationalMatrix::from_rows(gens).rref();
        for (ri, &p) in piv.iter().enumerate() {
            let row: Vec<(usize, Rational)> =
                red.row(ri).iter().enumerate().filter(|(_, c)| **c != 0).map(|(k, c)| (block[k], c.clone())).collect();
            rows.push((block[p], row));
        }
    }
    rows
}

/// The canonical representative of `v` modulo `im N`.
pub fn mod_im_n<C: Coef>(v: &ModuleElement<C>) -> ImNClass<C> {
    let rows = im_n_rref(&v.spec);
    let mut dr = v.dr_coords();
    for (pivot, row) in &rows {
        let c = dr[*pivot].clone();
        if c.is_zero() {
            continue;
        }
        for (k, e) in row {
            let t = c.scale(e);
            dr[*k] = dr[*k].sub_ref(&t);
        }
    }
    let pivots: Vec<usize> = rows.iter().map(|(p, _)| *p).collect();
    let support = (0..v.spec.dim()).filter(|i| !pivots.contains(i)).collect();
    ImNClass { spec: v.spec.clone(), dr_coords: dr, support }
}
