use std::fmt;
use std::sync::{Arc, OnceLock};

use exact_core::Coef;
use sl2_modules::{Mat2, ModuleElement, ModuleSpec};

use crate::gamma::{word_decompose, GammaElement, Letter, Word};
use crate::CochainError;

pub type CochainFn<C> = dyn Fn(&[Mat2]) -> Result<ModuleElement<C>, CochainError> + Send + Sync;

/// An inhomogeneous cochain `Γ^n -> V`, kept as an immutable formula tree and
/// evaluated on demand.
#[derive(Clone)]
pub struct Cochain<C: Coef> {
    pub degree: usize,
    pub spec: ModuleSpec,
    node: Arc<Node<C>>,
}

enum Node<C: Coef> {
    Zero(C),
    Const(ModuleElement<C>),
    Generated(Generators<C>),
    Coboundary(Cochain<C>),
    Cup(Cochain<C>, Cochain<C>),
    Lin(Vec<(C, Cochain<C>)>),
    Func(C, Box<CochainFn<C>>),
    Placeholder(String, C),
    Imag(Cochain<C>),
}

/// A 1-cochain fixed by its values on `S` and `U = ST`, extended to all of Γ
/// by `h(gh) = h(g) + g h(h) + z(g, h)`, where `z` is the optional correction
/// (absent for cocycles).
pub struct Generators<C: Coef> {
    pub s: ModuleElement<C>,
    pub u: ModuleElement<C>,
    pub correction: Option<Cochain<C>>,
    letters: OnceLock<Result<[ModuleElement<C>; 4], CochainError>>,
}

impl<C: Coef> fmt::Debug for Cochain<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain(deg {}, {:?}, {})", self.degree, self.spec.factors, self.describe())
    }
}

impl<C: Coef> Cochain<C> {
    fn wrap(degree: usize, spec: ModuleSpec, node: Node<C>) -> Self {
        Cochain { degree, spec, node: Arc::new(node) }
    }

    /// `seed` only supplies the coefficient context.
    pub fn zero(degree: usize, spec: ModuleSpec, seed: &C) -> Self {
        Self::wrap(degree, spec, Node::Zero(seed.zero_like()))
    }

    pub fn constant(v: ModuleElement<C>) -> Self {
        Self::wrap(0, v.spec.clone(), Node::Const(v))
    }

    /// The 1-cocycle with the given values on `S` and `U`. Whether the
    /// relations hold is the caller's claim; see [`Cochain::relation_residuals`].
    pub fn cocycle(s: ModuleElement<C>, u: ModuleElement<C>) -> Self {
        Self::generated(s, u, None)
    }

    pub fn generated(s: ModuleElement<C>, u: ModuleElement<C>, correction: Option<Cochain<C>>) -> Self {
        assert!(s.spec.same_module(&u.spec));
        if let Some(z) = &correction {
            assert_eq!(z.degree, 2, "correction must have degree 2");
        }
        let spec = s.spec.clone();
        Self::wrap(1, spec, Node::Generated(Generators { s, u, correction, letters: OnceLock::new() }))
    }

    /// `seed` only supplies the coefficient context.
    pub fn from_fn(
        degree: usize,
        spec: ModuleSpec,
        seed: &C,
        f: impl Fn(&[Mat2]) -> Result<ModuleElement<C>, CochainError> + Send + Sync + 'static,
    ) -> Self {
        Self::wrap(degree, spec, Node::Func(seed.zero_like(), Box::new(f)))
    }

    /// A named slot to be bound later with [`Cochain::bind`].
    pub fn placeholder(name: &str, degree: usize, spec: ModuleSpec, seed: &C) -> Self {
        Self::wrap(degree, spec, Node::Placeholder(name.to_string(), seed.zero_like()))
    }

    pub fn coboundary(&self) -> Self {
        if let Some(seed) = self.zero_seed() {
            return Self::zero(self.degree + 1, self.spec.clone(), &seed);
        }
        Self::wrap(self.degree + 1, self.spec.clone(), Node::Coboundary(self.clone()))
    }

    /// `(f ∪ g)(g1..g_{p+q}) = f(g1..g_p) ⊗ (g1⋯g_p)·g(g_{p+1}..)`.
    pub fn cup(&self, o: &Self) -> Self {
        if let Some(seed) = self.zero_seed().or_else(|| o.zero_seed()) {
            return Self::zero(self.degree + o.degree, self.spec.tensor(&o.spec), &seed);
        }
        Self::wrap(self.degree + o.degree, self.spec.tensor(&o.spec), Node::Cup(self.clone(), o.clone()))
    }

    pub fn linear_combination(terms: Vec<(C, Cochain<C>)>) -> Self {
        assert!(!terms.is_empty());
        let (degree, spec) = (terms[0].1.degree, terms[0].1.spec.clone());
        for (_, t) in &terms {
            assert_eq!(t.degree, degree, "degree mismatch in linear combination");
            assert!(t.spec.same_module(&spec), "module mismatch in linear combination");
        }
        let live: Vec<(C, Cochain<C>)> = terms.iter().filter(|(k, t)| !k.is_zero() && !t.is_zero_node()).cloned().collect();
        if live.is_empty() {
            let seed = terms[0].0.clone();
            return Self::zero(degree, spec, &seed);
        }
        Self::wrap(degree, spec, Node::Lin(live))
    }

    /// Structurally zero (no evaluation involved).
    pub fn is_zero_node(&self) -> bool {
        matches!(&*self.node, Node::Zero(_))
    }

    fn zero_seed(&self) -> Option<C> {
        match &*self.node {
            Node::Zero(c) => Some(c.clone()),
            _ => None,
        }
    }

    /// Coordinatewise imaginary part of the values.
    pub fn imaginary_part(&self) -> Self {
        if self.is_zero_node() {
            return self.clone();
        }
        Self::wrap(self.degree, self.spec.clone(), Node::Imag(self.clone()))
    }

    pub fn add(&self, o: &Self) -> Self {
        let one = self.unit_like(o);
        Self::linear_combination(vec![(one.clone(), self.clone()), (one, o.clone())])
    }

    pub fn sub(&self, o: &Self) -> Self {
        let one = self.unit_like(o);
        Self::linear_combination(vec![(one.clone(), self.clone()), (one.neg_ref(), o.clone())])
    }

    pub fn scale(&self, c: C) -> Self {
        Self::linear_combination(vec![(c, self.clone())])
    }

    fn unit_like(&self, o: &Self) -> C {
        let seed = self.seed().or_else(|| o.seed()).expect("cochain arithmetic needs a coefficient seed");
        seed.from_rational_like(&1.into())
    }

    /// Some coefficient found inside the tree, used to build constants of the
    /// right kind (complex zeros need a precision).
    pub fn seed(&self) -> Option<C> {
        match &*self.node {
            Node::Zero(c) | Node::Func(c, _) | Node::Placeholder(_, c) => Some(c.clone()),
            Node::Const(v) => Some(v.coords[0].clone()),
            Node::Generated(g) => Some(g.s.coords[0].clone()),
            Node::Coboundary(c) | Node::Imag(c) => c.seed(),
            Node::Cup(a, b) => a.seed().or_else(|| b.seed()),
            Node::Lin(ts) => Some(ts[0].0.clone()),
        }
    }

    pub fn with_twist(&self, twist: i32) -> Self {
        Cochain { degree: self.degree, spec: self.spec.with_twist(twist), node: self.node.clone() }
    }

    pub fn is_cocycle_flagged(&self) -> bool {
        matches!(&*self.node, Node::Generated(g) if g.correction.is_none())
    }

    /// Generator values `(h(S), h(U))` of a generated 1-cochain.
    pub fn generators(&self) -> Option<(&ModuleElement<C>, &ModuleElement<C>)> {
        match &*self.node {
            Node::Generated(g) => Some((&g.s, &g.u)),
            _ => None,
        }
    }

    pub fn correction(&self) -> Option<&Cochain<C>> {
        match &*self.node {
            Node::Generated(g) => g.correction.as_ref(),
            _ => None,
        }
    }

    /// Replace every placeholder called `name` by `c`.
    pub fn bind(&self, name: &str, c: &Cochain<C>) -> Self {
        let rebuilt = match &*self.node {
            Node::Placeholder(n, _) if n == name => {
                assert_eq!(c.degree, self.degree, "binding {name} with the wrong degree");
                return c.with_twist(self.spec.twist);
            }
            Node::Zero(_) | Node::Const(_) | Node::Func(..) | Node::Placeholder(..) => return self.clone(),
            Node::Generated(g) => match &g.correction {
                None => return self.clone(),
                Some(z) => Node::Generated(Generators {
                    s: g.s.clone(),
                    u: g.u.clone(),
                    correction: Some(z.bind(name, c)),
                    letters: OnceLock::new(),
                }),
            },
            Node::Coboundary(a) => Node::Coboundary(a.bind(name, c)),
            Node::Imag(a) => Node::Imag(a.bind(name, c)),
            Node::Cup(a, b) => Node::Cup(a.bind(name, c), b.bind(name, c)),
            Node::Lin(ts) => Node::Lin(ts.iter().map(|(k, t)| (k.clone(), t.bind(name, c))).collect()),
        };
        Self::wrap(self.degree, self.spec.clone(), rebuilt)
    }

    /// A short formula string, e.g. `d(v)` or `cup(gen, gen)`.
    pub fn describe(&self) -> String {
        match &*self.node {
            Node::Zero(_) => "0".into(),
            Node::Const(_) => "v".into(),
            Node::Generated(g) => match &g.correction {
                None => "gen".into(),
                Some(z) => format!("gen[{}]", z.describe()),
            },
            Node::Coboundary(a) => format!("d({})", a.describe()),
            Node::Cup(a, b) => format!("cup({}, {})", a.describe(), b.describe()),
            Node::Lin(ts) => format!("lin({})", ts.iter().map(|(_, t)| t.describe()).collect::<Vec<_>>().join(", ")),
            Node::Func(..) => "fn".into(),
            Node::Placeholder(n, _) => n.clone(),
            Node::Imag(a) => format!("im({})", a.describe()),
        }
    }

    fn zero_value(&self) -> Result<ModuleElement<C>, CochainError> {
        match self.seed() {
            Some(s) => Ok(ModuleElement::zeros(self.spec.clone(), &s)),
            None => Err(CochainError::NoSeed),
        }
    }

    pub fn evaluate(&self, args: &[Mat2]) -> Result<ModuleElement<C>, CochainError> {
        if args.len() != self.degree {
            return Err(CochainError::DegreeMismatch { expected: self.degree, got: args.len() });
        }
        let v = match &*self.node {
            Node::Zero(_) => self.zero_value()?,
            Node::Const(v) => v.clone(),
            Node::Generated(g) => {
                let gamma = GammaElement::from_matrix(args[0])?;
                g.evaluate_word(&word_decompose(&gamma))?
            }
            Node::Coboundary(f) => coboundary_eval(f, args)?,
            Node::Cup(f, g) => {
                let p = f.degree;
                let left = f.evaluate(&args[..p])?;
                let prod = Mat2::product(&args[..p]);
                let right = g.evaluate(&args[p..])?.act(&prod)?;
                left.tensor(&right)
            }
            Node::Lin(ts) => {
                let mut acc: Option<ModuleElement<C>> = None;
                for (k, t) in ts {
                    let v = t.evaluate(args)?.mul_coef(k);
                    acc = Some(match acc {
                        None => v,
                        Some(a) => a.add(&v.with_twist(a.spec.twist)),
                    });
                }
                acc.expect("non-empty combination")
            }
            Node::Func(_, f) => f(args)?,
            Node::Placeholder(n, _) => return Err(CochainError::UnboundPlaceholder(n.clone())),
            Node::Imag(a) => a.evaluate(args)?.imaginary_part(),
        };
        Ok(if v.spec.twist == self.spec.twist { v } else { v.with_twist(self.spec.twist) })
    }

    pub fn eval1(&self, g: &GammaElement) -> Result<ModuleElement<C>, CochainError> {
        self.evaluate(&[g.matrix()])
    }

    /// Evaluate a generated 1-cochain along an explicit word. For a genuine
    /// cocycle (or a correctly corrected cochain) the result only depends on
    /// the product of the word.
    pub fn evaluate_word(&self, w: &Word) -> Result<ModuleElement<C>, CochainError> {
        match &*self.node {
            Node::Generated(g) => g.evaluate_word(w),
            _ => self.evaluate(&[w.evaluate()]),
        }
    }

    /// Residuals of `h(S^4)`, `h(U^6)` and `h(S^2) - h(U^3)` under the
    /// extension rule; all vanish exactly when `h` descends to Γ.
    pub fn relation_residuals(&self) -> Result<[ModuleElement<C>; 3], CochainError> {
        match &*self.node {
            Node::Generated(g) => g.relation_residuals(),
            _ => Err(CochainError::NotExtendable),
        }
    }
}

fn coboundary_eval<C: Coef>(f: &Cochain<C>, args: &[Mat2]) -> Result<ModuleElement<C>, CochainError> {
    let n = f.degree;
    // g1 f(g2..) + Σ (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^{n+1} f(g1..g_n)
    let mut acc = f.evaluate(&args[1..])?.act(&args[0])?;
    for i in 1..=n {
        let mut merged: Vec<Mat2> = Vec::with_capacity(n);
        merged.extend_from_slice(&args[..i - 1]);
        merged.push(args[i - 1].mul(&args[i]));
        merged.extend_from_slice(&args[i + 1..]);
        let t = f.evaluate(&merged)?;
        acc = if i % 2 == 1 { acc.sub(&t) } else { acc.add(&t) };
    }
    let last = f.evaluate(&args[..n])?;
    Ok(if n.is_multiple_of(2) { acc.sub(&last) } else { acc.add(&last) })
}

impl<C: Coef> Generators<C> {
    fn z(&self, g: &Mat2, h: &Mat2) -> Result<Option<ModuleElement<C>>, CochainError> {
        match &self.correction {
            None => Ok(None),
            Some(z) => z.evaluate(&[*g, *h]).map(Some),
        }
    }

    /// `h(l·rest) = h(l) + l h(rest) + z(l, rest)`.
    fn step(&self, hl: &ModuleElement<C>, l: &Mat2, rest: &Mat2, hrest: &ModuleElement<C>) -> Result<ModuleElement<C>, CochainError> {
        let mut v = hl.add(&hrest.act(l)?);
        if let Some(z) = self.z(l, rest)? {
            v = v.add(&z);
        }
        Ok(v)
    }

    /// Values on `S, S^-1, T, T^-1`, assuming `h(1) = 0` (normalized `z`).
    fn letter_values(&self) -> Result<&[ModuleElement<C>; 4], CochainError> {
        self.letters
            .get_or_init(|| {
                let (s, u) = (Mat2::S, Mat2::U);
                let s_inv = s.inv();
                // 0 = h(S S^-1) = h(S) + S h(S^-1) + z(S, S^-1)
                let mut t = self.s.clone();
                if let Some(z) = self.z(&s, &s_inv)? {
                    t = t.add(&z);
                }
                let h_s_inv = t.act(&s_inv)?.neg();
                // T = S^-1 U
                let h_t = self.step(&h_s_inv, &s_inv, &u, &self.u)?;
                let t_inv = Mat2::T.inv();
                let mut t = h_t.clone();
                if let Some(z) = self.z(&Mat2::T, &t_inv)? {
                    t = t.add(&z);
                }
                let h_t_inv = t.act(&t_inv)?.neg();
                Ok([self.s.clone(), h_s_inv, h_t, h_t_inv])
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    fn letter_value(&self, l: Letter) -> Result<ModuleElement<C>, CochainError> {
        let vals = self.letter_values()?;
        Ok(match l {
            Letter::S => vals[0].clone(),
            Letter::SInv => vals[1].clone(),
            Letter::T => vals[2].clone(),
            Letter::TInv => vals[3].clone(),
        })
    }

    fn sweep(&self, letters: &[(Mat2, ModuleElement<C>)]) -> Result<ModuleElement<C>, CochainError> {
        let Some((last_m, last_v)) = letters.last() else {
            return Ok(self.s.zero_like());
        };
        let mut rest = *last_m;
        let mut val = last_v.clone();
        for (m, hl) in letters[..letters.len() - 1].iter().rev() {
            val = self.step(hl, m, &rest, &val)?;
            rest = m.mul(&rest);
        }
        Ok(val)
    }

    fn evaluate_word(&self, w: &Word) -> Result<ModuleElement<C>, CochainError> {
        let letters: Vec<(Mat2, ModuleElement<C>)> =
            w.letters.iter().map(|&l| Ok((l.matrix(), self.letter_value(l)?))).collect::<Result<_, CochainError>>()?;
        self.sweep(&letters)
    }

    fn su_word(&self, s_count: usize, u_count: usize) -> Result<ModuleElement<C>, CochainError> {
        let mut letters = vec![(Mat2::S, self.s.clone()); s_count];
        letters.extend(vec![(Mat2::U, self.u.clone()); u_count]);
        self.sweep(&letters)
    }

    fn relation_residuals(&self) -> Result<[ModuleElement<C>; 3], CochainError> {
        Ok([self.su_word(4, 0)?, self.su_word(0, 6)?, self.su_word(2, 0)?.sub(&self.su_word(0, 3)?)])
    }
}
