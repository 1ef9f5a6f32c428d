use serde::{Deserialize, Serialize};

/// `S^{m1}H ⊗ ... ⊗ S^{mk}H (twist)`. No factors is the trivial module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub factors: Vec<u32>,
    pub twist: i32,
}

impl ModuleSpec {
    pub fn new(factors: Vec<u32>, twist: i32) -> Self {
        ModuleSpec { factors, twist }
    }

    pub fn sym(m: u32) -> Self {
        ModuleSpec { factors: vec![m], twist: 0 }
    }

    pub fn tensor2(m1: u32, m2: u32) -> Self {
        ModuleSpec { factors: vec![m1, m2], twist: 0 }
    }

    pub fn trivial() -> Self {
        ModuleSpec { factors: vec![], twist: 0 }
    }

    pub fn with_twist(&self, twist: i32) -> Self {
        ModuleSpec { factors: self.factors.clone(), twist }
    }

    pub fn twisted_by(&self, dr: i32) -> Self {
        self.with_twist(self.twist + dr)
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|&m| m as usize + 1).product()
    }

    /// Same underlying module, ignoring the twist label.
    pub fn same_module(&self, o: &ModuleSpec) -> bool {
        self.factors == o.factors
    }

    pub fn tensor(&self, o: &ModuleSpec) -> ModuleSpec {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&o.factors);
        ModuleSpec { factors, twist: self.twist + o.twist }
    }

    /// `a`-degrees per factor of the monomial with this index.
    pub fn mono(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0; self.factors.len()];
        for (f, &m) in self.factors.iter().enumerate().rev() {
            let n = m as usize + 1;
            out[f] = (idx % n) as u32;
            idx /= n;
        }
        out
    }

    pub fn index(&self, mono: &[u32]) -> usize {
        assert_eq!(mono.len(), self.factors.len(), "monomial arity");
        let mut idx = 0;
        for (&i, &m) in mono.iter().zip(&self.factors) {
            assert!(i <= m, "a-degree {i} exceeds {m}");
            idx = idx * (m as usize + 1) + i as usize;
        }
        idx
    }

    pub fn monomials(&self) -> Vec<Vec<u32>> {
        (0..self.dim()).map(|i| self.mono(i)).collect()
    }

    /// Total `w`- (equivalently `b`-) degree `sum (m_f - i_f)` of a monomial.
    pub fn w_degree(&self, idx: usize) -> u32 {
        self.mono(idx).iter().zip(&self.factors).map(|(i, m)| m - i).sum()
    }

    /// The sl2 weight `sum (m_f - 2 i_f)` of a monomial.
    pub fn weight(&self, idx: usize) -> i32 {
        self.mono(idx).iter().zip(&self.factors).map(|(&i, &m)| m as i32 - 2 * i as i32).sum()
    }
}
