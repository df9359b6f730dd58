use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::multiindex::{enumerate_basis, MultiIndex};
use crate::error::{Error, Result};
use crate::field::Rf;

/// Parameters of `V_{l,x}` (or `V*_{l,x}` when `dual`).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub n: usize,
    pub l: u32,
    pub dual: bool,
    #[serde(with = "crate::dump::rational_string")]
    pub x: BigRational,
}

impl ModuleSpec {
    pub fn new(n: usize, l: u32, dual: bool, x: BigRational) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("rank parameter n must be positive".into()));
        }
        if x.is_zero() {
            return Err(Error::Domain("spectral parameter must be nonzero".into()));
        }
        Ok(Self { n, l, dual, x })
    }

    pub fn vector(n: usize, l: u32, x: BigRational) -> Result<Self> {
        Self::new(n, l, false, x)
    }

    pub fn covector(n: usize, l: u32, x: BigRational) -> Result<Self> {
        Self::new(n, l, true, x)
    }

    pub fn build(&self) -> Arc<Module> {
        Arc::new(Module::new(self.clone()))
    }
}

impl fmt::Debug for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star = if self.dual { "*" } else { "" };
        write!(f, "V{star}[n={}, l={}, x={}]", self.n, self.l, self.x)
    }
}

/// A symmetric tensor module with its basis table.
pub struct Module {
    spec: ModuleSpec,
    x: Rf,
    basis: Vec<MultiIndex>,
    lookup: HashMap<MultiIndex, usize>,
}

impl Module {
    pub fn new(spec: ModuleSpec) -> Self {
        let basis = enumerate_basis(spec.n, spec.l);
        let lookup = basis.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let x = Rf::from_rational(&spec.x);
        Self {
            spec,
            x,
            basis,
            lookup,
        }
    }

    pub fn spec(&self) -> &ModuleSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn dual(&self) -> bool {
        self.spec.dual
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> &MultiIndex {
        &self.basis[i]
    }

    pub fn index_of(&self, a: &MultiIndex) -> Option<usize> {
        self.lookup.get(a).copied()
    }

    /// The spectral parameter as an element of `Q(q)`.
    pub fn x(&self) -> &Rf {
        &self.x
    }

    /// `x^e`
    pub fn x_pow(&self, e: i64) -> Rf {
        if e == 0 {
            Rf::one()
        } else {
            self.x.pow(e).expect("x is nonzero")
        }
    }

    /// Exponent of `q` in the eigenvalue of `k_i` on the basis vector `a`.
    pub fn k_exponent(&self, a: &MultiIndex, i: usize) -> i64 {
        let i = i as i64;
        let d = a.at(i) as i64 - a.at(i + 1) as i64;
        if self.spec.dual {
            -d
        } else {
            d
        }
    }
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module({})", self.spec)
    }
}

/// Tensor product of modules (a single factor is a simple module). Basis
/// vectors are tuples of factor indices in lexicographic order, first factor
/// most significant.
#[derive(Clone)]
pub struct Space {
    factors: Vec<Arc<Module>>,
    strides: Vec<usize>,
    dim: usize,
}

impl Space {
    pub fn new(factors: Vec<Arc<Module>>) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::Domain("a space needs at least one factor".into()));
        };
        let n = first.n();
        if factors.iter().any(|m| m.n() != n) {
            return Err(Error::SpaceMismatch("tensor factors built over different n".into()));
        }
        let mut strides = vec![1; factors.len()];
        for p in (0..factors.len().saturating_sub(1)).rev() {
            strides[p] = strides[p + 1] * factors[p + 1].dim();
        }
        let dim = factors.iter().map(|m| m.dim()).product();
        Ok(Self {
            factors,
            strides,
            dim,
        })
    }

    pub fn simple(m: Arc<Module>) -> Self {
        Self::new(vec![m]).expect("one factor")
    }

    pub fn from_specs(specs: &[ModuleSpec]) -> Result<Self> {
        Self::new(specs.iter().map(ModuleSpec::build).collect())
    }

    pub fn factors(&self) -> &[Arc<Module>] {
        &self.factors
    }

    pub fn factor(&self, p: usize) -> &Arc<Module> {
        &self.factors[p]
    }

    pub fn specs(&self) -> Vec<ModuleSpec> {
        self.factors.iter().map(|m| m.spec().clone()).collect()
    }

    pub fn n(&self) -> usize {
        self.factors[0].n()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_simple(&self) -> bool {
        self.factors.len() == 1
    }

    /// Factor indices of the basis vector `idx`.
    pub fn split(&self, idx: usize) -> Vec<usize> {
        self.strides
            .iter()
            .zip(&self.factors)
            .map(|(s, m)| (idx / s) % m.dim())
            .collect()
    }

    pub fn join(&self, parts: &[usize]) -> usize {
        parts.iter().zip(&self.strides).map(|(p, s)| p * s).sum()
    }

    pub fn stride(&self, p: usize) -> usize {
        self.strides[p]
    }

    pub fn label(&self, idx: usize) -> Vec<MultiIndex> {
        self.split(idx)
            .into_iter()
            .zip(&self.factors)
            .map(|(i, m)| m.label(i).clone())
            .collect()
    }

    pub fn index_of(&self, labels: &[MultiIndex]) -> Option<usize> {
        if labels.len() != self.factors.len() {
            return None;
        }
        let mut parts = Vec::with_capacity(labels.len());
        for (a, m) in labels.iter().zip(&self.factors) {
            parts.push(m.index_of(a)?);
        }
        Some(self.join(&parts))
    }

    /// Exponent of `q` in the `k_i` eigenvalue of basis vector `idx`.
    pub fn k_exponent(&self, idx: usize, i: usize) -> i64 {
        self.split(idx)
            .into_iter()
            .zip(&self.factors)
            .map(|(j, m)| m.k_exponent(m.label(j), i))
            .sum()
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &Space) -> Result<Space> {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        Space::new(f)
    }

    /// Factors `[from, to)` as a space of their own.
    pub fn slice(&self, from: usize, to: usize) -> Space {
        Space::new(self.factors[from..to].to_vec()).expect("nonempty slice")
    }

    pub fn same_as(&self, other: &Space) -> bool {
        self.factors.len() == other.factors.len()
            && self
                .factors
                .iter()
                .zip(&other.factors)
                .all(|(a, b)| a.spec() == b.spec())
    }
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Space {}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, m) in self.factors.iter().enumerate() {
            if p > 0 {
                f.write_str(" ⊗ ")?;
            }
            write!(f, "{}", m.spec())?;
        }
        Ok(())
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn rational_one() -> BigRational {
    BigRational::one()
}
