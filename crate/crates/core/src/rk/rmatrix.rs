//! R matrices as swap intertwiners `A ⊗ B -> B ⊗ A` of the full quantum
//! affine algebra, solved exactly from the intertwining equations.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    all_indices, assemble_intertwiner_system, block_decompose, intertwines, SparseMatrix,
};
use crate::rep::{generator_matrix, Generator, LinearOperator, ModuleSpec, Space};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum RKind {
    /// `V_{l,x} ⊗ V_{m,y} -> V_{m,y} ⊗ V_{l,x}`
    R,
    /// `V*_{l,x} ⊗ V_{m,y} -> V_{m,y} ⊗ V*_{l,x}`
    Rstar,
    /// `V*_{l,x} ⊗ V*_{m,y} -> V*_{m,y} ⊗ V*_{l,x}`
    Rstarstar,
}

impl RKind {
    pub fn duals(self) -> (bool, bool) {
        match self {
            RKind::R => (false, false),
            RKind::Rstar => (true, false),
            RKind::Rstarstar => (true, true),
        }
    }

    /// The kind of the swap `A ⊗ B -> B ⊗ A`, if it is one of the three.
    pub fn of(a: &ModuleSpec, b: &ModuleSpec) -> Option<RKind> {
        match (a.dual, b.dual) {
            (false, false) => Some(RKind::R),
            (true, false) => Some(RKind::Rstar),
            (true, true) => Some(RKind::Rstarstar),
            (false, true) => None,
        }
    }
}

impl fmt::Display for RKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RKind::R => "R",
            RKind::Rstar => "R*",
            RKind::Rstarstar => "R**",
        })
    }
}

#[derive(Clone, Debug)]
pub struct RMatrix {
    pub kind: RKind,
    pub l: u32,
    pub m: u32,
    pub x: BigRational,
    pub y: BigRational,
    pub op: LinearOperator,
}

/// Generators `e_i, f_i, k_i` for all `i ∈ Z_2n`.
pub fn affine_generators(n: usize) -> Vec<Generator> {
    (0..2 * n)
        .flat_map(|i| [Generator::e(i), Generator::f(i), Generator::k(i)])
        .collect()
}

type CacheKey = (ModuleSpec, ModuleSpec);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<LinearOperator>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<LinearOperator>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The intertwiner `a ⊗ b -> b ⊗ a`, normalized so that its first nonzero
/// entry in (column, row) order is 1. Results are cached by parameters.
pub fn swap_intertwiner(a: &ModuleSpec, b: &ModuleSpec) -> Result<Arc<LinearOperator>> {
    let key = (a.clone(), b.clone());
    if let Some(op) = cache().read().expect("cache lock").get(&key) {
        return Ok(op.clone());
    }
    let op = Arc::new(solve_swap(a, b)?);
    cache()
        .write()
        .expect("cache lock")
        .entry(key)
        .or_insert_with(|| op.clone());
    Ok(op)
}

fn solve_swap(a: &ModuleSpec, b: &ModuleSpec) -> Result<LinearOperator> {
    if a.n != b.n {
        return Err(Error::SpaceMismatch(format!("{a} and {b} have different n")));
    }
    let (ma, mb) = (a.build(), b.build());
    let domain = Space::new(vec![ma.clone(), mb.clone()])?;
    let codomain = Space::new(vec![mb, ma])?;
    let actions: Vec<(SparseMatrix, SparseMatrix)> = affine_generators(a.n)
        .into_iter()
        .map(|g| Ok((generator_matrix(&domain, g)?, generator_matrix(&codomain, g)?)))
        .collect::<Result<_>>()?;
    let pairs = block_decompose(&domain, &codomain, &all_indices(a.n));
    let sys = assemble_intertwiner_system(&actions, &pairs, domain.dim(), codomain.dim());
    let kernel = sys.nullspace();
    match kernel.len() {
        0 => return Err(Error::NoIntertwiner),
        1 => {}
        d => return Err(Error::NonGenericParameters(d)),
    }
    let v = sys.normalize(&kernel[0]);
    debug_assert!(sys.residual_is_zero(&v));
    let matrix = sys.to_matrix(&v);
    debug_assert!(intertwines(&matrix, &actions));
    LinearOperator::new(domain, codomain, matrix)
}

/// `R`, `R*` or `R**` between levels `l`, `m` at spectral parameters `x`, `y`.
pub fn build_r(kind: RKind, n: usize, l: u32, m: u32, x: BigRational, y: BigRational) -> Result<RMatrix> {
    let (da, db) = kind.duals();
    let a = ModuleSpec::new(n, l, da, x.clone())?;
    let b = ModuleSpec::new(n, m, db, y.clone())?;
    let op = swap_intertwiner(&a, &b)?.as_ref().clone();
    Ok(RMatrix { kind, l, m, x, y, op })
}

/// Whether `op` intertwines every `e_i, f_i, k_i` between its domain and
/// codomain.
pub fn is_affine_intertwiner(op: &LinearOperator) -> Result<bool> {
    let n = op.domain().n();
    let actions: Vec<(SparseMatrix, SparseMatrix)> = affine_generators(n)
        .into_iter()
        .map(|g| Ok((generator_matrix(op.domain(), g)?, generator_matrix(op.codomain(), g)?)))
        .collect::<Result<_>>()?;
    Ok(intertwines(op.matrix(), &actions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rf;
    use crate::linalg::weight_blocks;
    use crate::rep::{rational, MultiIndex, Vector};

    #[test]
    fn r_v1_v1_is_normalized_intertwiner() {
        let r = build_r(RKind::R, 2, 1, 1, rational(2, 1), rational(3, 1)).unwrap();
        assert_eq!(r.op.matrix().rows(), 16);
        assert!(is_affine_intertwiner(&r.op).unwrap());
        let hi = MultiIndex::highest(4, 1);
        let v = Vector::basis_labelled(r.op.domain(), &[hi.clone(), hi.clone()]).unwrap();
        let w = Vector::basis_labelled(r.op.codomain(), &[hi.clone(), hi]).unwrap();
        assert_eq!(r.op.apply(&v).unwrap(), w);
    }

    #[test]
    fn r_mixed_levels() {
        let r = build_r(RKind::R, 2, 2, 1, rational(5, 1), rational(2, 1)).unwrap();
        assert!(is_affine_intertwiner(&r.op).unwrap());
        let e = |l| MultiIndex::highest(4, l);
        let v = Vector::basis_labelled(r.op.domain(), &[e(2), e(1)]).unwrap();
        let w = Vector::basis_labelled(r.op.codomain(), &[e(1), e(2)]).unwrap();
        assert_eq!(r.op.apply(&v).unwrap(), w);
    }

    #[test]
    fn dual_kinds_exist() {
        for kind in [RKind::Rstar, RKind::Rstarstar] {
            let r = build_r(kind, 2, 1, 1, rational(2, 1), rational(3, 1)).unwrap();
            assert!(is_affine_intertwiner(&r.op).unwrap());
            let lead = r.op.matrix().iter().min_by_key(|(row, col, _)| (*col, *row)).unwrap();
            assert_eq!(lead.2, &Rf::one());
        }
    }

    #[test]
    fn rstarstar_blocks_match_r() {
        let r = build_r(RKind::R, 2, 1, 1, rational(2, 1), rational(3, 1)).unwrap();
        let s = build_r(RKind::Rstarstar, 2, 1, 1, rational(2, 1), rational(3, 1)).unwrap();
        let sizes = |sp: &Space| {
            let mut v: Vec<usize> = weight_blocks(sp, &all_indices(2)).iter().map(|b| b.len()).collect();
            v.sort();
            v
        };
        assert_eq!(sizes(r.op.domain()), sizes(s.op.domain()));
    }

    #[test]
    fn equal_parameters_are_not_generic_or_identity() {
        // x = y makes V ⊗ V reducible; the swap intertwiner space then grows
        // or the solution still exists. Either way no panic.
        let r = build_r(RKind::R, 2, 1, 1, rational(1, 1), rational(1, 1));
        match r {
            Ok(r) => assert!(is_affine_intertwiner(&r.op).unwrap()),
            Err(e) => assert!(matches!(e, Error::NonGenericParameters(_))),
        }
    }
}
