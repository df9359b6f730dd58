//! Closure of a seed vector under the coideal subalgebra.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SpanBuilder, SparseVec};
use crate::rep::{coideal_matrix, CoidealParams, Space};

#[derive(Clone, Debug, Serialize)]
pub struct ProbeResult {
    pub space_dim: usize,
    /// Dimension of the invariant subspace generated by each seed.
    pub dims: Vec<usize>,
}

impl ProbeResult {
    pub fn all_full(&self) -> bool {
        self.dims.iter().all(|&d| d == self.space_dim)
    }
}

fn closure(gens: &[SparseMatrix], seed: &SparseVec, full: usize) -> usize {
    let mut span = SpanBuilder::new();
    span.insert(seed);
    let mut frontier = vec![seed.clone()];
    while let Some(v) = frontier.pop() {
        if span.dim() == full {
            break;
        }
        for g in gens {
            let w = g.apply(&v);
            if !w.is_empty() && span.insert(&w) {
                frontier.push(w);
            }
        }
    }
    span.dim()
}

/// Applies `e_i, f_i, k_i` (`i` black) and `b_i` (`i` white) until the span
/// of each seed stops growing.
pub fn invariant_subspace_probe(space: &Space, params: &CoidealParams, seeds: &[SparseVec]) -> Result<ProbeResult> {
    use rayon::prelude::*;
    if seeds.iter().any(|s| s.is_empty()) {
        return Err(Error::Domain("seed vectors must be nonzero".into()));
    }
    let gens: Vec<SparseMatrix> = params
        .generators()
        .into_iter()
        .map(|g| coideal_matrix(space, g, params))
        .collect::<Result<_>>()?;
    let full = space.dim();
    let dims = seeds.par_iter().map(|s| closure(&gens, s, full)).collect();
    Ok(ProbeResult { space_dim: full, dims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::branch_space;
    use crate::Rf;

    #[test]
    fn highest_vector_generates_everything() {
        let space = branch_space(2, 1, 1).unwrap();
        let seed: SparseVec = [(0, Rf::one())].into_iter().collect();
        for eps in 0..2 {
            let p = CoidealParams::standard(2, eps).unwrap();
            let r = invariant_subspace_probe(&space, &p, std::slice::from_ref(&seed)).unwrap();
            assert_eq!(r.dims, vec![16]);
        }
    }

    #[test]
    fn zero_seed_rejected() {
        let space = branch_space(2, 1, 1).unwrap();
        let p = CoidealParams::standard(2, 0).unwrap();
        assert!(invariant_subspace_probe(&space, &p, &[SparseVec::new()]).is_err());
    }
}
