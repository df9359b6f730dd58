//! Weight-space blocking. An operator commuting with `k_i` for every `i` in
//! a chosen index set maps the `k`-eigenspace of a basis vector into the
//! eigenspace with the same eigenvalues, so its matrix is supported on pairs
//! of blocks with equal keys.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::rep::Space;

/// Basis indices sharing the same `k_i` exponents (for the chosen `i`).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct WeightBlock {
    pub key: Vec<i64>,
    pub members: Vec<usize>,
}

impl WeightBlock {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Partition of the basis of `space` by `k_i`-exponents, `i` in `indices`.
/// Blocks come in key order, members ascending.
pub fn weight_blocks(space: &Space, indices: &[usize]) -> Vec<WeightBlock> {
    let mut map: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for idx in 0..space.dim() {
        let key = indices.iter().map(|&i| space.k_exponent(idx, i)).collect();
        map.entry(key).or_default().push(idx);
    }
    map.into_iter()
        .map(|(key, members)| WeightBlock { key, members })
        .collect()
}

/// Signed total content `Σ ± α` over the tensor factors (minus for duals).
pub fn content_key(space: &Space, idx: usize) -> Vec<i64> {
    let mut key = vec![0i64; 2 * space.n()];
    for (m, a) in space.factors().iter().zip(space.label(idx)) {
        let sign = if m.dual() { -1 } else { 1 };
        for (k, v) in key.iter_mut().zip(a.entries()) {
            *k += sign * i64::from(*v);
        }
    }
    key
}

/// Pairs `(domain block, codomain block)` with equal `k`-exponents over
/// `indices`; keys present on one side only are dropped.
pub fn block_decompose(
    domain: &Space,
    codomain: &Space,
    indices: &[usize],
) -> Vec<(WeightBlock, WeightBlock)> {
    let cod: BTreeMap<Vec<i64>, WeightBlock> = weight_blocks(codomain, indices)
        .into_iter()
        .map(|b| (b.key.clone(), b))
        .collect();
    weight_blocks(domain, indices)
        .into_iter()
        .filter_map(|d| cod.get(&d.key).map(|c| (d.clone(), c.clone())))
        .collect()
}

/// All Cartan indices `0..2n`.
pub fn all_indices(n: usize) -> Vec<usize> {
    (0..2 * n).collect()
}
