//! Linear systems `X A(g) - B(g) X = 0` in the unknown entries of `X`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::blocks::WeightBlock;
use super::eliminate::nullspace;
use super::sparse::{add_entry, SparseMatrix, SparseVec};

#[derive(Clone, Debug)]
pub struct IntertwinerSystem {
    pub domain_dim: usize,
    pub codomain_dim: usize,
    /// Unknown `u` is the entry `X[unknowns[u].0][unknowns[u].1]`.
    pub unknowns: Vec<(usize, usize)>,
    pub matrix: SparseMatrix,
}

/// One row per nonzero equation `(X A - B X)[c][d]`, for each generator
/// given as `(A on the domain, B on the codomain)`. Unknowns are the entries
/// inside the paired blocks, ordered by block pair, then row, then column.
pub fn assemble_intertwiner_system(
    actions: &[(SparseMatrix, SparseMatrix)],
    pairs: &[(WeightBlock, WeightBlock)],
    domain_dim: usize,
    codomain_dim: usize,
) -> IntertwinerSystem {
    let mut unknowns = Vec::new();
    for (d, c) in pairs {
        for &r in &c.members {
            for &col in &d.members {
                unknowns.push((r, col));
            }
        }
    }
    let equations: Vec<BTreeMap<(usize, usize), SparseVec>> = actions
        .par_iter()
        .map(|(a, b)| {
            let bt = b.transpose();
            let mut eqs: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
            for (u, &(c, t)) in unknowns.iter().enumerate() {
                // X[c][t] A[t][d] feeds equation (c, d)
                for (d, coeff) in a.row(t) {
                    add_entry(eqs.entry((c, *d)).or_default(), u, coeff.clone());
                }
                // -B[c'][c] X[c][t] feeds equation (c', t)
                for (c2, coeff) in bt.row(c) {
                    add_entry(eqs.entry((*c2, t)).or_default(), u, -coeff);
                }
            }
            eqs
        })
        .collect();
    let rows: Vec<SparseVec> = equations
        .into_iter()
        .flat_map(|m| m.into_values())
        .filter(|r| !r.is_empty())
        .collect();
    let matrix = SparseMatrix::from_rows(unknowns.len(), rows);
    IntertwinerSystem {
        domain_dim,
        codomain_dim,
        unknowns,
        matrix,
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl IntertwinerSystem {
    /// Kernel basis as vectors over the unknowns. Unknowns that never meet in
    /// an equation are independent, so each connected component is
    /// eliminated separately (in parallel) and the pieces are merged in
    /// order of their smallest unknown.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        let nu = self.unknowns.len();
        let mut parent: Vec<usize> = (0..nu).collect();
        for r in 0..self.matrix.rows() {
            let row = self.matrix.row(r);
            if let Some(&(first, _)) = row.first() {
                for (u, _) in &row[1..] {
                    let a = find(&mut parent, first);
                    let b = find(&mut parent, *u);
                    if a != b {
                        parent[b.max(a)] = a.min(b);
                    }
                }
            }
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for u in 0..nu {
            let root = find(&mut parent, u);
            comps.entry(root).or_default().push(u);
        }
        let mut comp_rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for r in 0..self.matrix.rows() {
            if let Some(&(first, _)) = self.matrix.row(r).first() {
                let root = find(&mut parent, first);
                comp_rows.entry(root).or_default().push(r);
            }
        }
        let comps: Vec<(usize, Vec<usize>)> = comps.into_iter().collect();
        let pieces: Vec<Vec<SparseVec>> = comps
            .par_iter()
            .map(|(root, members)| {
                let local: BTreeMap<usize, usize> =
                    members.iter().enumerate().map(|(i, &u)| (u, i)).collect();
                let rows: Vec<SparseVec> = comp_rows
                    .get(root)
                    .map(|rs| {
                        rs.iter()
                            .map(|&r| {
                                self.matrix
                                    .row(r)
                                    .iter()
                                    .map(|(u, v)| (local[u], v.clone()))
                                    .collect()
                            })
                            .collect()
                    })
                    .unwrap_or_default();
                let sub = SparseMatrix::from_rows(members.len(), rows);
                nullspace(&sub)
                    .into_iter()
                    .map(|v| v.into_iter().map(|(i, x)| (members[i], x)).collect())
                    .collect()
            })
            .collect();
        pieces.into_iter().flatten().collect()
    }

    /// The operator matrix whose entries are given by `v` over the unknowns.
    pub fn to_matrix(&self, v: &SparseVec) -> SparseMatrix {
        SparseMatrix::from_triplets(
            self.codomain_dim,
            self.domain_dim,
            v.iter().map(|(u, x)| {
                let (r, c) = self.unknowns[*u];
                (r, c, x.clone())
            }),
        )
    }

    /// Scales `v` so its first nonzero entry in (column, row) order is 1.
    pub fn normalize(&self, v: &SparseVec) -> SparseVec {
        let lead = v
            .iter()
            .min_by_key(|(u, _)| {
                let (r, c) = self.unknowns[**u];
                (c, r)
            })
            .map(|(_, x)| x.clone());
        match lead {
            Some(x) if !x.is_one() => {
                let inv = x.inv().expect("nonzero");
                v.iter().map(|(u, y)| (*u, y * &inv)).collect()
            }
            _ => v.clone(),
        }
    }

    pub fn residual_is_zero(&self, v: &SparseVec) -> bool {
        self.matrix.apply(v).is_empty()
    }
}

/// Whether `X A = B X` for every pair.
pub fn intertwines(x: &SparseMatrix, actions: &[(SparseMatrix, SparseMatrix)]) -> bool {
    actions
        .par_iter()
        .all(|(a, b)| x.mul(a) == b.mul(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::blocks::{all_indices, block_decompose};
    use crate::rep::{generator_matrix, rational, Generator, ModuleSpec, Space};

    fn actions(dom: &Space, cod: &Space, gens: &[Generator]) -> Vec<(SparseMatrix, SparseMatrix)> {
        gens.iter()
            .map(|g| (generator_matrix(dom, *g).unwrap(), generator_matrix(cod, *g).unwrap()))
            .collect()
    }

    #[test]
    fn k_only_system_is_empty_on_blocks() {
        let s = Space::from_specs(&[
            ModuleSpec::vector(2, 1, rational(2, 1)).unwrap(),
            ModuleSpec::vector(2, 1, rational(3, 1)).unwrap(),
        ])
        .unwrap();
        let gens: Vec<Generator> = (0..4).map(Generator::k).collect();
        let pairs = block_decompose(&s, &s, &all_indices(2));
        let sys = assemble_intertwiner_system(&actions(&s, &s, &gens), &pairs, 16, 16);
        assert_eq!(sys.matrix.rows(), 0);
        assert_eq!(sys.unknowns.len(), 4 + 6 * 4);
        assert_eq!(sys.nullspace().len(), sys.unknowns.len());
    }

    #[test]
    fn k_only_full_system_forces_blocks() {
        let s = Space::from_specs(&[
            ModuleSpec::vector(2, 1, rational(2, 1)).unwrap(),
            ModuleSpec::vector(2, 1, rational(3, 1)).unwrap(),
        ])
        .unwrap();
        let gens: Vec<Generator> = (0..4).map(Generator::k).collect();
        let everything = vec![(
            WeightBlock { key: vec![], members: (0..16).collect() },
            WeightBlock { key: vec![], members: (0..16).collect() },
        )];
        let sys = assemble_intertwiner_system(&actions(&s, &s, &gens), &everything, 16, 16);
        assert_eq!(sys.nullspace().len(), 28);
    }
}
