//! The transition matrix from `(i, L)` with `|j| = j` to labels with
//! `|j'| = j + 1`, read off from `b_i f_{i-1} f_{i+1} w_L`.

use serde::Serialize;

use super::label::{enumerate_labels, BranchLabel};
use super::oracle::{oracle_terms, OracleContext, OracleKind, OracleSetup};
use crate::error::Result;
use crate::linalg::{rank, SparseMatrix};

#[derive(Clone, Debug, Serialize)]
pub struct MatrixC {
    /// `(i, L)`
    pub rows: Vec<(usize, BranchLabel)>,
    pub cols: Vec<BranchLabel>,
    #[serde(skip)]
    pub matrix: SparseMatrix,
}

impl MatrixC {
    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }

    pub fn is_full_column_rank(&self) -> bool {
        self.rank() == self.cols.len()
    }
}

fn shape(n: usize, l: u32, m: u32, j: u32) -> (Vec<OracleContext>, Vec<BranchLabel>) {
    let labels = enumerate_labels(n, l, m);
    let mut rows = Vec::new();
    // i = 0, 2, ..., 2n-2 in that order; i = 2s mod 2n, so i = 0 is s = n
    for t in 0..n {
        let s = if t == 0 { n } else { t };
        for lb in labels.iter().filter(|lb| lb.j() == j) {
            rows.push(OracleContext { s, label: lb.clone() });
        }
    }
    let cols = labels.into_iter().filter(|lb| lb.j() == j + 1).collect();
    (rows, cols)
}

fn finish(rows: &[OracleContext], cols: Vec<BranchLabel>, triplets: Vec<(usize, usize, crate::Rf)>) -> MatrixC {
    MatrixC {
        rows: rows.iter().map(|c| (c.i(), c.label.clone())).collect(),
        matrix: SparseMatrix::from_triplets(rows.len(), cols.len(), triplets),
        cols,
    }
}

/// Entries computed by acting on the vectors and expanding.
pub fn build_matrix_c(n: usize, l: u32, m: u32, j: u32) -> Result<MatrixC> {
    let setup = OracleSetup::new(n, l, m)?;
    let (rows, cols) = shape(n, l, m, j);
    let zero = vec![0u32; n];
    let mut triplets = Vec::new();
    for (r, ctx) in rows.iter().enumerate() {
        let coords = setup.basis.expand(&setup.lhs(ctx, 1, 1)?)?;
        for (c, lb) in cols.iter().enumerate() {
            let pos = setup.basis.position(lb, &zero).expect("label is in the basis");
            if let Some(x) = coords.get(&pos) {
                triplets.push((r, c, x.clone()));
            }
        }
    }
    Ok(finish(&rows, cols, triplets))
}

/// Entries from the closed-form `A` coefficients.
pub fn matrix_c_from_oracle(n: usize, l: u32, m: u32, j: u32) -> MatrixC {
    let (rows, cols) = shape(n, l, m, j);
    let mut triplets = Vec::new();
    for (r, ctx) in rows.iter().enumerate() {
        for t in oracle_terms(OracleKind::Bffw, ctx) {
            if t.f_minus != 0 || t.f_plus != 0 || t.coeff.is_zero() {
                continue;
            }
            let Some(lb) = &t.label else { continue };
            if let Some(c) = cols.iter().position(|x| x == lb) {
                triplets.push((r, c, t.coeff));
            }
        }
    }
    finish(&rows, cols, triplets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_case_shape_and_rank() {
        let c = build_matrix_c(2, 1, 1, 0).unwrap();
        assert_eq!((c.rows.len(), c.cols.len()), (8, 2));
        assert_eq!(c.rank(), 2);
        assert!(c.rows.iter().all(|(_, lb)| lb.is_valid()));
    }

    #[test]
    fn computed_matches_closed_form() {
        let a = build_matrix_c(2, 1, 1, 0).unwrap();
        let b = matrix_c_from_oracle(2, 1, 1, 0);
        assert_eq!(a.matrix, b.matrix);
    }
}
