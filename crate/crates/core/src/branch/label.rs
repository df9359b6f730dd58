use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rep::basis_size;

/// `(l, m, j)`: n-tuples with `|l| = l`, `|m| = m` and `0 <= j_s <= min(l_s, m_s)`,
/// indexing the highest weight vectors `w^{(l,m)}_j` of the `n` commuting
/// `sl_2` copies at the black nodes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BranchLabel {
    pub lvec: Vec<u32>,
    pub mvec: Vec<u32>,
    pub jvec: Vec<u32>,
}

impl BranchLabel {
    pub fn new(lvec: Vec<u32>, mvec: Vec<u32>, jvec: Vec<u32>) -> Result<Self> {
        let label = Self { lvec, mvec, jvec };
        if !label.is_valid() {
            return Err(Error::Domain(format!("invalid branching label {label}")));
        }
        Ok(label)
    }

    /// Built from signed tuples; `None` unless every constraint holds.
    pub fn checked(lvec: &[i64], mvec: &[i64], jvec: &[i64]) -> Option<Self> {
        let conv = |v: &[i64]| -> Option<Vec<u32>> { v.iter().map(|&x| u32::try_from(x).ok()).collect() };
        let label = Self {
            lvec: conv(lvec)?,
            mvec: conv(mvec)?,
            jvec: conv(jvec)?,
        };
        label.is_valid().then_some(label)
    }

    pub fn is_valid(&self) -> bool {
        let n = self.lvec.len();
        n > 0
            && self.mvec.len() == n
            && self.jvec.len() == n
            && (0..n).all(|s| self.jvec[s] <= self.lvec[s].min(self.mvec[s]))
    }

    pub fn n(&self) -> usize {
        self.lvec.len()
    }

    pub fn l(&self) -> u32 {
        self.lvec.iter().sum()
    }

    pub fn m(&self) -> u32 {
        self.mvec.iter().sum()
    }

    pub fn j(&self) -> u32 {
        self.jvec.iter().sum()
    }

    /// Dimension `l_s + m_s - 2 j_s + 1` of the `s`-th (0-based) `sl_2` string.
    pub fn string_len(&self, s: usize) -> u32 {
        self.lvec[s] + self.mvec[s] - 2 * self.jvec[s] + 1
    }

    /// Dimension of the `U(I_bullet)`-module generated by this vector.
    pub fn module_dim(&self) -> u64 {
        (0..self.n()).map(|s| u64::from(self.string_len(s))).product()
    }
}

impl fmt::Display for BranchLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(l={:?}, m={:?}, j={:?})", self.lvec, self.mvec, self.jvec)
    }
}

impl fmt::Debug for BranchLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Compositions of `total` into `parts` nonnegative parts, descending lex.
pub fn compositions(parts: usize, total: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(parts - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All labels for `V_l ⊗ V_m` over `n` pairs.
pub fn enumerate_labels(n: usize, l: u32, m: u32) -> Vec<BranchLabel> {
    let mut out = Vec::new();
    for lvec in compositions(n, l) {
        for mvec in compositions(n, m) {
            let bounds: Vec<u32> = (0..n).map(|s| lvec[s].min(mvec[s])).collect();
            for jvec in boxes(&bounds) {
                out.push(BranchLabel {
                    lvec: lvec.clone(),
                    mvec: mvec.clone(),
                    jvec,
                });
            }
        }
    }
    out
}

/// Tuples `0 <= j_s <= bounds[s]`, ascending lex.
fn boxes(bounds: &[u32]) -> Vec<Vec<u32>> {
    let Some((&first, rest)) = bounds.split_first() else {
        return vec![vec![]];
    };
    let tails = boxes(rest);
    (0..=first)
        .flat_map(|j| {
            tails.iter().map(move |t| {
                let mut v = vec![j];
                v.extend_from_slice(t);
                v
            })
        })
        .collect()
}

/// `Σ_labels ∏_s (l_s + m_s - 2 j_s + 1)` against `dim V_l · dim V_m`.
pub fn dimension_identity(n: usize, l: u32, m: u32) -> (u64, u64) {
    let lhs = enumerate_labels(n, l, m).iter().map(BranchLabel::module_dim).sum();
    let rhs = basis_size(n, l) as u64 * basis_size(n, m) as u64;
    (lhs, rhs)
}
