use std::fmt;

use serde::{Deserialize, Serialize};

/// Composition `(a_1, ..., a_2n)` labelling a basis vector of a symmetric
/// tensor module. Positions are 1-based and read modulo `2n`, so position
/// `0` is the last entry.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    /// `l` times the unit vector at position 1.
    pub fn highest(len: usize, level: u32) -> Self {
        let mut v = vec![0; len];
        v[0] = level;
        Self(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|a|`
    pub fn level(&self) -> u32 {
        self.0.iter().sum()
    }

    fn slot(&self, pos: i64) -> usize {
        let len = self.0.len() as i64;
        ((pos - 1).rem_euclid(len)) as usize
    }

    /// Entry at the (cyclic, 1-based) position.
    pub fn at(&self, pos: i64) -> u32 {
        self.0[self.slot(pos)]
    }

    /// `a + e_plus - e_minus`, or `None` if an entry would go negative.
    pub fn moved(&self, plus: i64, minus: i64) -> Option<Self> {
        let (p, m) = (self.slot(plus), self.slot(minus));
        if p == m {
            return Some(self.clone());
        }
        if self.0[m] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[m] -= 1;
        v[p] += 1;
        Some(Self(v))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

/// All compositions of `level` into `2n` parts, largest first entry first
/// (descending lexicographic order).
pub fn enumerate_basis(n: usize, level: u32) -> Vec<MultiIndex> {
    fn rec(parts: usize, rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if parts == 1 {
            prefix.push(rest);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=rest).rev() {
            prefix.push(a);
            rec(parts - 1, rest - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(2 * n, level, &mut Vec::with_capacity(2 * n), &mut out);
    out
}

/// `C(l + 2n - 1, 2n - 1)`
pub fn basis_size(n: usize, level: u32) -> usize {
    let (top, k) = (level as u128 + 2 * n as u128 - 1, 2 * n as u128 - 1);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (top - i) / (i + 1);
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn basis_order_and_size() {
        assert_eq!(enumerate_basis(1, 1), vec![mi(&[1, 0]), mi(&[0, 1])]);
        assert_eq!(
            enumerate_basis(2, 1),
            vec![mi(&[1, 0, 0, 0]), mi(&[0, 1, 0, 0]), mi(&[0, 0, 1, 0]), mi(&[0, 0, 0, 1])]
        );
        assert_eq!(enumerate_basis(2, 2).len(), 10);
        assert_eq!(enumerate_basis(2, 2)[0], mi(&[2, 0, 0, 0]));
        for n in 1..4 {
            for l in 0..5 {
                let b = enumerate_basis(n, l);
                assert_eq!(b.len(), basis_size(n, l));
                assert!(b.windows(2).all(|w| w[0] > w[1]));
                assert!(b.iter().all(|a| a.level() == l));
            }
        }
    }

    #[test]
    fn cyclic_positions() {
        let a = mi(&[1, 0, 0, 1]);
        assert_eq!(a.at(0), 1);
        assert_eq!(a.at(4), 1);
        assert_eq!(a.at(5), 1);
        assert_eq!(a.at(2), 0);
        // e_0 = e_4: move one unit from position 1 to position 0
        assert_eq!(a.moved(0, 1), Some(mi(&[0, 0, 0, 2])));
        assert_eq!(a.moved(1, 2), None);
    }
}
