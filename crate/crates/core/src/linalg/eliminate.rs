//! Fraction-free Gaussian elimination over `Z[q, q^-1]` with row content
//! stripping, used for nullspaces and ranks of matrices over `Q(q)`.

use std::collections::{BTreeMap, BTreeSet};

use super::sparse::{add_entry, SparseMatrix, SparseVec};
use crate::error::{Error, Result};
use crate::field::{LaurentPoly, Rf};

type PolyRow = BTreeMap<usize, LaurentPoly>;

/// Clears denominators and strips the common polynomial factor, so the row
/// spans the same line with the smallest possible entries.
fn to_poly_row(row: &[(usize, Rf)]) -> PolyRow {
    let mut lcm = LaurentPoly::one();
    for (_, v) in row {
        let d = v.denom();
        if !d.is_one() {
            let g = lcm.gcd(d);
            lcm = &lcm * &d.div_exact(&g).expect("gcd divides");
        }
    }
    let mut out: PolyRow = row
        .iter()
        .map(|(c, v)| {
            let scaled = if lcm.is_one() {
                v.numer().clone()
            } else {
                let co = lcm.div_exact(v.denom()).expect("lcm is a multiple");
                v.numer() * &co
            };
            (*c, scaled)
        })
        .collect();
    strip_content(&mut out);
    out
}

fn strip_content(row: &mut PolyRow) {
    let Some(first) = row.values().next() else {
        return;
    };
    let mut g = first.clone();
    let mut low = i64::MAX;
    for v in row.values() {
        low = low.min(v.low_exp().unwrap());
        if !g.is_one() {
            g = g.gcd(v);
        }
    }
    let g = if g.is_zero() { LaurentPoly::one() } else { g };
    for v in row.values_mut() {
        let mut w = if g.is_one() {
            v.clone()
        } else {
            v.div_exact(&g).expect("content divides")
        };
        if low != 0 {
            w = w.shift(-low);
        }
        *v = w;
    }
}

/// `a * row - b * pivot`, with `a` and `b` already divided by their gcd.
fn combine(row: &PolyRow, a: &LaurentPoly, pivot: &PolyRow, b: &LaurentPoly) -> PolyRow {
    let mut out = PolyRow::new();
    for (c, v) in row {
        out.insert(*c, v * a);
    }
    for (c, v) in pivot {
        let t = v * b;
        match out.get_mut(c) {
            Some(x) => {
                *x -= &t;
                if x.is_zero() {
                    out.remove(c);
                }
            }
            None => {
                out.insert(*c, -t);
            }
        }
    }
    out
}

/// Row echelon form: pivot rows keyed by their leading column.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    pivots: Vec<(usize, PolyRow)>,
}

impl Echelon {
    /// Eliminates column by column. Among the rows leading in the current
    /// column the pivot is the entry with the fewest terms, ties going to the
    /// earliest row.
    pub fn compute(m: &SparseMatrix) -> Self {
        let mut rows: Vec<PolyRow> = (0..m.rows())
            .map(|r| to_poly_row(m.row(r)))
            .filter(|r| !r.is_empty())
            .collect();
        let mut by_lead: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for (id, r) in rows.iter().enumerate() {
            by_lead.entry(*r.keys().next().unwrap()).or_default().insert(id);
        }
        let mut pivots = Vec::new();
        while let Some((col, group)) = by_lead.pop_first() {
            let pid = *group
                .iter()
                .min_by_key(|&&id| (rows[id][&col].term_count(), id))
                .unwrap();
            let pivot = std::mem::take(&mut rows[pid]);
            let p = &pivot[&col];
            for &id in group.iter().filter(|&&id| id != pid) {
                let a = &rows[id][&col];
                let g = p.gcd(a);
                let (pa, aa) = (p.div_exact(&g).unwrap(), a.div_exact(&g).unwrap());
                let mut next = combine(&rows[id], &pa, &pivot, &aa);
                debug_assert!(!next.contains_key(&col));
                strip_content(&mut next);
                if let Some(&lead) = next.keys().next() {
                    by_lead.entry(lead).or_default().insert(id);
                }
                rows[id] = next;
            }
            pivots.push((col, pivot));
        }
        Self {
            cols: m.cols(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|(c, _)| *c).collect()
    }

    /// Basis of the right kernel, one vector per free column (ascending),
    /// with that free coordinate set to 1.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        let pivot_cols: BTreeSet<usize> = self.pivots.iter().map(|(c, _)| *c).collect();
        (0..self.cols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|free| self.back_substitute(free))
            .collect()
    }

    fn back_substitute(&self, free: usize) -> SparseVec {
        let mut x = SparseVec::new();
        x.insert(free, Rf::one());
        for (col, row) in self.pivots.iter().rev() {
            let mut acc = Rf::zero();
            for (c, v) in row.range(col + 1..) {
                if let Some(xc) = x.get(c) {
                    acc += &(&Rf::from_poly(v.clone()) * xc);
                }
            }
            if !acc.is_zero() {
                let p = Rf::from_poly(row[col].clone());
                x.insert(*col, -(acc / p));
            }
        }
        x
    }
}

/// Kernel basis of `m` (see [`Echelon::nullspace`]).
pub fn nullspace(m: &SparseMatrix) -> Vec<SparseVec> {
    Echelon::compute(m).nullspace()
}

pub fn rank(m: &SparseMatrix) -> usize {
    Echelon::compute(m).rank()
}

/// Inverse of a square matrix by Gauss-Jordan over `Q(q)`.
pub fn invert(m: &SparseMatrix) -> Result<SparseMatrix> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::Domain(format!("cannot invert a {}x{} matrix", n, m.cols())));
    }
    // Augmented rows [M | I]; identity columns offset by n.
    let mut rows: Vec<SparseVec> = (0..n)
        .map(|r| {
            let mut v = m.row_vec(r);
            v.insert(n + r, Rf::one());
            v
        })
        .collect();
    for col in 0..n {
        let pid = (col..n)
            .filter(|&r| rows[r].contains_key(&col))
            .min_by_key(|&r| (rows[r][&col].term_count(), r))
            .ok_or_else(|| Error::Domain("matrix is singular".into()))?;
        rows.swap(col, pid);
        let inv = rows[col][&col].inv()?;
        let pivot: SparseVec = rows[col].iter().map(|(c, v)| (*c, v * &inv)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col {
                continue;
            }
            if let Some(a) = row.get(&col).cloned() {
                for (c, v) in &pivot {
                    add_entry(row, *c, -(&a * v));
                }
            }
        }
        rows[col] = pivot;
    }
    let inv_rows = rows
        .into_iter()
        .map(|r| r.into_iter().filter(|(c, _)| *c >= n).map(|(c, v)| (c - n, v)).collect())
        .collect();
    Ok(SparseMatrix::from_rows(n, inv_rows))
}

/// Incrementally maintained span of vectors in `Q(q)^dim`.
#[derive(Clone, Debug, Default)]
pub struct SpanBuilder {
    // pivot column -> basis vector with entry 1 at the pivot
    basis: BTreeMap<usize, SparseVec>,
}

impl SpanBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Residual of `v` after reduction by the current basis.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for (p, b) in &self.basis {
            if let Some(c) = v.get(p).cloned() {
                for (j, bj) in b {
                    add_entry(&mut v, *j, -(&c * bj));
                }
            }
        }
        v
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero lead");
        let r: SparseVec = r.iter().map(|(c, x)| (*c, x * &inv)).collect();
        // keep the basis reduced in the new pivot column
        for b in self.basis.values_mut() {
            if let Some(c) = b.get(&p).cloned() {
                for (j, rj) in &r {
                    add_entry(b, *j, -(&c * rj));
                }
            }
        }
        self.basis.insert(p, r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn vectors(&self) -> impl Iterator<Item = &SparseVec> {
        self.basis.values()
    }
}
