use std::collections::BTreeMap;

use crate::field::Rf;

/// Sparse vector: coordinate index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Rf>;

/// Adds `c * v` into `acc`, dropping entries that cancel.
pub fn axpy(acc: &mut SparseVec, c: &Rf, v: &SparseVec) {
    for (&i, a) in v {
        add_entry(acc, i, c * a);
    }
}

pub(crate) fn add_entry(acc: &mut SparseVec, i: usize, val: Rf) {
    if val.is_zero() {
        return;
    }
    match acc.entry(i) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(val);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &val;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Row-major sparse matrix over `Q(q)`; each row is sorted by column and
/// holds no zero entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Rf)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, Rf::one())]).collect(),
        }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rf)>,
    {
        let mut acc: Vec<SparseVec> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            add_entry(&mut acc[r], c, v);
        }
        Self::from_rows(cols, acc)
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        Self {
            rows: rows.len(),
            cols,
            data: rows
                .into_iter()
                .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        Self::from_triplets(
            rows,
            columns.len(),
            columns
                .iter()
                .enumerate()
                .flat_map(|(c, v)| v.iter().map(move |(&r, x)| (r, c, x.clone()))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, Rf)] {
        &self.data[r]
    }

    pub fn row_vec(&self, r: usize) -> SparseVec {
        self.data[r].iter().cloned().collect()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Rf> {
        let row = &self.data[r];
        row.binary_search_by_key(&c, |e| e.0).ok().map(|k| &row[k].1)
    }

    /// Entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rf)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn column(&self, c: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                row.binary_search_by_key(&c, |e| e.0)
                    .ok()
                    .map(|k| (r, row[k].1.clone()))
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (r, c, v) in self.iter() {
            data[c].push((r, v.clone()));
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = SparseVec::new();
                for (k, a) in row {
                    for (j, b) in &rhs.data[*k] {
                        add_entry(&mut acc, *j, a * b);
                    }
                }
                acc.into_iter().collect()
            })
            .collect();
        Self {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = Rf::zero();
            for (c, a) in row {
                if let Some(x) = v.get(c) {
                    acc += &(a * x);
                }
            }
            if !acc.is_zero() {
                out.insert(r, acc);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rf) -> Self {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(j, v)| (*j, v * c)).collect())
                .collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.lin_comb(&Rf::one(), rhs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.lin_comb(&-Rf::one(), rhs)
    }

    /// `self + c * rhs`
    pub fn lin_comb(&self, c: &Rf, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch in sum");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| {
                let mut acc: SparseVec = a.iter().cloned().collect();
                for (j, v) in b {
                    add_entry(&mut acc, *j, c * v);
                }
                acc.into_iter().collect()
            })
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Kronecker product; row `(i, k)` maps to `i * rhs.rows + k`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut data = Vec::with_capacity(self.rows * rhs.rows);
        for row_a in &self.data {
            for row_b in &rhs.data {
                let mut row = Vec::with_capacity(row_a.len() * row_b.len());
                for (ja, a) in row_a {
                    for (jb, b) in row_b {
                        row.push((ja * rhs.cols + jb, a * b));
                    }
                }
                data.push(row);
            }
        }
        Self {
            rows: self.rows * rhs.rows,
            cols: self.cols * rhs.cols,
            data,
        }
    }

    /// Nonzero columns of the rectangular block `rows x cols` restricted by index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        let data = rows
            .iter()
            .map(|&r| {
                self.data[r]
                    .iter()
                    .filter_map(|(c, v)| col_pos.get(c).map(|&p| (p, v.clone())))
                    .collect()
            })
            .collect();
        Self {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> SparseMatrix {
        SparseMatrix::from_triplets(rows, cols, entries.iter().map(|&(r, c, v)| (r, c, Rf::from_int(v))))
    }

    #[test]
    fn product_and_transpose() {
        let a = m(2, 3, &[(0, 0, 1), (0, 2, 2), (1, 1, 3)]);
        let b = m(3, 2, &[(0, 1, 1), (2, 0, 4), (1, 0, -1)]);
        let ab = a.mul(&b);
        assert_eq!(ab, m(2, 2, &[(0, 0, 8), (0, 1, 1), (1, 0, -3)]));
        assert_eq!(ab.transpose().transpose(), ab);
        assert_eq!(a.transpose().get(2, 0), Some(&Rf::from_int(2)));
    }

    #[test]
    fn cancellation_drops_entries() {
        let a = m(1, 1, &[(0, 0, 1), (0, 0, -1)]);
        assert!(a.is_zero());
        assert_eq!(a.nnz(), 0);
        let b = m(2, 2, &[(0, 0, 1), (1, 1, 1)]);
        assert!(b.sub(&SparseMatrix::identity(2)).is_zero());
    }

    #[test]
    fn kron_layout() {
        let a = m(2, 2, &[(0, 1, 1), (1, 0, 2)]);
        let i = SparseMatrix::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.get(0, 2), Some(&Rf::from_int(1)));
        assert_eq!(k.get(3, 1), Some(&Rf::from_int(2)));
        assert_eq!(k.nnz(), 4);
    }
}
