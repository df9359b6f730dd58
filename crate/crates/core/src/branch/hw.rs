//! Highest weight vectors of the black-node `sl_2` copies and the basis of
//! `V_l ⊗ V_m` obtained by applying odd-index `f` monomials to them.

use std::collections::BTreeMap;

use super::label::{enumerate_labels, BranchLabel};
use crate::error::{Error, Result};
use crate::field::{qbinom, Rf};
use crate::linalg::{invert, SparseMatrix, SparseVec};
use crate::rep::{generator_matrix, rational, Generator, ModuleSpec, MultiIndex, Space, Vector};

type HwTerm = (Rf, [u32; 2], [u32; 2]);

/// The terms `(coeff, (l-p, p), (m-j+p, j-p))` of `w^{(l,m)}_j`.
pub fn hw_terms(l: u32, m: u32, j: u32) -> Result<Vec<HwTerm>> {
    if j > l.min(m) {
        return Err(Error::Domain(format!("j = {j} exceeds min({l}, {m})")));
    }
    (0..=j)
        .map(|p| {
            let (li, pi) = (i64::from(l), i64::from(p));
            let sign = if p % 2 == 0 { Rf::one() } else { -Rf::one() };
            let c = &(&sign * &Rf::q_pow(pi * (li - pi + 1))) * &Rf::from_poly(qbinom(i64::from(j), pi)?);
            Ok((c, [l - p, p], [m - j + p, j - p]))
        })
        .collect()
}

/// `U_l ⊗ U_m`: the `n = 1` modules at `x = 1`.
pub fn sl2_space(l: u32, m: u32) -> Result<Space> {
    Space::from_specs(&[
        ModuleSpec::vector(1, l, rational(1, 1))?,
        ModuleSpec::vector(1, m, rational(1, 1))?,
    ])
}

/// `w^{(l,m)}_j = Σ_p (-1)^p q^{p(l-p+1)} [j p] v_{(l-p,p)} ⊗ v_{(m-j+p,j-p)}`
pub fn hw_vector(l: u32, m: u32, j: u32) -> Result<Vector> {
    let space = sl2_space(l, m)?;
    let mut coeffs = SparseVec::new();
    for (c, a, b) in hw_terms(l, m, j)? {
        let idx = space
            .index_of(&[MultiIndex::new(a.to_vec()), MultiIndex::new(b.to_vec())])
            .expect("label in range");
        coeffs.insert(idx, c);
    }
    Ok(Vector::from_coeffs(&space, coeffs))
}

/// `V_l ⊗ V_m` at `x = y = 1`.
pub fn branch_space(n: usize, l: u32, m: u32) -> Result<Space> {
    Space::from_specs(&[
        ModuleSpec::vector(n, l, rational(1, 1))?,
        ModuleSpec::vector(n, m, rational(1, 1))?,
    ])
}

/// The image under `ι` of `w^{(l_1,m_1)}_{j_1} ⊗ ... ⊗ w^{(l_n,m_n)}_{j_n}`.
pub fn bold_w(label: &BranchLabel, space: &Space) -> Result<Vector> {
    if !label.is_valid() {
        return Err(Error::Domain(format!("invalid branching label {label}")));
    }
    let n = label.n();
    if space.n() != n || space.factors().len() != 2 {
        return Err(Error::SpaceMismatch(format!("{label} does not live in {space}")));
    }
    let pieces: Vec<Vec<HwTerm>> = (0..n)
        .map(|s| hw_terms(label.lvec[s], label.mvec[s], label.jvec[s]))
        .collect::<Result<_>>()?;
    let mut acc: Vec<(Rf, Vec<u32>, Vec<u32>)> = vec![(Rf::one(), vec![], vec![])];
    for piece in &pieces {
        let mut next = Vec::with_capacity(acc.len() * piece.len());
        for (c, a, b) in &acc {
            for (d, pa, pb) in piece {
                let mut a2 = a.clone();
                a2.extend_from_slice(pa);
                let mut b2 = b.clone();
                b2.extend_from_slice(pb);
                next.push((c * d, a2, b2));
            }
        }
        acc = next;
    }
    let mut coeffs = SparseVec::new();
    for (c, a, b) in acc {
        let idx = space
            .index_of(&[MultiIndex::new(a), MultiIndex::new(b)])
            .ok_or_else(|| Error::SpaceMismatch(format!("{label} does not live in {space}")))?;
        coeffs.insert(idx, c);
    }
    Ok(Vector::from_coeffs(space, coeffs))
}

/// `∏_s f_{2s-1}^{a_s} w`
pub fn apply_f_monomial(fs: &[SparseMatrix], exps: &[u32], v: &SparseVec) -> SparseVec {
    let mut out = v.clone();
    for (f, &a) in fs.iter().zip(exps) {
        for _ in 0..a {
            out = f.apply(&out);
        }
    }
    out
}

/// One element `∏_s f_{2s-1}^{a_s} w_L` of the descendant basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Descendant {
    pub label: BranchLabel,
    pub exps: Vec<u32>,
}

struct WeightClass {
    members: Vec<usize>,
    coords: Vec<usize>,
    inverse: SparseMatrix,
}

/// The basis `{∏ f_{2s-1}^{a_s} w_L : a_s <= l_s + m_s - 2 j_s}` of
/// `V_l ⊗ V_m`, with one inverted change of basis per weight space.
pub struct HwBasis {
    space: Space,
    elements: Vec<Descendant>,
    index: BTreeMap<(BranchLabel, Vec<u32>), usize>,
    vectors: Vec<SparseVec>,
    classes: Vec<WeightClass>,
    class_of_coord: Vec<usize>,
    f_odd: Vec<SparseMatrix>,
}

fn exps_upto(bounds: &[u32]) -> Vec<Vec<u32>> {
    let Some((&first, rest)) = bounds.split_first() else {
        return vec![vec![]];
    };
    let tails = exps_upto(rest);
    let mut out: Vec<Vec<u32>> = (0..=first)
        .flat_map(|a| {
            tails.iter().map(move |t| {
                let mut v = vec![a];
                v.extend_from_slice(t);
                v
            })
        })
        .collect();
    // by total degree, then lexicographically
    out.sort_by_key(|v| (v.iter().sum::<u32>(), v.clone()));
    out
}

impl HwBasis {
    pub fn new(n: usize, l: u32, m: u32) -> Result<Self> {
        let space = branch_space(n, l, m)?;
        let f_odd: Vec<SparseMatrix> = (0..n)
            .map(|s| generator_matrix(&space, Generator::f(2 * s + 1)))
            .collect::<Result<_>>()?;
        let mut elements = Vec::new();
        let mut vectors = Vec::new();
        for label in enumerate_labels(n, l, m) {
            let w = bold_w(&label, &space)?.into_coeffs();
            let bounds: Vec<u32> = (0..n).map(|s| label.string_len(s) - 1).collect();
            for exps in exps_upto(&bounds) {
                vectors.push(apply_f_monomial(&f_odd, &exps, &w));
                elements.push(Descendant { label: label.clone(), exps });
            }
        }
        if elements.len() != space.dim() {
            return Err(Error::IncompleteBasis);
        }
        // each basis vector is a weight vector; group by its weight
        let weight = |v: &SparseVec| -> Vec<i64> {
            let idx = *v.keys().next().expect("descendants are nonzero");
            (0..2 * n).map(|i| space.k_exponent(idx, i)).collect()
        };
        let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (e, v) in vectors.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::IncompleteBasis);
            }
            groups.entry(weight(v)).or_default().push(e);
        }
        let mut coord_groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for idx in 0..space.dim() {
            let key = (0..2 * n).map(|i| space.k_exponent(idx, i)).collect();
            coord_groups.entry(key).or_default().push(idx);
        }
        let mut classes = Vec::new();
        let mut class_of_coord = vec![usize::MAX; space.dim()];
        for (key, members) in groups {
            let coords = coord_groups.remove(&key).ok_or(Error::IncompleteBasis)?;
            if coords.len() != members.len() {
                return Err(Error::IncompleteBasis);
            }
            let pos: BTreeMap<usize, usize> = coords.iter().enumerate().map(|(p, &c)| (c, p)).collect();
            let columns: Vec<SparseVec> = members
                .iter()
                .map(|&e| vectors[e].iter().map(|(c, x)| (pos[c], x.clone())).collect())
                .collect();
            let b = SparseMatrix::from_columns(coords.len(), &columns);
            let inverse = invert(&b).map_err(|_| Error::IncompleteBasis)?;
            for &c in &coords {
                class_of_coord[c] = classes.len();
            }
            classes.push(WeightClass { members, coords, inverse });
        }
        if !coord_groups.is_empty() {
            return Err(Error::IncompleteBasis);
        }
        let index = elements
            .iter()
            .enumerate()
            .map(|(e, d)| ((d.label.clone(), d.exps.clone()), e))
            .collect();
        Ok(Self {
            space,
            elements,
            index,
            vectors,
            classes,
            class_of_coord,
            f_odd,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn elements(&self) -> &[Descendant] {
        &self.elements
    }

    pub fn vector(&self, e: usize) -> &SparseVec {
        &self.vectors[e]
    }

    /// Position of `∏ f^{exps} w_label` in the basis.
    pub fn position(&self, label: &BranchLabel, exps: &[u32]) -> Option<usize> {
        self.index.get(&(label.clone(), exps.to_vec())).copied()
    }

    /// `f_{2s-1}` (`s` 0-based) on the space.
    pub fn f_odd(&self, s: usize) -> &SparseMatrix {
        &self.f_odd[s]
    }

    /// Coordinates of `v` in the descendant basis, keyed by basis position.
    pub fn expand(&self, v: &SparseVec) -> Result<SparseVec> {
        let mut by_class: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (c, x) in v {
            let k = *self.class_of_coord.get(*c).ok_or(Error::IncompleteBasis)?;
            by_class.entry(k).or_default().insert(*c, x.clone());
        }
        let mut out = SparseVec::new();
        for (k, part) in by_class {
            let class = &self.classes[k];
            let local: SparseVec = class
                .coords
                .iter()
                .enumerate()
                .filter_map(|(p, c)| part.get(c).map(|x| (p, x.clone())))
                .collect();
            for (p, x) in class.inverse.apply(&local) {
                out.insert(class.members[p], x);
            }
        }
        // reconstruct and compare
        let mut back = SparseVec::new();
        for (e, x) in &out {
            crate::linalg::axpy(&mut back, x, &self.vectors[*e]);
        }
        if &back != v {
            return Err(Error::IncompleteBasis);
        }
        Ok(out)
    }

    /// Coordinates as `(label, exps) -> coeff`.
    pub fn expand_labelled(&self, v: &SparseVec) -> Result<BTreeMap<(BranchLabel, Vec<u32>), Rf>> {
        Ok(self
            .expand(v)?
            .into_iter()
            .map(|(e, x)| ((self.elements[e].label.clone(), self.elements[e].exps.clone()), x))
            .collect())
    }
}

/// Coordinates of `v` over `{f-monomials applied to bold w}` (see [`HwBasis`]).
pub fn expand_in_hw(basis: &HwBasis, v: &Vector) -> Result<SparseVec> {
    if !basis.space().same_as(v.space()) {
        return Err(Error::SpaceMismatch(format!("{} vs {}", basis.space(), v.space())));
    }
    basis.expand(v.coeffs())
}
