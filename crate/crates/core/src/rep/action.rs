use std::fmt;

use super::generator::{wrap, GenKind, Generator};
use super::module::{Module, Space};
use super::multiindex::MultiIndex;
use super::operator::LinearOperator;
use crate::error::{Error, Result};
use crate::field::{qint_rf, Rf};
use crate::linalg::{add_entry, axpy, SparseMatrix, SparseVec};

/// Vector in a tagged space.
#[derive(Clone, PartialEq, Eq)]
pub struct Vector {
    space: Space,
    coeffs: SparseVec,
}

impl Vector {
    pub fn zero(space: &Space) -> Self {
        Self {
            space: space.clone(),
            coeffs: SparseVec::new(),
        }
    }

    pub fn basis(space: &Space, idx: usize) -> Self {
        assert!(idx < space.dim());
        Self {
            space: space.clone(),
            coeffs: [(idx, Rf::one())].into_iter().collect(),
        }
    }

    /// Basis vector with the given factor labels.
    pub fn basis_labelled(space: &Space, labels: &[MultiIndex]) -> Result<Self> {
        let idx = space
            .index_of(labels)
            .ok_or_else(|| Error::Domain(format!("{labels:?} is not a basis label of {space}")))?;
        Ok(Self::basis(space, idx))
    }

    pub fn from_coeffs(space: &Space, coeffs: SparseVec) -> Self {
        debug_assert!(coeffs.keys().all(|&i| i < space.dim()));
        Self {
            space: space.clone(),
            coeffs: coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> SparseVec {
        self.coeffs
    }

    pub fn get(&self, idx: usize) -> Rf {
        self.coeffs.get(&idx).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(labels, coefficient)` for each nonzero entry.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<MultiIndex>, &Rf)> + '_ {
        self.coeffs.iter().map(|(&i, c)| (self.space.label(i), c))
    }

    pub fn scale(&self, c: &Rf) -> Self {
        let mut out = Self::zero(&self.space);
        axpy(&mut out.coeffs, c, &self.coeffs);
        out
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rf, other: &Vector) -> Result<()> {
        check_space(&self.space, &other.space)?;
        axpy(&mut self.coeffs, c, &other.coeffs);
        Ok(())
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        let mut out = self.clone();
        out.add_scaled(&Rf::one(), other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        let mut out = self.clone();
        out.add_scaled(&-Rf::one(), other)?;
        Ok(out)
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_map();
        for (labels, c) in self.entries() {
            list.entry(&labels, &c.to_string());
        }
        list.finish()
    }
}

pub(crate) fn check_space(expected: &Space, got: &Space) -> Result<()> {
    if expected.same_as(got) {
        Ok(())
    } else {
        Err(Error::SpaceMismatch(format!("expected {expected}, got {got}")))
    }
}

/// Action of `e_i`, `f_i`, `k_i^{±1}` on one basis vector of a simple module:
/// the image is `coeff * v_target`, or zero.
pub fn simple_action(m: &Module, g: Generator, a: &MultiIndex) -> Option<(MultiIndex, Rf)> {
    let n = m.n();
    let i = wrap(g.index as i64, n) as i64;
    let x_exp = i64::from(i == 0);
    let (dual, kexp) = (m.dual(), m.k_exponent(a, i as usize));
    match (g.kind, dual) {
        (GenKind::K, _) => Some((a.clone(), Rf::q_pow(kexp))),
        (GenKind::Kinv, _) => Some((a.clone(), Rf::q_pow(-kexp))),
        // e_i v_a = x^{d(i,0)} [a_{i+1}] v_{a + e_i - e_{i+1}}
        (GenKind::E, false) => {
            let t = a.moved(i, i + 1)?;
            Some((t, &m.x_pow(x_exp) * &qint_rf(a.at(i + 1) as i64)))
        }
        // e_i v*_a = x^{d(i,0)} [a_i] v*_{a - e_i + e_{i+1}}
        (GenKind::E, true) => {
            let t = a.moved(i + 1, i)?;
            Some((t, &m.x_pow(x_exp) * &qint_rf(a.at(i) as i64)))
        }
        // f_i v_a = x^{-d(i,0)} [a_i] v_{a - e_i + e_{i+1}}
        (GenKind::F, false) => {
            let t = a.moved(i + 1, i)?;
            Some((t, &m.x_pow(-x_exp) * &qint_rf(a.at(i) as i64)))
        }
        // f_i v*_a = x^{-d(i,0)} [a_{i+1}] v*_{a + e_i - e_{i+1}}
        (GenKind::F, true) => {
            let t = a.moved(i, i + 1)?;
            Some((t, &m.x_pow(-x_exp) * &qint_rf(a.at(i + 1) as i64)))
        }
        (GenKind::B, _) => None,
    }
}

/// Matrix of a Chevalley generator on a (tensor) space, acting on tensor
/// products through the iterated coproduct
/// `Δ(e) = e⊗1 + k⊗e`, `Δ(f) = f⊗k^{-1} + 1⊗f`, `Δ(k) = k⊗k`.
pub fn generator_matrix(space: &Space, g: Generator) -> Result<SparseMatrix> {
    if g.kind == GenKind::B {
        return Err(Error::Domain("b_i needs coideal parameters; use act_b".into()));
    }
    let n = space.n();
    let i = wrap(g.index as i64, n);
    let factors = space.factors();
    let mut triplets = Vec::new();
    for col in 0..space.dim() {
        let parts = space.split(col);
        let kexps: Vec<i64> = parts
            .iter()
            .zip(factors)
            .map(|(&j, m)| m.k_exponent(m.label(j), i))
            .collect();
        match g.kind {
            GenKind::K | GenKind::Kinv => {
                let s: i64 = kexps.iter().sum();
                let s = if g.kind == GenKind::K { s } else { -s };
                triplets.push((col, col, Rf::q_pow(s)));
            }
            GenKind::E | GenKind::F => {
                for p in 0..factors.len() {
                    let m = &factors[p];
                    let Some((target, c)) = simple_action(m, g, m.label(parts[p])) else {
                        continue;
                    };
                    if c.is_zero() {
                        continue;
                    }
                    // e: k on every factor to the left; f: k^{-1} on every factor to the right
                    let twist: i64 = if g.kind == GenKind::E {
                        kexps[..p].iter().sum()
                    } else {
                        -kexps[p + 1..].iter().sum::<i64>()
                    };
                    let row = col - parts[p] * space.stride(p)
                        + m.index_of(&target).expect("target in basis") * space.stride(p);
                    triplets.push((row, col, c.shift(twist)));
                }
            }
            GenKind::B => unreachable!(),
        }
    }
    Ok(SparseMatrix::from_triplets(space.dim(), space.dim(), triplets))
}

pub fn generator_operator(space: &Space, g: Generator) -> Result<LinearOperator> {
    Ok(LinearOperator::from_parts(space.clone(), space.clone(), generator_matrix(space, g)?))
}

/// Single Chevalley generator acting on a vector.
pub fn act_gen(g: Generator, space: &Space, v: &Vector) -> Result<Vector> {
    check_space(space, v.space())?;
    let m = generator_matrix(space, g)?;
    Ok(Vector::from_coeffs(space, m.apply(v.coeffs())))
}

/// Word `g_1 g_2 ... g_r` acting on `v`, rightmost generator first.
pub fn act_word(word: &[Generator], space: &Space, v: &Vector) -> Result<Vector> {
    if word.is_empty() {
        return Err(Error::Domain("empty generator word".into()));
    }
    check_space(space, v.space())?;
    let mut cur = v.coeffs().clone();
    for &g in word.iter().rev() {
        cur = generator_matrix(space, g)?.apply(&cur);
        if cur.is_empty() {
            break;
        }
    }
    Ok(Vector::from_coeffs(space, cur))
}

/// Linear combination of words, each applied right to left.
pub type WordCombination = Vec<(Rf, Vec<Generator>)>;

pub fn word_combination_matrix(space: &Space, combo: &WordCombination) -> Result<SparseMatrix> {
    let mut cache: std::collections::HashMap<Generator, SparseMatrix> = Default::default();
    let mut total = SparseMatrix::zeros(space.dim(), space.dim());
    for (c, word) in combo {
        let mut acc: Option<SparseMatrix> = None;
        for &g in word {
            if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(g) {
                e.insert(generator_matrix(space, g)?);
            }
            let gm = &cache[&g];
            acc = Some(match acc {
                None => gm.clone(),
                Some(a) => a.mul(gm),
            });
        }
        let acc = acc.ok_or_else(|| Error::Domain("empty generator word".into()))?;
        total = total.lin_comb(c, &acc);
    }
    Ok(total)
}

/// Sum of single-entry updates, used by closed-form actions.
pub(crate) fn push_term(acc: &mut SparseVec, idx: usize, c: Rf) {
    add_entry(acc, idx, c);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::module::{rational, ModuleSpec};

    fn simple(n: usize, l: u32, dual: bool, x: (i64, i64)) -> Space {
        Space::simple(ModuleSpec::new(n, l, dual, rational(x.0, x.1)).unwrap().build())
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn e1_raises() {
        let s = simple(2, 1, false, (1, 1));
        let v = Vector::basis_labelled(&s, &[mi(&[0, 1, 0, 0])]).unwrap();
        let w = act_gen(Generator::e(1), &s, &v).unwrap();
        assert_eq!(w, Vector::basis_labelled(&s, &[mi(&[1, 0, 0, 0])]).unwrap());
    }

    #[test]
    fn k1_eigenvalue() {
        let s = simple(2, 3, false, (1, 1));
        let v = Vector::basis_labelled(&s, &[mi(&[2, 1, 0, 0])]).unwrap();
        let w = act_gen(Generator::k(1), &s, &v).unwrap();
        assert_eq!(w, v.scale(&Rf::q()));
    }

    #[test]
    fn e0_uses_wrapped_position() {
        let s = simple(2, 2, false, (3, 1));
        let v = Vector::basis_labelled(&s, &[mi(&[1, 0, 0, 1])]).unwrap();
        let w = act_gen(Generator::e(0), &s, &v).unwrap();
        let expect = Vector::basis_labelled(&s, &[mi(&[0, 0, 0, 2])]).unwrap().scale(&Rf::from_int(3));
        assert_eq!(w, expect);
    }

    #[test]
    fn coproduct_of_e() {
        let a = ModuleSpec::vector(2, 1, rational(2, 1)).unwrap().build();
        let b = ModuleSpec::vector(2, 1, rational(5, 1)).unwrap().build();
        let sa = Space::simple(a.clone());
        let sb = Space::simple(b.clone());
        let t = Space::new(vec![a, b]).unwrap();
        let (x, y) = (mi(&[0, 1, 0, 0]), mi(&[0, 1, 0, 0]));
        let v = Vector::basis_labelled(&t, &[x.clone(), y.clone()]).unwrap();
        let got = act_gen(Generator::e(1), &t, &v).unwrap();
        // e v ⊗ w + k v ⊗ e w
        let ev = act_gen(Generator::e(1), &sa, &Vector::basis_labelled(&sa, std::slice::from_ref(&x)).unwrap()).unwrap();
        let kv = act_gen(Generator::k(1), &sa, &Vector::basis_labelled(&sa, &[x]).unwrap()).unwrap();
        let ew = act_gen(Generator::e(1), &sb, &Vector::basis_labelled(&sb, std::slice::from_ref(&y)).unwrap()).unwrap();
        let mut expect = Vector::zero(&t);
        for (la, ca) in ev.entries() {
            let idx = t.index_of(&[la[0].clone(), y.clone()]).unwrap();
            expect.add_scaled(ca, &Vector::basis(&t, idx)).unwrap();
        }
        for (la, ca) in kv.entries() {
            for (lb, cb) in ew.entries() {
                let idx = t.index_of(&[la[0].clone(), lb[0].clone()]).unwrap();
                expect.add_scaled(&(ca * cb), &Vector::basis(&t, idx)).unwrap();
            }
        }
        assert_eq!(got, expect);
    }

    #[test]
    fn k_kinv_word_is_identity() {
        let s = simple(2, 2, true, (3, 5));
        for idx in 0..s.dim() {
            let v = Vector::basis(&s, idx);
            let w = act_word(&[Generator::k(1), Generator::kinv(1)], &s, &v).unwrap();
            assert_eq!(w, v);
        }
    }

    #[test]
    fn ef_commutator_on_basis() {
        // [e_1, f_1] v_a = [a_1 - a_2] v_a
        let s = simple(2, 3, false, (2, 1));
        for idx in 0..s.dim() {
            let v = Vector::basis(&s, idx);
            let ef = act_word(&[Generator::e(1), Generator::f(1)], &s, &v).unwrap();
            let fe = act_word(&[Generator::f(1), Generator::e(1)], &s, &v).unwrap();
            let a = s.label(idx)[0].clone();
            let expect = v.scale(&qint_rf(a.at(1) as i64 - a.at(2) as i64));
            assert_eq!(ef.sub(&fe).unwrap(), expect);
        }
    }

    #[test]
    fn space_mismatch_is_error() {
        let s = simple(2, 1, false, (1, 1));
        let t = simple(2, 1, false, (2, 1));
        assert!(matches!(
            act_gen(Generator::e(1), &s, &Vector::basis(&t, 0)),
            Err(Error::SpaceMismatch(_))
        ));
        assert!(act_word(&[], &s, &Vector::basis(&s, 0)).is_err());
    }
}
