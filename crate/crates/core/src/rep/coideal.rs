//! Coideal subalgebra of type AII: generated by `e_i, f_i, k_i` for
//! `i ∈ I_bullet` and `b_j = f_j + γ_j T(e_j) k_j^{-1}` for `j ∈ I_circ`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::action::{
    check_space, generator_matrix, push_term, word_combination_matrix, Vector, WordCombination,
};
use super::generator::{wrap, GenKind, Generator};
use super::module::Space;
use super::operator::LinearOperator;
use crate::error::{Error, Result};
use crate::field::{qint_rf, Rf};
use crate::linalg::{SparseMatrix, SparseVec};

/// `(eps, γ)` fixing the coideal subalgebra `U^ι_eps`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CoidealParams {
    pub n: usize,
    pub eps: u8,
    #[serde(with = "crate::dump::rf_map")]
    gamma: BTreeMap<usize, Rf>,
}

impl CoidealParams {
    /// `gammas[t]` is `γ_j` for `j = 2t + eps`.
    pub fn new(n: usize, eps: u8, gammas: Vec<Rf>) -> Result<Self> {
        if eps > 1 {
            return Err(Error::Domain(format!("eps must be 0 or 1, got {eps}")));
        }
        if n < 1 {
            return Err(Error::Domain("n must be positive".into()));
        }
        if gammas.len() != n {
            return Err(Error::Domain(format!(
                "expected {n} gamma values (one per white node), got {}",
                gammas.len()
            )));
        }
        let gamma = gammas
            .into_iter()
            .enumerate()
            .map(|(t, g)| (2 * t + eps as usize, g))
            .collect();
        Ok(Self { n, eps, gamma })
    }

    /// All `γ_j = -q`.
    pub fn standard(n: usize, eps: u8) -> Result<Self> {
        Self::new(n, eps, vec![-Rf::q(); n])
    }

    /// White nodes `{eps, 2 + eps, ..., 2n - 2 + eps}`.
    pub fn i_circ(&self) -> Vec<usize> {
        (0..self.n).map(|t| 2 * t + self.eps as usize).collect()
    }

    /// Black nodes: the complement of [`i_circ`](Self::i_circ) in `Z_2n`.
    pub fn i_bullet(&self) -> Vec<usize> {
        (0..self.n).map(|t| 2 * t + 1 - self.eps as usize).collect()
    }

    pub fn is_white(&self, i: usize) -> bool {
        self.gamma.contains_key(&wrap(i as i64, self.n))
    }

    pub fn gamma(&self, j: usize) -> Result<&Rf> {
        self.gamma
            .get(&wrap(j as i64, self.n))
            .ok_or_else(|| Error::Domain(format!("{j} is not a white node for eps = {}", self.eps)))
    }

    pub fn gammas(&self) -> impl Iterator<Item = (usize, &Rf)> {
        self.gamma.iter().map(|(j, g)| (*j, g))
    }

    pub fn gamma_product(&self) -> Rf {
        self.gamma.values().fold(Rf::one(), |acc, g| &acc * g)
    }

    /// `(-q)^n`
    pub fn required_product(&self) -> Rf {
        (-Rf::q()).pow(self.n as i64).expect("nonzero")
    }

    /// The existence condition `∏ γ_j = (-q)^n` for the K matrix.
    pub fn satisfies_condition(&self) -> bool {
        self.gamma_product() == self.required_product()
    }

    /// Generating set `{e_i, f_i, k_i : i ∈ I_bullet} ∪ {b_j : j ∈ I_circ}`.
    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        for i in self.i_bullet() {
            out.extend([Generator::e(i), Generator::f(i), Generator::k(i)]);
        }
        out.extend(self.i_circ().into_iter().map(Generator::b));
        out
    }
}

/// `b_i` expanded into words:
/// `f_i + γ_i (e_{i+1}e_{i-1}e_i - q^{-1}(e_{i+1}e_ie_{i-1} + e_{i-1}e_ie_{i+1}) + q^{-2}e_ie_{i-1}e_{i+1}) k_i^{-1}`.
pub fn b_word(i: usize, params: &CoidealParams) -> Result<WordCombination> {
    let n = params.n;
    let i = wrap(i as i64, n);
    let gamma = params.gamma(i)?.clone();
    let (im, ip) = (wrap(i as i64 - 1, n), wrap(i as i64 + 1, n));
    let (e, kinv) = (Generator::e, Generator::kinv(i));
    let qm1 = Rf::q_pow(-1);
    Ok(vec![
        (Rf::one(), vec![Generator::f(i)]),
        (gamma.clone(), vec![e(ip), e(im), e(i), kinv]),
        (-(&gamma * &qm1), vec![e(ip), e(i), e(im), kinv]),
        (-(&gamma * &qm1), vec![e(im), e(i), e(ip), kinv]),
        (&gamma * &Rf::q_pow(-2), vec![e(i), e(im), e(ip), kinv]),
    ])
}

/// Matrix of `b_i` on any space, computed from its word expansion (through
/// the coproduct on tensor products).
pub fn b_matrix(space: &Space, i: usize, params: &CoidealParams) -> Result<SparseMatrix> {
    if space.n() != params.n {
        return Err(Error::SpaceMismatch(format!(
            "coideal built for n = {}, space has n = {}",
            params.n,
            space.n()
        )));
    }
    word_combination_matrix(space, &b_word(i, params)?)
}

/// Matrix of any coideal generator (`b` kinds use `params`).
pub fn coideal_matrix(space: &Space, g: Generator, params: &CoidealParams) -> Result<SparseMatrix> {
    match g.kind {
        GenKind::B => b_matrix(space, g.index, params),
        _ => generator_matrix(space, g),
    }
}

pub fn b_operator(space: &Space, i: usize, params: &CoidealParams) -> Result<LinearOperator> {
    LinearOperator::new(space.clone(), space.clone(), b_matrix(space, i, params)?)
}

/// `b_i v` by definition, valid on simple modules and tensor products.
pub fn act_b(i: usize, params: &CoidealParams, space: &Space, v: &Vector) -> Result<Vector> {
    check_space(space, v.space())?;
    let m = b_matrix(space, i, params)?;
    Ok(Vector::from_coeffs(space, m.apply(v.coeffs())))
}

/// Closed two-term action of `b_i` on a simple module:
///
/// `b_i v_a = x^{-d(i,0)} [a_i] v_{a-e_i+e_{i+1}} - x^{d(i,0)+d(i,1)+d(i,-1)} q^{-1} γ_i [a_{i+2}] v_{a+e_{i-1}-e_{i+2}}`
///
/// `b_i v*_a = x^{-d(i,0)} [a_{i+1}] v*_{a+e_i-e_{i+1}} - x^{d(i,0)+d(i,1)+d(i,-1)} q^{-1} γ_i [a_{i-1}] v*_{a-e_{i-1}+e_{i+2}}`
///
/// On the dual module the powers of `x` are those produced by the `e_i`,
/// `f_i` actions on `V*_{l,x}`, the same as on `V_{l,x}`.
pub fn act_b_closed(i: usize, params: &CoidealParams, space: &Space, v: &Vector) -> Result<Vector> {
    check_space(space, v.space())?;
    if !space.is_simple() {
        return Err(Error::Domain("closed b_i action is only defined on simple modules".into()));
    }
    let n = params.n;
    let m = space.factor(0);
    let i = wrap(i as i64, n);
    let gamma = params.gamma(i)?;
    let ii = i as i64;
    let d0 = i64::from(i == 0);
    let d_side = d0 + i64::from(i == 1) + i64::from(i == 2 * n - 1);
    let second = &(gamma * &Rf::q_pow(-1)) * &Rf::from_int(-1);
    let mut out = SparseVec::new();
    for (&idx, c) in v.coeffs() {
        let a = m.label(idx);
        let (t1, c1, t2, c2) = if !m.dual() {
            (
                a.moved(ii + 1, ii),
                &m.x_pow(-d0) * &qint_rf(a.at(ii) as i64),
                a.moved(ii - 1, ii + 2),
                &(&m.x_pow(d_side) * &second) * &qint_rf(a.at(ii + 2) as i64),
            )
        } else {
            (
                a.moved(ii, ii + 1),
                &m.x_pow(-d0) * &qint_rf(a.at(ii + 1) as i64),
                a.moved(ii + 2, ii - 1),
                &(&m.x_pow(d_side) * &second) * &qint_rf(a.at(ii - 1) as i64),
            )
        };
        if let Some(t) = t1 {
            push_term(&mut out, m.index_of(&t).unwrap(), c * &c1);
        }
        if let Some(t) = t2 {
            push_term(&mut out, m.index_of(&t).unwrap(), c * &c2);
        }
    }
    Ok(Vector::from_coeffs(space, out))
}
