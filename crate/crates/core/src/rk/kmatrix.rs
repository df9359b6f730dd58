//! K matrices `K(x): V_{l,x} -> V*_{l,1/x}` intertwining the coideal
//! subalgebra `U^ι_eps`.

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Rf;
use crate::linalg::{assemble_intertwiner_system, block_decompose, intertwines, SparseMatrix};
use crate::rep::{coideal_matrix, sigma_perm, CoidealParams, LinearOperator, ModuleSpec, Space};

#[derive(Clone, Debug)]
pub struct KMatrix {
    pub params: CoidealParams,
    pub l: u32,
    pub x: BigRational,
    pub op: LinearOperator,
}

/// The outcome of solving the K-system directly: the dimension of the
/// solution space, and the (rescaled) solution when it is unique.
#[derive(Clone, Debug)]
pub struct KSolved {
    pub dimension: usize,
    pub k: Option<KMatrix>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KSolvedSummary {
    pub dimension: usize,
    pub matches_closed_form: Option<bool>,
}

/// `(V_{l,x}, V*_{l,1/x})`
pub fn k_spaces(n: usize, l: u32, x: &BigRational) -> Result<(Space, Space)> {
    if x == &BigRational::from_integer(0.into()) {
        return Err(Error::Domain("spectral parameter must be nonzero".into()));
    }
    let dom = Space::simple(ModuleSpec::vector(n, l, x.clone())?.build());
    let cod = Space::simple(ModuleSpec::covector(n, l, x.recip())?.build());
    Ok((dom, cod))
}

/// `K(x) v_a = x^{eps(a_1 - a_2n)} ∏_{j ∈ I_circ} (-q^{-1} γ_j)^{-(a_{1+eps} + ... + a_j)} v*_{σ(a)}`
pub fn build_k_closed(params: &CoidealParams, l: u32, x: BigRational) -> Result<KMatrix> {
    if !params.satisfies_condition() {
        return Err(Error::ExistenceConditionViolated {
            product: params.gamma_product().to_string(),
            expected: params.required_product().to_string(),
        });
    }
    let n = params.n;
    let (dom, cod) = k_spaces(n, l, &x)?;
    let (vm, cm) = (dom.factor(0).clone(), cod.factor(0).clone());
    let eps = params.eps as usize;
    let xr = Rf::from_rational(&x);
    let factors: Vec<(usize, Rf)> = params
        .gammas()
        .map(|(j, g)| (j, -(&Rf::q_pow(-1) * g)))
        .collect();
    let mut triplets = Vec::with_capacity(vm.dim());
    for col in 0..vm.dim() {
        let a = vm.label(col);
        let e = a.entries();
        let x_exp = if eps == 1 {
            i64::from(e[0]) - i64::from(e[2 * n - 1])
        } else {
            0
        };
        let mut c = xr.pow(x_exp)?;
        for (j, f) in &factors {
            // positions 1+eps ..= j, 1-based
            let s: i64 = (1 + eps..=*j).map(|p| i64::from(e[p - 1])).sum();
            if s != 0 {
                c = &c * &f.pow(-s)?;
            }
        }
        let row = cm.index_of(&sigma_perm(params.eps, a)).expect("σ preserves the level");
        triplets.push((row, col, c));
    }
    let op = LinearOperator::new(dom.clone(), cod.clone(), SparseMatrix::from_triplets(cod.dim(), dom.dim(), triplets))?;
    Ok(KMatrix { params: params.clone(), l, x, op })
}

/// Generator action pairs `(on V_{l,x}, on V*_{l,1/x})` for the coideal.
pub fn k_actions(params: &CoidealParams, dom: &Space, cod: &Space) -> Result<Vec<(SparseMatrix, SparseMatrix)>> {
    params
        .generators()
        .into_iter()
        .map(|g| Ok((coideal_matrix(dom, g, params)?, coideal_matrix(cod, g, params)?)))
        .collect()
}

/// Solves `K(x) π_{l,x}(a) = π*_{l,1/x}(a) K(x)` for `a` in the generating
/// set of `U^ι_eps`. A unique solution is rescaled so its entry at
/// `(σ(l e_1), l e_1)` agrees with the closed form (or is 1 when the closed
/// form does not exist).
pub fn build_k_solved(params: &CoidealParams, l: u32, x: BigRational) -> Result<KSolved> {
    let (dom, cod) = k_spaces(params.n, l, &x)?;
    let actions = k_actions(params, &dom, &cod)?;
    let pairs = block_decompose(&dom, &cod, &params.i_bullet());
    let sys = assemble_intertwiner_system(&actions, &pairs, dom.dim(), cod.dim());
    let kernel = sys.nullspace();
    if kernel.len() != 1 {
        return Ok(KSolved { dimension: kernel.len(), k: None });
    }
    let mut m = sys.to_matrix(&kernel[0]);
    debug_assert!(intertwines(&m, &actions));
    let row = cod
        .factor(0)
        .index_of(&sigma_perm(params.eps, dom.factor(0).label(0)))
        .expect("σ preserves the level");
    let target = if params.satisfies_condition() {
        build_k_closed(params, l, x.clone())?.op.entry(row, 0)
    } else {
        Rf::one()
    };
    let pivot = m.get(row, 0).cloned();
    match pivot {
        Some(p) => m = m.scale(&target.try_div(&p)?),
        None => {
            let (_, _, lead) = m.iter().min_by_key(|(r, c, _)| (*c, *r)).expect("nonzero kernel vector");
            m = m.scale(&lead.inv()?);
        }
    }
    let op = LinearOperator::new(dom, cod, m)?;
    Ok(KSolved {
        dimension: 1,
        k: Some(KMatrix { params: params.clone(), l, x, op }),
    })
}

/// Whether `op: V_{l,x} -> V*_{l,1/x}` intertwines the coideal generators.
pub fn is_coideal_intertwiner(params: &CoidealParams, op: &LinearOperator) -> Result<bool> {
    let actions = k_actions(params, op.domain(), op.codomain())?;
    Ok(intertwines(op.matrix(), &actions))
}

/// `true` when every nonzero entry sits at `(σ(a), a)`.
pub fn support_is_sigma_graph(k: &KMatrix) -> bool {
    let (dom, cod) = (k.op.domain().factor(0), k.op.codomain().factor(0));
    let mut seen = vec![false; dom.dim()];
    for (r, c, _) in k.op.matrix().iter() {
        if cod.label(r) != &sigma_perm(k.params.eps, dom.label(c)) {
            return false;
        }
        seen[c] = true;
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{rational, MultiIndex, Vector};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn standard_eps0_is_sigma_permutation() {
        let p = CoidealParams::standard(2, 0).unwrap();
        let k = build_k_closed(&p, 3, rational(2, 1)).unwrap();
        let v = Vector::basis_labelled(k.op.domain(), &[mi(&[2, 0, 1, 0])]).unwrap();
        let w = Vector::basis_labelled(k.op.codomain(), &[mi(&[0, 2, 0, 1])]).unwrap();
        assert_eq!(k.op.apply(&v).unwrap(), w);
        assert!(k.op.matrix().iter().all(|(_, _, c)| c.is_one()));
        assert!(is_coideal_intertwiner(&p, &k.op).unwrap());
    }

    #[test]
    fn standard_eps1_example() {
        let p = CoidealParams::standard(2, 1).unwrap();
        let k = build_k_closed(&p, 3, rational(3, 1)).unwrap();
        let v = Vector::basis_labelled(k.op.domain(), &[mi(&[1, 0, 0, 2])]).unwrap();
        let w = Vector::basis_labelled(k.op.codomain(), &[mi(&[2, 0, 0, 1])])
            .unwrap()
            .scale(&Rf::from_rational(&rational(1, 3)));
        assert_eq!(k.op.apply(&v).unwrap(), w);
        assert!(is_coideal_intertwiner(&p, &k.op).unwrap());
    }

    #[test]
    fn nonstandard_gamma_closed_form_intertwines() {
        let p = CoidealParams::new(2, 0, vec![-Rf::q_pow(2), -Rf::one()]).unwrap();
        let k = build_k_closed(&p, 2, rational(2, 1)).unwrap();
        assert!(is_coideal_intertwiner(&p, &k.op).unwrap());
        assert!(k.op.matrix().iter().any(|(_, _, c)| !c.is_rational_constant()));
        assert!(support_is_sigma_graph(&k));
    }

    #[test]
    fn condition_violation_is_reported() {
        let p = CoidealParams::new(2, 0, vec![Rf::one(), Rf::one()]).unwrap();
        assert!(matches!(
            build_k_closed(&p, 1, rational(1, 1)),
            Err(Error::ExistenceConditionViolated { .. })
        ));
        assert_eq!(build_k_solved(&p, 1, rational(2, 1)).unwrap().dimension, 0);
    }

    #[test]
    fn solved_matches_closed() {
        let p = CoidealParams::standard(2, 0).unwrap();
        let s = build_k_solved(&p, 2, rational(2, 1)).unwrap();
        assert_eq!(s.dimension, 1);
        let closed = build_k_closed(&p, 2, rational(2, 1)).unwrap();
        assert_eq!(s.k.unwrap().op, closed.op);
    }

    #[test]
    fn q_gamma_has_solution() {
        let p = CoidealParams::new(2, 0, vec![Rf::q(), Rf::q()]).unwrap();
        assert_eq!(build_k_solved(&p, 1, rational(2, 1)).unwrap().dimension, 1);
    }
}
