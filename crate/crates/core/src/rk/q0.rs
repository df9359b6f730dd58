use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::Rf;
use crate::linalg::SparseMatrix;
use crate::rep::LinearOperator;

/// Entrywise `q -> 0` limit. Every entry must be regular at `q = 0`; the
/// error lists the offending `(row, col)` positions otherwise.
pub fn q0_limit(op: &LinearOperator) -> Result<LinearOperator> {
    let mut bad = Vec::new();
    let mut triplets: Vec<(usize, usize, Rf)> = Vec::new();
    for (r, c, v) in op.matrix().iter() {
        match v.eval_q0() {
            Ok(x) => triplets.push((r, c, Rf::from_rational(&x))),
            Err(_) => bad.push(format!("({r}, {c}): {v}")),
        }
    }
    if !bad.is_empty() {
        return Err(Error::NotRegularAtZero(bad.join("; ")));
    }
    let m = SparseMatrix::from_triplets(op.codomain().dim(), op.domain().dim(), triplets);
    LinearOperator::new(op.domain().clone(), op.codomain().clone(), m)
}

/// The entries of a `q -> 0` limit as rationals, `(row, col, value)`.
pub fn q0_entries(op: &LinearOperator) -> Result<Vec<(usize, usize, BigRational)>> {
    q0_limit(op)?
        .matrix()
        .iter()
        .map(|(r, c, v)| {
            v.as_rational()
                .map(|x| (r, c, x))
                .ok_or_else(|| Error::Domain("limit entry is not constant".into()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{rational, CoidealParams, ModuleSpec, Space};
    use crate::rk::build_k_closed;

    #[test]
    fn identity_limit_is_identity() {
        let s = Space::simple(ModuleSpec::vector(2, 2, rational(1, 1)).unwrap().build());
        let id = LinearOperator::identity(&s);
        assert_eq!(q0_limit(&id).unwrap(), id);
    }

    #[test]
    fn standard_k_limit_is_itself() {
        let p = CoidealParams::standard(2, 0).unwrap();
        let k = build_k_closed(&p, 2, rational(1, 1)).unwrap();
        assert_eq!(q0_limit(&k.op).unwrap(), k.op);
    }

    #[test]
    fn poles_are_reported() {
        let p = CoidealParams::new(2, 0, vec![-Rf::q_pow(2), -Rf::one()]).unwrap();
        let k = build_k_closed(&p, 1, rational(1, 1)).unwrap();
        // (-q^{-1} γ_2)^{-a_1-a_2} = q^{a_1+a_2}, (-q^{-1}γ_0)^0 = 1: regular
        assert!(q0_limit(&k.op).is_ok());
        let p = CoidealParams::new(2, 0, vec![-Rf::one(), -Rf::q_pow(2)]).unwrap();
        let k = build_k_closed(&p, 1, rational(1, 1)).unwrap();
        assert!(matches!(q0_limit(&k.op), Err(Error::NotRegularAtZero(_))));
    }
}
