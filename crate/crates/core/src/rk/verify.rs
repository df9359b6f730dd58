//! Yang-Baxter and reflection equation checks, composed from the exact R
//! and K matrices.
//!
//! The Yang-Baxter equations are checked on `A ⊗ B ⊗ C` with spectral
//! parameters `(xy, y, 1)`:
//! `(1 ⊗ R_AB)(R_AC ⊗ 1)(1 ⊗ R_BC) = (R_BC ⊗ 1)(1 ⊗ R_AC)(R_AB ⊗ 1)`,
//! where `R_AB: A ⊗ B -> B ⊗ A` is `R`, `R*` or `R**` according to which
//! factors are dual.
//!
//! The reflection equation is checked as maps
//! `V_{l,x} ⊗ V_{m,y} -> V*_{l,1/x} ⊗ V*_{m,1/y}`; reading the domains and
//! codomains off the chain fixes every factor:
//!
//! ```text
//! LHS = (K_l(x) ⊗ 1) R*[V*_{m,1/y} ⊗ V_{l,x}] (K_m(y) ⊗ 1) R[V_{l,x} ⊗ V_{m,y}]
//! RHS = R**[V*_{m,1/y} ⊗ V*_{l,1/x}] (K_m(y) ⊗ 1) R*[V*_{l,1/x} ⊗ V_{m,y}] (K_l(x) ⊗ 1)
//! ```

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::kmatrix::build_k_closed;
use super::rmatrix::swap_intertwiner;
use crate::error::{Error, Result};
use crate::field::Rf;
use crate::rep::{CoidealParams, LinearOperator, ModuleSpec, Space};

/// Which Yang-Baxter equation, named by its three R factors.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum YbeKind {
    /// all three factors `V`
    RRR,
    /// `V* ⊗ V ⊗ V`
    RstarRR,
    /// `V* ⊗ V* ⊗ V`
    RstarstarRstarRstar,
    /// `V* ⊗ V* ⊗ V*`
    RssRssRss,
}

impl YbeKind {
    pub const ALL: [YbeKind; 4] = [
        YbeKind::RRR,
        YbeKind::RstarRR,
        YbeKind::RstarstarRstarRstar,
        YbeKind::RssRssRss,
    ];

    pub fn duals(self) -> [bool; 3] {
        match self {
            YbeKind::RRR => [false, false, false],
            YbeKind::RstarRR => [true, false, false],
            YbeKind::RstarstarRstarRstar => [true, true, false],
            YbeKind::RssRssRss => [true, true, true],
        }
    }
}

impl fmt::Display for YbeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl std::str::FromStr for YbeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rrr" => Ok(YbeKind::RRR),
            "rstarrr" => Ok(YbeKind::RstarRR),
            "rstarstarrstarrstar" => Ok(YbeKind::RstarstarRstarRstar),
            "rssrssrss" => Ok(YbeKind::RssRssRss),
            _ => Err(Error::Parse(format!("unknown Yang-Baxter equation {s:?}"))),
        }
    }
}

/// Comparison of two operators with the same domain and codomain.
#[derive(Clone, Debug, Serialize)]
pub struct ProportionalityReport {
    pub equal: bool,
    pub holds_up_to_scalar: bool,
    #[serde(serialize_with = "ser_opt_rf")]
    pub scalar: Option<Rf>,
}

fn ser_opt_rf<S: serde::Serializer>(v: &Option<Rf>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

impl ProportionalityReport {
    pub fn compare(lhs: &LinearOperator, rhs: &LinearOperator) -> Result<Self> {
        let scalar = lhs.proportionality(rhs)?.filter(|c| !c.is_zero() || rhs.is_zero());
        Ok(Self {
            equal: scalar.as_ref().is_some_and(|c| c.is_one()),
            holds_up_to_scalar: scalar.is_some() && !lhs.is_zero(),
            scalar,
        })
    }
}

#[derive(Clone, Debug)]
pub struct YbeResult {
    pub kind: YbeKind,
    pub levels: [u32; 3],
    pub lhs: LinearOperator,
    pub rhs: LinearOperator,
    pub report: ProportionalityReport,
}

pub fn verify_ybe(
    kind: YbeKind,
    n: usize,
    levels: [u32; 3],
    x: &BigRational,
    y: &BigRational,
) -> Result<YbeResult> {
    let params = [x * y, y.clone(), BigRational::from_integer(1.into())];
    let duals = kind.duals();
    let specs: Vec<ModuleSpec> = (0..3)
        .map(|t| ModuleSpec::new(n, levels[t], duals[t], params[t].clone()))
        .collect::<Result<_>>()?;
    let (a, b, c) = (&specs[0], &specs[1], &specs[2]);
    let sp = |s: &ModuleSpec| Space::simple(s.build());
    let r_ab = swap_intertwiner(a, b)?;
    let r_ac = swap_intertwiner(a, c)?;
    let r_bc = swap_intertwiner(b, c)?;
    let lhs = LinearOperator::chain(&[
        &r_ab.after_identity(&sp(c))?,
        &r_ac.then_identity(&sp(b))?,
        &r_bc.after_identity(&sp(a))?,
    ])?;
    let rhs = LinearOperator::chain(&[
        &r_bc.then_identity(&sp(a))?,
        &r_ac.after_identity(&sp(b))?,
        &r_ab.then_identity(&sp(c))?,
    ])?;
    let report = ProportionalityReport::compare(&lhs, &rhs)?;
    Ok(YbeResult { kind, levels, lhs, rhs, report })
}

#[derive(Clone, Debug)]
pub struct ReResult {
    pub lhs: LinearOperator,
    pub rhs: LinearOperator,
    pub report: ProportionalityReport,
}

pub fn verify_re(
    n: usize,
    l: u32,
    m: u32,
    x: &BigRational,
    y: &BigRational,
    params: &CoidealParams,
) -> Result<ReResult> {
    if params.n != n {
        return Err(Error::SpaceMismatch(format!(
            "coideal parameters are for n = {}, not {n}",
            params.n
        )));
    }
    let v_l = ModuleSpec::vector(n, l, x.clone())?;
    let v_m = ModuleSpec::vector(n, m, y.clone())?;
    let d_l = ModuleSpec::covector(n, l, x.recip())?;
    let d_m = ModuleSpec::covector(n, m, y.recip())?;
    let sp = |s: &ModuleSpec| Space::simple(s.build());
    let k_l = build_k_closed(params, l, x.clone())?.op;
    let k_m = build_k_closed(params, m, y.clone())?.op;

    let lhs = LinearOperator::chain(&[
        &k_l.then_identity(&sp(&d_m))?,
        &*swap_intertwiner(&d_m, &v_l)?,
        &k_m.then_identity(&sp(&v_l))?,
        &*swap_intertwiner(&v_l, &v_m)?,
    ])?;
    let rhs = LinearOperator::chain(&[
        &*swap_intertwiner(&d_m, &d_l)?,
        &k_m.then_identity(&sp(&d_l))?,
        &*swap_intertwiner(&d_l, &v_m)?,
        &k_l.then_identity(&sp(&v_m))?,
    ])?;
    let report = ProportionalityReport::compare(&lhs, &rhs)?;
    Ok(ReResult { lhs, rhs, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::rational;

    #[test]
    fn rrr_holds_with_scalar_one() {
        let r = verify_ybe(YbeKind::RRR, 2, [1, 1, 1], &rational(2, 1), &rational(3, 1)).unwrap();
        assert!(r.report.equal, "{:?}", r.report);
    }

    #[test]
    fn mixed_rstar_holds() {
        let r = verify_ybe(YbeKind::RstarRR, 2, [1, 1, 1], &rational(2, 1), &rational(3, 1)).unwrap();
        assert!(r.report.holds_up_to_scalar);
    }

    #[test]
    fn reflection_equation_small() {
        let p = CoidealParams::standard(2, 0).unwrap();
        let r = verify_re(2, 1, 1, &rational(2, 1), &rational(3, 1), &p).unwrap();
        assert!(r.report.holds_up_to_scalar, "{:?}", r.report);
    }

    #[test]
    fn parse_kind() {
        assert_eq!("rrr".parse::<YbeKind>().unwrap(), YbeKind::RRR);
        assert!("xyz".parse::<YbeKind>().is_err());
    }
}
