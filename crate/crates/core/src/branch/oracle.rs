//! Closed-form coefficients for `b_i` acting on the black-node highest
//! weight vectors (with `x = y = 1`, `eps = 0`, `γ = -q`), and the exact
//! identities they are claimed to satisfy.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::hw::{bold_w, HwBasis};
use super::label::{enumerate_labels, BranchLabel};
use crate::dump::Report;
use crate::error::{Error, Result};
use crate::field::{qint_rf, Rf};
use crate::linalg::{axpy, SparseMatrix, SparseVec};
use crate::rep::{b_matrix, CoidealParams};

/// Which family of identities.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleKind {
    /// `b_i w`
    Bw,
    /// `b_i f_{i-1} w`
    BfwMinus,
    /// `b_i f_{i+1} w`
    BfwPlus,
    /// `b_i f_{i∓1} w` at `j = 0`, short form
    BfwZero,
    /// `b_i f_{i-1} f_{i+1} w`
    Bffw,
}

impl OracleKind {
    pub const ALL: [OracleKind; 5] = [
        OracleKind::Bw,
        OracleKind::BfwMinus,
        OracleKind::BfwPlus,
        OracleKind::BfwZero,
        OracleKind::Bffw,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OracleKind::Bw => "bw",
            OracleKind::BfwMinus => "bfw_minus",
            OracleKind::BfwPlus => "bfw_plus",
            OracleKind::BfwZero => "bfw_zero",
            OracleKind::Bffw => "bffw",
        }
    }
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for OracleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OracleKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown oracle suite {s:?}")))
    }
}

/// `(s, l, m, j)` with `s` in `1..=n`; `i = 2s` (mod `2n`).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct OracleContext {
    pub s: usize,
    pub label: BranchLabel,
}

impl OracleContext {
    pub fn new(s: usize, label: BranchLabel) -> Result<Self> {
        if s == 0 || s > label.n() {
            return Err(Error::Domain(format!("s = {s} out of range 1..={}", label.n())));
        }
        Ok(Self { s, label })
    }

    pub fn n(&self) -> usize {
        self.label.n()
    }

    /// The white node `i = 2s` reduced mod `2n`.
    pub fn i(&self) -> usize {
        (2 * self.s) % (2 * self.n())
    }

    /// 0-based positions of the `s`-th and `(s+1)`-th pair (`s + 1` wraps to 1).
    fn slots(&self) -> (usize, usize) {
        (self.s - 1, self.s % self.n())
    }

    fn vals(&self) -> Vals {
        let (a, b) = self.slots();
        let g = |v: &[u32], k: usize| i64::from(v[k]);
        let lb = &self.label;
        Vals {
            ls: g(&lb.lvec, a),
            ls1: g(&lb.lvec, b),
            ms: g(&lb.mvec, a),
            ms1: g(&lb.mvec, b),
            js: g(&lb.jvec, a),
            js1: g(&lb.jvec, b),
        }
    }
}

struct Vals {
    ls: i64,
    ls1: i64,
    ms: i64,
    ms1: i64,
    js: i64,
    js1: i64,
}

/// A named coefficient evaluated in a context.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoeffOracle {
    pub symbol: String,
    pub value: Rf,
}

fn qi(k: i64) -> Rf {
    qint_rf(k)
}

fn qp(k: i64) -> Rf {
    Rf::q_pow(k)
}

fn frac(num: Rf, den: Rf) -> Rf {
    num.try_div(&den).expect("q-integer denominators are positive here")
}

fn d_prime(v: &Vals) -> [Rf; 4] {
    let Vals { ls, ls1, ms1, js, js1, .. } = *v;
    [
        -(&qp(-js - js1 + ls + ms1 + 1) * &qi(js)),
        qi(js),
        -(&qp(-js - js1 + ls1 + ms1 + 1) * &qi(js1)),
        &qp(-2 * js - 2 * js1 + ls + ls1 + 2 * ms1 + 2) * &qi(js1),
    ]
}

fn b_prime(v: &Vals) -> [Rf; 4] {
    let Vals { ls, ls1, ms, ms1, js, js1 } = *v;
    [
        &qp(js - js1 - ms + ms1) * &qi(ls - js),
        qi(ms - js),
        -(&qp(js - js1 - ls - ms + ls1 + ms1) * &qi(ms - js)),
        -(&qp(2 * js - 2 * js1 - ls - 2 * ms + ls1 + 2 * ms1) * &qi(ls - js)),
    ]
}

fn c_prime(v: &Vals) -> [Rf; 4] {
    let Vals { ls, ls1, ms1, js, js1, .. } = *v;
    [
        -(&qp(-js + js1 + ls - ls1) * &qi(ms1 - js1)),
        -qi(ls1 - js1),
        &qp(-js + js1) * &qi(ls1 - js1),
        &qp(-2 * js + 2 * js1 + ls - ls1) * &qi(ms1 - js1),
    ]
}

fn a_coeffs(v: &Vals) -> [Rf; 4] {
    let Vals { ls, ls1, ms, ms1, js, js1 } = *v;
    let den = &qi(ls + ms - 2 * js + 1) * &qi(ls1 + ms1 - 2 * js1 + 1);
    let p = |xs: [i64; 3]| xs.iter().fold(Rf::one(), |acc, &k| &acc * &qi(k));
    [
        frac(&qp(js + js1 - ls1 - ms - 1) * &p([ls - js, ms1 - js1, ls + ms - js + 1]), den.clone()),
        -frac(p([ls1 - js1, ms - js, ls + ms - js + 1]), den.clone()),
        frac(&qp(js + js1 - ls - ms - 1) * &p([ls1 - js1, ms - js, ls1 + ms1 - js1 + 1]), den.clone()),
        -frac(
            &qp(2 * js + 2 * js1 - ls - ls1 - 2 * ms - 2) * &p([ls - js, ms1 - js1, ls1 + ms1 - js1 + 1]),
            den,
        ),
    ]
}

/// All coefficients named by the identity family `kind` in `ctx`.
pub fn oracle_coeffs(kind: OracleKind, ctx: &OracleContext) -> Vec<CoeffOracle> {
    let v = ctx.vals();
    let named = |prefix: &str, xs: [Rf; 4]| -> Vec<CoeffOracle> {
        xs.into_iter()
            .enumerate()
            .map(|(k, value)| CoeffOracle { symbol: format!("{prefix}{}", k + 1), value })
            .collect()
    };
    match kind {
        OracleKind::Bw => named("D'", d_prime(&v)),
        OracleKind::BfwMinus => [named("B'", b_prime(&v)), named("D'", d_prime(&v))].concat(),
        OracleKind::BfwPlus => [named("C'", c_prime(&v)), named("D'", d_prime(&v))].concat(),
        OracleKind::BfwZero => {
            let Vals { ls, ls1, ms, ms1, .. } = v;
            vec![
                CoeffOracle { symbol: "plus1".into(), value: qi(ls1) },
                CoeffOracle { symbol: "plus2".into(), value: &qp(ls - ls1) * &qi(ms1) },
                CoeffOracle { symbol: "minus1".into(), value: &qp(ms1 - ms) * &qi(ls) },
                CoeffOracle { symbol: "minus2".into(), value: qi(ms) },
            ]
        }
        OracleKind::Bffw => {
            let Vals { ls, ls1, ms, ms1, js, js1 } = v;
            let (ns, ns1) = (ls + ms - 2 * js, ls1 + ms1 - 2 * js1);
            let den = &qi(ns + 1) * &qi(ns1 + 1);
            let scaled = |xs: [Rf; 4], f12: Rf, f34: Rf| -> [Rf; 4] {
                let [a, b, c, d] = xs;
                [
                    frac(&a * &f12, den.clone()),
                    frac(&b * &f12, den.clone()),
                    frac(&c * &f34, den.clone()),
                    frac(&d * &f34, den.clone()),
                ]
            };
            let bs = scaled(
                b_prime(&v),
                &qi(ls + ms - js + 1) * &qi(ns1),
                &qi(js1) * &qi(ns1),
            );
            let cs = scaled(
                c_prime(&v),
                &qi(js) * &qi(ns),
                &qi(ns) * &qi(ls1 + ms1 - js1 + 1),
            );
            let dn = &qi(ns) * &qi(ns1);
            let ds = scaled(d_prime(&v), dn.clone(), dn);
            [named("A", a_coeffs(&v)), named("B", bs), named("C", cs), named("D", ds)].concat()
        }
    }
}

/// A term `coeff · f_{i-1}^{fm} f_{i+1}^{fp} w_label`; `label` is `None`
/// when the shifted tuple is not a valid label (the vector is then zero).
#[derive(Clone, Debug)]
pub struct Term {
    pub coeff: Rf,
    pub label: Option<BranchLabel>,
    pub f_minus: u32,
    pub f_plus: u32,
}

/// Shifted label `(l + dl, m + dm, j + dj)` on the `(s, s+1)` slots.
fn shifted(ctx: &OracleContext, dl: [i64; 2], dm: [i64; 2], dj: [i64; 2]) -> Option<BranchLabel> {
    let (a, b) = ctx.slots();
    let bump = |v: &[u32], d: [i64; 2]| -> Vec<i64> {
        let mut out: Vec<i64> = v.iter().map(|&x| i64::from(x)).collect();
        out[a] += d[0];
        out[b] += d[1];
        out
    };
    let lb = &ctx.label;
    BranchLabel::checked(&bump(&lb.lvec, dl), &bump(&lb.mvec, dm), &bump(&lb.jvec, dj))
}

const T1: ([i64; 2], [i64; 2]) = ([-1, 1], [0, 0]);
const T2: ([i64; 2], [i64; 2]) = ([0, 0], [-1, 1]);
const T3: ([i64; 2], [i64; 2]) = ([1, -1], [0, 0]);
const T4: ([i64; 2], [i64; 2]) = ([0, 0], [1, -1]);

/// The right-hand side of the identity `kind` as a list of terms.
pub fn oracle_terms(kind: OracleKind, ctx: &OracleContext) -> Vec<Term> {
    let v = ctx.vals();
    let term = |coeff: Rf, t: ([i64; 2], [i64; 2]), dj: [i64; 2], fm: u32, fp: u32| Term {
        coeff,
        label: shifted(ctx, t.0, t.1, dj),
        f_minus: fm,
        f_plus: fp,
    };
    let targets = [T1, T2, T3, T4];
    // j-shifts of the D' terms: j - e_s for T1, T2 and j - e_{s+1} for T3, T4
    let d_shift = [[-1, 0], [-1, 0], [0, -1], [0, -1]];
    let Vals { ls, ls1, ms, ms1, js, js1 } = v;
    let (ns, ns1) = (ls + ms - 2 * js, ls1 + ms1 - 2 * js1);
    let d_terms = |scale: &Rf, fm: u32, fp: u32| -> Vec<Term> {
        d_prime(&v)
            .into_iter()
            .zip(targets)
            .zip(d_shift)
            .map(|((c, t), dj)| term(&c * scale, t, dj, fm, fp))
            .collect()
    };
    match kind {
        OracleKind::Bw => d_terms(&Rf::one(), 0, 0),
        OracleKind::BfwMinus => {
            let den = qi(ns + 1);
            let f1 = frac(qi(ls + ms - js + 1), den.clone());
            let f2 = frac(qi(js1), den.clone());
            let f3 = frac(qi(ns), den);
            let [b1, b2, b3, b4] = b_prime(&v);
            let mut out = vec![
                term(&f1 * &b1, T1, [0, 0], 0, 0),
                term(&f1 * &b2, T2, [0, 0], 0, 0),
                term(&f2 * &b3, T3, [1, -1], 0, 0),
                term(&f2 * &b4, T4, [1, -1], 0, 0),
            ];
            out.extend(d_terms(&f3, 1, 0));
            out
        }
        OracleKind::BfwPlus => {
            let den = qi(ns1 + 1);
            let g1 = frac(qi(js), den.clone());
            let g2 = frac(qi(ls1 + ms1 - js1 + 1), den.clone());
            let g3 = frac(qi(ns1), den);
            let [c1, c2, c3, c4] = c_prime(&v);
            let mut out = vec![
                term(&g1 * &c1, T1, [-1, 1], 0, 0),
                term(&g1 * &c2, T2, [-1, 1], 0, 0),
                term(&g2 * &c3, T3, [0, 0], 0, 0),
                term(&g2 * &c4, T4, [0, 0], 0, 0),
            ];
            out.extend(d_terms(&g3, 0, 1));
            out
        }
        OracleKind::BfwZero => Vec::new(),
        OracleKind::Bffw => {
            let c = oracle_coeffs(OracleKind::Bffw, ctx);
            let get = |k: usize| c[k].value.clone();
            let mut out = Vec::with_capacity(16);
            for (k, t) in targets.into_iter().enumerate() {
                // (A, B, C, D) j-shifts for the T1/T2 lines and the T3/T4 lines
                let shifts: [[i64; 2]; 4] = if k < 2 {
                    [[0, 1], [0, 0], [-1, 1], [-1, 0]]
                } else {
                    [[1, 0], [1, -1], [0, 0], [0, -1]]
                };
                out.push(term(get(k), t, shifts[0], 0, 0));
                out.push(term(get(4 + k), t, shifts[1], 0, 1));
                out.push(term(get(8 + k), t, shifts[2], 1, 0));
                out.push(term(get(12 + k), t, shifts[3], 1, 1));
            }
            out
        }
    }
}

/// The two short-form identities at `j = 0`: `(b_i f_{i+1} w, b_i f_{i-1} w)`.
pub fn zero_j_terms(ctx: &OracleContext) -> (Vec<Term>, Vec<Term>) {
    let c = oracle_coeffs(OracleKind::BfwZero, ctx);
    let term = |coeff: &Rf, t: ([i64; 2], [i64; 2])| Term {
        coeff: coeff.clone(),
        label: shifted(ctx, t.0, t.1, [0, 0]),
        f_minus: 0,
        f_plus: 0,
    };
    (
        vec![term(&c[0].value, T3), term(&c[1].value, T4)],
        vec![term(&c[2].value, T1), term(&c[3].value, T2)],
    )
}

/// Computation context for one `(n, l, m)`: the descendant basis and the
/// `b_i` matrices for `eps = 0`, `γ = -q`.
pub struct OracleSetup {
    pub basis: HwBasis,
    b: BTreeMap<usize, SparseMatrix>,
}

impl OracleSetup {
    pub fn new(n: usize, l: u32, m: u32) -> Result<Self> {
        let basis = HwBasis::new(n, l, m)?;
        let params = CoidealParams::standard(n, 0)?;
        let b = params
            .i_circ()
            .into_iter()
            .map(|i| Ok((i, b_matrix(basis.space(), i, &params)?)))
            .collect::<Result<_>>()?;
        Ok(Self { basis, b })
    }

    pub fn b(&self, i: usize) -> &SparseMatrix {
        &self.b[&i]
    }

    fn w(&self, label: &BranchLabel) -> Result<SparseVec> {
        Ok(bold_w(label, self.basis.space())?.into_coeffs())
    }

    /// `b_i f_{i-1}^{fm} f_{i+1}^{fp} w_label` as a vector.
    pub fn lhs(&self, ctx: &OracleContext, fm: u32, fp: u32) -> Result<SparseVec> {
        let (a, b) = ctx.slots();
        let mut v = self.w(&ctx.label)?;
        for _ in 0..fp {
            v = self.basis.f_odd(b).apply(&v);
        }
        for _ in 0..fm {
            v = self.basis.f_odd(a).apply(&v);
        }
        Ok(self.b(ctx.i()).apply(&v))
    }

    /// Sum of the terms as a vector, and as descendant-basis coordinates.
    pub fn rhs(&self, ctx: &OracleContext, terms: &[Term]) -> Result<(SparseVec, SparseVec)> {
        let (a, b) = ctx.slots();
        let mut vec = SparseVec::new();
        let mut coords = SparseVec::new();
        for t in terms {
            let Some(label) = &t.label else { continue };
            if t.coeff.is_zero() {
                continue;
            }
            let mut exps = vec![0u32; ctx.n()];
            exps[a] += t.f_minus;
            exps[b] += t.f_plus;
            // f beyond the top of an sl_2 string gives zero
            if let Some(pos) = self.basis.position(label, &exps) {
                axpy(&mut vec, &t.coeff, self.basis.vector(pos));
                crate::linalg::axpy(&mut coords, &t.coeff, &[(pos, Rf::one())].into_iter().collect());
            }
        }
        Ok((vec, coords))
    }

    pub fn describe(&self, coords: &SparseVec) -> String {
        if coords.is_empty() {
            return "0".into();
        }
        coords
            .iter()
            .map(|(e, c)| {
                let d = &self.basis.elements()[*e];
                format!("({c})*f{:?}w{}", d.exps, d.label)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn report(&self, name: &str, ctx: &OracleContext, lhs: &SparseVec, terms: &[Term]) -> Result<Report> {
        let (rv, rc) = self.rhs(ctx, terms)?;
        let computed = self.basis.expand(lhs)?;
        let pass = &rv == lhs && computed == rc;
        Ok(Report::new(name)
            .with("n", ctx.n())
            .with("i", ctx.i())
            .with("s", ctx.s)
            .with("l", &ctx.label.lvec)
            .with("m", &ctx.label.mvec)
            .with("j", &ctx.label.jvec)
            .outcome(self.describe(&rc), self.describe(&computed), pass))
    }

    /// Checks one identity family in one context.
    pub fn check(&self, kind: OracleKind, ctx: &OracleContext) -> Result<Vec<Report>> {
        match kind {
            OracleKind::Bw => Ok(vec![self.report(kind.name(), ctx, &self.lhs(ctx, 0, 0)?, &oracle_terms(kind, ctx))?]),
            OracleKind::BfwMinus => {
                Ok(vec![self.report(kind.name(), ctx, &self.lhs(ctx, 1, 0)?, &oracle_terms(kind, ctx))?])
            }
            OracleKind::BfwPlus => {
                Ok(vec![self.report(kind.name(), ctx, &self.lhs(ctx, 0, 1)?, &oracle_terms(kind, ctx))?])
            }
            OracleKind::Bffw => Ok(vec![self.report(kind.name(), ctx, &self.lhs(ctx, 1, 1)?, &oracle_terms(kind, ctx))?]),
            OracleKind::BfwZero => {
                if ctx.label.j() != 0 {
                    return Err(Error::Domain("short form needs j = 0".into()));
                }
                let (plus, minus) = zero_j_terms(ctx);
                let lhs_p = self.lhs(ctx, 0, 1)?;
                let lhs_m = self.lhs(ctx, 1, 0)?;
                Ok(vec![
                    self.report("bfw_zero_plus", ctx, &lhs_p, &plus)?,
                    self.report("bfw_zero_minus", ctx, &lhs_m, &minus)?,
                    // agreement with the general formulas at j = 0
                    self.report("bfw_zero_plus_general", ctx, &lhs_p, &oracle_terms(OracleKind::BfwPlus, ctx))?,
                    self.report("bfw_zero_minus_general", ctx, &lhs_m, &oracle_terms(OracleKind::BfwMinus, ctx))?,
                ])
            }
        }
    }
}

/// Contexts of a suite for `(n, l, m)`: every label and every `s`; the
/// `bffw` family is limited to `j_s <= 1` and `bfw_zero` to `j = 0`.
pub fn suite_contexts(kind: OracleKind, n: usize, l: u32, m: u32) -> Vec<OracleContext> {
    let mut out = Vec::new();
    for label in enumerate_labels(n, l, m) {
        let keep = match kind {
            OracleKind::Bffw => label.jvec.iter().all(|&j| j <= 1),
            OracleKind::BfwZero => label.j() == 0,
            _ => true,
        };
        if !keep {
            continue;
        }
        for s in 1..=n {
            out.push(OracleContext { s, label: label.clone() });
        }
    }
    out
}

/// Runs a suite over `n` and all `1 <= l, m <= lmax`.
pub fn run_suite(kind: OracleKind, n: usize, lmax: u32) -> Result<Vec<Report>> {
    use rayon::prelude::*;
    let pairs: Vec<(u32, u32)> = (1..=lmax).flat_map(|l| (1..=lmax).map(move |m| (l, m))).collect();
    let chunks: Vec<Vec<Report>> = pairs
        .par_iter()
        .map(|&(l, m)| {
            let setup = OracleSetup::new(n, l, m)?;
            let mut out = Vec::new();
            for ctx in suite_contexts(kind, n, l, m) {
                out.extend(setup.check(kind, &ctx)?);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}
