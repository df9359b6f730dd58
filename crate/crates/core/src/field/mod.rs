//! Exact arithmetic in `Q(q)`.

mod laurent;
mod parse;
mod qnum;
mod ratfunc;

pub use laurent::LaurentPoly;
pub use parse::{parse_laurent, parse_rational_function};
pub use qnum::{qbinom, qfactorial, qint};
pub use ratfunc::RationalFunction;

/// `[m]` as an element of `Q(q)`.
pub fn qint_rf(m: i64) -> RationalFunction {
    RationalFunction::from_poly(qint(m))
}

/// Shorthand for the canonical `Q(q)` scalar type.
pub type Rf = RationalFunction;
