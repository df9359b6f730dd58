use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// Element of the rational function field `Q(q)`.
///
/// Always kept in canonical form: `num` and `den` are coprime, `den` has
/// lowest exponent zero and positive leading coefficient, and the integer
/// contents of `num` and `den` are jointly coprime. Equality is therefore
/// structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int<C: Into<BigInt>>(c: C) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::normalize(
            LaurentPoly::constant(r.numer().clone()),
            LaurentPoly::constant(r.denom().clone()),
        )
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// `q^k`
    pub fn q_pow(k: i64) -> Self {
        Self::from_poly(LaurentPoly::q_pow(k))
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `num / den` in canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Number of nonzero terms in numerator and denominator together.
    pub fn term_count(&self) -> usize {
        self.num.term_count() + self.den.term_count()
    }

    /// True when the value does not involve `q` at all.
    pub fn is_rational_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational_constant().then(|| {
            BigRational::new(self.num.coeff(0), self.den.coeff(0))
        })
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self { num, den };
        }
        let (mut num, mut den) = if den.is_monomial() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        Self::finish(&mut num, &mut den);
        Self { num, den }
    }

    /// Fixes q-shift, sign and joint integer content of an already coprime pair.
    fn finish(num: &mut LaurentPoly, den: &mut LaurentPoly) {
        let s = den.low_exp().unwrap();
        if s != 0 {
            *num = num.shift(-s);
            *den = den.shift(-s);
        }
        let c = num.content().gcd(&den.content());
        let c = if den.leading_coeff().unwrap().is_negative() { -c } else { c };
        if !c.is_one() {
            *num = num.div_scalar_exact(&c);
            *den = den.div_scalar_exact(&c);
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut num = self.den.clone();
        let mut den = self.num.clone();
        Self::finish(&mut num, &mut den);
        Ok(Self { num, den })
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        let num = base.num.pow(e as u32);
        let den = base.den.pow(e as u32);
        Ok(Self { num, den })
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let g = c.gcd(&self.den.content());
        let mut num = self.num.scale(&(c / &g));
        let mut den = self.den.div_scalar_exact(&g);
        Self::finish(&mut num, &mut den);
        Self { num, den }
    }

    /// Value at `q = 0`. Fails when the function has a pole there.
    pub fn eval_q0(&self) -> Result<BigRational> {
        let Some(low) = self.num.low_exp() else {
            return Ok(BigRational::zero());
        };
        match low.cmp(&0) {
            std::cmp::Ordering::Greater => Ok(BigRational::zero()),
            std::cmp::Ordering::Equal => Ok(BigRational::new(
                self.num.coeff(0),
                self.den.coeff(0),
            )),
            std::cmp::Ordering::Less => Err(Error::NotRegularAtZero(self.to_string())),
        }
    }

    /// The q-adic valuation. The denominator has lowest exponent zero, so this
    /// is the lowest exponent of the numerator.
    pub fn q_valuation(&self) -> Option<i64> {
        self.num.low_exp()
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::normalize(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a_co = self.den.div_exact(&g).unwrap();
        let b_co = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b_co) + &(&rhs.num * &a_co);
        let den = &(&a_co * &b_co) * &g;
        Self::normalize(num, den)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (an, bd) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_exact(&g1).unwrap(), rhs.den.div_exact(&g1).unwrap())
        };
        let (bn, ad) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        };
        let mut num = &an * &bn;
        let mut den = &ad * &bd;
        Self::finish(&mut num, &mut den);
        Self { num, den }
    }

    /// Parses the canonical string form (see [`fmt::Display`]).
    pub fn parse(s: &str) -> Result<Self> {
        super::parse::parse_rational_function(s)
    }
}

impl fmt::Display for RationalFunction {
    /// `num` alone when the denominator is 1, otherwise `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RF({self})")
    }
}

impl FromStr for RationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:expr) => {
        impl $trait<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                $imp(self, rhs)
            }
        }
        impl $trait<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                $imp(&self, &rhs)
            }
        }
        impl $trait<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                $imp(&self, rhs)
            }
        }
        impl $trait<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                $imp(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &RationalFunction, b| a.add_impl(b));
forward_binop!(Sub, sub, |a: &RationalFunction, b: &RationalFunction| a
    .add_impl(&-b));
forward_binop!(Mul, mul, |a: &RationalFunction, b| a.mul_impl(b));
// Panics on division by zero, like the integer operators; use `try_div` to recover.
forward_binop!(Div, div, |a: &RationalFunction, b: &RationalFunction| a
    .try_div(b)
    .expect("division by zero in Q(q)"));

impl AddAssign<&RationalFunction> for RationalFunction {
    fn add_assign(&mut self, rhs: &RationalFunction) {
        *self = self.add_impl(rhs);
    }
}

impl SubAssign<&RationalFunction> for RationalFunction {
    fn sub_assign(&mut self, rhs: &RationalFunction) {
        *self = self.add_impl(&-rhs);
    }
}

impl MulAssign<&RationalFunction> for RationalFunction {
    fn mul_assign(&mut self, rhs: &RationalFunction) {
        *self = self.mul_impl(rhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::qint;

    fn rf(s: &str) -> RationalFunction {
        s.parse().unwrap()
    }

    #[test]
    fn inverse_of_q_minus_q_inverse() {
        let d = RationalFunction::from_poly(&LaurentPoly::q() - &LaurentPoly::q_pow(-1));
        let inv = d.inv().unwrap();
        assert_eq!(inv.to_string(), "(q)/(q^2 - 1)");
        assert!((&inv * &d).is_one());
    }

    #[test]
    fn canonical_fraction_shape() {
        // (2q^-1) / (4q^3 + 6q) -> 1 / (2q^4 + 3q^2)
        let a = RationalFunction::new(
            LaurentPoly::monomial(2, -1),
            LaurentPoly::from_terms([(3, 4), (1, 6)]),
        )
        .unwrap();
        assert_eq!(a.numer(), &LaurentPoly::q_pow(-2));
        assert_eq!(a.denom(), &LaurentPoly::from_terms([(2, 2), (0, 3)]));
    }

    #[test]
    fn negative_denominator_sign_moves_to_numerator() {
        let a = RationalFunction::new(LaurentPoly::one(), LaurentPoly::from_terms([(1, -1), (0, 1)]))
            .unwrap();
        assert_eq!(a.to_string(), "(-1)/(q - 1)");
    }

    #[test]
    fn rational_constants() {
        let r = BigRational::new(6.into(), (-4).into());
        let a = RationalFunction::from_rational(&r);
        assert_eq!(a.to_string(), "(-3)/(2)");
        assert_eq!(a.as_rational(), Some(r));
        assert!(a.is_rational_constant());
    }

    #[test]
    fn division_by_zero_is_error() {
        assert_eq!(RationalFunction::one().try_div(&RationalFunction::zero()), Err(Error::DivisionByZero));
        assert!(RationalFunction::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
    }

    #[test]
    fn product_minus_qint() {
        // [2][3] - [6] expanded by hand: (q + q^-1)(q^2 + 1 + q^-2) = q^3 + 2q + 2q^-1 + q^-3,
        // [6] = q^5 + q^3 + q + q^-1 + q^-3 + q^-5.
        let lhs = RationalFunction::from_poly(&qint(2) * &qint(3)) - RationalFunction::from_poly(qint(6));
        assert_eq!(lhs, rf("-q^5 + q + q^-1 - q^-5"));
    }

    #[test]
    fn eval_at_zero() {
        assert_eq!(rf("1 + q^3").eval_q0().unwrap(), BigRational::one());
        let a = RationalFunction::from_poly(&LaurentPoly::q() * &qint(2));
        assert_eq!(a.eval_q0().unwrap(), BigRational::one());
        assert!(matches!(
            RationalFunction::from_poly(qint(2)).eval_q0(),
            Err(Error::NotRegularAtZero(_))
        ));
        assert_eq!(rf("(q)/(q + 2)").eval_q0().unwrap(), BigRational::zero());
        assert_eq!(
            rf("(3 + q)/(2 + q^2)").eval_q0().unwrap(),
            BigRational::new(3.into(), 2.into())
        );
    }

    #[test]
    fn negative_power() {
        let a = rf("q + 1");
        let b = a.pow(-2).unwrap();
        assert_eq!(b.to_string(), "(1)/(q^2 + 2*q + 1)");
        assert!(RationalFunction::zero().pow(-1).is_err());
        assert!(RationalFunction::zero().pow(0).unwrap().is_one());
    }
}
