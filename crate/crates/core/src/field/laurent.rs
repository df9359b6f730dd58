use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Laurent polynomial in `q` with arbitrary-precision integer coefficients.
///
/// Stored densely from the lowest exponent upward. The first and last stored
/// coefficients are always nonzero, and the zero polynomial has no storage,
/// so two equal polynomials are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^k`
    pub fn monomial<C: Into<BigInt>>(c: C, k: i64) -> Self {
        Self::from_dense(k, vec![c.into()])
    }

    /// `q^k`
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(1, k)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents accumulate.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().map(|(k, c)| (k, c.into())).collect();
        let Some(low) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (k, c) in terms {
            coeffs[(k - low) as usize] += c;
        }
        Self::from_dense(low, coeffs)
    }

    pub(crate) fn from_dense(low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        Self {
            low: low + lead_zeros as i64,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for `c * q^0`, including zero.
    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.coeffs.len() == 1)
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        let idx = k - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn trailing_coeff(&self) -> Option<&BigInt> {
        self.coeffs.first()
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending in exponent.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Positive gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|a| a / c).collect(),
        }
    }

    /// Sum of the coefficients, i.e. the value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Exact quotient `self / divisor` in `Z[q, q^-1]`, or `None` when the
    /// division leaves a remainder or `divisor` is zero.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let q = poly_div_exact(&self.coeffs, &divisor.coeffs)?;
        Some(Self::from_dense(self.low - divisor.low, q))
    }

    /// Monic-up-to-sign gcd in `Z[q, q^-1]`: the result has lowest exponent
    /// zero and a positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Self::zero(),
            (true, false) => return other.normalized_associate(),
            (false, true) => return self.normalized_associate(),
            _ => {}
        }
        let g = poly_gcd(&self.coeffs, &other.coeffs);
        Self::from_dense(0, g).normalized_associate()
    }

    /// The associate with lowest exponent zero and positive leading coefficient.
    pub(crate) fn normalized_associate(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = Self {
            low: 0,
            coeffs: self.coeffs.clone(),
        };
        if out.coeffs.last().unwrap().is_negative() {
            out = -out;
        }
        out
    }

    /// Primitive part with positive leading coefficient, keeping the exponent range.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.coeffs.last().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub(crate) fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high_exp().unwrap().max(other.high_exp().unwrap());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.low - low) as usize + i] += c;
        }
        Self::from_dense(low, coeffs)
    }

    pub(crate) fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_monomial() {
            let s = other.scale(&self.coeffs[0]);
            return s.shift(self.low);
        }
        if other.is_monomial() {
            let s = self.scale(&other.coeffs[0]);
            return s.shift(other.low);
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_dense(self.low + other.low, coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

// Dense integer polynomial helpers. Index = exponent, trailing zeros trimmed.

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn strip_low(p: &[BigInt]) -> Vec<BigInt> {
    let k = p.iter().take_while(|c| c.is_zero()).count();
    p[k..].to_vec()
}

fn content_of(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn make_primitive(p: &mut [BigInt]) {
    let c = content_of(p);
    if !c.is_zero() && !c.is_one() {
        for a in p.iter_mut() {
            *a = &*a / &c;
        }
    }
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// Primitive polynomial remainder sequence gcd of two nonzero polynomials.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    // q is a unit in the Laurent ring, so the low powers are irrelevant.
    let mut a = strip_low(a);
    let mut b = strip_low(b);
    let cont = content_of(&a).gcd(&content_of(&b));
    if a.len() == 1 || b.len() == 1 {
        return vec![cont];
    }
    make_primitive(&mut a);
    make_primitive(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![cont];
        }
        let mut r = prem(&a, &b);
        make_primitive(&mut r);
        a = b;
        b = r;
    }
    for c in a.iter_mut() {
        *c *= &cont;
    }
    a
}

/// Exact division of dense polynomials, working down from the leading term.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.len() > a.len() {
        return None;
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let top = &r[k + db];
        if top.is_zero() {
            continue;
        }
        let (quot, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &quot * bc;
        }
        q[k] = quot;
    }
    r.iter().all(|c| c.is_zero()).then_some(q)
}

impl fmt::Display for LaurentPoly {
    /// Canonical form: `c*q^k` terms by descending exponent, e.g. `q^2 + 1 - 3*q^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.terms().rev().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}*q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total order, used only for deterministic tie-breaks.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.low
            .cmp(&other.low)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_ref(rhs)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_ref(&rhs)
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_ref(&-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_ref(&-rhs)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_ref(rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self.mul_ref(&rhs)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_ref(&-rhs);
    }
}
