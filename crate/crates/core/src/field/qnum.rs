use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// Symmetric q-integer `[m] = (q^m - q^-m) / (q - q^-1)`, with `[-m] = -[m]`.
pub fn qint(m: i64) -> LaurentPoly {
    if m < 0 {
        return -qint(-m);
    }
    LaurentPoly::from_terms((0..m).map(|t| (m - 1 - 2 * t, 1)))
}

/// `[m]! = [1][2]...[m]`, with `[0]! = 1`.
pub fn qfactorial(m: u32) -> LaurentPoly {
    (1..=m as i64).fold(LaurentPoly::one(), |acc, j| &acc * &qint(j))
}

/// Gaussian binomial `[j]! / ([p]! [j-p]!)`.
pub fn qbinom(j: i64, p: i64) -> Result<LaurentPoly> {
    if j < 0 || p < 0 || p > j {
        return Err(Error::Domain(format!("q-binomial needs 0 <= p <= j, got j={j}, p={p}")));
    }
    let num = qfactorial(j as u32);
    let den = &qfactorial(p as u32) * &qfactorial((j - p) as u32);
    Ok(num.div_exact(&den).expect("q-binomial division is exact"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn small_qints() {
        assert!(qint(0).is_zero());
        assert!(qint(1).is_one());
        assert_eq!(qint(3), LaurentPoly::from_terms([(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(qint(-2), LaurentPoly::from_terms([(1, -1), (-1, -1)]));
    }

    #[test]
    fn qint_times_q_minus_qinv() {
        let d = &LaurentPoly::q() - &LaurentPoly::q_pow(-1);
        for m in 0..8 {
            let lhs = &qint(m) * &d;
            assert_eq!(lhs, &LaurentPoly::q_pow(m) - &LaurentPoly::q_pow(-m));
        }
    }

    #[test]
    fn qbinom_values() {
        for j in 0..6 {
            assert!(qbinom(j, 0).unwrap().is_one());
        }
        assert_eq!(qbinom(2, 1).unwrap(), qint(2));
        // [4]![...] hand check: [4][3]/[2] = (q^3+q+q^-1+q^-3)(q^2+1+q^-2)/(q+q^-1)
        let expect = (&qint(4) * &qint(3)).div_exact(&qint(2)).unwrap();
        assert_eq!(qbinom(4, 2).unwrap(), expect);
        assert_eq!(expect.to_string(), "q^4 + q^2 + 2 + q^-2 + q^-4");
        assert_eq!(qbinom(4, 2).unwrap().eval_at_one(), BigInt::from(6));
        assert!(qbinom(2, 3).is_err());
        assert!(qbinom(-1, 0).is_err());
    }
}
