use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision fraction, always in lowest terms with positive
/// denominator (canonical zero is 0/1). The currency of all exact
/// computation in this crate.
pub type Rational = num_rational::BigRational;

/// `p/q` as a [`Rational`].
///
/// Panics on `q == 0`; use [`checked_div`] when the divisor is data.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as a [`Rational`].
pub fn rat_i(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Division with an explicit zero-divisor error instead of a panic.
pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

/// Parses `"p/q"` or `"p"` (signs allowed on `p`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidParameter(format!("cannot parse rational from {s:?}"));
    match s.split_once('/') {
        None => {
            let p: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Rounds to f64, correct for operands far outside the f64 exponent range.
///
/// `Ratio::to_f64` divides the parts' own f64 images and returns NaN once
/// either exceeds ~1e308, which exact tables hit routinely.
pub fn rational_to_f64(x: &Rational) -> f64 {
    if x.numer().is_zero() {
        return 0.0;
    }
    let neg = x.numer().is_negative();
    let num = x.numer().abs();
    let den = x.denom().clone();
    let e = num.bits() as i64 - den.bits() as i64 - 64;
    let q = if e <= 0 {
        (num << (-e) as u64) / den
    } else {
        num / (den << e as u64)
    };
    // q has ~64 significant bits; the final value is q * 2^e
    let mag = if 64 + e < -1100 {
        0.0
    } else if 64 + e > 1100 {
        f64::INFINITY
    } else {
        q.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(e as i32)
    };
    if neg {
        -mag
    } else {
        mag
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn arithmetic_in_lowest_terms() {
        assert_eq!(rat(1, 3) + rat(1, 6), rat(1, 2));
        assert_eq!(rat(22, 7) * rat(7, 22), rat_i(1));
        assert!((rat(22, 7) * rat(7, 22)).is_one());
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(1, -2), rat(-1, 2));
    }

    #[test]
    fn division_by_zero_is_signalled() {
        assert_eq!(checked_div(&rat(3, 4), &rat_i(0)), Err(Error::DivisionByZero));
        assert_eq!(checked_div(&rat(3, 4), &rat(1, 2)), Ok(rat(3, 2)));
    }

    #[test]
    fn parse_roundtrip() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-7").unwrap(), rat_i(-7));
        assert_eq!(parse_rational(" -2/6 ").unwrap(), rat(-1, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn f64_conversion_handles_huge_operands() {
        let big = Rational::from_integer(BigInt::from(10).pow(500));
        let tiny = Rational::new(BigInt::one(), BigInt::from(10).pow(500));
        assert!(rational_to_f64(&big).is_infinite());
        assert_eq!(rational_to_f64(&tiny), 0.0);
        let x = &big / (&big + Rational::one());
        assert!((rational_to_f64(&x) - 1.0).abs() < 1e-15);
        assert!((rational_to_f64(&rat(-355, 113)) + 355.0 / 113.0).abs() < 1e-15);
    }
}
