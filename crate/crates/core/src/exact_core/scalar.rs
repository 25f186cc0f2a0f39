//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

use crate::error::Error;

/// The base field: arbitrary-precision rationals, always in lowest terms.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_scalar(s: &str) -> Result<Scalar, Error> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match t.split_once('/') {
        None => BigInt::from_str(t).map(Scalar::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Scalar::new(n, d))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

/// Smallest common denominator of a list (1 for an empty list).
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| {
        num_integer::Integer::lcm(&acc, x.denom())
    })
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-3", "7/2", "-10/4"] {
            let x = parse_scalar(s).unwrap();
            assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x);
        }
        assert_eq!(format_scalar(&parse_scalar("-10/4").unwrap()), "-5/2");
        assert_eq!(format_scalar(&parse_scalar("6/3").unwrap()), "2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("1.5").is_err());
    }

    #[test]
    fn lcm_of_denominators() {
        let xs = [ratio(1, 4), ratio(1, 6), int(3)];
        assert_eq!(common_denominator(&xs), BigInt::from(12));
    }
}
