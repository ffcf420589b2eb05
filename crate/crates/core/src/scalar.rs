//! Exact rational scalars.
//!
//! `BigRational` keeps every value in lowest terms with a positive
//! denominator, which is exactly the invariant the rest of the crate relies
//! on for decidable zero tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    assert!(q != 0, "zero denominator");
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` (surrounding whitespace allowed).
pub fn parse(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Scalar::new(p, q))
        }
        None => {
            let p: BigInt = text.parse().map_err(|_| bad())?;
            Ok(Scalar::from_integer(p))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Canonical JSON form: a JSON integer when the value is an integer that fits
/// in `i64`, the `"p/q"` string otherwise.
pub fn to_json(x: &Scalar) -> serde_json::Value {
    if x.is_integer() {
        if let Some(n) = x.numer().to_i64() {
            return serde_json::Value::from(n);
        }
    }
    serde_json::Value::String(format(x))
}

pub fn from_json(v: &serde_json::Value) -> Result<Scalar> {
    match v {
        serde_json::Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(int(i)),
            None => parse(&n.to_string()),
        },
        serde_json::Value::String(s) => parse(s),
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reduces() {
        assert_eq!(parse("4/6").unwrap(), frac(2, 3));
        assert_eq!(parse("-3/-6").unwrap(), frac(1, 2));
        assert_eq!(parse(" 7 ").unwrap(), int(7));
        assert_eq!(*parse("3/-6").unwrap().denom(), BigInt::from(2));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse("1/0").is_err());
        assert!(parse("a/b").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(format(&frac(-4, 6)), "-2/3");
        assert_eq!(format(&int(5)), "5");
        assert_eq!(to_json(&int(-3)), serde_json::json!(-3));
        assert_eq!(to_json(&frac(1, 2)), serde_json::json!("1/2"));
    }
}
