//! Exact scalars.
//!
//! Every coefficient in the library is a [`Q`], an arbitrary-precision
//! rational. On the wire rationals are always strings, `"p/q"` or `"p"`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{OrbitError, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"±p/q"` or `"±p"`. Whitespace, empty parts and zero denominators
/// are rejected.
pub fn parse_rational(s: &str) -> Result<Q> {
    let bad = || OrbitError::Usage(format!("malformed rational {s:?}"));
    let (neg, digits) = match (s.strip_prefix('+'), s.strip_prefix('-')) {
        (Some(rest), _) => (false, rest),
        (_, Some(rest)) => (true, rest),
        _ => (false, s),
    };
    let (num, den) = match digits.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (digits, None),
    };
    let is_digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !is_digits(num) || !den.map_or(true, is_digits) {
        return Err(bad());
    }
    let mut n = BigInt::from_str(num).map_err(|_| bad())?;
    if neg {
        n = -n;
    }
    let d = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

pub fn format_rational(x: &Q) -> String {
    x.to_string()
}

/// Serde adapter for `Q` as a string.
pub mod serde_q {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signed_fractions() {
        assert_eq!(parse_rational("7/5").unwrap(), frac(7, 5));
        assert_eq!(parse_rational("-3").unwrap(), q(-3));
        assert_eq!(parse_rational("+4/6").unwrap(), frac(2, 3));
        assert_eq!(parse_rational("-0").unwrap(), zero());
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "1/", "/2", "1.5", " 1", "--1", "a", "1/-2", "+-1"] {
            assert!(parse_rational(s).is_err(), "{s:?} should fail");
        }
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&frac(14, 10)), "7/5");
        assert_eq!(format_rational(&frac(-6, 3)), "-2");
    }
}
