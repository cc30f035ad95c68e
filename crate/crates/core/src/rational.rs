//! Exact rational scalars.
//!
//! All arithmetic in the crate is over `Q`, backed by `num_rational::BigRational`.
//! On the wire rationals are strings of the form `"p/q"` (or `"p"` when the
//! denominator is one).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `(-1)^k` as a rational.
pub fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        one()
    } else {
        -one()
    }
}

pub fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(one(), |acc, i| acc * int(i))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. Denominator must be nonzero.
pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn to_string(r: &Rational) -> String {
    r.to_string()
}

/// Least common multiple of the denominators of `row`.
pub fn denominator_lcm<'a>(row: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    row.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
        .abs()
}

/// Serde adapter for a single rational stored as a string.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for vectors of rationals stored as strings.
pub mod serde_vec {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(|r| r.to_string()).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| super::parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("2").unwrap(), int(2));
        assert_eq!(parse("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(parse(" 1 / 3 ").unwrap(), frac(1, 3));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn display_is_reduced() {
        assert_eq!(to_string(&frac(4, -6)), "-2/3");
        assert_eq!(to_string(&int(5)), "5");
    }

    #[test]
    fn factorials_and_signs() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(4), int(24));
        assert_eq!(sign(3), int(-1));
    }
}
