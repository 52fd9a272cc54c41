//! Exact rational scalars and their JSON encoding.
//!
//! Integers serialize as bare JSON numbers, everything else as a reduced
//! string "a/b" with b > 0. Parsing accepts both forms.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Unexpected};
use serde::ser::Serializer;
use serde::Deserialize;

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat_int(v: i64) -> Rat {
    BigRational::from_integer(BigInt::from(v))
}

pub fn rat_zero() -> Rat {
    BigRational::zero()
}

pub fn rat_one() -> Rat {
    BigRational::one()
}

/// Parse "a/b" or a plain integer literal.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let text = text.trim();
    let bad = || Error::BadRational(text.to_string());
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = text.parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(n))
    }
}

/// Canonical text form: integers bare, otherwise "a/b" reduced with b > 0.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

pub fn serialize_rat<S: Serializer>(r: &Rat, ser: S) -> std::result::Result<S::Ok, S::Error> {
    if r.denom().is_one() {
        if let Some(i) = r.numer().to_i64() {
            return ser.serialize_i64(i);
        }
    }
    ser.serialize_str(&rat_to_string(r))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RatRepr {
    Int(i64),
    Text(String),
}

pub fn deserialize_rat<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Rat, D::Error> {
    match RatRepr::deserialize(de)? {
        RatRepr::Int(i) => Ok(rat_int(i)),
        RatRepr::Text(s) => {
            parse_rat(&s).map_err(|_| de::Error::invalid_value(Unexpected::Str(&s), &"a/b"))
        }
    }
}

/// Least common multiple of denominators, for clearing a row to integers.
pub fn denominator_lcm<'a>(values: impl Iterator<Item = &'a Rat>) -> BigInt {
    let mut acc = BigInt::one();
    for v in values {
        acc = num::integer::lcm(acc, v.denom().abs());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(rat_to_string(&parse_rat("3/6").unwrap()), "1/2");
        assert_eq!(rat_to_string(&parse_rat("-4/2").unwrap()), "-2");
        assert_eq!(rat_to_string(&parse_rat("7").unwrap()), "7");
        assert_eq!(rat_to_string(&parse_rat("1/-2").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
