//! Exact rational helpers shared by every module.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

/// Parses `p/q`, an integer, or a finite decimal such as `2.3` (converted exactly).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    let bad = || Error::Parse(format!("not a rational literal: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_abs = whole.trim_start_matches(['-', '+']);
        let whole_abs: BigInt = if whole_abs.is_empty() {
            BigInt::zero()
        } else {
            whole_abs.parse().map_err(|_| bad())?
        };
        let frac_int: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mut value = BigRational::new(whole_abs * &scale + frac_int, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational approximation of a finite float (dyadic, no rounding).
pub fn from_f64(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Distance to the nearest integer, `‖x‖_{R/Z}`.
pub fn torus_norm(x: &Rational) -> Rational {
    let fl = x.floor();
    let frac = x - &fl;
    let other = Rational::one() - &frac;
    if frac <= other {
        frac
    } else {
        other
    }
}

pub fn biguint_ratio(num: &BigUint, den: &BigUint) -> Rational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

pub fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128()
        .ok_or_else(|| Error::invalid(format!("integer {x} does not fit in 128 bits")))
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_str_vec {
    use super::{format_rational, Rational};
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&format_rational(x))?;
        }
        seq.end()
    }
}
