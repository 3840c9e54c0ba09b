//! Exact rational arithmetic used for every flow, demand and load value.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{OrnError, Result};

/// Exact rational number. All feasibility logic is carried out in this type.
pub type Rational = num_rational::Ratio<i128>;

pub fn ratio(numer: i128, denom: i128) -> Rational {
    Rational::new(numer, denom)
}

pub fn int(value: i128) -> Rational {
    Rational::from_integer(value)
}

/// Parses `p/q` or `p`, rejecting zero denominators.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || OrnError::Parse(format!("not a rational number: {text:?}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: i128 = p.trim().parse().map_err(|_| bad())?;
            let q: i128 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(int(text.parse().map_err(|_| bad())?)),
    }
}

/// Always renders `p/q`, including integers (`3/1`).
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn to_f64(value: &Rational) -> f64 {
    *value.numer() as f64 / *value.denom() as f64
}

/// Least common multiple of all denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Result<i128> {
    let mut acc: i128 = 1;
    for v in values {
        let d = *v.denom();
        let g = acc.gcd(&d);
        acc = (acc / g)
            .checked_mul(d)
            .ok_or_else(|| OrnError::Overflow("denominator lcm".into()))?;
    }
    Ok(acc)
}

pub fn is_nonnegative(value: &Rational) -> bool {
    !value.is_negative()
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_pq {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}
