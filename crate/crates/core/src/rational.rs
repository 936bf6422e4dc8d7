//! Exact rational numbers and their textual form.
//!
//! Every rational crossing a file or command-line boundary is written as a
//! `"p/q"` string. Parsing additionally accepts integers and finite decimal
//! strings (`"0.25"`, `"-1.5"`, `"3e-2"`), which are converted exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p/q`, an integer, or a decimal string into an exact rational.
pub fn parse(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, fraction) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && fraction.is_empty() {
        return None;
    }
    if !whole
        .bytes()
        .chain(fraction.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let all: String = [whole, fraction].concat();
    let mut num = BigInt::from_str(if all.is_empty() { "0" } else { &all }).ok()?;
    if negative {
        num = -num;
    }
    let scale = exponent - fraction.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Formats as `"p/q"`, always including the denominator.
pub fn format(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Nearest rational with the given denominator (ties away from zero).
pub fn round_to_denominator(value: f64, denominator: i64) -> Rational {
    let scaled = (value * denominator as f64).round();
    Rational::new(BigInt::from(scaled as i64), BigInt::from(denominator))
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

pub fn in_open_unit(r: &Rational) -> bool {
    r.is_positive() && *r < Rational::one()
}

/// Display adapter printing a rational as `p/q`.
pub struct Pq<'a>(pub &'a Rational);

impl fmt::Display for Pq<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

pub fn format_list(values: &[Rational]) -> String {
    let parts: Vec<String> = values.iter().map(format).collect();
    format!("({})", parts.join(", "))
}

/// Parses a comma separated list such as `0.6,0.2,0.2` or `1/2,1/4,1/4`.
pub fn parse_list(text: &str) -> Result<Vec<Rational>, Error> {
    text.split(',').map(parse).collect()
}

/// Serde adapters for rationals stored as `"p/q"` strings.
pub mod serde_pq {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&crate::rational::format(v))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let texts = Vec::<String>::deserialize(d)?;
            texts
                .iter()
                .map(|t| crate::rational::parse(t).map_err(D::Error::custom))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse("3/4").unwrap(), frac(3, 4));
        assert_eq!(parse(" -6/8 ").unwrap(), frac(-3, 4));
        assert_eq!(parse("2").unwrap(), int(2));
        assert_eq!(parse("0.6").unwrap(), frac(3, 5));
        assert_eq!(parse("-1.25").unwrap(), frac(-5, 4));
        assert_eq!(parse(".5").unwrap(), frac(1, 2));
        assert_eq!(parse("3e-2").unwrap(), frac(3, 100));
        assert_eq!(parse("1.5E1").unwrap(), int(15));
    }

    #[test]
    fn decimal_parse_is_exact() {
        // 0.1 has no exact binary representation; the parse must not go through f64.
        assert_eq!(parse("0.1").unwrap() * int(10), int(1));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "1.2.3", "--1", "1/x", "e5", "."] {
            assert!(parse(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn format_always_has_denominator() {
        assert_eq!(format(&int(1)), "1/1");
        assert_eq!(format(&frac(-2, 4)), "-1/2");
        assert_eq!(format(&int(0)), "0/1");
    }

    #[test]
    fn rounding_to_denominator() {
        assert_eq!(round_to_denominator(0.123_456, 1000), frac(123, 1000));
        assert_eq!(round_to_denominator(1.0 / 3.0, 3), frac(1, 3));
        assert_eq!(round_to_denominator(0.999_9, 10), int(1));
    }
}
