//! Exact rationals. Thin helpers around [`BigRational`], which already keeps
//! values in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p"` or `"p/q"`, allowing surrounding whitespace and a leading sign.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let parsed = match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad(text))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad(text))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{text}`")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(text.parse().map_err(|_| bad(text))?),
    };
    Ok(parsed)
}

fn bad(text: &str) -> Error {
    Error::Parse(format!("`{text}` is not a rational number"))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}
