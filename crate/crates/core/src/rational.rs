//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Parses a level: optional sign, then an integer or `int/int`.
///
/// Whitespace around the literal is ignored; anything else is rejected with
/// the column of the first offending character.
pub fn parse_rational(text: &str) -> Result<Q> {
    let start = text.len() - text.trim_start().len();
    let body = text.trim();
    if body.is_empty() {
        return Err(Error::parse(start + 1, "expected a rational number"));
    }
    let bytes = body.as_bytes();
    let mut pos = 0;
    let negative = match bytes[0] {
        b'-' => {
            pos = 1;
            true
        }
        b'+' => {
            pos = 1;
            false
        }
        _ => false,
    };
    let (num, used) = digits(&body[pos..], start + pos)?;
    pos += used;
    let den_column = start + pos + 2;
    let den = if pos < bytes.len() {
        if bytes[pos] != b'/' {
            return Err(Error::parse(
                start + pos + 1,
                format!("unexpected character `{}`", bytes[pos] as char),
            ));
        }
        pos += 1;
        let (den, used) = digits(&body[pos..], start + pos)?;
        pos += used;
        if pos < bytes.len() {
            return Err(Error::parse(
                start + pos + 1,
                format!("unexpected character `{}`", bytes[pos] as char),
            ));
        }
        den
    } else {
        BigInt::one()
    };
    if den.is_zero() {
        return Err(Error::parse(den_column, "zero denominator"));
    }
    let value = Q::new(num, den);
    Ok(if negative { -value } else { value })
}

fn digits(text: &str, offset: usize) -> Result<(BigInt, usize)> {
    let len = text.bytes().take_while(u8::is_ascii_digit).count();
    if len == 0 {
        return Err(Error::parse(offset + 1, "expected digits"));
    }
    let value = text[..len]
        .parse::<BigInt>()
        .map_err(|e| Error::parse(offset + 1, e.to_string()))?;
    Ok((value, len))
}

/// `p/q` in lowest terms, or `p` when integral.
pub fn fmt_q(value: &Q) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Q>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn is_nonneg(value: &Q) -> bool {
    !value.is_negative()
}
