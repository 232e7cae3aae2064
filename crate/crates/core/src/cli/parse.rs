//! Exact parsing of numeric flags.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn parse_err(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn parse_int(input: &str, s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(input, "expected an integer"));
    }
    s.parse::<BigInt>()
        .map_err(|e| parse_err(input, e.to_string()))
}

/// Decimal literal such as `-0.125` or `3e-4`, read as the exact fraction it
/// denotes.
fn parse_decimal(input: &str, s: &str) -> Result<BigRational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..]
                .parse()
                .map_err(|_| parse_err(input, "bad exponent"))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    if exp.unsigned_abs() > 4000 {
        return Err(parse_err(input, "exponent out of range"));
    }
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(parse_err(input, "no digits"));
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(parse_err(input, "expected a decimal number"));
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| parse_err(input, "bad digits"))?
    };
    if neg {
        num = -num;
    }
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, shift as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-shift) as usize))
    })
}

/// `p`, `p/q` exactly; decimal notation only when `allow_decimal`.
pub fn parse_rational(input: &str, allow_decimal: bool) -> Result<BigRational> {
    let s = input.trim();
    if s.is_empty() {
        return Err(parse_err(input, "empty"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_int(input, p.trim())?;
        let q = parse_int(input, q.trim())?;
        if q.is_zero() {
            return Err(parse_err(input, "zero denominator"));
        }
        return Ok(BigRational::new(p, q));
    }
    if s.contains(['.', 'e', 'E']) {
        if !allow_decimal {
            return Err(parse_err(input, "decimal input needs --float; use p/q"));
        }
        return parse_decimal(input, s);
    }
    Ok(BigRational::from_integer(parse_int(input, s)?))
}

/// Comma-separated coefficients, constant term first.
pub fn parse_coefficients(input: &str, allow_decimal: bool) -> Result<Vec<BigRational>> {
    if input.trim().is_empty() {
        return Err(parse_err(input, "no coefficients"));
    }
    input
        .split(',')
        .map(|c| parse_rational(c, allow_decimal))
        .collect()
}

/// `re,im` or a single real number, as floats.
pub fn parse_complex(input: &str) -> Result<Complex64> {
    let num = |s: &str| -> Result<f64> {
        let v: f64 = s
            .trim()
            .parse()
            .map_err(|_| parse_err(input, "expected a number"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(parse_err(input, "not finite"))
        }
    };
    match input.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(num(re)?, num(im)?)),
        None => Ok(Complex64::new(num(input)?, 0.0)),
    }
}

/// Exact value as `p/q`, or `p` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
