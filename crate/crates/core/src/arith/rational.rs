//! Helpers around the exact rational type.

use rug::{Integer, Rational};

/// Exact arbitrary-precision fraction, always held in lowest terms.
pub type BigRational = Rational;

/// Formats as `numerator/denominator`, always including the denominator.
pub fn format_fraction(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `numerator/denominator` or a bare integer.
pub fn parse_fraction(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: Integer = num.parse().ok()?;
    let den: Integer = den.parse().ok()?;
    if den <= 0 {
        return None;
    }
    Some(BigRational::from((num, den)))
}

/// Parses a plain decimal literal such as `-1.25` exactly.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let all: Integer = format!("0{int_part}{frac_part}").parse().ok()?;
    let scale = Integer::from(Integer::u_pow_u(10, frac_part.len() as u32));
    let r = BigRational::from((all, scale));
    Some(if neg { -r } else { r })
}

fn scaled_decimal(r: &BigRational, digits: u32, up: bool) -> String {
    let scale = Integer::from(Integer::u_pow_u(10, digits));
    let scaled = BigRational::from(r * &scale);
    let q = if up { scaled.ceil() } else { scaled.floor() };
    let q = q.numer().clone();
    let neg = q < 0;
    let mag = q.abs().to_string();
    let digits = digits as usize;
    let padded = format!("{:0>width$}", mag, width = digits + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Decimal string with `digits` fractional digits, rounded toward +∞.
pub fn decimal_ceil(r: &BigRational, digits: u32) -> String {
    scaled_decimal(r, digits, true)
}

/// Decimal string with `digits` fractional digits, rounded toward −∞.
pub fn decimal_floor(r: &BigRational, digits: u32) -> String {
    scaled_decimal(r, digits, false)
}

/// Largest multiple of `2^-bits` not above `r`.
pub fn dyadic_floor(r: &BigRational, bits: u32) -> BigRational {
    let scaled = BigRational::from(r << bits);
    BigRational::from(scaled.floor() >> bits)
}

/// Smallest multiple of `2^-bits` not below `r`.
pub fn dyadic_ceil(r: &BigRational, bits: u32) -> BigRational {
    let scaled = BigRational::from(r << bits);
    BigRational::from(scaled.ceil() >> bits)
}
