//! Directed rounding on `f64` for the fixed-point accumulator.
//!
//! IEEE-754 basic operations are correctly rounded to nearest, so the exact
//! result of a single operation lies within one ulp of the computed value.
//! Stepping one ulp down (up) after each operation gives a guaranteed lower
//! (upper) bound. All helpers here expect non-negative finite operands.

use std::cmp::Ordering;

use super::BigRational;

pub fn to_f64_down(r: &BigRational) -> f64 {
    let f = r.to_f64();
    match r.partial_cmp(&f) {
        Some(Ordering::Less) => f.next_down(),
        _ => f,
    }
}

pub fn to_f64_up(r: &BigRational) -> f64 {
    let f = r.to_f64();
    match r.partial_cmp(&f) {
        Some(Ordering::Greater) => f.next_up(),
        _ => f,
    }
}

pub fn u128_to_f64_down(x: u128) -> f64 {
    let f = x as f64;
    if f as u128 > x {
        f.next_down()
    } else {
        f
    }
}

pub fn u128_to_f64_up(x: u128) -> f64 {
    let f = x as f64;
    if (f as u128) < x {
        f.next_up()
    } else {
        f
    }
}

#[inline]
pub fn mul_down(a: f64, b: f64) -> f64 {
    (a * b).next_down().max(0.0)
}

#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    (a * b).next_up()
}

#[inline]
pub fn div_down(a: f64, b: f64) -> f64 {
    (a / b).next_down().max(0.0)
}

#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    (a - b).next_down()
}

#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    (a - b).next_up()
}

/// `floor(x · 2^frac_bits)` for finite `x ∈ [0, 2^(128 − frac_bits))`.
pub fn fixed_floor(x: f64, frac_bits: u32) -> u128 {
    assert!(
        x.is_finite() && x >= 0.0,
        "fixed_floor expects a finite non-negative value"
    );
    if x == 0.0 {
        return 0;
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    // x = mantissa · 2^shift exactly
    let (mantissa, shift) = if exp == 0 {
        (frac as u128, -1074)
    } else {
        ((frac | (1u64 << 52)) as u128, exp - 1075)
    };
    let total = shift + frac_bits as i32;
    if total >= 0 {
        assert!(total < 128 - 53, "fixed_floor overflow");
        mantissa << total
    } else if total <= -128 {
        0
    } else {
        mantissa >> (-total)
    }
}
