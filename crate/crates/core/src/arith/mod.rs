//! Exact multiplicative arithmetic and rational enclosures.

pub mod directed;
mod enclosure;
mod factored;
mod primes;
mod rational;
mod zeta;

pub use enclosure::Enclosure;
pub use factored::{sigma, sigma_minus_one, smooth_part, Factored};
pub use primes::{factorize, primes_up_to, SpfTable, DEFAULT_CACHE_BOUND};
pub use rational::{
    decimal_ceil, decimal_floor, dyadic_ceil, dyadic_floor, format_fraction, parse_decimal,
    parse_fraction, BigRational,
};
pub use zeta::{zeta2_enclosure, DEFAULT_ZETA_TERMS};

/// Greatest common divisor on machine integers.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
