use rug::ops::Pow;

use crate::arith::{
    dyadic_ceil, dyadic_floor, primes_up_to, zeta2_enclosure, BigRational, Enclosure, Factored,
};
use crate::{Error, Result};

/// Default truncation exponent for each Euler factor when `r ≥ 2`.
pub const DEFAULT_EXPONENT_CUTOFF: u32 = 30;

/// Working precision (bits) for the running Euler product when `r ≥ 2`.
const PRODUCT_BITS: u32 = 256;

/// Enclosure of `Λ_k(r) = ∏_{p ∤ k} (1 + h(p)/p + h(p²)/p² + ⋯)`, where `h`
/// is the Möbius transform of `σ₋₁^r`.
///
/// For `r = 1` this is `ζ(2) ∏_{p | k} (1 − 1/p²)` with ζ(2) bracketed by
/// `zeta_terms` partial-sum terms. For `r ≥ 2` the Euler product is taken
/// over primes up to `zeta_terms` with rigorous tail bounds.
pub fn lambda_k(k: &Factored, r: u32, zeta_terms: u64) -> Result<Enclosure> {
    let excluded: Vec<u64> = k.primes().collect();
    lambda_coprime_to(&excluded, r, zeta_terms)
}

/// As [`lambda_k`], for `k` given by its distinct primes (so that `k` may
/// exceed `u64`, as the primorial of 157 does).
pub fn lambda_coprime_to(excluded: &[u64], r: u32, zeta_terms: u64) -> Result<Enclosure> {
    match r {
        0 => Err(Error::Precondition("exponent r must be at least 1".into())),
        1 => {
            let zeta = zeta2_enclosure(zeta_terms)?;
            let mut factor = BigRational::from(1);
            for &p in excluded {
                factor *= BigRational::from((p * p - 1, p * p));
            }
            Ok(zeta.scale(&factor))
        }
        _ => lambda_euler_product(excluded, r, zeta_terms, DEFAULT_EXPONENT_CUTOFF),
    }
}

/// Euler factor `1 + Σ_{α=1}^{A} h(p^α)/p^α` together with the bound
/// `r·2^{r−1}·p^{−2(A+1)}/(1 − p^{−2})` on the omitted exponents.
fn euler_factor(p: u64, r: u32, exponent_cutoff: u32) -> Enclosure {
    let inv_p = BigRational::from((1, p));
    let mut factor = BigRational::from(1);
    let mut sigma_prev = BigRational::from(1); // σ₋₁(p^{α−1})
    let mut g_prev = BigRational::from(1);
    let mut p_pow_inv = BigRational::from(1); // p^{−α}
    for _ in 0..exponent_cutoff {
        p_pow_inv *= &inv_p;
        let sigma = BigRational::from(&sigma_prev + &p_pow_inv);
        let g = BigRational::from((&sigma).pow(r));
        let h = BigRational::from(&g - &g_prev);
        factor += h * &p_pow_inv;
        sigma_prev = sigma;
        g_prev = g;
    }
    let mean_value_const = BigRational::from(r) * BigRational::from(1u64 << (r - 1));
    let p2 = BigRational::from(p * p);
    let tail = mean_value_const
        / BigRational::from((&p2).pow(exponent_cutoff + 1))
        / (BigRational::from(1) - BigRational::from((1, p * p)));
    let hi = BigRational::from(&factor + &tail);
    Enclosure::new(factor, hi).expect("tail is non-negative")
}

/// Λ for general `r` as a truncated Euler product.
///
/// Each factor is at least one (`σ₋₁^r` is non-decreasing along prime
/// powers), and by the mean-value bound `h(p^α) ≤ r·2^{r−1}/p^α`, so the
/// primes above `prime_cutoff = Q` contribute at most a factor
/// `exp(T) ≤ 1/(1 − T)` with `T = r·2^{r−1}·Σ_{n>Q} 1/(n² − 1) = r·2^{r−1}·(1/Q + 1/(Q+1))/2`.
pub fn lambda_euler_product(
    excluded: &[u64],
    r: u32,
    prime_cutoff: u64,
    exponent_cutoff: u32,
) -> Result<Enclosure> {
    if r == 0 {
        return Err(Error::Precondition("exponent r must be at least 1".into()));
    }
    if r > 32 {
        return Err(Error::Precondition(format!(
            "exponent r = {r} is unsupported"
        )));
    }
    let mean_value_const = BigRational::from(r) * BigRational::from(1u64 << (r - 1));
    let q = prime_cutoff.max(2);
    let tail =
        mean_value_const * (BigRational::from((1, q)) + BigRational::from((1, q + 1))) / 2u32;
    if tail >= 1 {
        return Err(Error::Precondition(format!(
            "prime cutoff {q} is too small for exponent r = {r}"
        )));
    }
    let mut lo = BigRational::from(1);
    let mut hi = BigRational::from(1);
    for p in primes_up_to(q)?
        .into_iter()
        .filter(|p| !excluded.contains(p))
    {
        let factor = euler_factor(p, r, exponent_cutoff);
        lo = dyadic_floor(&(lo * factor.lo()), PRODUCT_BITS);
        hi = dyadic_ceil(&(hi * factor.hi()), PRODUCT_BITS);
    }
    hi /= BigRational::from(1) - tail;
    Enclosure::new(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorize, parse_decimal};

    // π²/6 and π² to 50 decimals.
    const ZETA2: &str = "1.64493406684822643647241516664602518921894990120680";
    const PI2: &str = "9.86960440108935861883449099987615113531369940724079";

    fn reference(digits: &str) -> Enclosure {
        let x = parse_decimal(digits).unwrap();
        let eps = BigRational::from((1, rug::Integer::from(10u32).pow(49u32)));
        Enclosure::new(BigRational::from(&x - &eps), x + eps).unwrap()
    }

    #[test]
    fn k_one_is_zeta2() {
        let e = lambda_k(&Factored::one(), 1, 100_000).unwrap();
        assert!(e.intersects(&reference(ZETA2)));
        assert!(e.encloses(&reference(ZETA2)));
    }

    #[test]
    fn k_thirty_is_eight_pi_squared_over_75() {
        let e = lambda_k(&factorize(30).unwrap(), 1, 100_000).unwrap();
        let target = reference(PI2).scale(&BigRational::from((8, 75)));
        assert!(e.encloses(&target));
        assert!((e.midpoint().to_f64() - 1.0527578).abs() < 1e-7);
    }

    #[test]
    fn k_two_is_three_quarters_zeta2() {
        let e = lambda_k(&factorize(2).unwrap(), 1, 100_000).unwrap();
        assert!(e.encloses(&reference(ZETA2).scale(&BigRational::from((3, 4)))));
        assert!((e.midpoint().to_f64() - 1.2337005).abs() < 1e-7);
    }

    #[test]
    fn euler_factor_at_r1_is_geometric() {
        // h(p^α) = p^{−α}, so the factor is p²/(p²−1) up to the exponent tail
        for p in [2u64, 3, 5, 157] {
            let e = euler_factor(p, 1, 30);
            assert!(e.contains(&BigRational::from((p * p, p * p - 1))));
        }
    }

    #[test]
    fn euler_product_agrees_with_closed_form_at_r1() {
        let closed = lambda_k(&factorize(30).unwrap(), 1, 100_000).unwrap();
        let product = lambda_euler_product(&[2, 3, 5], 1, 2000, 30).unwrap();
        assert!(product.encloses(&closed));
        assert!(product.width() < BigRational::from((1, 1000)));
    }

    #[test]
    fn r2_enclosure_is_ordered_and_above_r1() {
        let r1 = lambda_coprime_to(&[2, 3, 5], 1, 10_000).unwrap();
        let r2 = lambda_coprime_to(&[2, 3, 5], 2, 10_000).unwrap();
        assert!(r2.lo() > r1.hi());
        assert!(r2.width() < BigRational::from((1, 100)));
    }

    #[test]
    fn zero_exponent_rejected() {
        assert!(lambda_k(&Factored::one(), 0, 10).is_err());
        assert!(lambda_euler_product(&[], 3, 5, 10).is_err());
    }
}
