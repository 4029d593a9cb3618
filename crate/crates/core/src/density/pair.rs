use rug::ops::RemRounding;
use rug::Integer;

use crate::arith::{factorize, primes_up_to, BigRational, Factored};
use crate::{Error, Result};

/// `∏_{p ≤ y} p`.
pub fn primorial(y: u64) -> Result<Integer> {
    Ok(primes_up_to(y)?
        .into_iter()
        .fold(Integer::from(1), |acc, p| acc * p))
}

/// Precomputed data for evaluating `dS(a, b)` for one `(m, y)`.
///
/// The density factors as
///
/// ```text
/// dS(a, b) = [m/b ∏_{p|b}(1−1/p) ∏_{p≤y, p∤b, p≠2}(1−2/p)]
///          · [1/a ∏_{p|a}(1−1/p) ∏_{p|a, p≠2} 1/(1−2/p)]
/// ```
///
/// when `2 | ab`, and is zero otherwise (one of `mn`, `mn + 1` is even, so
/// the factor `1 − 2/2` kills every class with `2 ∤ ab`). Keeping `p = 2` out
/// of the `(1 − 2/p)` products avoids dividing by zero.
#[derive(Debug, Clone)]
pub struct DensityContext {
    modulus: Factored,
    smooth_y: u64,
    primes: Vec<u64>,
    /// `∏_{p ≤ y, p ∤ m, p ≠ 2} (1 − 2/p)`
    base: BigRational,
}

impl DensityContext {
    pub fn new(m: u64, y: u64) -> Result<Self> {
        let modulus = factorize(m)?;
        if modulus.factors().iter().any(|&(_, e)| e > 1) || !modulus.is_smooth(y) {
            return Err(Error::Config(format!(
                "modulus {m} must be squarefree with prime factors at most {y}"
            )));
        }
        let primes = primes_up_to(y)?;
        let mut base = BigRational::from(1);
        for &p in primes
            .iter()
            .filter(|&&p| p != 2 && !modulus.divides_prime(p))
        {
            base *= BigRational::from((p - 2, p));
        }
        Ok(Self {
            modulus,
            smooth_y: y,
            primes,
            base,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus.value()
    }

    pub fn smooth_y(&self) -> u64 {
        self.smooth_y
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// True when `S(a, b)` can be non-empty.
    pub fn admissible(&self, a: &Factored, b: &Factored) -> bool {
        b.value().is_multiple_of(self.modulus.value())
            && a.is_coprime(b)
            && a.is_smooth(self.smooth_y)
            && b.is_smooth(self.smooth_y)
    }

    /// The `b`-dependent factor of `dS` (first bracket above).
    pub fn b_part(&self, b: &Factored) -> BigRational {
        let mut r = BigRational::from((self.modulus.value(), b.value()));
        for p in b.primes() {
            r *= BigRational::from((p - 1, p));
            if p != 2 && !self.modulus.divides_prime(p) {
                r /= BigRational::from((p - 2, p));
            }
        }
        r * &self.base
    }

    /// The `a`-dependent factor of `dS` (second bracket above).
    pub fn a_weight(a: &Factored) -> BigRational {
        let mut r = BigRational::from((1, a.value()));
        for p in a.primes() {
            r *= if p == 2 {
                BigRational::from((1, 2))
            } else {
                BigRational::from((p - 1, p - 2))
            };
        }
        r
    }

    /// Exact `dS(a, b)`; zero for inadmissible pairs.
    pub fn density(&self, a: &Factored, b: &Factored) -> BigRational {
        let even = a.divides_prime(2) || b.divides_prime(2);
        if !even || !self.admissible(a, b) {
            return BigRational::new();
        }
        self.b_part(b) * Self::a_weight(a)
    }
}

/// `dS(a, b)`, the density of `{n : Y(mn+1) = a, Y(mn) = b}`.
pub fn pair_density(m: u64, y: u64, a: &Factored, b: &Factored) -> Result<BigRational> {
    Ok(DensityContext::new(m, y)?.density(a, b))
}

/// One residue class `S(a, b; t₁, t₂)`, or nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassProgression {
    Empty,
    /// `n ≡ residue (mod modulus)` with `modulus = abP/m`; equivalently
    /// `mn + 1 ≡ a·t₁ (mod aP)` and `mn ≡ b·t₂ (mod bP)` hold for every
    /// member, and `mn` runs through one class modulo `abP`.
    Class {
        modulus: Integer,
        residue: Integer,
    },
}

impl ClassProgression {
    pub fn is_empty(&self) -> bool {
        matches!(self, Self::Empty)
    }

    /// The first `count` positive members.
    pub fn members(&self, count: usize) -> Vec<Integer> {
        match self {
            Self::Empty => Vec::new(),
            Self::Class { modulus, residue } => {
                let start = if *residue == 0 {
                    modulus.clone()
                } else {
                    residue.clone()
                };
                (0..count)
                    .map(|k| Integer::from(modulus * k) + &start)
                    .collect()
            }
        }
    }
}

/// Extended Euclid: `(g, s, t)` with `a·s + b·t = g = gcd(a, b)`.
fn extended_gcd(a: &Integer, b: &Integer) -> (Integer, Integer, Integer) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Integer::from(1), Integer::from(0));
    let (mut t0, mut t1) = (Integer::from(0), Integer::from(1));
    while r1 != 0 {
        let q = Integer::from(&r0 / &r1);
        let r2 = Integer::from(&r0 - &q * &r1);
        let s2 = Integer::from(&s0 - &q * &s1);
        let t2 = Integer::from(&t0 - &q * &t1);
        (r0, r1) = (r1, r2);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    (r0, s0, t0)
}

/// The class of `n` with `(mn+1)/a ≡ t₁` and `mn/b ≡ t₂ (mod P)`.
///
/// Non-empty iff `P | 1 − a·t₁ + b·t₂`; then with `Pℓ = 1 − a·t₁ + b·t₂` and
/// `a·x₀ − b·y₀ = 1`, the members satisfy `mn + 1 ≡ a(t₁ + x₀Pℓ) (mod abP)`.
pub fn class_progression(
    m: u64,
    y: u64,
    a: u64,
    b: u64,
    t1: &Integer,
    t2: &Integer,
) -> Result<ClassProgression> {
    let p = primorial(y)?;
    if *t1 < 1 || *t1 > p || *t2 < 1 || *t2 > p {
        return Err(Error::Precondition("t1 and t2 must lie in [1, P]".into()));
    }
    if Integer::from(t1 * t2).gcd(&p) != 1 {
        return Err(Error::Precondition("gcd(t1·t2, P) must be 1".into()));
    }
    if m == 0 || !b.is_multiple_of(m) {
        return Err(Error::Precondition(format!(
            "modulus {m} must divide b = {b}"
        )));
    }
    let (ai, bi) = (Integer::from(a), Integer::from(b));
    let (g, s, t) = extended_gcd(&ai, &bi);
    if g != 1 {
        return Err(Error::Precondition(format!(
            "a = {a} and b = {b} are not coprime"
        )));
    }
    let (x0, _y0) = (s, -t);
    let diff = Integer::from(1) - Integer::from(&ai * t1) + Integer::from(&bi * t2);
    if !diff.is_divisible(&p) {
        return Ok(ClassProgression::Empty);
    }
    let ell = diff / &p;
    let ab_p = Integer::from(&ai * &bi) * &p;
    let value = ai * (Integer::from(&x0 * &p) * &ell + t1);
    // mn ≡ value − 1 (mod abP), and m | b | abP
    let mn = (value - 1u32).rem_euc(&ab_p);
    debug_assert!(mn.is_divisible(&Integer::from(m)));
    let modulus = ab_p / m;
    let residue = (mn / m).rem_euc(&modulus);
    Ok(ClassProgression::Class { modulus, residue })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u64) -> Factored {
        factorize(n).unwrap()
    }

    #[test]
    fn density_examples() {
        assert_eq!(
            pair_density(30, 5, &f(1), &f(30)).unwrap(),
            BigRational::from((4, 15))
        );
        assert_eq!(
            pair_density(30, 7, &f(7), &f(30)).unwrap(),
            BigRational::from((8, 245))
        );
        assert_eq!(pair_density(30, 5, &f(2), &f(30)).unwrap(), 0);
        // m ∤ b
        assert_eq!(pair_density(30, 5, &f(1), &f(10)).unwrap(), 0);
        // a not y-smooth
        assert_eq!(pair_density(30, 5, &f(7), &f(30)).unwrap(), 0);
    }

    #[test]
    fn odd_modulus_needs_an_even_side() {
        // m = 3: exactly one of 3n, 3n+1 is even.
        let ctx = DensityContext::new(3, 5).unwrap();
        assert_eq!(ctx.density(&f(5), &f(3)), 0);
        assert!(ctx.density(&f(2), &f(3)) > 0);
        assert!(ctx.density(&f(1), &f(6)) > 0);
    }

    #[test]
    fn context_rejects_bad_modulus() {
        assert!(DensityContext::new(12, 5).is_err());
        assert!(DensityContext::new(14, 5).is_err());
    }

    #[test]
    fn class_examples() {
        let one = Integer::from(1);
        let seven = Integer::from(7);
        let c = class_progression(30, 5, 1, 30, &one, &seven).unwrap();
        assert_eq!(
            c,
            ClassProgression::Class {
                modulus: Integer::from(30),
                residue: seven.clone()
            }
        );
        let first: Vec<Integer> = c.members(3);
        assert_eq!(
            first,
            vec![Integer::from(7), Integer::from(37), Integer::from(67)]
        );
        assert!(class_progression(30, 5, 1, 30, &seven, &one)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn class_preconditions() {
        let bad = Integer::from(2);
        let ok = Integer::from(1);
        assert!(class_progression(30, 5, 1, 30, &bad, &ok).is_err());
        assert!(class_progression(30, 5, 1, 30, &Integer::from(31), &ok).is_err());
        assert!(class_progression(30, 5, 2, 30, &ok, &ok).is_err());
    }

    #[test]
    fn extended_gcd_identity() {
        for (a, b) in [(7u32, 30u32), (1, 30), (240, 46), (17, 1)] {
            let (a, b) = (Integer::from(a), Integer::from(b));
            let (g, s, t) = extended_gcd(&a, &b);
            assert_eq!(Integer::from(&a * &s) + Integer::from(&b * &t), g);
        }
    }
}
