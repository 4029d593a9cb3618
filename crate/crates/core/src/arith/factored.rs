use super::BigRational;

/// A positive integer together with its prime factorization.
///
/// Primes are strictly increasing and every exponent is at least one; the
/// empty factor list represents `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factored {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factored {
    pub fn one() -> Self {
        Self {
            value: 1,
            factors: Vec::new(),
        }
    }

    /// Builds from a factor list, checking that it is sorted and that the
    /// product fits in a `u64`. Primality of the listed bases is the caller's
    /// responsibility.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Option<Self> {
        let mut value = 1u64;
        let mut prev = 1u64;
        for &(p, e) in &factors {
            if p <= prev || e == 0 {
                return None;
            }
            prev = p;
            value = value.checked_mul(p.checked_pow(e)?)?;
        }
        Some(Self { value, factors })
    }

    pub(crate) fn from_sorted_factors(value: u64, factors: Vec<(u64, u32)>) -> Self {
        debug_assert_eq!(
            Self::from_factors(factors.clone()).map(|f| f.value),
            Some(value)
        );
        Self { value, factors }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.factors.last().map(|&(p, _)| p)
    }

    pub fn is_smooth(&self, y: u64) -> bool {
        self.largest_prime().is_none_or(|p| p <= y)
    }

    pub fn divides_prime(&self, p: u64) -> bool {
        self.factors.binary_search_by_key(&p, |&(q, _)| q).is_ok()
    }

    pub fn is_coprime(&self, other: &Factored) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (p, q) = (self.factors[i].0, other.factors[j].0);
            if p == q {
                return false;
            }
            if p < q {
                i += 1;
            } else {
                j += 1;
            }
        }
        true
    }

    /// Product of two factorizations. `None` on `u64` overflow.
    pub fn mul(&self, other: &Factored) -> Option<Factored> {
        let value = self.value.checked_mul(other.value)?;
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() || j < other.factors.len() {
            match (self.factors.get(i), other.factors.get(j)) {
                (Some(&(p, e)), Some(&(q, f))) if p == q => {
                    factors.push((p, e + f));
                    i += 1;
                    j += 1;
                }
                (Some(&(p, e)), Some(&(q, _))) if p < q => {
                    factors.push((p, e));
                    i += 1;
                }
                (Some(&(p, e)), None) => {
                    factors.push((p, e));
                    i += 1;
                }
                (_, Some(&(q, f))) => {
                    factors.push((q, f));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Some(Self { value, factors })
    }

    /// σ(n), the sum of the divisors.
    pub fn sigma(&self) -> u128 {
        self.factors
            .iter()
            .map(|&(p, e)| {
                let p = p as u128;
                let mut term = 1u128;
                let mut sum = 1u128;
                for _ in 0..e {
                    term *= p;
                    sum += term;
                }
                sum
            })
            .product()
    }

    /// σ₋₁(n) = σ(n)/n as an exact fraction.
    pub fn sigma_minus_one(&self) -> BigRational {
        BigRational::from((
            rug::Integer::from(self.sigma()),
            rug::Integer::from(self.value),
        ))
    }

    /// Largest divisor of `n` whose prime factors are all at most `y`.
    pub fn smooth_part(&self, y: u64) -> u64 {
        self.factors
            .iter()
            .take_while(|&&(p, _)| p <= y)
            .map(|&(p, e)| p.pow(e))
            .product()
    }
}

pub fn sigma(n: &Factored) -> u128 {
    n.sigma()
}

pub fn sigma_minus_one(n: &Factored) -> BigRational {
    n.sigma_minus_one()
}

pub fn smooth_part(n: &Factored, y: u64) -> u64 {
    n.smooth_part(y)
}
