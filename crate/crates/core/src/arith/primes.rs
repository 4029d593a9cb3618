use std::sync::OnceLock;

use super::Factored;
use crate::{Error, Result};

/// Default upper limit of the smallest-prime-factor cache.
pub const DEFAULT_CACHE_BOUND: u64 = 10_000_000;

/// The primes in `[2, y]`, ascending.
pub fn primes_up_to(y: u64) -> Result<Vec<u64>> {
    if y < 2 {
        return Err(Error::NoPrimes(y));
    }
    let y = usize::try_from(y).map_err(|_| Error::Config(format!("prime bound {y} too large")))?;
    let mut composite = vec![false; y + 1];
    let mut primes = Vec::new();
    for i in 2..=y {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        if let Some(start) = i.checked_mul(i) {
            for j in (start..=y).step_by(i) {
                composite[j] = true;
            }
        }
    }
    Ok(primes)
}

/// Smallest-prime-factor table for fast factorization below `bound`, with a
/// trial-division fallback above it.
#[derive(Debug, Clone)]
pub struct SpfTable {
    spf: Vec<u32>,
    primes: Vec<u64>,
}

impl SpfTable {
    pub fn new(bound: u64) -> Self {
        let bound = bound.clamp(2, u32::MAX as u64) as usize;
        let mut spf = vec![0u32; bound + 1];
        let mut primes = Vec::new();
        for i in 2..=bound {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
            }
            let p_i = spf[i];
            // linear sieve: each composite is written once by its least prime
            for &p in &primes {
                let p = p as u32;
                if p > p_i {
                    break;
                }
                let Some(j) = (i as u64).checked_mul(p as u64) else {
                    break;
                };
                if j > bound as u64 {
                    break;
                }
                spf[j as usize] = p;
            }
        }
        Self { spf, primes }
    }

    /// Largest `n` resolved directly from the table.
    pub fn bound(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn factorize(&self, n: u64) -> Result<Factored> {
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        let mut factors: Vec<(u64, u32)> = Vec::new();
        let push = |p: u64, factors: &mut Vec<(u64, u32)>| match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        };
        let mut rest = n;
        if rest > self.bound() {
            for &p in &self.primes {
                if p.saturating_mul(p) > rest {
                    break;
                }
                while rest.is_multiple_of(p) {
                    rest /= p;
                    push(p, &mut factors);
                }
                if rest <= self.bound() {
                    break;
                }
            }
            if rest > self.bound() {
                // beyond the table: 6k ± 1 trial division
                let mut d = (self.bound() + 1).max(5);
                d += (6 - d % 6 + 5) % 6; // next d ≡ 5 (mod 6)
                while rest > self.bound() && d.saturating_mul(d) <= rest {
                    for q in [d, d + 2] {
                        while rest.is_multiple_of(q) {
                            rest /= q;
                            push(q, &mut factors);
                        }
                    }
                    d += 6;
                }
                if rest > self.bound() {
                    push(rest, &mut factors);
                    rest = 1;
                }
            }
        }
        while rest > 1 {
            let p = self.spf[rest as usize] as u64;
            rest /= p;
            push(p, &mut factors);
        }
        Ok(Factored::from_sorted_factors(n, factors))
    }
}

fn default_table() -> &'static SpfTable {
    static TABLE: OnceLock<SpfTable> = OnceLock::new();
    TABLE.get_or_init(|| SpfTable::new(DEFAULT_CACHE_BOUND))
}

/// Factorizes `n` using the shared default-bound table.
pub fn factorize(n: u64) -> Result<Factored> {
    default_table().factorize(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime_trial(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn small_prime_lists() {
        assert_eq!(primes_up_to(5).unwrap(), vec![2, 3, 5]);
        assert_eq!(primes_up_to(2).unwrap(), vec![2]);
        assert!(matches!(primes_up_to(1), Err(Error::NoPrimes(1))));
        assert!(primes_up_to(0).is_err());
    }

    #[test]
    fn primes_to_157_match_trial_division() {
        let primes = primes_up_to(157).unwrap();
        let oracle: Vec<u64> = (2..=157).filter(|&n| is_prime_trial(n)).collect();
        assert_eq!(primes, oracle);
        assert_eq!(primes.len(), 37);
        assert_eq!(*primes.last().unwrap(), 157);
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(30).unwrap().factors(), &[(2, 1), (3, 1), (5, 1)]);
        assert_eq!(
            factorize(44100).unwrap().factors(),
            &[(2, 2), (3, 2), (5, 2), (7, 2)]
        );
        assert!(matches!(factorize(0), Err(Error::ZeroArgument)));
    }

    #[test]
    fn table_and_fallback_agree() {
        let small = SpfTable::new(100);
        for n in [
            101u64,
            9_999_991,
            10_403,
            2 * 3 * 1_000_003,
            1 << 40,
            999_983 * 999_979,
        ] {
            let f = small.factorize(n).unwrap();
            assert_eq!(f, factorize(n).unwrap(), "n = {n}");
            assert!(f.factors().iter().all(|&(p, _)| is_prime_trial(p)));
            assert_eq!(f.value(), n);
        }
    }

    #[test]
    fn table_covers_its_bound() {
        let t = SpfTable::new(1000);
        assert_eq!(t.bound(), 1000);
        for n in 1..=1000 {
            let f = t.factorize(n).unwrap();
            let prod: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
        }
    }
}
