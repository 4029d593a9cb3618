use std::collections::VecDeque;

use super::walk_smooth;
use crate::arith::{factorize, primes_up_to, Factored};
use crate::{Error, Result};

/// An admissible pair: `a`, `b` coprime and y-smooth, `m | b`, `a·b ≤ z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothPair {
    pub a: Factored,
    pub b: Factored,
}

/// Validated `(m, y, z)` together with the derived prime data.
#[derive(Debug, Clone)]
pub struct PairConfig {
    pub modulus: Factored,
    pub smooth_y: u64,
    pub cap: u64,
    /// Primes `≤ y`, ascending.
    pub primes: Vec<u64>,
}

/// Checks that `m` is squarefree with prime factors `≤ y`, and `z ≥ m`.
pub fn validate_pair_config(m: u64, y: u64, z: u64) -> Result<PairConfig> {
    if m == 0 {
        return Err(Error::Config("modulus must be positive".into()));
    }
    if y < 2 {
        return Err(Error::Config(format!("smoothness bound {y} has no primes")));
    }
    let modulus = factorize(m)?;
    if modulus.factors().iter().any(|&(_, e)| e > 1) {
        return Err(Error::Config(format!("modulus {m} is not squarefree")));
    }
    if !modulus.is_smooth(y) {
        return Err(Error::Config(format!(
            "modulus {m} has a prime factor above y = {y}"
        )));
    }
    if z < m {
        return Err(Error::Config(format!("cap {z} is below the modulus {m}")));
    }
    Ok(PairConfig {
        modulus,
        smooth_y: y,
        cap: z,
        primes: primes_up_to(y)?,
    })
}

impl PairConfig {
    /// Every admissible `b` (y-smooth multiple of `m`, `b ≤ z`), ascending.
    pub fn b_values(&self) -> Vec<Factored> {
        let mut out = Vec::new();
        walk_smooth(
            &self.primes,
            &|p| *p,
            self.cap / self.modulus.value(),
            Vec::new(),
            &|s: &Vec<(u64, u32)>, &p, e, _| {
                let mut s = s.clone();
                s.push((p, e));
                s
            },
            &mut |v, s| {
                let c = Factored::from_sorted_factors(v, s.clone());
                out.push(self.modulus.mul(&c).expect("b ≤ z fits in u64"));
            },
        );
        out.sort_unstable_by_key(Factored::value);
        out
    }

    /// Primes `≤ y` not dividing `b`; the admissible `a` are built from these.
    pub fn primes_coprime_to(&self, b: &Factored) -> Vec<u64> {
        self.primes
            .iter()
            .copied()
            .filter(|&p| !b.divides_prime(p))
            .collect()
    }

    /// Every admissible `a` for this `b`, ascending.
    pub fn a_values(&self, b: &Factored) -> Vec<Factored> {
        let primes = self.primes_coprime_to(b);
        let mut out = Vec::new();
        walk_smooth(
            &primes,
            &|p| *p,
            self.cap / b.value(),
            Vec::new(),
            &|s: &Vec<(u64, u32)>, &p, e, _| {
                let mut s = s.clone();
                s.push((p, e));
                s
            },
            &mut |v, s| out.push(Factored::from_sorted_factors(v, s.clone())),
        );
        out.sort_unstable_by_key(Factored::value);
        out
    }

    pub fn pairs_for_b(&self, b: &Factored) -> impl Iterator<Item = SmoothPair> + '_ {
        let b = b.clone();
        self.a_values(&b)
            .into_iter()
            .map(move |a| SmoothPair { a, b: b.clone() })
    }
}

/// Lazy stream of all admissible pairs ordered by `b`, then `a`.
pub struct PairStream {
    config: PairConfig,
    bs: std::vec::IntoIter<Factored>,
    pending: VecDeque<SmoothPair>,
}

pub fn pair_stream(m: u64, y: u64, z: u64) -> Result<PairStream> {
    let config = validate_pair_config(m, y, z)?;
    Ok(PairStream::new(config))
}

impl PairStream {
    pub fn new(config: PairConfig) -> Self {
        let bs = config.b_values().into_iter();
        Self {
            config,
            bs,
            pending: VecDeque::new(),
        }
    }

    pub fn config(&self) -> &PairConfig {
        &self.config
    }
}

impl Iterator for PairStream {
    type Item = SmoothPair;

    fn next(&mut self) -> Option<SmoothPair> {
        while self.pending.is_empty() {
            let b = self.bs.next()?;
            self.pending.extend(self.config.pairs_for_b(&b));
        }
        self.pending.pop_front()
    }
}
