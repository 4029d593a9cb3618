use rug::{Integer, Rational};

use super::block::{sigma_block, DEFAULT_BLOCK_SIZE};
use crate::arith::{gcd, BigRational};
use crate::{Error, Result};

/// Exact sum of `num_i / den_i` by pairwise merging, reduced once at the end.
pub fn sum_fractions(terms: &[(Integer, Integer)]) -> BigRational {
    fn split(t: &[(Integer, Integer)]) -> (Integer, Integer) {
        match t {
            [] => (Integer::ZERO, Integer::from(1)),
            [(p, q)] => (p.clone(), q.clone()),
            _ => {
                let (l, r) = t.split_at(t.len() / 2);
                let (p1, q1) = split(l);
                let (p2, q2) = split(r);
                (p1 * &q2 + p2 * &q1, q1 * q2)
            }
        }
    }
    Rational::from(split(terms))
}

/// `(k/x) · Σ_{n ≤ x, n ≡ l (mod k)} σ(n)/n`, exactly.
pub fn lambda_empirical(k: u64, l: u64, x: u64) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::ZeroArgument);
    }
    if gcd(k, l % k) != 1 {
        return Err(Error::Precondition(format!("gcd({k}, {l}) must be 1")));
    }
    if x < k {
        return Err(Error::Precondition(format!(
            "range {x} is shorter than the modulus {k}"
        )));
    }
    let first = match l % k {
        0 => k,
        r => r,
    };
    let mut terms = Vec::new();
    let mut lo = 1;
    while lo <= x {
        let hi = x.min(lo + DEFAULT_BLOCK_SIZE - 1);
        let sigma = sigma_block(lo, hi)?;
        let mut n = if lo <= first {
            first
        } else {
            lo + (first + k - lo % k) % k
        };
        while n <= hi {
            terms.push((Integer::from(sigma[(n - lo) as usize]), Integer::from(n)));
            n += k;
        }
        lo = hi + 1;
    }
    Ok(sum_fractions(&terms) * Rational::from((k, x)))
}
