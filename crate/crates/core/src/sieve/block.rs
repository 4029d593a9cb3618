use crate::{Error, Result};

/// Default number of integers sieved per block.
pub const DEFAULT_BLOCK_SIZE: u64 = 1 << 22;

/// Memory guard: no block may hold more values than this.
pub const MAX_BLOCK_LEN: u64 = 1 << 26;

/// σ(n) < 64·n for every n below this bound, so `u64` cannot overflow.
pub const MAX_SIEVE_VALUE: u64 = 1_000_000_000_000_000;

/// σ(n) for every `n ∈ [lo, hi]`.
pub fn sigma_block(lo: u64, hi: u64) -> Result<Vec<u64>> {
    sigma_block_bounded(lo, hi, MAX_BLOCK_LEN)
}

/// As [`sigma_block`] with an explicit block-length limit.
///
/// Each divisor pair `(d, n/d)` with `d ≤ √n` is added once, so the cost is
/// `O(√hi + len · log √hi)` and no factorization is needed.
pub fn sigma_block_bounded(lo: u64, hi: u64, max_len: u64) -> Result<Vec<u64>> {
    if lo == 0 || lo > hi {
        return Err(Error::Precondition(format!(
            "sieve block [{lo}, {hi}] is empty or starts at 0"
        )));
    }
    if hi > MAX_SIEVE_VALUE {
        return Err(Error::Config(format!(
            "sieve value {hi} exceeds {MAX_SIEVE_VALUE}"
        )));
    }
    let len = hi - lo + 1;
    if len > max_len {
        return Err(Error::BlockTooLarge {
            lo,
            hi,
            max: max_len,
        });
    }
    let mut sigma = vec![0u64; len as usize];
    let root = hi.isqrt();
    for d in 1..=root {
        let q_start = lo.div_ceil(d).max(d);
        let q_end = hi / d;
        if q_start > q_end {
            continue;
        }
        let mut idx = (d * q_start - lo) as usize;
        for q in q_start..=q_end {
            sigma[idx] += if q == d { d } else { d + q };
            idx += d as usize;
        }
    }
    Ok(sigma)
}
