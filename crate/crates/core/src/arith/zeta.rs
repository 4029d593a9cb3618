use rug::Integer;

use super::{BigRational, Enclosure};
use crate::{Error, Result};

/// Default number of partial-sum terms for the ζ(2) bracket (width < 1e-10).
pub const DEFAULT_ZETA_TERMS: u64 = 100_000;

/// Σ_{lo ≤ n < hi} 1/n² as an unreduced fraction.
fn inverse_square_sum(lo: u64, hi: u64) -> (Integer, Integer) {
    if hi - lo == 1 {
        return (Integer::from(1), Integer::from(lo) * lo);
    }
    let mid = lo + (hi - lo) / 2;
    let (p1, q1) = inverse_square_sum(lo, mid);
    let (p2, q2) = inverse_square_sum(mid, hi);
    (p1 * &q2 + p2 * &q1, q1 * q2)
}

/// `[S_N + 1/(N+1), S_N + 1/N]` with `S_N = Σ_{n ≤ N} 1/n²`.
///
/// The integral test brackets the tail Σ_{n > N} 1/n² between `1/(N+1)` and
/// `1/N`, so the result contains ζ(2) = π²/6.
pub fn zeta2_enclosure(terms: u64) -> Result<Enclosure> {
    if terms == 0 {
        return Err(Error::Precondition(
            "zeta(2) enclosure needs at least one term".into(),
        ));
    }
    let (p, q) = inverse_square_sum(1, terms + 1);
    let partial = BigRational::from((p, q));
    let lo = BigRational::from(&partial + BigRational::from((1, terms + 1)));
    let hi = partial + BigRational::from((1, terms));
    Enclosure::new(lo, hi)
}
