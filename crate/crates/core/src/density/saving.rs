use rug::ops::Pow;

use super::DensityContext;
use crate::arith::{BigRational, Enclosure, Factored};
use crate::Result;

/// Result for one smooth pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairOutcome {
    pub a: u64,
    pub b: u64,
    /// `dS(a, b)`
    pub ds: BigRational,
    /// Whether `g(b) > Λ_hi · g(a)` holds.
    pub valid: bool,
    /// Certified lower bound on `dS(a, b) − dC(a, b)`.
    pub saving: BigRational,
}

/// `g(n) = σ₋₁(n)^r`.
pub fn g_value(n: &Factored, r: u32) -> BigRational {
    let s = n.sigma_minus_one();
    if r == 1 {
        s
    } else {
        BigRational::from((&s).pow(r))
    }
}

impl DensityContext {
    /// Saving for `(a, b)` using the upper end of the Λ enclosure.
    ///
    /// The class bound `dC ≤ (Λ − 1)·g(a)·dS / (g(b) − g(a))` applies when
    /// `g(b) > Λ·g(a)`; the saving `dS − bound = dS·(g(b) − Λ·g(a))/(g(b) − g(a))`
    /// decreases in Λ, so evaluating at `Λ_hi` is valid for the whole
    /// enclosure. Ties count as invalid.
    pub fn saving(&self, a: &Factored, b: &Factored, lambda: &Enclosure, r: u32) -> PairOutcome {
        let ds = self.density(a, b);
        let ga = g_value(a, r);
        let gb = g_value(b, r);
        let lam_ga = BigRational::from(lambda.hi() * &ga);
        let valid = gb > lam_ga;
        let saving = if valid && ds != 0 {
            let num = BigRational::from(&gb - &lam_ga);
            let den = BigRational::from(&gb - &ga);
            BigRational::from(&ds * &num) / den
        } else {
            BigRational::new()
        };
        PairOutcome {
            a: a.value(),
            b: b.value(),
            ds,
            valid,
            saving,
        }
    }
}

pub fn pair_saving(
    m: u64,
    y: u64,
    a: &Factored,
    b: &Factored,
    lambda: &Enclosure,
    r: u32,
) -> Result<PairOutcome> {
    Ok(DensityContext::new(m, y)?.saving(a, b, lambda, r))
}
