//! Densities of the pair classes `S(a, b)` and the certified upper bound.
//!
//! For a modulus `m` and smoothness bound `y`, every `n ≥ 1` falls into
//! exactly one class `S(a, b) = {n : Y(mn+1) = a, Y(mn) = b}` where `Y` is
//! the y-smooth part. Inside a class, the mean of `g = σ₋₁^r` over `mn + 1`
//! is governed by the Euler product `Λ_P(r)`, which caps how much of the
//! class can satisfy `σ₋₁(mn+1) ≥ σ₋₁(mn)`. Summing the certified savings
//! over all pairs with `ab ≤ z` and subtracting from one bounds the density
//! of that set from above.

mod bound;
mod lambda;
mod pair;
mod report;
mod saving;

pub use bound::{
    bound, density_upper_bound, pair_outcomes, Accumulator, BoundConfig, RunOptions, RunOutcome,
    FIXED_FRACTION_BITS, LAMBDA_BITS, MAX_CAP, MAX_DUMP_CAP,
};
pub use lambda::{lambda_coprime_to, lambda_euler_product, lambda_k, DEFAULT_EXPONENT_CUTOFF};
pub use pair::{class_progression, pair_density, primorial, ClassProgression, DensityContext};
pub use report::{BoundReport, Provenance};
pub use saving::{g_value, pair_saving, PairOutcome};
