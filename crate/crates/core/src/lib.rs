//! Certified density bounds for the comparison of σ(mn+1) with σ(mn), and
//! sieve-based checks of the same comparison over finite ranges.
//!
//! The crate is split into four layers:
//!
//! * [`arith`]: exact multiplicative arithmetic (factorization, σ, σ₋₁,
//!   smooth parts) and rational enclosures of irrational constants.
//! * [`smooth`]: enumeration of y-smooth numbers and of the admissible
//!   smooth pairs `(a, b)`, with resumable checkpoints.
//! * [`density`]: densities of the pair classes `S(a, b)`, the Euler
//!   product constant `Λ_k(r)`, per-pair savings and the aggregated upper
//!   bound.
//! * [`sieve`]: segmented σ sieves over `mn` and `mn + 1`.

pub mod arith;
pub mod density;
mod error;
pub mod sieve;
pub mod smooth;

pub use error::{Error, Result};

/// Version string embedded in reports and checkpoint headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
