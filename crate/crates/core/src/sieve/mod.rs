//! Segmented σ sieves over the progressions `mn` and `mn + 1`.

mod block;
mod compare;
mod mean;

pub use block::{
    sigma_block, sigma_block_bounded, DEFAULT_BLOCK_SIZE, MAX_BLOCK_LEN, MAX_SIEVE_VALUE,
};
pub use compare::{
    bc_gap_scan, compare_progressions, Comparison, SieveConfig, SieveProvenance, SieveReport,
    SieveRow,
};
pub use mean::{lambda_empirical, sum_fractions};
