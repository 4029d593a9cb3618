//! Enumeration of y-smooth numbers and of the admissible pairs `(a, b)`.

mod checkpoint;
mod numbers;
mod pairs;

pub use checkpoint::{CheckpointWriter, EnumCheckpoint, Fingerprint, PartialAggregate};
pub(crate) use numbers::walk_smooth;
pub use numbers::{count_smooth, smooth_numbers, SmoothNumbers};
pub use pairs::{pair_stream, validate_pair_config, PairConfig, PairStream, SmoothPair};
