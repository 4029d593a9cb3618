use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "sigma-bias",
    version,
    about = "Density bounds and sieves for sigma(mn) vs sigma(mn+1)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certified upper bound on the density of {n : σ(mn+1) ≥ σ(mn)}.
    Bound(BoundArgs),
    /// Compare σ(mn) with σ(mn+1) for n up to a limit.
    Sieve(SieveArgs),
    /// Print the enclosure of Λ_k(r).
    Lambda(LambdaArgs),
    /// Parse a report file, check it, and optionally recompute it.
    Check(CheckArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AccumulatorArg {
    Exact,
    Fixed,
    Auto,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// Structured report (TOML).
    Text,
    /// One CSV row per pair (bound) or per n (sieve).
    CsvDump,
}

/// Accepts `1000000`, `1_000_000` and `1e6`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    let s = s.replace('_', "");
    if let Some((mant, exp)) = s.split_once(['e', 'E']) {
        let mant: u64 = mant.parse().map_err(|_| format!("bad mantissa in {s:?}"))?;
        let exp: u32 = exp.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
        10u64
            .checked_pow(exp)
            .and_then(|p| p.checked_mul(mant))
            .ok_or_else(|| format!("{s} does not fit in 64 bits"))
    } else {
        s.parse()
            .map_err(|_| format!("{s:?} is not a non-negative integer"))
    }
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long, default_value = "30", value_parser = parse_count)]
    pub modulus: u64,
    #[arg(long, default_value = "157", value_parser = parse_count)]
    pub smooth_y: u64,
    /// Upper limit z on ab (inclusive).
    #[arg(long, default_value = "1e9", value_parser = parse_count)]
    pub cap: u64,
    /// Exponent r of σ₋₁^r in the mean-value bound.
    #[arg(long, default_value_t = 1)]
    pub exponent: u32,
    /// Terms of the ζ(2) partial sum used for the enclosure.
    #[arg(long, default_value = "1e5", value_parser = parse_count)]
    pub zeta_terms: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, value_enum, default_value = "auto")]
    pub accumulator: AccumulatorArg,
    /// Checkpoint file; resumed when it exists and matches the run.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Directory for an automatically named checkpoint when --checkpoint is absent.
    #[arg(long, env = "SIGMA_BIAS_CHECKPOINT_DIR", hide_env_values = true)]
    pub checkpoint_dir: Option<PathBuf>,
    /// Stop after this many further b values; the checkpoint keeps the progress.
    #[arg(long)]
    pub halt_after: Option<usize>,
    /// Report destination (stdout when absent).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Also write the per-pair CSV to this path (cap ≤ 10^6).
    #[arg(long)]
    pub dump_pairs: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SieveArgs {
    #[arg(long, default_value = "30", value_parser = parse_count)]
    pub modulus: u64,
    /// Largest n compared.
    #[arg(long, default_value = "1e6", value_parser = parse_count)]
    pub limit: u64,
    /// Allow limits above 10^6.
    #[arg(long)]
    pub extended: bool,
    /// Report every n with 0 ≤ σ(mn+1) − σ(mn) < σ(mn)/(mn).
    #[arg(long)]
    pub gap_scan: bool,
    /// Longest gap list kept with --gap-scan.
    #[arg(long, default_value_t = 10_000)]
    pub gap_cap: usize,
    /// Integers per sieve block.
    #[arg(long, value_parser = parse_count)]
    pub block_size: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Rows kept for --format csv-dump.
    #[arg(long, default_value_t = 10_000)]
    pub row_cap: usize,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct LambdaArgs {
    #[arg(long, value_parser = parse_count)]
    pub k: u64,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    #[arg(long, default_value = "1e5", value_parser = parse_count)]
    pub zeta_terms: u64,
    /// Decimal digits printed for each endpoint.
    #[arg(long, default_value_t = 12)]
    pub digits: u32,
    /// Round the endpoints outward to multiples of 2^-bits (0 prints them unrounded).
    #[arg(long, default_value_t = 128)]
    pub bits: u32,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Report written by `bound` or `sieve`.
    pub report: PathBuf,
    /// Recompute from the embedded configuration and compare.
    #[arg(long)]
    pub rerun: bool,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}
