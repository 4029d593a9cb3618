use std::path::PathBuf;
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{lambda_coprime_to, BoundReport, DensityContext, PairOutcome, Provenance};
use crate::arith::directed::{
    div_down, fixed_floor, mul_down, sub_down, sub_up, to_f64_down, to_f64_up, u128_to_f64_down,
    u128_to_f64_up,
};
use crate::arith::{decimal_ceil, dyadic_ceil, BigRational, Enclosure, Factored};
use crate::smooth::{
    validate_pair_config, walk_smooth, CheckpointWriter, EnumCheckpoint, Fingerprint, PairConfig,
    PartialAggregate,
};
use crate::{Error, Result, VERSION};

/// Λ is widened outward to a multiple of `2^-LAMBDA_BITS` before use.
pub const LAMBDA_BITS: u32 = 128;

/// The fixed accumulator counts in units of `2^-FIXED_FRACTION_BITS`.
pub const FIXED_FRACTION_BITS: u32 = 120;

/// Largest supported cap `z`; keeps the fixed-path integer products in `u128`.
pub const MAX_CAP: u64 = 1_000_000_000_000_000;

/// Largest cap for which per-pair outcomes may be materialized.
pub const MAX_DUMP_CAP: u64 = 1_000_000;

/// Scale of the dyadic Λ used in the fixed-path validity test.
const LAMBDA_FIXED_SHIFT: u32 = 64;

/// How per-pair savings are accumulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Accumulator {
    /// Exact rationals throughout.
    Exact,
    /// Each saving rounded down to a multiple of `2^-120` and summed in `u128`.
    Fixed,
}

impl Accumulator {
    pub fn label(self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::Fixed => "fixed",
        }
    }

    /// Exact for small caps, where the rational denominators stay manageable.
    pub fn auto_for(cap: u64) -> Self {
        if cap <= 100_000 {
            Self::Exact
        } else {
            Self::Fixed
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundConfig {
    pub modulus: u64,
    pub smooth_y: u64,
    pub cap: u64,
    pub exponent: u32,
    pub zeta_terms: u64,
    pub accumulator: Accumulator,
}

impl Default for BoundConfig {
    fn default() -> Self {
        Self {
            modulus: 30,
            smooth_y: 157,
            cap: 1_000_000_000,
            exponent: 1,
            zeta_terms: crate::arith::DEFAULT_ZETA_TERMS,
            accumulator: Accumulator::Fixed,
        }
    }
}

impl BoundConfig {
    pub fn new(modulus: u64, smooth_y: u64, cap: u64) -> Self {
        Self {
            modulus,
            smooth_y,
            cap,
            accumulator: Accumulator::auto_for(cap),
            ..Self::default()
        }
    }

    pub fn with_accumulator(mut self, accumulator: Accumulator) -> Self {
        self.accumulator = accumulator;
        self
    }

    pub fn validate(&self) -> Result<PairConfig> {
        if self.exponent == 0 || self.exponent > 32 {
            return Err(Error::Config(format!(
                "exponent r = {} must be in [1, 32]",
                self.exponent
            )));
        }
        if self.zeta_terms == 0 {
            return Err(Error::Config("zeta terms must be positive".into()));
        }
        if self.cap > MAX_CAP {
            return Err(Error::Config(format!(
                "cap {} exceeds the supported {MAX_CAP}",
                self.cap
            )));
        }
        validate_pair_config(self.modulus, self.smooth_y, self.cap)
    }

    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint::new(
            self.modulus,
            self.smooth_y,
            self.cap,
            self.exponent,
            self.zeta_terms,
            self.accumulator.label(),
        )
    }

    /// The Λ_P(r) enclosure used by the run, already widened to `LAMBDA_BITS`.
    pub fn lambda(&self, pairs: &PairConfig) -> Result<Enclosure> {
        let lambda = lambda_coprime_to(&pairs.primes, self.exponent, self.zeta_terms)?
            .outward_dyadic(LAMBDA_BITS);
        if *lambda.lo() <= 1 {
            return Err(Error::Config(format!(
                "Λ enclosure {lambda} does not exceed 1; raise the zeta terms"
            )));
        }
        Ok(lambda)
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Worker threads; 0 uses rayon's default.
    pub workers: usize,
    /// Checkpoint file, resumed if present.
    pub checkpoint: Option<PathBuf>,
    /// Stop after this many additional `b` values (for staged runs).
    pub halt_after: Option<usize>,
}

#[derive(Debug, Clone)]
pub enum RunOutcome {
    Complete(Box<BoundReport>),
    Halted { completed: usize, remaining: usize },
}

/// Per-run tables for the fixed-point path.
struct FixedKernel<'a> {
    ctx: &'a DensityContext,
    exponent: u32,
    /// `ceil(Λ_hi · 2^64)`
    lambda_scaled: u128,
    lambda_up: f64,
    primes: Vec<PrimeTable>,
}

/// Lower bounds of the `a`-weight `c_p / p^e` and exact `σ(p^e)` by exponent.
struct PrimeTable {
    p: u64,
    weight_lo: Vec<f64>,
    sigma: Vec<u128>,
}

#[derive(Clone, Copy)]
struct ANode {
    sigma: u128,
    weight_lo: f64,
}

impl<'a> FixedKernel<'a> {
    fn new(ctx: &'a DensityContext, lambda: &Enclosure, exponent: u32, cap: u64) -> Self {
        let scaled = dyadic_ceil(lambda.hi(), LAMBDA_FIXED_SHIFT) << LAMBDA_FIXED_SHIFT;
        let lambda_scaled = scaled
            .numer()
            .to_u128()
            .expect("Λ fits in 64.64 fixed point");
        let primes = ctx
            .primes()
            .iter()
            .map(|&p| {
                let c = if p == 2 {
                    BigRational::from((1, 2))
                } else {
                    BigRational::from((p - 1, p - 2))
                };
                let mut weight_lo = vec![f64::NAN];
                let mut sigma = vec![1u128];
                let (mut pe, mut inv) = (1u64, c);
                while let Some(next) = pe.checked_mul(p).filter(|&v| v <= cap) {
                    pe = next;
                    inv /= p;
                    weight_lo.push(to_f64_down(&inv));
                    sigma.push(sigma.last().unwrap() + pe as u128);
                }
                PrimeTable {
                    p,
                    weight_lo,
                    sigma,
                }
            })
            .collect();
        Self {
            ctx,
            exponent,
            lambda_scaled,
            lambda_up: to_f64_up(lambda.hi()),
            primes,
        }
    }

    fn run_b(&self, b: &Factored, cap: u64) -> PartialAggregate {
        let b_part_lo = to_f64_down(&self.ctx.b_part(b));
        let b_even = b.divides_prime(2);
        let sigma_b = b.sigma();
        let bv = b.value() as u128;
        let coprime: Vec<&PrimeTable> = self
            .primes
            .iter()
            .filter(|t| !b.divides_prime(t.p))
            .collect();

        let (mut pairs, mut valid, mut total) = (0u64, 0u64, 0u128);
        walk_smooth(
            &coprime,
            &|t| t.p,
            cap / b.value(),
            ANode {
                sigma: 1,
                weight_lo: 1.0,
            },
            &|node: &ANode, t: &&PrimeTable, e, _| ANode {
                sigma: node.sigma * t.sigma[e as usize],
                weight_lo: mul_down(node.weight_lo, t.weight_lo[e as usize]),
            },
            &mut |a, node| {
                pairs += 1;
                // g(b)/g(a) = σ(b)·a / (σ(a)·b)
                let ga_side = node.sigma * bv;
                let gb_side = sigma_b * a as u128;
                let factor = match self.exponent {
                    1 => {
                        let lhs = gb_side << LAMBDA_FIXED_SHIFT;
                        let rhs = self.lambda_scaled * ga_side;
                        if lhs <= rhs {
                            return;
                        }
                        let num = u128_to_f64_down(lhs - rhs);
                        let den = u128_to_f64_up((gb_side - ga_side) << LAMBDA_FIXED_SHIFT);
                        div_down(num, den)
                    }
                    r => {
                        let ratio = div_down(u128_to_f64_down(gb_side), u128_to_f64_up(ga_side));
                        let q = (1..r).fold(ratio, |acc, _| mul_down(acc, ratio));
                        let num = sub_down(q, self.lambda_up);
                        if num <= 0.0 {
                            return;
                        }
                        // (q − Λ)/(q − 1) increases with q, so q_lo is safe on both sides
                        div_down(num, sub_up(q, 1.0))
                    }
                };
                valid += 1;
                if !(b_even || a % 2 == 0) {
                    return;
                }
                let ds = mul_down(b_part_lo, node.weight_lo);
                total += fixed_floor(mul_down(ds, factor), FIXED_FRACTION_BITS);
            },
        );
        PartialAggregate {
            pairs,
            valid_pairs: valid,
            saving: BigRational::from(total) >> FIXED_FRACTION_BITS,
        }
    }
}

fn run_b_exact(
    ctx: &DensityContext,
    pairs: &PairConfig,
    lambda: &Enclosure,
    exponent: u32,
    b: &Factored,
) -> PartialAggregate {
    let mut agg = PartialAggregate::zero();
    for a in pairs.a_values(b) {
        let outcome = ctx.saving(&a, b, lambda, exponent);
        agg.pairs += 1;
        agg.valid_pairs += outcome.valid as u64;
        agg.saving += outcome.saving;
    }
    agg
}

/// Certified upper bound `1 − Σ saving(a, b)` over all admissible pairs.
///
/// The result is independent of the worker count and of how the run was
/// split across checkpointed sessions.
pub fn density_upper_bound(config: &BoundConfig, options: &RunOptions) -> Result<RunOutcome> {
    let started = Instant::now();
    let pairs = config.validate()?;
    let fingerprint = config.fingerprint();
    let mut state = match &options.checkpoint {
        Some(path) => EnumCheckpoint::resume(path, &fingerprint)?,
        None => EnumCheckpoint::new(fingerprint),
    };
    let b_values = pairs.b_values();
    if let Some(&stray) = state
        .completed
        .keys()
        .find(|b| b_values.binary_search_by_key(*b, Factored::value).is_err())
    {
        return Err(Error::CheckpointMismatch(format!(
            "b = {stray} is not admissible"
        )));
    }
    let resumed = state.completed.len();

    let ctx = DensityContext::new(config.modulus, config.smooth_y)?;
    let lambda = config.lambda(&pairs)?;
    let kernel = match config.accumulator {
        Accumulator::Fixed => Some(FixedKernel::new(&ctx, &lambda, config.exponent, config.cap)),
        Accumulator::Exact => None,
    };

    let todo: Vec<&Factored> = b_values
        .iter()
        .filter(|b| !state.completed.contains_key(&b.value()))
        .collect();
    let batch = match options.halt_after {
        Some(k) if k < todo.len() => &todo[..k],
        _ => &todo[..],
    };

    let writer = match &options.checkpoint {
        Some(path) => Some(Mutex::new((CheckpointWriter::open(path, &state)?, 0usize))),
        None => None,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let results: Vec<(u64, PartialAggregate)> = pool.install(|| {
        batch
            .par_iter()
            .with_max_len(1)
            .map(|b| {
                let agg = match &kernel {
                    Some(k) => k.run_b(b, config.cap),
                    None => run_b_exact(&ctx, &pairs, &lambda, config.exponent, b),
                };
                if let Some(w) = &writer {
                    let mut guard = w.lock().expect("checkpoint writer poisoned");
                    let (writer, count) = &mut *guard;
                    writer.record(b.value(), &agg)?;
                    *count += 1;
                    if *count % 256 == 0 {
                        writer.flush()?;
                    }
                }
                Ok((b.value(), agg))
            })
            .collect::<Result<_>>()
    })?;
    if let Some(w) = writer {
        w.into_inner()
            .expect("checkpoint writer poisoned")
            .0
            .flush()?;
    }
    state.completed.extend(results);

    if batch.len() < todo.len() {
        return Ok(RunOutcome::Halted {
            completed: state.completed.len(),
            remaining: todo.len() - batch.len(),
        });
    }

    let mut total = PartialAggregate::zero();
    for agg in state.completed.values() {
        total.absorb(agg);
    }
    let upper_bound = BigRational::from(1) - &total.saving;
    let report = BoundReport {
        config: config.clone(),
        pairs: total.pairs,
        valid_pairs: total.valid_pairs,
        display: decimal_ceil(&upper_bound, 7),
        lambda,
        total_saving: total.saving,
        upper_bound,
        provenance: Provenance {
            version: VERSION.to_string(),
            workers: pool.current_num_threads(),
            wall_time_secs: started.elapsed().as_secs_f64(),
            resumed_b_values: resumed as u64,
        },
    };
    Ok(RunOutcome::Complete(Box::new(report)))
}

/// Runs to completion without a checkpoint.
pub fn bound(config: &BoundConfig, workers: usize) -> Result<BoundReport> {
    match density_upper_bound(
        config,
        &RunOptions {
            workers,
            ..RunOptions::default()
        },
    )? {
        RunOutcome::Complete(report) => Ok(*report),
        RunOutcome::Halted { .. } => unreachable!("no halt requested"),
    }
}

/// Exact outcome for every pair, ordered by `b` then `a`.
pub fn pair_outcomes(config: &BoundConfig) -> Result<Vec<PairOutcome>> {
    if config.cap > MAX_DUMP_CAP {
        return Err(Error::Config(format!(
            "per-pair output is limited to caps up to {MAX_DUMP_CAP}"
        )));
    }
    let pairs = config.validate()?;
    let ctx = DensityContext::new(config.modulus, config.smooth_y)?;
    let lambda = config.lambda(&pairs)?;
    let mut out = Vec::new();
    for b in pairs.b_values() {
        for a in pairs.a_values(&b) {
            out.push(ctx.saving(&a, &b, &lambda, config.exponent));
        }
    }
    Ok(out)
}
