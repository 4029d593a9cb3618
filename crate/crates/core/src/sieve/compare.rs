use std::cmp::Ordering;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::block::{sigma_block_bounded, DEFAULT_BLOCK_SIZE, MAX_BLOCK_LEN, MAX_SIEVE_VALUE};
use crate::arith::factorize;
use crate::{Error, Result};

/// Sign of `σ(mn+1) − σ(mn)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    Less,
    Equal,
    Greater,
}

impl Comparison {
    pub fn of(sigma_mn: u64, sigma_mn1: u64) -> Self {
        match sigma_mn1.cmp(&sigma_mn) {
            Ordering::Less => Comparison::Less,
            Ordering::Equal => Comparison::Equal,
            Ordering::Greater => Comparison::Greater,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Less => "<",
            Comparison::Equal => "=",
            Comparison::Greater => ">",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SieveConfig {
    /// Integers sieved per block (not values of n).
    pub block_size: u64,
    /// Worker threads; 0 lets rayon decide.
    pub workers: usize,
    /// Longest gap list kept in the report.
    pub gap_cap: usize,
    /// Per-n rows kept for a CSV dump, taken from the start of the range.
    pub row_cap: usize,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            block_size: DEFAULT_BLOCK_SIZE,
            workers: 0,
            gap_cap: 1000,
            row_cap: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveRow {
    pub n: u64,
    pub sigma_mn: u64,
    pub sigma_mn1: u64,
    pub sign: Comparison,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SieveProvenance {
    pub version: String,
    pub workers: usize,
    pub block_size: u64,
    pub wall_time_secs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SieveReport {
    pub modulus: u64,
    pub limit: u64,
    pub less: u64,
    pub equal: u64,
    pub greater: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_less: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_equal: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_greater: Option<u64>,
    /// n with `σ₋₁(mn+1) ≥ σ₋₁(mn)`.
    pub c_count: u64,
    /// Members of C that fail `σ(mn+1) ≥ σ(mn)`; always 0.
    pub c_outside_b: u64,
    /// n with `0 ≤ σ(mn+1) − σ(mn) < σ(mn)/(mn)`.
    pub gap_count: u64,
    pub gap_cap: usize,
    pub gaps: Vec<u64>,
    #[serde(skip)]
    pub rows: Vec<SieveRow>,
    pub provenance: SieveProvenance,
}

impl SieveReport {
    pub fn counts(&self) -> (u64, u64, u64) {
        (self.less, self.equal, self.greater)
    }

    pub fn first(&self, c: Comparison) -> Option<u64> {
        match c {
            Comparison::Less => self.first_less,
            Comparison::Equal => self.first_equal,
            Comparison::Greater => self.first_greater,
        }
    }

    /// True when the gap list holds every gap case.
    pub fn gaps_complete(&self) -> bool {
        self.gap_count == self.gaps.len() as u64
    }

    /// Identical apart from provenance.
    pub fn result_eq(&self, other: &SieveReport) -> bool {
        let strip = |r: &SieveReport| {
            let mut r = r.clone();
            r.provenance = SieveProvenance {
                version: String::new(),
                workers: 0,
                block_size: 0,
                wall_time_secs: 0.0,
            };
            r
        };
        strip(self) == strip(other)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::ReportFormat(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<SieveReport> {
        let report: SieveReport =
            toml::from_str(text).map_err(|e| Error::ReportFormat(e.to_string()))?;
        if report.less + report.equal + report.greater != report.limit {
            return Err(Error::ReportFormat("counts do not sum to the limit".into()));
        }
        Ok(report)
    }
}

#[derive(Default)]
struct BlockStats {
    counts: [u64; 3],
    firsts: [Option<u64>; 3],
    c_count: u64,
    c_outside_b: u64,
    gap_count: u64,
    gaps: Vec<u64>,
    rows: Vec<SieveRow>,
}

fn is_gap(mn: u64, s0: u64, s1: u64) -> bool {
    s1 >= s0 && (mn as u128) * ((s1 - s0) as u128) < s0 as u128
}

fn in_c(mn: u64, s0: u64, s1: u64) -> bool {
    (s1 as u128) * (mn as u128) >= (s0 as u128) * (mn as u128 + 1)
}

fn validate(m: u64, limit: u64, config: &SieveConfig) -> Result<()> {
    if m < 2 {
        return Err(Error::Config(format!(
            "modulus must be at least 2, got {m}"
        )));
    }
    if limit == 0 {
        return Err(Error::Config("sieve limit must be at least 1".into()));
    }
    m.checked_mul(limit)
        .and_then(|v| v.checked_add(1))
        .filter(|&v| v <= MAX_SIEVE_VALUE)
        .ok_or_else(|| Error::Config(format!("{m}·{limit} + 1 exceeds {MAX_SIEVE_VALUE}")))?;
    let max_block = MAX_BLOCK_LEN - m - 1;
    if config.block_size == 0 || config.block_size > max_block {
        return Err(Error::Config(format!(
            "block size {} outside [1, {max_block}]",
            config.block_size
        )));
    }
    Ok(())
}

fn scan_block(m: u64, n_lo: u64, n_hi: u64, gap_cap: usize, row_cap: usize) -> Result<BlockStats> {
    let lo = m * n_lo;
    let sigma = sigma_block_bounded(lo, m * n_hi + 1, MAX_BLOCK_LEN)?;
    let mut st = BlockStats::default();
    for n in n_lo..=n_hi {
        let mn = m * n;
        let i = (mn - lo) as usize;
        let (s0, s1) = (sigma[i], sigma[i + 1]);
        let c = Comparison::of(s0, s1);
        st.counts[c as usize] += 1;
        st.firsts[c as usize].get_or_insert(n);
        if in_c(mn, s0, s1) {
            st.c_count += 1;
            if s1 < s0 {
                st.c_outside_b += 1;
            }
        }
        if is_gap(mn, s0, s1) {
            st.gap_count += 1;
            if st.gaps.len() < gap_cap {
                st.gaps.push(n);
            }
        }
        if n <= row_cap as u64 {
            st.rows.push(SieveRow {
                n,
                sigma_mn: s0,
                sigma_mn1: s1,
                sign: c,
            });
        }
    }
    Ok(st)
}

fn sigma_direct(n: u64) -> u64 {
    factorize(n).expect("n ≥ 1").sigma() as u64
}

/// Counts the sign of `σ(mn+1) − σ(mn)` for `1 ≤ n ≤ limit`.
pub fn compare_progressions(m: u64, limit: u64, config: &SieveConfig) -> Result<SieveReport> {
    validate(m, limit, config)?;
    let start = Instant::now();
    let span = (config.block_size / m).max(1);
    let blocks: Vec<(u64, u64)> = (0..limit.div_ceil(span))
        .map(|k| (k * span + 1, ((k + 1) * span).min(limit)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let workers = pool.current_num_threads();
    let per_block: Vec<BlockStats> = pool.install(|| {
        blocks
            .par_iter()
            .map(|&(lo, hi)| scan_block(m, lo, hi, config.gap_cap, config.row_cap))
            .collect::<Result<_>>()
    })?;

    let mut total = BlockStats::default();
    for st in per_block {
        for k in 0..3 {
            total.counts[k] += st.counts[k];
            total.firsts[k] = total.firsts[k].or(st.firsts[k]);
        }
        total.c_count += st.c_count;
        total.c_outside_b += st.c_outside_b;
        total.gap_count += st.gap_count;
        let room = config.gap_cap - total.gaps.len();
        total.gaps.extend(st.gaps.into_iter().take(room));
        total.rows.extend(st.rows);
    }

    for (k, c) in [Comparison::Less, Comparison::Equal, Comparison::Greater]
        .into_iter()
        .enumerate()
    {
        if let Some(n) = total.firsts[k] {
            assert!(n <= limit);
            let (s0, s1) = (sigma_direct(m * n), sigma_direct(m * n + 1));
            assert_eq!(
                Comparison::of(s0, s1),
                c,
                "first occurrence n = {n} failed re-check"
            );
        }
    }

    Ok(SieveReport {
        modulus: m,
        limit,
        less: total.counts[0],
        equal: total.counts[1],
        greater: total.counts[2],
        first_less: total.firsts[0],
        first_equal: total.firsts[1],
        first_greater: total.firsts[2],
        c_count: total.c_count,
        c_outside_b: total.c_outside_b,
        gap_count: total.gap_count,
        gap_cap: config.gap_cap,
        gaps: total.gaps,
        rows: total.rows,
        provenance: SieveProvenance {
            version: crate::VERSION.to_string(),
            workers,
            block_size: config.block_size,
            wall_time_secs: start.elapsed().as_secs_f64(),
        },
    })
}

/// Every `n ≤ limit` with `0 ≤ σ(mn+1) − σ(mn) < σ(mn)/(mn)`, ascending.
pub fn bc_gap_scan(m: u64, limit: u64) -> Result<Vec<u64>> {
    let config = SieveConfig {
        gap_cap: usize::MAX,
        ..SieveConfig::default()
    };
    Ok(compare_progressions(m, limit, &config)?.gaps)
}
