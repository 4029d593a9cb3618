//! Resumable progress for the pair enumeration.
//!
//! Text format, one record per line:
//!
//! ```text
//! sigma-bias-checkpoint version=0.1.0 modulus=30 smooth_y=5 cap=120 exponent=1 zeta_terms=100000 accumulator=exact
//! b=30 pairs=3 valid=3 saving=1234/5678
//! b=60 pairs=2 valid=2 saving=91/1011
//! ```
//!
//! Each `b=` line holds the contribution of that single `b`. Lines may
//! appear in any order; a trailing line without a newline is an interrupted
//! write and is ignored.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::arith::{format_fraction, parse_fraction, BigRational};
use crate::{Error, Result, VERSION};

const MAGIC: &str = "sigma-bias-checkpoint";

/// Everything a per-`b` contribution depends on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub version: String,
    pub modulus: u64,
    pub smooth_y: u64,
    pub cap: u64,
    pub exponent: u32,
    pub zeta_terms: u64,
    pub accumulator: String,
}

impl Fingerprint {
    pub fn new(
        modulus: u64,
        smooth_y: u64,
        cap: u64,
        exponent: u32,
        zeta_terms: u64,
        accumulator: &str,
    ) -> Self {
        Self {
            version: VERSION.to_string(),
            modulus,
            smooth_y,
            cap,
            exponent,
            zeta_terms,
            accumulator: accumulator.to_string(),
        }
    }

    fn header(&self) -> String {
        format!(
            "{MAGIC} version={} modulus={} smooth_y={} cap={} exponent={} zeta_terms={} accumulator={}",
            self.version,
            self.modulus,
            self.smooth_y,
            self.cap,
            self.exponent,
            self.zeta_terms,
            self.accumulator
        )
    }

    fn parse_header(line: &str) -> Result<Self> {
        let bad = |msg: &str| Error::CheckpointFormat {
            line: 1,
            msg: msg.to_string(),
        };
        let mut words = line.split_whitespace();
        if words.next() != Some(MAGIC) {
            return Err(bad("missing checkpoint header"));
        }
        let fields = key_values(words, 1)?;
        let get = |k: &str| {
            fields
                .get(k)
                .ok_or_else(|| bad(&format!("missing field {k}")))
        };
        let num = |k: &str| -> Result<u64> {
            get(k)?
                .parse()
                .map_err(|_| bad(&format!("field {k} is not an integer")))
        };
        Ok(Self {
            version: get("version")?.to_string(),
            modulus: num("modulus")?,
            smooth_y: num("smooth_y")?,
            cap: num("cap")?,
            exponent: num("exponent")? as u32,
            zeta_terms: num("zeta_terms")?,
            accumulator: get("accumulator")?.to_string(),
        })
    }

    /// Describes the first differing field, if any.
    pub fn mismatch(&self, other: &Fingerprint) -> Option<String> {
        let pairs = [
            ("version", self.version.clone(), other.version.clone()),
            (
                "modulus",
                self.modulus.to_string(),
                other.modulus.to_string(),
            ),
            (
                "smooth_y",
                self.smooth_y.to_string(),
                other.smooth_y.to_string(),
            ),
            ("cap", self.cap.to_string(), other.cap.to_string()),
            (
                "exponent",
                self.exponent.to_string(),
                other.exponent.to_string(),
            ),
            (
                "zeta_terms",
                self.zeta_terms.to_string(),
                other.zeta_terms.to_string(),
            ),
            (
                "accumulator",
                self.accumulator.clone(),
                other.accumulator.clone(),
            ),
        ];
        pairs
            .into_iter()
            .find(|(_, a, b)| a != b)
            .map(|(k, a, b)| format!("{k}: checkpoint has {a}, run has {b}"))
    }
}

fn key_values<'a>(
    words: impl Iterator<Item = &'a str>,
    line: usize,
) -> Result<BTreeMap<&'a str, &'a str>> {
    words
        .map(|w| {
            w.split_once('=').ok_or_else(|| Error::CheckpointFormat {
                line,
                msg: format!("expected key=value, found {w:?}"),
            })
        })
        .collect()
}

/// Contribution of one `b` to the aggregate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAggregate {
    pub pairs: u64,
    pub valid_pairs: u64,
    pub saving: BigRational,
}

impl PartialAggregate {
    pub fn zero() -> Self {
        Self {
            pairs: 0,
            valid_pairs: 0,
            saving: BigRational::new(),
        }
    }

    pub fn absorb(&mut self, other: &PartialAggregate) {
        self.pairs += other.pairs;
        self.valid_pairs += other.valid_pairs;
        self.saving += &other.saving;
    }

    fn line(&self, b: u64) -> String {
        format!(
            "b={b} pairs={} valid={} saving={}",
            self.pairs,
            self.valid_pairs,
            format_fraction(&self.saving)
        )
    }
}

/// Completed `b` values with their contributions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumCheckpoint {
    pub fingerprint: Fingerprint,
    pub completed: BTreeMap<u64, PartialAggregate>,
}

impl EnumCheckpoint {
    pub fn new(fingerprint: Fingerprint) -> Self {
        Self {
            fingerprint,
            completed: BTreeMap::new(),
        }
    }

    /// Largest completed `b`.
    pub fn position(&self) -> Option<u64> {
        self.completed.keys().next_back().copied()
    }

    pub fn to_text(&self) -> String {
        let mut out = self.fingerprint.header();
        out.push('\n');
        for (&b, agg) in &self.completed {
            out.push_str(&agg.line(b));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines: Vec<&str> = text.split('\n').collect();
        // the piece after the last newline is either empty or a torn write
        lines.pop();
        let Some((header, body)) = lines.split_first() else {
            return Err(Error::CheckpointFormat {
                line: 1,
                msg: "empty checkpoint".into(),
            });
        };
        let mut checkpoint = Self::new(Fingerprint::parse_header(header)?);
        for (i, line) in body.iter().enumerate() {
            let line_no = i + 2;
            if line.trim().is_empty() {
                continue;
            }
            let bad = |msg: String| Error::CheckpointFormat { line: line_no, msg };
            let fields = key_values(line.split_whitespace(), line_no)?;
            let get = |k: &str| {
                fields
                    .get(k)
                    .ok_or_else(|| bad(format!("missing field {k}")))
            };
            let int = |k: &str| -> Result<u64> {
                get(k)?
                    .parse()
                    .map_err(|_| bad(format!("field {k} is not an integer")))
            };
            let b = int("b")?;
            let agg = PartialAggregate {
                pairs: int("pairs")?,
                valid_pairs: int("valid")?,
                saving: parse_fraction(get("saving")?)
                    .ok_or_else(|| bad("saving is not a fraction".into()))?,
            };
            if checkpoint.completed.insert(b, agg).is_some() {
                return Err(bad(format!("duplicate entry for b={b}")));
            }
        }
        Ok(checkpoint)
    }

    /// Loads `path` if it exists, refusing a checkpoint written for a
    /// different run; returns an empty checkpoint otherwise.
    pub fn resume(path: &Path, expected: &Fingerprint) -> Result<Self> {
        if !path.exists() {
            return Ok(Self::new(expected.clone()));
        }
        let checkpoint = Self::parse(&std::fs::read_to_string(path)?)?;
        if let Some(diff) = checkpoint.fingerprint.mismatch(expected) {
            return Err(Error::CheckpointMismatch(diff));
        }
        Ok(checkpoint)
    }
}

/// Append-only writer for checkpoint files.
pub struct CheckpointWriter {
    out: BufWriter<File>,
}

impl CheckpointWriter {
    /// Opens `path` for appending, rewriting it from `state` first so that
    /// any torn trailing line is dropped.
    pub fn open(path: &Path, state: &EnumCheckpoint) -> Result<Self> {
        let tmp = path.with_extension("ckpt-tmp");
        std::fs::write(&tmp, state.to_text())?;
        std::fs::rename(&tmp, path)?;
        let file = OpenOptions::new().append(true).open(path)?;
        Ok(Self {
            out: BufWriter::new(file),
        })
    }

    pub fn record(&mut self, b: u64, agg: &PartialAggregate) -> Result<()> {
        writeln!(self.out, "{}", agg.line(b))?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}
