use serde::{Deserialize, Serialize};

use super::BoundConfig;
use crate::arith::{decimal_ceil, format_fraction, parse_fraction, BigRational, Enclosure};
use crate::{Error, Result};

/// Run metadata that does not affect the certified result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    pub workers: usize,
    pub wall_time_secs: f64,
    pub resumed_b_values: u64,
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    pub config: BoundConfig,
    pub pairs: u64,
    pub valid_pairs: u64,
    /// The Λ_P(r) enclosure actually used; savings use its upper end.
    pub lambda: Enclosure,
    pub total_saving: BigRational,
    /// `1 − total_saving`, exactly.
    pub upper_bound: BigRational,
    /// `upper_bound` rounded up to 7 decimals.
    pub display: String,
    pub provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct ResultSection {
    pairs: u64,
    valid_pairs: u64,
    lambda_lo: String,
    lambda_hi: String,
    total_saving: String,
    upper_bound: String,
    upper_bound_display: String,
}

#[derive(Serialize, Deserialize)]
struct ReportDoc {
    config: BoundConfig,
    result: ResultSection,
    provenance: Provenance,
}

impl BoundReport {
    /// Equality of everything except provenance.
    pub fn certificate_eq(&self, other: &BoundReport) -> bool {
        self.config == other.config
            && self.pairs == other.pairs
            && self.valid_pairs == other.valid_pairs
            && self.lambda == other.lambda
            && self.total_saving == other.total_saving
            && self.upper_bound == other.upper_bound
            && self.display == other.display
    }

    pub fn to_toml(&self) -> String {
        let doc = ReportDoc {
            config: self.config.clone(),
            result: ResultSection {
                pairs: self.pairs,
                valid_pairs: self.valid_pairs,
                lambda_lo: format_fraction(self.lambda.lo()),
                lambda_hi: format_fraction(self.lambda.hi()),
                total_saving: format_fraction(&self.total_saving),
                upper_bound: format_fraction(&self.upper_bound),
                upper_bound_display: self.display.clone(),
            },
            provenance: self.provenance.clone(),
        };
        let body = toml::to_string(&doc).expect("report serializes");
        format!(
            "# certified upper bound on the density of {{n : sigma(mn+1) >= sigma(mn)}}\n{body}"
        )
    }

    /// Parses a report, re-checking its internal consistency.
    pub fn from_toml(text: &str) -> Result<Self> {
        let doc: ReportDoc =
            toml::from_str(text).map_err(|e| Error::ReportFormat(e.to_string()))?;
        let frac = |name: &str, s: &str| {
            parse_fraction(s)
                .ok_or_else(|| Error::ReportFormat(format!("{name} is not a fraction")))
        };
        let r = doc.result;
        let lambda = Enclosure::new(
            frac("lambda_lo", &r.lambda_lo)?,
            frac("lambda_hi", &r.lambda_hi)?,
        )?;
        let total_saving = frac("total_saving", &r.total_saving)?;
        let upper_bound = frac("upper_bound", &r.upper_bound)?;
        if BigRational::from(1) - &total_saving != upper_bound {
            return Err(Error::ReportFormat(
                "upper_bound is not 1 - total_saving".into(),
            ));
        }
        if decimal_ceil(&upper_bound, 7) != r.upper_bound_display {
            return Err(Error::ReportFormat(
                "display value does not match upper_bound".into(),
            ));
        }
        Ok(Self {
            config: doc.config,
            pairs: r.pairs,
            valid_pairs: r.valid_pairs,
            lambda,
            total_saving,
            upper_bound,
            display: r.upper_bound_display,
            provenance: doc.provenance,
        })
    }
}
