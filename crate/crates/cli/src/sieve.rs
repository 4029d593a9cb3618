use sigma_bias::sieve::{compare_progressions, SieveConfig, SieveReport, DEFAULT_BLOCK_SIZE};

use crate::args::{Format, SieveArgs};
use crate::output::{csv_bytes, emit};

/// Largest limit allowed without --extended.
pub const STANDARD_LIMIT: u64 = 1_000_000;

pub fn summary(r: &SieveReport) -> String {
    let first = |v: Option<u64>| v.map_or("none".to_string(), |n| n.to_string());
    format!(
        "m={} N={}: less={} equal={} greater={} (first: {}, {}, {}); gap cases {} ({:.1}s)",
        r.modulus,
        r.limit,
        r.less,
        r.equal,
        r.greater,
        first(r.first_less),
        first(r.first_equal),
        first(r.first_greater),
        r.gap_count,
        r.provenance.wall_time_secs,
    )
}

pub fn config_from(args: &SieveArgs) -> SieveConfig {
    SieveConfig {
        block_size: args.block_size.unwrap_or(DEFAULT_BLOCK_SIZE),
        workers: args.workers,
        gap_cap: if args.gap_scan { args.gap_cap } else { 0 },
        row_cap: if args.format == Format::CsvDump {
            args.row_cap
        } else {
            0
        },
    }
}

pub fn run(args: SieveArgs) -> anyhow::Result<()> {
    if args.limit == 0 {
        return Err(sigma_bias::Error::Config("--limit must be at least 1".into()).into());
    }
    if args.limit > STANDARD_LIMIT && !args.extended {
        return Err(sigma_bias::Error::Config(format!(
            "--limit above {STANDARD_LIMIT} needs --extended"
        ))
        .into());
    }
    let report = compare_progressions(args.modulus, args.limit, &config_from(&args))?;
    eprintln!("{}", summary(&report));
    if args.gap_scan {
        let tail = if report.gaps_complete() {
            ""
        } else {
            " (truncated)"
        };
        eprintln!("gaps{tail}: {:?}", report.gaps);
    }
    match args.format {
        Format::Text => emit(args.output.as_deref(), report.to_toml()?.as_bytes()),
        Format::CsvDump => {
            let bytes = csv_bytes(&["n", "sigma_mn", "sigma_mn1", "sign"], |w| {
                for row in &report.rows {
                    w.write_record([
                        row.n.to_string(),
                        row.sigma_mn.to_string(),
                        row.sigma_mn1.to_string(),
                        row.sign.symbol().to_string(),
                    ])?;
                }
                Ok(())
            })?;
            emit(args.output.as_deref(), &bytes)
        }
    }
}
