use anyhow::{bail, Context};
use sigma_bias::density::{bound, BoundReport};
use sigma_bias::sieve::{compare_progressions, SieveConfig, SieveReport};

use crate::args::CheckArgs;

pub fn run(args: CheckArgs) -> anyhow::Result<()> {
    let text = std::fs::read_to_string(&args.report)
        .with_context(|| format!("reading {}", args.report.display()))?;
    if text.contains("[config]") {
        let report = BoundReport::from_toml(&text)?;
        println!("bound report ok: {}", crate::bound::summary(&report));
        if args.rerun {
            let fresh = bound(&report.config, args.workers)?;
            if !fresh.certificate_eq(&report) {
                bail!("recomputed bound differs: {}", fresh.display);
            }
            println!("recomputed: identical");
        }
    } else {
        let report = SieveReport::from_toml(&text)?;
        println!("sieve report ok: {}", crate::sieve::summary(&report));
        if args.rerun {
            let config = SieveConfig {
                block_size: report.provenance.block_size,
                workers: args.workers,
                gap_cap: report.gap_cap,
                row_cap: 0,
            };
            let fresh = compare_progressions(report.modulus, report.limit, &config)?;
            if !fresh.result_eq(&report) {
                bail!(
                    "recomputed sieve differs: {}",
                    crate::sieve::summary(&fresh)
                );
            }
            println!("recomputed: identical");
        }
    }
    Ok(())
}
