use std::path::PathBuf;

use sigma_bias::arith::format_fraction;
use sigma_bias::density::{
    density_upper_bound, pair_outcomes, Accumulator, BoundConfig, BoundReport, RunOptions,
    RunOutcome, MAX_DUMP_CAP,
};

use crate::args::{AccumulatorArg, BoundArgs, Format};
use crate::output::{csv_bytes, emit, write_atomic};

/// Caps from here up take minutes to hours depending on m and the core count.
const SLOW_CAP: u64 = 100_000_000;

pub fn config_from(args: &BoundArgs) -> BoundConfig {
    let accumulator = match args.accumulator {
        AccumulatorArg::Exact => Accumulator::Exact,
        AccumulatorArg::Fixed => Accumulator::Fixed,
        AccumulatorArg::Auto => Accumulator::auto_for(args.cap),
    };
    BoundConfig {
        modulus: args.modulus,
        smooth_y: args.smooth_y,
        cap: args.cap,
        exponent: args.exponent,
        zeta_terms: args.zeta_terms,
        accumulator,
    }
}

fn checkpoint_path(args: &BoundArgs, config: &BoundConfig) -> Option<PathBuf> {
    args.checkpoint.clone().or_else(|| {
        args.checkpoint_dir.as_ref().map(|dir| {
            dir.join(format!(
                "bound-m{}-y{}-z{}-r{}-n{}-{}.ckpt",
                config.modulus,
                config.smooth_y,
                config.cap,
                config.exponent,
                config.zeta_terms,
                config.accumulator.label()
            ))
        })
    })
}

fn pairs_csv(config: &BoundConfig) -> anyhow::Result<Vec<u8>> {
    let outcomes = pair_outcomes(config)?;
    csv_bytes(&["a", "b", "ds", "valid", "saving"], |w| {
        for o in &outcomes {
            w.write_record([
                o.a.to_string(),
                o.b.to_string(),
                format_fraction(&o.ds),
                o.valid.to_string(),
                format_fraction(&o.saving),
            ])?;
        }
        Ok(())
    })
}

pub fn summary(report: &BoundReport) -> String {
    let c = &report.config;
    format!(
        "m={} y={} z={} r={} N={} [{}]: {} pairs ({} valid), upper bound {} ({:.1}s, {} workers)",
        c.modulus,
        c.smooth_y,
        c.cap,
        c.exponent,
        c.zeta_terms,
        c.accumulator.label(),
        report.pairs,
        report.valid_pairs,
        report.display,
        report.provenance.wall_time_secs,
        report.provenance.workers,
    )
}

pub fn run(args: BoundArgs) -> anyhow::Result<()> {
    let config = config_from(&args);
    config.validate()?;
    let dump_needed = args.format == Format::CsvDump || args.dump_pairs.is_some();
    if dump_needed && config.cap > MAX_DUMP_CAP {
        return Err(sigma_bias::Error::Config(format!(
            "per-pair CSV needs --cap ≤ {MAX_DUMP_CAP}, got {}",
            config.cap
        ))
        .into());
    }
    if config.cap >= SLOW_CAP {
        eprintln!(
            "note: cap {} is a full-scale run; expect millions of smooth pairs and minutes of work \
             (use --checkpoint to make it resumable)",
            config.cap
        );
    }

    let checkpoint = checkpoint_path(&args, &config);
    if args.halt_after.is_some() && checkpoint.is_none() {
        return Err(sigma_bias::Error::Config("--halt-after needs a checkpoint".into()).into());
    }
    let options = RunOptions {
        workers: args.workers,
        checkpoint,
        halt_after: args.halt_after,
    };
    let report = match density_upper_bound(&config, &options)? {
        RunOutcome::Complete(report) => report,
        RunOutcome::Halted {
            completed,
            remaining,
        } => {
            eprintln!("halted: {completed} b values done, {remaining} remaining");
            return Ok(());
        }
    };
    eprintln!("{}", summary(&report));

    if let Some(path) = &args.dump_pairs {
        write_atomic(path, &pairs_csv(&config)?)?;
    }
    match args.format {
        Format::Text => emit(args.output.as_deref(), report.to_toml().as_bytes()),
        Format::CsvDump => emit(args.output.as_deref(), &pairs_csv(&config)?),
    }
}
