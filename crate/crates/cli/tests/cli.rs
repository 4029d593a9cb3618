use std::path::Path;
use std::process::{Command, Output};

use sigma_bias::density::BoundReport;
use sigma_bias::sieve::SieveReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigma-bias"))
        .args(args)
        .env_remove("SIGMA_BIAS_CHECKPOINT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn single_pair_bound() {
    let o = run(&["bound", "--modulus", "30", "--smooth-y", "5", "--cap", "30"]);
    assert!(o.status.success());
    let report = BoundReport::from_toml(&stdout(&o)).unwrap();
    assert_eq!(report.pairs, 1);
    assert_eq!(report.display, "0.7433825");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bound", "--modulus", "12", "--smooth-y", "5", "--cap", "30"][..],
        &["bound", "--exponent", "0", "--cap", "30", "--smooth-y", "5"],
        &[
            "bound",
            "--cap",
            "2e6",
            "--smooth-y",
            "5",
            "--format",
            "csv-dump",
        ],
        &["bound", "--bogus"],
        &["sieve", "--limit", "0"],
        &["sieve", "--limit", "2000000"],
        &["sieve", "--modulus", "1", "--limit", "10"],
        &["lambda", "--k", "0"],
        &["lambda"],
    ] {
        let o = run(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn checkpoint_mismatch_exits_3_and_leaves_no_report() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("run.ckpt");
    let out = dir.path().join("report.toml");
    let base = [
        "bound",
        "--smooth-y",
        "5",
        "--checkpoint",
        ckpt.to_str().unwrap(),
    ];
    let o = run(&[&base[..], &["--cap", "120", "--halt-after", "1"]].concat());
    assert!(o.status.success());
    let o = run(&[&base[..], &["--cap", "121", "-o", out.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(3));
    assert!(!out.exists());
    assert!(std::fs::read_dir(dir.path()).unwrap().count() == 1);
}

#[test]
fn staged_run_through_checkpoint_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("staged.toml");
    let args = [
        "bound",
        "--smooth-y",
        "7",
        "--cap",
        "2000",
        "--workers",
        "2",
    ];
    let staged = |extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_sigma-bias"))
            .args(args)
            .args(extra)
            .env("SIGMA_BIAS_CHECKPOINT_DIR", dir.path())
            .output()
            .unwrap()
    };
    assert!(staged(&["--halt-after", "2"]).status.success());
    assert!(!out.exists());
    let o = staged(&["-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let resumed = BoundReport::from_toml(&read(&out)).unwrap();
    assert!(resumed.provenance.resumed_b_values >= 2);

    let direct = BoundReport::from_toml(&stdout(&run(&args))).unwrap();
    assert!(direct.certificate_eq(&resumed));
}

#[test]
fn report_round_trips_through_check() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("b.toml");
    let s = dir.path().join("s.toml");
    assert!(run(&[
        "bound",
        "--smooth-y",
        "7",
        "--cap",
        "1e3",
        "-o",
        b.to_str().unwrap()
    ])
    .status
    .success());
    assert!(run(&[
        "sieve",
        "--modulus",
        "6",
        "--limit",
        "1e4",
        "--gap-scan",
        "-o",
        s.to_str().unwrap()
    ])
    .status
    .success());

    let report = BoundReport::from_toml(&read(&b)).unwrap();
    assert_eq!(
        (
            report.config.modulus,
            report.config.smooth_y,
            report.config.cap
        ),
        (30, 7, 1000)
    );
    let sieve = SieveReport::from_toml(&read(&s)).unwrap();
    assert_eq!((sieve.modulus, sieve.limit), (6, 10_000));

    for path in [&b, &s] {
        let o = run(&["check", path.to_str().unwrap(), "--rerun"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains("recomputed: identical"));
    }

    std::fs::write(&b, read(&b).replace("pairs = ", "pairs = 1")).unwrap();
    assert!(!run(&["check", b.to_str().unwrap(), "--rerun"])
        .status
        .success());
}

#[test]
fn pair_dump_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("pairs.csv");
    let o = run(&[
        "bound",
        "--smooth-y",
        "5",
        "--cap",
        "120",
        "--dump-pairs",
        csv_path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let report = BoundReport::from_toml(&stdout(&o)).unwrap();
    let mut rdr = csv::Reader::from_path(&csv_path).unwrap();
    assert_eq!(
        rdr.headers().unwrap(),
        vec!["a", "b", "ds", "valid", "saving"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len() as u64, report.pairs);
    assert_eq!((&rows[0][0], &rows[0][1]), ("1", "30"));
    assert_eq!(&rows[0][2], "4/15");
}

#[test]
fn sieve_csv_and_gap_scan() {
    let o = run(&["sieve", "--modulus", "2", "--limit", "10", "--gap-scan"]);
    assert!(o.status.success());
    let r = SieveReport::from_toml(&stdout(&o)).unwrap();
    assert_eq!(r.counts(), (8, 1, 1));
    assert!(r.gaps.contains(&7));

    let o = run(&[
        "sieve",
        "--modulus",
        "2",
        "--limit",
        "10",
        "--format",
        "csv-dump",
        "--row-cap",
        "4",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        [
            "n,sigma_mn,sigma_mn1,sign",
            "1,3,4,>",
            "2,7,6,<",
            "3,12,8,<",
            "4,15,13,<"
        ]
    );
}

#[test]
fn lambda_prints_enclosures() {
    for (k, value) in [("30", 1.0527578), ("1", 1.6449341), ("2", 1.2337006)] {
        let o = run(&["lambda", "--k", k]);
        assert!(o.status.success());
        let text = stdout(&o);
        let grab = |prefix: &str| -> f64 {
            let line = text.lines().find(|l| l.starts_with(prefix)).unwrap();
            line[prefix.len()..].trim().parse().unwrap()
        };
        let (lo, hi) = (grab("lo >="), grab("hi <="));
        assert!(lo <= hi && hi - lo < 1e-9);
        assert!((lo - value).abs() < 1e-7, "k = {k}");
        assert!(text.contains("lo = ") && text.contains('/'));
    }
}
