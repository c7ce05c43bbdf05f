use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use stabnorm_core::forms::curve_ap;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabnorm"))
        .args(args)
        .env("STABNORM_OUTPUT_DIR", dir)
        .current_dir(dir)
        .output()
        .expect("binary starts")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn empty_argv_prints_usage_with_status_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Usage"));
}

#[test]
fn unknown_flag_and_bad_number_are_named() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["euler", "--colour", "red"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--colour"));
    let out = run(dir.path(), &["euler", "--s", "1.5x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("'1.5x'"));
}

#[test]
fn help_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("appendix-example"));
}

#[test]
fn stabilize_delta_at_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "stabilize",
            "--form",
            "delta",
            "-p",
            "2",
            "--format",
            "json",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("stabilize.json")).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["schema"], 1);
    let row = &doc["rows"][0];
    assert_eq!(row["up_ratio"], 1216.0);
    assert_eq!(row["stab_ratio"], 1.40625);
    assert_eq!(row["up_ratio_exact"], "1216");
    assert_eq!(row["stab_ratio_exact"], "45/32");
}

#[test]
fn euler_at_cutoff_ten_is_three_factors() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["euler", "--s", "1.5", "--cutoffs", "10"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let mut reader = csv::Reader::from_path(dir.path().join("euler.csv")).unwrap();
    let headers = reader.headers().unwrap().clone();
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 1);
    let field =
        |name: &str| records[0][headers.iter().position(|h| h == name).unwrap()].to_string();
    assert_eq!(field("factor_count"), "3");
    let mut expected = 1.0;
    for p in [3u64, 5, 7] {
        let pf = p as f64;
        expected /= 1.0 - curve_ap(p).unwrap() as f64 * pf.powf(-1.5) + 1.0 / (pf * pf);
    }
    let re: f64 = field("re").parse().unwrap();
    assert!((re - expected).abs() < 1e-15, "{re} vs {expected}");
}

#[test]
fn flag_overrides_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    fs::write(&conf, "# two cutoffs\ncutoffs = 1e3,1e4\nformat = csv\n").unwrap();
    let conf = conf.to_str().unwrap();
    let out = run(dir.path(), &["euler", "--config", conf]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rows = fs::read_to_string(dir.path().join("euler.csv")).unwrap();
    assert_eq!(rows.lines().count(), 3);
    let out = run(dir.path(), &["euler", "--config", conf, "--cutoffs", "10"]);
    assert!(out.status.success());
    let rows = fs::read_to_string(dir.path().join("euler.csv")).unwrap();
    assert_eq!(rows.lines().count(), 2);
    assert!(rows.lines().nth(1).unwrap().starts_with("10,"));
}

#[test]
fn deterministic_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "1", "4"] {
        for (name, args) in [
            (
                "euler.json",
                vec!["euler", "--cutoffs", "1e3,1e4,5e4", "--format", "json"],
            ),
            ("sym2.csv", vec!["sym2", "--cutoffs", "1e3,2e4"]),
            ("coeffs.csv", vec!["coeffs", "--max-n", "5000"]),
        ] {
            let mut argv = args.clone();
            argv.extend(["--threads", threads]);
            let out = run(dir.path(), &argv);
            assert!(out.status.success(), "{}", stderr(&out));
            outputs.push((name, fs::read(dir.path().join(name)).unwrap()));
        }
    }
    let (first, rest) = outputs.split_at(3);
    for chunk in rest.chunks(3) {
        assert_eq!(first, chunk);
    }
}

#[test]
fn timing_metadata_only_when_not_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["satake", "--limit", "50", "--format", "json"];
    assert!(run(dir.path(), &args).status.success());
    let doc: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("satake.json")).unwrap()).unwrap();
    assert!(doc.get("elapsed_seconds").is_none());
    let mut relaxed = args.to_vec();
    relaxed.extend(["--deterministic", "false"]);
    assert!(run(dir.path(), &relaxed).status.success());
    let doc: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("satake.json")).unwrap()).unwrap();
    assert!(doc["elapsed_seconds"].is_number());
}

#[test]
fn numeric_and_resource_failures_have_distinct_codes() {
    let dir = tempfile::tempdir().unwrap();
    // normalized s = 0.5 lies left of the edge
    let out = run(dir.path(), &["euler", "--s", "1.0", "--cutoffs", "10"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let target = blocker.join("out.csv");
    let out = run(
        dir.path(),
        &[
            "satake",
            "--limit",
            "20",
            "--output",
            target.to_str().unwrap(),
        ],
    );
    assert_eq!(out.status.code(), Some(4), "{}", stderr(&out));
    let out = run(dir.path(), &["petersson", "--form", "cm32"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn example_command_prints_values_beside_targets() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["appendix-example"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let stdout = String::from_utf8_lossy(&out.stdout);
    for target in ["0.826348", "0.826290", "0.826480"] {
        assert!(stdout.contains(target), "{stdout}");
    }
    assert!(dir.path().join("appendix-example.csv").exists());
}

#[test]
fn petersson_level_two_ratios() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["petersson", "--level", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rows = fs::read_to_string(dir.path().join("petersson.csv")).unwrap();
    assert_eq!(rows.lines().count(), 5);
    assert!(rows.contains("gamma0_stabilized"));
}
