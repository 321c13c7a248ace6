//! End-to-end checks of the binary: exit-status contract, file formats,
//! numeric formatting, determinism, and atomic --output handling.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qdetect::detection::{quantum_roc_curve, DetectorParams};
use qdetect::ranker::{score_units, Estimator, Mode};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qdetect"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout is UTF-8")
}

fn example_csv() -> &'static str {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/example_training.csv")
}

fn divergent_csv() -> &'static str {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/divergent_training.csv")
}

#[test]
fn exit_codes_partition_success_violation_and_usage() {
    // 0: a healthy run.
    let ok = run(&["detect", "--p0", "0.2", "--p1", "0.6"]);
    assert_eq!(ok.status.code(), Some(0));

    // 1: invariant violation (zeroed tolerances make ulp noise a failure).
    let violated = run(&["selftest", "--draws", "20", "--grid", "11", "--zero-tolerances"]);
    assert_eq!(violated.status.code(), Some(1));
    let err = String::from_utf8_lossy(&violated.stderr);
    assert!(err.contains("self-test violation"), "stderr: {err}");

    // 2: usage and input errors, including clap's own.
    for args in [
        &["detect"][..],
        &["estimate", "--input", "/does/not/exist.csv"][..],
        &["roc", "--p0", "0.2", "--p1", "0.6", "--grid", "1"][..],
        &["detect", "--p0", "0.2", "--p1", "0.6", "--no-such-flag"][..],
        &["rank", "--input", example_csv(), "--p0", "0.5", "--p1", "0.5"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
    }
}

#[test]
fn missing_and_empty_inputs_exit_with_usage_errors() {
    let dir = tempfile::tempdir().unwrap();

    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "").unwrap();
    let out = run(&["estimate", "--input", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty training set"));

    // A header with no rows gives no labeled records: same verdict.
    let header_only = dir.path().join("header.csv");
    fs::write(&header_only, "unit_id,feature,label\n").unwrap();
    let out = run(&["estimate", "--input", header_only.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty training set"));
}

#[test]
fn malformed_rows_report_the_offending_line() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text, line) in [
        ("feature.csv", "unit_id,feature,label\nu1,1,1\nu2,2,0\n", "line 3"),
        ("label.csv", "unit_id,feature,label\nu1,1,restricted\n", "line 2"),
        ("header.csv", "id,feat,lab\nu1,1,1\n", "line 1"),
        ("fields.csv", "unit_id,feature,label\nu1,1\n", "line 2"),
    ] {
        let path = dir.path().join(name);
        fs::write(&path, text).unwrap();
        let out = run(&["rank", "--input", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(line), "{name}: stderr {err}");
    }
}

#[test]
fn roc_csv_has_grid_touch_rows_and_unit_corner() {
    let text = stdout_of(&["roc", "--p0", "0.2", "--p1", "0.6", "--grid", "5"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("size,power_classical,power_quantum"));

    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    // Uniform 5-point grid plus the inserted envelope vertices 0.2 and 0.8.
    let sizes: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    assert_eq!(sizes, vec![0.0, 0.2, 0.25, 0.5, 0.75, 0.8, 1.0]);

    // Touch row: both detectors sit at the designed operating point.
    let touch = &rows[1];
    assert!((touch[1] - 0.6).abs() <= 1e-9, "classical {}", touch[1]);
    assert!((touch[2] - 0.6).abs() <= 1e-9, "quantum {}", touch[2]);
    assert!(touch[2] >= touch[1] - 1e-9);

    // Dominance holds on every row; the top corner is exact.
    for row in &rows {
        assert!(row[2] >= row[1] - 1e-9, "row {row:?}");
    }
    assert_eq!(rows.last().unwrap(), &vec![1.0, 1.0, 1.0]);

    // Past the overlap the subspace detector is perfect.
    let overlap = 0.8319183588453087;
    for row in rows.iter().filter(|r| r[0] > overlap) {
        assert_eq!(row[2], 1.0, "row {row:?}");
    }
}

#[test]
fn roc_csv_round_trips_the_quantum_curve_bitwise() {
    let text = stdout_of(&["roc", "--p0", "0.35", "--p1", "0.85", "--grid", "17"]);
    let params = DetectorParams::new(0.35, 0.85, 1.0).unwrap();
    let expected = quantum_roc_curve(&params, 17);

    let parsed: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let mut f = l.split(',');
            let size: f64 = f.next().unwrap().parse().unwrap();
            let _classical = f.next().unwrap();
            let power: f64 = f.next().unwrap().parse().unwrap();
            (size, power)
        })
        .collect();

    assert_eq!(parsed.len(), expected.points().len());
    for (got, want) in parsed.iter().zip(expected.points()) {
        assert_eq!(got.0.to_bits(), want.size.to_bits());
        assert_eq!(got.1.to_bits(), want.power.to_bits());
    }
}

#[test]
fn ranked_csv_round_trips_scores_bitwise() {
    let text = stdout_of(&[
        "rank",
        "--input",
        example_csv(),
        "--estimator",
        "example-compat",
        "--lambda",
        "0.5",
    ]);

    let units = qdetect::ranker::parse_units(fs::read(example_csv()).unwrap().as_slice()).unwrap();
    let ts = qdetect::ranker::TrainingSet::new(units.clone()).unwrap();
    let est = qdetect::ranker::estimate(&ts, Estimator::ExampleCompat, 0.0).unwrap();
    let expected = score_units(&units, &est, 0.5, Mode::Quantum).unwrap();

    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let parsed: Vec<(String, f64, bool)> = reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].to_string(), r[1].parse().unwrap(), r[2].parse().unwrap())
        })
        .collect();

    assert_eq!(parsed.len(), expected.entries().len());
    for (got, want) in parsed.iter().zip(expected.entries()) {
        assert_eq!(got.0, want.unit_id);
        assert_eq!(got.1.to_bits(), want.score.to_bits());
        assert_eq!(got.2, want.accepted);
    }
}

#[test]
fn repeated_runs_emit_identical_bytes() {
    let compare_args = &[
        "compare",
        "--input",
        divergent_csv(),
        "--estimator",
        "example-compat",
        "--lambda",
        "0.5",
        "--grid",
        "101",
    ];
    assert_eq!(stdout_of(compare_args), stdout_of(compare_args));

    let selftest_args = &["selftest", "--seed", "7", "--draws", "50", "--grid", "11", "--json"];
    assert_eq!(stdout_of(selftest_args), stdout_of(selftest_args));
}

#[test]
fn output_flag_writes_the_same_bytes_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["detect", "--p0", "1", "--p1", "0.7", "--lambda", "0.5"];

    let streamed = stdout_of(&args);
    let out = bin().args(args).arg("--output").arg(&path).output().unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap(), streamed);

    // Replacing an existing file keeps the atomic write-then-rename path.
    let out = bin().args(args).arg("--output").arg(&path).output().unwrap();
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&path).unwrap(), streamed);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1, "no stray temp files");
}

#[test]
fn json_reports_carry_the_documented_fields() {
    let est: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "estimate",
        "--input",
        example_csv(),
        "--estimator",
        "example-compat",
    ]))
    .unwrap();
    assert_eq!(est["p0"], 0.2);
    assert_eq!(est["p1"], 0.6);
    assert_eq!(est["estimator"], "example-compat");
    assert_eq!(est["counts"]["present_useful"], 3);
    assert_eq!(est["counts"]["absent_useless"], 4);

    let detect: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "detect", "--p0", "1", "--p1", "0.7", "--lambda", "0.5",
    ]))
    .unwrap();
    for key in [
        "params",
        "overlap",
        "eta0",
        "eta1",
        "big_r",
        "degenerate",
        "mixed_region",
        "pure_region",
        "classical_point",
        "quantum_point",
        "coordinates",
        "incompatibility",
    ] {
        assert!(detect.get(key).is_some(), "missing {key}");
    }
    assert_eq!(detect["degenerate"], false);
    assert_eq!(detect["mixed_region"], "Always");
    assert_eq!(detect["pure_region"], "AcceptOnPresent");

    // Degenerate parameters still succeed, with the spectrum fields withheld.
    let degen: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "detect", "--p0", "0.5", "--p1", "0.5", "--lambda", "1",
    ]))
    .unwrap();
    assert_eq!(degen["degenerate"], true);
    assert!(degen.get("quantum_point").is_none());
    assert!(degen.get("coordinates").is_none());

    let compare: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "compare",
        "--input",
        divergent_csv(),
        "--estimator",
        "example-compat",
        "--lambda",
        "0.5",
    ]))
    .unwrap();
    assert_eq!(compare["rankings_differ"], true);
    assert_eq!(compare["disagreements"], serde_json::json!(["d11", "d12"]));
}

#[test]
fn every_float_keeps_at_least_six_decimal_places() {
    let texts = [
        stdout_of(&["roc", "--p0", "0.2", "--p1", "0.6", "--grid", "7"]),
        stdout_of(&["rank", "--input", example_csv(), "--estimator", "example-compat"]),
        stdout_of(&["estimate", "--input", example_csv()]),
        stdout_of(&["detect", "--p0", "0.3", "--p1", "0.9", "--lambda", "2"]),
    ];
    for text in &texts {
        let mut found = 0usize;
        for token in text.split(|c: char| !c.is_ascii_digit() && c != '.' && c != '-') {
            let Some((_, frac)) = token.split_once('.') else { continue };
            assert!(
                frac.len() >= 6 && frac.chars().all(|c| c.is_ascii_digit()),
                "token {token:?} in {text}"
            );
            found += 1;
        }
        assert!(found > 0, "no decimals found in {text}");
    }
}

#[test]
fn svg_export_draws_both_curves_and_the_legend() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("roc.svg");
    let out = bin()
        .args(["roc", "--p0", "0.2", "--p1", "0.6", "--grid", "101", "--format", "svg"])
        .arg("--output")
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());

    let svg = fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<polyline").count(), 2);
    assert!(svg.contains("stroke-dasharray"), "chance diagonal present");
    assert!(svg.contains("subspace detector"));
    assert!(svg.contains("set-based envelope"));
    assert!(svg.contains("false-alarm size"));
    assert!(svg.contains("detection power"));
}

#[test]
fn selftest_prints_one_line_per_sweep_and_respects_the_seed() {
    let text = stdout_of(&["selftest", "--seed", "11", "--draws", "40", "--grid", "11"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8, "7 sweeps + verdict: {text}");
    for line in &lines[..7] {
        assert!(line.starts_with("PASS "), "line {line}");
        assert!(line.contains("max error"), "line {line}");
        assert!(line.contains("tolerance"), "line {line}");
    }
    assert!(lines[7].contains("self-test passed"));
    assert!(lines[7].contains("seed 11"));

    assert_eq!(text, stdout_of(&["selftest", "--seed", "11", "--draws", "40", "--grid", "11"]));
}

#[test]
fn explicit_probabilities_override_estimated_ones() {
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "detect",
        "--input",
        example_csv(),
        "--estimator",
        "example-compat",
        "--p0",
        "0.05",
    ]))
    .unwrap();
    assert_eq!(report["params"]["p0"], 0.05);
    assert_eq!(report["params"]["p1"], 0.6);
    // The estimation block is still reported for provenance.
    assert_eq!(report["estimation"]["p0"], 0.2);

    // With both given, no training file is needed at all.
    let report: serde_json::Value =
        serde_json::from_str(&stdout_of(&["detect", "--p0", "0.1", "--p1", "0.8"])).unwrap();
    assert!(report.get("estimation").is_none());
}

#[test]
fn rank_modes_accept_the_same_units_at_unit_threshold() {
    let parse_ids = |text: &str| -> Vec<(String, bool)> {
        csv::Reader::from_reader(text.as_bytes())
            .records()
            .map(|r| {
                let r = r.unwrap();
                (r[0].to_string(), r[2].parse().unwrap())
            })
            .collect()
    };
    let quantum = parse_ids(&stdout_of(&[
        "rank", "--input", example_csv(), "--estimator", "example-compat",
    ]));
    let classical = parse_ids(&stdout_of(&[
        "rank", "--input", example_csv(), "--estimator", "example-compat", "--mode", "classical",
    ]));

    let accepted = |rows: &[(String, bool)]| -> Vec<String> {
        rows.iter().filter(|(_, a)| *a).map(|(id, _)| id.clone()).collect()
    };
    assert_eq!(accepted(&quantum), vec!["u1", "u2", "u3", "u4", "u5"]);
    assert_eq!(accepted(&quantum), accepted(&classical));
}

#[test]
fn help_names_every_subcommand() {
    let out = run(&["--help"]);
    assert!(out.status.success());
    let help = String::from_utf8_lossy(&out.stdout);
    for sub in ["estimate", "detect", "roc", "rank", "compare", "selftest"] {
        assert!(help.contains(sub), "missing {sub}");
    }
    assert!(Path::new(example_csv()).exists(), "fixture shipped with the repo");
}
