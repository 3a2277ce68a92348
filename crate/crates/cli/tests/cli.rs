use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn circseg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circseg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_three_four_passes() {
    let out = circseg(&["verify", "--legs", "3", "4", "--samples", "200000"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS pythagoras_residual"), "{text}");
    assert!(text.trim_end().ends_with("overall: PASS"));
}

#[test]
fn verify_rejects_zero_leg() {
    let out = circseg(&["verify", "--legs", "3", "0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("legs must be positive"));
}

#[test]
fn malformed_flags_are_usage_errors() {
    for args in [
        &["verify", "--legs", "3"][..],
        &["areas", "--legs", "3", "x"],
        &["frobnicate"],
        &["areas", "--legs", "3", "4", "--format", "xml"],
    ] {
        let out = circseg(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(stderr(&out).to_lowercase().contains("usage"), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn strict_tolerance_is_a_verification_failure() {
    let out = circseg(&["verify", "--legs", "3", "4", "--samples", "20000", "--tol", "1e-30"]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("overall: FAIL"));
}

#[test]
fn verify_reports_are_byte_identical_for_a_fixed_seed() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    for p in [&first, &second] {
        let out = circseg(&[
            "verify", "--legs", "3", "4", "--samples", "100000", "--seed", "42", "--report", path_str(p),
        ]);
        assert_eq!(code(&out), 0);
    }
    let a = fs::read(&first).unwrap();
    assert_eq!(a, fs::read(&second).unwrap());

    let text = String::from_utf8(a.clone()).unwrap();
    let top_level: Vec<usize> = ["tool_version", "triangle", "checks", "oracle", "overall_pass"]
        .iter()
        .map(|k| text.find(&format!("\n  \"{k}\":")).unwrap())
        .collect();
    assert!(top_level.windows(2).all(|w| w[0] < w[1]), "{top_level:?}");

    let doc: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(doc["oracle"]["seed"], 42);
    assert_eq!(doc["oracle"]["estimates"].as_array().unwrap().len(), 9);
    let checks = doc["checks"].as_array().unwrap();
    let all = checks.iter().all(|c| c["pass"].as_bool().unwrap());
    assert_eq!(doc["overall_pass"].as_bool().unwrap(), all);
}

#[test]
fn unwritable_report_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("report.json");
    let out = circseg(&["verify", "--legs", "3", "4", "--samples", "10000", "--report", path_str(&target)]);
    assert_eq!(code(&out), 3);
}

#[test]
fn areas_csv_lists_every_region() {
    let out = circseg(&["areas", "--legs", "3", "4", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "region,area");
    assert_eq!(lines.len(), 13);
    assert!(lines.contains(&"RA,2.795595"));
    assert!(lines.contains(&"TRI_ABC,6.000000"));
}

#[test]
fn areas_json_carries_full_precision() {
    let out = circseg(&["areas", "--legs", "3", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let sc = v.as_array().unwrap().iter().find(|e| e["region"] == "SC").unwrap();
    assert_eq!(sc["area"].as_f64().unwrap(), std::f64::consts::PI * 25.0 / 8.0);
}

#[test]
fn batch_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    let output = dir.path().join("out.csv");
    fs::write(&input, "a,b\n3,4\n\n1,1\n3,-4\n").unwrap();
    let out = circseg(&[
        "batch", "--input", path_str(&input), "--output", path_str(&output), "--samples", "20000",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stderr(&out).contains("1 warnings"), "{}", stderr(&out));

    let mut reader = csv::Reader::from_path(&output).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["a", "b", "c", "theta_deg", "RA", "RB", "RC", "RD", "RE", "RF", "residual", "pass"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[0][2], "5");
    assert_eq!(&rows[1][11], "true");
    let residual: f64 = rows[0][10].parse().unwrap();
    assert!(residual.abs() < 1e-12);
}

#[test]
fn batch_parse_error_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    fs::write(&input, "a,b\n3;4\n").unwrap();
    let output = dir.path().join("out.csv");
    let out = circseg(&["batch", "--input", path_str(&input), "--output", path_str(&output)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn batch_missing_input_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = circseg(&[
        "batch",
        "--input",
        path_str(&dir.path().join("nope.csv")),
        "--output",
        path_str(&dir.path().join("out.csv")),
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("fig9.svg");
    let out = circseg(&["render", "--legs", "3", "4", "--figure", "9", "--out", path_str(&svg)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<?xml"));
    assert_eq!(text.matches("<path ").count(), 9);

    let bad = circseg(&["render", "--legs", "3", "4", "--figure", "10", "--out", path_str(&svg)]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn oracle_prints_estimate() {
    let out = circseg(&["oracle", "--legs", "3", "4", "--region", "RB", "--samples", "100000", "--seed", "7"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("region     RB"));
    assert!(text.contains("closed     1.021882"));
    let z: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("z "))
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!(z.abs() < 5.0);

    let unknown = circseg(&["oracle", "--legs", "3", "4", "--region", "RZ", "--samples", "1000", "--seed", "0"]);
    assert_eq!(code(&unknown), 2);
}

#[test]
fn ledger_shows_collected_coefficients() {
    let out = circseg(&["ledger"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let last = text.lines().last().unwrap();
    let cells: Vec<&str> = last.split_whitespace().collect();
    assert_eq!(cells, ["LEDGER", "0", "0", "1/8", "0", "0", "0", "-1/2", "1/2", "1/2"]);
}
