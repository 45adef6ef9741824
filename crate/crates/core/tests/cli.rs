//! The command line: documented examples, exit codes, schema conformance,
//! golden files and config handling.
//!
//! Regenerate the golden files with `UPDATE_GOLDEN=1 cargo test --test cli`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use jsonschema::JSONSchema;
use serde_json::Value;

use qhj_spectra::cli::{execute, Outcome};

fn run(args: &[&str]) -> Outcome {
    let mut full = vec!["qhj-spectra"];
    full.extend_from_slice(args);
    execute(full)
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let doc = serde_json::from_str(&out.body).unwrap_or_else(|e| panic!("{e}: {}", out.body));
    validate(&doc);
    (out.code, doc)
}

fn schema() -> JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema/qhj-spectra.schema.json");
    let schema: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::compile(&schema).expect("schema compiles")
}

fn validate(doc: &Value) {
    let schema = schema();
    let msgs: Vec<String> = match schema.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("schema violations: {msgs:#?}\n{doc:#}");
}

fn golden(name: &str, body: &str) {
    let path: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, body).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(body, expected, "output differs from {}", path.display());
}

fn number(v: &Value) -> f64 {
    v.as_str().expect("numbers are strings").parse().unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qhj-spectra-tests-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn classify_real_working_point() {
    let (code, doc) = run_json(&["classify", "--v1", "1", "--v2", "-3", "--alpha", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["classification"]["lambda"], "1.5");
    assert_eq!(doc["classification"]["m"], "3");
    let sets: Vec<(u64, u64)> = doc["classification"]["sets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["set"].as_u64().unwrap(), s["n"].as_u64().unwrap()))
        .collect();
    assert_eq!(sets, vec![(1, 1), (2, 0)]);
    assert_eq!(doc["symmetry"]["pt_symmetric"], true);
    golden("classify_lambda_1.5.json", &run(&["classify", "--v1", "1", "--v2", "-3", "--alpha", "1"]).body);
}

#[test]
fn classify_imaginary_cosh() {
    let (code, doc) = run_json(&["classify", "--v1", "1", "--v2", "4", "--alpha", "2", "--variant", "i-cosh"]);
    assert_eq!(code, 0);
    assert_eq!(doc["symmetry"]["physical_qes_possible"], false);
    assert_eq!(doc["symmetry"]["pt_symmetric"], true);
    assert!(doc["classification"].is_null());
    // ±i V2/(4√V1) = ±i
    let mut ims: Vec<f64> = doc["symmetry"]["lambda_candidates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|z| {
            assert_eq!(number(&z["re"]), 0.0);
            number(&z["im"])
        })
        .collect();
    ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(ims, vec![-1.0, 1.0]);
}

#[test]
fn classify_rejects_non_positive_v1() {
    let (code, doc) = run_json(&["classify", "--v1", "-1", "--v2", "-3", "--alpha", "1"]);
    assert_eq!(code, 2);
    assert!(doc["error"]["message"].as_str().unwrap().contains("v1 must be positive"));
}

#[test]
fn solve_single_set() {
    let (code, doc) = run_json(&["solve", "--v1", "1", "--alpha", "1", "--set", "2", "--n", "0"]);
    assert_eq!(code, 0);
    assert_eq!(doc["params"]["v2"], "-3");
    let levels = doc["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 1);
    assert_eq!(levels[0]["energy"], "-1");
    assert_eq!(levels[0]["parity"], "odd");
    assert_eq!(levels[0]["nodes"], 1);
}

#[test]
fn solve_lambda_one() {
    let out = run(&["solve", "--v1", "1", "--alpha", "1", "--lambda", "1"]);
    let (code, doc) = run_json(&["solve", "--v1", "1", "--alpha", "1", "--lambda", "1"]);
    assert_eq!(code, 0);
    let summary: Vec<(String, String, u64)> = doc["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| {
            (
                l["energy"].as_str().unwrap().to_string(),
                l["parity"].as_str().unwrap().to_string(),
                l["nodes"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(
        summary,
        vec![("-1.25".into(), "even".into(), 0), ("0.75".into(), "odd".into(), 1)]
    );
    golden("solve_lambda_1.json", &out.body);
}

#[test]
fn solve_rejects_non_half_integer_lambda() {
    let (code, doc) = run_json(&["solve", "--v1", "1", "--alpha", "1", "--lambda", "0.7"]);
    assert_eq!(code, 2);
    assert!(doc["error"]["message"].as_str().unwrap().contains("no admissible QES sets"));
}

#[test]
fn verify_lambda_three_halves() {
    let (code, doc) = run_json(&["verify", "--v1", "1", "--alpha", "1", "--lambda", "1.5", "--tol", "1e-6"]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["overall_pass"], true);
    assert_eq!(doc["mode"], "analytic");
    let order = number(&doc["report"]["convergence_order_estimate"]);
    assert!((order - 2.0).abs() < 0.1, "{order}");
}

#[test]
fn verify_lambda_two() {
    let (code, doc) = run_json(&["verify", "--v1", "1", "--alpha", "1", "--lambda", "2"]);
    assert_eq!(code, 0);
    let rows = doc["report"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let nodes: Vec<u64> = rows.iter().map(|r| r["node_count_oracle"].as_u64().unwrap()).collect();
    assert_eq!(nodes, vec![0, 1, 2, 3]);
}

#[test]
fn verify_printed_m2_table_fails() {
    let out = run(&["verify", "--v1", "1", "--alpha", "1", "--lambda", "1", "--assert-paper-table-3.3"]);
    let (code, doc) = run_json(&["verify", "--v1", "1", "--alpha", "1", "--lambda", "1", "--assert-paper-table-3.3"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "oracle-collision");
    golden("verify_printed_m2.json", &out.body);
}

#[test]
fn verify_printed_m3_table_fails() {
    let (code, doc) = run_json(&["verify", "--v1", "1", "--alpha", "1", "--assert-paper-table-3.2"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "oracle-mismatch");
    assert_eq!(doc["params"]["v2"], "-3");
}

#[test]
fn verify_printed_table_needs_its_lambda() {
    let (code, doc) = run_json(&["verify", "--v1", "1", "--alpha", "1", "--lambda", "2", "--assert-paper-table-3.3"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "usage");
}

#[test]
fn verify_grid_override_must_satisfy_the_tail_criterion() {
    let (code, _) = run_json(&["verify", "--v1", "1", "--alpha", "1", "--lambda", "1", "--grid-l", "2"]);
    assert_eq!(code, 2);
    let (code, doc) = run_json(&["verify", "--v1", "1", "--alpha", "1", "--lambda", "1", "--grid-l", "5", "--grid-n", "5000"]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["grid"]["points"], 5000);
    assert_eq!(doc["report"]["refined_grid"]["points"], 10001);
}

fn sample_rows(body: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn sample_shape_and_values() {
    let out = run(&["sample", "--v1", "1", "--alpha", "1", "--lambda", "1.5"]);
    assert_eq!(out.code, 0);
    assert!(out.body.contains("\r\n"));
    let (header, rows) = sample_rows(&out.body);
    assert_eq!(header.len(), 5);
    assert_eq!(&header[..2], ["x", "V"]);
    assert_eq!(header[3], "psi[set=2 n=0 E=-1]");
    assert_eq!(rows.len(), 1001);
    assert!(rows.iter().all(|r| r.len() == 5));
    assert_eq!(rows[0][0], -5.0);
    assert_eq!(rows[1000][0], 5.0);
    let origin = &rows[500];
    assert_eq!(origin[0], 0.0);
    assert_eq!(origin[1], -3.0);
    assert_eq!(origin[3], 0.0);
    for col in 2..5 {
        let max = rows.iter().map(|r| r[col].abs()).fold(0.0, f64::max);
        assert!(max <= 1.0 + 1e-11 && max > 0.99, "column {col}: {max}");
    }
}

#[test]
fn sample_range_and_json() {
    let out = run(&["sample", "--v1", "1", "--alpha", "2", "--set", "3", "--n", "0", "--points", "11"]);
    let (_, rows) = sample_rows(&out.body);
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0][0], -2.5);
    let (code, doc) = run_json(&["sample", "--v1", "1", "--alpha", "1", "--lambda", "1", "--format", "json", "--x-min", "0", "--x-max", "1", "--points", "3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 3);
    assert_eq!(doc["rows"][2][0], "1");
}

#[test]
fn table_default_run() {
    let out = run(&["table"]);
    let (code, doc) = run_json(&["table"]);
    assert_eq!(code, 0);
    assert_eq!(doc["typo_count"], 3);
    let entries = doc["entries"].as_array().unwrap();
    let find = |table: &str, sets: &[u64], quantity: &str| {
        entries
            .iter()
            .find(|e| {
                e["table"] == table
                    && e["quantity"] == quantity
                    && e["sets"].as_array().unwrap().iter().map(|s| s.as_u64().unwrap()).collect::<Vec<_>>() == sets
            })
            .unwrap()
    };
    assert_eq!(find("3.2", &[2], "energy")["flag"], "matches-paper");
    assert_eq!(find("3.3", &[3], "energy")["flag"], "matches-paper");
    assert_eq!(find("3.3", &[3, 4], "wavefunction")["flag"], "paper-typo-suspected");
    for row in doc["conditions"].as_array().unwrap() {
        assert!(row["m_printed_at_n0"].is_string());
        assert!(row["m_reconciled_at_n0"].is_string());
    }
    golden("table_default.json", &out.body);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["classify", "--v1", "2", "--v2", "-7.3", "--alpha", "0.6"][..],
        &["solve", "--v1", "1.7", "--alpha", "0.8", "--lambda", "3.5"][..],
        &["verify", "--v1", "1", "--alpha", "1", "--lambda", "1.5"][..],
        &["table", "--v1", "2", "--alpha", "0.5"][..],
    ] {
        assert_eq!(run(args).body, run(args).body);
    }
}

#[test]
fn errors_validate_against_the_schema() {
    for args in [
        &["solve"][..],
        &["solve", "--v1", "1", "--alpha", "1", "--lambda", "1", "--v2", "-2"][..],
        &["solve", "--v1", "1", "--alpha", "1", "--lambda", "1", "--variant", "nope"][..],
        &["classify", "--v1", "0", "--v2", "1", "--alpha", "1", "--variant", "i-sinh"][..],
        &["verify", "--v1", "1", "--alpha", "1", "--lambda", "1", "--tol", "-1"][..],
        &["bogus"][..],
    ] {
        let (code, doc) = run_json(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(doc["error"]["kind"].is_string());
    }
}

#[test]
fn config_file_supplies_fields_and_flags_win() {
    let path = temp_path("config.json");
    fs::write(&path, r#"{"v1": 1, "alpha": 1, "lambda": 1.5, "tol": 1e-6}"#).unwrap();
    let p = path.to_str().unwrap();
    let (code, doc) = run_json(&["solve", "--config", p]);
    assert_eq!(code, 0);
    assert_eq!(doc["levels"].as_array().unwrap().len(), 3);
    let (code, doc) = run_json(&["solve", "--config", p, "--v1", "4"]);
    assert_eq!(code, 0);
    assert_eq!(doc["params"]["v1"], "4");
    assert_eq!(doc["params"]["v2"], "-6");

    let bad = temp_path("bad.json");
    fs::write(&bad, r#"{"v1": 1, "colour": "red"}"#).unwrap();
    let (code, doc) = run_json(&["solve", "--config", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "config");
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qhj-spectra"))
}

#[test]
fn binary_exit_codes() {
    let ok = binary().args(["solve", "--v1", "1", "--alpha", "1", "--lambda", "1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let mismatch = binary()
        .args(["verify", "--v1", "1", "--alpha", "1", "--lambda", "1", "--assert-paper-table-3.3"])
        .output()
        .unwrap();
    assert_eq!(mismatch.status.code(), Some(1));
    let usage = binary().args(["solve", "--v1", "1"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let doc: Value = serde_json::from_slice(&usage.stdout).unwrap();
    assert_eq!(doc["error"]["kind"], "usage");
}

#[test]
fn binary_reads_the_config_environment_variable() {
    let path = temp_path("env.json");
    fs::write(&path, r#"{"v1": 1, "v2": -3, "alpha": 1}"#).unwrap();
    let out = binary()
        .arg("classify")
        .env("QHJ_SPECTRA_CONFIG", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["classification"]["lambda"], "1.5");
}

#[test]
fn binary_writes_to_the_output_path() {
    let path = temp_path("levels.json");
    let out = binary()
        .args(["solve", "--v1", "1", "--alpha", "1", "--lambda", "2", "--output"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    validate(&doc);
    assert_eq!(doc["levels"].as_array().unwrap().len(), 4);
}

#[test]
fn schema_rejects_raw_numbers() {
    let (_, mut doc) = run_json(&["solve", "--v1", "1", "--alpha", "1", "--lambda", "1"]);
    doc["levels"][0]["energy"] = serde_json::json!(-1.25);
    assert!(!schema().is_valid(&doc));
    doc["levels"][0]["energy"] = serde_json::json!("-1.250");
    assert!(!schema().is_valid(&doc));
}
