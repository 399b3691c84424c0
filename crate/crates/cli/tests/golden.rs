//! Byte-for-byte comparison of command output against checked-in files.
//! Set `FAIRMATCH_BLESS=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::process::Command;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fairmatch"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

fn golden(name: &str, args: &[&str]) {
    let (code, stdout) = run(args);
    assert_eq!(code, 0, "{name}: exit code");
    let path = root().join("golden").join(name);
    if std::env::var_os("FAIRMATCH_BLESS").is_some() {
        std::fs::write(&path, &stdout).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing {}; run with FAIRMATCH_BLESS=1", path.display()));
    assert_eq!(stdout, expected, "{name} differs from its golden file");
}

#[test]
fn match_default() {
    golden("match_default.csv", &["match"]);
}

#[test]
fn match_from_instance_file_equals_builtin() {
    let (_, builtin) = run(&["match"]);
    let (code, file) = run(&["match", "--instance", "fixtures/case_study.json"]);
    assert_eq!(code, 0);
    assert_eq!(builtin, file);
}

#[test]
fn match_benchmarks() {
    golden("match_maxmin.csv", &["match", "--method", "maxmin"]);
    golden("match_ideal.csv", &["match", "--method", "ideal"]);
    golden("match_linear.csv", &["match", "--method", "linear", "--lambda", "0.5,0.5"]);
}

#[test]
fn match_json() {
    golden("match_default.json", &["match", "--format", "json"]);
}

#[test]
fn match_enumeration_backend_agrees() {
    let (_, bnb) = run(&["match"]);
    let (_, enumeration) = run(&["match", "--backend", "enumeration"]);
    assert_eq!(bnb, enumeration);
}

#[test]
fn compare_tables() {
    golden("compare.csv", &["compare"]);
    golden("compare_membership.csv", &["compare", "--space", "membership"]);
}

#[test]
fn sensitivity_sweeps() {
    golden("sensitivity_shipper.csv", &["sensitivity", "--side", "shipper"]);
    golden("sensitivity_carrier.csv", &["sensitivity", "--side", "carrier"]);
    golden(
        "sensitivity_exact_reference.csv",
        &["sensitivity", "--side", "carrier", "--gammas", "0.2,0.5", "--reference-decimals", "none"],
    );
}

#[test]
fn weights() {
    golden("weights_scales.csv", &["weights", "--scales", "0.6,0.6", "--ids", "A1,A2,A3"]);
    golden("weights_file.csv", &["weights", "--scales-file", "fixtures/scales.txt"]);
    golden("weights_criteria.csv", &["weights", "--criteria", "fixtures/criteria.csv"]);
}

#[test]
fn simulate() {
    golden("simulate_array1.csv", &["simulate", "--sample-every", "200"]);
    golden(
        "simulate_file.csv",
        &["simulate", "--scenario", "fixtures/game_params.json", "--x0", "0.3", "--sample-every", "500"],
    );
}

#[test]
fn sweep() {
    golden("sweep_d_g.csv", &["sweep", "--param", "d_g", "--values", "0.5:0.5:3"]);
    golden(
        "sweep_sigma1.json",
        &["sweep", "--scenario", "array2", "--param", "sigma1", "--values", "0.6,1", "--format", "json"],
    );
}

#[test]
fn classify() {
    golden("classify_array1.csv", &["classify"]);
    golden("classify_array2_e8.csv", &["classify", "--scenario", "array2", "--target", "e8"]);
    golden(
        "classify_override.csv",
        &["classify", "--set", "sigma1=0.5", "--set", "sigma2=0.5", "--precision", "3"],
    );
}

#[test]
fn pipeline() {
    golden("pipeline_handoff.csv", &["pipeline", "--handoff-eta", "--sample-every", "1000"]);
    golden("pipeline.csv", &["pipeline", "--scenario", "array2"]);
}
