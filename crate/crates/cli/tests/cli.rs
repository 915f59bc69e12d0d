use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpspecht")).args(args).output().expect("spawn cpspecht")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn certificate_of_a_level_three_pair() {
    let out = run(&["check-pair", "3,3,2,1|2|3,2", "5,3,2,1|2|3", "--e", "3", "--charge", "0,0,1"]);
    assert_eq!(code(&out), 0);
    let j = json(&out);
    assert_eq!(j["delta"], 6);
    assert_eq!(j["gamma"], 2);
    assert_eq!(j["components"]["b"], 5);
    assert_eq!(j["tail"], serde_json::json!([0, 1]));
}

#[test]
fn rejection_exit_code() {
    let out = run(&["check-pair", "2,1", "2,1", "--e", "3"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["rejected"], "gamma_zero");
    let out = run(&["check-pair", "1,1", "2", "--e", "3"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["rejected"], "residue_set_mismatch");
}

#[test]
fn input_errors() {
    for args in [
        &["check-pair", "[[1,1]", "2", "--e", "2"][..],
        &["check-pair", "1,1", "2", "--e", "1"],
        &["check-pair", "1|1", "2", "--e", "2"],
        &["check-pair", "1,a", "2"],
        &["hom-dim", "1,1", "2", "--coeff", "fp:4"],
        &["slice", "1,1", "2", "--cut", "0,1"],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 1, "{args:?}");
        assert_eq!(json(&out)["error"], "input_error", "{args:?}");
    }
}

#[test]
fn json_input_is_accepted() {
    let out = run(&["check-pair", "[[1,1]]", "[[2]]", "--e", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["delta"], 1);
}

#[test]
fn resource_cap_exit_code() {
    let out = run(&["build-hom", "∅|∅|2|3|1", "2|1|3|∅|∅", "--e", "0", "--charge", "0,4,0,0,4", "--cap-std", "10"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["error"], "resource_cap");
}

#[test]
fn split_run_pair_is_an_internal_failure() {
    let out = run(&["check-pair", "∅|2|3,2", "1|2|4", "--e", "3", "--charge", "0,0,1"]);
    assert_eq!(code(&out), 4);
    assert!(json(&out)["message"].as_str().unwrap().contains("t_1 is not standard"));
}

#[test]
fn built_map_verifies() {
    let out = run(&["build-hom", "1,1", "2", "--e", "2", "--verify"]);
    assert_eq!(code(&out), 0);
    let j = json(&out);
    assert_eq!(j["hom"]["degree"], 1);
    assert_eq!(j["hom"]["entries"], serde_json::json!([[0, 0, "1"]]));
}

#[test]
fn hom_dim_report() {
    let out = run(&["hom-dim", "1,1", "2", "--e", "2", "--format", "tsv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "1\t1"), "{text}");
}

#[test]
fn small_sweeps() {
    let out = run(&["sweep", "--n", "2", "--e", "2", "--format", "tsv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("1,1\t2\t1\t1"));

    let out = run(&["sweep", "--n", "0", "--e", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["pairs"], serde_json::json!([]));
}

#[test]
fn sweep_output_does_not_depend_on_workers() {
    let args = ["sweep", "--n", "4", "--e", "3", "--charge", "0,1", "--oracle"];
    let one = run(&[&args[..], &["--jobs", "1"]].concat());
    let four = run(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(json(&one)["mismatches"], 0);
    assert!(!json(&one)["pairs"].as_array().unwrap().is_empty());
}

#[test]
fn selftest_gate() {
    let ok = run(&["selftest", "--e", "3", "--shape", "2,1", "--shape", "3,1", "--instances", "20"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(json(&ok)["failed"], 0);
    let bad = run(&["selftest", "--e", "3", "--shape", "2,1", "--instances", "20", "--corrupt"]);
    assert_eq!(code(&bad), 4);
    assert_eq!(json(&bad)["failed"], 1);
}

#[test]
fn report_goes_to_a_file() {
    let dir = std::env::temp_dir().join(format!("cpspecht-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("info.json");
    let out = run(&["specht-info", "2,1", "--e", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let j: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(j["dim"], 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn slice_and_compose() {
    let out = run(&["slice", "1,1|1,1", "2|2", "--e", "2", "--charge", "0,0", "--cut", "1,2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["hom"]["degree"], 2);
    // with ρ = μ the hypothesis λ\ρ = μ\ρ already fails
    let out = run(&["compose", "1,1", "2", "2", "--e", "2"]);
    assert_eq!(code(&out), 1);
    assert!(json(&out)["message"].as_str().unwrap().contains("λ \\ ρ ≠ μ \\ ρ"));
}
