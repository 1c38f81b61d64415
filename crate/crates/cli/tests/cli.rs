use std::process::{Command, Output};

use serde_json::Value;

fn verbal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verbal"))
        .args(args)
        .env_remove("VERBAL_BUDGET_TUPLES")
        .env_remove("VERBAL_BUDGET_INDEX")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

#[test]
fn commutator_width_of_a5() {
    let v = json(&verbal(&["width", "--group", "Alt(5)", "--word", "[x1,x2]"]));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["width"], 1);
    assert_eq!(v["layers"], serde_json::json!([1, 60]));
}

#[test]
fn silly_example() {
    let v = json(&verbal(&["silly", "--word", "x1^2 x2^2"]));
    assert_eq!(v["silly"], false);
    assert_eq!(v["divisor"], 2);
    let v = json(&verbal(&["silly", "--word", "x1^2 x2^3"]));
    assert_eq!(v["silly"], true);
}

#[test]
fn csv_output_has_documented_columns() {
    let out = verbal(&["width", "--group", "PSL(2,7)", "--word", "x1^2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("group,word,width,verbal_order,value_count,layers,strategy"));
    assert!(lines.next().unwrap().starts_with("\"PSL(2,7)\",x1^2,"));
}

#[test]
fn hypothesis_violation_exits_with_two() {
    let out = verbal(&["construct", "--fiber", "Alt(5)", "--top", "Alt(5)", "--word", "x1^2", "--tuple", "(0 1 2 3 4)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hypothesis"));
}

#[test]
fn budget_and_parse_errors_exit_with_one() {
    let out = verbal(&["width", "--group", "Alt(6)", "--word", "x1^2", "--budget-tuples", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget exceeded"));
    let out = Command::new(env!("CARGO_BIN_EXE_verbal"))
        .args(["width", "--group", "Alt(6)", "--word", "x1^2"])
        .env("VERBAL_BUDGET_TUPLES", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = verbal(&["width", "--group", "Alt(5", "--word", "x1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn solve_reports_verified_assignment() {
    let system = r#"{"kappa":["(0 1 2)","(0 1)(2 3)"],
        "twists":[{"perm":"(0 1)","auts":["inner:(0 1 2 3 4)","graph"]},
                  {"auts":["graph","inner:(0 1 2)"]},
                  {"perm":"(0 1)","auts":["inner:(1 2 3)","inner:(0 4)(1 2)"]}]}"#;
    let v = json(&verbal(&["solve", "--group", "Alt(5)", "--system", system, "--seed", "4"]));
    assert_eq!(v["verified"], true);
    assert!(!v["transcript"].as_array().unwrap().is_empty());
}

#[test]
fn coset_witness_reports_are_reproducible() {
    let args = ["coset-witness", "--word", "[x1,x2]", "--q", "13", "--m", "2", "--seed", "7"];
    let (a, b) = (verbal(&args), verbal(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["verification"]["ok"], true);
    assert_eq!(v["case"], "a");
}

#[test]
fn explicit_twists_and_forced_case() {
    let v = json(&verbal(&[
        "coset-witness", "--word", "x1^3", "--q", "9", "--m", "1",
        "--twists", r#"["0=field:1"]"#, "--case", "brute",
    ]));
    assert_eq!(v["case"], "brute");
    assert_eq!(v["regime"], "brute force requested");
}

#[test]
fn twisted_class_of_inner_automorphism() {
    let v = json(&verbal(&["twisted", "--group", "Alt(5)", "--aut", "inner:(0 1 2 3 4)"]));
    assert_eq!(v["class_size"], 12);
    assert_eq!(v["centralizer_order"], 5);
}

#[test]
fn report_goes_to_out_file() {
    let dir = std::env::temp_dir().join(format!("verbal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("values.csv");
    let out = verbal(&["values", "--group", "Alt(5)", "--word", "x1^30", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn acceptance_suite_runs_from_the_cli() {
    let out = verbal(&["verify", "--suite", "acceptance"]);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 12);
}
