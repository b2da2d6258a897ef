use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_twistlab")).args(args).envs(env.iter().copied()).output().expect("binary runs");
    let doc = serde_json::from_slice(&out.stdout).expect("stdout is one JSON document");
    (out.status.code().unwrap(), doc, String::from_utf8_lossy(&out.stderr).into_owned())
}

fn run(args: &[&str]) -> (i32, Value) {
    let (code, doc, _) = run_env(args, &[]);
    (code, doc)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("twistlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn fusion_table_at_three() {
    let (code, doc) = run(&["verlinde", "fusion", "--p", "3"]);
    assert_eq!(code, 0);
    // M̄₂ ⊗ M̄₂ = M̄₁
    assert_eq!(doc["result"]["table"][1][1]["multiplicities"], serde_json::json!([1, 0]));
    assert_eq!(doc["config"]["max_tensor_entries"], 5_000_000);
}

#[test]
fn twist_of_trivial_k3() {
    let (code, doc) = run(&["frob", "plus", "--module", &data("trivial_k3.json"), "--j", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["dim"], 3);
    assert_eq!(doc["result"]["shortcut_used"], "Q_j");
    assert_eq!(doc["result"]["realization"]["basis"].as_array().unwrap().len(), 3);
}

#[test]
fn emitted_modules_revalidate() {
    let (code, doc) = run(&["op", "sym", "--module", &data("m2_c3.json"), "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["dim"], 3);
    let path = scratch("sym2.json");
    std::fs::write(&path, doc["result"]["module"].to_string()).unwrap();
    let (code, v) = run(&["module", "validate", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["validation_state"], "full-table");
    // Sym^2 M_2 = M_3 over C_3: one fixed line, no trivial summand
    let (_, h0) = run(&["op", "h0", "--module", path.to_str().unwrap()]);
    assert_eq!(h0["result"]["dim"], 1);
    let (_, t) = run(&["op", "triv", "--module", path.to_str().unwrap()]);
    assert_eq!(t["result"]["dim"], 0);
}

#[test]
fn output_file_matches_stdout() {
    let path = scratch("klein.json");
    let (code, doc) = run(&["op", "triv", "--module", &data("klein_four.json"), "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, doc);
    assert_eq!(doc["config"]["output"], path.to_str().unwrap());
}

#[test]
fn exit_codes() {
    // p = 2 has no skew twist
    let (code, doc, err) = run_env(&["frob", "minus", "--module", &data("trivial_k3.json")], &[]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "input");
    assert!(!err.is_empty());
    let (code, _) = run(&["module", "validate", "no/such/file.json"]);
    assert_eq!(code, 2);
    let (code, doc) = run(&["op", "sym", "--module", &data("klein_four.json"), "--n", "3", "--max-entries", "10"]);
    assert_eq!(code, 3);
    assert_eq!(doc["error"]["kind"], "resource");
    let (code, doc, _) = run_env(&["op", "sym", "--module", &data("klein_four.json"), "--n", "3"], &[("TWISTLAB_MAX_ENTRIES", "10")]);
    assert_eq!(code, 3);
    assert_eq!(doc["config"]["max_tensor_entries"], 10);
    let (code, _) = run(&["check", "run", "no_such_check"]);
    assert_eq!(code, 2);
}

#[test]
fn check_verdicts() {
    let (code, doc) = run(&["check", "locally-free", "--module", &data("super_k11_p3.json")]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["status"], "fails");
    let (code, doc) = run(&["check", "theta", "--module", &data("m2_c3.json"), "--sub-basis", "[[1,0]]", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["holds"], true);
    let (code, doc) = run(&["check", "alpha-power", "--module", &data("m2_c3.json"), "--vector", "[1,0]", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["nonzero"], true);
    let (code, _) = run(&["check", "alpha-power", "--module", &data("m2_c3.json"), "--vector", "[0,1]", "--n", "3"]);
    assert_eq!(code, 2, "e2 is not invariant");
}

#[test]
fn failures_replay_through_the_cli() {
    let (code, doc) = run(&["check", "run", "thmsto_rect", "--p", "3"]);
    assert_eq!(code, 1);
    let failure = &doc["result"]["failures"][0];
    let path = scratch("failure.json");
    std::fs::write(&path, failure.to_string()).unwrap();
    let (code, again) = run(&["check", "run", "thmsto_rect", "--replay", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(again["result"]["instances_run"], 1);
    assert_eq!(again["result"]["failures"][0]["reason"], failure["reason"]);
    assert_eq!(again["result"]["failures"][0]["descriptor"], failure["descriptor"]);
}

#[test]
fn explore_is_labeled_evidence() {
    let m = data("m2_c3.json");
    let (code, doc) = run(&["explore", "frin-decomp", "--module", &m, "--other", &m]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["label"], "EVIDENCE");
    assert!(doc["result"]["evidence"]["monoidal"]["dims_agree"].is_boolean());
    let (code, doc) = run(&["explore", "frplus-frminus-composite", "--module", &m]);
    assert_eq!(code, 0);
    assert!(doc["result"]["evidence"]["both_vanish"].is_boolean());
}

#[test]
fn ver_operations() {
    let (code, doc) = run(&["verlinde", "semisimplify", "--module", &data("m2_c3.json")]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["multiplicities"], serde_json::json!([0, 1]));
    let (_, doc) = run(&["verlinde", "fr-plus", "--module", &data("m2_c3.json")]);
    assert_eq!(doc["result"]["multiplicities"], serde_json::json!([0, 0]));
    let (_, doc) = run(&["verlinde", "sym", "--p", "5", "--i", "3", "--n", "3"]);
    assert_eq!(doc["result"]["multiplicities"], serde_json::json!([0, 0, 0, 0]));
}

#[test]
fn brackets_and_specht() {
    let (code, doc) = run(&["bracket", "one", "--module", &data("super_k11_p3.json")]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["value"], 1);
    let (_, doc) = run(&["bracket", "bar", "--module", &data("super_k11_p3.json")]);
    assert_eq!(doc["result"]["value"], 1);
    let (code, doc) = run(&["op", "specht", "--p", "3", "--partition", "2,1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["dim"], 2);
}
