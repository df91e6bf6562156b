//! End-to-end tests of the binary: JSON I/O, exit codes, and a few
//! pipelines that chain subcommands.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bergelab(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bergelab"));
    cmd.args(args);
    cmd
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bergelab(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is valid JSON")
}

const C3: &str = r#"{"n":3,"edges":[[0,1],[0,2],[1,2]]}"#;

#[test]
fn shadow_from_stdin() {
    let out = run_with_stdin(&["shadow", "-H", "-"], r#"{"n":3,"R":[3],"edges":[[0,1,2]]}"#);
    let v = stdout_json(&out);
    assert_eq!(v["n"], 3);
    assert_eq!(v["edges"].as_array().unwrap().len(), 3);
    assert_eq!(v["covers"][0], serde_json::json!([0]));
}

#[test]
fn parse_errors_exit_with_code_2() {
    let out = run_with_stdin(&["shadow", "-H", "-"], r#"{"n":3,"R":[3],"edges":[[0,1,1]]}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    let out = run_with_stdin(
        &["classify", "-G", "-"],
        r#"{"n":2,"edges":[[0,1],[1,0]]}"#,
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exact_reports_value_and_witness() {
    let out = run_with_stdin(
        &["exact", "-n", "4", "-R", "3", "-G", "-", "--threads", "2"],
        C3,
    );
    let v = stdout_json(&out);
    assert_eq!(v["value"], 5);
    assert_eq!(v["status"], "exact");
    assert_eq!(v["witness"]["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn exhausted_budget_exits_3_with_partial_result() {
    let out = run_with_stdin(
        &["exact", "-n", "5", "-R", "3", "-G", "-", "--nodes", "2"],
        C3,
    );
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "lower-bound-only");
    assert!(v["value"].as_u64().unwrap() >= 3);
}

#[test]
fn berge_pipeline_on_constructed_family() {
    let out = bergelab(&["construct", "h1", "-n", "8"]).output().unwrap();
    let v = stdout_json(&out);
    let hypergraph = v["hypergraph"].to_string();
    assert_eq!(v["labels"]["a1"], 0);

    let berge = run_with_stdin(&["berge", "-H", "-", "-G", "/dev/null"], &hypergraph);
    // /dev/null is an empty graph file: parse error
    assert_eq!(berge.status.code(), Some(2));

    let tmp = std::env::temp_dir().join(format!("bergelab-h1-{}.json", std::process::id()));
    std::fs::write(&tmp, &hypergraph).unwrap();
    let absent = run_with_stdin(
        &["berge", "-H", tmp.to_str().unwrap(), "-G", "-"],
        C3,
    );
    assert_eq!(stdout_json(&absent)["outcome"], "absent");
    std::fs::remove_file(&tmp).unwrap();
}

#[test]
fn graph6_inputs_are_accepted() {
    let out = run_with_stdin(&["classify", "-G", "-", "--json"], "D?{\n");
    let v = stdout_json(&out);
    assert_eq!(v["degenerate"], true);
    // compact mode prints a single line
    assert_eq!(out.stdout.iter().filter(|&&b| b == b'\n').count(), 1);
}

#[test]
fn budget_strings_parse_or_reject() {
    let h1 = r#"{"n":3,"R":[3],"edges":[[0,1,2]]}"#;
    let tmp = std::env::temp_dir().join(format!("bergelab-budget-{}.json", std::process::id()));
    std::fs::write(&tmp, h1).unwrap();
    let path = tmp.to_str().unwrap();

    let ok = run_with_stdin(&["berge", "-H", path, "-G", "-", "--budget", "10s"], C3);
    assert_eq!(stdout_json(&ok)["outcome"], "absent");

    let bad = run_with_stdin(&["berge", "-H", path, "-G", "-", "--budget", "soon"], C3);
    assert_eq!(bad.status.code(), Some(2));
    std::fs::remove_file(&tmp).unwrap();

    // a family dense enough that one node cannot decide it
    let k4 = r#"{"n":4,"R":[3],"edges":[[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}"#;
    let tmp = std::env::temp_dir().join(format!("bergelab-budget4-{}.json", std::process::id()));
    std::fs::write(&tmp, k4).unwrap();
    let exhausted = run_with_stdin(
        &["berge", "-H", tmp.to_str().unwrap(), "-G", "-", "--nodes", "1"],
        C3,
    );
    assert_eq!(exhausted.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&exhausted.stdout).unwrap();
    assert_eq!(v["outcome"], "unknown");
    std::fs::remove_file(&tmp).unwrap();
}

#[test]
fn density_rule_and_value() {
    let out = run_with_stdin(&["density", "-G", "-", "-k", "3"], C3);
    let v = stdout_json(&out);
    assert_eq!(v["exact"], "1/2");
    assert_eq!(v["rule"], "three-uniform-half");
}

#[test]
fn construct_blowup_and_containment_agree() {
    let base = r#"{"n":3,"edges":[[0,1],[0,2],[1,2]]}"#;
    let tmp = std::env::temp_dir().join(format!("bergelab-base-{}.json", std::process::id()));
    std::fs::write(&tmp, base).unwrap();
    let base_path = tmp.to_str().unwrap();

    let blown = bergelab(&[
        "construct",
        "blowup",
        "--base",
        base_path,
        "--sizes",
        "2,2,2",
        "--matching-edges",
        "0-1",
    ])
    .output()
    .unwrap();
    let v = stdout_json(&blown);
    assert_eq!(v["edges"].as_array().unwrap().len(), 10);

    let contains = run_with_stdin(
        &[
            "blowup-contains",
            "-G",
            "-",
            "--base",
            base_path,
            "--sizes",
            "3,3,3",
            "--matching-edges",
            "0-1",
        ],
        C3,
    );
    assert_eq!(stdout_json(&contains)["found"], true);
    std::fs::remove_file(&tmp).unwrap();
}

#[test]
fn shrink_top_level_and_construct_alias_agree() {
    let input = r#"{"n":8,"R":[4],"edges":[[0,1,2,3],[4,5,6,7]]}"#;
    let a = run_with_stdin(&["shrink", "-H", "-", "-m", "3", "--derandomized"], input);
    let b = run_with_stdin(
        &["construct", "shrink", "-H", "-", "-m", "3", "--derandomized"],
        input,
    );
    assert_eq!(stdout_json(&a), stdout_json(&b));
    let missing_mode = run_with_stdin(&["shrink", "-H", "-", "-m", "3"], input);
    assert_eq!(missing_mode.status.code(), Some(2));
}

#[test]
fn thread_env_variable_is_honored() {
    let mut child = bergelab(&["exact", "-n", "4", "-R", "3", "-G", "-"])
        .env("BERGELAB_THREADS", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(C3.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(stdout_json(&out)["value"], 5);
}

#[test]
fn catalog_builds_and_reruns_identically() {
    let dir = std::env::temp_dir().join(format!("bergelab-cli-cat-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog.jsonl");
    let path_str = path.to_str().unwrap();
    let _ = std::fs::remove_file(&path);

    let first = bergelab(&["catalog", "--max-n", "3", "-o", path_str])
        .output()
        .unwrap();
    assert_eq!(stdout_json(&first)["records"], 7); // 1 + 2 + 4 classes
    let bytes1 = std::fs::read(&path).unwrap();

    let second = bergelab(&["catalog", "--max-n", "3", "-o", path_str])
        .output()
        .unwrap();
    assert!(second.status.success());
    let bytes2 = std::fs::read(&path).unwrap();
    assert_eq!(bytes1, bytes2);
    std::fs::remove_file(&path).unwrap();
}
