use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fuss-forest"));
    c.env_remove("FUSS_FOREST_MAX_N");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn number_prints_exact_values() {
    assert_eq!(stdout(&run(&["number", "--k", "2", "--n", "4"])), "14\n");
    assert_eq!(stdout(&run(&["number", "--k", "3", "--n", "0"])), "1\n");
    assert_eq!(
        stdout(&run(&["number", "--k", "3", "--n", "2", "--m", "2"])),
        "7\n"
    );
    assert_eq!(
        stdout(&run(&["number", "--k", "2", "--n", "60"])),
        "1583850964596120042686772779038896\n"
    );
}

#[test]
fn number_rejects_small_k() {
    let o = run(&["number", "--k", "1", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["number", "--k", "3", "--n", "3", "--m", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_binary_sexp() {
    let o = run(&["enumerate", "--family", "binary", "--n", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "((L L) L)\n(L (L L))\n");
    assert_eq!(stderr(&o), "count: 2\n");
    let o = run(&["enumerate", "--family", "binary", "--n", "8"]);
    assert_eq!(stdout(&o).lines().count(), 1430);
}

#[test]
fn enumerate_colored_ternary_by_p() {
    let o = run(&[
        "enumerate",
        "--family",
        "colored-ternary",
        "--n",
        "2",
        "--p",
        "1",
    ]);
    assert_eq!(stdout(&o), "(0: 0 0 0)\n");
    let o = run(&[
        "enumerate",
        "--family",
        "colored-ternary",
        "--n",
        "3",
        "--p",
        "1",
    ]);
    assert_eq!(stdout(&o).lines().count(), 4);
    let o = run(&["enumerate", "--family", "colored-ternary", "--n", "3"]);
    assert_eq!(stderr(&o), "count: 5\n");
}

#[test]
fn enumerate_json_and_forests() {
    let o = run(&[
        "enumerate",
        "--family",
        "binary",
        "--n",
        "3",
        "--format",
        "json",
    ]);
    let v: Vec<String> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.len(), 5);
    assert_eq!(v[0], "(((L L) L) L)");

    let o = run(&[
        "enumerate",
        "--family",
        "binary",
        "--n",
        "2",
        "--m",
        "2",
        "--format",
        "json",
    ]);
    let v: Vec<Vec<String>> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.len(), 5);
    assert!(v.iter().all(|f| f.len() == 2));

    let o = run(&[
        "enumerate",
        "--family",
        "colored-ternary",
        "--n",
        "1",
        "--m",
        "2",
    ]);
    assert_eq!(stdout(&o), "1\n0\n\n0\n1\n");
}

#[test]
fn enumerate_dot_names_each_tree() {
    let o = run(&[
        "enumerate",
        "--family",
        "binary",
        "--n",
        "2",
        "--format",
        "dot",
    ]);
    let text = stdout(&o);
    assert!(text.contains("digraph tree0 {"));
    assert!(text.contains("digraph tree1 {"));
    assert!(!text.contains("tree2"));
}

#[test]
fn enumerate_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trees.txt");
    let o = run(&[
        "enumerate",
        "--family",
        "binary",
        "--n",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 5);
}

#[test]
fn enumerate_cap_and_overrides() {
    let o = run(&["enumerate", "--family", "binary", "--n", "13"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cap"));

    let o = bin()
        .args(["enumerate", "--family", "binary", "--n", "5"])
        .env("FUSS_FOREST_MAX_N", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));

    let o = bin()
        .args([
            "enumerate",
            "--family",
            "binary",
            "--n",
            "5",
            "--max-n",
            "5",
        ])
        .env("FUSS_FOREST_MAX_N", "4")
        .output()
        .unwrap();
    assert!(o.status.success());

    let o = bin()
        .args(["enumerate", "--family", "binary", "--n", "1"])
        .env("FUSS_FOREST_MAX_N", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_rejects_p_for_binary() {
    let o = run(&["enumerate", "--family", "binary", "--n", "2", "--p", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn map_examples() {
    assert_eq!(
        stdout(&run_stdin(&["map", "--direction", "t2b"], "2\n")),
        "(L (L L))\n"
    );
    assert_eq!(
        stdout(&run_stdin(&["map", "--direction", "b2t"], "L\n")),
        "0\n"
    );
    assert_eq!(
        stdout(&run_stdin(
            &["map", "--direction", "b2t"],
            "(L (((L (L L)) L) (L ((L L) L))))\n"
        )),
        "(1: 2 0 (1: 0 0 0))\n"
    );
}

#[test]
fn map_round_trip_is_byte_exact() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("ternary.txt");
    let mid = dir.path().join("binary.txt");
    let back = dir.path().join("back.txt");
    let o = run(&[
        "enumerate",
        "--family",
        "colored-ternary",
        "--n",
        "6",
        "--out",
        src.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = run(&[
        "map",
        "--direction",
        "t2b",
        "--in",
        src.to_str().unwrap(),
        "--out",
        mid.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = run(&[
        "map",
        "--direction",
        "b2t",
        "--in",
        mid.to_str().unwrap(),
        "--out",
        back.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(fs::read(&src).unwrap(), fs::read(&back).unwrap());

    let mut binary: Vec<String> = fs::read_to_string(&mid)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    let mut all: Vec<String> = stdout(&run(&["enumerate", "--family", "binary", "--n", "6"]))
        .lines()
        .map(String::from)
        .collect();
    binary.sort();
    all.sort();
    assert_eq!(binary, all);
}

#[test]
fn map_forest_files_keep_blank_lines() {
    let forests = stdout(&run(&[
        "enumerate",
        "--family",
        "colored-ternary",
        "--n",
        "2",
        "--m",
        "2",
    ]));
    let mapped = stdout(&run_stdin(&["map", "--direction", "t2b"], &forests));
    assert_eq!(mapped.lines().count(), forests.lines().count());
    let back = stdout(&run_stdin(&["map", "--direction", "b2t"], &mapped));
    assert_eq!(back, forests);
}

#[test]
fn map_error_codes() {
    let o = run_stdin(&["map", "--direction", "b2t"], "L\n(L L\n");
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("line 2"));
    assert!(stderr(&o).contains("byte offset 6"));

    let o = run_stdin(&["map", "--direction", "b2t"], "(0: 0 0 0)\n");
    assert_eq!(o.status.code(), Some(5));
    let o = run_stdin(&["map", "--direction", "t2b"], "(L L)\n");
    assert_eq!(o.status.code(), Some(5));
    let o = run_stdin(&["map", "--direction", "t2b"], "(1: 0 0)\n");
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn verify_small_suite_text_and_json() {
    let o = run(&[
        "verify",
        "--suite",
        "identities",
        "--n-max",
        "10",
        "--m-max",
        "2",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("verify suite=identities\n"));
    assert!(text.contains("overall: PASS"));
    assert!(!text.contains(" ms]"));

    let o = run(&[
        "verify", "--suite", "series", "--n-max", "8", "--m-max", "2", "--order", "16", "--json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suite"], "series");
    assert_eq!(v["pass"], true);
    assert_eq!(v["failures"], 0);
    assert!(v.get("elapsed_ms").is_none());
    let checks = v["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["name"] == "g-equals-c2" && c["parameters"]["order"] == 16));
    assert!(checks.iter().all(|c| c["first_failure"].is_null()));
}

#[test]
fn verify_timings_are_opt_in() {
    let o = run(&[
        "verify",
        "--suite",
        "counts",
        "--n-max",
        "4",
        "--json",
        "--timings",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["elapsed_ms"].is_u64());
    assert!(v["checks"][0]["elapsed_ms"].is_u64());
}

#[test]
fn verify_respects_cap() {
    let o = run(&["verify", "--suite", "bijection", "--n-max", "13"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&[
        "verify",
        "--suite",
        "bijection",
        "--n-max",
        "5",
        "--m-max",
        "2",
        "--max-n",
        "5",
    ]);
    assert!(o.status.success());
}

#[test]
fn verify_output_is_deterministic() {
    let args = [
        "verify", "--suite", "all", "--n-max", "5", "--m-max", "2", "--order", "12", "--json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
