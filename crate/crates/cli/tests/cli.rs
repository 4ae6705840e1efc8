use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn srs(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_srs"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn srs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn json(args: &[&str], stdin: Option<&str>) -> Value {
    let out = srs(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str], stdin: Option<&str>) -> i32 {
    srs(args, stdin).status.code().unwrap()
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

fn temp_file(name: &str, content: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("srs-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn analyze_reports_all_three_values() {
    let v = json(&["analyze", "--seq", "ACGAGCGCAGCGA"], None);
    assert_eq!(v["square"]["length"], 10);
    assert_eq!(v["cube"]["length"], 9);
    assert_eq!(v["lsrs"]["length"], 10);
    assert_eq!(v["cube"]["witness"]["blocks"][0]["exponent"], 3);
    assert!(v.get("lsrs_plus3").is_none(), "d = 5 skips LSRS+(3)");
}

#[test]
fn analyze_empty_input() {
    let v = json(&["analyze"], Some(""));
    assert_eq!(v["input"]["length"], 0);
    assert_eq!(v["square"]["length"], 0);
    assert_eq!(v["cube"]["length"], 0);
    assert_eq!(v["lsrs"]["length"], 0);
    assert_eq!(v["lsrs_plus3"]["feasible"], true);
}

#[test]
fn analyze_plus3_feasible() {
    let v = json(&["analyze", "--seq", "ababbcacc"], None);
    assert_eq!(v["lsrs_plus3"]["feasible"], true);
    assert_eq!(v["lsrs_plus3"]["length"], 7);
}

#[test]
fn analyze_reads_fasta_and_tokens() {
    let path = temp_file("seq.fa", ">example\nACGAG\nCGCAGCGA\n");
    let v = json(&["analyze", path.to_str().unwrap()], None);
    assert_eq!(v["input"]["length"], 13);
    let v = json(&["analyze", "--tokens"], Some("x1 y  x1\ty\n"));
    assert_eq!(v["lsrs"]["length"], 4);
}

#[test]
fn analyze_is_deterministic_across_runs_and_threads() {
    let a = without_timing(json(&["analyze", "--seq", "ACTACTTAGTACGT"], None));
    let b = without_timing(json(&["analyze", "--seq", "ACTACTTAGTACGT"], None));
    let c = without_timing(json(&["analyze", "--seq", "ACTACTTAGTACGT", "--threads", "4"], None));
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn analyze_exit_codes() {
    assert_eq!(code(&["analyze", "--seq", "a\u{1}b"], None), 2);
    let long = "a".repeat(70);
    assert_eq!(code(&["analyze", "--seq", &long], None), 3);
    assert_eq!(code(&["analyze", "--seq", &long, "--max-n", "80"], None), 0);
}

#[test]
fn tables_json_and_csv() {
    let v = json(&["tables", "--which", "q2", "--seq", "aa"], None);
    assert_eq!(v["cells"], serde_json::json!([[1, 1, 0], [1, 2, 2], [2, 2, 0]]));
    let v = json(&["tables", "--which", "q3", "--seq", "aaa"], None);
    assert_eq!(v["cells"][2], serde_json::json!([1, 3, 3]));
    let out = srs(&["tables", "--which", "q2", "--format", "csv", "--seq", "aab"], None);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "i\\j,1,2,3\n1,0,2,2\n2,,0,0\n3,,,0\n");
    let v = json(&["tables", "--which", "q3", "--seq", "ACGAGCGCAGCGA"], None);
    let last = v["cells"].as_array().unwrap().iter().find(|c| c[0] == 1 && c[1] == 13).unwrap();
    assert_eq!(last[2], 9);
}

#[test]
fn reduce_triangle_with_witness() {
    let graph = temp_file("k3.txt", "3 3\n0 1\n0 2\n1 2\n");
    let coloring = temp_file("k3.col", "1 2 3\n");
    let v = json(
        &["reduce", "--from", "coloring", "--to", "string", graph.to_str().unwrap(), "--witness", coloring.to_str().unwrap()],
        None,
    );
    assert_eq!(v["string"]["length"], 104);
    assert_eq!(v["witness"]["validation"], "ok");
    assert_eq!(v["witness"]["covers_alphabet"], true);
    assert_eq!(v["witness"]["decomposition"]["total_length"], 74);
    let bad = temp_file("bad.col", "1 1 3\n");
    assert_eq!(
        code(&["reduce", "--from", "coloring", "--to", "string", graph.to_str().unwrap(), "--witness", bad.to_str().unwrap()], None),
        2
    );
}

#[test]
fn reduce_sat_round_trip() {
    let sat = json(&["reduce", "--from", "coloring", "--to", "sat"], Some("2 1\n0 1\n"));
    assert!(sat["dimacs"].as_str().unwrap().contains("p cnf 6"));
    let doc = serde_json::to_string(&sat["sat"]).unwrap();
    let s = json(&["reduce", "--from", "sat", "--to", "string"], Some(&doc));
    let direct = json(&["reduce", "--from", "coloring", "--to", "string"], Some("2 1\n0 1\n"));
    assert_eq!(s["string"], direct["string"]);
}

#[test]
fn reduce_single_vertex_has_no_separators() {
    let v = json(&["reduce", "--from", "coloring", "--to", "string"], Some("1 0\n"));
    let tokens = v["string"]["tokens"].as_str().unwrap();
    assert!(!tokens.split(' ').any(|t| t.starts_with('g')), "{tokens}");
}

#[test]
fn reduce_rejects_bad_input() {
    assert_eq!(code(&["reduce", "--from", "coloring", "--to", "sat"], Some("2 1\n0 5\n")), 2);
    assert_eq!(code(&["reduce", "--from", "sat", "--to", "string"], Some("{")), 2);
}

#[test]
fn reduce_writes_output_dir() {
    let dir = std::env::temp_dir().join(format!("srs-cli-out-{}", std::process::id()));
    json(&["reduce", "--from", "coloring", "--to", "string", "--out-dir", dir.to_str().unwrap()], Some("2 1\n0 1\n"));
    assert!(dir.join("instance.tokens").exists());
    assert!(dir.join("legend.json").exists());
}

#[test]
fn oracle_values() {
    // Exhaustive search agrees with the solver on 12 for this string.
    assert_eq!(json(&["oracle", "lsrs", "--seq", "ACTACTTAGTACGT"], None)["value"], 12);
    assert_eq!(json(&["oracle", "lsrs-plus", "--seq", "ab"], None)["value"], "infeasible");
    assert_eq!(json(&["oracle", "lsrs-plus", "--seq", "abab"], None)["value"], 4);
    assert_eq!(json(&["oracle", "q3", "--seq", "aaa"], None)["value"], 3);
    assert_eq!(code(&["oracle", "lsrs", "--seq", &"ab".repeat(10)], None), 3);
}

#[test]
fn bench_rows_are_reported() {
    let v = json(&["bench", "--alg", "lsrs", "--sizes", "6,8", "--seed", "3", "--min-ms", "1"], None);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["n"], 6);
    assert!(v["slope"].as_f64().unwrap().is_finite());
    assert_eq!(code(&["bench", "--alg", "q2", "--sizes", "8"], None), 2);
}
