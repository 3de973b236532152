use std::path::Path;
use std::process::{Command, Output, Stdio};
use std::io::Write;

fn hankel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel"))
        .args(args)
        .env_remove("HANKEL_MODE")
        .output()
        .expect("binary runs")
}

fn hankel_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hankel"))
        .args(args)
        .env_remove("HANKEL_MODE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).expect("golden file")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn gen_then_decompose_pipeline() {
    let gen = hankel(&["gen", "--preset", "ex35"]);
    assert!(gen.status.success());
    assert_eq!(stdout(&gen), golden("ex35_tensor.json"));
    let dec = hankel_stdin(&["decompose"], &gen.stdout);
    assert!(dec.status.success(), "{}", stderr(&dec));
    assert_eq!(stdout(&dec), golden("ex35_decomposition.json"));
    let v: serde_json::Value = serde_json::from_slice(&dec.stdout).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn output_is_byte_stable() {
    let a = hankel(&["decompose", "--preset", "random", "-n", "4", "-m", "3", "--seed", "7"]);
    let b = hankel(&["decompose", "--preset", "random", "-n", "4", "-m", "3", "--seed", "7"]);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_goldens() {
    let o = hankel(&["vrank", "--preset", "ex36"]);
    assert_eq!(stdout(&o), golden("ex36_vrank.txt"));
    assert!(stdout(&o).contains("vrank = 5"));
    let o = hankel(&["koszul", "--preset", "ex55", "-p", "1", "--dump-matrix"]);
    assert_eq!(stdout(&o), golden("ex55_koszul.txt"));
    let o = hankel(&["classify", "--preset", "ex47", "-m", "4"]);
    assert_eq!(stdout(&o), golden("ex47_m4_report.json"));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["case"], "even_ii");
    assert_eq!(v["vrank"], 7);
}

#[test]
fn lemma_a1_reports_pass() {
    let o = hankel(&["lemma-a1", "-n", "6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("lemma_a1_n6.txt"));
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    assert_eq!(row, "6 3 20 20 20 80 60 pass");
    assert_eq!(hankel(&["lemma-a1", "-n", "11"]).status.code(), Some(1));
}

#[test]
fn verify_detects_perturbation_and_writes_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.json");
    let d = dir.path().join("d.json");
    let ts = t.to_str().unwrap();
    let ds = d.to_str().unwrap();
    assert!(hankel(&["gen", "--preset", "ex36", "-o", ts]).status.success());
    assert!(hankel(&["decompose", "-i", ts, "-o", ds]).status.success());
    let ok = hankel(&["verify", "-i", ts, "-d", ds]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("residual = 0e0"));
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 2, "no temporary files left behind");

    let text = std::fs::read_to_string(&d).unwrap().replacen("\"1/5\"", "\"1/4\"", 1);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, text).unwrap();
    let o = hankel(&["verify", "-i", ts, "-d", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("residual = "));
}

#[test]
fn exit_codes() {
    let o = hankel_stdin(&["vrank"], b"{\n \"n\": 3,\n \"m\": x }");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3, column"), "{}", stderr(&o));
    assert_eq!(hankel(&["gen", "--preset", "nope"]).status.code(), Some(2));
    assert_eq!(hankel(&["vrank", "-i", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(hankel(&["frobnicate"]).status.code(), Some(2));
    let o = hankel(&["koszul", "--preset", "ex35", "-p", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error["));
}

#[test]
fn mode_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_hankel"))
        .args(["gen", "--preset", "ex35"])
        .env("HANKEL_MODE", "float")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mode"], "float");
    assert_eq!(v["h"][2], serde_json::json!([1.0, 0.0]));
    let o = hankel(&["decompose", "--preset", "ex36", "--mode", "float"]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn bench_generic_small_grid() {
    let o = hankel(&["bench-generic", "--trials", "5", "--n-max", "3", "--m-max", "3", "--seed", "1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.lines().any(|l| l == "3 3 5 4 5"), "{s}");
    assert!(s.ends_with("all_match = true\n"));
}
