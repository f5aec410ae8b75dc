use std::process::{Command, Output};

fn gcseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcseq"))
        .args(args)
        .output()
        .expect("run gcseq")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn generate_prints_bits() {
    let out = gcseq(&["generate", "--p", "3", "--q", "5", "--abc", "100"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "000100110101111");
}

#[test]
fn generate_json_and_split_triple() {
    let out = gcseq(&["generate", "--p", "3", "--q", "5", "--a", "1", "--b", "0", "--c", "0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["bits"], "000100110101111");
    assert_eq!(v["p"], 3);
}

#[test]
fn invalid_parameters_exit_with_usage_error() {
    let out = gcseq(&["generate", "--p", "4", "--q", "5", "--abc", "100"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd prime"));

    let out = gcseq(&["generate", "--p", "3", "--q", "3", "--abc", "100"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("distinct"));

    let out = gcseq(&["generate", "--p", "3", "--q", "5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn autocorr_both_routes_agree() {
    let out = gcseq(&["autocorr", "--p", "3", "--q", "5", "--abc", "100", "--both"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("Ideal"), "{text}");
    assert!(text.contains("all 15 shifts match"), "{text}");
}

#[test]
fn autocorr_json_distribution() {
    let out = gcseq(&["autocorr", "--p", "3", "--q", "7", "--abc", "100", "--aggregate", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["family"], "ThreeValuedOptimal");
    assert_eq!(v["distribution"]["1"], 12);
    assert_eq!(v["distribution"]["-3"], 8);
}

#[test]
fn adic_reports_witness() {
    let out = gcseq(&["adic", "--p", "3", "--q", "13", "--abc", "010", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["d"], "7");
    assert_eq!(v["d_p"], "7");
    assert_eq!(v["d_q"], "1");
    assert_eq!(v["best_value"], false);
}

#[test]
fn verify_exit_codes() {
    let out = gcseq(&["verify", "--p", "5", "--q", "7", "--all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("4/4"));

    // Triples 001 and 110 have d = 31 here.
    let out = gcseq(&["verify", "--p", "3", "--q", "5", "--all"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("3/4"));

    let out = gcseq(&["verify", "--p", "3", "--q", "5", "--check", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = gcseq(&["sweep", "--max-n", "120", "--check", "theorem1,lemma1", "--format", "json", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let first = std::fs::read(&a).unwrap();
    assert_eq!(first, std::fs::read(&b).unwrap());
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&first).unwrap();
    assert_eq!(rows.len() % 8, 0);
}

#[test]
fn sweep_twin_primes_are_ideal() {
    let out = gcseq(&["sweep", "--gap", "2", "--p-max", "29", "--triple", "100", "--triple", "011", "--check", "theorem1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.split(',').nth(6) == Some("Ideal")), "{text}");
}

#[test]
fn sweep_cousin_primes_are_optimal() {
    let out = gcseq(&["sweep", "--gap", "4", "--p-max", "37", "--triple", "100", "--triple", "011", "--check", "theorem1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.split(',').nth(6) == Some("ThreeValuedOptimal")), "{text}");
}

#[test]
fn sweep_explicit_pairs() {
    let out = gcseq(&["sweep", "--pairs", "5:7,3:5", "--triple", "100", "--all"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines[1], "3,5,1,0,0,15,Ideal,-1,-1,-1,-1,1,1,1,1,1,true,4/4");
    assert!(lines[2].starts_with("5,7,1,0,0,35,Ideal"));
}
