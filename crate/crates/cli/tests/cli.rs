use std::path::PathBuf;
use std::process::{Command, Output};

fn dgreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgreg")).args(args).output().expect("binary runs")
}

fn tower(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "towers", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("dgreg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn json_reports_are_byte_identical() {
    let node = tower("node.dg");
    let a = dgreg(&["report", &node, "--json", "--seed", "9"]);
    let b = dgreg(&["report", &node, "--json", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "dgreg-report/1");
    assert_eq!(v["regularity"]["is_sequence_regular"], true);
    assert_eq!(v["hashes"]["h0_grevlex_basis"].as_str().unwrap().len(), 64);
}

#[test]
fn corpus_output_is_reproducible() {
    let run = || dgreg(&["corpus", "kos-amp", "--count", "12", "--seed", "5", "--json"]);
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["evaluated"], 12);
    assert_eq!(v["counterexamples"], 0);
}

#[test]
fn random_verification_replays_from_its_seed() {
    let seed = "5000011";
    let a = dgreg(&["verify", "gl", "--random", "--seed", seed, "--json"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["reproduce"], format!("dgreg verify gl --random --seed {seed}"));
    let doc = dgreg(&["sample", "gl", "--seed", seed]);
    let path = scratch("sample.dg", &stdout(&doc));
    let b = dgreg(&["verify", "gl", &path, "--seed", seed, "--json"]);
    assert_eq!(b.status.code(), Some(0), "{}", stdout(&b));
}

#[test]
fn diagnostics_exit_with_two() {
    let bad = scratch("bad.dg", "vars: x\ntrivext: 0 [x]\n");
    let o = dgreg(&["report", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("line 2, column 10"), "{}", stdout(&o));
    let o = dgreg(&["kappa", &tower("trivext.dg")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("not sequence-regular"));
    let o = dgreg(&["report", "/nonexistent/tower.dg"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn counterexample_tower_report() {
    let o = dgreg(&["report", &tower("trivext.dg"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let reg = &v["regularity"];
    assert_eq!(reg["seq_depth"], 0);
    assert_eq!(reg["is_local_cm"], false);
    assert_eq!(reg["h0_is_regular_local"], true);
    assert_eq!(reg["is_sequence_regular"], false);
}

#[test]
fn text_output_and_kappa() {
    let o = dgreg(&["kappa", &tower("node_qq.dg")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("K(A; y)"), "{}", stdout(&o));
}
