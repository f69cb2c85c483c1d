use std::process::{Command, Output};

use serde_json::Value;

fn laxcomma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laxcomma"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env("LAXCOMMA_ZERO_TIMING", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn comma_of_the_endpoints() {
    let o = laxcomma(&["comma", "examples/two.fincat", "d0", "d1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("objects (1): (*,*,u)"), "{}", stdout(&o));

    let o = laxcomma(&["comma", "--json", "examples/two.fincat", "d0", "d1"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["category"]["objects"], serde_json::json!(["(*,*,u)"]));
}

#[test]
fn broken_file_is_a_validation_failure() {
    let o = laxcomma(&["validate", "examples/broken.fincat"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 1") && err.contains("missing-composite"), "{err}");
    assert_eq!(laxcomma(&["validate", "examples/two.fincat"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(laxcomma(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(laxcomma(&["suite", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(laxcomma(&["suite", "coequalizer", "--max-elems", "9"]).status.code(), Some(2));
    assert_eq!(laxcomma(&["comma", "no/such/file.fincat", "a", "b"]).status.code(), Some(2));
    assert_eq!(laxcomma(&["kan", "examples/two.fincat", "d0", "d1"]).status.code(), Some(2));
}

#[test]
fn kan_and_kz_witness() {
    let o = laxcomma(&["kan", "--right", "examples/two.fincat", "d0", "d1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["found"], Value::Bool(true));
    let o = laxcomma(&["kz-witness", "examples/two.fincat", "id", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["holds"], Value::Bool(true));
}

#[test]
fn suite_json_report() {
    let path = std::env::temp_dir().join(format!("laxcomma-kz-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let o = laxcomma(&["suite", "kz-coherence", "--json", p]);
    assert_eq!(o.status.code(), Some(0));
    let first = std::fs::read_to_string(&path).unwrap();
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["totals"]["pass"], v["totals"]["all"]);
    assert_eq!(v["elapsed_ms"], 0);
    let at = |k: &str| first.find(&format!("\"{k}\"")).unwrap();
    assert!(at("suite") < at("totals") && at("totals") < at("records") && at("records") < at("elapsed_ms"));
    // identical on a second run
    laxcomma(&["suite", "kz-coherence", "--json", p]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
    let _ = std::fs::remove_file(&path);
}

#[test]
fn mutations_are_caught() {
    for (suite, m) in [("kz-coherence", "flip-gamma"), ("admissibility", "collapse-ambient")] {
        let o = laxcomma(&["suite", suite, "--mutate", m, "--json"]);
        assert_eq!(o.status.code(), Some(1), "{suite} under {m}");
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        let fails = v["records"].as_array().unwrap().iter().filter(|r| r["pass"] == false);
        assert!(fails.clone().count() > 0);
        assert!(fails.into_iter().all(|r| r["witness"].is_string()));
    }
    let o = laxcomma(&["suite", "coequalizer", "--max-elems", "2", "--mutate", "skip-quotient"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(laxcomma(&["suite", "coequalizer", "--max-elems", "2"]).status.code(), Some(0));
}

#[test]
fn command_blocks() {
    let o = laxcomma(&["run", "examples/two.fincat", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}
