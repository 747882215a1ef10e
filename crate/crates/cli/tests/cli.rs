//! End-to-end CLI behavior: round-trips, exit codes, determinism.

use std::process::{Command, Output};

fn largeness(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_largeness"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).to_string()
}

#[test]
fn presentation_round_trip_through_construct() {
    for args in [
        vec!["construct", "bs", "2", "3"],
        vec!["construct", "cmn", "1", "2"],
        vec!["construct", "mapping-torus", "y, z, x y"],
        vec!["construct", "double", "y, z, x y"],
        vec![
            "construct", "higman", "--w", "[t,a^-1]", "--v", "[a,t]", "--k", "1", "--m", "1",
            "--n", "2",
        ],
    ] {
        let out = largeness(&args);
        assert!(out.status.success(), "{:?}: {:?}", args, out);
        let text = stdout(&out);
        let p = largeness_core::text::parse_presentation(text.trim()).unwrap();
        let again = largeness_core::text::presentation_to_string(&p);
        assert_eq!(text.trim(), again, "round trip failed for {:?}", args);
    }
}

#[test]
fn parse_errors_exit_1() {
    let out = largeness(&["analyze", "< a, t | t b >"]);
    assert_eq!(out.status.code(), Some(1));
    let out = largeness(&["analyze", "< a, t | t a"]);
    assert_eq!(out.status.code(), Some(1));
    let out = largeness(&["verify", "/nonexistent/path.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn resource_limits_exit_2() {
    // 13 generators with 13 relators: the minor enumeration cap applies
    let gens: Vec<String> = (1..=13).map(|i| format!("g{}", i)).collect();
    let rels: Vec<String> = (1..=13)
        .map(|i| format!("[g{}, g{}]", i, i % 13 + 1))
        .collect();
    let pres = format!("< {} | {} >", gens.join(", "), rels.join(", "));
    let chi = "1,0,0,0,0,0,0,0,0,0,0,0,0";
    let out = largeness(&["alex", &pres, "--chi", chi]);
    assert_eq!(out.status.code(), Some(2), "{:?}", out);
}

#[test]
fn verify_round_trip_and_tamper_detection() {
    let out = largeness(&["analyze", "< a, t | t a^2 t^-1 a^-4 >", "--json"]);
    assert!(out.status.success());
    let json = stdout(&out);
    let dir = std::env::temp_dir().join("largeness-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bs24.json");
    std::fs::write(&path, &json).unwrap();
    let out = largeness(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "true");
    // tamper: claim prime 3 instead of 2
    let tampered = json.replace("\"prime\": 2", "\"prime\": 3");
    assert_ne!(tampered, json);
    let path2 = dir.join("bs24-tampered.json");
    std::fs::write(&path2, &tampered).unwrap();
    let out = largeness(&["verify", path2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout(&out).trim(), "false");
}

#[test]
fn analyze_json_is_deterministic() {
    let a = largeness(&["analyze", "< a, t | t a^2 t^-1 a^-3 >", "--json"]);
    let b = largeness(&["analyze", "< a, t | t a^2 t^-1 a^-3 >", "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn census_is_deterministic_and_sound() {
    let a = largeness(&[
        "census", "--length", "1", "--bound", "4", "--samples", "40", "--seed", "9", "--json",
    ]);
    let b = largeness(&[
        "census", "--length", "1", "--bound", "4", "--samples", "40", "--seed", "9", "--json",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["samples"], 40);
    let large = doc["certified_large"].as_u64().unwrap();
    let unknown = doc["unknown"].as_u64().unwrap();
    assert_eq!(large + unknown, 40);
    // empty census
    let empty = largeness(&[
        "census", "--length", "1", "--bound", "4", "--samples", "0", "--seed", "9", "--json",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&empty.stdout).unwrap();
    assert_eq!(doc["samples"], 0);
}

#[test]
fn verify_reads_stdin_pipe() {
    use std::io::Write;
    use std::process::Stdio;
    let out = largeness(&["analyze", "< a, t | t a^2 t^-1 a^-4 >", "--json"]);
    assert!(out.status.success());
    let mut child = Command::new(env!("CARGO_BIN_EXE_largeness"))
        .args(["verify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(&out.stdout).unwrap();
    let result = child.wait_with_output().unwrap();
    assert_eq!(result.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&result.stdout).trim(), "true");
}

#[test]
fn higman_unit_gap_enforced() {
    let ok = largeness(&[
        "construct", "higman", "--w", "a", "--v", "t", "--k", "1", "--m", "1", "--n", "2",
        "--unit-gap",
    ]);
    assert!(ok.status.success());
    let bad = largeness(&[
        "construct", "higman", "--w", "a", "--v", "t", "--k", "1", "--m", "2", "--n", "5",
        "--unit-gap",
    ]);
    assert_eq!(bad.status.code(), Some(3));
    // without the flag any integers are allowed
    let free = largeness(&[
        "construct", "higman", "--w", "a", "--v", "t", "--k", "1", "--m", "2", "--n", "5",
    ]);
    assert!(free.status.success());
}

#[test]
fn analyze_reads_presentation_files() {
    let dir = std::env::temp_dir().join("largeness-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("free2.pres");
    std::fs::write(&path, "< a, b | >\n").unwrap();
    let out = largeness(&["analyze", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("LargeCertified"));
}

#[test]
fn json_schema_keys_present() {
    let out = largeness(&["analyze", "< a, t | t a^2 t^-1 a^-4 >", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["status", "certificate", "evidence", "seed", "versions", "input_presentation"] {
        assert!(doc.get(key).is_some(), "missing key {}", key);
    }
    let cert = &doc["certificate"];
    for key in ["kind", "chi", "prime", "subgroup_tables"] {
        assert!(cert.get(key).is_some(), "missing certificate key {}", key);
    }
    let ev = &doc["evidence"];
    for key in ["max_index", "chi_set", "scans"] {
        assert!(ev.get(key).is_some(), "missing evidence key {}", key);
    }
}
