use std::process::Command;

use serde_json::Value;

fn galsplit() -> Command {
    Command::new(env!("CARGO_BIN_EXE_galsplit"))
}

fn report_without_timing(path: &std::path::Path) -> Value {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    for case in v["cases"].as_array_mut().unwrap() {
        case.as_object_mut().unwrap().remove("elapsed_ms");
    }
    v
}

#[test]
fn verify_all_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.json"), dir.path().join("b.json")];
    for p in &paths {
        let out = galsplit()
            .args(["verify", "--suite", "all", "--seed", "42", "--json"])
            .arg(p)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    }
    let (a, b) = (report_without_timing(&paths[0]), report_without_timing(&paths[1]));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a["summary"]["falsified"], 0);
    assert_eq!(a["seed"], 42);
    let total = a["summary"]["total"].as_u64().unwrap();
    assert_eq!(total as usize, a["cases"].as_array().unwrap().len());
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = galsplit().args(["verify", "--suite", "nosuch"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn bad_group_spec_is_an_error() {
    let out = galsplit()
        .args(["splitcheck", "--group", "gl2:6", "--index", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn primesearch_prints_the_first_primes() {
    let out = galsplit()
        .args(["primesearch", "-n", "4", "-r", "1", "--limit", "40"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "5 13 29 37");
}

#[test]
fn matrix_group_suite_passes_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = galsplit()
        .args(["verify", "--suite", "section2", "--json"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = report_without_timing(&path);
    assert_eq!(v["suite"], "section2");
}

#[test]
fn corpus_file_overrides_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.json");
    std::fs::write(&corpus, r#"{"derived_q": [3], "uniqueness": [], "cyclic_transversal": [[7, 2]],
        "witness_p": [], "simplicity_p": [], "psi": [], "prime_search": []}"#)
        .unwrap();
    let json = dir.path().join("out.json");
    let out = galsplit()
        .args(["verify", "--suite", "section2", "--corpus"])
        .arg(&corpus)
        .arg("--json")
        .arg(&json)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report_without_timing(&json)["summary"]["total"], 2);
}

#[test]
fn sdp_spec_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"factors": [{"group": "sym:3", "subgroup": "derived"}, {"group": "sym:3", "subgroup": "derived"}]}"#,
    )
    .unwrap();
    let out = galsplit().args(["sdp", "--spec"]).arg(&spec).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("verified"));
}

#[test]
fn induce_and_repalg_commands_run() {
    let runs: [&[&str]; 4] = [
        &["induce", "--group", "cyclic:4", "--subgroup", "gens:2", "--rep", "char:2", "--ell", "5"],
        &["repalg", "iso", "--group", "sl2:3", "--rep", "natural", "--rep", "natural"],
        &["repalg", "pair", "--group", "gl2:3", "--subgroup", "sl2", "--rep", "natural"],
        &["repalg", "pglpsl", "--p", "5"],
    ];
    for args in runs {
        let out = galsplit().args(args).output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn failing_statement_exits_with_two() {
    // Unequal scalar characters: the direct-sum projective image is not the tuple group.
    let out = galsplit()
        .args(["repalg", "dsum", "--group", "cyclic:4", "--rep", "char:2", "--rep", "trivial", "--ell", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
