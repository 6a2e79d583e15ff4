//! Black-box CLI tests: golden outputs, exit codes, determinism across
//! cache states, and JSON schema round-trips.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_ambicard")
}

struct Output {
    stdout: String,
    stderr: String,
    code: i32,
}

fn run_in(cache_dir: &Path, args: &[&str]) -> Output {
    let out = Command::new(binary())
        .arg("--cache-dir")
        .arg(cache_dir)
        .args(args)
        .output()
        .expect("binary runs");
    Output {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap_or(-1),
    }
}

fn run(args: &[&str]) -> Output {
    let tmp = TempDir::new().unwrap();
    run_in(tmp.path(), args)
}

fn write_file(dir: &Path, name: &str, value: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path
}

fn s3_cube_space() -> Value {
    let op: Vec<Vec<u16>> = (0..8u16).map(|a| (0..8).map(|b| a ^ b).collect()).collect();
    let bitperm = |sigma: [u16; 3]| -> Vec<u16> {
        (0..8u16)
            .map(|v| {
                let mut w = 0;
                for i in 0..3 {
                    if v >> i & 1 == 1 {
                        w |= 1 << sigma[i as usize];
                    }
                }
                w
            })
            .collect()
    };
    json!({
        "group": {"family": "S", "n": 3},
        "homotopy": [{
            "level": 2,
            "size": 8,
            "op_table": op,
            "action": [bitperm([1, 0, 2]), bitperm([1, 2, 0])],
        }]
    })
}

#[test]
fn golden_card_bg_outputs() {
    assert_eq!(
        run(&["card", "bg", "--family", "S", "--n", "3", "--prime", "2"]).stdout,
        "x - 1/3\n"
    );
    assert_eq!(
        run(&["card", "bg", "--family", "C", "--n", "5", "--prime", "3"]).stdout,
        "1/5\n"
    );
    // the paper formula 1/(p−1)²·x − 1/((p+1)(p−1)²) at p = 3
    assert_eq!(
        run(&["card", "bg", "--family", "GL2", "--n", "3", "--prime", "3"]).stdout,
        "1/4*x - 1/16\n"
    );
}

#[test]
fn group_info_counts() {
    let out = run(&["group", "info", "--family", "C", "--n", "7"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("classes: 2"));

    let out = run(&["group", "info", "--family", "S", "--n", "3", "--marks"]);
    assert!(out.stdout.contains("classes: 4"));
    assert!(out.stdout.contains("#0: 6 3 2 1"));
}

#[test]
fn idempotent_counts() {
    let out = run(&[
        "burnside",
        "idempotents",
        "--family",
        "S",
        "--n",
        "3",
        "--prime",
        "2",
    ]);
    assert!(out.stdout.starts_with("2 primitive idempotents"));
    let out = run(&[
        "burnside",
        "idempotents",
        "--family",
        "C",
        "--n",
        "4",
        "--prime",
        "2",
    ]);
    assert!(out.stdout.starts_with("1 primitive idempotents"));
    let out = run(&[
        "burnside",
        "idempotents",
        "--family",
        "S",
        "--n",
        "3",
        "--rational",
    ]);
    assert!(out.stdout.starts_with("4 primitive idempotents"));
}

#[test]
fn exit_codes() {
    let tmp = TempDir::new().unwrap();

    // malformed JSON → 2
    let bad = tmp.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let out = run_in(tmp.path(), &["group", "info", "--file", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2, "stderr: {}", out.stderr);

    // missing selector → 2
    assert_eq!(run(&["group", "info"]).code, 2);

    // unknown family → 2
    assert_eq!(
        run(&["group", "info", "--family", "X", "--n", "3"]).code,
        2
    );

    // non-prime --prime → 2
    assert_eq!(
        run(&["card", "bg", "--family", "S", "--n", "3", "--prime", "4"]).code,
        2
    );

    // order cap → 3
    let out = run(&[
        "group", "info", "--family", "S", "--n", "8", "--max-order", "100",
    ]);
    assert_eq!(out.code, 3, "stderr: {}", out.stderr);

    // cyclic covers → 2
    let cyclic = write_file(
        tmp.path(),
        "cyclic.json",
        &json!({"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]}),
    );
    assert_eq!(
        run_in(tmp.path(), &["poset", "mobius", cyclic.to_str().unwrap()]).code,
        2
    );

    // non-automorphism action → 2, message names the failing spot
    let mut space = s3_cube_space();
    space["homotopy"][0]["action"][0] = json!([1, 0, 2, 3, 4, 5, 6, 7]);
    let bad_space = write_file(tmp.path(), "badspace.json", &space);
    let out = run_in(
        tmp.path(),
        &["card", "space", bad_space.to_str().unwrap(), "--prime", "3"],
    );
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("automorphism"), "stderr: {}", out.stderr);
}

#[test]
fn poset_mobius_chain() {
    let tmp = TempDir::new().unwrap();
    let chain = write_file(
        tmp.path(),
        "chain.json",
        &json!({"elements": ["a", "b", "c"], "covers": [["a", "b"], ["b", "c"]]}),
    );
    let out = run_in(tmp.path(), &["poset", "mobius", chain.to_str().unwrap()]);
    assert_eq!(
        out.stdout,
        "a <= a: 1\na <= b: -1\na <= c: 0\nb <= b: 1\nb <= c: -1\nc <= c: 1\n"
    );
}

#[test]
fn space_golden_value() {
    let tmp = TempDir::new().unwrap();
    let space = write_file(tmp.path(), "space.json", &s3_cube_space());
    let out = run_in(
        tmp.path(),
        &[
            "card",
            "space",
            space.to_str().unwrap(),
            "--prime",
            "3",
            "--check",
        ],
    );
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert!(out.stdout.starts_with("x + 1\n"));
}

#[test]
fn element_marks_command() {
    let tmp = TempDir::new().unwrap();
    let element = write_file(
        tmp.path(),
        "element.json",
        &json!({
            "group": {"family": "S", "n": 3},
            "coeffs": [{"class_order": 2, "class_index": 1, "num": 1, "den": 1}]
        }),
    );
    let out = run_in(tmp.path(), &["burnside", "marks", element.to_str().unwrap()]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert!(out.stdout.contains("#0 (order   1): 3"));
    assert!(out.stdout.contains("#1 (order   2): 1"));
    assert!(out.stdout.contains("#2 (order   3): 0"));

    // wrong class_order is rejected
    let mismatched = write_file(
        tmp.path(),
        "mismatch.json",
        &json!({
            "group": {"family": "S", "n": 3},
            "coeffs": [{"class_order": 3, "class_index": 1, "num": 1, "den": 1}]
        }),
    );
    assert_eq!(
        run_in(tmp.path(), &["burnside", "marks", mismatched.to_str().unwrap()]).code,
        2
    );
}

#[test]
fn determinism_across_runs_and_cache_states() {
    let tmp = TempDir::new().unwrap();
    let space_file = write_file(tmp.path(), "space.json", &s3_cube_space());
    let space_path = space_file.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["group", "info", "--family", "S", "--n", "4", "--marks", "--prime", "2"],
        vec!["burnside", "idempotents", "--family", "S", "--n", "4", "--prime", "2"],
        vec!["burnside", "idempotents", "--family", "S", "--n", "4", "--rational", "--json"],
        vec!["card", "bg", "--family", "S", "--n", "4", "--prime", "2", "--check"],
        vec!["card", "space", space_path, "--prime", "3", "--check", "--json"],
    ];
    for args in &commands {
        let cache = TempDir::new().unwrap();
        let cold = run_in(cache.path(), args);
        assert_eq!(cold.code, 0, "cold {args:?}: {}", cold.stderr);
        // the cold run must have populated the cache
        assert!(
            std::fs::read_dir(cache.path()).unwrap().next().is_some(),
            "cache not written for {args:?}"
        );
        let warm = run_in(cache.path(), args);
        let warm_again = run_in(cache.path(), args);
        let mut no_cache_args = args.clone();
        no_cache_args.push("--no-cache");
        let uncached = run_in(cache.path(), &no_cache_args);
        assert_eq!(cold.stdout, warm.stdout, "cold/warm differ for {args:?}");
        assert_eq!(warm.stdout, warm_again.stdout, "reruns differ for {args:?}");
        assert_eq!(warm.stdout, uncached.stdout, "--no-cache differs for {args:?}");
    }
}

#[test]
fn corrupted_cache_entries_are_recomputed() {
    let cache = TempDir::new().unwrap();
    let args = &["card", "bg", "--family", "S", "--n", "3", "--prime", "2"];
    let cold = run_in(cache.path(), args);
    // corrupt every cache entry
    for entry in std::fs::read_dir(cache.path()).unwrap() {
        std::fs::write(entry.unwrap().path(), "{broken").unwrap();
    }
    let recovered = run_in(cache.path(), args);
    assert_eq!(recovered.code, 0);
    assert_eq!(cold.stdout, recovered.stdout);
}

#[test]
fn group_spec_json_round_trip() {
    let tmp = TempDir::new().unwrap();
    let by_family = run_in(
        tmp.path(),
        &["group", "info", "--family", "D", "--n", "4", "--json"],
    );
    let parsed: Value = serde_json::from_str(&by_family.stdout).unwrap();
    let spec = write_file(tmp.path(), "group.json", &parsed["group"]);
    let by_file = run_in(
        tmp.path(),
        &["group", "info", "--file", spec.to_str().unwrap(), "--json"],
    );
    assert_eq!(by_family.stdout, by_file.stdout);
}

#[test]
fn idempotent_elements_round_trip_through_marks() {
    let tmp = TempDir::new().unwrap();
    let out = run_in(
        tmp.path(),
        &[
            "burnside",
            "idempotents",
            "--family",
            "S",
            "--n",
            "3",
            "--prime",
            "2",
            "--json",
        ],
    );
    let parsed: Value = serde_json::from_str(&out.stdout).unwrap();
    for (i, idem) in parsed["idempotents"].as_array().unwrap().iter().enumerate() {
        let element = write_file(tmp.path(), &format!("e{i}.json"), &idem["element"]);
        let marks_out = run_in(
            tmp.path(),
            &["burnside", "marks", element.to_str().unwrap(), "--json"],
        );
        let marks: Value = serde_json::from_str(&marks_out.stdout).unwrap();
        assert_eq!(marks["marks"], idem["marks"], "idempotent {i}");
    }
}

#[test]
fn card_expr_json_is_lossless() {
    let out = run(&[
        "card", "bg", "--family", "GL2", "--n", "3", "--prime", "3", "--json",
    ]);
    let parsed: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(parsed["display"], "1/4*x - 1/16");
    assert_eq!(parsed["prime"], 3);
    let terms = parsed["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0], json!({"exp": 1, "num": 1, "den": 4}));
    assert_eq!(terms[1], json!({"exp": 0, "num": -1, "den": 16}));
}
