use std::process::{Command, Output};

use permball::Permutation;
use serde_json::Value;

fn permball(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permball"))
        .args(args)
        .env_remove("PERMBALL_MAX_LEN")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = permball(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn text(args: &[&str]) -> String {
    let out = permball(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key}: ");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
}

fn elements(v: &Value) -> Vec<String> {
    v["result"]["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn distance_examples() {
    assert_eq!(json(&["distance", "--model", "td", "1324"])["result"]["distance"], 1);
    assert_eq!(json(&["distance", "--model", "ptd", "213"])["result"]["distance"], 1);
    assert_eq!(json(&["distance", "--model", "td", "123456789"])["result"]["distance"], 0);
    assert_eq!(json(&["distance", "4321", "--to", "4312"])["result"]["distance"], 1);
}

#[test]
fn genset_examples() {
    let v = json(&["genset", "--model", "td", "-k", "2"]);
    assert_eq!(v["result"]["count"], 11);
    assert_eq!(v["result"]["model"], "td");
    assert_eq!(v["result"]["method"], "direct");
    assert_eq!(v["result"]["k"], 2);
    let els = elements(&v);
    let mut sorted = els.clone();
    sorted.sort();
    assert_eq!(els, sorted);

    assert_eq!(json(&["genset", "--model", "ptd", "-k", "2"])["result"]["count"], 6);
    let v = json(&["genset", "--model", "ptd", "-k", "3", "--method", "constructive"]);
    assert_eq!(v["result"]["count"], 90);
}

#[test]
fn basis_examples() {
    let v = json(&["basis", "--model", "td", "-k", "1"]);
    assert_eq!(elements(&v), ["2143", "2413", "3142", "321"]);

    let v = json(&["basis", "--model", "ptd", "-k", "2"]);
    let els = elements(&v);
    assert_eq!(els.iter().filter(|e| e.len() == 4).count(), 3);
    assert_eq!(els.iter().filter(|e| e.len() == 5).count(), 14);

    let v = json(&["basis", "--model", "ptd", "-k", "1", "--probe-extra-length"]);
    assert_eq!(v["result"]["probe"]["length"], 4);
    assert_eq!(v["result"]["probe"]["count"], 0);

    let d = json(&["basis", "--model", "ptd", "-k", "2", "--method", "descent"]);
    assert_eq!(elements(&d), els);
}

#[test]
fn ball_neighbors_and_counts() {
    assert_eq!(text(&["ball", "--model", "td", "-n", "4", "-k", "1", "--count-only"]).trim(), "count: 11\nk: 1\nmodel: td\nn: 4");
    let v = json(&["ball", "--model", "td", "-n", "4", "-k", "1", "--count-only"]);
    assert!(v["result"].get("elements").is_none());

    assert_eq!(field(&text(&["count-irreducible", "-n", "7"]), "count"), "2119");
    let v = json(&["count-irreducible", "-n", "7"]);
    assert_eq!(v["result"]["enumerated"], 2119);

    let v = json(&["neighbors", "--model", "ptd", "21"]);
    assert_eq!(elements(&v), ["12"]);
    assert_eq!(json(&["neighbors", "1234", "--count-only"])["result"]["count"], 10);
}

#[test]
fn json_and_text_carry_the_same_payload() {
    let cases: &[&[&str]] = &[
        &["genset", "--model", "td", "-k", "2"],
        &["basis", "--model", "ptd", "-k", "1"],
        &["ball", "--model", "ptd", "-n", "4", "-k", "1"],
        &["distance", "32415", "--model", "ptd"],
        &["reduce", "435612789"],
    ];
    for args in cases {
        let v = json(args);
        let t = text(args);
        for (key, value) in v["result"].as_object().unwrap() {
            let rendered = match value {
                Value::String(s) => s.clone(),
                Value::Array(xs) => xs.iter().map(|x| x.as_str().unwrap()).collect::<Vec<_>>().join(" "),
                Value::Null => "none".into(),
                other => other.to_string(),
            };
            assert_eq!(field(&t, key).trim_end(), rendered, "{args:?} {key}");
        }
    }
}

#[test]
fn emitted_permutations_round_trip() {
    for args in [
        &["genset", "--model", "ptd", "-k", "3"][..],
        &["basis", "--model", "td", "-k", "2"],
        &["neighbors", "--model", "td", "1,2,3,4,5,6,7,8,9,10,11"],
    ] {
        for s in elements(&json(args)) {
            let p: Permutation = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
    }
}

#[test]
fn long_permutations_use_commas() {
    let v = json(&["distance", "2,1,3,4,5,6,7,8,9,10", "--model", "ptd"]);
    assert_eq!(v["result"]["perm"], "2,1,3,4,5,6,7,8,9,10");
    assert_eq!(v["result"]["distance"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(permball(&["distance", "1224"]).status.code(), Some(2));
    assert_eq!(permball(&["distance"]).status.code(), Some(2));
    assert_eq!(permball(&["genset", "--model", "xyz", "-k", "1"]).status.code(), Some(2));
    assert_eq!(permball(&["basis", "--model", "td", "-k", "3"]).status.code(), Some(3));
    assert_eq!(permball(&["ball", "-n", "12", "-k", "1"]).status.code(), Some(3));
    assert_eq!(permball(&["ball", "-n", "6", "-k", "3", "--max-states", "10"]).status.code(), Some(3));
    assert_eq!(permball(&["genset", "-k", "1"]).status.code(), Some(0));
}

#[test]
fn max_len_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_permball"))
        .args(["ball", "-n", "6", "-k", "1", "--count-only"])
        .env("PERMBALL_MAX_LEN", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_suites_pass() {
    for args in [
        ["verify", "--model", "td", "-k", "1", "--max-n", "6"],
        ["verify", "--model", "ptd", "-k", "2", "--max-n", "6"],
    ] {
        let out = permball(&args);
        let stdout = String::from_utf8(out.stdout).unwrap();
        assert_eq!(out.status.code(), Some(0), "{stdout}");
        let checks: Vec<&str> = stdout.lines().filter(|l| !l.contains(": ")).collect();
        assert!(!checks.is_empty());
        assert!(checks.iter().all(|l| l.starts_with("PASS")), "{stdout}");
    }
}

#[test]
fn verify_budget_skips() {
    let out = permball(&["verify", "--model", "td", "-k", "3", "--max-n", "5"]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    assert!(stdout.lines().any(|l| l.starts_with("SKIPPED basis-cross-method k=3")));
}

#[test]
fn corrupted_golden_fails() {
    let mut golden = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/golden.toml")).unwrap();
    golden = golden.replace("\"1324657\", ", "\"1324567\", ");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("golden.toml");
    std::fs::write(&path, golden).unwrap();

    let out = permball(&["verify", "--model", "td", "-k", "2", "--max-n", "5", "--golden", path.to_str().unwrap()]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(1), "{stdout}");
    assert!(stdout.lines().any(|l| l.starts_with("FAIL") && l.contains("genset k=2")), "{stdout}");

    let v: Value = serde_json::from_slice(
        &permball(&["verify", "-m", "td", "-k", "2", "--max-n", "5", "--golden", path.to_str().unwrap(), "--format", "json"]).stdout,
    )
    .unwrap();
    assert_eq!(v["result"]["failed"], 2);
}

#[test]
fn unreadable_golden_is_a_usage_error() {
    let out = permball(&["verify", "--golden", "/nonexistent/golden.toml"]);
    assert_eq!(out.status.code(), Some(2));
}
