//! End-to-end tests of the `qclass` binary: golden outputs, exit codes and
//! determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn examples() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn qclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qclass"))
        .current_dir(examples())
        .args(args)
        .output()
        .expect("qclass runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("qclass exits normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

/// `(golden file, arguments, expected exit status)`.
const GOLDEN: &[(&str, &str, i32)] = &[
    ("diamond.omega.json", "omega diamond.json", 0),
    ("diamond.omega-F.json", "omega diamond.json --basis F", 0),
    (
        "diamond.omega-F.tsv",
        "--tsv omega diamond.json --basis F",
        0,
    ),
    (
        "diamond.reciprocity.json",
        "verify reciprocity diamond.json",
        0,
    ),
    (
        "diamond.orbital-reciprocity.json",
        "verify orbital-reciprocity diamond.json",
        0,
    ),
    ("bowtie.omega-F.json", "omega bowtie.json --basis F", 0),
    ("bowtie.omega-F.tsv", "--tsv omega bowtie.json --basis F", 0),
    ("bowtie.orbital.json", "omega bowtie.json --orbital", 0),
    ("bowtie.coeven.json", "omega bowtie.json --coeven", 0),
    (
        "bowtie.f-effective.json",
        "verify f-effective bowtie.json",
        1,
    ),
    (
        "bowtie.m-increasing.json",
        "verify m-increasing bowtie.json",
        0,
    ),
    (
        "three-below-two.omega-F.json",
        "omega three-below-two.json --basis F",
        0,
    ),
    (
        "three-below-two.omega-F.tsv",
        "--tsv omega three-below-two.json --basis F",
        0,
    ),
    (
        "three-below-two.chartable.json",
        "chartable three-below-two.json",
        0,
    ),
    (
        "three-below-two.chartable.tsv",
        "--tsv chartable three-below-two.json",
        0,
    ),
    (
        "three-below-two.flawless.json",
        "verify flawless three-below-two.json",
        0,
    ),
    (
        "three-below-two.f-effective.json",
        "verify f-effective three-below-two.json",
        0,
    ),
    (
        "three-below-two.h-effective.json",
        "verify h-effective three-below-two.json",
        0,
    ),
    (
        "three-below-two.orderpoly.tsv",
        "--tsv orderpoly three-below-two.json",
        0,
    ),
    (
        "three-below-two-digraph.chromatic-t0-F.tsv",
        "--tsv chromatic three-below-two-digraph.json --t-degree 0 --basis F",
        0,
    ),
    ("four-cycle.chromatic.json", "chromatic four-cycle.json", 0),
    (
        "four-cycle.chromatic.tsv",
        "--tsv chromatic four-cycle.json",
        0,
    ),
    (
        "four-cycle.chromatic-F.tsv",
        "--tsv chromatic four-cycle.json --basis F",
        0,
    ),
    (
        "four-cycle.orientation-decomposition.json",
        "verify orientation-decomposition four-cycle.json",
        0,
    ),
    (
        "four-cycle.reciprocity.json",
        "verify reciprocity four-cycle.json",
        0,
    ),
    (
        "single-edge.chromatic.tsv",
        "--tsv chromatic single-edge.json",
        0,
    ),
    (
        "single-edge.orbital-reciprocity.json",
        "verify orbital-reciprocity single-edge.json",
        0,
    ),
    ("empty-poset.omega.json", "omega empty-poset.json", 0),
    ("weak-chain.omega.json", "omega weak-chain.json", 0),
    (
        "weak-chain.orderpoly.tsv",
        "--tsv orderpoly weak-chain.json",
        0,
    ),
];

#[test]
fn outputs_match_golden_files() {
    for &(golden, args, status) in GOLDEN {
        let path = examples().join("golden").join(golden);
        let path = path.to_str().unwrap();
        let mut argv: Vec<&str> = args.split_whitespace().collect();
        argv.extend(["--expect", path]);
        let out = qclass(&argv);
        assert_eq!(code(&out), status, "{args}\n{}", stdout(&out));
    }
}

#[test]
fn golden_mismatch_fails() {
    let path = examples().join("golden").join("bowtie.omega-F.json");
    let out = qclass(&[
        "omega",
        "diamond.json",
        "--basis",
        "F",
        "--expect",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(
        !out.stdout.is_empty(),
        "the actual output is shown on mismatch"
    );
}

#[test]
fn output_is_byte_stable() {
    for args in [
        ["chromatic", "four-cycle.json"],
        ["chartable", "three-below-two.json"],
        ["omega", "bowtie.json"],
    ] {
        assert_eq!(qclass(&args).stdout, qclass(&args).stdout, "{args:?}");
    }
}

#[test]
fn empty_poset_enumerator_is_one() {
    let out = qclass(&["omega", "empty-poset.json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["degree"], 0);
    assert_eq!(v["rows"][0]["alpha"], serde_json::json!([]));
    assert_eq!(v["rows"][0]["values"], serde_json::json!([1]));
}

#[test]
fn order_polynomial_evaluates_at_negative_arguments() {
    // The weak 2-chain has order polynomial n(n+1)/2.
    let out = qclass(&["orderpoly", "weak-chain.json", "--at", "-3"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["at"], -3);
    assert_eq!(v["values"]["values"][0][0][0], 3);
}

#[test]
fn unmet_precondition_exits_two() {
    let out = qclass(&["verify", "reciprocity", "bowtie.json"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("locally special"), "{err}");
}

#[test]
fn usage_errors_exit_sixty_four() {
    for args in [
        &["omega", "no-such-file.json"][..],
        &["frobnicate"],
        &["omega"],
        &["omega", "four-cycle.json"],
        &["verify", "orientation-decomposition", "diamond.json"],
        &["verify", "no-such-theorem", "diamond.json"],
        &["omega", "diamond.json", "--basis", "X"],
    ] {
        assert_eq!(code(&qclass(args)), 64, "{args:?}");
    }
}

#[test]
fn malformed_instances_exit_sixty_four() {
    let dir = std::env::temp_dir().join(format!("qclass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        ("not-json.json", "{ this is not json", ""),
        (
            "cyclic.json",
            r#"{"elements": ["a", "b"], "rel1": [["a", "b"], ["b", "a"]], "rel2": []}"#,
            "antisymmetric",
        ),
        (
            "bad-label.json",
            r#"{"elements": ["a"], "rel1": [["a", "z"]], "rel2": []}"#,
            "unknown element",
        ),
        (
            "not-automorphism.json",
            r#"{"elements": ["a", "b"], "rel1": [["a", "b"]], "rel2": [], "group": ["(a b)"]}"#,
            "not an automorphism",
        ),
    ];
    for (name, body, message) in cases {
        let path = dir.join(name);
        std::fs::write(&path, body).unwrap();
        let out = qclass(&["omega", path.to_str().unwrap()]);
        let err = String::from_utf8_lossy(&out.stderr);
        assert_eq!(code(&out), 64, "{name}: {err}");
        assert!(err.contains(message), "{name}: {err}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(code(&qclass(&["--help"])), 0);
    assert_eq!(code(&qclass(&["--version"])), 0);
}

#[test]
fn selftest_passes_on_a_small_run() {
    let out = qclass(&["selftest", "--count", "8"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let suites = v.as_array().expect("one summary per suite");
    assert!(!suites.is_empty());
    assert!(suites
        .iter()
        .all(|s| s["failures"].as_array().is_some_and(Vec::is_empty)));
}
