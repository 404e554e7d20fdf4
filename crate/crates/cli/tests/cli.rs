//! End-to-end tests of the `bqt` binary: documented examples, exit codes,
//! JSON shape, and cache behavior.

use std::process::{Command, Output};

use serde_json::Value;

fn bqt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bqt"))
        .args(args)
        .env_remove("BQT_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn fixed_points_worked_examples() {
    let v = json_of(&bqt(&["fixed-points", "--n", "2", "--k", "2"]));
    assert_eq!(v["count"], 1);
    assert_eq!(v["flags"][0]["cotangent"], serde_json::json!([[1, 0, 2]]));
    assert_eq!(v["flags"][0]["dimension"], 2);

    let v = json_of(&bqt(&["fixed-points", "--n", "1", "--k", "0"]));
    assert_eq!(
        v["flags"][0]["cotangent"],
        serde_json::json!([[0, 1, 1], [1, 0, 1]])
    );

    let v = json_of(&bqt(&["fixed-points", "--n", "0", "--k", "0"]));
    assert_eq!(v["count"], 1);
    assert_eq!(v["flags"][0]["flag"]["lambda"], serde_json::json!([]));
    assert_eq!(v["flags"][0]["cotangent"], serde_json::json!([]));
}

#[test]
fn apply_raises_the_vacuum() {
    let v = json_of(&bqt(&["apply", "--word", "d+"]));
    let terms = v["result"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["coeff"], "1");
    assert_eq!(terms[0]["flag"]["lambda"], serde_json::json!([1]));
    assert_eq!(terms[0]["flag"]["order"], serde_json::json!([[0, 0]]));
}

#[test]
fn apply_rejects_bad_words_and_grades() {
    // Unparsable token: usage error with a byte position.
    let out = bqt(&["apply", "--word", "d+ junk"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));

    // Well-formed word that exceeds the grade: usage error with step index.
    let out = bqt(&["apply", "--word", "z:3", "--mu", "1", "--marks", "0,0"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("step 1"));
}

#[test]
fn check_default_suite_passes() {
    let out = bqt(&["check"]);
    let v = json_of(&out);
    assert_eq!(v["all_passed"], true);
    assert!(v["families"].as_array().unwrap().len() >= 20);
}

#[test]
fn check_single_family_and_unknown_id() {
    let v = json_of(&bqt(&["check", "--relation", "hecke-quadratic"]));
    assert_eq!(v["all_passed"], true);
    let fams = v["families"].as_array().unwrap();
    assert_eq!(fams.len(), 1);
    assert!(fams[0]["points"].as_u64().unwrap() > 0);

    let out = bqt(&["check", "--relation", "no-such-relation"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown relation id"));
}

#[test]
fn pieri_routes_agree() {
    let v = json_of(&bqt(&["pieri", "--mu", "2,1"]));
    assert_eq!(v["routes_agree"], true);
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn pmn_matches_the_chain_route() {
    let v = json_of(&bqt(&["pmn", "--m", "1", "--n", "2"]));
    assert_eq!(v["routes_agree"], true);
    assert_eq!(v["result"]["terms"].as_array().unwrap().len(), 2);

    let out = bqt(&["pmn", "--m", "2", "--n", "4"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn bijection_pairs_every_grade() {
    let v = json_of(&bqt(&["bijection", "--n", "3"]));
    assert_eq!(v["consistent"], true);
    let grades = v["grades"].as_array().unwrap();
    assert_eq!(grades.len(), 4);
    let counts: Vec<u64> = grades
        .iter()
        .map(|g| g["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![3, 4, 3, 1]);
}

#[test]
fn bruhat_emits_a_partial_order() {
    let v = json_of(&bqt(&["bruhat", "--n", "3", "--k", "1"]));
    let elems = v["elements"].as_array().unwrap();
    let le = v["le"].as_array().unwrap();
    assert_eq!(elems.len(), 4);
    // Strict relations of a 4-chain.
    assert_eq!(le.len(), 6);
}

#[test]
fn phi_image_is_triangular() {
    let v = json_of(&bqt(&[
        "phi",
        "--mu",
        "1",
        "--a",
        "1",
        "--check-triangularity",
    ]));
    assert_eq!(v["triangular"], true);
    assert_eq!(v["leading_index"], v["index"]);
    assert_eq!(v["grade"], serde_json::json!([3, 1]));
}

#[test]
fn macdonald_two_row_coefficients() {
    let v = json_of(&bqt(&["macdonald", "--mu", "2"]));
    let schur = v["schur"].as_array().unwrap();
    assert_eq!(schur.len(), 2);
    assert_eq!(schur[0]["lambda"], serde_json::json!([1, 1]));
    assert_eq!(schur[0]["coeff"], "q");
    assert_eq!(schur[1]["lambda"], serde_json::json!([2]));
    assert_eq!(schur[1]["coeff"], "1");
}

#[test]
fn matrix_output_is_deterministic_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let args = |extra: &[&'static str]| -> Vec<&str> {
        let mut v = vec!["--cache-dir", dir.path().to_str().unwrap()];
        v.extend_from_slice(extra);
        v.extend_from_slice(&["matrix", "--word", "d- d+", "--n", "2", "--k", "0"]);
        v
    };

    let first = bqt(&args(&[]));
    assert!(first.status.success());
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1, "one cache entry written");

    let second = bqt(&args(&[]));
    assert_eq!(first.stdout, second.stdout, "cache hit is byte-identical");

    let uncached = bqt(&args(&["--no-cache"]));
    assert_eq!(first.stdout, uncached.stdout, "--no-cache matches");

    // A corrupted entry is treated as a miss and silently rebuilt.
    for e in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(e.unwrap().path(), b"not json").unwrap();
    }
    let healed = bqt(&args(&[]));
    assert_eq!(first.stdout, healed.stdout, "corrupt cache self-heals");

    // The environment variable selects the same directory as the flag.
    let via_env = Command::new(env!("CARGO_BIN_EXE_bqt"))
        .env("BQT_CACHE_DIR", dir.path())
        .args(["matrix", "--word", "d- d+", "--n", "2", "--k", "0"])
        .output()
        .unwrap();
    assert_eq!(first.stdout, via_env.stdout);
}

#[test]
fn matrix_matches_apply_on_each_basis_vector() {
    let v = json_of(&bqt(&[
        "--no-cache",
        "matrix",
        "--word",
        "phi",
        "--n",
        "2",
        "--k",
        "1",
    ]));
    let domain = v["domain"].as_array().unwrap().clone();
    let codomain = v["codomain"].as_array().unwrap().clone();
    let entries = v["entries"].as_array().unwrap();
    for (j, p) in domain.iter().enumerate() {
        let lambda: Vec<String> = p["lambda"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        let marks: Vec<String> = p["order"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| format!("{},{}", c[0], c[1]))
            .collect();
        let col = json_of(&bqt(&[
            "apply",
            "--word",
            "phi",
            "--mu",
            &lambda.join(","),
            "--marks",
            &marks.join(";"),
        ]));
        for term in col["result"]["terms"].as_array().unwrap() {
            let i = codomain.iter().position(|q| q == &term["flag"]).unwrap();
            assert_eq!(entries[i][j], term["coeff"]);
        }
    }
}

#[test]
fn test_mode_cross_checks_composites() {
    let out = bqt(&[
        "--test-mode",
        "apply",
        "--word",
        "y:1",
        "--mu",
        "1",
        "--marks",
        "0,0",
    ]);
    assert!(out.status.success());
}

#[test]
fn help_documents_the_word_grammar() {
    let out = bqt(&["--help"]);
    let text = String::from_utf8_lossy(&out.stdout);
    for token in [
        "WORD GRAMMAR",
        "d+",
        "Tinv:i",
        "z:i",
        "phi",
        "SD",
        "RIGHTMOST",
    ] {
        assert!(text.contains(token), "help lacks {token}");
    }
}
