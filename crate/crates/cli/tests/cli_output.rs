//! End-to-end checks of the command-line surface: concrete output lines and
//! the exit-code contract (0 all-pass, 1 semantic failure, 2 parse/usage).

use std::path::PathBuf;
use std::process::Command;

fn model_path(name: &str) -> String {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.push("models");
    path.push(name);
    path.to_string_lossy().into_owned()
}

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn kforge(args: &[&str]) -> Run {
    let output = Command::new(env!("CARGO_BIN_EXE_kforge"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(output.stdout).unwrap(),
        stderr: String::from_utf8(output.stderr).unwrap(),
        code: output.status.code().unwrap_or(-1),
    }
}

#[test]
fn validate_passes_on_heis_and_fails_on_broken_variants() {
    let run = kforge(&["validate", &model_path("heis.model")]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    assert!(run.stdout.contains("check dgla.leibniz: PASS"));
    assert!(run.stdout.ends_with("result: PASS\n"));

    let run = kforge(&["validate", &model_path("badleibniz.model")]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("check dgla.leibniz: FAIL (pair (e0_1, e1_2))"));

    let run = kforge(&["validate", &model_path("badscalar.model")]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("1//2"));
}

#[test]
fn solve_prints_the_expected_closed_forms() {
    let run = kforge(&["solve", &model_path("heis.model"), "--order", "3"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("harmonic dims: 0 2 1"));
    assert!(run.stdout.contains("phi[t1] = (1, 0)"));
    assert!(run.stdout.contains("phi[t2] = (0, 1)"));
    assert!(run.stdout.contains("obstruction[1] = 2*t1*t2"));

    let run = kforge(&["solve", &model_path("abelian.model"), "--order", "5"]);
    assert_eq!(run.code, 0);
    assert!(run
        .stdout
        .contains("note: no obstructions; Kuranishi space is smooth of dimension 2"));

    let run = kforge(&["solve", &model_path("witheq.model"), "--order", "4"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("harmonic dims: 0 1 0"));
    assert!(run.stdout.contains("phi[t1] = (0, 1)"));
    assert!(run.stdout.contains("no obstructions"));

    let run = kforge(&["solve", &model_path("mixed.model")]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("phi[t1^2] = (1, 0)"));
    assert!(run.stdout.contains("obstruction[1] = 2*t1^3"));
}

#[test]
fn solve_with_invariant_metric_requires_a_group() {
    let run = kforge(&["solve", &model_path("heis-swap.model"), "--invariant-metric"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("note: metric averaged over the group action"));

    let run = kforge(&["solve", &model_path("heis.model"), "--invariant-metric"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("group block"));
}

#[test]
fn equivariance_reports_every_identity_per_element() {
    let run = kforge(&["equivariance", &model_path("heis-swap.model"), "--order", "5"]);
    assert_eq!(run.code, 0);
    for line in [
        "check equivariance.green_equivariant: PASS",
        "check equivariance.harmonic_projector_equivariant: PASS",
        "check equivariance.phi_equivariant[g0]: PASS",
        "check equivariance.phi_equivariant[g1]: PASS",
        "check equivariance.obstruction_equivariant[g1]: PASS",
    ] {
        assert!(run.stdout.contains(line), "missing {line} in\n{}", run.stdout);
    }

    let run = kforge(&["equivariance", &model_path("heis-torus.model")]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("check equivariance.phi_weight_homogeneous: PASS"));
    assert!(run
        .stdout
        .contains("check equivariance.obstruction_weight_homogeneous: PASS"));

    // validation failure preempts the equivariance stage
    let run = kforge(&["equivariance", &model_path("heis-badaction.model")]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("check action.bracket_automorphism: FAIL"));
    assert!(!run.stdout.contains("phi_equivariant"));

    let run = kforge(&["equivariance", &model_path("heis.model")]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("neither a group block nor a lie_algebra block"));
}

#[test]
fn complexify_checks_the_homomorphism() {
    let run = kforge(&["complexify", &model_path("u1.model")]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("rep[X1 degree 1] = [[1*i, 0], [0, -1*i]]"));
    assert!(run.stdout.contains("rep[i*X1 degree 1] = [[-1, 0], [0, 1]]"));
    assert!(run.stdout.contains("check complexified.homomorphism: PASS"));
    assert!(run.stdout.contains("check complexified.real_restriction: PASS"));

    let run = kforge(&["complexify", &model_path("u1-broken.model")]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("check complexified.homomorphism: FAIL"));

    let run = kforge(&["complexify", &model_path("heis.model")]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("no lie_algebra block"));
}

#[test]
fn lemma31_modes_and_exit_codes() {
    let run = kforge(&[
        "lemma31", "--random", "--dim", "4", "--seed", "7", "--count", "100",
    ]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("premise satisfied: 100"));
    assert!(run.stdout.contains("conclusion holds: 100"));
    assert!(run
        .stdout
        .contains("check all_premise_instances_confirm_conclusion: PASS"));

    let run = kforge(&["lemma31", &model_path("lemma31-trivial.instance")]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("h1 commutes with j: true"));

    let run = kforge(&["lemma31", &model_path("lemma31-counterexample.instance")]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("h2 intertwines beltrami maps: false"));
    assert!(run.stdout.contains("conclusion complex linear: false"));

    let run = kforge(&["lemma31", &model_path("lemma31-badj.instance")]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("J^2 != -I"));

    let run = kforge(&["lemma31", "--random", "--dim", "3"]);
    assert_eq!(run.code, 2);
}

#[test]
fn group_cap_env_is_honored() {
    let output = Command::new(env!("CARGO_BIN_EXE_kforge"))
        .args(["equivariance", &model_path("s3.model")])
        .env("KFORGE_MAX_GROUP", "3")
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(
        stdout.contains("check action.closure: FAIL (group too large or infinite"),
        "{stdout}"
    );
}

#[test]
fn json_reports_parse_and_match_the_text_verdict() {
    let run = kforge(&["solve", &model_path("heis.model"), "--order", "3", "--json"]);
    assert_eq!(run.code, 0);
    let value: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(value["tool"], "kforge");
    assert_eq!(value["result"], "pass");
    let sections = value["sections"].as_array().unwrap();
    assert!(sections.iter().any(|s| {
        s.get("entry").is_some_and(|e| e["key"] == "obstruction" && e["value"] == "2*t1*t2")
    }));
}
