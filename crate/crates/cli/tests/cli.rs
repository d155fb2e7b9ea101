//! End-to-end tests driving the compiled binary.

use std::process::{Command, Output};

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nambu")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

// -------------------------------------------------------------------
// verify
// -------------------------------------------------------------------

#[test]
fn a_well_formed_tensor_file_verifies_cleanly() {
    let out = run(&["verify", &data("volume3.nambu")]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("overall: pass"), "{text}");
    assert!(text.contains("fundamental identity"), "{text}");
}

#[test]
fn float_literals_are_rejected_with_a_position() {
    let out = run(&["verify", &data("float.nambu")]);
    assert_eq!(code(&out), 2);
    let text = stderr(&out);
    assert!(text.contains("line 4, column 21"), "{text}");
    assert!(text.contains("floating-point literals are not accepted"), "{text}");
}

#[test]
fn a_missing_input_file_is_an_input_error() {
    let out = run(&["verify", &data("does-not-exist.nambu")]);
    assert_eq!(code(&out), 2);
}

#[test]
fn a_lie_algebra_file_passes_the_jacobi_check() {
    let out = run(&["verify", &data("u2.nambu")]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("bracket table satisfies the Jacobi identity"));
}

#[test]
fn a_linear_tensor_file_passes_the_full_battery() {
    let out = run(&["verify", &data("heisenberg-linear.nambu")]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("tensor is a cocycle"), "{text}");
    assert!(text.contains("volume kind, dimension 3"), "{text}");
}

#[test]
fn a_chart_group_file_passes_the_full_battery() {
    let out = run(&["verify", &data("scaling-group.nambu")]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("group axioms hold"), "{text}");
    assert!(text.contains("tensor satisfies the product rule"), "{text}");
    assert!(text.contains("coframe brackets have constant coefficients"), "{text}");
    assert!(text.contains("linearized core is an ideal"), "{text}");
}

#[test]
fn a_matrix_group_file_passes_at_sampled_points() {
    let out = run(&["verify", &data("u2-matrix.nambu"), "--suite-size", "6"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("tensor vanishes at the unit"), "{text}");
    assert!(text.contains("product rule at 6 sampled pairs"), "{text}");
}

#[test]
fn a_tensor_that_twists_its_factor_planes_fails_with_exit_one() {
    let out = run(&["verify", &data("noninvolutive.nambu")]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("overall: fail"), "{text}");
    assert!(text.contains("fail  factor span is involutive"), "{text}");
}

// -------------------------------------------------------------------
// determinism and formats
// -------------------------------------------------------------------

#[test]
fn the_report_is_byte_identical_across_repeated_runs() {
    let first = run(&["verify", &data("volume3.nambu"), "--seed", "99"]);
    let second = run(&["verify", &data("volume3.nambu"), "--seed", "99"]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);

    let first = run(&["examples", "heisenberg-linear", "--machine"]);
    let second = run(&["examples", "heisenberg-linear", "--machine"]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn machine_records_parse_as_json_with_the_documented_fields() {
    let out = run(&["verify", &data("volume3.nambu"), "--machine", "--suite-size", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    let head: serde_json::Value =
        serde_json::from_str(lines.next().expect("configuration line")).expect("json");
    assert_eq!(head["check"], "configuration");
    assert!(head["witness"].as_str().unwrap().contains("suite-size=2"));
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).expect("every line is json");
        let obj = v.as_object().expect("object");
        for key in obj.keys() {
            assert!(
                ["check", "input", "verdict", "witness"].contains(&key.as_str()),
                "unexpected field {key}"
            );
        }
        assert!(obj.contains_key("check") && obj.contains_key("input") && obj.contains_key("verdict"));
        let verdict = v["verdict"].as_str().unwrap();
        assert!(["pass", "fail", "expected-fail"].contains(&verdict), "{verdict}");
    }
}

#[test]
fn the_seed_flag_overrides_the_file_seed() {
    let by_file = run(&["verify", &data("heisenberg-linear.nambu")]);
    assert!(stdout(&by_file).contains("seed: 0x00000007"));
    let by_flag = run(&["verify", &data("heisenberg-linear.nambu"), "--seed", "0x10"]);
    assert!(stdout(&by_flag).contains("seed: 0x00000010"));
}

#[test]
fn the_suite_size_flag_is_recorded_in_the_report() {
    let out = run(&["verify", &data("volume3.nambu"), "--suite-size", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("suite-size: 2"));
}

// -------------------------------------------------------------------
// search
// -------------------------------------------------------------------

#[test]
fn search_on_the_whole_algebra_finds_the_central_volume() {
    let out = run(&["search", &data("u2.nambu"), "--ideal", "all", "--case", "a"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("solution space dimension 1"), "{text}");
    assert!(text.contains("certified Nambu-Lie structure"), "{text}");
    assert!(text.contains("[x1, x2, x3, x4] -> x1"), "{text}");
}

#[test]
fn search_on_the_traceless_ideal_finds_the_centrally_scaled_volume() {
    let out = run(&["search", &data("u2.nambu"), "--ideal", "X2,X3,X4", "--case", "a"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("solution space dimension 1"), "{text}");
    assert!(text.contains("[x2, x3, x4] -> x1"), "{text}");
}

#[test]
fn the_wedge_ansatz_on_the_whole_algebra_only_finds_zero() {
    let out = run(&["search", &data("u2.nambu"), "--ideal", "all", "--case", "b"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("solution space dimension 0"));
}

#[test]
fn search_on_an_abelian_algebra_returns_the_full_dual() {
    let out = run(&["search", &data("abelian4.nambu"), "--ideal", "X1,X2,X3", "--case", "a"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("solution space dimension 4"), "{text}");
    assert!(text.contains("[x1, x2, x3] -> x4"), "{text}");
}

#[test]
fn a_non_ideal_subspace_is_rejected_with_its_violating_bracket() {
    let out = run(&["search", &data("u2.nambu"), "--ideal", "X1,X2", "--case", "a"]);
    assert_eq!(code(&out), 2);
    let text = stderr(&out);
    assert!(text.contains("not an ideal"), "{text}");
    assert!(text.contains("[X3, X2]"), "{text}");
}

// -------------------------------------------------------------------
// examples
// -------------------------------------------------------------------

#[test]
fn catalog_entries_report_their_documented_verdicts() {
    let out = run(&["examples", "g3-solvable"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("overall: pass"));
}

#[test]
fn documented_failures_keep_exit_status_zero() {
    let out = run(&["examples", "negative-noninvolutive"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("expected-fail"), "{text}");
    assert!(text.contains("overall: pass"), "{text}");
}

#[test]
fn unknown_catalog_names_list_the_known_entries() {
    let out = run(&["examples", "no-such-entry"]);
    assert_eq!(code(&out), 2);
    let text = stderr(&out);
    assert!(text.contains("jacobian-volume"), "{text}");
    assert!(text.contains("negative-nondecomposable"), "{text}");
}

// -------------------------------------------------------------------
// fi-check and core
// -------------------------------------------------------------------

#[test]
fn fi_check_reports_zero_residuals_for_the_volume() {
    let out = run(&["fi-check", &data("volume3.nambu")]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("fundamental identity on coordinate tuples"), "{text}");
    assert!(text.contains("seeded random tuples"), "{text}");
}

#[test]
fn core_prints_the_classification_and_the_factor_spaces() {
    let out = run(&["core", &data("heisenberg-linear.nambu")]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("volume kind, dimension 3"), "{text}");
    assert!(text.contains("factor intersection"), "{text}");
    assert!(text.contains("core is an ideal"), "{text}");
}
