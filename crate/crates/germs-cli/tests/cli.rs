//! End-to-end tests against the built binary: output contents, the exit-code
//! contract (0 ok, 1 computation/suite failure, 2 bad input), byte
//! determinism, and the machine-format round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

use germs::etypes::{self, ETypeSpec};
use germs::rat::{parse_rat, rat};

fn germs_cmd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_germs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn doc(name: &str) -> String {
    let p: PathBuf =
        [env!("CARGO_MANIFEST_DIR"), "tests", "docs", name].iter().collect();
    p.to_str().expect("utf-8 path").to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn invariants_of_a1_weight_3() {
    let out = germs_cmd(&["invariants", &doc("a1_weight3.toml")]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    for needle in [
        "kind: A_1 (weights 3)",
        "delta_y = 4/3",
        "quasi-log-terminal: yes",
        "mu = 0",
    ] {
        assert!(text.contains(needle), "missing {needle:?} in:\n{text}");
    }
    // the single vertex row: Z = 1, a = 1/3
    assert!(text.lines().any(|l| l.starts_with('1') && l.ends_with("1/3")), "{text}");
}

#[test]
fn invariants_machine_output_reparses_exactly() {
    let out = germs_cmd(&["invariants", &doc("a1_weight3.toml"), "--format", "machine"]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["kind"], "A_1 (weights 3)");
    assert_eq!(v["rational_double_point"], false);
    assert_eq!(parse_rat(v["delta_y"].as_str().unwrap()), Some(rat(4, 3)));
    assert_eq!(parse_rat(v["vertices"][0]["a"].as_str().unwrap()), Some(rat(1, 3)));
    assert_eq!(parse_rat(v["vertices"][0]["z"].as_str().unwrap()), Some(rat(1, 1)));
    assert_eq!(parse_rat(v["arithmetic_genus"].as_str().unwrap()), Some(rat(0, 1)));
}

#[test]
fn smooth_center_reports_delta_4_and_half_multiplicity() {
    let out = germs_cmd(&["invariants", &doc("smooth_boundary.toml")]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("kind: smooth point"), "{text}");
    assert!(text.contains("delta_y = 4"), "{text}");
    // mult_y B = (1/2) * 3, and mu is half of that
    assert!(text.contains("mu = 3/4"), "{text}");

    let out = germs_cmd(&["mu", &doc("smooth_boundary.toml"), "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["mu"], "3/4");
}

#[test]
fn classify_subcommand_reports_kind_only() {
    let out = germs_cmd(&["classify", &doc("d4_free.toml")]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("kind: D_4 (chain 2 2)"), "{text}");
    assert!(text.contains("rational double point: yes"), "{text}");
}

#[test]
fn malformed_rational_exits_2_naming_the_field() {
    let out = germs_cmd(&["invariants", &doc("bad_rational.toml")]);
    assert_eq!(exit_code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("boundary[0].coeff: invalid rational '1/0'"), "{err}");
}

#[test]
fn unknown_field_exits_2() {
    let out = germs_cmd(&["invariants", &doc("unknown_field.toml")]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("parse error"), "{}", stderr(&out));
}

#[test]
fn missing_file_exits_2() {
    let out = germs_cmd(&["invariants", &doc("no_such_file.toml")]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("cannot read"), "{}", stderr(&out));
}

#[test]
fn freeness_without_d_data_exits_2() {
    let out = germs_cmd(&["freeness", &doc("a1_weight3.toml")]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("d_data"), "{}", stderr(&out));
}

#[test]
fn indefinite_graph_exits_1() {
    let out = germs_cmd(&["invariants", &doc("cycle3.toml")]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("not negative definite"), "{}", stderr(&out));
}

#[test]
fn d4_is_free_without_curve_degrees() {
    let out = germs_cmd(&["freeness", &doc("d4_free.toml"), "--format", "machine"]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["outcome"], "free");
    assert_eq!(v["basis"], "non-chain-kind");
    assert_eq!(v["system"], "|D|");
    assert_eq!(v["quasi_log_terminal"], true);
    assert_eq!(parse_rat(v["delta_y"].as_str().unwrap()), Some(rat(2, 1)));
    assert_eq!(parse_rat(v["square_threshold"].as_str().unwrap()), Some(rat(2, 1)));
    assert_eq!(v["min_dc"], serde_json::Value::Null);
}

#[test]
fn threshold_equality_is_not_determined() {
    // delta_y = 2 at A_1 with empty boundary; D^2 = 2 fails the strict test.
    let out = germs_cmd(&["freeness", &doc("a1_equality.toml")]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(
        text.contains("verdict: not-determined (D^2 does not strictly exceed"),
        "{text}"
    );
    assert!(text.contains("thresholds: D^2 > 2"), "{text}");
}

#[test]
fn verify_appendix_passes_and_round_trips() {
    let out = germs_cmd(&["verify", "appendix", "--m", "2..3", "--format", "machine"]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["all_pass"], true);
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 30);
    assert!(cells.iter().all(|c| c["status"] == "pass"));

    // Round trip: every reported solver value re-parses to what the library
    // computes for that (row, m) today.
    for cell in cells {
        let row = cell["row"].as_u64().unwrap() as u8;
        let m = cell["m"].as_u64().unwrap() as u32;
        let spec = ETypeSpec::new(row, m).unwrap();
        let fresh = etypes::etype_aci(&spec);
        for val in cell["values"].as_array().unwrap() {
            let id = val["id"].as_str().unwrap();
            let got = parse_rat(val["got"].as_str().unwrap()).unwrap();
            assert_eq!(&got, &fresh[id], "row {row} m {m} vertex {id}");
            let expected = parse_rat(val["expected"].as_str().unwrap()).unwrap();
            assert_eq!(expected, got, "passing cell must agree at {id}");
        }
    }
}

#[test]
fn verify_suites_pass_with_small_trial_counts() {
    for suite in ["continuants", "lemmas"] {
        let out = germs_cmd(&["verify", suite, "--trials", "40", "--seed", "11"]);
        assert_eq!(exit_code(&out), 0, "{suite}: {}", stderr(&out));
        let text = stdout(&out);
        assert!(text.contains("result: pass"), "{suite}:\n{text}");
        assert!(text.contains("trials 40, seed 11"), "{suite}:\n{text}");
    }
}

#[test]
fn bad_m_range_exits_2() {
    for bad in ["6..2", "2", "x..3"] {
        let out = germs_cmd(&["verify", "appendix", "--m", bad]);
        assert_eq!(exit_code(&out), 2, "--m {bad}");
    }
}

#[test]
fn output_is_byte_deterministic() {
    let runs: Vec<&[&str]> = vec![
        &["invariants", ""],
        &["verify", "lemmas", "--trials", "25", "--seed", "3"],
        &["verify", "appendix", "--m", "2..4", "--format", "machine"],
    ];
    let file = doc("d4_free.toml");
    for args in runs {
        let filled: Vec<&str> =
            args.iter().map(|a| if a.is_empty() { file.as_str() } else { a }).collect();
        let first = germs_cmd(&filled);
        let second = germs_cmd(&filled);
        assert_eq!(first.stdout, second.stdout, "args {filled:?}");
        assert_eq!(exit_code(&first), exit_code(&second));
    }
}
