//! End-to-end checks of the command line interface: exit codes, report
//! shapes, and byte stability of the JSON output.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdga"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn betti_of_m_as_json() {
    let out = run(&["betti", "--preset", "M"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["subcommand"], "betti");
    assert_eq!(v["input"], "preset:M");
    assert_eq!(
        v["result"],
        serde_json::json!([1, 6, 17, 30, 36, 30, 17, 6, 1])
    );
}

#[test]
fn betti_of_invariant_subcomplex() {
    let out = run(&[
        "betti",
        "--preset",
        "M",
        "--action",
        "rho",
        "--invariant",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"], serde_json::json!([1, 0, 13, 0, 26, 0, 13, 0, 1]));
}

#[test]
fn gmassey_reproduces_the_headline_value() {
    let out = run(&[
        "gmassey",
        "--preset",
        "M",
        "--action",
        "rho",
        "--invariant",
        "-a",
        "b1^b2",
        "-x",
        "2 a1^c2 - a2^c1 + a1^c1 + a2^c2",
        "-x",
        "c1^c2",
        "-x",
        "a1^c1 + a2^c1 + a2^c2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["verdict"], "nontrivial-certified");
    assert_eq!(v["result"]["value_top"], "-4/3");
    assert_eq!(v["result"]["w_dimension"], 0);
    assert_eq!(v["result"]["formality"], "non-formal");
}

#[test]
fn massey4_certificate_from_the_command_line() {
    let out = run(&[
        "massey4-certify",
        "--preset",
        "M",
        "--action",
        "rho",
        "--invariant",
        "-a",
        "c1^c2",
        "-a",
        "b1^b2",
        "-a",
        "b1^b2",
        "-a",
        "a1^c1 + a2^c1 + a2^c2",
        "--sigma",
        "2 a1^c2 - a2^c1 + a1^c1 + a2^c2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["verdict"], "nontrivial-certified");
    assert_eq!(v["result"]["sigma_psi_top"], "-1/3");
}

#[test]
fn non_invariant_element_is_rejected_on_the_invariant_subcomplex() {
    let out = run(&[
        "massey3",
        "--preset",
        "M",
        "--action",
        "rho",
        "--invariant",
        "-a",
        "a1^a2",
        "-a",
        "a1^b1",
        "-a",
        "a1^a2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not invariant"), "{err}");
}

#[test]
fn verify_suite_passes_and_prints_a_table() {
    let out = run(&["verify", "--preset", "M", "--suite", "paper"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in [
        "betti-n",
        "quotient-betti",
        "quadruple-product",
        "g-massey",
        "bundle-invariants",
        "coordinate-model",
    ] {
        assert!(text.contains(name), "missing {name} in:\n{text}");
    }
    assert!(text.contains("PASS"));
}

#[test]
fn unknown_subcommand_exits_two() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_error_location_is_reported_with_exit_two() {
    let dir = std::env::temp_dir().join("cdga-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.cdga");
    std::fs::write(&path, "algebra x\ngenerator a 1\nd a = q^a\n").unwrap();
    let out = run(&["betti", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("3:7"), "{err}");
}

#[test]
fn json_reports_are_byte_stable() {
    let a = stdout(&run(&["cohomology", "--preset", "N", "--degree", "2"]));
    let b = stdout(&run(&["cohomology", "--preset", "N", "--degree", "2"]));
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let g1 = stdout(&run(&[
        "gmassey", "--preset", "M", "--action", "rho", "--invariant",
        "-a", "b1^b2", "-x", "2 a1^c2 - a2^c1 + a1^c1 + a2^c2", "-x", "c1^c2",
        "-x", "a1^c1 + a2^c1 + a2^c2",
    ]));
    let g2 = stdout(&run(&[
        "gmassey", "--preset", "M", "--action", "rho", "--invariant",
        "-a", "b1^b2", "-x", "2 a1^c2 - a2^c1 + a1^c1 + a2^c2", "-x", "c1^c2",
        "-x", "a1^c1 + a2^c1 + a2^c2",
    ]));
    assert_eq!(g1, g2);
}

#[test]
fn every_subcommand_has_help() {
    for sub in [
        "betti",
        "cohomology",
        "check",
        "invariants",
        "fixed-points",
        "euler-quotient",
        "massey3",
        "massey4-certify",
        "gmassey",
        "lemma25",
        "symplectic-check",
        "lefschetz",
        "bundle",
        "coordinate-verify",
        "verify",
    ] {
        let out = run(&[sub, "--help"]);
        assert!(out.status.success(), "{sub} --help failed");
        assert!(!stdout(&out).is_empty());
    }
}

#[test]
fn check_reports_automorphism_and_chain_condition() {
    let out = run(&["check", "--preset", "M", "--action", "rho"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["pass"], true);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks.iter().all(|c| c["pass"] == true));
}

#[test]
fn fixed_points_and_euler_quotient() {
    let out = run(&["fixed-points", "--preset", "M"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["product_over_four_factors"], 81);

    let out = run(&[
        "euler-quotient",
        "--preset",
        "M",
        "--chi",
        "0",
        "--order",
        "3",
        "--isotropy",
        "3:81",
        "--b2",
        "13",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["euler_characteristic"], "54");
    assert_eq!(v["result"]["resolution_b2"], 256);
}

#[test]
fn bundle_comparison_verdict() {
    let out = run(&["bundle", "--preset", "M"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["eisenstein"]["invariant"], 3);
    assert_eq!(v["result"]["gaussian"]["invariant"], 4);
    assert_eq!(v["result"]["verdict"], "distinct");
}

#[test]
fn lefschetz_kernel_from_the_command_line() {
    let out = run(&[
        "lefschetz",
        "--preset",
        "M",
        "--action",
        "rho",
        "--invariant",
        "--omega",
        "a1^a2 - b1^e2 + b2^e1 + c1^c2",
        "--degree",
        "2",
        "--power",
        "2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["kernel_dimension"], 3);
}

#[test]
fn symplectic_check_passes_for_omega() {
    let out = run(&[
        "symplectic-check",
        "--preset",
        "M",
        "--omega",
        "a1^a2 - b1^e2 + b2^e1 + c1^c2",
        "--action",
        "rho",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["pass"], true);
}

#[test]
fn lemma25_bridge_from_the_command_line() {
    let out = run(&[
        "lemma25",
        "--preset",
        "M",
        "--action",
        "rho",
        "--invariant",
        "-a",
        "b1^b2",
        "-x",
        "2 a1^c2 - a2^c1 + a1^c1 + a2^c2",
        "-x",
        "c1^c2",
        "-x",
        "a1^c1 + a2^c1 + a2^c2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["identity_holds"], true);
    assert_eq!(v["result"]["chi"], "0");
}

#[test]
fn massey3_on_a_presentation_file() {
    let dir = std::env::temp_dir().join("cdga-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("heis3.cdga");
    std::fs::write(
        &path,
        "algebra heis3\ngenerator x 1\ngenerator y 1\ngenerator z 1\nd z = x^y\n",
    )
    .unwrap();
    let out = run(&[
        "massey3",
        "--file",
        path.to_str().unwrap(),
        "-a",
        "x",
        "-a",
        "x",
        "-a",
        "y",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["verdict"], "nontrivial-certified");
    assert_eq!(v["result"]["value"]["representative"], "x^z");
}

#[test]
fn text_format_renders_human_readable_report() {
    let out = run(&[
        "check",
        "--preset",
        "N",
        "--format",
        "text",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[pass]"), "{text}");
}
