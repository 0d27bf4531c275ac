use std::process::{Command, Output};

use cuntz_core::parse::{parse_chain, Parsed};

fn cuntz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuntz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

#[test]
fn apply_examples_are_bit_exact() {
    let cases = [
        (vec!["apply", "d", "--n", "1", "p[1] (x) q[1]"], "1 - p[1]q[1]\n"),
        (
            vec!["apply", "t", "--n", "1", "p[1] (x) q[1]"],
            "-1 * (q[1] (x) p[1])\n",
        ),
        (
            vec!["apply", "phi", "--n", "1", "p[1] (x) q[1]"],
            "1 (x) 1\n",
        ),
    ];
    for (args, expected) in cases {
        let out = cuntz(&args);
        assert!(out.status.success(), "{args:?}: {}", stderr(&out));
        assert_eq!(stdout(&out), expected, "{args:?}");
    }
}

#[test]
fn apply_output_round_trips() {
    let cases = [
        (vec!["apply", "d", "--n", "2"], "2 * (p[1] (x) q[1] (x) p[2,1]q[2])"),
        (vec!["apply", "N", "--n", "1"], "p[1] (x) q[1] + 1/3 * (q[2] (x) q[2])"),
        (vec!["apply", "s", "--n", "1"], "p[1]q[2] (x) p[2]"),
        (vec!["apply", "r", "--n", "1"], "p[1]q[2] (x) p[2]"),
        (vec!["apply", "P", "--n", "2"], "p[1] (x) p[2] (x) q[2,1]"),
        (vec!["apply", "phi", "--n", "1"], "p[1,2] (x) p[3]q[2]"),
        (vec!["apply", "rho-long", "--n", "0"], "p[1,2]q[3]"),
        (vec!["apply", "rho-free", "--n", "0"], "w[1,2,1]"),
        (vec!["apply", "r", "--n", "2"], "w[1] (x) w[2,2] (x) w[]"),
    ];
    for (mut args, input) in cases {
        args.push(input);
        let out = cuntz(&args);
        assert!(out.status.success(), "{args:?}: {}", stderr(&out));
        let printed = stdout(&out);
        let printed = printed.trim_end_matches('\n');
        let reparsed = parse_chain(printed, None).unwrap_or_else(|e| {
            panic!("output of {args:?} does not re-parse: {printed:?}: {e}")
        });
        let reprinted = match reparsed {
            Parsed::Cuntz(c) => c.to_string(),
            Parsed::Free(c) => c.to_string(),
        };
        assert_eq!(reprinted, printed, "{args:?}");
    }
}

#[test]
fn apply_rejects_bad_input() {
    let out = cuntz(&["apply", "d", "--n", "1", "q[1] p[1]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("syntax error at byte 5"), "{}", stderr(&out));

    let out = cuntz(&["apply", "d", "--n", "2", "p[1] (x) q[1]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("degree mismatch"), "{}", stderr(&out));

    let out = cuntz(&["apply", "frobnicate", "--n", "1", "p[1] (x) q[1]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown operator"), "{}", stderr(&out));

    let out = cuntz(&["apply", "d_i", "--n", "1", "p[1] (x) q[1]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--i"), "{}", stderr(&out));

    let out = cuntz(&["apply", "phi", "--n", "1", "w[1] (x) w[2]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn apply_face_and_json() {
    let out = cuntz(&["apply", "d_i", "--i", "1", "--n", "1", "p[1] (x) q[1]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "-1 * p[1]q[1]\n");

    let out = cuntz(&[
        "apply", "d", "--n", "1", "--format", "json", "p[1] (x) q[1]",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["operator"], "d");
    assert_eq!(v["degree"], 1);
    assert_eq!(v["output"], "1 - p[1]q[1]");
}

#[test]
fn verify_single_check_json_schema() {
    let out = cuntz(&[
        "verify",
        "lemma-3.3",
        "--n",
        "2",
        "--trials",
        "10",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["check"], "lemma-3.3");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["trials"], 10);
    assert!(v["failures"].as_array().unwrap().is_empty());
    assert_eq!(v["params"]["seed"], 7);
    assert_eq!(v["params"]["degree"], 2);
}

#[test]
fn verify_mutation_fails_with_counterexample() {
    let out = cuntz(&[
        "verify",
        "d-squared-zero",
        "--mutate",
        "flip-face-sign",
        "--trials",
        "25",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL"), "{text}");
    assert!(text.contains("expected: 0"), "{text}");
}

#[test]
fn verify_unknown_check_is_usage_error() {
    let out = cuntz(&["verify", "no-such-check"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown check"), "{}", stderr(&out));
}

#[test]
fn verify_reports_are_seed_stable() {
    let args = ["verify", "shift-order", "--trials", "5", "--seed", "3", "--format", "json"];
    let a = cuntz(&args);
    let b = cuntz(&args);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn demo_cobound_narratives() {
    let out = cuntz(&["demo", "cobound", "--n", "2", "--c", "3", "--seed", "5"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("recovered λ = 3, residual 0"), "{text}");

    let out = cuntz(&["demo", "cobound", "--n", "1", "--c", "0", "--trials", "25"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("recovered λ = 0, residual 0"));

    let out = cuntz(&["demo", "cobound", "--n", "2", "--c", "0", "--trials", "25"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("residual 0"));

    let out = cuntz(&["demo", "cobound", "--n", "1", "--c", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("odd"), "{}", stderr(&out));
}
