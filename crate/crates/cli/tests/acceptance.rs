//! The acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (visible with `--nocapture`). Every comparison is exact
//! over the rationals; a criterion passes only with zero counterexamples.

use std::process::Command;

use cuntz_core::chains::boundary;
use cuntz_core::testkit::{run_check, GenParams, Mutation};
use cuntz_core::{Chain, CuntzMonomial};

fn params() -> GenParams {
    GenParams {
        seed: 1,
        ..GenParams::default()
    }
}

fn criterion(num: usize, name: &str, ok: bool) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {num:02} ({name}): {verdict}");
    assert!(ok, "acceptance criterion {num} ({name}) failed");
}

fn passes(check: &str, p: &GenParams) -> bool {
    let report = run_check(check, p).expect("registered check");
    if !report.passed() {
        eprintln!(
            "{check}: {} counterexamples, first: {:?}",
            report.failures.len(),
            report.failures.first()
        );
    }
    report.passed()
}

#[test]
fn acceptance_01_chain_complex_sanity() {
    let p = params();
    let ok = passes("d-squared-zero", &p)
        && passes("shift-order", &p)
        && passes("norm-annihilates", &p);
    criterion(1, "chain-complex sanity", ok);
}

#[test]
fn acceptance_02_cyclic_equivalence_oracle() {
    criterion(2, "cyclic-equivalence oracle agreement", passes("cyclic-equiv-oracle", &params()));
}

#[test]
fn acceptance_03_shift_conjugation_of_slots() {
    criterion(3, "slot operators under the shift", passes("lemma-3.3", &params()));
}

#[test]
fn acceptance_04_cancellation_and_term_count() {
    let p = params();
    let ok = passes("lemma-3.4-cancellation", &p) && passes("lemma-3.4-sum", &p);
    criterion(4, "pairwise cancellation and 4n+4 terms", ok);
}

#[test]
fn acceptance_05_cyclic_boundary_identities() {
    criterion(5, "four cyclic-boundary identities", passes("lemma-3.5", &params()));
}

#[test]
fn acceptance_06_splitting_leibniz_rule() {
    criterion(6, "splitting Leibniz rule", passes("lemma-5.8", &params()));
}

#[test]
fn acceptance_07_transition_count_drops() {
    criterion(7, "P drops the transition count", passes("k-transitions", &params()));
}

#[test]
fn acceptance_08_no_transition_left() {
    let p = GenParams {
        trials: 50,
        ..params()
    };
    criterion(8, "Phi leaves no transitions", passes("no-transition-left", &p));
}

#[test]
fn acceptance_09_second_reduction() {
    let p = params();
    let ok = passes("second-reduction-cuntz", &p) && passes("second-reduction-free", &p);
    criterion(9, "second reduction on transition-free tensors", ok);
}

#[test]
fn acceptance_10_trace_suite() {
    let p = params();
    let units_vanish = [1usize, 3].iter().all(|&m| {
        boundary(&Chain::<CuntzMonomial>::units(m))
            .expect("degree >= 1")
            .is_zero()
    });
    let ok = passes("trace-commutes", &p)
        && passes("trace-power-cocycle", &p)
        && passes("units-boundary", &p)
        && units_vanish;
    criterion(10, "trace suite", ok);
}

#[test]
fn acceptance_11_constructive_hc_pipeline() {
    criterion(11, "constructive cobounding pipeline", passes("hc-pipeline", &params()));
}

#[test]
fn acceptance_12_phi_homotopy() {
    criterion(12, "Phi is homotopic to the identity", passes("phi-homotopy", &params()));
}

#[test]
fn acceptance_13_invariants_projector() {
    criterion(13, "rotation-invariants projector", passes("invariants-projector", &params()));
}

#[test]
fn acceptance_14_mutation_sensitivity() {
    let p = GenParams {
        trials: 25,
        mutation: Mutation::FlipFaceSign,
        ..params()
    };
    let ok = ["d-squared-zero", "lemma-3.4-sum", "second-reduction-cuntz", "second-reduction-free"]
        .iter()
        .all(|check| {
            let failed = !run_check(check, &p).expect("registered check").passed();
            if !failed {
                eprintln!("{check} missed the injected sign fault");
            }
            failed
        });
    criterion(14, "mutation sensitivity", ok);
}

#[test]
fn acceptance_15_cli_contract() {
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_cuntz"))
            .args(args)
            .output()
            .expect("binary runs")
    };
    let exact = |args: &[&str], expected: &str| {
        let out = run(args);
        out.status.success() && String::from_utf8_lossy(&out.stdout) == expected
    };
    let ok = exact(&["apply", "d", "--n", "1", "p[1] (x) q[1]"], "1 - p[1]q[1]\n")
        && exact(
            &["apply", "t", "--n", "1", "p[1] (x) q[1]"],
            "-1 * (q[1] (x) p[1])\n",
        )
        && exact(&["apply", "phi", "--n", "1", "p[1] (x) q[1]"], "1 (x) 1\n")
        && run(&["verify", "all", "--seed", "1"]).status.success();
    criterion(15, "CLI contract", ok);
}
