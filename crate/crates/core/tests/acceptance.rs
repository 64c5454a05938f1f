//! Acceptance suite: one test per criterion, each printing a TAP-style line.
//! The same checks back `lassokit selftest`.

use std::sync::OnceLock;

use lassokit::corpus::Corpus;
use lassokit::selftest::{self, CriterionOutcome};
use lassokit::Caps;

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| Corpus::build(&Caps::default()).expect("corpus builds"))
}

fn conclude(outcome: CriterionOutcome) {
    println!("{}", outcome.tap_line());
    for line in &outcome.details {
        println!("# {line}");
    }
    assert!(
        outcome.passed,
        "criterion {} ({}) failed:\n{}",
        outcome.index,
        outcome.name,
        outcome.details.join("\n")
    );
}

#[test]
fn criterion_01_fig1_ground_truth() {
    conclude(selftest::criterion_1(&Caps::default()).unwrap());
}

#[test]
fn criterion_02_reversal_laws() {
    conclude(selftest::criterion_2(corpus(), &Caps::default()).unwrap());
}

#[test]
fn criterion_03_theorem_1_shadow() {
    conclude(selftest::criterion_3(corpus(), &Caps::default()).unwrap());
}

#[test]
fn criterion_04_omega_decision_agreement() {
    conclude(selftest::criterion_4(corpus(), &Caps::default()).unwrap());
}

#[test]
fn criterion_05_wilke_axiom_complexity() {
    conclude(selftest::criterion_5().unwrap());
}

#[test]
fn criterion_06_adjunction_shadow() {
    conclude(selftest::criterion_6(corpus(), &Caps::default()).unwrap());
}

#[test]
fn criterion_07_minimization() {
    conclude(selftest::criterion_7(corpus(), &Caps::default()).unwrap());
}

#[test]
fn criterion_08_preservation_quartet() {
    conclude(selftest::criterion_8(corpus(), &Caps::default()).unwrap());
}

#[test]
fn criterion_09_restricted_adjunction_shadow() {
    conclude(selftest::criterion_9(corpus(), &Caps::default()).unwrap());
}

#[test]
fn criterion_10_oracle_self_consistency() {
    conclude(selftest::criterion_10().unwrap());
}
