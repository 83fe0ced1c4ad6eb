mod support;

use support::properties::{self as p, CASES};

fn assert_ok(r: Result<(), String>) {
    if let Err(e) = r {
        panic!("{e}");
    }
}

#[test]
fn dual_involution() {
    assert_ok(p::dual_involution(CASES));
}

#[test]
fn fan_round_trip() {
    assert_ok(p::fan_round_trip(CASES));
}

#[test]
fn cover_vs_sampling() {
    assert_ok(p::cover_vs_sampling(CASES));
}

#[test]
fn cone_cover_lemma() {
    assert_ok(p::cone_cover_lemma(CASES));
}

#[test]
fn hhat_idempotent() {
    assert_ok(p::hhat_idempotent(CASES));
}

#[test]
fn separation_soundness() {
    assert_ok(p::separation_soundness(CASES));
}

#[test]
fn weakly_proper_implies_surjective() {
    assert_ok(p::weakly_proper_implies_surjective(CASES));
}

#[test]
fn exact_linear_algebra() {
    assert_ok(p::exact_linear_algebra(CASES));
}
