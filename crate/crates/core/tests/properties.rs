mod common;

use common::*;
use mfkit::catalog::Catalog;

const CASES: u32 = 256;

#[test]
fn ring_axioms_hold() {
    run_cases(CASES, ring_triple_strategy(), |((id, t), a, b, c)| ring_axioms(&a, &b, &c, id, t)).unwrap();
}

#[test]
fn rank_plus_nullity() {
    run_cases(CASES, matrix_pair_strategy(), |(ring, shape, a, _)| rank_nullity(ring, shape, &a)).unwrap();
}

#[test]
fn flatten_is_functorial() {
    run_cases(CASES, matrix_pair_strategy(), |(ring, shape, a, b)| flatten_functorial(ring, shape, &a, &b)).unwrap();
}

#[test]
fn decomposition_ignores_seeds() {
    let c = Catalog::default();
    run_cases(CASES, sum_strategy(3), |s| decomposition_seed_invariant(&c, &s)).unwrap();
}

#[test]
fn isomorphism_is_an_equivalence() {
    let c = Catalog::default();
    run_cases(CASES, iso_triple_strategy(), |[a, b, d]| iso_coherent(&c, &a, &b, &d)).unwrap();
}
