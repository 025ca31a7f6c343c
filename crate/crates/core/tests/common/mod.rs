//! Property checks shared by the proptest suite and the acceptance target.

#![allow(dead_code)]

use std::collections::BTreeMap;

use mfkit::catalog::{Catalog, RingId};
use mfkit::decomp::{mf_decompose_with, mf_iso, random_equivalent, DecompConfig};
use mfkit::field::PrimeField;
use mfkit::linalg::{flatten, kernel_dim, rank, Mat, RingMatrix};
use mfkit::matfac::MatFac;
use mfkit::poly::{Monomial, Poly};
use mfkit::ring::{cached_ring, RingRef};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const RINGS: [RingId; 4] = [RingId::Ainf1, RingId::Dinf1, RingId::Dinf2, RingId::Node];

pub fn k() -> PrimeField {
    PrimeField::default_field()
}

/// Up to five terms of degree at most four, coefficients in a small range
/// or anywhere in the field.
pub fn poly_strategy(vars: usize) -> impl Strategy<Value = Poly> {
    let coef = prop_oneof![-5i64..=5, 0i64..32003];
    let term = (coef, prop::collection::vec(0u8..=3, vars));
    prop::collection::vec(term, 0..=5).prop_map(move |terms| {
        Poly::from_terms(
            k(),
            terms.into_iter().map(|(c, e)| {
                let mut m = Monomial::ONE;
                m.0[..e.len()].copy_from_slice(&e);
                (c, m)
            }),
        )
    })
}

fn ring_for(id: RingId, order: u32) -> RingRef {
    cached_ring(&id.hypersurface(k()), order).unwrap()
}

/// A ring, an order and three elements in its variables.
pub fn ring_triple_strategy() -> impl Strategy<Value = ((RingId, u32), Poly, Poly, Poly)> {
    (prop::sample::select(RINGS.to_vec()), 2u32..=6).prop_flat_map(|(id, order)| {
        let v = id.vars();
        (Just((id, order)), poly_strategy(v), poly_strategy(v), poly_strategy(v))
    })
}

pub fn ring_axioms(a: &Poly, b: &Poly, c: &Poly, id: RingId, order: u32) -> Result<(), TestCaseError> {
    let r = ring_for(id, order);
    let (a, b, c) = (r.from_poly(a), r.from_poly(b), r.from_poly(c));
    prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
    prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
    prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
    prop_assert_eq!(r.add(&a, &b), r.add(&b, &a));
    prop_assert_eq!(r.mul(&a, &r.one()), a.clone());
    prop_assert_eq!(r.sub(&r.add(&a, &b), &b), a);
    Ok(())
}

fn matrix(r: &RingRef, rows: usize, cols: usize, entries: &[Poly]) -> RingMatrix {
    let polys: Vec<Vec<Poly>> = (0..rows)
        .map(|i| (0..cols).map(|j| entries[(i * cols + j) % entries.len()].clone()).collect())
        .collect();
    RingMatrix::from_polys(r, &polys).unwrap()
}

/// Shapes and entries for a pair of composable matrices.
pub type MatrixPair = ((RingId, u32), (usize, usize, usize), Vec<Poly>, Vec<Poly>);

pub fn matrix_pair_strategy() -> impl Strategy<Value = MatrixPair> {
    (prop::sample::select(RINGS.to_vec()), 2u32..=4)
        .prop_flat_map(|(id, order)| {
            let vars = id.vars();
            (
                Just((id, order)),
                (1usize..=3, 1usize..=3, 1usize..=3),
                prop::collection::vec(poly_strategy(vars), 1..=9),
                prop::collection::vec(poly_strategy(vars), 1..=9),
            )
        })
}

pub fn rank_nullity(
    (id, order): (RingId, u32),
    (m, n, _): (usize, usize, usize),
    entries: &[Poly],
) -> Result<(), TestCaseError> {
    let r = ring_for(id, order);
    let a = matrix(&r, m, n, entries);
    prop_assert_eq!(rank(&a) + kernel_dim(&a), n * r.dim());
    let flat = flatten(&a).mat;
    let ker = flat.kernel_basis();
    prop_assert_eq!(ker.len(), kernel_dim(&a));
    for v in &ker {
        prop_assert!(flat.mul_vec(v).iter().all(|&x| x == 0));
    }
    prop_assert_eq!(flat.transpose().rank(), flat.rank());
    Ok(())
}

pub fn flatten_functorial(
    (id, order): (RingId, u32),
    (m, n, p): (usize, usize, usize),
    left: &[Poly],
    right: &[Poly],
) -> Result<(), TestCaseError> {
    let r = ring_for(id, order);
    let a = matrix(&r, m, n, left);
    let b = matrix(&r, n, p, right);
    let a2 = matrix(&r, m, n, right);
    prop_assert_eq!(flatten(&a.mul(&b).unwrap()).mat, flatten(&a).mat.mul(&flatten(&b).mat));
    prop_assert_eq!(flatten(&a.add(&a2).unwrap()).mat, flatten(&a).mat.add(&flatten(&a2).mat));
    prop_assert_eq!(flatten(&RingMatrix::identity(&r, n)).mat, Mat::identity(k(), n * r.dim()));
    Ok(())
}

/// Indecomposables used to build random sums: `(label, factorization)`.
pub fn pieces(c: &Catalog) -> Vec<(String, MatFac)> {
    let mut out = vec![(c.ainf1_i().label, c.ainf1_i().mf)];
    for n in 1..=3 {
        let e = c.ainf1(n).unwrap();
        out.push((e.label, e.mf));
    }
    out
}

/// Indices into [`pieces`], a conjugation seed and a step count.
pub fn sum_strategy(max_parts: usize) -> impl Strategy<Value = (Vec<usize>, u64, usize)> {
    (prop::collection::vec(0usize..4, 1..=max_parts), any::<u64>(), 0usize..=2)
}

fn build_sum(c: &Catalog, parts: &[usize], seed: u64, steps: usize) -> (MatFac, BTreeMap<String, usize>) {
    let ps = pieces(c);
    let mut expected = BTreeMap::new();
    let mfs: Vec<MatFac> = parts
        .iter()
        .map(|&i| {
            *expected.entry(ps[i].0.clone()).or_insert(0) += 1;
            ps[i].1.clone()
        })
        .collect();
    let sum = MatFac::direct_sum_all(&c.hypersurface(RingId::Ainf1), &mfs).unwrap();
    (random_equivalent(&sum, seed, steps).unwrap(), expected)
}

pub fn decomposition_seed_invariant(
    c: &Catalog,
    (parts, seed, steps): &(Vec<usize>, u64, usize),
) -> Result<(), TestCaseError> {
    let (m, expected) = build_sum(c, parts, *seed, *steps);
    let run = |s: u64| {
        mf_decompose_with(&m, &DecompConfig { seed: s, ..DecompConfig::default() })
            .map(|r| r.multiplicities)
            .map_err(|e| TestCaseError::fail(e.to_string()))
    };
    let first = run(seed.wrapping_add(1))?;
    let second = run(seed.wrapping_mul(31).wrapping_add(7))?;
    prop_assert_eq!(&first, &expected);
    prop_assert_eq!(first, second);
    Ok(())
}

pub fn iso_coherent(
    c: &Catalog,
    a: &(Vec<usize>, u64, usize),
    b: &(Vec<usize>, u64, usize),
    d: &(Vec<usize>, u64, usize),
) -> Result<(), TestCaseError> {
    let build = |s: &(Vec<usize>, u64, usize)| build_sum(c, &s.0, s.1, s.2);
    let (ma, ea) = build(a);
    let (mb, eb) = build(b);
    let (md, ed) = build(d);
    let iso = |x: &MatFac, y: &MatFac| mf_iso(x, y).map_err(|e| TestCaseError::fail(e.to_string()));
    prop_assert!(iso(&ma, &ma)?);
    let ab = iso(&ma, &mb)?;
    prop_assert_eq!(ab, iso(&mb, &ma)?);
    prop_assert_eq!(ab, ea == eb);
    let bd = iso(&mb, &md)?;
    let ad = iso(&ma, &md)?;
    if ab && bd {
        prop_assert!(ad);
    }
    prop_assert_eq!(ad, ea == ed);
    Ok(())
}

/// Pieces drawn so that isomorphic pairs come up often.
pub fn iso_triple_strategy() -> impl Strategy<Value = [(Vec<usize>, u64, usize); 3]> {
    let small = || (prop::collection::vec(0usize..4, 1..=2), any::<u64>(), 0usize..=2);
    (small(), any::<u64>(), any::<u64>(), 0usize..=2, 0usize..=2, any::<bool>()).prop_map(
        |(a, s1, s2, t1, t2, same)| {
            let mut b_parts = a.0.clone();
            if !same {
                b_parts[0] = (b_parts[0] + 1) % 4;
            }
            b_parts.reverse();
            [a.clone(), (b_parts, s1, t1), (a.0, s2, t2)]
        },
    )
}

/// Runs `check` on `cases` random inputs; returns the failure message.
pub fn run_cases<S: Strategy>(
    cases: u32,
    strategy: S,
    check: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, check).map_err(|e| e.to_string())
}
