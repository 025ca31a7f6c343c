use mfkit::catalog::{Catalog, D1Kind, RingId};
use mfkit::funcat::*;
use mfkit::homology::{stable_hom_dim, HomologyConfig, Verdict};
use mfkit::matfac::{MFMorphism, PolyMatrix};
use mfkit::poly::Poly;

fn cfg() -> HomologyConfig {
    HomologyConfig::default()
}

fn ainf_window(c: &Catalog, n: u32) -> Window {
    Window::standard(c, RingId::Ainf1, n)
}

#[test]
fn identity_presents_the_zero_functor() {
    let c = Catalog::default();
    let f = functor_from(&MFMorphism::identity(&c.ainf1(1).unwrap().mf));
    assert_eq!(dim_vector(&f, &ainf_window(&c, 4), &cfg()).unwrap(), vec![0; 6]);
}

#[test]
fn representable_functor_values() {
    let c = Catalog::default();
    let w = Window::new(
        RingId::Ainf1,
        vec![c.ainf1_i(), c.ainf1(1).unwrap(), c.ainf1(2).unwrap(), c.ainf1(3).unwrap()],
    );
    let f = hom_functor(&c.ainf1(1).unwrap().mf);
    assert_eq!(dim_vector(&f, &w, &cfg()).unwrap(), vec![1, 2, 2, 2]);
}

#[test]
fn h1_and_multiplication_by_y() {
    let c = Catalog::default();
    let w = ainf_window(&c, 6);
    let h1 = h_functor(&c, 1).unwrap();
    assert_eq!(dim_vector(&h1, &w, &cfg()).unwrap(), vec![0, 1, 1, 1, 1, 1, 1, 1]);
    assert_eq!(eval_dim(&h1, &c.ainf1(5).unwrap(), &cfg()).unwrap(), 1);
    assert_eq!(eval_dim(&h1, &c.ainf1_i(), &cfg()).unwrap(), 1);
    let i = c.ainf1_i().mf;
    let y = functor_from(&MFMorphism::scalar(&i, &Poly::var(c.field(), 1)));
    assert_eq!(dim_vector(&y, &w, &cfg()).unwrap(), dim_vector(&h1, &w, &cfg()).unwrap());
}

#[test]
fn h_prime_vanishes_only_at_i() {
    let c = Catalog::default();
    let v = dim_vector(&h_prime_functor(&c).unwrap(), &ainf_window(&c, 6), &cfg()).unwrap();
    assert_eq!(v, vec![0, 0, 1, 1, 1, 1, 1, 1]);
    assert_eq!(support(&v), (2..8).collect::<Vec<_>>());
}

#[test]
fn g1_is_constant_one() {
    let c = Catalog::default();
    let w = Window::standard(&c, RingId::Dinf2, 4);
    assert_eq!(dim_vector(&g_functor(&c).unwrap(), &w, &cfg()).unwrap(), vec![0, 1, 1, 1, 1, 1]);
}

#[test]
fn kernel_sequences_are_exact() {
    let c = Catalog::default();
    for n in 1..=3 {
        let seq = ainf1_kernel_sequence(&c, n, &cfg(), 0).unwrap();
        let r = exactness_check(&seq, &cfg()).unwrap();
        assert!(r.composite_zero);
        assert!(r.verdict().unwrap(), "n = {n}: {r:?}");
    }
    let seq = dinf2_kernel_sequence(&c, &cfg(), 0).unwrap();
    assert!(exactness_check(&seq, &cfg()).unwrap().is_exact());
}

#[test]
fn split_sequence_is_exact_and_split() {
    let c = Catalog::default();
    let k = c.field();
    let i = c.ainf1_i().mf;
    let ii = i.direct_sum(&i).unwrap();
    let f = MFMorphism::from_alpha(&i, &ii, PolyMatrix::parse(k, &[&["1"], &["0"]]).unwrap()).unwrap();
    let g = MFMorphism::from_alpha(&ii, &i, PolyMatrix::parse(k, &[&["0", "1"]]).unwrap()).unwrap();
    let seq = ShortSequence::new(f, g).unwrap();
    assert!(exactness_check(&seq, &cfg()).unwrap().is_exact());
    assert_eq!(split_check(&seq, &cfg()).unwrap(), SplitVerdict::Split);
}

#[test]
fn non_exact_sequences_are_rejected() {
    let c = Catalog::default();
    let k = c.field();
    let i = c.ainf1_i().mf;
    // 0 -> I -> I -> I -> 0 with y then 1: the composite is y, not zero
    let y = MFMorphism::scalar(&i, &Poly::var(k, 1));
    let seq = ShortSequence::new(y.clone(), MFMorphism::identity(&i)).unwrap();
    assert!(!exactness_check(&seq, &cfg()).unwrap().is_exact());
    // zero then identity: composite zero, but the first map is not injective
    let seq = ShortSequence::new(MFMorphism::zero(&i, &i), MFMorphism::identity(&i)).unwrap();
    let r = exactness_check(&seq, &cfg()).unwrap();
    assert!(r.composite_zero);
    assert!(!r.is_exact());
    assert!(ShortSequence::new(y, MFMorphism::identity(&c.ainf1(1).unwrap().mf)).is_err());
}

#[test]
fn split_ar_shape_is_detected() {
    let c = Catalog::default();
    let k = c.field();
    let (i1, i2) = (c.ainf1(1).unwrap().mf, c.ainf1(2).unwrap().mf);
    let mid = i1.direct_sum(&i2).unwrap();
    let f = MFMorphism::from_alpha(&i1, &mid, PolyMatrix::parse(k, &[&["1", "0"], &["0", "1"], &["0", "0"], &["0", "0"]]).unwrap()).unwrap();
    let g = MFMorphism::from_alpha(&mid, &i2, PolyMatrix::parse(k, &[&["0", "0", "1", "0"], &["0", "0", "0", "1"]]).unwrap()).unwrap();
    let seq = ShortSequence::new(f, g).unwrap();
    assert!(exactness_check(&seq, &cfg()).unwrap().is_exact());
    assert_eq!(split_check(&seq, &cfg()).unwrap(), SplitVerdict::Split);
}

#[test]
fn ar_sequences_small_n() {
    let c = Catalog::default();
    let w = ainf_window(&c, 6);
    let r = ar_verify(&c, 1, &w, &cfg()).unwrap();
    assert!(r.exact() && r.non_split() && r.almost_split_on_window(), "{r:?}");
    let r = ar_verify(&c, 3, &w, &cfg()).unwrap();
    assert!(r.passes());
    let at_end = r.almost_split.iter().find(|e| e.is_end).unwrap();
    assert_eq!(at_end.label, "ainf1.I_3");
    assert_eq!(at_end.cokernel.verdict, Verdict::Stable(1));
    assert!(ar_verify(&c, 1, &Window::standard(&c, RingId::Dinf2, 2), &cfg()).is_err());
}

#[test]
fn simple_functors_are_indicators() {
    let c = Catalog::default();
    let w = ainf_window(&c, 5);
    for n in 1..=4u32 {
        let s = simple_functor(&ainf1_ar_sequence(&c, n).unwrap());
        let v = dim_vector(&s, &w, &cfg()).unwrap();
        let expected: Vec<usize> = (0..w.len()).map(|i| usize::from(i == n as usize + 1)).collect();
        assert_eq!(v, expected, "n = {n}");
    }
}

#[test]
fn grothendieck_relation() {
    let c = Catalog::default();
    let w = ainf_window(&c, 6);
    let hom = |n: u32| -> Vec<i64> {
        let x = if n == 0 { c.free(RingId::Ainf1).mf } else { c.ainf1(n).unwrap().mf };
        hom_vector(&x, &w, &cfg()).unwrap().iter().map(|r| r.value().unwrap() as i64).collect()
    };
    for n in 1..=5u32 {
        let (up, mid, down) = (hom(n + 1), hom(n), hom(n - 1));
        for (i, u) in w.entries.iter().enumerate() {
            let delta = i64::from(u.label == format!("ainf1.I_{n}"));
            assert_eq!(up[i] + down[i], 2 * mid[i] - 2 * delta, "n = {n}, U = {}", u.label);
        }
    }
}

#[test]
fn functors_vanish_on_free_modules() {
    let c = Catalog::default();
    let free = c.free(RingId::Ainf1);
    for f in [h_functor(&c, 2).unwrap(), h_prime_functor(&c).unwrap(), hom_functor(&c.ainf1(3).unwrap().mf)] {
        assert_eq!(eval_dim(&f, &free, &cfg()).unwrap(), 0);
    }
}

/// Block-diagonal sum of two morphisms.
fn sum_map(a: &MFMorphism, b: &MFMorphism) -> MFMorphism {
    let src = a.src().direct_sum(b.src()).unwrap();
    let tgt = a.tgt().direct_sum(b.tgt()).unwrap();
    MFMorphism::from_alpha(&src, &tgt, PolyMatrix::diag(a.alpha(), b.alpha())).unwrap()
}

#[test]
fn dimension_vectors_add_over_split_triples() {
    let c = Catalog::default();
    let w = ainf_window(&c, 4);
    let a = ainf1_kernel_map(&c, 2).unwrap();
    let b = ainf1_ar_sequence(&c, 2).unwrap().second().clone();
    let va = dim_vector(&functor_from(&a), &w, &cfg()).unwrap();
    let vb = dim_vector(&functor_from(&b), &w, &cfg()).unwrap();
    let vs = dim_vector(&functor_from(&sum_map(&a, &b)), &w, &cfg()).unwrap();
    let total: Vec<usize> = va.iter().zip(&vb).map(|(x, y)| x + y).collect();
    assert_eq!(vs, total);
}

#[test]
fn sharp_doubles_dimension_vectors() {
    let c = Catalog::default();
    let w = Window::standard(&c, RingId::Dinf1, 2);
    let x = c.dinf1(D1Kind::Mplus, 1).unwrap().mf;
    let y = MFMorphism::scalar(&x, &Poly::var(c.field(), 1));
    for f in [hom_functor(&x), functor_from(&y)] {
        let (a, s) = (f.sharp().unwrap(), f.shift());
        for u in &w.entries {
            let lhs = a.eval_report(&u.mf.knorrer_sharp().unwrap(), &cfg()).unwrap().value().unwrap();
            let rhs = f.eval_report(&u.mf, &cfg()).unwrap().value().unwrap()
                + s.eval_report(&u.mf, &cfg()).unwrap().value().unwrap();
            assert_eq!(lhs, rhs, "{} at {}", f.name, u.label);
        }
    }
}

#[test]
fn hom_vectors_match_stable_hom() {
    let c = Catalog::default();
    let w = ainf_window(&c, 3);
    let x = c.ainf1(2).unwrap().mf;
    let via_functor = dim_vector(&hom_functor(&x), &w, &cfg()).unwrap();
    let direct: Vec<usize> = w
        .entries
        .iter()
        .map(|u| stable_hom_dim(&u.mf, &x, &cfg()).unwrap().value().unwrap())
        .collect();
    assert_eq!(via_functor, direct);
}
