use mfkit::catalog::{Catalog, RingId};
use mfkit::decomp::mf_iso;
use mfkit::error::Error;
use mfkit::field::PrimeField;
use mfkit::homology::{stable_hom_dim, HomologyConfig};
use mfkit::matfac::{mf_cone, mf_cone_inclusion, MFMorphism, MatFac, PolyMatrix};
use mfkit::poly::Poly;
use mfkit::ring::Hypersurface;

fn k() -> PrimeField {
    PrimeField::default_field()
}

fn ring(f: &str, vars: usize) -> Hypersurface {
    Hypersurface::parse(vars, f, k()).unwrap()
}

fn pm(rows: &[&[&str]]) -> PolyMatrix {
    PolyMatrix::parse(k(), rows).unwrap()
}

#[test]
fn valid_and_invalid_factorizations() {
    let h = ring("x^2", 2);
    assert!(MatFac::new(h.clone(), pm(&[&["x"]]), pm(&[&["x"]])).is_ok());
    let i3 = MatFac::new(h.clone(), pm(&[&["x", "y^3"], &["0", "x"]]), pm(&[&["x", "-y^3"], &["0", "x"]]));
    assert!(i3.is_ok());
    let bad = MatFac::new(h.clone(), pm(&[&["x", "y"], &["0", "y"]]), pm(&[&["x", "y"], &["0", "y"]]));
    assert!(matches!(bad, Err(Error::NotFactorization { .. })));
    let completed = MatFac::complete(&h, pm(&[&["x", "y^3"], &["0", "x"]])).unwrap();
    assert_eq!(completed, i3.unwrap());
}

#[test]
fn shift_is_an_involution_and_fixes_i_n() {
    let c = Catalog::default();
    let i = c.ainf1_i().mf;
    assert_eq!(i.shift(), i);
    for n in 1..=4 {
        let m = c.ainf1(n).unwrap().mf;
        assert_eq!(m.shift().shift(), m);
        assert!(mf_iso(&m.shift(), &m).unwrap());
    }
    let d = c.dinf1(mfkit::catalog::D1Kind::Mplus, 2).unwrap().mf;
    assert_eq!(d.shift().shift(), d);
}

#[test]
fn direct_sums() {
    let c = Catalog::default();
    let h = c.hypersurface(RingId::Ainf1);
    let i = c.ainf1_i().mf;
    let ii = i.direct_sum(&i).unwrap();
    assert_eq!(ii.phi(), &pm(&[&["x", "0"], &["0", "x"]]));
    assert_eq!(i.direct_sum(&MatFac::zero(&h)).unwrap(), i);

    let cfg = HomologyConfig::default();
    let u = c.ainf1(2).unwrap().mf;
    let (a, b) = (c.ainf1(1).unwrap().mf, c.ainf1(3).unwrap().mf);
    let sum = stable_hom_dim(&u, &a.direct_sum(&b).unwrap(), &cfg).unwrap().value().unwrap();
    let parts = stable_hom_dim(&u, &a, &cfg).unwrap().value().unwrap()
        + stable_hom_dim(&u, &b, &cfg).unwrap().value().unwrap();
    assert_eq!(sum, parts);
}

#[test]
fn cones_of_powers_of_y() {
    let c = Catalog::default();
    let i = c.ainf1_i().mf;
    for n in 1..=3 {
        let yn = MFMorphism::scalar(&i, &Poly::parse(k(), &format!("y^{n}")).unwrap());
        let cone = mf_cone(&yn).unwrap();
        assert!(mf_iso(&cone, &c.ainf1(n).unwrap().mf).unwrap());
        let inc = mf_cone_inclusion(&yn).unwrap();
        assert_eq!(inc.tgt(), &cone);
    }
}

#[test]
fn morphism_validation() {
    let c = Catalog::default();
    let i = c.ainf1_i().mf;
    let i1 = c.ainf1(1).unwrap().mf;
    assert!(MFMorphism::from_alpha(&i, &i, pm(&[&["y"]])).is_ok());
    // x on I: x * x = 0 in R, so it is a morphism; 1 -> I_1 needs a column into (x, y)
    assert!(MFMorphism::from_alpha(&i, &i1, pm(&[&["1"], &["0"]])).is_ok());
    assert!(MFMorphism::from_alpha(&i1, &i, pm(&[&["1", "0"]])).is_err());
    let id = MFMorphism::identity(&i1);
    assert_eq!(id.then(&id).unwrap(), id);
}

#[test]
fn sharp_and_twist() {
    let c = Catalog::default();
    let rx = c.dinf1(mfkit::catalog::D1Kind::Rx, 0).unwrap().mf;
    let s = rx.knorrer_sharp().unwrap();
    assert_eq!(s.size(), 2 * rx.size());
    assert_eq!(s.hypersurface(), &c.hypersurface(RingId::Dinf2));
    assert!(mf_iso(&s, &c.dinf2_i().mf).unwrap());
    assert_eq!(s.sigma_twist().unwrap().sigma_twist().unwrap(), s);

    let l1 = c.dinf2_l(1).unwrap().mf;
    let sum = s.direct_sum(&l1).unwrap();
    assert_eq!(
        sum.sigma_twist().unwrap(),
        s.sigma_twist().unwrap().direct_sum(&l1.sigma_twist().unwrap()).unwrap()
    );
    // the twist of I is again I up to isomorphism
    assert!(mf_iso(&c.dinf2_i().mf.sigma_twist().unwrap(), &c.dinf2_i().mf).unwrap());
}

#[test]
fn json_roundtrip() {
    let c = Catalog::default();
    let m = c.dinf2_l(3).unwrap().mf;
    let text = serde_json::to_string(&m.to_json()).unwrap();
    let back = MatFac::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, m);
}
