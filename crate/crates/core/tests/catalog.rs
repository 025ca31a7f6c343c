use mfkit::catalog::{Catalog, D1Kind, D2Kind, RingId};
use mfkit::decomp::mf_iso;
use mfkit::field::PrimeField;
use mfkit::funcat::Window;
use mfkit::matfac::PolyMatrix;
use mfkit::poly::Poly;

fn pm(rows: &[&[&str]]) -> PolyMatrix {
    PolyMatrix::parse(PrimeField::default_field(), rows).unwrap()
}

#[test]
fn ainf1_entries() {
    let c = Catalog::default();
    assert_eq!(c.ainf1_i().mf.phi(), &pm(&[&["x"]]));
    let i3 = c.ainf1(3).unwrap().mf;
    assert_eq!(i3.size(), 2);
    assert_eq!(i3.phi(), &pm(&[&["x", "y^3"], &["0", "x"]]));
    assert!(c.ainf1(0).is_err());
}

#[test]
fn dinf1_entries() {
    let c = Catalog::default();
    let rx = c.dinf1(D1Kind::Rx, 0).unwrap().mf;
    assert_eq!((rx.phi(), rx.psi()), (&pm(&[&["x"]]), &pm(&[&["x*y"]])));
    let m2 = c.dinf1(D1Kind::Mplus, 2).unwrap().mf;
    assert_eq!(m2.phi(), &pm(&[&["x", "y^2"], &["0", "-x"]]));
    let n1 = c.dinf1(D1Kind::Nminus, 1).unwrap().mf;
    assert_eq!(n1.phi(), &pm(&[&["x", "y"], &["0", "-x*y"]]));
}

#[test]
fn dinf2_entries() {
    let c = Catalog::default();
    assert_eq!(c.dinf2_i().mf.phi(), &pm(&[&["z", "-x*y"], &["x", "z"]]));
    let m1 = c.dinf2(D2Kind::M, 1).unwrap().mf;
    let expected = pm(&[
        &["z", "0", "x", "y"],
        &["0", "z", "0", "-x"],
        &["x*y", "y^2", "z", "0"],
        &["0", "-x*y", "0", "z"],
    ]);
    // the printed matrix squares to (z^2 - x^2 y) I; negating the lower-left block repairs it
    assert!(mfkit::matfac::MatFac::complete(m1.hypersurface(), expected.clone()).is_err());
    let fixed = PolyMatrix::block(
        &expected.submatrix(&[0, 1], &[0, 1]),
        &expected.submatrix(&[0, 1], &[2, 3]),
        &expected.submatrix(&[2, 3], &[0, 1]).neg(),
        &expected.submatrix(&[2, 3], &[2, 3]),
    );
    assert_eq!(m1.phi(), &fixed);
    assert_eq!(c.dinf2_l(3).unwrap().mf, m1);
    assert_eq!(c.dinf2_l(2).unwrap().mf, c.dinf2(D2Kind::N, 1).unwrap().mf);
}

#[test]
fn node_line_modules() {
    let c = Catalog::default();
    let sample = c.finite_sample();
    assert_eq!(sample.len(), 3);
    assert!(sample[2].is_free());
    let h = c.hypersurface(RingId::Node);
    let k = PrimeField::default_field();
    let prod = Poly::parse(k, "x - y").unwrap().mul(&Poly::parse(k, "x + y").unwrap());
    assert_eq!(&prod, h.f());
    assert!(!mf_iso(&sample[0].mf, &sample[1].mf).unwrap());
}

#[test]
fn windows_are_pairwise_distinct() {
    let c = Catalog::default();
    for (ring, n) in [(RingId::Ainf1, 8), (RingId::Dinf2, 4), (RingId::Dinf1, 2), (RingId::Node, 1)] {
        Window::standard(&c, ring, n).check_distinct().unwrap();
    }
}

#[test]
fn dump_lists_every_window_entry() {
    let c = Catalog::default();
    let dump = c.dump(RingId::Ainf1, 3);
    let labels: Vec<_> = dump.iter().map(|e| e.label.as_str()).collect();
    assert!(labels.contains(&"ainf1.I"));
    assert!(labels.contains(&"ainf1.I_3"));
    assert!(serde_json::to_string(&dump).is_ok());
}
