//! Explicit indecomposable factorizations over the four sample rings:
//! `x^2` (A∞, dim 1), `x^2 y` (D∞, dim 1), `x^2 y + z^2` (D∞, dim 2) and the
//! node `x^2 - y^2`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matfac::{MatFac, MatFacJson, PolyMatrix};
use crate::poly::Poly;
use crate::ring::Hypersurface;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingId {
    Ainf1,
    Dinf1,
    Dinf2,
    Node,
}

impl RingId {
    pub const ALL: [RingId; 4] = [RingId::Ainf1, RingId::Dinf1, RingId::Dinf2, RingId::Node];

    pub fn vars(self) -> usize {
        match self {
            RingId::Dinf2 => 3,
            _ => 2,
        }
    }

    pub fn equation(self) -> &'static str {
        match self {
            RingId::Ainf1 => "x^2",
            RingId::Dinf1 => "x^2*y",
            RingId::Dinf2 => "x^2*y + z^2",
            RingId::Node => "x^2 - y^2",
        }
    }

    pub fn hypersurface(self, k: PrimeField) -> Hypersurface {
        Hypersurface::parse(self.vars(), self.equation(), k).expect("catalog equations are valid")
    }

    pub fn name(self) -> &'static str {
        match self {
            RingId::Ainf1 => "ainf1",
            RingId::Dinf1 => "dinf1",
            RingId::Dinf2 => "dinf2",
            RingId::Node => "node",
        }
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RingId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RingId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Catalog(format!("unknown ring id {s:?}")))
    }
}

/// Modules over `k[[x,y]]/(x^2 y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum D1Kind {
    Rx,
    Rxy,
    Rx2,
    Ry,
    Mplus,
    Mminus,
    Nplus,
    Nminus,
}

impl D1Kind {
    pub const ALL: [D1Kind; 8] = [
        D1Kind::Rx,
        D1Kind::Rxy,
        D1Kind::Rx2,
        D1Kind::Ry,
        D1Kind::Mplus,
        D1Kind::Mminus,
        D1Kind::Nplus,
        D1Kind::Nminus,
    ];

    pub fn is_parametric(self) -> bool {
        matches!(self, D1Kind::Mplus | D1Kind::Mminus | D1Kind::Nplus | D1Kind::Nminus)
    }
}

/// Modules over `k[[x,y,z]]/(x^2 y + z^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum D2Kind {
    I,
    M,
    N,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: String,
    pub ring: RingId,
    pub param: Option<u32>,
    pub mf: MatFac,
    pub self_syzygy: bool,
}

impl CatalogEntry {
    pub fn is_free(&self) -> bool {
        self.label.ends_with(".R")
    }

    pub fn to_json(&self) -> CatalogEntryJson {
        CatalogEntryJson {
            label: self.label.clone(),
            param: self.param,
            self_syzygy: self.self_syzygy,
            mf: self.mf.to_json(),
        }
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntryJson {
    pub label: String,
    pub param: Option<u32>,
    pub self_syzygy: bool,
    pub mf: MatFacJson,
}

/// Constructors over a fixed coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Catalog {
    field: PrimeField,
}

impl Default for Catalog {
    fn default() -> Self {
        Self::new(PrimeField::default())
    }
}

impl Catalog {
    pub fn new(field: PrimeField) -> Self {
        Self { field }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn hypersurface(&self, ring: RingId) -> Hypersurface {
        ring.hypersurface(self.field)
    }

    fn p(&self, s: &str) -> Poly {
        Poly::parse(self.field, s).expect("catalog polynomial")
    }

    fn m(&self, rows: &[&[String]]) -> PolyMatrix {
        let polys = rows
            .iter()
            .map(|r| r.iter().map(|s| self.p(s)).collect())
            .collect();
        PolyMatrix::from_rows(self.field, polys).expect("catalog matrix")
    }

    fn entry(
        &self,
        ring: RingId,
        label: String,
        param: Option<u32>,
        phi: PolyMatrix,
        psi: PolyMatrix,
    ) -> CatalogEntry {
        let mf = MatFac::new(self.hypersurface(ring), phi, psi)
            .unwrap_or_else(|e| panic!("catalog entry {label} invalid: {e}"));
        CatalogEntry {
            label,
            ring,
            param,
            mf,
            self_syzygy: matches!(ring, RingId::Ainf1 | RingId::Dinf2),
        }
    }

    /// Stably zero marker for the free module of rank one.
    pub fn free(&self, ring: RingId) -> CatalogEntry {
        CatalogEntry {
            label: format!("{ring}.R"),
            ring,
            param: Some(0),
            mf: MatFac::free(&self.hypersurface(ring)),
            self_syzygy: true,
        }
    }

    /// `I` over `x^2`.
    pub fn ainf1_i(&self) -> CatalogEntry {
        let x = || vec!["x".to_string()];
        self.entry(
            RingId::Ainf1,
            "ainf1.I".into(),
            None,
            self.m(&[&x()]),
            self.m(&[&x()]),
        )
    }

    /// `I_n = Coker (x, y^n; 0, x)` over `x^2`.
    pub fn ainf1(&self, n: u32) -> Result<CatalogEntry> {
        if n == 0 {
            return Err(Error::Catalog(
                "I_0 is the free module; use Catalog::free".into(),
            ));
        }
        let yn = format!("y^{n}");
        let phi = self.m(&[&["x".into(), yn.clone()], &["0".into(), "x".into()]]);
        let psi = self.m(&[&["x".into(), format!("-{yn}")], &["0".into(), "x".into()]]);
        Ok(self.entry(RingId::Ainf1, format!("ainf1.I_{n}"), Some(n), phi, psi))
    }

    pub fn dinf1(&self, kind: D1Kind, n: u32) -> Result<CatalogEntry> {
        if kind.is_parametric() && n == 0 {
            return Err(Error::Catalog(format!("{kind:?} needs n >= 1")));
        }
        let one = |a: &str, b: &str| (self.m(&[&[a.to_string()]]), self.m(&[&[b.to_string()]]));
        let two = |a: &str, b: &str, d: &str| {
            self.m(&[&[a.to_string(), b.to_string()], &["0".to_string(), d.to_string()]])
        };
        let yn = format!("y^{n}");
        let yn1 = format!("y^{}", n + 1);
        let (label, param, phi, psi) = match kind {
            D1Kind::Rx => {
                let (a, b) = one("x", "x*y");
                ("R/(x)".to_string(), None, a, b)
            }
            D1Kind::Rxy => {
                let (a, b) = one("x*y", "x");
                ("R/(xy)".to_string(), None, a, b)
            }
            D1Kind::Rx2 => {
                let (a, b) = one("x^2", "y");
                ("R/(x^2)".to_string(), None, a, b)
            }
            D1Kind::Ry => {
                let (a, b) = one("y", "x^2");
                ("R/(y)".to_string(), None, a, b)
            }
            D1Kind::Mplus => (
                format!("M_{n}+"),
                Some(n),
                two("x", &yn, "-x"),
                two("x*y", &yn1, "-x*y"),
            ),
            D1Kind::Mminus => (
                format!("M_{n}-"),
                Some(n),
                two("x*y", &yn1, "-x*y"),
                two("x", &yn, "-x"),
            ),
            D1Kind::Nplus => (
                format!("N_{n}+"),
                Some(n),
                two("x*y", &yn, "-x"),
                two("x", &yn, "-x*y"),
            ),
            D1Kind::Nminus => (
                format!("N_{n}-"),
                Some(n),
                two("x", &yn, "-x*y"),
                two("x*y", &yn, "-x"),
            ),
        };
        Ok(self.entry(RingId::Dinf1, format!("dinf1.{label}"), param, phi, psi))
    }

    /// `I`, `M_n` (n >= 0) and `N_n` (n >= 1) over `x^2 y + z^2`.
    ///
    /// The 4x4 matrices are `[[z I, A], [-B, z I]]` with `A B = x^2 y I`; the
    /// lower-left block carries a minus sign so that the square is `-f` up to
    /// the partner factor.
    pub fn dinf2(&self, kind: D2Kind, n: u32) -> Result<CatalogEntry> {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let yn = format!("y^{n}");
        let yn1 = format!("y^{}", n + 1);
        let (label, param, phi, psi) = match (kind, n) {
            (D2Kind::I, _) => (
                "I".to_string(),
                None,
                self.m(&[&s(&["z", "-x*y"]), &s(&["x", "z"])]),
                self.m(&[&s(&["z", "x*y"]), &s(&["-x", "z"])]),
            ),
            (D2Kind::M, 0) => (
                "M_0".to_string(),
                Some(0),
                self.m(&[&s(&["z", "-y"]), &s(&["x^2", "z"])]),
                self.m(&[&s(&["z", "y"]), &s(&["-x^2", "z"])]),
            ),
            (D2Kind::N, 0) => return Err(Error::Catalog("N_n needs n >= 1".into())),
            (D2Kind::M, n) => {
                let a = [["x", yn.as_str()], ["0", "-x"]];
                let b = [["x*y", yn1.as_str()], ["0", "-x*y"]];
                let (phi, psi) = self.sharp_shape(&a, &b);
                (format!("M_{n}"), Some(n), phi, psi)
            }
            (D2Kind::N, n) => {
                let a = [["x*y", yn.as_str()], ["0", "-x"]];
                let b = [["x", yn.as_str()], ["0", "-x*y"]];
                let (phi, psi) = self.sharp_shape(&a, &b);
                (format!("N_{n}"), Some(n), phi, psi)
            }
        };
        Ok(self.entry(RingId::Dinf2, format!("dinf2.{label}"), param, phi, psi))
    }

    fn sharp_shape(&self, a: &[[&str; 2]; 2], b: &[[&str; 2]; 2]) -> (PolyMatrix, PolyMatrix) {
        let k = self.field;
        let to = |m: &[[&str; 2]; 2]| {
            PolyMatrix::parse(k, &[&m[0][..], &m[1][..]]).expect("catalog block")
        };
        let (a, b) = (to(a), to(b));
        let zi = PolyMatrix::scalar(&self.p("z"), 2);
        let phi = PolyMatrix::block(&zi, &a, &b.neg(), &zi);
        let psi = PolyMatrix::block(&zi, &a.neg(), &b, &zi);
        (phi, psi)
    }

    /// `L_n`: `M_{(n-1)/2}` for odd `n`, `N_{n/2}` for even `n`.
    pub fn dinf2_l(&self, n: u32) -> Result<CatalogEntry> {
        if n == 0 {
            return Err(Error::Catalog("L_0 is zero".into()));
        }
        let mut e = if n % 2 == 1 {
            self.dinf2(D2Kind::M, (n - 1) / 2)?
        } else {
            self.dinf2(D2Kind::N, n / 2)?
        };
        e.label = format!("{} (L_{n})", e.label);
        Ok(e)
    }

    pub fn dinf2_i(&self) -> CatalogEntry {
        self.dinf2(D2Kind::I, 0).expect("I takes no parameter")
    }

    /// The node `x^2 - y^2`: two line modules plus the free marker.
    pub fn finite_sample(&self) -> Vec<CatalogEntry> {
        let one = |s: &str| self.m(&[&[s.to_string()]]);
        vec![
            self.entry(
                RingId::Node,
                "node.Coker(x-y)".into(),
                None,
                one("x - y"),
                one("x + y"),
            ),
            self.entry(
                RingId::Node,
                "node.Coker(x+y)".into(),
                None,
                one("x + y"),
                one("x - y"),
            ),
            self.free(RingId::Node),
        ]
    }

    /// The non-free indecomposables with parameter `<= max_n`.
    pub fn window(&self, ring: RingId, max_n: u32) -> Vec<CatalogEntry> {
        match ring {
            RingId::Ainf1 => std::iter::once(self.ainf1_i())
                .chain((1..=max_n).map(|n| self.ainf1(n).expect("n >= 1")))
                .collect(),
            RingId::Dinf2 => std::iter::once(self.dinf2_i())
                .chain((1..=max_n).map(|n| self.dinf2_l(n).expect("n >= 1")))
                .collect(),
            RingId::Dinf1 => {
                let mut v: Vec<CatalogEntry> = D1Kind::ALL[..4]
                    .iter()
                    .map(|k| self.dinf1(*k, 0).expect("non-parametric"))
                    .collect();
                for n in 1..=max_n {
                    for k in &D1Kind::ALL[4..] {
                        v.push(self.dinf1(*k, n).expect("n >= 1"));
                    }
                }
                v
            }
            RingId::Node => self.finite_sample().into_iter().take(2).collect(),
        }
    }

    /// Restriction of an R♯-indecomposable to `x^2 y`, as a list of summands.
    pub fn b_lookup(&self, entry: &CatalogEntry) -> Result<Vec<CatalogEntry>> {
        if entry.ring != RingId::Dinf2 {
            return Err(Error::Catalog(format!("{} is not over dinf2", entry.label)));
        }
        let pair = |a, b, n| -> Result<Vec<CatalogEntry>> {
            Ok(vec![self.dinf1(a, n)?, self.dinf1(b, n)?])
        };
        let base = entry.label.split(' ').next().unwrap_or("");
        match (base, entry.param) {
            ("dinf2.I", _) => pair(D1Kind::Rx, D1Kind::Rxy, 0),
            ("dinf2.M_0", _) => pair(D1Kind::Rx2, D1Kind::Ry, 0),
            (l, Some(n)) if l.starts_with("dinf2.M_") => pair(D1Kind::Mplus, D1Kind::Mminus, n),
            (l, Some(n)) if l.starts_with("dinf2.N_") => pair(D1Kind::Nplus, D1Kind::Nminus, n),
            _ => Err(Error::Catalog(format!("no lookup for {}", entry.label))),
        }
    }

    pub fn dump(&self, ring: RingId, max_n: u32) -> Vec<CatalogEntryJson> {
        self.window(ring, max_n).iter().map(CatalogEntry::to_json).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_window_entry_validates() {
        let c = Catalog::default();
        for ring in RingId::ALL {
            let w = c.window(ring, 4);
            assert!(!w.is_empty());
            for e in &w {
                assert_eq!(e.ring, ring);
            }
        }
        assert_eq!(c.window(RingId::Dinf1, 2).len(), 4 + 2 * 4);
    }

    #[test]
    fn ainf_shapes() {
        let c = Catalog::default();
        assert_eq!(c.ainf1_i().mf.size(), 1);
        let i3 = c.ainf1(3).unwrap();
        assert_eq!(i3.mf.phi().to_string(), "(x, y^3; 0, x)");
        assert!(c.ainf1(0).is_err());
    }

    #[test]
    fn dinf_shapes() {
        let c = Catalog::default();
        let n1m = c.dinf1(D1Kind::Nminus, 1).unwrap();
        assert_eq!(n1m.mf.phi().to_string(), "(x, y; 0, -x*y)");
        assert!(c.dinf1(D1Kind::Mplus, 0).is_err());
        let i = c.dinf2_i();
        assert_eq!(i.mf.phi().to_string(), "(z, -x*y; x, z)");
        assert!(c.dinf2_l(3).unwrap().label.starts_with("dinf2.M_1"));
        assert!(c.dinf2_l(2).unwrap().label.starts_with("dinf2.N_1"));
        assert_eq!(c.dinf2_l(1).unwrap().mf.size(), 2);
    }

    #[test]
    fn ring_ids_parse() {
        for r in RingId::ALL {
            assert_eq!(r.name().parse::<RingId>().unwrap(), r);
        }
        assert!("e8".parse::<RingId>().is_err());
    }
}
