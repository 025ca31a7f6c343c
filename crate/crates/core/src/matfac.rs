//! Matrix factorizations `(phi, psi)` of a hypersurface equation and the
//! operations on them: shift, direct sum, mapping cone, the sharp
//! construction `f -> f + z^2`, and the twist `z -> -z`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::RingMatrix;
use crate::poly::{Poly, SparseTerm};
use crate::ring::{Hypersurface, RingRef};

/// Matrix with exact polynomial entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            entries: vec![Poly::zero(field); rows * cols],
        }
    }

    pub fn scalar(p: &Poly, n: usize) -> Self {
        let mut m = Self::zero(p.field(), n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        Self::scalar(&Poly::one(field), n)
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged polynomial matrix".into()));
        }
        let n = rows.len();
        Ok(Self {
            field,
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn parse(field: PrimeField, rows: &[&[&str]]) -> Result<Self> {
        let polys = rows
            .iter()
            .map(|r| r.iter().map(|s| Poly::parse(field, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(field, polys)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, p)| (k / self.cols, k % self.cols, p))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = PolyMatrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(self.field);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Product with all terms of degree `>= bound` dropped.
    pub fn mul_trunc(&self, other: &PolyMatrix, bound: u32) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = PolyMatrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let pairs: Vec<(&Poly, &Poly)> = (0..self.cols)
                    .map(|k| (self.get(i, k), other.get(k, j)))
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .collect();
                out.set(i, j, Poly::sum_of_products_trunc(self.field, &pairs, bound));
            }
        }
        out
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (k, e) in out.entries.iter_mut().enumerate() {
            *e = e.add(&other.entries[k]);
        }
        out
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(Poly::neg)
    }

    pub fn scale(&self, p: &Poly) -> PolyMatrix {
        self.map(|e| e.mul(p))
    }

    pub fn truncate(&self, bound: u32) -> PolyMatrix {
        self.map(|e| e.truncate(bound))
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zero(self.field, self.cols, self.rows);
        for (i, j, p) in self.entries() {
            t.set(j, i, p.clone());
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn max_degree(&self) -> u32 {
        self.entries.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// `[[a, b], [c, d]]` from four blocks.
    pub fn block(a: &PolyMatrix, b: &PolyMatrix, c: &PolyMatrix, d: &PolyMatrix) -> PolyMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut m = PolyMatrix::zero(a.field, a.rows + c.rows, a.cols + b.cols);
        for (src, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for (i, j, p) in src.entries() {
                m.set(r0 + i, c0 + j, p.clone());
            }
        }
        m
    }

    pub fn diag(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
        let k = a.field;
        PolyMatrix::block(
            a,
            &PolyMatrix::zero(k, a.rows, b.cols),
            &PolyMatrix::zero(k, b.rows, a.cols),
            b,
        )
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut m = PolyMatrix::zero(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// First entry where `self` differs from `p * I`.
    pub fn deviation_from_scalar(&self, p: &Poly) -> Option<(usize, usize)> {
        self.entries()
            .find(|(i, j, e)| if i == j { *e != p } else { !e.is_zero() })
            .map(|(i, j, _)| (i, j))
    }

    pub fn det(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        match n {
            0 => Poly::one(self.field),
            1 => self.get(0, 0).clone(),
            _ => {
                let mut acc = Poly::zero(self.field);
                for j in 0..n {
                    if self.get(0, j).is_zero() {
                        continue;
                    }
                    let minor = self.minor(0, j).det().mul(self.get(0, j));
                    acc = if j % 2 == 0 { acc.add(&minor) } else { acc.sub(&minor) };
                }
                acc
            }
        }
    }

    fn minor(&self, row: usize, col: usize) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != row).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != col).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn adjugate(&self) -> PolyMatrix {
        let n = self.rows;
        let mut adj = PolyMatrix::zero(self.field, n, n);
        if n == 1 {
            adj.set(0, 0, Poly::one(self.field));
            return adj;
        }
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det();
                adj.set(j, i, if (i + j) % 2 == 0 { c } else { c.neg() });
            }
        }
        adj
    }

    /// Exact entrywise division.
    pub fn exact_div(&self, d: &Poly) -> Option<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.exact_div(d))
            .collect::<Option<Vec<_>>>()?;
        Some(PolyMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn to_ring(&self, ring: &RingRef) -> RingMatrix {
        let rows: Vec<Vec<Poly>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        RingMatrix::from_polys(ring, &rows).expect("rectangular by construction")
    }

    pub fn to_sparse(&self, vars: usize) -> Vec<SparseEntry> {
        self.entries()
            .filter(|(_, _, p)| !p.is_zero())
            .map(|(row, col, p)| SparseEntry {
                row,
                col,
                terms: p.to_sparse(vars),
            })
            .collect()
    }

    pub fn from_sparse(field: PrimeField, n: usize, entries: &[SparseEntry]) -> Result<Self> {
        let mut m = PolyMatrix::zero(field, n, n);
        for e in entries {
            if e.row >= n || e.col >= n {
                return Err(Error::Shape(format!(
                    "entry ({}, {}) outside a {n}x{n} matrix",
                    e.row, e.col
                )));
            }
            m.set(e.row, e.col, Poly::from_sparse(field, &e.terms)?);
        }
        Ok(m)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseEntry {
    pub row: usize,
    pub col: usize,
    pub terms: Vec<SparseTerm>,
}

/// A matrix factorization `phi * psi = psi * phi = f * I` over `S`.
///
/// Blocks produced by decomposition may only satisfy the identities modulo
/// `m^D`; `precision` is then `Some(D)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatFac {
    hyper: Hypersurface,
    phi: PolyMatrix,
    psi: PolyMatrix,
    precision: Option<u32>,
}

pub fn mf_validate(phi: PolyMatrix, psi: PolyMatrix, hyper: &Hypersurface) -> Result<MatFac> {
    MatFac::new(hyper.clone(), phi, psi)
}

impl MatFac {
    pub fn new(hyper: Hypersurface, phi: PolyMatrix, psi: PolyMatrix) -> Result<Self> {
        Self::with_precision(hyper, phi, psi, None)
    }

    pub fn with_precision(
        hyper: Hypersurface,
        phi: PolyMatrix,
        psi: PolyMatrix,
        precision: Option<u32>,
    ) -> Result<Self> {
        let n = phi.rows();
        if phi.cols() != n || psi.rows() != n || psi.cols() != n {
            return Err(Error::Shape(format!(
                "factors must be square of equal size, got {}x{} and {}x{}",
                phi.rows(),
                phi.cols(),
                psi.rows(),
                psi.cols()
            )));
        }
        if phi.field() != hyper.field() || psi.field() != hyper.field() {
            return Err(Error::AmbientMismatch("field of matrices differs from ring".into()));
        }
        let f = match precision {
            Some(d) => hyper.f().truncate(d),
            None => hyper.f().clone(),
        };
        for (which, prod) in [("phi*psi", phi.mul(&psi)), ("psi*phi", psi.mul(&phi))] {
            let prod = match precision {
                Some(d) => prod.truncate(d),
                None => prod,
            };
            if let Some((row, col)) = prod.deviation_from_scalar(&f) {
                return Err(Error::NotFactorization { which, row, col });
            }
        }
        Ok(Self {
            hyper,
            phi,
            psi,
            precision,
        })
    }

    /// The free module of rank one: `Coker(f)`.
    pub fn free(hyper: &Hypersurface) -> Self {
        let k = hyper.field();
        Self {
            hyper: hyper.clone(),
            phi: PolyMatrix::scalar(hyper.f(), 1),
            psi: PolyMatrix::identity(k, 1),
            precision: None,
        }
    }

    /// The trivial factorization `(1, f)`, with zero cokernel.
    pub fn unit(hyper: &Hypersurface) -> Self {
        Self::free(hyper).shift()
    }

    /// Size-zero factorization.
    pub fn zero(hyper: &Hypersurface) -> Self {
        let k = hyper.field();
        Self {
            hyper: hyper.clone(),
            phi: PolyMatrix::zero(k, 0, 0),
            psi: PolyMatrix::zero(k, 0, 0),
            precision: None,
        }
    }

    /// Complete `phi` to a factorization with `psi = f * adj(phi) / det(phi)`.
    pub fn complete(hyper: &Hypersurface, phi: PolyMatrix) -> Result<Self> {
        let det = phi.det();
        if det.is_zero() {
            return Err(Error::InvalidRing("phi has zero determinant".into()));
        }
        let psi = phi
            .adjugate()
            .scale(hyper.f())
            .exact_div(&det)
            .ok_or_else(|| Error::InvalidMorphism(format!("det {det} does not divide f*adj(phi)")))?;
        Self::new(hyper.clone(), phi, psi)
    }

    pub fn hypersurface(&self) -> &Hypersurface {
        &self.hyper
    }

    pub fn field(&self) -> PrimeField {
        self.hyper.field()
    }

    pub fn size(&self) -> usize {
        self.phi.rows()
    }

    pub fn phi(&self) -> &PolyMatrix {
        &self.phi
    }

    pub fn psi(&self) -> &PolyMatrix {
        &self.psi
    }

    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    pub fn max_degree(&self) -> u32 {
        self.phi.max_degree().max(self.psi.max_degree())
    }

    /// Syzygy: swap the two factors.
    pub fn shift(&self) -> MatFac {
        MatFac {
            hyper: self.hyper.clone(),
            phi: self.psi.clone(),
            psi: self.phi.clone(),
            precision: self.precision,
        }
    }

    fn check_same_ambient(&self, other: &MatFac) -> Result<()> {
        if self.hyper != other.hyper {
            return Err(Error::AmbientMismatch(format!(
                "{} vs {}",
                self.hyper.f(),
                other.hyper.f()
            )));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &MatFac) -> Result<MatFac> {
        self.check_same_ambient(other)?;
        Ok(MatFac {
            hyper: self.hyper.clone(),
            phi: PolyMatrix::diag(&self.phi, &other.phi),
            psi: PolyMatrix::diag(&self.psi, &other.psi),
            precision: min_precision(self.precision, other.precision),
        })
    }

    pub fn direct_sum_all(hyper: &Hypersurface, parts: &[MatFac]) -> Result<MatFac> {
        parts
            .iter()
            .try_fold(MatFac::zero(hyper), |acc, m| acc.direct_sum(m))
    }

    /// Presentation matrix of the cokernel over `A(T)`.
    pub fn cokernel(&self, ring: &RingRef) -> Result<RingMatrix> {
        if ring.hypersurface() != &self.hyper {
            return Err(Error::AmbientMismatch("ring differs from factorization".into()));
        }
        Ok(self.phi.to_ring(ring))
    }

    /// Factorization of `f + z^2` of twice the size.
    pub fn knorrer_sharp(&self) -> Result<MatFac> {
        let sharp = self.hyper.sharp()?;
        let k = self.field();
        let n = self.size();
        let z = Poly::var(k, self.hyper.vars());
        let zi = PolyMatrix::scalar(&z, n);
        let big = PolyMatrix::block(&zi, &self.phi, &self.psi, &zi.neg());
        MatFac::with_precision(sharp, big.clone(), big, self.precision)
    }

    /// Substitute `z -> -z` in a factorization of `g + z^2`.
    pub fn sigma_twist(&self) -> Result<MatFac> {
        let z = self.hyper.sharp_variable().ok_or_else(|| {
            Error::AmbientMismatch(format!("{} is not of the form g + z^2", self.hyper.f()))
        })?;
        Ok(MatFac {
            hyper: self.hyper.clone(),
            phi: self.phi.map(|p| p.negate_var(z)),
            psi: self.psi.map(|p| p.negate_var(z)),
            precision: self.precision,
        })
    }

    pub fn to_json(&self) -> MatFacJson {
        let v = self.hyper.vars();
        MatFacJson {
            ambient: AmbientJson {
                vars: v,
                f: self.hyper.f().to_sparse(v),
                p: self.field().p(),
            },
            size: self.size(),
            phi: self.phi.to_sparse(v),
            psi: self.psi.to_sparse(v),
            precision: self.precision,
        }
    }

    pub fn from_json(j: &MatFacJson) -> Result<Self> {
        let field = PrimeField::new(j.ambient.p)?;
        let hyper = Hypersurface::new(j.ambient.vars, Poly::from_sparse(field, &j.ambient.f)?)?;
        let phi = PolyMatrix::from_sparse(field, j.size, &j.phi)?;
        let psi = PolyMatrix::from_sparse(field, j.size, &j.psi)?;
        Self::with_precision(hyper, phi, psi, j.precision)
    }
}

fn min_precision(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl fmt::Display for MatFac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi = {}, psi = {}", self.phi, self.psi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientJson {
    pub vars: usize,
    pub f: Vec<SparseTerm>,
    pub p: u32,
}

/// Serialized form `{ambient, size, phi, psi}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatFacJson {
    pub ambient: AmbientJson,
    pub size: usize,
    pub phi: Vec<SparseEntry>,
    pub psi: Vec<SparseEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
}

/// A morphism of factorizations: `alpha * phi_src = phi_tgt * beta` and
/// `beta * psi_src = psi_tgt * alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MFMorphism {
    src: MatFac,
    tgt: MatFac,
    alpha: PolyMatrix,
    beta: PolyMatrix,
}

impl MFMorphism {
    pub fn new(src: MatFac, tgt: MatFac, alpha: PolyMatrix, beta: PolyMatrix) -> Result<Self> {
        src.check_same_ambient(&tgt)?;
        let (m, n) = (src.size(), tgt.size());
        for (name, a) in [("alpha", &alpha), ("beta", &beta)] {
            if a.rows() != n || a.cols() != m {
                return Err(Error::Shape(format!(
                    "{name} is {}x{}, expected {n}x{m}",
                    a.rows(),
                    a.cols()
                )));
            }
        }
        let prec = min_precision(src.precision, tgt.precision);
        let cut = |p: PolyMatrix| match prec {
            Some(d) => p.truncate(d),
            None => p,
        };
        if cut(alpha.mul(&src.phi)) != cut(tgt.phi.mul(&beta)) {
            return Err(Error::InvalidMorphism("alpha*phi != phi'*beta".into()));
        }
        if cut(beta.mul(&src.psi)) != cut(tgt.psi.mul(&alpha)) {
            return Err(Error::InvalidMorphism("beta*psi != psi'*alpha".into()));
        }
        Ok(Self {
            src,
            tgt,
            alpha,
            beta,
        })
    }

    /// Recover `beta = psi_tgt * alpha * phi_src / f`.
    pub fn from_alpha(src: &MatFac, tgt: &MatFac, alpha: PolyMatrix) -> Result<Self> {
        let num = tgt.psi.mul(&alpha).mul(&src.phi);
        let beta = num.exact_div(tgt.hyper.f()).ok_or_else(|| {
            Error::InvalidMorphism("alpha does not induce a map of cokernels".into())
        })?;
        Self::new(src.clone(), tgt.clone(), alpha, beta)
    }

    /// Multiplication by a polynomial on a factorization.
    pub fn scalar(m: &MatFac, p: &Poly) -> Self {
        let s = PolyMatrix::scalar(p, m.size());
        Self {
            src: m.clone(),
            tgt: m.clone(),
            alpha: s.clone(),
            beta: s,
        }
    }

    pub fn identity(m: &MatFac) -> Self {
        Self::scalar(m, &Poly::one(m.field()))
    }

    pub fn zero(src: &MatFac, tgt: &MatFac) -> Self {
        let k = src.field();
        Self {
            src: src.clone(),
            tgt: tgt.clone(),
            alpha: PolyMatrix::zero(k, tgt.size(), src.size()),
            beta: PolyMatrix::zero(k, tgt.size(), src.size()),
        }
    }

    pub fn src(&self) -> &MatFac {
        &self.src
    }

    pub fn tgt(&self) -> &MatFac {
        &self.tgt
    }

    pub fn alpha(&self) -> &PolyMatrix {
        &self.alpha
    }

    pub fn beta(&self) -> &PolyMatrix {
        &self.beta
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MFMorphism) -> Result<MFMorphism> {
        if self.tgt != other.src {
            return Err(Error::InvalidMorphism("morphisms are not composable".into()));
        }
        Self::new(
            self.src.clone(),
            other.tgt.clone(),
            other.alpha.mul(&self.alpha),
            other.beta.mul(&self.beta),
        )
    }

    pub fn add(&self, other: &MFMorphism) -> Result<MFMorphism> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(Error::InvalidMorphism("sum of morphisms with different ends".into()));
        }
        Ok(MFMorphism {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            alpha: self.alpha.add(&other.alpha),
            beta: self.beta.add(&other.beta),
        })
    }

    pub fn shift(&self) -> MFMorphism {
        MFMorphism {
            src: self.src.shift(),
            tgt: self.tgt.shift(),
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    pub fn knorrer_sharp(&self) -> Result<MFMorphism> {
        let d = PolyMatrix::diag(&self.alpha, &self.beta);
        Self::new(
            self.src.knorrer_sharp()?,
            self.tgt.knorrer_sharp()?,
            d.clone(),
            d,
        )
    }
}

/// Mapping cone of `(alpha, beta): M -> N`:
/// `phi = [[phi_N, alpha], [0, -psi_M]]`, `psi = [[psi_N, beta], [0, -phi_M]]`.
pub fn mf_cone(m: &MFMorphism) -> Result<MatFac> {
    let (src, tgt) = (&m.src, &m.tgt);
    let k = src.field();
    let low = PolyMatrix::zero(k, src.size(), tgt.size());
    let phi = PolyMatrix::block(&tgt.phi, &m.alpha, &low, &src.psi.neg());
    let psi = PolyMatrix::block(&tgt.psi, &m.beta, &low, &src.phi.neg());
    MatFac::with_precision(
        src.hyper.clone(),
        phi,
        psi,
        min_precision(src.precision, tgt.precision),
    )
}

/// The map `N -> cone(M -> N)` onto the first summand.
pub fn mf_cone_inclusion(m: &MFMorphism) -> Result<MFMorphism> {
    let cone = mf_cone(m)?;
    let k = m.src.field();
    let (a, b) = (m.tgt.size(), m.src.size());
    let inc = PolyMatrix::block(
        &PolyMatrix::identity(k, a),
        &PolyMatrix::zero(k, a, 0),
        &PolyMatrix::zero(k, b, a),
        &PolyMatrix::zero(k, b, 0),
    );
    MFMorphism::new(m.tgt.clone(), cone, inc.clone(), inc)
}
