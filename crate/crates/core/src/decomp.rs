//! Stable reduction, isomorphism testing and Krull–Schmidt decomposition.
//!
//! Splitting works with a random endomorphism `(alpha, beta)`. The
//! eigenvalues of its residue `alpha(0)` that lie in `F_p` give orthogonal
//! idempotents `q_i(alpha)`, which are lifted by Newton iteration and used to
//! change bases. The resulting blocks are power series, so they are kept
//! modulo `m^D` and carry that precision.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, CatalogEntry, RingId};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::homology::hom_cycles_at;
use crate::linalg::{Mat, SparseEchelon};
use crate::matfac::{MatFac, MatFacJson, PolyMatrix};
use crate::poly::{Monomial, Poly};
use crate::ring::cached_ring;

/// Precision used when a unit pivot is not a constant.
pub const DEFAULT_REDUCE_PRECISION: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompConfig {
    /// Random endomorphisms tried per component.
    pub attempts: usize,
    /// Largest catalog parameter considered when labelling blocks.
    pub catalog_window: u32,
    pub seed: u64,
}

impl Default for DecompConfig {
    fn default() -> Self {
        Self {
            attempts: 20,
            catalog_window: 8,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DecompResult {
    pub blocks: Vec<MatFac>,
    /// Catalog label per block, `None` when unmatched.
    pub labels: Vec<Option<String>>,
    pub multiplicities: BTreeMap<String, usize>,
    /// Blocks that matched no catalog entry.
    pub residual: Vec<MatFac>,
}

impl DecompResult {
    pub fn to_json(&self) -> DecompJson {
        DecompJson {
            multiplicities: self.multiplicities.clone(),
            residual: self.residual.iter().map(MatFac::to_json).collect(),
            block_sizes: self.blocks.iter().map(MatFac::size).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompJson {
    pub multiplicities: BTreeMap<String, usize>,
    pub residual: Vec<MatFacJson>,
    pub block_sizes: Vec<usize>,
}

// ---------------------------------------------------------------------------
// reduction

fn truncate_opt(p: &PolyMatrix, prec: Option<u32>) -> PolyMatrix {
    match prec {
        Some(d) => p.truncate(d),
        None => p.clone(),
    }
}

fn mul_opt(a: &Poly, b: &Poly, prec: Option<u32>) -> Poly {
    match prec {
        Some(d) => a.mul_trunc(b, d),
        None => a.mul(b),
    }
}

/// Inverse of a unit modulo `m^d`.
pub fn series_inverse(u: &Poly, d: u32) -> Poly {
    let k = u.field();
    let c = u.constant_term();
    assert!(c != 0, "series inverse of a non-unit");
    let cinv = k.inv(c);
    // u = c (1 + w)
    let w = u.scale(cinv).sub(&Poly::one(k));
    let mut acc = Poly::one(k);
    let mut pw = Poly::one(k);
    for _ in 1..d {
        pw = pw.mul_trunc(&w.neg(), d);
        if pw.is_zero() {
            break;
        }
        acc = acc.add(&pw);
    }
    acc.scale(cinv).truncate(d)
}

fn find_unit(m: &PolyMatrix) -> Option<(usize, usize, bool)> {
    let mut fallback = None;
    for (i, j, p) in m.entries() {
        if p.constant_term() != 0 {
            if p.num_terms() == 1 {
                return Some((i, j, true));
            }
            fallback.get_or_insert((i, j, false));
        }
    }
    fallback
}

/// Remove row/column pairs carrying a unit in `phi` (or in `psi`).
pub fn mf_reduce(m: &MatFac) -> Result<MatFac> {
    let mut phi = m.phi().clone();
    let mut psi = m.psi().clone();
    let mut prec = m.precision();
    loop {
        if let Some((i, j, exact)) = find_unit(&phi) {
            if !exact && prec.is_none() {
                prec = Some(DEFAULT_REDUCE_PRECISION);
            }
            (phi, psi) = eliminate(&phi, &psi, i, j, prec);
            continue;
        }
        if let Some((i, j, exact)) = find_unit(&psi) {
            if !exact && prec.is_none() {
                prec = Some(DEFAULT_REDUCE_PRECISION);
            }
            (psi, phi) = eliminate(&psi, &phi, i, j, prec);
            continue;
        }
        break;
    }
    MatFac::with_precision(
        m.hypersurface().clone(),
        truncate_opt(&phi, prec),
        truncate_opt(&psi, prec),
        prec,
    )
}

/// Clear row `i` and column `j` of `a` around the unit `a[i][j]`, keeping
/// `a * b = f I`, and drop the corresponding rows and columns.
fn eliminate(a: &PolyMatrix, b: &PolyMatrix, i: usize, j: usize, prec: Option<u32>) -> (PolyMatrix, PolyMatrix) {
    let n = a.rows();
    let u = a.get(i, j).clone();
    let uinv = if u.num_terms() == 1 {
        Poly::constant(u.field(), 0).add(&Poly::one(u.field()).scale(u.field().inv(u.constant_term())))
    } else {
        series_inverse(&u, prec.expect("precision set for series pivots"))
    };
    let mut a = a.clone();
    let mut b = b.clone();
    for r in (0..n).filter(|&r| r != i) {
        let t = mul_opt(a.get(r, j), &uinv, prec);
        if t.is_zero() {
            continue;
        }
        for c in 0..n {
            let v = a.get(r, c).sub(&mul_opt(&t, a.get(i, c), prec));
            a.set(r, c, v);
        }
        for rr in 0..n {
            let v = b.get(rr, i).add(&mul_opt(&t, b.get(rr, r), prec));
            b.set(rr, i, v);
        }
    }
    for c in (0..n).filter(|&c| c != j) {
        let t = mul_opt(&uinv, a.get(i, c), prec);
        if t.is_zero() {
            continue;
        }
        for r in 0..n {
            let v = a.get(r, c).sub(&mul_opt(&t, a.get(r, j), prec));
            a.set(r, c, v);
        }
        for cc in 0..n {
            let v = b.get(j, cc).add(&mul_opt(&t, b.get(c, cc), prec));
            b.set(j, cc, v);
        }
    }
    let rows_a: Vec<usize> = (0..n).filter(|&r| r != i).collect();
    let cols_a: Vec<usize> = (0..n).filter(|&c| c != j).collect();
    (a.submatrix(&rows_a, &cols_a), b.submatrix(&cols_a, &rows_a))
}

// ---------------------------------------------------------------------------
// isomorphism

fn effective_degree(a: &MatFac, b: &MatFac) -> u32 {
    match (a.precision(), b.precision()) {
        (None, None) => a.max_degree().min(b.max_degree()),
        (None, Some(_)) => a.max_degree(),
        (Some(_), None) => b.max_degree(),
        (Some(p), Some(q)) => p.min(q).saturating_sub(4) / 2,
    }
}

fn precision_cap(a: &MatFac, b: &MatFac) -> u32 {
    match (a.precision(), b.precision()) {
        (Some(p), Some(q)) => p.min(q),
        (Some(p), None) | (None, Some(p)) => p,
        (None, None) => u32::MAX,
    }
}

/// Residues `alpha(0)` of morphisms `src -> tgt`, certified by agreement of
/// two consecutive lift margins.
fn residue_space(src: &MatFac, tgt: &MatFac, margin: u32, cap: u32) -> Result<Vec<Mat>> {
    let k = src.field();
    let mut prev: Option<usize> = None;
    let mut m = margin;
    while m < cap && m <= margin + 6 {
        let sol = hom_cycles_at(src, tgt, 1, m)?;
        let basis = sol.cycle_basis();
        if prev == Some(basis.len()) {
            let (r, c) = (tgt.size(), src.size());
            return Ok(basis
                .iter()
                .map(|v| {
                    let mut mat = Mat::zeros(k, r, c);
                    for a in 0..r {
                        for b in 0..c {
                            mat.set(a, b, v[sol.coords.index(a, b, 0)]);
                        }
                    }
                    mat
                })
                .collect());
        }
        prev = Some(basis.len());
        m += 1;
    }
    Err(Error::Undetermined(format!(
        "residue space of morphisms did not stabilize below precision {cap}"
    )))
}

fn has_surjection(src: &MatFac, tgt: &MatFac, margin: u32, cap: u32, rng: &mut ChaCha8Rng) -> Result<bool> {
    let space = residue_space(src, tgt, margin, cap)?;
    let k = src.field();
    if space.is_empty() {
        return Ok(false);
    }
    for _ in 0..4 {
        let mut acc = Mat::zeros(k, tgt.size(), src.size());
        for b in &space {
            let c = rng.gen_range(0..k.p());
            for i in 0..acc.rows() {
                for j in 0..acc.cols() {
                    acc.set(i, j, k.mul_add(acc.get(i, j), c, b.get(i, j)));
                }
            }
        }
        if acc.rank() == tgt.size() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether the two factorizations are stably isomorphic.
pub fn mf_iso(a: &MatFac, b: &MatFac) -> Result<bool> {
    if a.hypersurface() != b.hypersurface() {
        return Err(Error::AmbientMismatch("iso test across different rings".into()));
    }
    let a = mf_reduce(a)?;
    let b = mf_reduce(b)?;
    if a.size() != b.size() {
        return Ok(false);
    }
    if a.size() == 0 || a == b {
        return Ok(true);
    }
    let margin = 2 * effective_degree(&a, &b) + 2;
    let cap = precision_cap(&a, &b);
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    Ok(has_surjection(&a, &b, margin, cap, &mut rng)? && has_surjection(&b, &a, margin, cap, &mut rng)?)
}

// ---------------------------------------------------------------------------
// univariate polynomials over F_p, coefficients low to high

type UPoly = Vec<u32>;

fn utrim(mut a: UPoly) -> UPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn umul(k: PrimeField, a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.mul_add(out[i + j], *x, *y);
        }
    }
    utrim(out)
}

fn usub(k: PrimeField, a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| k.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    utrim(out)
}

fn udivrem(k: PrimeField, a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let b = utrim(b.clone());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = utrim(a.clone());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0; r.len() - b.len() + 1];
    let inv = k.inv(*b.last().unwrap());
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = k.mul(*r.last().unwrap(), inv);
        q[shift] = c;
        for (i, bv) in b.iter().enumerate() {
            r[shift + i] = k.sub(r[shift + i], k.mul(c, *bv));
        }
        r = utrim(r);
    }
    (utrim(q), r)
}

fn umonic(k: PrimeField, a: UPoly) -> UPoly {
    match a.last() {
        Some(&l) => {
            let inv = k.inv(l);
            a.into_iter().map(|c| k.mul(c, inv)).collect()
        }
        None => a,
    }
}

fn ugcd(k: PrimeField, a: &UPoly, b: &UPoly) -> UPoly {
    let (mut x, mut y) = (utrim(a.clone()), utrim(b.clone()));
    while !y.is_empty() {
        let r = udivrem(k, &x, &y).1;
        x = y;
        y = r;
    }
    umonic(k, x)
}

/// `(g, s)` with `s * a = g (mod b)`.
fn uext_gcd(k: PrimeField, a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let (mut r0, mut r1) = (utrim(a.clone()), utrim(b.clone()));
    let (mut s0, mut s1): (UPoly, UPoly) = (vec![1], Vec::new());
    while !r1.is_empty() {
        let (q, r) = udivrem(k, &r0, &r1);
        let s = usub(k, &s0, &umul(k, &q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    let lead = *r0.last().expect("nonzero gcd");
    let inv = k.inv(lead);
    (
        r0.into_iter().map(|c| k.mul(c, inv)).collect(),
        s0.into_iter().map(|c| k.mul(c, inv)).collect(),
    )
}

fn upowmod(k: PrimeField, base: &UPoly, mut e: u64, m: &UPoly) -> UPoly {
    let mut result: UPoly = vec![1];
    let mut b = udivrem(k, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            result = udivrem(k, &umul(k, &result, &b), m).1;
        }
        b = udivrem(k, &umul(k, &b, &b), m).1;
        e >>= 1;
    }
    result
}

/// Distinct roots in `F_p` of a nonzero polynomial.
fn uroots(k: PrimeField, f: &UPoly, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let f = umonic(k, utrim(f.clone()));
    if f.len() <= 1 {
        return Vec::new();
    }
    let x: UPoly = vec![0, 1];
    let xp = upowmod(k, &x, k.p() as u64, &f);
    let g = ugcd(k, &f, &usub(k, &xp, &x));
    let mut out = Vec::new();
    split_linear(k, g, rng, &mut out);
    out.sort_unstable();
    out
}

fn split_linear(k: PrimeField, g: UPoly, rng: &mut ChaCha8Rng, out: &mut Vec<u32>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(k.neg(k.mul(g[0], k.inv(g[1])))),
        _ => loop {
            let a = rng.gen_range(0..k.p());
            let h = upowmod(k, &vec![a, 1], (k.p() as u64 - 1) / 2, &g);
            let d = ugcd(k, &g, &usub(k, &h, &vec![1]));
            if d.len() > 1 && d.len() < g.len() {
                let rest = umonic(k, udivrem(k, &g, &d).0);
                split_linear(k, d, rng, out);
                split_linear(k, rest, rng, out);
                return;
            }
        },
    }
}

/// Characteristic polynomial via Hessenberg reduction.
fn char_poly(m: &Mat) -> UPoly {
    let k = m.field();
    let n = m.rows();
    let mut a = m.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| a.get(i, j) != 0) else {
            continue;
        };
        if piv != j + 1 {
            for c in 0..n {
                let t = a.get(piv, c);
                a.set(piv, c, a.get(j + 1, c));
                a.set(j + 1, c, t);
            }
            for r in 0..n {
                let t = a.get(r, piv);
                a.set(r, piv, a.get(r, j + 1));
                a.set(r, j + 1, t);
            }
        }
        let inv = k.inv(a.get(j + 1, j));
        for r in j + 2..n {
            let t = k.mul(a.get(r, j), inv);
            if t == 0 {
                continue;
            }
            for c in 0..n {
                let v = k.sub(a.get(r, c), k.mul(t, a.get(j + 1, c)));
                a.set(r, c, v);
            }
            for rr in 0..n {
                let v = k.add(a.get(rr, j + 1), k.mul(t, a.get(rr, r)));
                a.set(rr, j + 1, v);
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_i h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
    let mut ps: Vec<UPoly> = vec![vec![1]];
    for mm in 0..n {
        let mut next = umul(k, &vec![k.neg(a.get(mm, mm)), 1], &ps[mm]);
        let mut prod = 1u32;
        for i in (0..mm).rev() {
            prod = k.mul(prod, a.get(i + 1, i));
            let c = k.mul(a.get(i, mm), prod);
            if c != 0 {
                let term: UPoly = ps[i].iter().map(|v| k.mul(*v, c)).collect();
                next = usub(k, &next, &term);
            }
        }
        ps.push(next);
    }
    ps.pop().expect("nonempty")
}

// ---------------------------------------------------------------------------
// decomposition

fn constant_part(m: &PolyMatrix) -> Mat {
    let mut out = Mat::zeros(m.field(), m.rows(), m.cols());
    for (i, j, p) in m.entries() {
        out.set(i, j, p.constant_term());
    }
    out
}

fn eval_matrix_poly(q: &UPoly, a: &PolyMatrix, d: u32) -> PolyMatrix {
    let k = a.field();
    let n = a.rows();
    let mut acc = PolyMatrix::zero(k, n, n);
    for c in q.iter().rev() {
        acc = acc.mul_trunc(a, d).add(&PolyMatrix::scalar(&Poly::constant(k, k.to_i64(*c)), n));
    }
    acc
}

fn eval_mat_poly(q: &UPoly, a: &Mat) -> Mat {
    let k = a.field();
    let n = a.rows();
    let mut acc = Mat::zeros(k, n, n);
    for c in q.iter().rev() {
        acc = acc.mul(a);
        for i in 0..n {
            acc.set(i, i, k.add(acc.get(i, i), *c));
        }
    }
    acc
}

fn lift_idempotent(e: PolyMatrix, d: u32) -> PolyMatrix {
    let k = e.field();
    let mut e = e;
    for _ in 0..64 {
        let e2 = e.mul_trunc(&e, d);
        if e2 == e {
            return e;
        }
        let e3 = e2.mul_trunc(&e, d);
        e = e2.scale(&Poly::constant(k, 3)).sub(&e3.scale(&Poly::constant(k, 2)));
    }
    e
}

fn matrix_inverse_trunc(p: &PolyMatrix, d: u32) -> Option<PolyMatrix> {
    let k = p.field();
    let n = p.rows();
    let p0 = constant_part(p);
    let aug = p0.hcat(&Mat::identity(k, n));
    let rref = aug.rref();
    if rref.pivots.len() < n || rref.pivots[n - 1] >= n {
        return None;
    }
    let mut inv0 = PolyMatrix::zero(k, n, n);
    for i in 0..n {
        for j in 0..n {
            inv0.set(i, j, Poly::constant(k, k.to_i64(rref.mat.get(i, n + j))));
        }
    }
    // Newton: X <- X (2 - P X), precision doubles each step
    let two = PolyMatrix::scalar(&Poly::constant(k, 2), n);
    let mut x = inv0;
    let mut prec = 1;
    while prec < d {
        prec = (2 * prec).min(d);
        let px = p.mul_trunc(&x, prec);
        x = x.mul_trunc(&two.sub(&px), prec);
    }
    Some(x)
}

/// Independent columns of the residue of `e`.
fn pick_columns(e: &PolyMatrix) -> Vec<usize> {
    let e0 = constant_part(e);
    let mut ech = SparseEchelon::new(e0.field(), e0.rows());
    (0..e0.cols())
        .filter(|&j| ech.insert(&crate::linalg::to_sparse(&e0.column(j))))
        .collect()
}

/// Split along connected components of the support of `(phi, psi^T)`.
fn components(m: &MatFac) -> Result<Vec<MatFac>> {
    let n = m.size();
    let mut parent: Vec<usize> = (0..2 * n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for i in 0..n {
        for j in 0..n {
            if !m.phi().get(i, j).is_zero() || !m.psi().get(j, i).is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, n + j));
                parent[a] = b;
            }
        }
    }
    let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().0.push(i);
    }
    for j in 0..n {
        let r = find(&mut parent, n + j);
        groups.entry(r).or_default().1.push(j);
    }
    let mut out = Vec::new();
    for (rows, cols) in groups.into_values() {
        if rows.len() != cols.len() {
            return Err(Error::Decomposition("non-square support component".into()));
        }
        out.push(MatFac::with_precision(
            m.hypersurface().clone(),
            m.phi().submatrix(&rows, &cols),
            m.psi().submatrix(&cols, &rows),
            m.precision(),
        )?);
    }
    Ok(out)
}

fn projectors_for(k: PrimeField, chi: &UPoly, rng: &mut ChaCha8Rng) -> Vec<UPoly> {
    let roots = uroots(k, chi, rng);
    let mut parts: Vec<UPoly> = Vec::new();
    let mut covered: UPoly = vec![1];
    for r in roots {
        // largest power of (x - r) dividing chi
        let lin: UPoly = vec![k.neg(r), 1];
        let mut g: UPoly = vec![1];
        let mut rest = chi.clone();
        loop {
            let (q, rem) = udivrem(k, &rest, &lin);
            if !rem.is_empty() {
                break;
            }
            rest = q;
            g = umul(k, &g, &lin);
        }
        // q = 1 mod g, 0 mod rest
        let (_, s) = uext_gcd(k, &rest, &g);
        let proj = udivrem(k, &umul(k, &s, &rest), chi).1;
        parts.push(proj);
        covered = umul(k, &covered, &g);
    }
    if covered.len() < chi.len() && !parts.is_empty() {
        let mut sum: UPoly = Vec::new();
        for p in &parts {
            let n = sum.len().max(p.len());
            sum = utrim((0..n).map(|i| k.add(*sum.get(i).unwrap_or(&0), *p.get(i).unwrap_or(&0))).collect());
        }
        parts.push(usub(k, &vec![1], &sum));
    }
    parts
}

fn split_component(m: &MatFac, cfg: &DecompConfig, rng: &mut ChaCha8Rng) -> Result<Vec<MatFac>> {
    let n = m.size();
    if n <= 1 {
        return Ok(vec![m.clone()]);
    }
    let k = m.field();
    let hyper = m.hypersurface().clone();
    let ord_f = hyper.f().order().unwrap_or(1);
    let maxdeg = match m.precision() {
        None => m.max_degree(),
        Some(p) => p.saturating_sub(6) / 4,
    };
    let d1 = 2 * maxdeg + 6;
    let t = d1 + ord_f;
    let margin = 2 * maxdeg + 2;
    if let Some(p) = m.precision() {
        if t + margin > p {
            // not enough precision to split further; report as one block
            return Ok(vec![m.clone()]);
        }
    }
    let sol = hom_cycles_at(m, m, t, margin)?;
    let ring = cached_ring(&hyper, t)?;
    let beta_of = |alpha: &PolyMatrix| -> Result<PolyMatrix> {
        let g = m.psi().mul_trunc(alpha, t).mul_trunc(m.phi(), t);
        let mut beta = PolyMatrix::zero(k, n, n);
        for (i, j, p) in g.entries() {
            let (rem, q) = ring.reduce_with_quotient(p);
            if !rem.is_zero() {
                return Err(Error::Decomposition("endomorphism failed the cycle check".into()));
            }
            beta.set(i, j, q.truncate(d1));
        }
        Ok(beta)
    };
    // orthogonal idempotent pairs (alpha side, beta side) summing to 1,
    // refined by the eigenspaces of random endomorphisms compressed to each
    let one = PolyMatrix::identity(k, n);
    let mut idem: Vec<(PolyMatrix, PolyMatrix)> = vec![(one.clone(), one)];
    let mut stall = 0;
    while stall < cfg.attempts && idem.len() < n {
        stall += 1;
        let free: Vec<u32> = (0..sol.coords.len()).map(|_| rng.gen_range(0..k.p())).collect();
        let a = sol.coords.to_matrix(&sol.cycle_with(&free)).truncate(d1);
        let e0: Vec<Mat> = idem.iter().map(|(e, _)| constant_part(e)).collect();
        let a0 = constant_part(&a);
        let mut b0 = Mat::zeros(k, n, n);
        for e in &e0 {
            b0 = b0.add(&e.mul(&a0).mul(e));
        }
        let projectors = projectors_for(k, &char_poly(&b0), rng);
        let split_ranks: Vec<Vec<usize>> = e0
            .iter()
            .map(|e| projectors.iter().map(|q| e.mul(&eval_mat_poly(q, &b0)).rank()).collect())
            .collect();
        let parts: usize = split_ranks.iter().map(|r| r.iter().filter(|&&x| x > 0).count()).sum();
        if parts <= idem.len() {
            continue;
        }
        let beta_a = beta_of(&a)?;
        let mut b = PolyMatrix::zero(k, n, n);
        let mut bb = PolyMatrix::zero(k, n, n);
        for (e, f) in &idem {
            b = b.add(&e.mul_trunc(&a, d1).mul_trunc(e, d1));
            bb = bb.add(&f.mul_trunc(&beta_a, d1).mul_trunc(f, d1));
        }
        let lifted: Vec<(PolyMatrix, PolyMatrix)> = projectors
            .iter()
            .map(|q| {
                (
                    lift_idempotent(eval_matrix_poly(q, &b, d1), d1),
                    lift_idempotent(eval_matrix_poly(q, &bb, d1), d1),
                )
            })
            .collect();
        let mut next = Vec::new();
        for ((e, f), ranks) in idem.iter().zip(&split_ranks) {
            for ((pe, pf), &r) in lifted.iter().zip(ranks) {
                if r > 0 {
                    next.push((
                        lift_idempotent(e.mul_trunc(pe, d1), d1),
                        lift_idempotent(f.mul_trunc(pf, d1), d1),
                    ));
                }
            }
        }
        idem = next;
        stall = 0;
    }
    if idem.len() == 1 {
        return Ok(vec![m.clone()]);
    }
    let mut pcols: Vec<PolyMatrix> = Vec::new();
    let mut qcols: Vec<PolyMatrix> = Vec::new();
    let mut sizes = Vec::new();
    for (e, f) in &idem {
        let ce = pick_columns(e);
        let cf = pick_columns(f);
        if ce.len() != cf.len() {
            return Err(Error::Decomposition("idempotent ranks differ on the two sides".into()));
        }
        sizes.push(ce.len());
        pcols.push(e.submatrix(&(0..n).collect::<Vec<_>>(), &ce));
        qcols.push(f.submatrix(&(0..n).collect::<Vec<_>>(), &cf));
    }
    let hstack = |parts: &[PolyMatrix]| {
        let mut acc = PolyMatrix::zero(k, n, 0);
        for p in parts {
            acc = PolyMatrix::block(&acc, p, &PolyMatrix::zero(k, 0, acc.cols()), &PolyMatrix::zero(k, 0, p.cols()));
        }
        acc
    };
    let p = hstack(&pcols);
    let q = hstack(&qcols);
    let pinv = matrix_inverse_trunc(&p, d1)
        .ok_or_else(|| Error::Decomposition("idempotent images do not span".into()))?;
    let qinv = matrix_inverse_trunc(&q, d1)
        .ok_or_else(|| Error::Decomposition("idempotent images do not span".into()))?;
    let phi2 = pinv.mul_trunc(m.phi(), d1).mul_trunc(&q, d1);
    let psi2 = qinv.mul_trunc(m.psi(), d1).mul_trunc(&p, d1);
    let prec = Some(m.precision().map_or(d1, |p| p.min(d1)));
    let mut blocks = Vec::new();
    let mut start = 0;
    for s in sizes {
        let idx: Vec<usize> = (start..start + s).collect();
        let rest: Vec<usize> = (0..n).filter(|i| !idx.contains(i)).collect();
        if !phi2.submatrix(&idx, &rest).is_zero() || !phi2.submatrix(&rest, &idx).is_zero() {
            return Err(Error::Decomposition("change of basis left off-diagonal terms".into()));
        }
        blocks.push(MatFac::with_precision(
            hyper.clone(),
            phi2.submatrix(&idx, &idx),
            psi2.submatrix(&idx, &idx),
            prec,
        )?);
        start += s;
    }
    Ok(blocks)
}

/// Indecomposable blocks of the stable reduction, without catalog matching.
pub fn mf_decompose_blocks(m: &MatFac, seed: u64) -> Result<Vec<MatFac>> {
    let cfg = DecompConfig {
        seed,
        ..DecompConfig::default()
    };
    decompose_blocks_with(m, &cfg)
}

fn decompose_blocks_with(m: &MatFac, cfg: &DecompConfig) -> Result<Vec<MatFac>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let reduced = mf_reduce(m)?;
    let mut out = Vec::new();
    for c in components(&reduced)? {
        out.extend(split_component(&c, cfg, &mut rng)?);
    }
    Ok(out)
}

fn ring_of(m: &MatFac) -> Option<RingId> {
    RingId::ALL
        .into_iter()
        .find(|r| &r.hypersurface(m.field()) == m.hypersurface())
}

/// `dim_k A(T) / I` for `I` the ideal of entries of `a`.
fn entry_colength(m: &MatFac, a: &PolyMatrix, order: u32) -> Result<usize> {
    let ring = cached_ring(m.hypersurface(), order)?;
    let d = ring.dim();
    let mut ech = SparseEchelon::new(ring.field(), d);
    for (_, _, p) in a.entries() {
        if p.is_zero() {
            continue;
        }
        let e = ring.from_poly(&p.truncate(order));
        for s in 0..d {
            let mut row: Vec<(usize, u32)> = Vec::new();
            for (t, &c) in e.coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for &(u, v) in ring.basis_product(t, s) {
                    row.push((u as usize, ring.field().mul(c, v)));
                }
            }
            row.sort_unstable_by_key(|x| x.0);
            let mut merged: Vec<(usize, u32)> = Vec::new();
            for (c, v) in row {
                match merged.last_mut() {
                    Some(l) if l.0 == c => l.1 = ring.field().add(l.1, v),
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|x| x.1 != 0);
            ech.insert(&merged);
        }
    }
    Ok(d - ech.rank())
}

fn invariants(m: &MatFac, order: u32) -> Result<(usize, usize, usize)> {
    Ok((
        m.size(),
        entry_colength(m, m.phi(), order)?,
        entry_colength(m, m.psi(), order)?,
    ))
}

/// Catalog entry isomorphic to `block`, if any.
pub fn match_catalog(block: &MatFac, window: u32) -> Result<Option<CatalogEntry>> {
    let Some(ring) = ring_of(block) else {
        return Ok(None);
    };
    let cat = Catalog::new(block.field());
    let order = block.precision().unwrap_or(u32::MAX).min(10);
    let inv = invariants(block, order)?;
    for cand in cat.window(ring, window) {
        if cand.mf.size() != block.size() || invariants(&cand.mf, order)? != inv {
            continue;
        }
        if mf_iso(&cand.mf, block)? {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

pub fn mf_decompose_with(m: &MatFac, cfg: &DecompConfig) -> Result<DecompResult> {
    let blocks = decompose_blocks_with(m, cfg)?;
    let mut labels = Vec::new();
    let mut multiplicities = BTreeMap::new();
    let mut residual = Vec::new();
    for b in &blocks {
        match match_catalog(b, cfg.catalog_window)? {
            Some(e) => {
                *multiplicities.entry(e.label.clone()).or_insert(0) += 1;
                labels.push(Some(e.label));
            }
            None => {
                residual.push(b.clone());
                labels.push(None);
            }
        }
    }
    Ok(DecompResult {
        blocks,
        labels,
        multiplicities,
        residual,
    })
}

pub fn mf_decompose(m: &MatFac) -> Result<DecompResult> {
    mf_decompose_with(m, &DecompConfig::default())
}

/// A random factorization equivalent to `m`: `(P phi Q, Q^-1 psi P^-1)` with
/// `P`, `Q` products of elementary polynomial matrices and a constant
/// monomial matrix, so that the inverses stay polynomial.
pub fn random_equivalent(m: &MatFac, seed: u64, steps: usize) -> Result<MatFac> {
    let k = m.field();
    let n = m.size();
    let vars = m.hypersurface().vars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_matrix = |rng: &mut ChaCha8Rng| -> (PolyMatrix, PolyMatrix) {
        let mut p = PolyMatrix::identity(k, n);
        let mut pinv = PolyMatrix::identity(k, n);
        if n == 0 {
            return (p, pinv);
        }
        // constant scaling
        for i in 0..n {
            let c = rng.gen_range(1..k.p());
            let mut d = PolyMatrix::identity(k, n);
            d.set(i, i, Poly::constant(k, k.to_i64(c)));
            let mut dinv = PolyMatrix::identity(k, n);
            dinv.set(i, i, Poly::constant(k, k.to_i64(k.inv(c))));
            p = p.mul(&d);
            pinv = dinv.mul(&pinv);
        }
        for _ in 0..steps {
            if n < 2 {
                break;
            }
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let mut t = Poly::constant(k, rng.gen_range(-3..=3));
            let mut mono = Monomial::ONE;
            for _ in 0..rng.gen_range(0..=2) {
                mono.0[rng.gen_range(0..vars)] += 1;
            }
            t.add_term(mono, k.from_i64(rng.gen_range(1..=5)));
            let mut e = PolyMatrix::identity(k, n);
            e.set(i, j, t.clone());
            let mut einv = PolyMatrix::identity(k, n);
            einv.set(i, j, t.neg());
            p = p.mul(&e);
            pinv = einv.mul(&pinv);
        }
        (p, pinv)
    };
    let (p, pinv) = random_matrix(&mut rng);
    let (q, qinv) = random_matrix(&mut rng);
    MatFac::with_precision(
        m.hypersurface().clone(),
        truncate_opt(&p.mul(m.phi()).mul(&q), m.precision()),
        truncate_opt(&qinv.mul(m.psi()).mul(&pinv), m.precision()),
        m.precision(),
    )
}
