//! Linear algebra over `F_p` and over truncated rings via flattening.
//!
//! `Mat` is a dense field matrix used for the small, user-facing maps.
//! `SparseEchelon` is an incremental row echelon form used for the large
//! intertwining systems in the homology module.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::Poly;
use crate::ring::{RingElem, RingRef};

/// Dense row-major matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub mat: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, *v % field.p());
            }
        }
        m
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let p = self.field.p() as u64;
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(k, j) as u64) % p;
                }
            }
            for (j, v) in acc.iter().enumerate() {
                out.set(i, j, *v as u32);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |s, (a, b)| (s + *a as u64 * *b as u64) % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let k = self.field;
        Mat {
            field: k,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| k.add(*a, *b)).collect(),
        }
    }

    /// Stack `other` to the right.
    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    pub fn rref(&self) -> Rref {
        let k = self.field;
        let p = k.p() as u64;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let inv = k.inv(m.get(r, c));
            for j in c..m.cols {
                let v = k.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let neg = (p - factor as u64) % p;
                for j in c..m.cols {
                    let v = (m.get(i, j) as u64 + neg * m.get(r, j) as u64) % p;
                    m.set(i, j, v as u32);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { mat: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let k = self.field;
        let Rref { mat, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = k.neg(mat.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `self * x = b`, free variables set to zero.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let col = Mat {
            field: self.field,
            rows: self.rows,
            cols: 1,
            data: b.to_vec(),
        };
        let Rref { mat, pivots } = self.hcat(&col).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = mat.get(r, self.cols);
        }
        Some(x)
    }
}

/// Matrix over a truncated ring, entries kept in normal form.
#[derive(Debug, Clone)]
pub struct RingMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<RingElem>,
}

impl PartialEq for RingMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl RingMatrix {
    pub fn zero(ring: &RingRef, rows: usize, cols: usize) -> Self {
        Self {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_polys(ring: &RingRef, rows: &[Vec<Poly>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged polynomial matrix".into()));
        }
        let mut m = Self::zero(ring, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, p) in r.iter().enumerate() {
                m.set(i, j, ring.from_poly(p));
            }
        }
        Ok(m)
    }

    /// Convenience for tests and the CLI: entries as parseable strings.
    pub fn parse(ring: &RingRef, rows: &[&[&str]]) -> Result<Self> {
        let k = ring.field();
        let polys = rows
            .iter()
            .map(|r| r.iter().map(|s| Poly::parse(k, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_polys(ring, &polys)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: RingElem) {
        self.entries[i * self.cols + j] = e;
    }

    pub fn mul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = &self.ring;
        let mut out = RingMatrix::zero(r, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = r.zero();
                for k in 0..self.cols {
                    acc = r.add(&acc, &r.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("addition of differently shaped matrices".into()));
        }
        let r = &self.ring;
        Ok(RingMatrix {
            ring: r.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| r.add(a, b))
                .collect(),
        })
    }

    pub fn mul_column(&self, v: &[RingElem]) -> Vec<RingElem> {
        let r = &self.ring;
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(self.get(i, j), &v[j])))
            })
            .collect()
    }
}

/// The `k`-linear map `A(T)^cols -> A(T)^rows` of a ring matrix. Row
/// `i * d + t` is coordinate `t` of output entry `i`; column `j * d + s` is
/// the image of basis monomial `s` placed in input entry `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatMap {
    pub mat: Mat,
}

pub fn flatten(m: &RingMatrix) -> FlatMap {
    let ring = m.ring();
    let d = ring.dim();
    let mut out = Mat::zeros(ring.field(), m.rows() * d, m.cols() * d);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let e = m.get(i, j);
            for (t, &c) in e.coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for s in 0..d {
                    for &(u, v) in ring.basis_product(t, s) {
                        let row = i * d + u as usize;
                        let col = j * d + s;
                        let cur = out.get(row, col);
                        out.set(row, col, ring.field().mul_add(cur, c, v));
                    }
                }
            }
        }
    }
    FlatMap { mat: out }
}

pub fn rank(m: &RingMatrix) -> usize {
    flatten(m).mat.rank()
}

pub fn kernel_dim(m: &RingMatrix) -> usize {
    m.cols() * m.ring().dim() - rank(m)
}

/// Outcome of [`solve`]; the unsolvable case is an ordinary value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Found(Vec<RingElem>),
    NoSolution,
}

pub fn solve(m: &RingMatrix, b: &[RingElem]) -> Result<Solution> {
    if b.len() != m.rows() {
        return Err(Error::Shape(format!(
            "right-hand side has {} entries, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let ring = m.ring();
    let d = ring.dim();
    let rhs: Vec<u32> = b.iter().flat_map(|e| e.coeffs.iter().copied()).collect();
    Ok(match flatten(m).mat.solve(&rhs) {
        None => Solution::NoSolution,
        Some(x) => Solution::Found(
            x.chunks(d)
                .map(|c| RingElem { coeffs: c.to_vec() })
                .collect(),
        ),
    })
}

/// Sparse row `(column, value)` with strictly increasing columns.
pub type SparseRow = Vec<(usize, u32)>;

/// Incrementally built row echelon form. Stored rows have leading
/// coefficient 1 and no two share a leading column.
#[derive(Debug, Clone)]
pub struct SparseEchelon {
    field: PrimeField,
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
    scratch: Vec<u64>,
}

impl SparseEchelon {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        Self {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
            scratch: vec![0; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Number of pivots in columns `>= from`.
    pub fn pivots_from(&self, from: usize) -> usize {
        self.pivot_columns().filter(|&c| c >= from).count()
    }

    /// Reduce `row` against the stored rows; returns the reduced remainder.
    pub fn reduce(&mut self, row: &[(usize, u32)]) -> SparseRow {
        let p = self.field.p() as u64;
        let Some(start) = row.iter().filter(|e| e.1 != 0).map(|e| e.0).min() else {
            return Vec::new();
        };
        for &(c, v) in row {
            self.scratch[c] = (self.scratch[c] + v as u64) % p;
        }
        let mut out = Vec::new();
        for c in start..self.ncols {
            let v = self.scratch[c] % p;
            self.scratch[c] = 0;
            if v == 0 {
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    let neg = p - v;
                    for &(cc, vv) in &self.rows[r][1..] {
                        self.scratch[cc] = (self.scratch[cc] + neg * vv as u64) % p;
                    }
                }
                None => out.push((c, v as u32)),
            }
        }
        out
    }

    /// Add a row; returns whether the rank grew.
    pub fn insert(&mut self, row: &[(usize, u32)]) -> bool {
        let reduced = self.reduce(row);
        if reduced.is_empty() {
            return false;
        }
        self.push_reduced(reduced);
        true
    }

    fn push_reduced(&mut self, mut row: SparseRow) {
        let k = self.field;
        let inv = k.inv(row[0].1);
        for e in row.iter_mut() {
            e.1 = k.mul(e.1, inv);
        }
        let lead = row[0].0;
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(row);
    }

    /// Whether `row` lies in the row space.
    pub fn contains(&mut self, row: &[(usize, u32)]) -> bool {
        self.reduce(row).is_empty()
    }

    /// Kernel vector with the given values on free columns (missing = 0).
    /// Pivot variables are determined by back substitution.
    pub fn kernel_vector(&self, free_values: impl Fn(usize) -> u32) -> Vec<u32> {
        let k = self.field;
        let p = k.p() as u64;
        let mut x = vec![0u32; self.ncols];
        for (c, xc) in x.iter_mut().enumerate() {
            if self.pivot_row[c].is_none() {
                *xc = free_values(c) % k.p();
            }
        }
        for c in (0..self.ncols).rev() {
            if let Some(r) = self.pivot_row[c] {
                let s = self.rows[r][1..]
                    .iter()
                    .fold(0u64, |s, &(cc, vv)| (s + vv as u64 * x[cc] as u64) % p);
                x[c] = ((p - s) % p) as u32;
            }
        }
        x
    }

    /// Rows whose lead lies at or after `from`, shifted to start at column 0.
    pub fn tail(&self, from: usize) -> SparseEchelon {
        let mut tail = SparseEchelon::new(self.field, self.ncols - from);
        for row in &self.rows {
            if row[0].0 >= from {
                let shifted: SparseRow = row.iter().map(|&(c, v)| (c - from, v)).collect();
                tail.pivot_row[shifted[0].0] = Some(tail.rows.len());
                tail.rows.push(shifted);
            }
        }
        tail
    }

    /// Kernel basis of the system restricted to columns `>= from`, using only
    /// rows whose lead lies there. Vectors are indexed from `from`.
    pub fn tail_kernel_basis(&self, from: usize) -> Vec<Vec<u32>> {
        let tail = self.tail(from);
        (0..tail.ncols)
            .filter(|&c| tail.pivot_row[c].is_none())
            .map(|free| tail.kernel_vector(|c| u32::from(c == free)))
            .collect()
    }
}

/// Dense vector to sparse row.
pub fn to_sparse(v: &[u32]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| **x != 0)
        .map(|(i, x)| (i, *x))
        .collect()
}
