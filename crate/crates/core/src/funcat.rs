//! Finitely presented functors on the stable category, evaluated on a finite
//! window of indecomposables, and exactness of short sequences of modules.
//!
//! A functor is presented by a morphism `m: Y -> X`; its value at `U` is the
//! cokernel of `stHom(U, Y) -> stHom(U, X)`. Module maps are matrices between
//! the free covers, so a sequence `0 -> Z -> Y -> X -> 0` is a pair of
//! [`MFMorphism`]s.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, CatalogEntry, RingId};
use crate::decomp::mf_iso;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::homology::{
    merge_sorted, push_product, stable_hom_at, stable_hom_dim, DimReport, HomologyConfig, Verdict,
};
use crate::linalg::{SparseEchelon, SparseRow};
use crate::matfac::{mf_cone_inclusion, MFMorphism, MatFac, PolyMatrix};
use crate::poly::{Monomial, Poly};
use crate::ring::{cached_ring, Hypersurface, RingRef};

/// Ordered indecomposables on which functors are evaluated.
#[derive(Debug, Clone)]
pub struct Window {
    pub ring: RingId,
    pub entries: Vec<CatalogEntry>,
}

impl Window {
    pub fn new(ring: RingId, entries: Vec<CatalogEntry>) -> Self {
        Self { ring, entries }
    }

    /// The free marker followed by the catalog window up to `max_n`.
    pub fn standard(cat: &Catalog, ring: RingId, max_n: u32) -> Self {
        let mut entries = vec![cat.free(ring)];
        entries.extend(cat.window(ring, max_n));
        Self { ring, entries }
    }

    /// Same window without the free marker.
    pub fn without_free(&self) -> Self {
        Self {
            ring: self.ring,
            entries: self.entries.iter().filter(|e| !e.is_free()).cloned().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.label.clone()).collect()
    }

    pub fn hypersurface(&self, cat: &Catalog) -> Hypersurface {
        cat.hypersurface(self.ring)
    }

    /// Fails when two entries are isomorphic.
    pub fn check_distinct(&self) -> Result<()> {
        for (i, a) in self.entries.iter().enumerate() {
            for b in &self.entries[i + 1..] {
                if mf_iso(&a.mf, &b.mf)? {
                    return Err(Error::Catalog(format!("{} and {} are isomorphic", a.label, b.label)));
                }
            }
        }
        Ok(())
    }
}

/// The functor `coker(stHom(-, Y) -> stHom(-, X))` of a morphism `Y -> X`.
#[derive(Debug, Clone)]
pub struct FpFunctor {
    pub name: String,
    pub presentation: MFMorphism,
}

pub fn functor_from(m: &MFMorphism) -> FpFunctor {
    FpFunctor {
        name: "coker".into(),
        presentation: m.clone(),
    }
}

/// `stHom(-, X)`, presented by `0 -> X`.
pub fn hom_functor(x: &MatFac) -> FpFunctor {
    let zero = MatFac::zero(x.hypersurface());
    functor_from(&MFMorphism::zero(&zero, x)).with_name("Hom(-, X)")
}

impl FpFunctor {
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> &MatFac {
        self.presentation.src()
    }

    pub fn target(&self) -> &MatFac {
        self.presentation.tgt()
    }

    /// `dim F(U)` at one truncation order.
    pub fn eval_at(&self, u: &MatFac, order: u32, cfg: &HomologyConfig) -> Result<usize> {
        let sy = stable_hom_at(u, self.source(), order, cfg)?;
        let sx = stable_hom_at(u, self.target(), order, cfg)?;
        let alpha = self.presentation.alpha();
        let images: Vec<SparseRow> = sy
            .quotient_basis()
            .iter()
            .map(|v| {
                let a = sy.coords.to_matrix(v);
                sx.coords.from_matrix(&alpha.mul_trunc(&a, order))
            })
            .collect();
        Ok(sx.dim() - sx.rank_modulo_homotopy(&images))
    }

    pub fn eval_report(&self, u: &MatFac, cfg: &HomologyConfig) -> Result<DimReport> {
        let maxdeg = [u, self.source(), self.target()]
            .iter()
            .map(|m| m.max_degree())
            .chain(std::iter::once(self.presentation.alpha().max_degree()))
            .max()
            .unwrap_or(0);
        cfg.trace(maxdeg, |t| self.eval_at(u, t, cfg))
    }

    /// `A(F)`, presented by the sharp of the presenting morphism.
    pub fn sharp(&self) -> Result<FpFunctor> {
        Ok(FpFunctor {
            name: format!("A({})", self.name),
            presentation: self.presentation.knorrer_sharp()?,
        })
    }

    /// `F[-1]`, presented by the syzygy of the presenting morphism.
    pub fn shift(&self) -> FpFunctor {
        FpFunctor {
            name: format!("{}[-1]", self.name),
            presentation: self.presentation.shift(),
        }
    }
}

pub fn eval_dim(f: &FpFunctor, u: &CatalogEntry, cfg: &HomologyConfig) -> Result<usize> {
    f.eval_report(&u.mf, cfg)?.value()
}

pub fn dim_vector_reports(f: &FpFunctor, w: &Window, cfg: &HomologyConfig) -> Result<Vec<DimReport>> {
    w.entries.iter().map(|u| f.eval_report(&u.mf, cfg)).collect()
}

pub fn dim_vector(f: &FpFunctor, w: &Window, cfg: &HomologyConfig) -> Result<Vec<usize>> {
    dim_vector_reports(f, w, cfg)?.iter().map(DimReport::value).collect()
}

/// Indices of the nonzero entries.
pub fn support(v: &[usize]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, d)| **d > 0).map(|(i, _)| i).collect()
}

/// `dim stHom(U, x)` for every `U` in the window.
pub fn hom_vector(x: &MatFac, w: &Window, cfg: &HomologyConfig) -> Result<Vec<DimReport>> {
    w.entries.iter().map(|u| stable_hom_dim(&u.mf, x, cfg)).collect()
}

// ---------------------------------------------------------------------------
// short sequences

/// `0 -> Z -> Y -> X -> 0` given by module maps between cokernels.
#[derive(Debug, Clone)]
pub struct ShortSequence {
    first: MFMorphism,
    second: MFMorphism,
}

impl ShortSequence {
    pub fn new(first: MFMorphism, second: MFMorphism) -> Result<Self> {
        if first.tgt() != second.src() {
            return Err(Error::Sequence("maps are not composable".into()));
        }
        Ok(Self { first, second })
    }

    pub fn first(&self) -> &MFMorphism {
        &self.first
    }

    pub fn second(&self) -> &MFMorphism {
        &self.second
    }

    pub fn z(&self) -> &MatFac {
        self.first.src()
    }

    pub fn y(&self) -> &MatFac {
        self.first.tgt()
    }

    pub fn x(&self) -> &MatFac {
        self.second.tgt()
    }

    fn hyper(&self) -> &Hypersurface {
        self.z().hypersurface()
    }

    fn max_degree(&self) -> u32 {
        [self.z(), self.y(), self.x()]
            .iter()
            .map(|m| m.max_degree())
            .chain([self.first.alpha().max_degree(), self.second.alpha().max_degree()])
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessReport {
    /// The composite lands in the relations of `X`.
    pub composite_zero: bool,
    /// Kernel of the first map, projected through a margin.
    pub injective: DimReport,
    /// `ker g / im f`.
    pub middle: DimReport,
    /// Cokernel of the second map.
    pub surjective: DimReport,
}

impl ExactnessReport {
    /// `Err(Undetermined)` when some trace did not settle and none failed.
    pub fn verdict(&self) -> Result<bool> {
        if !self.composite_zero {
            return Ok(false);
        }
        let parts = [&self.injective, &self.middle, &self.surjective];
        if parts
            .iter()
            .any(|r| matches!(r.verdict, Verdict::Growing) || r.stable().is_some_and(|d| d > 0))
        {
            return Ok(false);
        }
        if let Some(r) = parts.iter().find(|r| r.verdict == Verdict::Undetermined) {
            return Err(Error::Undetermined(format!("exactness trace {:?}", r.pairs)));
        }
        Ok(true)
    }

    pub fn is_exact(&self) -> bool {
        self.verdict().unwrap_or(false)
    }
}

/// Rows `a * e_j * m_s` in `A(T)^rows` coordinates, indexed by `j * d + s`.
fn column_images(ring: &RingRef, a: &PolyMatrix) -> Vec<SparseRow> {
    let d = ring.dim();
    let p = ring.field().p();
    let mut out = Vec::with_capacity(a.cols() * d);
    for j in 0..a.cols() {
        for s in 0..d {
            let mut row = Vec::new();
            for i in 0..a.rows() {
                let c = a.get(i, j);
                if !c.is_zero() {
                    push_product(ring, c, s, |u, v| row.push((i * d + u, v)));
                }
            }
            row.sort_unstable_by_key(|e| e.0);
            out.push(merge_sorted(p, row));
        }
    }
    out
}

fn echelon(k: PrimeField, ncols: usize, rows: &[SparseRow]) -> SparseEchelon {
    let mut e = SparseEchelon::new(k, ncols);
    for r in rows {
        e.insert(r);
    }
    e
}

fn cokernel_dim(seq: &ShortSequence, order: u32) -> Result<usize> {
    let ring = cached_ring(seq.hyper(), order)?;
    let n = seq.x().size() * ring.dim();
    let mut e = echelon(ring.field(), n, &column_images(&ring, seq.x().phi()));
    for r in column_images(&ring, seq.second.alpha()) {
        e.insert(&r);
    }
    Ok(n - e.rank())
}

fn middle_dim(seq: &ShortSequence, order: u32) -> Result<usize> {
    let ring = cached_ring(seq.hyper(), order)?;
    let k = ring.field();
    let d = ring.dim();
    let mut wx = echelon(k, seq.x().size() * d, &column_images(&ring, seq.x().phi()));
    let base = wx.rank();
    for r in column_images(&ring, seq.second.alpha()) {
        wx.insert(&r);
    }
    let kernel = seq.y().size() * d - (wx.rank() - base);
    let mut wy = echelon(k, seq.y().size() * d, &column_images(&ring, seq.y().phi()));
    for r in column_images(&ring, seq.first.alpha()) {
        wy.insert(&r);
    }
    Ok(kernel.saturating_sub(wy.rank()))
}

/// Kernel of `Z -> Y` over `A(order + margin)`, projected to `A(order)`
/// modulo the relations of `Z`.
fn projected_kernel_dim(seq: &ShortSequence, order: u32, margin: u32) -> Result<usize> {
    let lo = cached_ring(seq.hyper(), order)?;
    let hi = cached_ring(seq.hyper(), order + margin)?;
    let k = lo.field();
    let (d, d2) = (lo.dim(), hi.dim());
    let (nz, ny) = (seq.z().size(), seq.y().size());
    let ycols = ny * d2;
    let nonkept = nz * (d2 - d);
    let zcol = |j: usize, s: usize| {
        if s < d {
            ycols + nonkept + j * d + s
        } else {
            ycols + j * (d2 - d) + (s - d)
        }
    };
    let mut e = echelon(k, ycols + nonkept + nz * d, &column_images(&hi, seq.y().phi()));
    let images = column_images(&hi, seq.first.alpha());
    for j in 0..nz {
        for s in 0..d2 {
            let mut row = images[j * d2 + s].clone();
            row.push((zcol(j, s), 1));
            e.insert(&row);
        }
    }
    let mut proj = echelon(k, nz * d, &column_images(&lo, seq.z().phi()));
    let base = proj.rank();
    for row in e.rows() {
        if row[0].0 < ycols {
            continue;
        }
        let kept: SparseRow = row
            .iter()
            .filter(|e| e.0 >= ycols + nonkept)
            .map(|&(c, v)| (c - ycols - nonkept, v))
            .collect();
        if !kept.is_empty() {
            proj.insert(&kept);
        }
    }
    Ok(proj.rank() - base)
}

/// Injectivity, middle exactness and surjectivity over `A(T)` for
/// increasing `T`.
pub fn exactness_check(seq: &ShortSequence, cfg: &HomologyConfig) -> Result<ExactnessReport> {
    let gf = seq.second.alpha().mul(seq.first.alpha());
    let composite_zero = seq.x().psi().mul(&gf).exact_div(seq.hyper().f()).is_some();
    let maxdeg = seq.max_degree();
    let margin = cfg.margin_for(maxdeg);
    Ok(ExactnessReport {
        composite_zero,
        injective: cfg.trace(maxdeg, |t| projected_kernel_dim(seq, t, margin))?,
        middle: cfg.trace(maxdeg, |t| middle_dim(seq, t))?,
        surjective: cfg.trace(maxdeg, |t| cokernel_dim(seq, t))?,
    })
}

// ---------------------------------------------------------------------------
// polynomial linear systems

/// Monomials in `vars` variables of degree `<= bound`.
fn monomials_upto(vars: usize, bound: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::ONE];
    for v in 0..vars {
        let mut next = Vec::new();
        for m in &out {
            let mut m2 = *m;
            while m2.degree() <= bound {
                next.push(m2);
                m2.0[v] += 1;
            }
        }
        out = next;
    }
    out.sort();
    out
}

struct Block {
    rows: usize,
    cols: usize,
    monos: Vec<Monomial>,
    offset: usize,
}

impl Block {
    fn col(&self, a: usize, b: usize, q: usize) -> usize {
        self.offset + (a * self.cols + b) * self.monos.len() + q
    }

    fn width(&self) -> usize {
        self.rows * self.cols * self.monos.len()
    }
}

/// Matrix identities `sum L U R = C` in unknown polynomial matrices `U` with
/// bounded degree, compared coefficientwise over `S` (optionally modulo
/// `m^trunc`). Blocks declared first are eliminated first.
struct PolySystem {
    field: PrimeField,
    vars: usize,
    trunc: Option<u32>,
    blocks: Vec<Block>,
    equations: HashMap<EquationKey, Vec<(usize, u32)>>,
}

/// Block, row, column and monomial of one scalar equation.
type EquationKey = (usize, usize, usize, Monomial);

impl PolySystem {
    fn new(field: PrimeField, vars: usize, trunc: Option<u32>) -> Self {
        Self {
            field,
            vars,
            trunc,
            blocks: Vec::new(),
            equations: HashMap::new(),
        }
    }

    fn ncols(&self) -> usize {
        self.blocks.last().map_or(0, |b| b.offset + b.width())
    }

    fn unknown(&mut self, rows: usize, cols: usize, bound: u32) -> usize {
        assert!(self.equations.is_empty(), "declare unknowns before equations");
        let offset = self.ncols();
        self.blocks.push(Block {
            rows,
            cols,
            monos: monomials_upto(self.vars, bound),
            offset,
        });
        self.blocks.len() - 1
    }

    fn keep(&self, m: &Monomial) -> bool {
        self.trunc.is_none_or(|t| m.degree() < t)
    }

    /// Adds `sign * left * U * right` to equation `eq`.
    fn add(&mut self, eq: usize, left: &PolyMatrix, u: usize, right: &PolyMatrix, sign: i64) {
        let k = self.field;
        let s = k.from_i64(sign);
        let blk = &self.blocks[u];
        assert_eq!((left.cols(), right.rows()), (blk.rows, blk.cols));
        for i in 0..left.rows() {
            for a in 0..blk.rows {
                let l = left.get(i, a);
                if l.is_zero() {
                    continue;
                }
                for b in 0..blk.cols {
                    for j in 0..right.cols() {
                        let r = right.get(b, j);
                        if r.is_zero() {
                            continue;
                        }
                        let lr = l.mul(r);
                        for (q, mq) in blk.monos.iter().enumerate() {
                            let col = blk.col(a, b, q);
                            for (m, c) in lr.terms() {
                                let mm = m.mul(mq);
                                if !self.trunc.is_none_or(|t| mm.degree() < t) {
                                    continue;
                                }
                                self.equations
                                    .entry((eq, i, j, mm))
                                    .or_default()
                                    .push((col, k.mul(*c, s)));
                            }
                        }
                    }
                }
            }
        }
    }

    /// Moves `c` to the right-hand side of equation `eq`.
    fn constant(&mut self, eq: usize, c: &PolyMatrix) {
        let rhs = self.ncols();
        let k = self.field;
        for (i, j, p) in c.entries() {
            for (m, v) in p.terms() {
                if self.keep(m) {
                    self.equations
                        .entry((eq, i, j, *m))
                        .or_default()
                        .push((rhs, k.neg(*v)));
                }
            }
        }
    }

    /// Echelon form over the unknowns plus one right-hand-side column.
    fn echelon(&self) -> SparseEchelon {
        let p = self.field.p();
        let mut e = SparseEchelon::new(self.field, self.ncols() + 1);
        let mut keys: Vec<_> = self.equations.keys().collect();
        keys.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)).then(a.3.cmp(&b.3)));
        for key in keys {
            let mut row = self.equations[key].clone();
            row.sort_unstable_by_key(|e| e.0);
            let row = merge_sorted(p, row);
            if !row.is_empty() {
                e.insert(&row);
            }
        }
        e
    }

    fn consistent(&self, e: &SparseEchelon) -> bool {
        !e.has_pivot(self.ncols())
    }

    /// A random solution of the homogeneous system, read on the last block.
    fn random_last_block(&self, e: &SparseEchelon, rng: &mut ChaCha8Rng) -> PolyMatrix {
        let blk = self.blocks.last().expect("at least one unknown");
        let tail = e.tail(blk.offset);
        let free: Vec<u32> = (0..tail.ncols()).map(|_| rng.gen_range(0..self.field.p())).collect();
        // the right-hand-side column is held at zero
        let rhs = tail.ncols() - 1;
        let v = tail.kernel_vector(|c| if c == rhs { 0 } else { free[c] });
        self.block_matrix(blk, &v, blk.offset)
    }

    fn block_matrix(&self, blk: &Block, v: &[u32], base: usize) -> PolyMatrix {
        let k = self.field;
        let mut m = PolyMatrix::zero(k, blk.rows, blk.cols);
        for a in 0..blk.rows {
            for b in 0..blk.cols {
                let mut p = Poly::zero(k);
                for (q, mq) in blk.monos.iter().enumerate() {
                    p.add_term(*mq, v[blk.col(a, b, q) - base]);
                }
                m.set(a, b, p);
            }
        }
        m
    }
}

fn identity(k: PrimeField, n: usize) -> PolyMatrix {
    PolyMatrix::identity(k, n)
}

/// Solves for `Z -> Y` completing `second: Y -> X` to an exact sequence.
/// Candidates are random maps with `g f` in the relations of `X`, of
/// increasing degree, accepted once [`exactness_check`] passes.
pub fn solve_first_map(
    z: &MatFac,
    second: &MFMorphism,
    cfg: &HomologyConfig,
    seed: u64,
) -> Result<ShortSequence> {
    let (y, x) = (second.src(), second.tgt());
    let k = z.field();
    let vars = z.hypersurface().vars();
    let slack = [z, y, x]
        .iter()
        .map(|m| m.max_degree())
        .chain(std::iter::once(second.alpha().max_degree()))
        .max()
        .unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (nz, ny, nx) = (z.size(), y.size(), x.size());
    for bound in 0..=2 * slack + 2 {
        let mut sys = PolySystem::new(k, vars, None);
        let beta = sys.unknown(ny, nz, bound + slack);
        let gamma = sys.unknown(nx, nz, bound + slack);
        let alpha = sys.unknown(ny, nz, bound);
        sys.add(0, &identity(k, ny), alpha, z.phi(), 1);
        sys.add(0, y.phi(), beta, &identity(k, nz), -1);
        sys.add(1, second.alpha(), alpha, &identity(k, nz), 1);
        sys.add(1, x.phi(), gamma, &identity(k, nz), -1);
        let e = sys.echelon();
        for _ in 0..3 {
            let a = sys.random_last_block(&e, &mut rng);
            if a.is_zero() {
                continue;
            }
            let Ok(first) = MFMorphism::from_alpha(z, y, a) else {
                continue;
            };
            let seq = ShortSequence::new(first, second.clone())?;
            if exactness_check(&seq, cfg)?.is_exact() {
                return Ok(seq);
            }
        }
    }
    Err(Error::Sequence(
        "no map completes the sequence within the degree budget".into(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitVerdict {
    /// A section exists (found as an exact polynomial map).
    Split,
    /// No section exists even modulo `m^order`.
    NonSplit { order: u32 },
    Undetermined,
}

/// Section system `s phi_X = phi_Y b`, `g s - phi_X c = 1`.
fn section_system(seq: &ShortSequence, bound: u32, slack: u32, trunc: Option<u32>) -> bool {
    let (y, x) = (seq.y(), seq.x());
    let k = x.field();
    let (ny, nx) = (y.size(), x.size());
    let mut sys = PolySystem::new(k, x.hypersurface().vars(), trunc);
    let b = sys.unknown(ny, nx, bound + slack);
    let c = sys.unknown(nx, nx, bound + slack);
    let s = sys.unknown(ny, nx, bound);
    sys.add(0, &identity(k, ny), s, x.phi(), 1);
    sys.add(0, y.phi(), b, &identity(k, nx), -1);
    sys.add(1, seq.second.alpha(), s, &identity(k, nx), 1);
    sys.add(1, x.phi(), c, &identity(k, nx), -1);
    sys.constant(1, &identity(k, nx));
    let e = sys.echelon();
    sys.consistent(&e)
}

/// Whether the second map admits a module section. Non-splitness is
/// certified by inconsistency of the section equations modulo `m^T`.
pub fn split_check(seq: &ShortSequence, cfg: &HomologyConfig) -> Result<SplitVerdict> {
    let slack = seq.max_degree();
    for bound in 0..=1 {
        if section_system(seq, bound, slack, None) {
            return Ok(SplitVerdict::Split);
        }
    }
    let last = cfg.margin_for(slack) + cfg.budget;
    for t in 1..=last {
        if !section_system(seq, t.saturating_sub(1), 0, Some(t)) {
            return Ok(SplitVerdict::NonSplit { order: t });
        }
    }
    for bound in 2..=slack + 2 {
        if section_system(seq, bound, slack, None) {
            return Ok(SplitVerdict::Split);
        }
    }
    Ok(SplitVerdict::Undetermined)
}

// ---------------------------------------------------------------------------
// AR sequences

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlmostSplitEntry {
    pub label: String,
    /// `U` is isomorphic to the end term.
    pub is_end: bool,
    /// Cokernel of `stHom(U, Y) -> stHom(U, X)`.
    pub cokernel: DimReport,
}

impl AlmostSplitEntry {
    pub fn passes(&self) -> bool {
        self.cokernel.stable() == Some(usize::from(self.is_end))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArRecord {
    pub n: u32,
    pub exactness: ExactnessReport,
    pub split: SplitVerdict,
    pub almost_split: Vec<AlmostSplitEntry>,
}

impl ArRecord {
    pub fn exact(&self) -> bool {
        self.exactness.is_exact()
    }

    pub fn non_split(&self) -> bool {
        matches!(self.split, SplitVerdict::NonSplit { .. })
    }

    pub fn almost_split_on_window(&self) -> bool {
        self.almost_split.iter().all(AlmostSplitEntry::passes)
    }

    pub fn passes(&self) -> bool {
        self.exact() && self.non_split() && self.almost_split_on_window()
    }

    /// `Err(Undetermined)` when nothing failed but some trace did not settle.
    pub fn verdict(&self) -> Result<bool> {
        let undetermined = self.exactness.verdict().is_err()
            || self.split == SplitVerdict::Undetermined
            || self
                .almost_split
                .iter()
                .any(|e| e.cokernel.verdict == Verdict::Undetermined);
        if self.passes() {
            Ok(true)
        } else if undetermined {
            Err(Error::Undetermined(format!("AR checks for n = {}", self.n)))
        } else {
            Ok(false)
        }
    }
}

/// Cokernel dimensions of the second map against every window entry.
pub fn almost_split_check(
    seq: &ShortSequence,
    w: &Window,
    cfg: &HomologyConfig,
) -> Result<Vec<AlmostSplitEntry>> {
    let f = functor_from(seq.second());
    w.entries
        .iter()
        .map(|u| {
            Ok(AlmostSplitEntry {
                label: u.label.clone(),
                is_end: mf_iso(&u.mf, seq.x())?,
                cokernel: f.eval_report(&u.mf, cfg)?,
            })
        })
        .collect()
}

pub fn ar_verify_sequence(
    seq: &ShortSequence,
    n: u32,
    w: &Window,
    cfg: &HomologyConfig,
) -> Result<ArRecord> {
    Ok(ArRecord {
        n,
        exactness: exactness_check(seq, cfg)?,
        split: split_check(seq, cfg)?,
        almost_split: almost_split_check(seq, w, cfg)?,
    })
}

/// Checks `0 -> I_n -> I_{n+1} ⊕ I_{n-1} -> I_n -> 0` over `x^2`.
pub fn ar_verify(cat: &Catalog, n: u32, w: &Window, cfg: &HomologyConfig) -> Result<ArRecord> {
    if w.ring != RingId::Ainf1 {
        return Err(Error::Catalog("AR sequences are built over ainf1 only".into()));
    }
    ar_verify_sequence(&ainf1_ar_sequence(cat, n)?, n, w, cfg)
}

// ---------------------------------------------------------------------------
// explicit sequences and functors
//
// Modules are identified with ideals: `I = (x)`, `I_n = (x, y^n)` with
// generators `x, -y^n`, and over `x^2 y + z^2`, `I = (x, z)` with generators
// `x, -z`. Maps below are written in generator coordinates.

fn pm(k: PrimeField, rows: &[&[&str]]) -> Result<PolyMatrix> {
    PolyMatrix::parse(k, rows)
}

/// `I_n` for `n >= 1`, the free module for `n = 0`.
fn ainf1_in(cat: &Catalog, n: u32) -> Result<MatFac> {
    if n == 0 {
        Ok(cat.free(RingId::Ainf1).mf)
    } else {
        Ok(cat.ainf1(n)?.mf)
    }
}

/// `0 -> I_n -> I_{n+1} ⊕ I_{n-1} -> I_n -> 0`, `c -> (y c, -c)` then
/// `(a, b) -> a + y b`.
pub fn ainf1_ar_sequence(cat: &Catalog, n: u32) -> Result<ShortSequence> {
    if n == 0 {
        return Err(Error::Catalog("AR sequences start at n = 1".into()));
    }
    let k = cat.field();
    let hyper = cat.hypersurface(RingId::Ainf1);
    let end = ainf1_in(cat, n)?;
    let mid = ainf1_in(cat, n + 1)?.direct_sum(&ainf1_in(cat, n - 1)?)?;
    let yn = format!("y^{n}");
    let (f, g) = if n == 1 {
        (
            pm(k, &[&["y", "0"], &["0", "1"], &["-x", &yn]])?,
            pm(k, &[&["1", "0", "0"], &["0", "y", "-1"]])?,
        )
    } else {
        (
            pm(k, &[&["y", "0"], &["0", "1"], &["-1", "0"], &["0", "-y"]])?,
            pm(k, &[&["1", "0", "y", "0"], &["0", "y", "0", "1"]])?,
        )
    };
    debug_assert_eq!(mid.hypersurface(), &hyper);
    let first = MFMorphism::from_alpha(&end, &mid, f)?;
    let second = MFMorphism::from_alpha(&mid, &end, g)?;
    ShortSequence::new(first, second)
}

/// `I ⊕ R -> I`, `(a, r) -> y^n a - x r`.
pub fn ainf1_kernel_map(cat: &Catalog, n: u32) -> Result<MFMorphism> {
    let k = cat.field();
    let i = cat.ainf1_i().mf;
    let src = i.direct_sum(&cat.free(RingId::Ainf1).mf)?;
    MFMorphism::from_alpha(&src, &i, pm(k, &[&[&format!("y^{n}"), "-1"]])?)
}

/// `0 -> I_n -> I ⊕ R -> I -> 0` with the first map solved for.
pub fn ainf1_kernel_sequence(
    cat: &Catalog,
    n: u32,
    cfg: &HomologyConfig,
    seed: u64,
) -> Result<ShortSequence> {
    solve_first_map(&cat.ainf1(n)?.mf, &ainf1_kernel_map(cat, n)?, cfg, seed)
}

/// Multiplication by `z/x` on `I = (x, z)` over `x^2 y + z^2`.
pub fn dinf2_z_over_x(cat: &Catalog) -> Result<MFMorphism> {
    let i = cat.dinf2_i().mf;
    MFMorphism::from_alpha(&i, &i, pm(cat.field(), &[&["0", "y"], &["-1", "0"]])?)
}

/// `I ⊕ R -> I`, `(a, r) -> (z/x) a - x r`, over `x^2 y + z^2`.
pub fn dinf2_kernel_map(cat: &Catalog) -> Result<MFMorphism> {
    let i = cat.dinf2_i().mf;
    let src = i.direct_sum(&cat.free(RingId::Dinf2).mf)?;
    MFMorphism::from_alpha(&src, &i, pm(cat.field(), &[&["0", "y", "-1"], &["-1", "0", "0"]])?)
}

/// `0 -> L_1 -> I ⊕ R -> I -> 0` over `x^2 y + z^2`, first map solved for.
pub fn dinf2_kernel_sequence(cat: &Catalog, cfg: &HomologyConfig, seed: u64) -> Result<ShortSequence> {
    solve_first_map(&cat.dinf2_l(1)?.mf, &dinf2_kernel_map(cat)?, cfg, seed)
}

/// `H_n = coker(stHom(-, I ⊕ R) -> stHom(-, I))` over `x^2`.
pub fn h_functor(cat: &Catalog, n: u32) -> Result<FpFunctor> {
    Ok(functor_from(&ainf1_kernel_map(cat, n)?).with_name(format!("H{n}")))
}

/// `H'_1 = coker(stHom(-, I) -> stHom(-, cone(y)))` over `x^2`.
pub fn h_prime_functor(cat: &Catalog) -> Result<FpFunctor> {
    let i = cat.ainf1_i().mf;
    let y = MFMorphism::from_alpha(&i, &i, pm(cat.field(), &[&["y"]])?)?;
    Ok(functor_from(&mf_cone_inclusion(&y)?).with_name("H'1"))
}

/// `G_1 = coker(stHom(-, I ⊕ R) -> stHom(-, I))` over `x^2 y + z^2`.
pub fn g_functor(cat: &Catalog) -> Result<FpFunctor> {
    Ok(functor_from(&dinf2_kernel_map(cat)?).with_name("G1"))
}

/// `S_X`, the cokernel functor of the second map of an AR sequence.
pub fn simple_functor(seq: &ShortSequence) -> FpFunctor {
    functor_from(seq.second()).with_name("S")
}

/// Named functors accepted by the command line.
pub fn named_functor(cat: &Catalog, ring: RingId, name: &str) -> Result<FpFunctor> {
    let lower = name.to_ascii_lowercase();
    match (ring, lower.as_str()) {
        (RingId::Ainf1, "h1'") | (RingId::Ainf1, "hprime1") => h_prime_functor(cat),
        (RingId::Ainf1, h) if h.starts_with('h') => {
            let n = h[1..]
                .parse()
                .map_err(|_| Error::Catalog(format!("bad functor name {name:?}")))?;
            if n == 0 {
                return Err(Error::Catalog("H_n needs n >= 1".into()));
            }
            h_functor(cat, n)
        }
        (RingId::Dinf2, "g1") => g_functor(cat),
        (RingId::Ainf1, s) if s.starts_with('s') => {
            let n = s[1..]
                .parse()
                .map_err(|_| Error::Catalog(format!("bad functor name {name:?}")))?;
            Ok(simple_functor(&ainf1_ar_sequence(cat, n)?).with_name(format!("S{n}")))
        }
        _ => Err(Error::Catalog(format!("unknown functor {name:?} over {ring}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials_count() {
        assert_eq!(monomials_upto(2, 2).len(), 6);
        assert_eq!(monomials_upto(3, 1).len(), 4);
        assert_eq!(monomials_upto(1, 0), vec![Monomial::ONE]);
    }

    #[test]
    fn support_indices() {
        assert_eq!(support(&[0, 2, 0, 1]), vec![1, 3]);
    }
}
