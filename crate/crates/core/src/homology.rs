//! Hom, stable Hom and Ext¹ dimensions by truncation.
//!
//! A morphism `coker phi_M -> coker phi_N` is an `n_N x n_M` matrix `alpha`
//! over `R` with `psi_N * alpha * phi_M = 0`; it is stably zero when
//! `alpha = phi_N * gamma + delta * psi_M`. Ext¹ uses the same description
//! with the roles of `phi_M` and `psi_M` exchanged.
//!
//! At order `T` the cycle condition is imposed in `A(T + margin)` and the
//! solutions are projected to `A(T)`; without the margin, truncation admits
//! spurious cycles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{SparseEchelon, SparseRow};
use crate::matfac::{MatFac, PolyMatrix};
use crate::poly::Poly;
use crate::ring::{cached_ring, Hypersurface, RingRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Stable(usize),
    Growing,
    Undetermined,
}

impl Verdict {
    pub fn stable(self) -> Option<usize> {
        match self {
            Verdict::Stable(d) => Some(d),
            _ => None,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Stable(d) => write!(f, "Stable({d})"),
            Verdict::Growing => write!(f, "Growing"),
            Verdict::Undetermined => write!(f, "Undetermined"),
        }
    }
}

/// Dimension trace over increasing truncation orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimReport {
    pub pairs: Vec<(u32, usize)>,
    pub verdict: Verdict,
}

impl DimReport {
    pub fn stable(&self) -> Option<usize> {
        self.verdict.stable()
    }

    /// Stable value or an `Undetermined` error.
    pub fn value(&self) -> Result<usize> {
        self.stable().ok_or_else(|| {
            Error::Undetermined(format!("verdict {} after {:?}", self.verdict, self.pairs))
        })
    }

    pub fn last_order(&self) -> u32 {
        self.pairs.last().map_or(0, |p| p.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyConfig {
    /// Maximum number of truncation orders tried.
    pub budget: u32,
    /// Consecutive equal values needed for `Stable`.
    pub window: usize,
    /// Strict increases needed for `Growing`.
    pub growth_run: usize,
    /// Extra order used when imposing the cycle condition; `None` picks
    /// `2 * maxdeg + 2`.
    pub margin: Option<u32>,
    /// First order tried; `None` picks `2 * maxdeg + 2`.
    pub start: Option<u32>,
}

impl Default for HomologyConfig {
    fn default() -> Self {
        Self {
            budget: 10,
            window: 2,
            growth_run: 3,
            margin: None,
            start: None,
        }
    }
}

impl HomologyConfig {
    pub fn with_budget(mut self, budget: u32) -> Self {
        self.budget = budget;
        self
    }

    pub fn margin_for(&self, maxdeg: u32) -> u32 {
        self.margin.unwrap_or(2 * maxdeg + 2)
    }

    fn start_for(&self, maxdeg: u32) -> u32 {
        self.start.unwrap_or(2 * maxdeg + 2).max(1)
    }

    /// Run `eval` at successive orders until a verdict is reached.
    pub fn trace(&self, maxdeg: u32, mut eval: impl FnMut(u32) -> Result<usize>) -> Result<DimReport> {
        let start = self.start_for(maxdeg);
        let mut pairs = Vec::new();
        for t in start..start + self.budget {
            pairs.push((t, eval(t)?));
            if let Some(v) = judge(&pairs, self.window, self.growth_run) {
                return Ok(DimReport { pairs, verdict: v });
            }
        }
        Ok(DimReport {
            pairs,
            verdict: Verdict::Undetermined,
        })
    }
}

fn judge(pairs: &[(u32, usize)], window: usize, growth: usize) -> Option<Verdict> {
    let n = pairs.len();
    if n >= window.max(1) {
        let tail = &pairs[n - window.max(1)..];
        if tail.iter().all(|p| p.1 == tail[0].1) && window >= 2 {
            return Some(Verdict::Stable(tail[0].1));
        }
    }
    if n > growth && pairs[n - growth - 1..].windows(2).all(|w| w[0].1 < w[1].1) {
        return Some(Verdict::Growing);
    }
    None
}

/// Which quotient of matrices is being measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flavor {
    StableHom,
    Ext1,
}

/// Cycles `{alpha : cl * alpha * cr = 0}` modulo `hl * gamma + delta * hr`.
#[derive(Debug, Clone)]
struct Problem {
    hyper: Hypersurface,
    rows: usize,
    cols: usize,
    cl: PolyMatrix,
    cr: PolyMatrix,
    hl: PolyMatrix,
    hr: PolyMatrix,
    maxdeg: u32,
}

impl Problem {
    fn new(m: &MatFac, n: &MatFac, flavor: Flavor) -> Result<Self> {
        if m.hypersurface() != n.hypersurface() {
            return Err(Error::AmbientMismatch(format!(
                "{} vs {}",
                m.hypersurface().f(),
                n.hypersurface().f()
            )));
        }
        let (cr, hr) = match flavor {
            Flavor::StableHom => (m.phi().clone(), m.psi().clone()),
            Flavor::Ext1 => (m.psi().clone(), m.phi().clone()),
        };
        Ok(Self {
            hyper: m.hypersurface().clone(),
            rows: n.size(),
            cols: m.size(),
            cl: n.psi().clone(),
            cr,
            hl: n.phi().clone(),
            hr,
            maxdeg: m.max_degree().max(n.max_degree()),
        })
    }
}

/// Coordinates: entry `(a, b)` of an `rows x cols` matrix over `A(T)`,
/// basis index `s`, flattened as `(a * cols + b) * d + s`.
#[derive(Debug, Clone)]
pub struct MatrixCoords {
    pub ring: RingRef,
    pub rows: usize,
    pub cols: usize,
}

impl MatrixCoords {
    pub fn len(&self) -> usize {
        self.rows * self.cols * self.ring.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, a: usize, b: usize, s: usize) -> usize {
        (a * self.cols + b) * self.ring.dim() + s
    }

    pub fn to_matrix(&self, v: &[u32]) -> PolyMatrix {
        let d = self.ring.dim();
        let k = self.ring.field();
        let mut m = PolyMatrix::zero(k, self.rows, self.cols);
        for a in 0..self.rows {
            for b in 0..self.cols {
                let mut p = Poly::zero(k);
                for s in 0..d {
                    p.add_term(self.ring.monomial_basis()[s], v[self.index(a, b, s)]);
                }
                m.set(a, b, p);
            }
        }
        m
    }

    pub fn from_matrix(&self, m: &PolyMatrix) -> SparseRow {
        let mut out = Vec::new();
        for a in 0..self.rows {
            for b in 0..self.cols {
                let e = self.ring.from_poly(m.get(a, b));
                for (s, &c) in e.coeffs.iter().enumerate() {
                    if c != 0 {
                        out.push((self.index(a, b, s), c));
                    }
                }
            }
        }
        out
    }
}

/// The quotient at one order: projected cycles and homotopies in `A(T)`
/// coordinates.
#[derive(Debug, Clone)]
pub struct OrderSolution {
    pub coords: MatrixCoords,
    /// Dimension of the projected cycle space.
    pub cycles_dim: usize,
    /// Echelon form of the homotopy image.
    pub homotopies: SparseEchelon,
    system: SparseEchelon,
    nonkept: usize,
}

impl OrderSolution {
    pub fn dim(&self) -> usize {
        self.cycles_dim - self.homotopies.rank()
    }

    /// Spanning set of the projected cycles (kept coordinates).
    pub fn cycle_basis(&self) -> Vec<Vec<u32>> {
        self.system.tail_kernel_basis(self.nonkept)
    }

    /// A projected cycle with the given values on the free coordinates.
    pub fn cycle_with(&self, free_values: &[u32]) -> Vec<u32> {
        self.system.tail(self.nonkept).kernel_vector(|c| free_values[c])
    }

    /// Representatives of a basis of cycles modulo homotopy.
    pub fn quotient_basis(&self) -> Vec<Vec<u32>> {
        let mut h = self.homotopies.clone();
        let mut out = Vec::new();
        for v in self.cycle_basis() {
            let row = crate::linalg::to_sparse(&v);
            if h.insert(&row) {
                out.push(v);
            }
        }
        out
    }

    /// Rank added to the homotopies by the given vectors.
    pub fn rank_modulo_homotopy(&self, vectors: &[SparseRow]) -> usize {
        let mut h = self.homotopies.clone();
        vectors.iter().filter(|v| h.insert(v)).count()
    }
}

fn solve_at(p: &Problem, order: u32, margin: u32) -> Result<OrderSolution> {
    let low = cached_ring(&p.hyper, order)?;
    let high = cached_ring(&p.hyper, order + margin)?;
    let k = p.hyper.field();
    let (d, d2) = (low.dim(), high.dim());
    let (nr, nc) = (p.rows, p.cols);
    let entries = nr * nc;
    let nonkept = entries * (d2 - d);
    let kept = entries * d;
    let col_of = |a: usize, b: usize, s: usize| -> usize {
        let e = a * nc + b;
        if s < d {
            nonkept + e * d + s
        } else {
            e * (d2 - d) + (s - d)
        }
    };
    // equation rows: entry (i, j) of cl * alpha * cr, coordinate u in A(T2)
    let cl_cols = p.cl.cols();
    let cr_rows = p.cr.rows();
    let mut rows: Vec<Vec<(usize, u32)>> = vec![Vec::new(); p.cl.rows() * p.cr.cols() * d2];
    for i in 0..p.cl.rows() {
        for j in 0..p.cr.cols() {
            for a in 0..cl_cols {
                if p.cl.get(i, a).is_zero() {
                    continue;
                }
                for b in 0..cr_rows {
                    let prod = p.cl.get(i, a).mul_trunc(p.cr.get(b, j), order + margin);
                    if prod.is_zero() {
                        continue;
                    }
                    let c = high.from_poly(&prod);
                    for (t, &ct) in c.coeffs.iter().enumerate() {
                        if ct == 0 {
                            continue;
                        }
                        for s in 0..d2 {
                            for &(u, v) in high.basis_product(t, s) {
                                let r = (i * p.cr.cols() + j) * d2 + u as usize;
                                rows[r].push((col_of(a, b, s), k.mul(ct, v)));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut system = SparseEchelon::new(k, nonkept + kept);
    for mut r in rows {
        if r.is_empty() {
            continue;
        }
        r.sort_unstable_by_key(|e| e.0);
        let merged = merge_sorted(k.p(), r);
        if !merged.is_empty() {
            system.insert(&merged);
        }
    }
    let cycles_dim = kept - system.pivots_from(nonkept);

    let coords = MatrixCoords {
        ring: low.clone(),
        rows: nr,
        cols: nc,
    };
    let mut homotopies = SparseEchelon::new(k, kept);
    // hl * gamma with gamma (nr x nc) supported on one entry and monomial
    for a2 in 0..p.hl.cols() {
        for b in 0..nc {
            for s in 0..d {
                let mut row = Vec::new();
                for a in 0..nr {
                    let coef = p.hl.get(a, a2);
                    if coef.is_zero() {
                        continue;
                    }
                    push_product(&low, coef, s, |u, v| row.push((coords.index(a, b, u), v)));
                }
                insert_row(&mut homotopies, k.p(), row);
            }
        }
    }
    for a in 0..nr {
        for b2 in 0..p.hr.rows() {
            for s in 0..d {
                let mut row = Vec::new();
                for b in 0..nc {
                    let coef = p.hr.get(b2, b);
                    if coef.is_zero() {
                        continue;
                    }
                    push_product(&low, coef, s, |u, v| row.push((coords.index(a, b, u), v)));
                }
                insert_row(&mut homotopies, k.p(), row);
            }
        }
    }
    Ok(OrderSolution {
        coords,
        cycles_dim,
        homotopies,
        system,
        nonkept,
    })
}

pub(crate) fn push_product(ring: &RingRef, coef: &Poly, s: usize, mut emit: impl FnMut(usize, u32)) {
    let k = ring.field();
    let c = ring.from_poly(&coef.truncate(ring.order()));
    for (t, &ct) in c.coeffs.iter().enumerate() {
        if ct == 0 {
            continue;
        }
        for &(u, v) in ring.basis_product(t, s) {
            emit(u as usize, k.mul(ct, v));
        }
    }
}

pub(crate) fn insert_row(e: &mut SparseEchelon, p: u32, mut row: Vec<(usize, u32)>) {
    if row.is_empty() {
        return;
    }
    row.sort_unstable_by_key(|x| x.0);
    let merged = merge_sorted(p, row);
    if !merged.is_empty() {
        e.insert(&merged);
    }
}

pub(crate) fn merge_sorted(p: u32, row: Vec<(usize, u32)>) -> SparseRow {
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = ((last.1 as u64 + v as u64) % p as u64) as u32,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

/// Stable morphisms `M -> N` at a fixed order.
pub fn stable_hom_at(m: &MatFac, n: &MatFac, order: u32, cfg: &HomologyConfig) -> Result<OrderSolution> {
    let p = Problem::new(m, n, Flavor::StableHom)?;
    solve_at(&p, order, cfg.margin_for(p.maxdeg))
}

/// Morphism cycles `M -> N` at `order`, imposing the cycle condition in
/// `A(order + margin)`.
pub fn hom_cycles_at(m: &MatFac, n: &MatFac, order: u32, margin: u32) -> Result<OrderSolution> {
    let p = Problem::new(m, n, Flavor::StableHom)?;
    solve_at(&p, order, margin)
}

pub fn ext1_at(m: &MatFac, n: &MatFac, order: u32, cfg: &HomologyConfig) -> Result<OrderSolution> {
    let p = Problem::new(m, n, Flavor::Ext1)?;
    solve_at(&p, order, cfg.margin_for(p.maxdeg))
}

/// Starting order for a pair under `cfg`.
pub fn start_order(m: &MatFac, n: &MatFac, cfg: &HomologyConfig) -> u32 {
    cfg.start_for(m.max_degree().max(n.max_degree()))
}

pub fn stable_hom_dim(m: &MatFac, n: &MatFac, cfg: &HomologyConfig) -> Result<DimReport> {
    let p = Problem::new(m, n, Flavor::StableHom)?;
    let margin = cfg.margin_for(p.maxdeg);
    cfg.trace(p.maxdeg, |t| Ok(solve_at(&p, t, margin)?.dim()))
}

pub fn ext1_dim(m: &MatFac, n: &MatFac, cfg: &HomologyConfig) -> Result<DimReport> {
    let p = Problem::new(m, n, Flavor::Ext1)?;
    let margin = cfg.margin_for(p.maxdeg);
    cfg.trace(p.maxdeg, |t| Ok(solve_at(&p, t, margin)?.dim()))
}

/// `dim_k Hom_{A(T)}(coker phi_M, coker phi_N)`, computed over `A(T)` itself.
pub fn hom_module_dim(m: &MatFac, n: &MatFac, order: u32) -> Result<usize> {
    if m.hypersurface() != n.hypersurface() {
        return Err(Error::AmbientMismatch("hom between different rings".into()));
    }
    let ring = cached_ring(m.hypersurface(), order)?;
    let k = ring.field();
    let d = ring.dim();
    let (nr, nc) = (n.size(), m.size());
    let entries = nr * nc;
    // unknowns: beta first (eliminated), alpha last (kept)
    let beta_col = |a: usize, b: usize, s: usize| (a * nc + b) * d + s;
    let alpha_col = |a: usize, b: usize, s: usize| entries * d + (a * nc + b) * d + s;
    let mut rows: Vec<Vec<(usize, u32)>> = vec![Vec::new(); nr * nc * d];
    let row_of = |i: usize, j: usize, u: usize| (i * nc + j) * d + u;
    // alpha * phi_M
    for a in 0..nr {
        for b in 0..nc {
            for j in 0..nc {
                let coef = m.phi().get(b, j);
                if coef.is_zero() {
                    continue;
                }
                for s in 0..d {
                    push_product(&ring, coef, s, |u, v| rows[row_of(a, j, u)].push((alpha_col(a, b, s), v)));
                }
            }
        }
    }
    // - phi_N * beta
    for a in 0..nr {
        for b in 0..nc {
            for i in 0..nr {
                let coef = n.phi().get(i, a);
                if coef.is_zero() {
                    continue;
                }
                for s in 0..d {
                    push_product(&ring, coef, s, |u, v| {
                        rows[row_of(i, b, u)].push((beta_col(a, b, s), k.neg(v)))
                    });
                }
            }
        }
    }
    let mut system = SparseEchelon::new(k, 2 * entries * d);
    for r in rows {
        insert_row(&mut system, k.p(), r);
    }
    let projected = entries * d - system.pivots_from(entries * d);
    let coords = MatrixCoords {
        ring: ring.clone(),
        rows: nr,
        cols: nc,
    };
    let mut image = SparseEchelon::new(k, entries * d);
    for a2 in 0..nr {
        for b in 0..nc {
            for s in 0..d {
                let mut row = Vec::new();
                for a in 0..nr {
                    let coef = n.phi().get(a, a2);
                    if !coef.is_zero() {
                        push_product(&ring, coef, s, |u, v| row.push((coords.index(a, b, u), v)));
                    }
                }
                insert_row(&mut image, k.p(), row);
            }
        }
    }
    Ok(projected - image.rank())
}

/// Basis of stable morphisms at the order where the dimension stabilized.
#[derive(Debug, Clone)]
pub struct StableHomSpace {
    pub source: MatFac,
    pub target: MatFac,
    pub order: u32,
    /// Representatives `alpha`, entries of degree `< order`.
    pub basis: Vec<PolyMatrix>,
}

pub fn stable_hom_space(m: &MatFac, n: &MatFac, cfg: &HomologyConfig) -> Result<StableHomSpace> {
    let report = stable_hom_dim(m, n, cfg)?;
    report.value()?;
    let order = report.last_order();
    let sol = stable_hom_at(m, n, order, cfg)?;
    let basis = sol
        .quotient_basis()
        .iter()
        .map(|v| sol.coords.to_matrix(v))
        .collect();
    Ok(StableHomSpace {
        source: m.clone(),
        target: n.clone(),
        order,
        basis,
    })
}

/// Number of summands of `x` isomorphic to `u`, via decomposition.
pub fn mu_multiplicity(u: &MatFac, x: &MatFac, seed: u64) -> Result<usize> {
    let blocks = crate::decomp::mf_decompose_blocks(x, seed)?;
    let mut count = 0;
    for b in &blocks {
        if crate::decomp::mf_iso(u, b)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Both sides of `dim Hom(U,X) + dim Hom(U,Z) - dim Hom(U,Y) = mu(U,X) + mu(U,X[-1])`
/// for a sequence `0 -> Z -> Y -> X -> 0`.
pub fn ar_defect(
    u: &MatFac,
    z: &MatFac,
    y: &MatFac,
    x: &MatFac,
    cfg: &HomologyConfig,
    seed: u64,
) -> Result<(i64, i64)> {
    let h = |t: &MatFac| -> Result<i64> { Ok(stable_hom_dim(u, t, cfg)?.value()? as i64) };
    let lhs = h(x)? + h(z)? - h(y)?;
    let rhs = mu_multiplicity(u, x, seed)? as i64 + mu_multiplicity(u, &x.shift(), seed)? as i64;
    Ok((lhs, rhs))
}
