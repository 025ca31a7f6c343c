//! Truncated local hypersurface rings `A(T) = k[x_1..x_v] / ((f) + m^T)`.
//!
//! Normal forms use the tangent-cone leading monomial of `f`: the graded-lex
//! largest term among the terms of lowest degree. A monomial of degree `< T`
//! is a basis element iff that leading monomial does not divide it. Rewriting
//! a multiple of the leading monomial only produces terms that are either of
//! the same degree and smaller, or of higher degree, so reduction terminates
//! once everything of degree `>= T` is discarded.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::{Monomial, Poly, SparseTerm, MAX_VARS};

/// The untruncated ambient data `(S, f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypersurface {
    vars: usize,
    f: Poly,
}

impl Hypersurface {
    pub fn new(vars: usize, f: Poly) -> Result<Self> {
        if vars == 0 || vars > MAX_VARS {
            return Err(Error::InvalidRing(format!(
                "variable count {vars} outside 1..={MAX_VARS}"
            )));
        }
        if f.constant_term() != 0 {
            return Err(Error::InvalidRing(
                "defining polynomial has a nonzero constant term".into(),
            ));
        }
        if f.num_vars_used() > vars {
            return Err(Error::InvalidRing(format!(
                "defining polynomial {f} uses more than {vars} variables"
            )));
        }
        Ok(Self { vars, f })
    }

    pub fn parse(vars: usize, f: &str, field: PrimeField) -> Result<Self> {
        Self::new(vars, Poly::parse(field, f)?)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn field(&self) -> PrimeField {
        self.f.field()
    }

    /// `(S[z], f + z^2)` with `z` the next free variable.
    pub fn sharp(&self) -> Result<Hypersurface> {
        let z = Poly::var(self.field(), self.vars);
        Hypersurface::new(self.vars + 1, self.f.add(&z.mul(&z)))
    }

    /// Index of the last variable when `f` has the form `g + z^2` with `g`
    /// free of that variable.
    pub fn sharp_variable(&self) -> Option<usize> {
        let z = self.vars - 1;
        let zsq = {
            let mut m = Monomial::ONE;
            m.0[z] = 2;
            m
        };
        if self.f.coeff(&zsq) != 1 {
            return None;
        }
        let others_free = self
            .f
            .terms()
            .all(|(m, _)| *m == zsq || m.0[z] == 0);
        others_free.then_some(z)
    }

    pub fn descriptor(&self, order: u32) -> RingDescriptor {
        RingDescriptor {
            vars: self.vars,
            f: self.f.to_sparse(self.vars),
            p: self.field().p(),
            order,
        }
    }
}

/// JSON form of a ring: `{vars, f, p, T}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub vars: usize,
    pub f: Vec<SparseTerm>,
    pub p: u32,
    #[serde(rename = "T")]
    pub order: u32,
}

impl RingDescriptor {
    pub fn build(&self) -> Result<Arc<TruncRing>> {
        let field = PrimeField::new(self.p)?;
        let f = Poly::from_sparse(field, &self.f)?;
        make_ring(self.vars, f, self.order)
    }
}

/// `A(T)` with a fixed monomial basis and a precomputed product table.
#[derive(Debug)]
pub struct TruncRing {
    hyper: Hypersurface,
    order: u32,
    lead: Option<Monomial>,
    /// `f` scaled so that the leading coefficient is 1.
    reducer: Poly,
    lead_inv: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `table[i * dim + j]` is the normal form of `basis[i] * basis[j]`.
    table: Vec<Vec<(u32, u32)>>,
}

pub type RingRef = Arc<TruncRing>;

/// Element of `A(T)`: coefficients against the ring's monomial basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    pub coeffs: Vec<u32>,
}

pub fn make_ring(vars: usize, f: Poly, order: u32) -> Result<RingRef> {
    let hyper = Hypersurface::new(vars, f)?;
    TruncRing::new(hyper, order)
}

type CacheKey = (usize, String, u32, u32);

/// Shared ring for `(hyper, order)`; product tables are built once per process.
pub fn cached_ring(hyper: &Hypersurface, order: u32) -> Result<RingRef> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, RingRef>>> = OnceLock::new();
    let key = (hyper.vars, hyper.f.to_string(), hyper.field().p(), order);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().expect("ring cache poisoned").get(&key) {
        return Ok(r.clone());
    }
    let ring = TruncRing::new(hyper.clone(), order)?;
    cache
        .lock()
        .expect("ring cache poisoned")
        .entry(key)
        .or_insert(ring.clone());
    Ok(ring)
}

impl TruncRing {
    pub fn new(hyper: Hypersurface, order: u32) -> Result<RingRef> {
        if order == 0 {
            return Err(Error::InvalidRing("truncation order must be positive".into()));
        }
        let k = hyper.field();
        let init = hyper.f.initial_form();
        let lead = init.grlex_leading().map(|(m, _)| m);
        let lead_inv = init.grlex_leading().map_or(1, |(_, c)| k.inv(c));
        let reducer = hyper.f.scale(lead_inv);
        let mut basis: Vec<Monomial> = monomials_below(hyper.vars, order)
            .into_iter()
            .filter(|m| lead.is_none_or(|l| !l.divides(m)))
            .collect();
        basis.sort();
        let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut ring = TruncRing {
            hyper,
            order,
            lead,
            reducer,
            lead_inv,
            basis,
            index,
            table: Vec::new(),
        };
        let dim = ring.basis.len();
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let m = ring.basis[i].mul(&ring.basis[j]);
                let reduced = ring.reduce_poly(&Poly::term(k, 1, m));
                let sparse: Vec<(u32, u32)> = reduced
                    .terms()
                    .map(|(m, c)| (ring.index[m] as u32, *c))
                    .collect();
                table[j * dim + i] = sparse.clone();
                table[i * dim + j] = sparse;
            }
        }
        ring.table = table;
        Ok(Arc::new(ring))
    }

    pub fn hypersurface(&self) -> &Hypersurface {
        &self.hyper
    }

    pub fn field(&self) -> PrimeField {
        self.hyper.field()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn monomial_basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Number of basis monomials of degree `< bound`; these form a prefix.
    pub fn prefix_dim(&self, bound: u32) -> usize {
        self.basis.partition_point(|m| m.degree() < bound)
    }

    pub fn descriptor(&self) -> RingDescriptor {
        self.hyper.descriptor(self.order)
    }

    /// Reduce a polynomial to normal form (as a polynomial in basis monomials).
    pub fn reduce_poly(&self, p: &Poly) -> Poly {
        self.reduce_with_quotient(p).0
    }

    /// `(r, q)` with `p - q * f = r` modulo `m^T` and `r` in normal form.
    pub fn reduce_with_quotient(&self, p: &Poly) -> (Poly, Poly) {
        let k = self.field();
        let mut quot = Poly::zero(k);
        let mut work: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, c) in p.terms() {
            if m.degree() < self.order {
                work.insert(*m, *c);
            }
        }
        if let Some(lead) = self.lead {
            let mut cursor: Option<Monomial> = None;
            loop {
                let next = match cursor {
                    None => work.iter().find(|(m, _)| lead.divides(m)).map(|(m, c)| (*m, *c)),
                    Some(c) => work
                        .range((std::ops::Bound::Excluded(c), std::ops::Bound::Unbounded))
                        .find(|(m, _)| lead.divides(m))
                        .map(|(m, c)| (*m, *c)),
                };
                let Some((m, c)) = next else { break };
                let shift = lead.quotient_of(&m);
                quot.add_term(shift, k.mul(c, self.lead_inv));
                for (rm, rc) in self.reducer.terms() {
                    let t = rm.mul(&shift);
                    if t.degree() >= self.order {
                        continue;
                    }
                    let e = work.entry(t).or_insert(0);
                    *e = k.sub(*e, k.mul(c, *rc));
                    if *e == 0 {
                        work.remove(&t);
                    }
                }
                debug_assert!(!work.contains_key(&m));
                cursor = Some(m);
            }
        }
        let mut out = Poly::zero(k);
        for (m, c) in work {
            out.add_term(m, c);
        }
        (out, quot)
    }

    pub fn zero(&self) -> RingElem {
        RingElem {
            coeffs: vec![0; self.dim()],
        }
    }

    pub fn one(&self) -> RingElem {
        self.from_poly(&Poly::one(self.field()))
    }

    pub fn from_poly(&self, p: &Poly) -> RingElem {
        let r = self.reduce_poly(p);
        let mut e = self.zero();
        for (m, c) in r.terms() {
            e.coeffs[self.index[m]] = *c;
        }
        e
    }

    pub fn to_poly(&self, e: &RingElem) -> Poly {
        let mut p = Poly::zero(self.field());
        for (i, c) in e.coeffs.iter().enumerate() {
            p.add_term(self.basis[i], *c);
        }
        p
    }

    /// Re-reduce an element given in basis coordinates. Identity on valid
    /// input; exposed so idempotence can be checked.
    pub fn normalize(&self, e: &RingElem) -> RingElem {
        self.from_poly(&self.to_poly(e))
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let k = self.field();
        RingElem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| k.add(*x, *y)).collect(),
        }
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let k = self.field();
        RingElem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| k.sub(*x, *y)).collect(),
        }
    }

    pub fn scale(&self, a: &RingElem, c: u32) -> RingElem {
        let k = self.field();
        RingElem {
            coeffs: a.coeffs.iter().map(|x| k.mul(*x, c)).collect(),
        }
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let k = self.field();
        let dim = self.dim();
        let mut acc = vec![0u64; dim];
        let p = k.p() as u64;
        for (i, &ca) in a.coeffs.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.coeffs.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                let cab = ca as u64 * cb as u64 % p;
                for &(t, c) in &self.table[i * dim + j] {
                    let slot = &mut acc[t as usize];
                    *slot = (*slot + cab * c as u64) % p;
                }
            }
        }
        RingElem {
            coeffs: acc.into_iter().map(|v| v as u32).collect(),
        }
    }

    /// Normal form of `basis[i] * basis[j]`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(u32, u32)] {
        &self.table[i * self.dim() + j]
    }

    /// Image in a lower-order ring over the same hypersurface.
    pub fn project(&self, e: &RingElem, lower: &TruncRing) -> RingElem {
        debug_assert!(lower.order <= self.order);
        RingElem {
            coeffs: e.coeffs[..lower.dim()].to_vec(),
        }
    }

    /// Residue in `k`.
    pub fn constant_term(&self, e: &RingElem) -> u32 {
        e.coeffs[0]
    }
}

impl RingElem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

fn monomials_below(vars: usize, order: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = [0u8; MAX_VARS];
    fn rec(i: usize, vars: usize, left: u32, cur: &mut [u8; MAX_VARS], out: &mut Vec<Monomial>) {
        if i == vars {
            out.push(Monomial(*cur));
            return;
        }
        for e in 0..=left {
            cur[i] = e as u8;
            rec(i + 1, vars, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, vars, order - 1, &mut cur, &mut out);
    out
}
