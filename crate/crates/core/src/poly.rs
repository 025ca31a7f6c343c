//! Sparse multivariate polynomials over a prime field, in at most four
//! variables named `x, y, z, w`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;

pub const MAX_VARS: usize = 4;

const DENSE_LIMIT: usize = 1 << 20;
const OVERFLOW_GUARD: u64 = 1 << 62;
pub const VAR_NAMES: [char; MAX_VARS] = ['x', 'y', 'z', 'w'];

/// Exponent vector. Ordered by total degree, then reverse lexicographically,
/// so that within one degree `x^2 < xy < y^2`. This is the order in which
/// normal forms are processed and in which basis monomials are listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial(pub [u8; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = [0u8; MAX_VARS];
        for (i, v) in e.iter_mut().enumerate() {
            *v = self.0[i] + other.0[i];
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut e = [0u8; MAX_VARS];
        for (i, v) in e.iter_mut().enumerate() {
            *v = other.0[i] - self.0[i];
        }
        Monomial(e)
    }

    /// Graded lex comparison (`x > y > z > w`), the global order used for
    /// exact division.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// Number of variables actually used (highest nonzero index + 1).
    pub fn support_vars(&self) -> usize {
        self.0.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", VAR_NAMES[i])?;
            } else {
                write!(f, "{}^{}", VAR_NAMES[i], e)?;
            }
        }
        Ok(())
    }
}

/// Polynomial with coefficients in `F_p`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: PrimeField,
    terms: BTreeMap<Monomial, u32>,
}

impl Poly {
    pub fn zero(field: PrimeField) -> Self {
        Self {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, c: i64) -> Self {
        Self::term(field, c, Monomial::ONE)
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    pub fn term(field: PrimeField, c: i64, m: Monomial) -> Self {
        let mut p = Self::zero(field);
        p.add_term(m, field.from_i64(c));
        p
    }

    pub fn var(field: PrimeField, i: usize) -> Self {
        Self::term(field, 1, Monomial::var(i))
    }

    pub fn from_terms(field: PrimeField, terms: impl IntoIterator<Item = (i64, Monomial)>) -> Self {
        let mut p = Self::zero(field);
        for (c, m) in terms {
            p.add_term(m, field.from_i64(c));
        }
        p
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &u32)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coeff(&Monomial::ONE)
    }

    pub fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let k = self.field;
        let entry = self.terms.entry(m).or_insert(0);
        *entry = k.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    /// Largest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// m-adic order: smallest total degree of a term, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn num_vars_used(&self) -> usize {
        self.terms.keys().map(|m| m.support_vars()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, *c);
        }
        r
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, self.field.neg(*c));
        }
        r
    }

    pub fn neg(&self) -> Poly {
        self.scale(self.field.neg(1))
    }

    pub fn scale(&self, c: u32) -> Poly {
        let mut r = Poly::zero(self.field);
        if c == 0 {
            return r;
        }
        for (m, v) in &self.terms {
            r.terms.insert(*m, self.field.mul(*v, c));
        }
        r
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut r = Poly::zero(self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.mul(mb), self.field.mul(*ca, *cb));
            }
        }
        r
    }

    /// Product with all terms of degree `>= bound` discarded.
    pub fn mul_trunc(&self, other: &Poly, bound: u32) -> Poly {
        Poly::sum_of_products_trunc(self.field, &[(self, other)], bound)
    }

    /// `sum a_i * b_i` with all terms of degree `>= bound` dropped.
    pub fn sum_of_products_trunc(field: PrimeField, pairs: &[(&Poly, &Poly)], bound: u32) -> Poly {
        let vars = pairs
            .iter()
            .flat_map(|(a, b)| a.terms.keys().chain(b.terms.keys()))
            .map(|m| m.support_vars())
            .max()
            .unwrap_or(0);
        let cells = (bound as usize).checked_pow(vars as u32).unwrap_or(usize::MAX);
        if cells > DENSE_LIMIT {
            let mut r = Poly::zero(field);
            for (a, b) in pairs {
                for (ma, ca) in &a.terms {
                    let da = ma.degree();
                    if da >= bound {
                        break;
                    }
                    for (mb, cb) in &b.terms {
                        if da + mb.degree() >= bound {
                            break;
                        }
                        r.add_term(ma.mul(mb), field.mul(*ca, *cb));
                    }
                }
            }
            return r;
        }
        let base = bound as usize;
        let index = |m: &Monomial| m.0[..vars].iter().fold(0usize, |acc, &e| acc * base + e as usize);
        let mut buf = vec![0u64; cells.max(1)];
        let mut touched = Vec::new();
        for (a, b) in pairs {
            let bt: Vec<(usize, u32, u64)> = b
                .terms
                .iter()
                .map(|(m, c)| (index(m), m.degree(), *c as u64))
                .collect();
            for (ma, ca) in &a.terms {
                let da = ma.degree();
                if da >= bound {
                    break;
                }
                let (ia, ca) = (index(ma), *ca as u64);
                for &(ib, db, cb) in &bt {
                    if da + db >= bound {
                        break;
                    }
                    // exponents stay below `bound`, so indices add without carries
                    let cell = &mut buf[ia + ib];
                    if *cell == 0 {
                        touched.push(ia + ib);
                    }
                    *cell += ca * cb;
                    if *cell >= OVERFLOW_GUARD {
                        *cell = *cell % field.p() as u64 + field.p() as u64;
                    }
                }
            }
        }
        let mut terms = Vec::with_capacity(touched.len());
        for i in touched {
            let v = (buf[i] % field.p() as u64) as u32;
            if v == 0 {
                continue;
            }
            let mut e = [0u8; MAX_VARS];
            let mut rest = i;
            for slot in (0..vars).rev() {
                e[slot] = (rest % base) as u8;
                rest /= base;
            }
            terms.push((Monomial(e), v));
        }
        Poly {
            field,
            terms: terms.into_iter().collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one(self.field);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Drop all terms of degree `>= bound`.
    pub fn truncate(&self, bound: u32) -> Poly {
        let mut r = Poly::zero(self.field);
        for (m, c) in &self.terms {
            if m.degree() < bound {
                r.terms.insert(*m, *c);
            }
        }
        r
    }

    /// Substitute `var -> -var`.
    pub fn negate_var(&self, var: usize) -> Poly {
        let mut r = Poly::zero(self.field);
        for (m, c) in &self.terms {
            let c = if m.0[var] % 2 == 1 { self.field.neg(*c) } else { *c };
            r.terms.insert(*m, c);
        }
        r
    }

    /// Terms of lowest total degree.
    pub fn initial_form(&self) -> Poly {
        let mut r = Poly::zero(self.field);
        if let Some(d) = self.order() {
            for (m, c) in &self.terms {
                if m.degree() == d {
                    r.terms.insert(*m, *c);
                }
            }
        }
        r
    }

    /// Leading term under graded lex.
    pub fn grlex_leading(&self) -> Option<(Monomial, u32)> {
        self.terms
            .iter()
            .max_by(|a, b| a.0.grlex_cmp(b.0))
            .map(|(m, c)| (*m, *c))
    }

    /// Exact quotient `self / divisor` in the polynomial ring, if it exists.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.grlex_leading()?;
        let k = self.field;
        let lc_inv = k.inv(lc);
        let mut rem = self.clone();
        let mut q = Poly::zero(k);
        while let Some((m, c)) = rem.grlex_leading() {
            if !lm.divides(&m) {
                return None;
            }
            let mut t = Poly::zero(k);
            t.add_term(lm.quotient_of(&m), k.mul(c, lc_inv));
            q = q.add(&t);
            rem = rem.sub(&t.mul(divisor));
        }
        Some(q)
    }

    /// Parse expressions like `x^2*y - 3*z^2 + 1`.
    pub fn parse(field: PrimeField, s: &str) -> Result<Poly> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Poly::zero(field);
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                chunks.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && i == 0 {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        chunks.push((neg, cur));
        for (neg, chunk) in chunks {
            if chunk.is_empty() {
                return Err(Error::Parse(format!("dangling sign in '{s}'")));
            }
            let mut coeff: i64 = 1;
            let mut mono = Monomial::ONE;
            for factor in chunk.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in '{s}'")));
                }
                if let Ok(v) = factor.parse::<i64>() {
                    coeff *= v;
                    continue;
                }
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (
                        b,
                        e.parse::<u8>()
                            .map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?,
                    ),
                    None => (factor, 1),
                };
                let mut chars = base.chars();
                let v = chars
                    .next()
                    .and_then(|c| VAR_NAMES.iter().position(|&n| n == c))
                    .ok_or_else(|| Error::Parse(format!("unknown variable in '{factor}'")))?;
                if chars.next().is_some() {
                    return Err(Error::Parse(format!("unknown variable in '{factor}'")));
                }
                mono.0[v] += exp;
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(mono, field.from_i64(coeff));
        }
        Ok(out)
    }

    /// Sparse serialization: `[[coeff, [e_x, e_y, ...]], ...]` using
    /// symmetric coefficient representatives.
    pub fn to_sparse(&self, vars: usize) -> Vec<SparseTerm> {
        self.terms
            .iter()
            .map(|(m, c)| SparseTerm(self.field.to_i64(*c), m.0[..vars].to_vec()))
            .collect()
    }

    pub fn from_sparse(field: PrimeField, terms: &[SparseTerm]) -> Result<Poly> {
        let mut p = Poly::zero(field);
        for SparseTerm(c, exps) in terms {
            if exps.len() > MAX_VARS {
                return Err(Error::Parse(format!(
                    "monomial with {} exponents exceeds {MAX_VARS} variables",
                    exps.len()
                )));
            }
            let mut m = Monomial::ONE;
            for (i, e) in exps.iter().enumerate() {
                m.0[i] = *e;
            }
            p.add_term(m, field.from_i64(*c));
        }
        Ok(p)
    }
}

/// One term of a sparse polynomial: coefficient and exponent list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseTerm(pub i64, pub Vec<u8>);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let v = self.field.to_i64(*c);
            let (sign, mag) = if v < 0 { ("-", -v) } else { ("+", v) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn parse_and_print() {
        let p = Poly::parse(k(), "x^2*y + z^2").unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.to_string(), "z^2 + x^2*y");
        let q = Poly::parse(k(), "-y^3 + 2*x - 1").unwrap();
        assert_eq!(q.to_string(), "-1 + 2*x - y^3");
        assert!(Poly::parse(k(), "x^2*q").is_err());
        assert!(Poly::parse(k(), "").is_err());
    }

    #[test]
    fn monomial_order_within_degree() {
        let x2 = Monomial([2, 0, 0, 0]);
        let xy = Monomial([1, 1, 0, 0]);
        let y2 = Monomial([0, 2, 0, 0]);
        let x = Monomial::var(0);
        assert!(x < x2);
        assert!(x2 < xy && xy < y2);
    }

    #[test]
    fn exact_division() {
        let a = Poly::parse(k(), "x^2*y - y^3").unwrap();
        let b = Poly::parse(k(), "x - y").unwrap();
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, Poly::parse(k(), "x*y + y^2").unwrap());
        let c = Poly::parse(k(), "x + y^3").unwrap();
        assert!(c.exact_div(&Poly::parse(k(), "x").unwrap()).is_none());
    }

    #[test]
    fn negate_variable() {
        let p = Poly::parse(k(), "z^2 + x*z + y").unwrap();
        assert_eq!(p.negate_var(2), Poly::parse(k(), "z^2 - x*z + y").unwrap());
    }

    #[test]
    fn sparse_roundtrip() {
        let p = Poly::parse(k(), "x^2*y - 5*z^2").unwrap();
        let s = p.to_sparse(3);
        assert_eq!(Poly::from_sparse(k(), &s).unwrap(), p);
    }
}
