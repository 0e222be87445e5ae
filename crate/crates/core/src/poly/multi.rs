//! Sparse multivariate polynomials in canonical form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::field::{Field, Ring};
use super::PolyError;

/// An exponent vector. The derived ordering (lexicographic on exponents) is
/// the internal storage order of [`MultiPoly`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Every exponent vector of total degree `d` in `nvars` variables, in
    /// lexicographic order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[pos] = e;
                rec(pos + 1, left - e, cur, out);
            }
        }
        if nvars == 0 {
            return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(0, d, &mut vec![0; nvars], &mut out);
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<R: Ring> {
    ring: R,
    nvars: usize,
    terms: BTreeMap<Monomial, R::El>,
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero(ring: R, nvars: usize) -> Self {
        Self {
            ring,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: R, nvars: usize, c: R::El) -> Self {
        let mut p = Self::zero(ring, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(ring: R, nvars: usize) -> Self {
        let one = ring.one();
        Self::constant(ring, nvars, one)
    }

    pub fn var(ring: R, nvars: usize, i: usize) -> Self {
        let one = ring.one();
        let mut p = Self::zero(ring, nvars);
        p.add_term(Monomial::var(nvars, i), one);
        p
    }

    pub fn from_terms(ring: R, nvars: usize, terms: impl IntoIterator<Item = (Monomial, R::El)>) -> Self {
        let mut p = Self::zero(ring, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial has wrong variable count");
            p.add_term(m, c);
        }
        p
    }

    /// Builds a polynomial from small integer coefficients, mostly for tests.
    pub fn from_int_terms(ring: R, nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        let t: Vec<_> = terms
            .iter()
            .map(|(c, e)| (Monomial::new(e.to_vec()), ring.from_i64(*c)))
            .collect();
        Self::from_terms(ring, nvars, t)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R::El)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> R::El {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: R::El) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.ring.add(o.get(), &c);
                if self.ring.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The constant coefficient when the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<R::El> {
        self.is_constant().then(|| self.coeff(&Monomial::one(self.nvars)))
    }

    /// Lexicographically largest term.
    pub fn lex_leading(&self) -> Option<(&Monomial, &R::El)> {
        self.terms.iter().next_back()
    }

    fn check_same(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars || self.ring != other.ring {
            return Err(PolyError::RingMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.ring.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        let mut acc: BTreeMap<Monomial, R::El> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = self.ring.mul(c1, c2);
                match acc.get_mut(&m) {
                    Some(e) => *e = self.ring.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !self.ring.is_zero(c));
        Ok(Self {
            ring: self.ring.clone(),
            nvars: self.nvars,
            terms: acc,
        })
    }

    pub fn scale(&self, c: &R::El) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.nvars);
        if self.ring.is_zero(c) {
            return out;
        }
        for (m, a) in &self.terms {
            out.add_term(m.clone(), self.ring.mul(a, c));
        }
        out
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &R::El) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.mul(mono), self.ring.mul(a, c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring.clone(), self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[R::El]) -> R::El {
        assert_eq!(point.len(), self.nvars);
        let r = &self.ring;
        let mut acc = r.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = r.mul(&t, &r.pow(x, e as u64));
                }
            }
            acc = r.add(&acc, &t);
        }
        acc
    }

    /// Substitutes polynomial `subs[i]` (in some target ring of `k` variables)
    /// for variable `i`.
    pub fn compose(&self, subs: &[MultiPoly<R>]) -> MultiPoly<R> {
        assert_eq!(subs.len(), self.nvars);
        let k = subs.first().map(|s| s.nvars).unwrap_or(0);
        let mut out = MultiPoly::zero(self.ring.clone(), k);
        // cache powers per variable
        let mut powers: Vec<Vec<MultiPoly<R>>> = subs
            .iter()
            .map(|s| vec![MultiPoly::one(s.ring.clone(), k), s.clone()])
            .collect();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(self.ring.clone(), k, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &subs[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[var] -= 1;
            out.add_term(dm, self.ring.mul(c, &self.ring.from_i64(e as i64)));
        }
        out
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            ring: self.ring.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Maps coefficients into another ring.
    pub fn map_coeffs<S: Ring>(&self, target: S, f: impl Fn(&R::El) -> S::El) -> MultiPoly<S> {
        let mut out = MultiPoly::zero(target, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Re-indexes variables into a ring with `nvars` variables; `map[i]` is
    /// the new index of old variable `i`.
    pub fn rename_vars(&self, nvars: usize, map: &[usize]) -> Self {
        let mut out = Self::zero(self.ring.clone(), nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Sets variable `var` to one and drops it from the ring.
    pub fn dehomogenize(&self, var: usize) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.nvars - 1);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.remove(var);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            let cs = self.ring.format(c);
            if factors.is_empty() {
                parts.push(cs);
            } else if self.ring.is_one(c) {
                parts.push(factors.join("*"));
            } else {
                parts.push(format!("{}*{}", cs, factors.join("*")));
            }
        }
        parts.join(" + ")
    }
}

impl<F: Field> MultiPoly<F> {
    /// Division with remainder by a single divisor, reducing lexicographically
    /// leading terms. The remainder is zero iff `divisor` divides `self`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        self.check_same(divisor)?;
        let (lm, lc) = divisor.lex_leading().ok_or(PolyError::ZeroPolynomial)?;
        let lm = lm.clone();
        let lc_inv = self.ring.inv(lc)?;
        let mut q = Self::zero(self.ring.clone(), self.nvars);
        let mut rem = Self::zero(self.ring.clone(), self.nvars);
        let mut work = self.clone();
        while let Some((m, c)) = work.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = self.ring.mul(&c, &lc_inv);
                work = &work - &divisor.mul_monomial(&qm, &qc);
                q.add_term(qm, qc);
            } else {
                work.terms.remove(&m);
                rem.add_term(m, c);
            }
        }
        Ok((q, rem))
    }

    /// Exact quotient; fails if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible)
        }
    }

    /// Scales so the lexicographically leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.lex_leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.ring.inv(c).expect("nonzero leading coefficient")),
        }
    }
}

impl<R: Ring> fmt::Display for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.to_string_with(&names))
    }
}

// Operator forms panic on ring mismatch; use the `checked_*` methods when the
// operands come from different sources.
impl<R: Ring> Add for &MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn add(self, rhs: Self) -> MultiPoly<R> {
        self.checked_add(rhs).expect("ring mismatch in add")
    }
}

impl<R: Ring> Sub for &MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn sub(self, rhs: Self) -> MultiPoly<R> {
        self.checked_sub(rhs).expect("ring mismatch in sub")
    }
}

impl<R: Ring> Mul for &MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn mul(self, rhs: Self) -> MultiPoly<R> {
        self.checked_mul(rhs).expect("ring mismatch in mul")
    }
}

impl<R: Ring> Neg for &MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn neg(self) -> MultiPoly<R> {
        self.scale(&self.ring.neg(&self.ring.one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::{PrimeField, Rationals};

    fn xy(ring: Rationals) -> (MultiPoly<Rationals>, MultiPoly<Rationals>) {
        (MultiPoly::var(ring, 2, 0), MultiPoly::var(ring, 2, 1))
    }

    #[test]
    fn difference_of_squares() {
        let (x, y) = xy(Rationals);
        let p = &(&x + &y) * &(&x - &y);
        let expected = &(&x * &x) - &(&y * &y);
        assert_eq!(p, expected);
        assert_eq!(p.total_degree(), Some(2));
    }

    #[test]
    fn zero_absorbs() {
        let (x, y) = xy(Rationals);
        let p = &x + &y;
        let z = MultiPoly::zero(Rationals, 2);
        assert!((&p * &z).is_zero());
        assert_eq!((&p * &z).total_degree(), None);
    }

    #[test]
    fn mod_five_product() {
        let f5 = PrimeField::new(5).unwrap();
        let x = MultiPoly::var(f5, 1, 0);
        let p = &x.scale(&2) * &x.scale(&3);
        assert_eq!(p, x.pow(2));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = MultiPoly::var(Rationals, 2, 0);
        let b = MultiPoly::var(Rationals, 3, 0);
        assert_eq!(a.checked_mul(&b), Err(PolyError::RingMismatch));
        let f5 = PrimeField::new(5).unwrap();
        let f7 = PrimeField::new(7).unwrap();
        let c = MultiPoly::var(f5, 1, 0);
        let d = MultiPoly::var(f7, 1, 0);
        assert_eq!(c.checked_add(&d), Err(PolyError::RingMismatch));
    }

    #[test]
    fn exact_division() {
        let (x, y) = xy(Rationals);
        let a = &(&x * &y) + &(&x * &x);
        let b = &x + &y;
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, x.clone());
        let (_, r) = (&a + &y).div_rem(&b).unwrap();
        assert!(!r.is_zero());
    }

    #[test]
    fn compose_and_derivative() {
        let (x, y) = xy(Rationals);
        let p = &(&x * &x) + &y;
        // x -> x + y, y -> x
        let c = p.compose(&[&x + &y, x.clone()]);
        let expected = &(&(&x + &y) * &(&x + &y)) + &x;
        assert_eq!(c, expected);
        assert_eq!(p.derivative(0), x.scale(&Rationals.from_i64(2)));
    }

    #[test]
    fn monomials_of_degree() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(5, 3).len(), 35);
    }
}
