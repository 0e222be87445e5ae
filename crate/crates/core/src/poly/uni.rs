//! Dense univariate polynomials.

use std::fmt;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{ExtField, Field, FiniteField, PrimeField, Ring};
use super::PolyError;

#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<R: Ring> {
    ring: R,
    /// Low degree first; no trailing zeros.
    coeffs: Vec<R::El>,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(ring: R, coeffs: Vec<R::El>) -> Self {
        let mut p = Self { ring, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(ring: R, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&v| ring.from_i64(v)).collect();
        Self::new(ring, c)
    }

    pub fn zero(ring: R) -> Self {
        Self { ring, coeffs: vec![] }
    }

    pub fn one(ring: R) -> Self {
        let one = ring.one();
        Self::new(ring, vec![one])
    }

    /// The polynomial `t`.
    pub fn x(ring: R) -> Self {
        let (z, o) = (ring.zero(), ring.one());
        Self::new(ring, vec![z, o])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.ring.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::El] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R::El {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R::El> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| self.ring.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Self::new(self.ring.clone(), c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| self.ring.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        Self::new(self.ring.clone(), c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ring.clone());
        }
        let r = &self.ring;
        let mut c = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = r.add(&c[i + j], &r.mul(a, b));
            }
        }
        Self::new(r.clone(), c)
    }

    pub fn scale(&self, s: &R::El) -> Self {
        let c = self.coeffs.iter().map(|a| self.ring.mul(a, s)).collect();
        Self::new(self.ring.clone(), c)
    }

    pub fn eval(&self, x: &R::El) -> R::El {
        let r = &self.ring;
        self.coeffs
            .iter()
            .rev()
            .fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        let r = &self.ring;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| r.mul(a, &r.from_i64(i as i64)))
            .collect();
        Self::new(r.clone(), c)
    }

    pub fn map_coeffs<S: Ring>(&self, target: S, f: impl Fn(&R::El) -> S::El) -> UniPoly<S> {
        let c = self.coeffs.iter().map(f).collect();
        UniPoly::new(target, c)
    }
}

impl<F: Field> UniPoly<F> {
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        let r = &self.ring;
        let dl = d.leading().ok_or(PolyError::ZeroPolynomial)?;
        let inv = r.inv(dl)?;
        let mut rem = self.coeffs.clone();
        let dn = d.coeffs.len();
        if rem.len() < dn {
            return Ok((Self::zero(r.clone()), self.clone()));
        }
        let mut q = vec![r.zero(); rem.len() - dn + 1];
        for shift in (0..q.len()).rev() {
            let c = r.mul(&rem[shift + dn - 1], &inv);
            if !r.is_zero(&c) {
                for (j, b) in d.coeffs.iter().enumerate() {
                    rem[shift + j] = r.sub(&rem[shift + j], &r.mul(&c, b));
                }
            }
            q[shift] = c;
        }
        rem.truncate(dn - 1);
        Ok((Self::new(r.clone(), q), Self::new(r.clone(), rem)))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).expect("nonzero divisor").1
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&self.ring.inv(l).expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let base = self.rem(m);
        let mut acc = Self::one(self.ring.clone()).rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(_) => self.distinct_root_count() == Some(self.degree().unwrap()),
        }
    }

    /// Number of distinct roots in an algebraic closure, i.e. the degree of
    /// the radical. In characteristic zero this is `deg(f / gcd(f, f'))`; in
    /// characteristic p the factors whose multiplicity is divisible by p are
    /// handled through p-th roots. `None` for the zero polynomial.
    pub fn distinct_root_count(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        Some(self.radical_degree())
    }

    fn radical_degree(&self) -> usize {
        let deg = self.degree().unwrap_or(0);
        if deg == 0 {
            return 0;
        }
        let d = self.derivative();
        if d.is_zero() {
            // self = g(t^p)
            return self.pth_root_poly().radical_degree();
        }
        let g = self.gcd(&d);
        let w = self.div_rem(&g).unwrap().0;
        let mut h = g;
        loop {
            let c = h.gcd(&w);
            if c.degree() == Some(0) {
                break;
            }
            h = h.div_rem(&c).unwrap().0;
        }
        // h only has roots of multiplicity divisible by p, none shared with w
        w.degree().unwrap() + h.radical_degree()
    }

    fn pth_root_poly(&self) -> Self {
        let p = self.ring.characteristic() as usize;
        assert!(p > 0, "zero derivative of a nonconstant polynomial in characteristic zero");
        let c = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|a| self.ring.pth_root(a).expect("perfect field"))
            .collect();
        Self::new(self.ring.clone(), c)
    }
}

/// Number of distinct roots of `f` in an algebraic closure.
pub fn squarefree_root_count<F: Field>(f: &UniPoly<F>) -> Result<usize, PolyError> {
    f.distinct_root_count().ok_or(PolyError::ZeroPolynomial)
}

impl UniPoly<PrimeField> {
    /// Factors a squarefree polynomial into monic irreducibles, sorted by
    /// degree and then coefficients. Deterministic.
    pub fn factor_squarefree(&self) -> Result<Vec<UniPoly<PrimeField>>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if !self.is_squarefree() && self.degree() != Some(0) {
            return Err(PolyError::NotSquarefree);
        }
        let f = self.ring;
        if f.modulus() == 2 {
            return Err(PolyError::UnsupportedCharacteristic(2));
        }
        let mut out = Vec::new();
        for (d, part) in self.monic().distinct_degree() {
            equal_degree_split(&part, d, &mut out);
        }
        out.sort_by(|a, b| (a.degree(), &a.coeffs).cmp(&(b.degree(), &b.coeffs)));
        Ok(out)
    }

    /// Distinct-degree factorization: pairs (d, product of all degree-d
    /// irreducible factors).
    fn distinct_degree(&self) -> Vec<(usize, UniPoly<PrimeField>)> {
        let f = self.ring;
        let p = BigUint::from(f.modulus());
        let x = UniPoly::x(f);
        let mut rest = self.clone();
        let mut h = x.rem(&rest);
        let mut out = Vec::new();
        let mut d = 0;
        while rest.degree().unwrap_or(0) > 0 {
            d += 1;
            if 2 * d > rest.degree().unwrap() {
                let deg = rest.degree().unwrap();
                out.push((deg, rest.monic()));
                break;
            }
            h = h.pow_mod(&p, &rest);
            let g = rest.gcd(&h.sub(&x));
            if g.degree().unwrap_or(0) > 0 {
                out.push((d, g.clone()));
                rest = rest.div_rem(&g).unwrap().0;
                h = h.rem(&rest);
            }
        }
        out
    }

    /// The field F_p[t]/(self) for an irreducible `self`.
    pub fn extension_field(&self) -> Result<ExtField, PolyError> {
        let m = self.monic();
        Ok(ExtField::new(self.ring, m.coeffs)?)
    }
}

/// Cantor–Zassenhaus splitting of a product of degree-`d` irreducibles.
fn equal_degree_split(f: &UniPoly<PrimeField>, d: usize, out: &mut Vec<UniPoly<PrimeField>>) {
    let n = f.degree().unwrap();
    if n == d {
        out.push(f.monic());
        return;
    }
    let field = f.ring;
    let q = BigUint::from(field.modulus()).pow(d as u32);
    let e = (q - 1u32) / 2u32;
    // seeded from the polynomial so factor order never depends on call history
    let seed = f.coeffs.iter().fold(0xC0FFEEu64, |h, c| h.wrapping_mul(1_000_003).wrapping_add(*c));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let a: Vec<u64> = (0..n).map(|_| field.random(&mut rng)).collect();
        let a = UniPoly::new(field, a);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = a.pow_mod(&e, f).sub(&UniPoly::one(field));
        let g = f.gcd(&b);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = f.div_rem(&g).unwrap().0;
            equal_degree_split(&g, d, out);
            equal_degree_split(&h, d, out);
            return;
        }
    }
}

/// Roots in F_p of a polynomial (with the polynomial assumed squarefree).
pub fn roots_in_base(f: &UniPoly<PrimeField>) -> Result<Vec<u64>, PolyError> {
    Ok(f.factor_squarefree()?
        .into_iter()
        .filter(|g| g.degree() == Some(1))
        .map(|g| g.ring.neg(&g.coeffs[0]))
        .collect())
}

impl<R: Ring> fmt::Display for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.ring.is_zero(c) {
                continue;
            }
            let cs = self.ring.format(c);
            parts.push(match i {
                0 => cs,
                1 => format!("{cs}*t"),
                _ => format!("{cs}*t^{i}"),
            });
        }
        f.write_str(&parts.join(" + "))
    }
}
