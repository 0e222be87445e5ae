//! Coefficient rings.
//!
//! A ring is a context object (`Integers`, `Rationals`, `PrimeField`,
//! `ExtField`) that knows how to operate on its element type. Elements never
//! carry their own modulus; every polynomial stores the context it lives in.

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::ArithError;

pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type El: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn from_i64(&self, v: i64) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;

    fn is_one(&self, a: &Self::El) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::El, mut e: u64) -> Self::El {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Canonical text form of an element, used for display and serialization.
    fn format(&self, a: &Self::El) -> String;

    /// Short human-readable name such as `QQ` or `F_10007`.
    fn name(&self) -> String;
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::El) -> Result<Self::El, ArithError>;

    fn div(&self, a: &Self::El, b: &Self::El) -> Result<Self::El, ArithError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn characteristic(&self) -> u64;

    /// The unique p-th root in characteristic p. `None` in characteristic zero.
    fn pth_root(&self, a: &Self::El) -> Option<Self::El>;
}

pub trait FiniteField: Field {
    fn order(&self) -> BigUint;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::El;
}

/// The integers, used for characters with integer multiplicities.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type El = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        "ZZ".into()
    }
}

impl Integers {
    /// Exact quotient, or `None` if `b` does not divide `a`.
    pub fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type El = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn name(&self) -> String {
        "QQ".into()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Result<BigRational, ArithError> {
        if a.is_zero() {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn pth_root(&self, _a: &BigRational) -> Option<BigRational> {
        None
    }
}

impl Rationals {
    pub fn from_ratio(&self, num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn is_integer(&self, a: &BigRational) -> bool {
        a.denom().is_one()
    }

    pub fn is_nonnegative(&self, a: &BigRational) -> bool {
        !a.is_negative()
    }
}

/// The prime field F_p with elements stored as canonical residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p >= (1 << 62) || !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn el(&self, v: u64) -> u64 {
        v % self.p
    }
}

impl Ring for PrimeField {
    type El = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Result<u64, ArithError> {
        if *a == 0 {
            return Err(ArithError::DivisionByZero);
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(t0.rem_euclid(self.p as i128) as u64)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn pth_root(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
}

impl FiniteField for PrimeField {
    fn order(&self) -> BigUint {
        BigUint::from(self.p)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A finite extension F_p[t]/(h) for a monic irreducible `h`.
///
/// Elements are coefficient vectors of length `deg h` (low degree first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    modulus: Arc<Vec<u64>>,
}

impl ExtField {
    /// `modulus` is the coefficient list of a monic polynomial, low degree
    /// first. Irreducibility is the caller's responsibility.
    pub fn new(base: PrimeField, modulus: Vec<u64>) -> Result<Self, ArithError> {
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(ArithError::BadModulus);
        }
        Ok(Self {
            base,
            modulus: Arc::new(modulus),
        })
    }

    /// F_p viewed as a degree-one extension (modulus `t`).
    pub fn trivial(base: PrimeField) -> Self {
        Self {
            base,
            modulus: Arc::new(vec![0, 1]),
        }
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn embed(&self, c: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = self.base.el(c);
        v
    }

    /// The class of `t`, a root of the modulus.
    pub fn generator(&self) -> Vec<u64> {
        let m = self.degree();
        if m == 1 {
            return vec![self.base.neg(&self.modulus[0])];
        }
        let mut v = vec![0; m];
        v[1] = 1;
        v
    }

    /// Returns the base-field value if the element lies in F_p.
    pub fn as_base(&self, a: &[u64]) -> Option<u64> {
        a[1..].iter().all(|&c| c == 0).then_some(a[0])
    }

    pub fn frobenius(&self, a: &Vec<u64>) -> Vec<u64> {
        self.pow(a, self.base.modulus())
    }

    fn reduce(&self, mut prod: Vec<u64>) -> Vec<u64> {
        let f = &self.base;
        let m = self.degree();
        while prod.len() > m {
            let c = prod.pop().unwrap();
            if c != 0 {
                let shift = prod.len() - m;
                for (i, &h) in self.modulus[..m].iter().enumerate() {
                    prod[shift + i] = f.sub(&prod[shift + i], &f.mul(&c, &h));
                }
            }
        }
        prod.resize(m, 0);
        prod
    }
}

impl Ring for ExtField {
    type El = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        self.embed(1)
    }
    fn from_i64(&self, v: i64) -> Vec<u64> {
        self.embed(self.base.from_i64(v))
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let m = self.degree();
        if m == 1 {
            return vec![self.base.mul(&a[0], &b[0])];
        }
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = self.base.add(&prod[i + j], &self.base.mul(x, y));
            }
        }
        self.reduce(prod)
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn format(&self, a: &Vec<u64>) -> String {
        if let Some(c) = self.as_base(a) {
            return c.to_string();
        }
        let parts: Vec<String> = a.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
    fn name(&self) -> String {
        format!("F_{}^{}", self.base.modulus(), self.degree())
    }
}

impl Field for ExtField {
    fn inv(&self, a: &Vec<u64>) -> Result<Vec<u64>, ArithError> {
        if self.is_zero(a) {
            return Err(ArithError::DivisionByZero);
        }
        let f = &self.base;
        // extended Euclid in F_p[t]: track s with s*a = r (mod modulus)
        let (mut r0, mut r1) = (self.modulus.to_vec(), trimmed(a.clone()));
        let (mut s0, mut s1) = (vec![0u64], vec![1u64]);
        while !(r1.len() == 1 && r1[0] == 0) {
            let (q, r) = raw_divrem(f, &r0, &r1);
            let s2 = raw_sub(f, &s0, &raw_mul(f, &q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return Err(ArithError::BadModulus);
        }
        let c = f.inv(&r0[0])?;
        let mut out: Vec<u64> = s0.iter().map(|x| f.mul(x, &c)).collect();
        out.resize(out.len().max(self.degree()), 0);
        Ok(self.reduce(out))
    }

    fn characteristic(&self) -> u64 {
        self.base.modulus()
    }

    fn pth_root(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        // Frobenius has order m, so its inverse is Frobenius^(m-1).
        let mut x = a.clone();
        for _ in 1..self.degree() {
            x = self.frobenius(&x);
        }
        Some(x)
    }
}

impl FiniteField for ExtField {
    fn order(&self) -> BigUint {
        BigUint::from(self.base.modulus()).pow(self.degree() as u32)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        (0..self.degree()).map(|_| self.base.random(rng)).collect()
    }
}

fn trimmed(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
    v
}

fn raw_mul(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trimmed(out)
}

fn raw_sub(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&0), b.get(i).unwrap_or(&0)))
        .collect();
    trimmed(out)
}

/// Division with remainder of dense coefficient lists (`b` nonzero).
fn raw_divrem(f: &PrimeField, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let b = trimmed(b.to_vec());
    let mut rem = trimmed(a.to_vec());
    if rem.len() < b.len() {
        return (vec![0], rem);
    }
    let lead_inv = f.inv(b.last().unwrap()).expect("nonzero divisor");
    let mut q = vec![0u64; rem.len() - b.len() + 1];
    for shift in (0..q.len()).rev() {
        let c = f.mul(&rem[shift + b.len() - 1], &lead_inv);
        q[shift] = c;
        if c != 0 {
            for (j, y) in b.iter().enumerate() {
                rem[shift + j] = f.sub(&rem[shift + j], &f.mul(&c, y));
            }
        }
    }
    rem.truncate(b.len() - 1);
    (trimmed(q), trimmed(rem))
}

/// Exponentiation by an arbitrary-size exponent.
pub fn pow_big<R: Ring>(ring: &R, a: &R::El, e: &BigUint) -> R::El {
    let mut acc = ring.one();
    for i in (0..e.bits()).rev() {
        acc = ring.mul(&acc, &acc);
        if e.bit(i) {
            acc = ring.mul(&acc, a);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_detection() {
        assert!(is_prime(10007));
        assert!(is_prime(31013));
        assert!(is_prime(65537));
        assert!(!is_prime(10001));
        assert!(!is_prime(1));
        assert!(PrimeField::new(10008).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.mul(&2, &3), 1);
        assert_eq!(f.inv(&2).unwrap(), 3);
        assert_eq!(f.inv(&0), Err(ArithError::DivisionByZero));
        let f = PrimeField::new(10007).unwrap();
        for a in 1..200u64 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
    }

    #[test]
    fn extension_field_arithmetic() {
        // F_7[t]/(t^2 + 1); -1 is a non-residue mod 7
        let base = PrimeField::new(7).unwrap();
        let k = ExtField::new(base, vec![1, 0, 1]).unwrap();
        let t = k.generator();
        assert_eq!(k.mul(&t, &t), k.from_i64(-1));
        for a0 in 0..7 {
            for a1 in 0..7 {
                let a = vec![a0, a1];
                if k.is_zero(&a) {
                    continue;
                }
                assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
            }
        }
        // Frobenius is an automorphism of order 2
        let a = vec![3, 5];
        let fa = k.frobenius(&a);
        assert_ne!(fa, a);
        assert_eq!(k.frobenius(&fa), a);
        assert_eq!(k.frobenius(&k.pth_root(&a).unwrap()), a);
    }

    #[test]
    fn rationals_divide_exactly() {
        let q = Rationals;
        let half = q.from_ratio(1, 2);
        assert_eq!(q.mul(&half, &q.from_i64(2)), q.one());
        assert!(q.inv(&q.zero()).is_err());
        assert_eq!(q.format(&half), "1/2");
    }
}
