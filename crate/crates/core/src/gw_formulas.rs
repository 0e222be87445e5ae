//! Conic counts on `X_n ⊂ P^{n+1}` of degree `n` from quantum cohomology.
//!
//! `L̃¹` and `L̃²` are the degree one and two structure constants of the
//! small quantum ring of a degree `n` hypersurface in `P^{n+1}`, written as
//! generating polynomials in `w`. The conic count through a general point is
//! `L̃²_{n-2} / 4`, to be compared with `(2n)!/2^{n+1} - (n!)^2/2`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::poly::{Ring, Rationals, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub n: u32,
    pub level: u32,
    /// Coefficient of `w^m` at index `m`.
    pub coefficients: Vec<BigRational>,
}

impl StructureConstants {
    fn from_poly(n: u32, level: u32, p: &UniPoly<Rationals>, len: usize) -> Self {
        StructureConstants {
            n,
            level,
            coefficients: (0..len).map(|m| p.coeff(m)).collect(),
        }
    }

    pub fn poly(&self) -> UniPoly<Rationals> {
        UniPoly::new(Rationals, self.coefficients.clone())
    }

    pub fn get(&self, m: usize) -> BigRational {
        self.coefficients.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficients as integers, if they all are.
    pub fn as_integers(&self) -> Option<Vec<BigInt>> {
        self.coefficients
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn all_nonnegative_integers(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn is_palindromic(&self) -> bool {
        let c = &self.coefficients;
        (0..c.len()).all(|i| c[i] == c[c.len() - 1 - i])
    }

    /// Generating polynomial evaluated at `w`.
    pub fn eval(&self, w: i64) -> BigRational {
        self.poly().eval(&Rationals.from_i64(w))
    }
}

fn lin(a: i64, b: i64) -> UniPoly<Rationals> {
    // a w + b
    UniPoly::from_i64s(Rationals, &[b, a])
}

/// `Σ_m L̃¹_m w^m = n ∏_{j=1}^{n-1} (j w + (n - j))`.
pub fn structure_constants_d1(n: u32) -> StructureConstants {
    assert!(n >= 2, "n must be at least 2");
    let ni = n as i64;
    let mut p = UniPoly::from_i64s(Rationals, &[ni]);
    for j in 1..ni {
        p = p.mul(&lin(j, ni - j));
    }
    StructureConstants::from_poly(n, 1, &p, n as usize)
}

/// `Σ_m L̃²_m w^m = Σ_{j2=0}^{n-2} Σ_{j1=0}^{j2} Σ_{j0=0}^{j1}
/// L̃¹_{j1} L̃¹_{j2+1} w^{j1-j0} ((1+w)/2)^{j2-j1}`.
pub fn structure_constants_d2(n: u32) -> StructureConstants {
    let l1 = structure_constants_d1(n);
    let q = Rationals;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let h = UniPoly::new(q, vec![half.clone(), half]);
    let nn = n as usize;
    let h_pows: Vec<UniPoly<Rationals>> = std::iter::successors(Some(UniPoly::one(q)), |p| Some(p.mul(&h)))
        .take(nn)
        .collect();
    let w_pows: Vec<UniPoly<Rationals>> = std::iter::successors(Some(UniPoly::one(q)), |p| Some(p.mul(&UniPoly::x(q))))
        .take(nn)
        .collect();
    let mut acc = UniPoly::zero(q);
    for j2 in 0..=nn - 2 {
        for j1 in 0..=j2 {
            let c = q.mul(&l1.get(j1), &l1.get(j2 + 1));
            let mut inner = UniPoly::zero(q);
            for j0 in 0..=j1 {
                inner = inner.add(&w_pows[j1 - j0]);
            }
            acc = acc.add(&inner.mul(&h_pows[j2 - j1]).scale(&c));
        }
    }
    StructureConstants::from_poly(n, 2, &acc, nn - 1)
}

fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `(2n)!/2^{n+1} - (n!)^2/2`.
pub fn conic_count_closed_form(n: u32) -> BigInt {
    let a = BigInt::from(factorial(2 * n)) >> (n + 1);
    let f = BigInt::from(factorial(n));
    a - ((&f * &f) >> 1)
}

/// `L̃²_{n-2} / 4`.
pub fn conic_count_via_structure_constants(n: u32) -> BigRational {
    assert!(n >= 3, "n must be at least 3");
    structure_constants_d2(n).get(n as usize - 2) / BigRational::from_integer(BigInt::from(4))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaRow {
    pub n: u32,
    pub l1: Vec<String>,
    pub l2: Vec<String>,
    pub l1_at_2: String,
    pub l2_at_2: String,
    pub l1_palindromic: bool,
    pub nonnegative_integers: bool,
    pub closed_form: String,
    pub via_structure_constants: String,
    pub matches: bool,
}

fn show(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        q.to_string()
    }
}

pub fn formula_row(n: u32) -> FormulaRow {
    let l1 = structure_constants_d1(n);
    let l2 = structure_constants_d2(n);
    let closed = conic_count_closed_form(n);
    let via = conic_count_via_structure_constants(n);
    FormulaRow {
        n,
        l1: l1.coefficients.iter().map(show).collect(),
        l2: l2.coefficients.iter().map(show).collect(),
        l1_at_2: show(&l1.eval(2)),
        l2_at_2: show(&l2.eval(2)),
        l1_palindromic: l1.is_palindromic(),
        nonnegative_integers: l1.all_nonnegative_integers() && l2.all_nonnegative_integers(),
        matches: via == BigRational::from_integer(closed.clone()),
        closed_form: closed.to_string(),
        via_structure_constants: show(&via),
    }
}

pub fn formula_table(ns: impl IntoIterator<Item = u32>) -> Vec<FormulaRow> {
    let ns: Vec<u32> = ns.into_iter().collect();
    ns.par_iter().map(|&n| formula_row(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn ints(sc: &StructureConstants) -> Vec<i64> {
        sc.as_integers().unwrap().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn anchors() {
        assert_eq!(ints(&structure_constants_d1(2)), vec![2, 2]);
        assert_eq!(ints(&structure_constants_d1(3)), vec![6, 15, 6]);
        assert_eq!(ints(&structure_constants_d2(2)), vec![4]);
        assert_eq!(ints(&structure_constants_d2(3)), vec![198, 108]);
        assert_eq!(conic_count_closed_form(2), BigInt::from(1));
        assert_eq!(conic_count_closed_form(3), BigInt::from(27));
        assert_eq!(conic_count_closed_form(4), BigInt::from(972));
    }

    #[test]
    fn palindromic_up_to_twenty() {
        for n in 2..=20 {
            assert!(structure_constants_d1(n).is_palindromic(), "n = {n}");
        }
    }

    #[test]
    fn lengths() {
        for n in 2..=8 {
            assert_eq!(structure_constants_d1(n).coefficients.len(), n as usize);
            assert_eq!(structure_constants_d2(n).coefficients.len(), n as usize - 1);
        }
    }

    #[test]
    fn d1_at_one_is_n_to_the_n() {
        // at w = 1 every factor is n
        for n in 2..=10u32 {
            let s: BigRational = structure_constants_d1(n).eval(1);
            let expect = BigInt::from(n).pow(n);
            assert_eq!(s, BigRational::from_integer(expect));
        }
    }

    #[test]
    fn identity_three_to_ten() {
        for n in 3..=10 {
            let row = formula_row(n);
            assert!(row.matches, "n = {n}: {row:?}");
            assert!(row.nonnegative_integers);
        }
    }
}
