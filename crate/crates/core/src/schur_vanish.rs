//! Rank-3 characters, Schur decompositions and the Bott case exclusion on
//! `G(2, n + r)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Integers, Monomial, MultiPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchurError {
    #[error("negative degree {0}")]
    NegativeDegree(i64),
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("parameter out of range: {0}")]
    Domain(String),
}

/// A symmetric polynomial in three variables with nonnegative integer
/// coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Character3(MultiPoly<Integers>);

fn permuted(p: &MultiPoly<Integers>, perm: [usize; 3]) -> MultiPoly<Integers> {
    MultiPoly::from_terms(
        Integers,
        3,
        p.terms().map(|(m, c)| {
            let e = m.exponents();
            (Monomial::new(vec![e[perm[0]], e[perm[1]], e[perm[2]]]), c.clone())
        }),
    )
}

impl Character3 {
    pub fn new(poly: MultiPoly<Integers>) -> Result<Self, SchurError> {
        if poly.nvars() != 3 {
            return Err(SchurError::NotACharacter(format!("{} variables", poly.nvars())));
        }
        if poly.terms().any(|(_, c)| c.is_negative()) {
            return Err(SchurError::NotACharacter("negative coefficient".into()));
        }
        if permuted(&poly, [1, 0, 2]) != poly || permuted(&poly, [1, 2, 0]) != poly {
            return Err(SchurError::NotACharacter("not symmetric".into()));
        }
        Ok(Character3(poly))
    }

    pub fn trivial() -> Self {
        Character3(MultiPoly::one(Integers, 3))
    }

    pub fn poly(&self) -> &MultiPoly<Integers> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Value at `(1, 1, 1)`.
    pub fn rank(&self) -> BigInt {
        self.0.terms().map(|(_, c)| c.clone()).sum()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Character3(&self.0 + &other.0)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Character3(&self.0 * &other.0)
    }
}

/// `p_t(c)`: substitutes `x_i -> x_i^t`.
fn adams(c: &MultiPoly<Integers>, t: u32) -> MultiPoly<Integers> {
    MultiPoly::from_terms(
        Integers,
        3,
        c.terms()
            .map(|(m, v)| (Monomial::new(m.exponents().iter().map(|e| e * t).collect()), v.clone())),
    )
}

fn divide_coeffs(p: &MultiPoly<Integers>, k: u32) -> Result<MultiPoly<Integers>, SchurError> {
    let d = BigInt::from(k);
    let mut out = MultiPoly::zero(Integers, 3);
    for (m, c) in p.terms() {
        let q = Integers
            .div_exact(c, &d)
            .ok_or_else(|| SchurError::NotACharacter(format!("coefficient {c} not divisible by {k}")))?;
        out.add_term(m.clone(), q);
    }
    Ok(out)
}

/// Complete homogeneous symmetric polynomial `h_d`, the character of `S^d E`.
pub fn symmetric_power_char(d: i64) -> Result<Character3, SchurError> {
    if d < 0 {
        return Err(SchurError::NegativeDegree(d));
    }
    let terms = Monomial::all_of_degree(3, d as u32).into_iter().map(|m| (m, BigInt::one()));
    Ok(Character3(MultiPoly::from_terms(Integers, 3, terms)))
}

/// Characters of `∧^0 c, …, ∧^kmax c`.
pub fn wedge_chars(c: &Character3, kmax: u32) -> Result<Vec<Character3>, SchurError> {
    let p: Vec<MultiPoly<Integers>> = (0..=kmax).map(|t| adams(&c.0, t)).collect();
    let mut out: Vec<MultiPoly<Integers>> = vec![MultiPoly::one(Integers, 3)];
    for k in 1..=kmax {
        let mut acc = MultiPoly::zero(Integers, 3);
        for t in 1..=k {
            let term = &out[(k - t) as usize] * &p[t as usize];
            acc = if t % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        out.push(divide_coeffs(&acc, k)?);
    }
    out.into_iter().map(Character3::new).collect()
}

/// Characters of `S^0 c, …, S^mmax c`.
pub fn sym_chars(c: &Character3, mmax: u32) -> Result<Vec<Character3>, SchurError> {
    let p: Vec<MultiPoly<Integers>> = (0..=mmax).map(|t| adams(&c.0, t)).collect();
    let mut out: Vec<MultiPoly<Integers>> = vec![MultiPoly::one(Integers, 3)];
    for m in 1..=mmax {
        let mut acc = MultiPoly::zero(Integers, 3);
        for t in 1..=m {
            acc = &acc + &(&out[(m - t) as usize] * &p[t as usize]);
        }
        out.push(divide_coeffs(&acc, m)?);
    }
    out.into_iter().map(Character3::new).collect()
}

pub fn wedge_char(c: &Character3, k: u32) -> Result<Character3, SchurError> {
    Ok(wedge_chars(c, k)?.pop().expect("nonempty"))
}

pub fn sym_char(c: &Character3, m: u32) -> Result<Character3, SchurError> {
    Ok(sym_chars(c, m)?.pop().expect("nonempty"))
}

/// An irreducible factor `S_b E` with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SchurTriple {
    pub b: [u32; 3],
    pub multiplicity: u64,
}

impl fmt::Display for SchurTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})x{}", self.b[0], self.b[1], self.b[2], self.multiplicity)
    }
}

/// Schur polynomial `s_b(x_1, x_2, x_3)` as a sum over Gelfand–Tsetlin patterns.
pub fn schur_polynomial(b: [u32; 3]) -> MultiPoly<Integers> {
    assert!(b[0] >= b[1] && b[1] >= b[2], "not a partition: {b:?}");
    let total = b[0] + b[1] + b[2];
    let mut out = MultiPoly::zero(Integers, 3);
    for c1 in b[1]..=b[0] {
        for c2 in b[2]..=b[1] {
            for e in c2..=c1 {
                out.add_term(Monomial::new(vec![e, c1 + c2 - e, total - c1 - c2]), BigInt::one());
            }
        }
    }
    out
}

/// `dim S_b C^3 = ∏_{i<j} (b_i - b_j + j - i)/(j - i)`.
pub fn weyl_dim(b: [u32; 3]) -> u64 {
    let b = b.map(u64::from);
    (b[0] - b[1] + 1) * (b[1] - b[2] + 1) * (b[0] - b[2] + 2) / 2
}

/// Splits a symmetric polynomial into Schur polynomials by peeling off the
/// lex-largest monomial. Triples are returned in decreasing lex order.
pub fn schur_decompose(c: &MultiPoly<Integers>) -> Result<Vec<SchurTriple>, SchurError> {
    let mut rest = c.clone();
    let mut out = Vec::new();
    while let Some((m, v)) = rest.lex_leading() {
        let e = m.exponents();
        let b = [e[0], e[1], e[2]];
        if !(b[0] >= b[1] && b[1] >= b[2]) {
            return Err(SchurError::NotACharacter(format!("leading monomial {b:?} is not dominant")));
        }
        if !v.is_positive() {
            return Err(SchurError::NotACharacter(format!("multiplicity {v} of {b:?}")));
        }
        let mult = v.to_u64().ok_or_else(|| SchurError::NotACharacter("multiplicity overflow".into()))?;
        rest = &rest - &schur_polynomial(b).scale(v);
        out.push(SchurTriple { b, multiplicity: mult });
    }
    Ok(out)
}

/// `b_2 + b_3 ≥ k - r` and `b_3 ≥ k - (n+1)/2 - 2r`.
pub fn check_star_star(b: [u32; 3], k: u32, r: u32, n: u32) -> bool {
    let (b2, b3, k, r, n) = (b[1] as i64, b[2] as i64, k as i64, r as i64, n as i64);
    b2 + b3 >= k - r && b3 >= k - (n + 1) / 2 - 2 * r
}

/// Which of the five possibly nonvanishing cases of Bott's theorem on
/// `G(2, n + r)` applies to `H^k(S_b E)`.
pub fn bott_nonvanishing_case(b: [u32; 3], k: u32, n: u32, r: u32) -> Option<u8> {
    let g = n + r - 2;
    let [b1, b2, b3] = b;
    if k == g && b1 >= n + r - 1 {
        match (b2, b3) {
            (0, 0) => return Some(1),
            (1, 0) => return Some(2),
            (1, 1) => return Some(3),
            _ => {}
        }
    }
    if k == 2 * g && b2 >= n + r && b3 <= 2 {
        return Some(4);
    }
    if k == 3 * g && b3 >= n + r + 1 {
        return Some(5);
    }
    None
}

/// The inequalities that rule out each Bott case given `(∗∗)` and `k ≤ rk Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseExclusions {
    /// `k - r = n - 2 > 2` at `k = n + r - 2`.
    pub cases_1_to_3: bool,
    /// `k - (n+1)/2 - 2r = 3(n-3)/2 > 2` at `k = 2(n + r - 2)`.
    pub case_4: bool,
    /// `3(n + r - 2) > n + 1 + 3r`.
    pub case_5: bool,
}

impl CaseExclusions {
    pub fn new(n: u32, r: u32) -> Self {
        let (n, r) = (n as i64, r as i64);
        let g = n + r - 2;
        CaseExclusions {
            cases_1_to_3: g - r > 2,
            case_4: 2 * g - (n + 1) / 2 - 2 * r > 2,
            case_5: 3 * g > n + 1 + 3 * r,
        }
    }

    pub fn all(&self) -> bool {
        self.cases_1_to_3 && self.case_4 && self.case_5
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Vanishes,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorFlags {
    pub b: [u32; 3],
    pub multiplicity: u64,
    pub dim: u64,
    pub satisfies_star_star: bool,
    pub hits_bott_case: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingVerdict {
    pub n: u32,
    pub degrees: Vec<u32>,
    pub j: u32,
    pub k: u32,
    pub rank: u64,
    /// `Σ mult · dim S_b` equals the rank.
    pub rank_check: bool,
    pub factors: Vec<FactorFlags>,
    pub all_star_star: bool,
    pub min_b2_plus_b3: Option<u32>,
    pub min_b3: Option<u32>,
    pub verdict: Verdict,
}

/// `rk Q = Σ_i (rk S^{d_i} E - rk S^{d_i - 2} E)`.
pub fn quotient_rank(degrees: &[u32]) -> u32 {
    degrees
        .iter()
        .map(|&d| (d + 1) * (d + 2) / 2 - d * (d - 1) / 2)
        .sum()
}

fn check_domain(n: u32, degrees: &[u32]) -> Result<u32, SchurError> {
    let r = degrees.len() as u32;
    if r == 0 || degrees.iter().any(|&d| d < 2) {
        return Err(SchurError::Domain(format!("degrees {degrees:?} must be nonempty and at least 2")));
    }
    if n < 5 || n % 2 == 0 {
        return Err(SchurError::Domain(format!("n = {n} must be odd and at least 5")));
    }
    let sum: u32 = degrees.iter().sum();
    if 2 * sum != n + 1 + 2 * r {
        return Err(SchurError::Domain(format!("sum of degrees {sum} differs from (n+1)/2 + r")));
    }
    Ok(r)
}

/// Characters of the two building blocks `⊕ S^{d_i} E` and `(⊕ S^{d_i-2} E) ⊗ S^2 E`.
fn blocks(degrees: &[u32]) -> Result<(Character3, Character3), SchurError> {
    let mut w = Character3(MultiPoly::zero(Integers, 3));
    let mut u = Character3(MultiPoly::zero(Integers, 3));
    for &d in degrees {
        w = w.direct_sum(&symmetric_power_char(d as i64)?);
        u = u.direct_sum(&symmetric_power_char(d as i64 - 2)?);
    }
    Ok((w, u.tensor(&symmetric_power_char(2)?)))
}

fn verdict_from_parts(
    n: u32,
    degrees: &[u32],
    j: u32,
    k: u32,
    wedge: &Character3,
    sym: &Character3,
) -> Result<VanishingVerdict, SchurError> {
    let r = degrees.len() as u32;
    let ch = wedge.tensor(sym);
    let rank = ch.rank().to_u64().ok_or_else(|| SchurError::Domain("rank overflow".into()))?;
    let triples = schur_decompose(ch.poly())?;
    let factors: Vec<FactorFlags> = triples
        .iter()
        .map(|t| FactorFlags {
            b: t.b,
            multiplicity: t.multiplicity,
            dim: weyl_dim(t.b),
            satisfies_star_star: check_star_star(t.b, k, r, n),
            hits_bott_case: bott_nonvanishing_case(t.b, k, n, r),
        })
        .collect();
    let dim_sum: u64 = factors.iter().map(|f| f.multiplicity * f.dim).sum();
    let verdict = if factors.iter().all(|f| f.hits_bott_case.is_none()) {
        Verdict::Vanishes
    } else {
        Verdict::Inconclusive
    };
    Ok(VanishingVerdict {
        n,
        degrees: degrees.to_vec(),
        j,
        k,
        rank,
        rank_check: dim_sum == rank,
        all_star_star: factors.iter().all(|f| f.satisfies_star_star),
        min_b2_plus_b3: factors.iter().map(|f| f.b[1] + f.b[2]).min(),
        min_b3: factors.iter().map(|f| f.b[2]).min(),
        factors,
        verdict,
    })
}

/// Decomposes `∧^k(⊕ S^{d_i} E) ⊗ S^{j-k}((⊕ S^{d_i-2} E) ⊗ S^2 E)` and
/// checks every factor against `(∗∗)` and the Bott case list.
pub fn vanishing_verdict(n: u32, degrees: &[u32], j: u32, k: u32) -> Result<VanishingVerdict, SchurError> {
    check_domain(n, degrees)?;
    let rk = quotient_rank(degrees);
    if j < 1 || j > rk || k > j {
        return Err(SchurError::Domain(format!("(j, k) = ({j}, {k}) outside 1 <= j <= {rk}, 0 <= k <= j")));
    }
    let (w, u) = blocks(degrees)?;
    let wedge = wedge_char(&w, k)?;
    let sym = sym_char(&u, j - k)?;
    verdict_from_parts(n, degrees, j, k, &wedge, &sym)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingGrid {
    pub n: u32,
    pub degrees: Vec<u32>,
    pub quotient_rank: u32,
    /// `rk Q = n + 1 + 3r`.
    pub rank_identity: bool,
    pub exclusions: CaseExclusions,
    pub all_vanish: bool,
    pub all_star_star: bool,
    pub all_rank_checks: bool,
    /// `(∗∗)` on a factor rules out every Bott case for it.
    pub exclusions_consistent: bool,
    pub entries: Vec<VanishingVerdict>,
}

/// Every `(j, k)` with `1 <= j <= rk Q` and `0 <= k <= j`.
pub fn vanishing_grid(n: u32, degrees: &[u32]) -> Result<VanishingGrid, SchurError> {
    let r = check_domain(n, degrees)?;
    let rk = quotient_rank(degrees);
    let (w, u) = blocks(degrees)?;
    let wedges = wedge_chars(&w, rk)?;
    let syms = sym_chars(&u, rk)?;
    let pairs: Vec<(u32, u32)> = (1..=rk).flat_map(|j| (0..=j).map(move |k| (j, k))).collect();
    let entries = pairs
        .par_iter()
        .map(|&(j, k)| verdict_from_parts(n, degrees, j, k, &wedges[k as usize], &syms[(j - k) as usize]))
        .collect::<Result<Vec<_>, _>>()?;
    let exclusions = CaseExclusions::new(n, r);
    let exclusions_consistent = exclusions.all()
        && entries
            .iter()
            .flat_map(|e| &e.factors)
            .all(|f| !f.satisfies_star_star || f.hits_bott_case.is_none());
    Ok(VanishingGrid {
        n,
        degrees: degrees.to_vec(),
        quotient_rank: rk,
        rank_identity: rk == n + 1 + 3 * r,
        exclusions,
        all_vanish: entries.iter().all(|e| e.verdict == Verdict::Vanishes),
        all_star_star: entries.iter().all(|e| e.all_star_star),
        all_rank_checks: entries.iter().all(|e| e.rank_check),
        exclusions_consistent,
        entries,
    })
}

/// Multiset of triples as a map, for comparisons.
pub fn triple_map(ts: &[SchurTriple]) -> HashMap<[u32; 3], u64> {
    let mut out = HashMap::new();
    for t in ts {
        *out.entry(t.b).or_insert(0) += t.multiplicity;
    }
    out
}

/// Recombines a decomposition into a polynomial.
pub fn schur_sum(ts: &[SchurTriple]) -> MultiPoly<Integers> {
    let mut out = MultiPoly::zero(Integers, 3);
    for t in ts {
        out = &out + &schur_polynomial(t.b).scale(&BigInt::from(t.multiplicity));
    }
    out
}
