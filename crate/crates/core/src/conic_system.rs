//! Complete intersections through two fixed points, their restriction to the
//! family of planes through both points, and the elimination cascade that
//! produces the derived system in the plane parameters.
//!
//! Ambient coordinates are `x_0, …, x_{n+r}` with `p = [1:0:…:0]` and
//! `q = [0:…:0:1]`. The plane with parameter `a = [a_1:…:a_{n+r-1}]` is
//! `{[x : z a_1 : … : z a_{n+r-1} : y]}`, with plane coordinates ordered
//! `(x, z, y)`.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Field, FiniteField, Monomial, MultiPoly, Ring};

/// Retry budget for resampling degenerate instances.
pub const DEFAULT_MAX_RETRIES: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("invalid multidegree: {0}")]
    InvalidDegrees(String),
    #[error("degenerate instance: zero divisor in system {system} at (a, k) = ({a}, {k})")]
    DegenerateInstance { system: usize, a: u32, k: u32 },
    #[error("degenerate instance persisted after {attempts} attempts")]
    DegeneracyExhausted { attempts: u32 },
    #[error("tangent variant needs the coefficient of x_0^(d-1) x_last to vanish in system {0}")]
    TangentPrecondition(usize),
    #[error("plane parameter is the zero vector")]
    DegenerateConic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Conics through `p` and `q`: `s_C = s2 z^2 + s1 xz + s1' yz + xy`.
    Secant,
    /// Conics through `p` tangent to the line `pq`: `xy` replaced by `y^2`.
    Tangent,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Secant => "secant",
            Variant::Tangent => "tangent",
        })
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "secant" => Ok(Variant::Secant),
            "tangent" => Ok(Variant::Tangent),
            other => Err(format!("unknown variant {other:?} (expected secant or tangent)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiDegree {
    degrees: Vec<u32>,
    n: u32,
}

impl MultiDegree {
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn r(&self) -> usize {
        self.degrees.len()
    }

    /// Dimension of the complete intersection.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `N` such that the ambient space is `P^N`.
    pub fn ambient_dim(&self) -> usize {
        self.n as usize + self.r()
    }

    /// Number of plane parameters `a_1, …, a_{n+r-1}`.
    pub fn plane_params(&self) -> usize {
        self.ambient_dim() - 1
    }

    pub fn equation_count(&self) -> usize {
        self.plane_params() - 1
    }

    /// Degrees of the derived equations in emission order.
    pub fn predicted_profile(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for &d in &self.degrees {
            out.extend(3..=d);
            out.extend(2..d);
        }
        for _ in 1..self.r() {
            out.extend([1, 1, 2]);
        }
        out
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        write!(f, "({})", ds.join(","))
    }
}

/// Solves `d_1 + … + d_r = (n+1)/2 + r` for `n`.
pub fn dimension_from_degrees(degrees: &[u32]) -> Result<MultiDegree, SystemError> {
    if degrees.is_empty() {
        return Err(SystemError::InvalidDegrees("empty degree list".into()));
    }
    if let Some(d) = degrees.iter().find(|&&d| d < 2) {
        return Err(SystemError::InvalidDegrees(format!("degree {d} is below 2")));
    }
    let sum: u32 = degrees.iter().sum();
    let n = 2 * (sum - degrees.len() as u32) - 1;
    Ok(MultiDegree {
        degrees: degrees.to_vec(),
        n,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CISections<F: Field> {
    pub field: F,
    pub multidegree: MultiDegree,
    pub variant: Variant,
    pub seed: u64,
    /// One form per degree, in `n + r + 1` variables.
    pub sections: Vec<MultiPoly<F>>,
}

impl<F: Field> CISections<F> {
    /// The same sections with coefficients mapped into `target`.
    pub fn map_field<E: Field>(&self, target: &E, embed: impl Fn(&F::El) -> E::El) -> CISections<E> {
        CISections {
            field: target.clone(),
            multidegree: self.multidegree.clone(),
            variant: self.variant,
            seed: self.seed,
            sections: self.sections.iter().map(|s| s.map_coeffs(target.clone(), &embed)).collect(),
        }
    }
}

/// Exponent vectors whose coefficient is forced to zero.
fn forced_zero(e: &[u32], d: u32, variant: Variant) -> bool {
    let x0 = e[0];
    let xl = e[e.len() - 1];
    match variant {
        Variant::Secant => x0 == d || xl == d,
        Variant::Tangent => x0 == d || (x0 == d - 1 && xl == 1),
    }
}

/// A random complete intersection through `p` and `q`. For the tangent
/// variant the sections pass through `p` with the line `pq` tangent there;
/// `q` itself is not on `X`.
pub fn random_ci_through_pq<F: FiniteField>(md: &MultiDegree, field: &F, seed: u64, variant: Variant) -> CISections<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = md.ambient_dim() + 1;
    let sections = md
        .degrees
        .iter()
        .map(|&d| {
            let terms: Vec<_> = Monomial::all_of_degree(nv, d)
                .into_iter()
                .filter(|m| !forced_zero(m.exponents(), d, variant))
                .map(|m| (m, field.random(&mut rng)))
                .collect();
            MultiPoly::from_terms(field.clone(), nv, terms)
        })
        .collect();
    CISections {
        field: field.clone(),
        multidegree: md.clone(),
        variant,
        seed,
        sections,
    }
}

/// Coefficients `s^i_{a,k}` of `x^a y^{k-a} z^{d_i-k}` in `s_i` restricted to
/// the plane family, as forms of degree `d_i - k` in the plane parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneRestriction<F: Field> {
    pub nvars: usize,
    pub degrees: Vec<u32>,
    /// `tables[i][k][a]`.
    pub tables: Vec<Vec<Vec<MultiPoly<F>>>>,
}

impl<F: Field> PlaneRestriction<F> {
    pub fn coeff(&self, i: usize, a: u32, k: u32) -> &MultiPoly<F> {
        &self.tables[i][k as usize][a as usize]
    }
}

pub fn restrict_to_plane_family<F: Field>(ci: &CISections<F>) -> PlaneRestriction<F> {
    let nv = ci.multidegree.plane_params();
    let tables = ci
        .sections
        .iter()
        .zip(&ci.multidegree.degrees)
        .map(|(s, &d)| {
            let mut table: Vec<Vec<MultiPoly<F>>> = (0..=d)
                .map(|k| vec![MultiPoly::zero(ci.field.clone(), nv); k as usize + 1])
                .collect();
            for (m, c) in s.terms() {
                let e = m.exponents();
                let a = e[0];
                let k = e[0] + e[nv + 1];
                let inner = Monomial::new(e[1..=nv].to_vec());
                table[k as usize][a as usize].add_term(inner, c.clone());
            }
            table
        })
        .collect();
    PlaneRestriction {
        nvars: nv,
        degrees: ci.multidegree.degrees.clone(),
        tables,
    }
}

/// Restriction of an ambient form to the plane with parameter `a`, as a form
/// in the plane coordinates `(x, z, y)`.
pub fn restrict_to_plane<F: Field>(section: &MultiPoly<F>, a: &[F::El]) -> MultiPoly<F> {
    let f = section.ring();
    let nv = section.nvars();
    assert_eq!(a.len() + 2, nv, "plane parameter has wrong length");
    let mut subs = Vec::with_capacity(nv);
    subs.push(MultiPoly::var(f.clone(), 3, 0));
    let z = MultiPoly::var(f.clone(), 3, 1);
    for aj in a {
        subs.push(z.scale(aj));
    }
    subs.push(MultiPoly::var(f.clone(), 3, 2));
    section.compose(&subs)
}

/// Conic coefficients solved from one section.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicAnsatz<F: Field> {
    pub variant: Variant,
    pub s2: MultiPoly<F>,
    pub s1: MultiPoly<F>,
    pub s1p: MultiPoly<F>,
    /// Constants divided out while solving, in solve order.
    pub denominators: Vec<F::El>,
}

impl<F: Field> ConicAnsatz<F> {
    pub fn map_field<E: Field>(&self, target: &E, embed: impl Fn(&F::El) -> E::El) -> ConicAnsatz<E> {
        ConicAnsatz {
            variant: self.variant,
            s2: self.s2.map_coeffs(target.clone(), &embed),
            s1: self.s1.map_coeffs(target.clone(), &embed),
            s1p: self.s1p.map_coeffs(target.clone(), &embed),
            denominators: self.denominators.iter().map(&embed).collect(),
        }
    }
}

/// Coefficients `t_{a,k}` of the residual curve, `0 <= a <= k <= d-2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualCurve<F: Field> {
    /// Degree of the section; the residual curve has degree `degree - 2`.
    pub degree: u32,
    /// `coeffs[k][a]`.
    pub coeffs: Vec<Vec<MultiPoly<F>>>,
}

impl<F: Field> ResidualCurve<F> {
    pub fn len(&self) -> usize {
        self.coeffs.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConicCoefficient {
    S1,
    S1p,
    S2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EquationOrigin {
    /// Leftover equation of one section at position `(a, k)`.
    Universal { system: usize, a: u32, k: u32 },
    /// Agreement of a conic coefficient between `system` and system 0.
    Compatibility { system: usize, coefficient: ConicCoefficient },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivedEquation<F: Field> {
    pub poly: MultiPoly<F>,
    pub degree: u32,
    pub origin: EquationOrigin,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivedSystem<F: Field> {
    pub field: F,
    pub nvars: usize,
    pub equations: Vec<DerivedEquation<F>>,
}

impl<F: Field> DerivedSystem<F> {
    pub fn degree_profile(&self) -> Vec<u32> {
        self.equations.iter().map(|e| e.degree).collect()
    }

    pub fn polys(&self) -> Vec<MultiPoly<F>> {
        self.equations.iter().map(|e| e.poly.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cascade<F: Field> {
    pub ansatz: Vec<ConicAnsatz<F>>,
    pub residuals: Vec<ResidualCurve<F>>,
    pub system: DerivedSystem<F>,
}

/// Working state for one section.
struct Solver<'a, F: Field> {
    field: &'a F,
    nv: usize,
    d: i64,
    variant: Variant,
    s: &'a [Vec<MultiPoly<F>>],
    t: Vec<Vec<Option<MultiPoly<F>>>>,
    s2: Option<MultiPoly<F>>,
    s1: Option<MultiPoly<F>>,
    s1p: Option<MultiPoly<F>>,
    denominators: Vec<F::El>,
    system: usize,
}

impl<F: Field> Solver<'_, F> {
    fn t(&self, a: i64, k: i64) -> Option<&MultiPoly<F>> {
        if a < 0 || k < 0 || a > k || k > self.d - 2 {
            return None;
        }
        self.t[k as usize][a as usize].as_ref()
    }

    fn in_range(&self, a: i64, k: i64) -> bool {
        a >= 0 && k >= 0 && a <= k && k <= self.d - 2
    }

    /// `s_{a,k}` minus every term of the recursion whose factors are known.
    fn residual(&self, a: i64, k: i64) -> MultiPoly<F> {
        let mut acc = self.s[k as usize][a as usize].clone();
        let shift = match self.variant {
            Variant::Secant => 1,
            Variant::Tangent => 0,
        };
        let terms = [
            (self.s2.as_ref(), self.t(a, k)),
            (self.s1.as_ref(), self.t(a - 1, k - 1)),
            (self.s1p.as_ref(), self.t(a, k - 1)),
        ];
        for (c, t) in terms {
            if let (Some(c), Some(t)) = (c, t) {
                acc = &acc - &(c * t);
            }
        }
        if let Some(t) = self.t(a - shift, k - 2) {
            acc = &acc - t;
        }
        acc
    }

    /// Inverse of the constant `t_{a,k}`.
    fn pivot(&mut self, a: i64, k: i64, at: (i64, i64)) -> Result<F::El, SystemError> {
        let c = self
            .t(a, k)
            .and_then(MultiPoly::as_constant)
            .filter(|c| !self.field.is_zero(c))
            .ok_or(SystemError::DegenerateInstance {
                system: self.system,
                a: at.0 as u32,
                k: at.1 as u32,
            })?;
        self.denominators.push(c.clone());
        Ok(self.field.inv(&c).expect("nonzero"))
    }

    fn set_t(&mut self, a: i64, k: i64, v: MultiPoly<F>) {
        debug_assert!(self.in_range(a, k));
        self.t[k as usize][a as usize] = Some(v);
    }

    fn solve_coefficient(&mut self, which: ConicCoefficient, at: (i64, i64), by: (i64, i64)) -> Result<(), SystemError> {
        let inv = self.pivot(by.0, by.1, at)?;
        let v = self.residual(at.0, at.1).scale(&inv);
        match which {
            ConicCoefficient::S2 => self.s2 = Some(v),
            ConicCoefficient::S1 => self.s1 = Some(v),
            ConicCoefficient::S1p => self.s1p = Some(v),
        }
        Ok(())
    }

    /// Solves the residual coefficient isolated by the last recursion term.
    fn solve_t(&mut self, a: i64, k: i64) {
        let shift = match self.variant {
            Variant::Secant => 1,
            Variant::Tangent => 0,
        };
        let v = self.residual(a, k);
        self.set_t(a - shift, k - 2, v);
    }

    fn run(mut self) -> Result<(ConicAnsatz<F>, ResidualCurve<F>, Vec<(u32, u32, MultiPoly<F>)>), SystemError> {
        use ConicCoefficient::*;
        let d = self.d;
        let mut leftovers: Vec<(i64, i64)> = Vec::new();
        match self.variant {
            Variant::Secant => {
                for a in 1..d {
                    self.solve_t(a, d);
                }
                self.solve_coefficient(S1p, (0, d - 1), (0, d - 2))?;
                self.solve_coefficient(S1, (d - 1, d - 1), (d - 2, d - 2))?;
                for a in 1..d - 1 {
                    self.solve_t(a, d - 1);
                }
                self.solve_coefficient(S2, (0, d - 2), (0, d - 2))?;
                for k in (2..=d - 2).rev() {
                    for a in 1..k {
                        self.solve_t(a, k);
                    }
                }
                leftovers.extend((0..=d - 3).rev().map(|k| (0, k)));
                leftovers.extend((1..=d - 2).rev().map(|k| (k, k)));
            }
            Variant::Tangent => {
                for a in 0..=d - 2 {
                    self.solve_t(a, d);
                }
                self.solve_coefficient(S1, (d - 1, d - 1), (d - 2, d - 2))?;
                self.solve_coefficient(S1p, (d - 2, d - 1), (d - 2, d - 2))?;
                for a in 0..=d - 3 {
                    self.solve_t(a, d - 1);
                }
                self.solve_coefficient(S2, (d - 2, d - 2), (d - 2, d - 2))?;
                for k in (2..=d - 2).rev() {
                    for a in 0..=k - 2 {
                        self.solve_t(a, k);
                    }
                }
                if d >= 3 {
                    leftovers.push((0, 0));
                    for k in (1..=d - 2).rev() {
                        leftovers.push((k - 1, k));
                        if k != d - 2 {
                            leftovers.push((k, k));
                        }
                    }
                }
            }
        }
        let equations = leftovers
            .into_iter()
            .map(|(a, k)| (a as u32, k as u32, self.residual(a, k)))
            .collect();
        let zero = MultiPoly::zero(self.field.clone(), self.nv);
        let coeffs = self
            .t
            .into_iter()
            .map(|row| row.into_iter().map(|t| t.unwrap_or_else(|| zero.clone())).collect())
            .collect();
        Ok((
            ConicAnsatz {
                variant: self.variant,
                s2: self.s2.expect("solved"),
                s1: self.s1.expect("solved"),
                s1p: self.s1p.expect("solved"),
                denominators: self.denominators,
            },
            ResidualCurve {
                degree: d as u32,
                coeffs,
            },
            equations,
        ))
    }
}

/// Runs the elimination cascade on every section and assembles the derived
/// system: each section's leftover equations followed by the compatibility
/// equations against section 0.
pub fn cascade_solve<F: Field>(pr: &PlaneRestriction<F>, variant: Variant) -> Result<Cascade<F>, SystemError> {
    let field = pr.tables[0][0][0].ring().clone();
    let nv = pr.nvars;
    let mut ansatz = Vec::new();
    let mut residuals = Vec::new();
    let mut equations = Vec::new();
    for (i, (&d, table)) in pr.degrees.iter().zip(&pr.tables).enumerate() {
        if variant == Variant::Tangent && !table[d as usize][d as usize - 1].is_zero() {
            return Err(SystemError::TangentPrecondition(i));
        }
        let solver = Solver {
            field: &field,
            nv,
            d: d as i64,
            variant,
            s: table,
            t: (0..d - 1).map(|k| vec![None; k as usize + 1]).collect(),
            s2: None,
            s1: None,
            s1p: None,
            denominators: Vec::new(),
            system: i,
        };
        let (an, res, eqs) = solver.run()?;
        for (a, k, poly) in eqs {
            equations.push(DerivedEquation {
                poly,
                degree: d - k,
                origin: EquationOrigin::Universal { system: i, a, k },
            });
        }
        ansatz.push(an);
        residuals.push(res);
    }
    for (i, an) in ansatz.iter().enumerate().skip(1) {
        let base = &ansatz[0];
        for (coefficient, poly, degree) in [
            (ConicCoefficient::S1, &an.s1 - &base.s1, 1),
            (ConicCoefficient::S1p, &an.s1p - &base.s1p, 1),
            (ConicCoefficient::S2, &an.s2 - &base.s2, 2),
        ] {
            equations.push(DerivedEquation {
                poly,
                degree,
                origin: EquationOrigin::Compatibility { system: i, coefficient },
            });
        }
    }
    Ok(Cascade {
        ansatz,
        residuals,
        system: DerivedSystem {
            field,
            nvars: nv,
            equations,
        },
    })
}

/// A fully built instance: sections, restriction and cascade output.
#[derive(Clone, Debug)]
pub struct Instance<F: Field> {
    pub ci: CISections<F>,
    pub restriction: PlaneRestriction<F>,
    pub cascade: Cascade<F>,
    /// Seed requested by the caller; `ci.seed` is the seed actually used.
    pub requested_seed: u64,
    pub attempts: u32,
}

/// Seed used for the `attempt`-th resample of `seed`.
pub fn attempt_seed(seed: u64, attempt: u32) -> u64 {
    seed.wrapping_add((attempt as u64) << 32)
}

/// Samples an instance and runs the cascade, resampling on degeneracy.
pub fn build_instance<F: FiniteField>(
    md: &MultiDegree,
    field: &F,
    seed: u64,
    variant: Variant,
    max_retries: u32,
) -> Result<Instance<F>, SystemError> {
    for attempt in 0..=max_retries {
        let ci = random_ci_through_pq(md, field, attempt_seed(seed, attempt), variant);
        let restriction = restrict_to_plane_family(&ci);
        match cascade_solve(&restriction, variant) {
            Ok(cascade) => {
                return Ok(Instance {
                    ci,
                    restriction,
                    cascade,
                    requested_seed: seed,
                    attempts: attempt + 1,
                })
            }
            Err(SystemError::DegenerateInstance { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(SystemError::DegeneracyExhausted {
        attempts: max_retries + 1,
    })
}

/// A conic in an explicit plane of the family.
#[derive(Clone, Debug, PartialEq)]
pub struct ExplicitConic<F: Field> {
    pub plane: Vec<F::El>,
    /// Form in plane coordinates `(x, z, y)`.
    pub form: MultiPoly<F>,
}

impl<F: Field> ExplicitConic<F> {
    /// Ambient point of the plane with coordinates `(x, z, y)`.
    pub fn ambient_point(&self, x: &F::El, z: &F::El, y: &F::El) -> Vec<F::El> {
        let f = self.form.ring();
        let mut out = Vec::with_capacity(self.plane.len() + 2);
        out.push(x.clone());
        out.extend(self.plane.iter().map(|a| f.mul(z, a)));
        out.push(y.clone());
        out
    }
}

/// Evaluates the ansatz at the plane parameter `a`.
pub fn reconstruct_conic<F: Field>(ansatz: &ConicAnsatz<F>, a: &[F::El]) -> Result<ExplicitConic<F>, SystemError> {
    let f = ansatz.s2.ring();
    if a.iter().all(|v| f.is_zero(v)) {
        return Err(SystemError::DegenerateConic);
    }
    let s2 = ansatz.s2.eval(a);
    let s1 = ansatz.s1.eval(a);
    let s1p = ansatz.s1p.eval(a);
    let lead = match ansatz.variant {
        Variant::Secant => [1, 0, 1],
        Variant::Tangent => [0, 0, 2],
    };
    let form = MultiPoly::from_terms(
        f.clone(),
        3,
        [
            (Monomial::new(vec![0, 2, 0]), s2),
            (Monomial::new(vec![1, 1, 0]), s1),
            (Monomial::new(vec![0, 1, 1]), s1p),
            (Monomial::new(lead.to_vec()), f.one()),
        ],
    );
    Ok(ExplicitConic {
        plane: a.to_vec(),
        form,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub degree: u32,
    pub terms: Vec<TermRecord>,
}

impl PolyRecord {
    pub fn from_poly<R: Ring>(p: &MultiPoly<R>, degree: u32) -> Self {
        PolyRecord {
            degree,
            terms: p
                .terms()
                .rev()
                .map(|(m, c)| TermRecord {
                    exponents: m.exponents().to_vec(),
                    coeff: p.ring().format(c),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CIRecord {
    pub field: String,
    pub characteristic: u64,
    pub degrees: Vec<u32>,
    pub n: u32,
    pub variant: Variant,
    pub seed: u64,
    pub variables: Vec<String>,
    pub sections: Vec<PolyRecord>,
}

impl<F: Field> CISections<F> {
    pub fn to_record(&self) -> CIRecord {
        let nv = self.multidegree.ambient_dim() + 1;
        CIRecord {
            field: self.field.name(),
            characteristic: self.field.characteristic(),
            degrees: self.multidegree.degrees.clone(),
            n: self.multidegree.n,
            variant: self.variant,
            seed: self.seed,
            variables: (0..nv).map(|i| format!("x{i}")).collect(),
            sections: self
                .sections
                .iter()
                .zip(&self.multidegree.degrees)
                .map(|(s, &d)| PolyRecord::from_poly(s, d))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedEquationRecord {
    pub origin: EquationOrigin,
    #[serde(flatten)]
    pub poly: PolyRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedSystemRecord {
    pub field: String,
    pub characteristic: u64,
    pub variables: Vec<String>,
    pub degree_profile: Vec<u32>,
    pub equations: Vec<DerivedEquationRecord>,
}

impl<F: Field> DerivedSystem<F> {
    pub fn to_record(&self) -> DerivedSystemRecord {
        DerivedSystemRecord {
            field: self.field.name(),
            characteristic: self.field.characteristic(),
            variables: (1..=self.nvars).map(|i| format!("a{i}")).collect(),
            degree_profile: self.degree_profile(),
            equations: self
                .equations
                .iter()
                .map(|e| DerivedEquationRecord {
                    origin: e.origin,
                    poly: PolyRecord::from_poly(&e.poly, e.degree),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PrimeField;

    fn fp() -> PrimeField {
        PrimeField::new(10007).unwrap()
    }

    #[test]
    fn dimension_examples() {
        let md = dimension_from_degrees(&[3]).unwrap();
        assert_eq!((md.n(), md.ambient_dim()), (3, 4));
        let md = dimension_from_degrees(&[2, 2]).unwrap();
        assert_eq!((md.n(), md.ambient_dim()), (3, 5));
        let md = dimension_from_degrees(&[2]).unwrap();
        assert_eq!((md.n(), md.ambient_dim()), (1, 2));
        assert!(dimension_from_degrees(&[1, 3]).is_err());
        assert!(dimension_from_degrees(&[]).is_err());
    }

    #[test]
    fn forced_zeros_vanish_at_p_and_q() {
        let md = dimension_from_degrees(&[3]).unwrap();
        let f = fp();
        let ci = random_ci_through_pq(&md, &f, 7, Variant::Secant);
        let s = &ci.sections[0];
        assert_eq!(s.nvars(), 5);
        assert!(f.is_zero(&s.coeff(&Monomial::new(vec![3, 0, 0, 0, 0]))));
        assert!(f.is_zero(&s.coeff(&Monomial::new(vec![0, 0, 0, 0, 3]))));
        assert_eq!(s.eval(&[1, 0, 0, 0, 0]), 0);
        assert_eq!(s.eval(&[0, 0, 0, 0, 1]), 0);
        let other = random_ci_through_pq(&md, &f, 8, Variant::Secant);
        assert_ne!(ci.sections, other.sections);
    }

    #[test]
    fn restriction_of_monomial() {
        let f = fp();
        let md = dimension_from_degrees(&[2]).unwrap();
        let s = MultiPoly::from_int_terms(f, 3, &[(1, &[1, 0, 1])]);
        let ci = CISections {
            field: f,
            multidegree: md,
            variant: Variant::Secant,
            seed: 0,
            sections: vec![s],
        };
        let pr = restrict_to_plane_family(&ci);
        for k in 0..=2 {
            for a in 0..=k {
                let c = pr.coeff(0, a, k);
                if (a, k) == (1, 2) {
                    assert_eq!(c.as_constant(), Some(1));
                } else {
                    assert!(c.is_zero());
                }
            }
        }
    }

    #[test]
    fn restriction_degrees() {
        let f = fp();
        let md = dimension_from_degrees(&[3]).unwrap();
        let ci = random_ci_through_pq(&md, &f, 1, Variant::Secant);
        let pr = restrict_to_plane_family(&ci);
        assert!(pr.coeff(0, 0, 3).is_zero());
        assert!(pr.coeff(0, 3, 3).is_zero());
        let c = pr.coeff(0, 0, 1);
        assert_eq!(c.nvars(), 3);
        assert!(c.is_homogeneous());
        assert_eq!(c.total_degree(), Some(2));
    }

    #[test]
    fn derived_profiles() {
        let f = fp();
        for (ds, profile) in [
            (vec![3], vec![3, 2]),
            (vec![2, 2], vec![1, 1, 2]),
            (vec![4], vec![3, 4, 2, 3]),
            (vec![3, 2], vec![3, 2, 1, 1, 2]),
        ] {
            let md = dimension_from_degrees(&ds).unwrap();
            for variant in [Variant::Secant, Variant::Tangent] {
                let inst = build_instance(&md, &f, 0, variant, 0).map_err(|e| format!("{ds:?} {variant}: {e}")).unwrap();
                let sys = &inst.cascade.system;
                assert_eq!(sys.nvars, md.plane_params());
                let mut got = sys.degree_profile();
                let mut want = profile.clone();
                if variant == Variant::Secant {
                    assert_eq!(got, want);
                }
                got.sort();
                want.sort();
                assert_eq!(got, want);
                for e in &sys.equations {
                    assert!(e.poly.is_homogeneous());
                    assert_eq!(e.poly.total_degree(), Some(e.degree));
                }
            }
        }
    }

    #[test]
    fn tangent_precondition_is_checked() {
        let f = fp();
        let md = dimension_from_degrees(&[3]).unwrap();
        let ci = random_ci_through_pq(&md, &f, 3, Variant::Secant);
        let pr = restrict_to_plane_family(&ci);
        assert_eq!(cascade_solve(&pr, Variant::Tangent), Err(SystemError::TangentPrecondition(0)));
    }

    #[test]
    fn reconstructed_conic_contains_p_and_q() {
        let f = fp();
        let md = dimension_from_degrees(&[3]).unwrap();
        let inst = build_instance(&md, &f, 2, Variant::Secant, DEFAULT_MAX_RETRIES).unwrap();
        let conic = reconstruct_conic(&inst.cascade.ansatz[0], &[3, 5, 7]).unwrap();
        assert_eq!(conic.form.eval(&[1, 0, 0]), 0);
        assert_eq!(conic.form.eval(&[0, 0, 1]), 0);
        assert_eq!(reconstruct_conic(&inst.cascade.ansatz[0], &[0, 0, 0]), Err(SystemError::DegenerateConic));
    }

    #[test]
    fn deterministic_records() {
        let f = fp();
        let md = dimension_from_degrees(&[3, 2]).unwrap();
        let a = build_instance(&md, &f, 5, Variant::Secant, DEFAULT_MAX_RETRIES).unwrap();
        let b = build_instance(&md, &f, 5, Variant::Secant, DEFAULT_MAX_RETRIES).unwrap();
        assert_eq!(a.cascade.system.to_record(), b.cascade.system.to_record());
        assert_eq!(a.ci.to_record(), b.ci.to_record());
    }
}
