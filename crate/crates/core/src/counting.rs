//! Solution counting for derived systems over prime fields, certification,
//! recovery of the solution points, and the closed count and dimension
//! formulas.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conic_system::{
    build_instance, reconstruct_conic, restrict_to_plane, CISections, DerivedSystem, ExplicitConic, Instance, MultiDegree,
    SystemError, Variant, DEFAULT_MAX_RETRIES,
};
use crate::poly::{
    groebner_basis, sylvester_resultant, ArithError, ExtField, Field, FiniteField, GroebnerBasis, Matrix, Monomial,
    MonomialOrder, MultiPoly, PolyError, PrimeField, QuotientCount, Ring, UniPoly,
};

/// Smallest prime accepted for counting runs.
pub const MIN_PRIME: u64 = 10007;
pub const DEFAULT_PRIMES: [u64; 3] = [10007, 31013, 65537];
pub const DEFAULT_SEEDS: [u64; 3] = [0, 1, 2];
/// Largest extension degree in which solution points are reconstructed.
pub const MAX_RECONSTRUCTION_DEGREE: usize = 6;

pub const GENERICITY_NOTE: &str = "counts are computed over prime fields; agreement across all primes and seeds stands in for genericity over the complex numbers";

#[derive(Debug, Clone, Error)]
pub enum CountError {
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("prime {p} is below the minimum {min}")]
    PrimeTooSmall { p: u64, min: u64 },
    #[error("no primes or no seeds supplied")]
    NoTrials,
    #[error("linear equations are dependent (prime {prime}, seed {seed})")]
    LinearRankDeficient { prime: u64, seed: u64 },
    #[error("solution set is positive-dimensional (prime {prime}, seed {seed})")]
    PositiveDimensional { prime: u64, seed: u64 },
    #[error("method {method} cannot handle {variables} projective variables")]
    UnsupportedMethod { method: Method, variables: usize },
    #[error("counts disagree across trials")]
    InconsistentCounts(Box<CountReport>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Auto,
    Resultant,
    Groebner,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Auto => "auto",
            Method::Resultant => "resultant",
            Method::Groebner => "groebner",
        })
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Method::Auto),
            "resultant" => Ok(Method::Resultant),
            "groebner" => Ok(Method::Groebner),
            other => Err(format!("unknown method {other:?} (expected auto, resultant or groebner)")),
        }
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `½ ∏ (d_i − 1)! d_i!`.
pub fn expected_count(degrees: &[u32]) -> BigUint {
    let prod = degrees.iter().fold(BigUint::one(), |acc, &d| acc * factorial(d - 1) * factorial(d));
    prod / 2u32
}

/// Product of a degree profile.
pub fn bezout_of_profile(profile: &[u32]) -> BigUint {
    profile.iter().fold(BigUint::one(), |acc, &d| acc * d)
}

pub fn bezout_number<F: Field>(ds: &DerivedSystem<F>) -> BigUint {
    bezout_of_profile(&ds.degree_profile())
}

/// `Σ [(d+1)(d+2)/2 − d(d−1)/2]`, the rank of the bundle whose sections
/// restrict the defining forms to conics.
pub fn bundle_rank(degrees: &[u32]) -> u64 {
    degrees
        .iter()
        .map(|&d| {
            let d = d as u64;
            (d + 1) * (d + 2) / 2 - d * (d - 1) / 2
        })
        .sum()
}

/// Dimension of the space of conics in `P^N`: a plane plus a conic in it.
pub fn conic_hilbert_scheme_dim(ambient: u64) -> i64 {
    3 * (ambient as i64 - 2) + 5
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub n: u32,
    pub degrees: Vec<u32>,
    pub hilbert_scheme_dim: i64,
    pub bundle_rank: u64,
    pub dimension: i64,
    /// Whether `(n, d)` lies in the range `n >= 7, d <= n + 1`.
    pub within_hypothesis: bool,
}

/// Expected dimension of the family of conics on a hypersurface of degree
/// `d` in `P^{n+1}`: `3(n−1) + 5 − (2d+1) = 3n − 2d + 1`.
pub fn expected_dimension_hypersurface(n: u32, d: u32) -> DimensionReport {
    let rank = bundle_rank(&[d]);
    let hs = conic_hilbert_scheme_dim(n as u64 + 1);
    DimensionReport {
        n,
        degrees: vec![d],
        hilbert_scheme_dim: hs,
        bundle_rank: rank,
        dimension: hs - rank as i64,
        within_hypothesis: n >= 7 && d <= n + 1,
    }
}

/// Same computation for a complete intersection of the given multidegree.
pub fn conic_family_dimension(md: &MultiDegree) -> DimensionReport {
    let rank = bundle_rank(md.degrees());
    let hs = conic_hilbert_scheme_dim(md.ambient_dim() as u64);
    DimensionReport {
        n: md.n(),
        degrees: md.degrees().to_vec(),
        hilbert_scheme_dim: hs,
        bundle_rank: rank,
        dimension: hs - rank as i64,
        within_hypothesis: true,
    }
}

/// True iff every section restricted to the conic's plane is divisible by
/// the conic's form.
pub fn verify_conic<F: Field>(ci: &CISections<F>, conic: &ExplicitConic<F>) -> bool {
    ci.sections.iter().all(|s| {
        let restricted = restrict_to_plane(s, &conic.plane);
        matches!(restricted.div_rem(&conic.form), Ok((_, r)) if r.is_zero())
    })
}

/// The derived system after eliminating linear equations, a random change of
/// coordinates and dehomogenization. Original plane parameters are recovered
/// as `a = T · (u_0, …, u_{m−1}, 1)`.
struct Reduced {
    transform: Matrix<PrimeField>,
    affine: Vec<MultiPoly<PrimeField>>,
}

impl Reduced {
    fn affine_vars(&self) -> usize {
        self.transform.cols() - 1
    }

    fn plane_point(&self, k: &ExtField, u: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let t = &self.transform;
        (0..t.rows())
            .map(|i| {
                let mut acc = k.embed(*t.get(i, t.cols() - 1));
                for (c, uc) in u.iter().enumerate() {
                    acc = k.add(&acc, &k.mul(&k.embed(*t.get(i, c)), uc));
                }
                acc
            })
            .collect()
    }
}

fn reduce_system(
    f: PrimeField,
    nv: usize,
    equations: &[MultiPoly<PrimeField>],
    rng: &mut ChaCha8Rng,
    seed: u64,
) -> Result<Reduced, CountError> {
    let prime = f.modulus();
    let is_linear = |e: &MultiPoly<PrimeField>| e.total_degree() == Some(1);
    let linear: Vec<_> = equations.iter().filter(|e| is_linear(e)).collect();
    let rows: Vec<Vec<u64>> = linear
        .iter()
        .map(|e| (0..nv).map(|j| e.coeff(&Monomial::var(nv, j))).collect())
        .collect();
    let (pivots, rref) = if rows.is_empty() {
        (Vec::new(), Matrix::zeros(f, 0, nv))
    } else {
        let mut m = Matrix::from_rows(f, rows);
        let p = m.rref();
        (p, m)
    };
    if pivots.len() < linear.len() {
        return Err(CountError::LinearRankDeficient { prime, seed });
    }
    let free: Vec<usize> = (0..nv).filter(|c| !pivots.contains(c)).collect();
    let nfree = free.len();
    if nfree == 0 {
        return Err(CountError::LinearRankDeficient { prime, seed });
    }
    let mut kernel = Matrix::zeros(f, nv, nfree);
    for (jj, &fc) in free.iter().enumerate() {
        kernel.set(fc, jj, 1);
        for (r, &pc) in pivots.iter().enumerate() {
            kernel.set(pc, jj, f.neg(rref.get(r, fc)));
        }
    }
    let change = loop {
        let rows = (0..nfree).map(|_| (0..nfree).map(|_| f.random(rng)).collect()).collect();
        let g = Matrix::from_rows(f, rows);
        if !f.is_zero(&g.det()) {
            break g;
        }
    };
    let transform = kernel.mul(&change);
    let m = nfree - 1;
    let subs: Vec<MultiPoly<PrimeField>> = (0..nv)
        .map(|i| {
            let mut p = MultiPoly::constant(f, m, *transform.get(i, m));
            for c in 0..m {
                p.add_term(Monomial::var(m, c), *transform.get(i, c));
            }
            p
        })
        .collect();
    let affine = equations.iter().filter(|e| !is_linear(e)).map(|e| e.compose(&subs)).collect();
    Ok(Reduced { transform, affine })
}

/// Backend-specific data needed to lift eliminant roots back to points.
enum Backend {
    Trivial,
    Univariate,
    Resultant,
    Groebner {
        basis: GroebnerBasis<PrimeField>,
        monomials: Vec<crate::poly::Monomial>,
        mult: Matrix<PrimeField>,
    },
}

struct Solved {
    backend: Backend,
    quotient_dim: usize,
    eliminant: UniPoly<PrimeField>,
}

fn to_univariate<E: Field>(p: &MultiPoly<E>, var: usize, point: &[E::El]) -> UniPoly<E> {
    let f = p.ring();
    let deg = p.degree_in(var).unwrap_or(0) as usize;
    let mut coeffs = vec![f.zero(); deg + 1];
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (i, &e) in m.exponents().iter().enumerate() {
            if i != var && e > 0 {
                t = f.mul(&t, &f.pow(&point[i], e as u64));
            }
        }
        let k = m.exponents()[var] as usize;
        coeffs[k] = f.add(&coeffs[k], &t);
    }
    UniPoly::new(f.clone(), coeffs)
}

fn solve_reduced(red: &Reduced, method: Method, rng: &mut ChaCha8Rng, prime: u64, seed: u64) -> Result<Solved, CountError> {
    let f = PrimeField::new(prime)?;
    let m = red.affine_vars();
    let projective = m + 1;
    let use_groebner = match method {
        Method::Auto => m > 2,
        Method::Resultant if m > 2 => {
            return Err(CountError::UnsupportedMethod {
                method,
                variables: projective,
            })
        }
        Method::Resultant => false,
        Method::Groebner => true,
    };
    if m == 0 {
        return Ok(Solved {
            backend: Backend::Trivial,
            quotient_dim: 1,
            eliminant: UniPoly::x(f),
        });
    }
    if !use_groebner {
        if m == 1 {
            let u = to_univariate(&red.affine[0], 0, &[0]);
            return Ok(Solved {
                backend: Backend::Univariate,
                quotient_dim: u.degree().unwrap_or(0),
                eliminant: u,
            });
        }
        let r = sylvester_resultant(&red.affine[0], &red.affine[1], 0)?;
        let u = to_univariate(&r, 1, &[0, 0]);
        if u.is_zero() {
            return Err(CountError::PositiveDimensional { prime, seed });
        }
        return Ok(Solved {
            backend: Backend::Resultant,
            quotient_dim: u.degree().unwrap_or(0),
            eliminant: u,
        });
    }
    let basis = groebner_basis(&red.affine, MonomialOrder::GrevLex)?;
    let dim = match basis.quotient_count() {
        QuotientCount::Finite(d) => d,
        QuotientCount::Infinite => return Err(CountError::PositiveDimensional { prime, seed }),
    };
    let mut lambda = MultiPoly::zero(f, m);
    for c in 0..m {
        lambda.add_term(Monomial::var(m, c), f.random(rng));
    }
    let (monomials, mult) = basis.multiplication_matrix(&lambda)?;
    let eliminant = mult.char_poly();
    Ok(Solved {
        backend: Backend::Groebner { basis, monomials, mult },
        quotient_dim: dim,
        eliminant,
    })
}

/// Affine coordinates `u` of the point on which the eliminant takes the
/// value `theta`, or `None` if the backend cannot isolate it.
fn lift_root(red: &Reduced, solved: &Solved, k: &ExtField, theta: &Vec<u64>) -> Option<Vec<Vec<u64>>> {
    let lift = |p: &MultiPoly<PrimeField>| p.map_coeffs(k.clone(), |c| k.embed(*c));
    match &solved.backend {
        Backend::Trivial => Some(Vec::new()),
        Backend::Univariate => Some(vec![theta.clone()]),
        Backend::Resultant => {
            let point = vec![k.zero(), theta.clone()];
            let f = to_univariate(&lift(&red.affine[0]), 0, &point);
            let g = to_univariate(&lift(&red.affine[1]), 0, &point);
            let h = f.gcd(&g);
            if h.degree() != Some(1) {
                return None;
            }
            let h = h.monic();
            Some(vec![k.neg(&h.coeff(0)), theta.clone()])
        }
        Backend::Groebner { basis, monomials, mult } => {
            let n = mult.rows();
            let mut a = Matrix::zeros(k.clone(), n, n);
            for i in 0..n {
                for j in 0..n {
                    a.set(i, j, k.embed(*mult.get(j, i)));
                }
                a.set(i, i, k.sub(a.get(i, i), theta));
            }
            let ns = a.nullspace();
            if ns.len() != 1 || monomials[0].degree() != 0 {
                return None;
            }
            let w = &ns[0];
            let w0_inv = k.inv(&w[0]).ok()?;
            let m = red.affine_vars();
            let index = |mono: &crate::poly::Monomial| monomials.iter().position(|b| b == mono);
            (0..m)
                .map(|v| {
                    let nf = basis.normal_form(&MultiPoly::var(k.base(), m, v));
                    let mut acc = k.zero();
                    for (mono, c) in nf.terms() {
                        acc = k.add(&acc, &k.mul(&k.embed(*c), &w[index(mono)?]));
                    }
                    Some(k.mul(&acc, &w0_inv))
                })
                .collect()
        }
    }
}

/// Solutions of a square homogeneous system over a prime field: the
/// eliminant together with what is needed to lift its roots to points.
pub struct HomogeneousSolution {
    red: Reduced,
    solved: Solved,
}

/// One Frobenius orbit of solutions. `point` is a representative over
/// `field`, absent when the orbit was not reconstructed.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub degree: usize,
    pub field: Option<ExtField>,
    pub point: Option<Vec<Vec<u64>>>,
}

impl HomogeneousSolution {
    pub fn method(&self) -> Method {
        match self.solved.backend {
            Backend::Groebner { .. } => Method::Groebner,
            _ => Method::Resultant,
        }
    }

    /// Projective variables left after eliminating linear equations.
    pub fn reduced_variables(&self) -> usize {
        self.red.affine_vars() + 1
    }

    pub fn quotient_dim(&self) -> usize {
        self.solved.quotient_dim
    }

    pub fn eliminant(&self) -> &UniPoly<PrimeField> {
        &self.solved.eliminant
    }

    pub fn distinct_roots(&self) -> usize {
        self.solved.eliminant.distinct_root_count().unwrap_or(0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.solved.eliminant.degree() == Some(self.distinct_roots())
    }

    /// Orbits of solution points, reconstructing those in extensions of
    /// degree at most `max_degree`. Needs a squarefree eliminant.
    pub fn orbits(&self, max_degree: usize) -> Result<Vec<Orbit>, CountError> {
        let mut out = Vec::new();
        for h in self.solved.eliminant.factor_squarefree()? {
            let degree = h.degree().unwrap_or(0);
            if degree > max_degree {
                out.push(Orbit {
                    degree,
                    field: None,
                    point: None,
                });
                continue;
            }
            let k = h.extension_field()?;
            let point = lift_root(&self.red, &self.solved, &k, &k.generator()).map(|u| self.red.plane_point(&k, &u));
            out.push(Orbit {
                degree,
                field: Some(k),
                point,
            });
        }
        Ok(out)
    }
}

/// Solves a homogeneous system in `nvars` variables whose solution set is
/// expected to be finite. Linear equations are eliminated first; `seed` only
/// labels errors.
pub fn solve_homogeneous(
    field: PrimeField,
    nvars: usize,
    equations: &[MultiPoly<PrimeField>],
    method: Method,
    rng: &mut ChaCha8Rng,
    seed: u64,
) -> Result<HomogeneousSolution, CountError> {
    let red = reduce_system(field, nvars, equations, rng, seed)?;
    let solved = solve_reduced(&red, method, rng, field.modulus(), seed)?;
    Ok(HomogeneousSolution { red, solved })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificates {
    pub quotient_dim_equals_bezout: bool,
    pub eliminant_squarefree: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    /// Degrees of the irreducible factors of the eliminant.
    pub factor_degrees: Vec<usize>,
    pub points_reconstructed: usize,
    /// Points in extensions above the reconstruction limit.
    pub points_skipped: usize,
    pub points_satisfying_system: usize,
    pub conics_verified: usize,
}

impl Verification {
    /// Every reconstructed point solves the system and gives a conic on `X`.
    pub fn all_verified(&self) -> bool {
        self.points_satisfying_system == self.points_reconstructed && self.conics_verified == self.points_reconstructed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub prime: u64,
    pub seed: u64,
    /// Seed of the instance actually used after degeneracy resampling.
    pub instance_seed: u64,
    pub attempts: u32,
    pub method: Method,
    pub degree_profile: Vec<u32>,
    pub bezout: u64,
    /// Projective variables left after eliminating linear equations.
    pub reduced_variables: usize,
    pub quotient_dim: usize,
    pub eliminant_degree: usize,
    pub distinct_roots: usize,
    pub count: u64,
    pub certificates: Certificates,
    pub verification: Option<Verification>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub degrees: Vec<u32>,
    pub n: u32,
    pub variant: Variant,
    pub method: Method,
    pub count: Option<u64>,
    pub bezout: u64,
    pub expected: u64,
    pub degree_profile: Vec<u32>,
    pub certificates: Certificates,
    pub unanimous: bool,
    pub matches_expected: bool,
    /// Every reconstructed conic passed `verify_conic`.
    pub verified: Option<bool>,
    /// Every solution of every trial was reconstructed and verified.
    pub all_solutions_verified: Option<bool>,
    pub primes: Vec<u64>,
    pub seeds: Vec<u64>,
    pub note: String,
    pub trials: Vec<TrialReport>,
}

impl CountReport {
    /// All certificates hold, counts agree, equal the closed formula, and
    /// every reconstructed conic (if checked) passed.
    pub fn passed(&self) -> bool {
        self.certificates.quotient_dim_equals_bezout
            && self.certificates.eliminant_squarefree
            && self.unanimous
            && self.matches_expected
            && self.verified != Some(false)
    }
}

/// A solution conic defined over `field`, with the instance lifted there.
#[derive(Clone, Debug)]
pub struct FoundConic {
    pub field: ExtField,
    pub ci: CISections<ExtField>,
    pub conic: ExplicitConic<ExtField>,
    pub verified: bool,
}

pub struct TrialOutcome {
    pub report: TrialReport,
    /// One representative per Frobenius orbit of reconstructed solutions.
    pub conics: Vec<FoundConic>,
}

#[derive(Clone, Debug)]
pub struct CountConfig {
    pub method: Method,
    pub primes: Vec<u64>,
    pub seeds: Vec<u64>,
    pub max_retries: u32,
    pub verify: bool,
    pub min_prime: u64,
}

impl Default for CountConfig {
    fn default() -> Self {
        Self {
            method: Method::Auto,
            primes: DEFAULT_PRIMES.to_vec(),
            seeds: DEFAULT_SEEDS.to_vec(),
            max_retries: DEFAULT_MAX_RETRIES,
            verify: true,
            min_prime: MIN_PRIME,
        }
    }
}

fn to_u64(v: &BigUint) -> u64 {
    v.to_u64().unwrap_or(u64::MAX)
}

fn verify_points(inst: &Instance<PrimeField>, sol: &HomogeneousSolution) -> Result<(Verification, Vec<FoundConic>), CountError> {
    let mut ver = Verification::default();
    let mut found = Vec::new();
    let sys = &inst.cascade.system;
    for orbit in sol.orbits(MAX_RECONSTRUCTION_DEGREE)? {
        let deg = orbit.degree;
        ver.factor_degrees.push(deg);
        let (Some(k), Some(mut point)) = (orbit.field, orbit.point) else {
            ver.points_skipped += deg;
            continue;
        };
        let ci = inst.ci.map_field(&k, |c| k.embed(*c));
        let ansatz = inst.cascade.ansatz[0].map_field(&k, |c| k.embed(*c));
        let equations: Vec<_> = sys
            .equations
            .iter()
            .map(|e| e.poly.map_coeffs(k.clone(), |c| k.embed(*c)))
            .collect();
        for conj in 0..deg {
            ver.points_reconstructed += 1;
            if equations.iter().all(|e| k.is_zero(&e.eval(&point))) {
                ver.points_satisfying_system += 1;
            }
            let conic = reconstruct_conic(&ansatz, &point)?;
            let ok = verify_conic(&ci, &conic);
            if ok {
                ver.conics_verified += 1;
            }
            if conj == 0 {
                found.push(FoundConic {
                    field: k.clone(),
                    ci: ci.clone(),
                    conic,
                    verified: ok,
                });
            }
            point = point.iter().map(|c| k.frobenius(c)).collect();
        }
    }
    Ok((ver, found))
}

/// One (prime, seed) trial of the full pipeline.
pub fn run_trial(md: &MultiDegree, variant: Variant, prime: u64, seed: u64, cfg: &CountConfig) -> Result<TrialOutcome, CountError> {
    if prime < cfg.min_prime {
        return Err(CountError::PrimeTooSmall {
            p: prime,
            min: cfg.min_prime,
        });
    }
    let field = PrimeField::new(prime)?;
    let inst = build_instance(md, &field, seed, variant, cfg.max_retries)?;
    let sys = &inst.cascade.system;
    let profile = sys.degree_profile();
    let bezout = to_u64(&bezout_of_profile(&profile));
    let mut rng = ChaCha8Rng::seed_from_u64(inst.ci.seed ^ prime.rotate_left(17));
    let sol = solve_homogeneous(field, sys.nvars, &sys.polys(), cfg.method, &mut rng, seed)?;
    let elim_deg = sol.eliminant().degree().unwrap_or(0);
    let distinct = sol.distinct_roots();
    let squarefree = distinct == elim_deg;
    let method = sol.method();
    let (verification, conics) = if cfg.verify && squarefree {
        let (v, c) = verify_points(&inst, &sol)?;
        (Some(v), c)
    } else {
        (None, Vec::new())
    };
    Ok(TrialOutcome {
        report: TrialReport {
            prime,
            seed,
            instance_seed: inst.ci.seed,
            attempts: inst.attempts,
            method,
            degree_profile: profile,
            bezout,
            reduced_variables: sol.reduced_variables(),
            quotient_dim: sol.quotient_dim(),
            eliminant_degree: elim_deg,
            distinct_roots: distinct,
            count: distinct as u64,
            certificates: Certificates {
                quotient_dim_equals_bezout: sol.quotient_dim() as u64 == bezout,
                eliminant_squarefree: squarefree,
            },
            verification,
        },
        conics,
    })
}

/// Runs every (prime, seed) trial and merges the results. Disagreeing counts
/// are returned as [`CountError::InconsistentCounts`] carrying the report.
pub fn count_conics_with_conics(
    md: &MultiDegree,
    variant: Variant,
    cfg: &CountConfig,
) -> Result<(CountReport, Vec<TrialOutcome>), CountError> {
    if cfg.primes.is_empty() || cfg.seeds.is_empty() {
        return Err(CountError::NoTrials);
    }
    let jobs: Vec<(u64, u64)> = cfg
        .primes
        .iter()
        .flat_map(|&p| cfg.seeds.iter().map(move |&s| (p, s)))
        .collect();
    let outcomes: Vec<TrialOutcome> = jobs
        .par_iter()
        .map(|&(p, s)| run_trial(md, variant, p, s, cfg))
        .collect::<Result<_, _>>()?;
    let trials: Vec<TrialReport> = outcomes.iter().map(|o| o.report.clone()).collect();
    let first = &trials[0];
    let unanimous = trials.iter().all(|t| t.count == first.count);
    let expected = to_u64(&expected_count(md.degrees()));
    let count = unanimous.then_some(first.count);
    let checks: Option<Vec<&Verification>> = trials.iter().map(|t| t.verification.as_ref()).collect();
    let (verified, all_solutions_verified) = match checks {
        Some(vs) => (
            Some(vs.iter().all(|v| v.all_verified())),
            Some(vs.iter().zip(&trials).all(|(v, t)| v.all_verified() && v.conics_verified as u64 == t.count)),
        ),
        None if cfg.verify => (Some(false), Some(false)),
        None => (None, None),
    };
    let report = CountReport {
        degrees: md.degrees().to_vec(),
        n: md.n(),
        variant,
        method: first.method,
        count,
        bezout: first.bezout,
        expected,
        degree_profile: first.degree_profile.clone(),
        certificates: Certificates {
            quotient_dim_equals_bezout: trials.iter().all(|t| t.certificates.quotient_dim_equals_bezout),
            eliminant_squarefree: trials.iter().all(|t| t.certificates.eliminant_squarefree),
        },
        unanimous,
        matches_expected: count == Some(expected) && first.bezout == expected,
        verified,
        all_solutions_verified,
        primes: cfg.primes.clone(),
        seeds: cfg.seeds.clone(),
        note: GENERICITY_NOTE.to_string(),
        trials,
    };
    if !unanimous {
        return Err(CountError::InconsistentCounts(Box::new(report)));
    }
    Ok((report, outcomes))
}

pub fn count_conics(md: &MultiDegree, variant: Variant, cfg: &CountConfig) -> Result<CountReport, CountError> {
    count_conics_with_conics(md, variant, cfg).map(|(r, _)| r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic_system::dimension_from_degrees;

    #[test]
    fn closed_formulas() {
        assert_eq!(expected_count(&[3]), BigUint::from(6u32));
        assert_eq!(expected_count(&[2, 2]), BigUint::from(2u32));
        assert_eq!(expected_count(&[2]), BigUint::from(1u32));
        assert_eq!(expected_count(&[4]), BigUint::from(72u32));
        assert_eq!(bezout_of_profile(&[3, 2]), BigUint::from(6u32));
        assert_eq!(bezout_of_profile(&[1, 1, 2]), BigUint::from(2u32));
        assert_eq!(bezout_of_profile(&[3, 2, 1, 1, 2]), BigUint::from(12u32));
    }

    #[test]
    fn dimension_formulas() {
        assert_eq!(expected_dimension_hypersurface(7, 8).dimension, 6);
        assert_eq!(expected_dimension_hypersurface(7, 4).dimension, 14);
        assert!(!expected_dimension_hypersurface(5, 4).within_hypothesis);
        for ds in [vec![3], vec![2, 2], vec![4], vec![3, 2], vec![2, 2, 2]] {
            let md = dimension_from_degrees(&ds).unwrap();
            assert_eq!(bundle_rank(&ds), md.n() as u64 + 1 + 3 * md.r() as u64);
            assert_eq!(conic_family_dimension(&md).dimension, 2 * md.n() as i64 - 2);
        }
    }

    #[test]
    fn plane_conic_verifies_and_perturbation_fails() {
        let md = dimension_from_degrees(&[2]).unwrap();
        let cfg = CountConfig {
            primes: vec![10007],
            seeds: vec![4],
            ..CountConfig::default()
        };
        let out = run_trial(&md, Variant::Secant, 10007, 4, &cfg).unwrap();
        assert_eq!(out.report.count, 1);
        let found = &out.conics[0];
        assert!(verify_conic(&found.ci, &found.conic));
        let s = restrict_to_plane(&found.ci.sections[0], &found.conic.plane);
        let (q, r) = s.div_rem(&found.conic.form).unwrap();
        assert!(r.is_zero());
        assert!(q.is_constant());
        let k = &found.field;
        let mut bad = found.conic.clone();
        bad.form.add_term(Monomial::new(vec![0, 2, 0]), k.one());
        assert!(!verify_conic(&found.ci, &bad));
    }

    #[test]
    fn small_prime_rejected() {
        let md = dimension_from_degrees(&[3]).unwrap();
        let cfg = CountConfig::default();
        assert!(matches!(
            run_trial(&md, Variant::Secant, 101, 0, &cfg),
            Err(CountError::PrimeTooSmall { .. })
        ));
    }
}
