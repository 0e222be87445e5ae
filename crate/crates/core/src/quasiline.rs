//! Splitting types of restricted tangent bundles on rational curves.
//!
//! For `f: P^1 -> X ⊂ P^N` of degree `e`, the pullback of `T_X` is the only
//! cohomology sheaf of
//!
//! ```text
//! O  --(f_j)-->  O(e)^{N+1}  --(∂s_i/∂x_j ∘ f)-->  ⊕_i O(e d_i)
//! ```
//!
//! so `h^0` and `h^1` of its twists are hypercohomology groups of this
//! complex. They are computed from the two-chart Čech bicomplex, truncated to
//! a window of Laurent exponents that is large enough to be
//! quasi-isomorphic to the full one.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conic_system::{CISections, ExplicitConic, Variant};
use crate::counting::{solve_homogeneous, CountError, Method};
use crate::poly::{ExtField, Field, FiniteField, Matrix, Monomial, MultiPoly, PrimeField, UniPoly};

#[derive(Debug, Clone, Error)]
pub enum QuasiLineError {
    #[error("map entry ({row}, {col}) at position {position} is not a form of degree {expected}")]
    BadEntry { position: usize, row: usize, col: usize, expected: i64 },
    #[error("maps of the complex do not compose to zero")]
    NotAComplex,
    #[error("complex has cohomology outside degree zero (h^-1 = {h_minus1}, h^2 = {h2})")]
    NotASheaf { h_minus1: usize, h2: usize },
    #[error("curve does not lie on the complete intersection")]
    NotOnVariety,
    #[error("coordinate forms have a common zero")]
    BasePoint,
    #[error("h^0 profile is not that of a split bundle")]
    InconsistentProfile,
    #[error("no line through the point found after {0} attempts")]
    NoLineFound(u32),
    #[error(transparent)]
    Count(#[from] CountError),
}

/// A three-term complex of split bundles on `P^1` in positions -1, 0, 1.
/// Entry `maps[p][i][j]` maps summand `j` at position `p - 1` to summand `i`
/// at position `p`, as a binary form in `(u, v)`.
#[derive(Clone, Debug)]
pub struct SplitComplex<F: Field> {
    pub field: F,
    pub twists: [Vec<i64>; 3],
    pub maps: [Vec<Vec<MultiPoly<F>>>; 2],
}

impl<F: Field> SplitComplex<F> {
    pub fn new(field: F, twists: [Vec<i64>; 3], maps: [Vec<Vec<MultiPoly<F>>>; 2]) -> Result<Self, QuasiLineError> {
        for (p, map) in maps.iter().enumerate() {
            let (src, dst) = (&twists[p], &twists[p + 1]);
            let shape_ok = map.len() == dst.len() && map.iter().all(|row| row.len() == src.len());
            if !shape_ok {
                return Err(QuasiLineError::NotAComplex);
            }
            for (i, row) in map.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    let expected = dst[i] - src[j];
                    let ok = e.nvars() == 2
                        && (e.is_zero() || (e.is_homogeneous() && e.total_degree().map(i64::from) == Some(expected)));
                    if !ok {
                        return Err(QuasiLineError::BadEntry {
                            position: p,
                            row: i,
                            col: j,
                            expected,
                        });
                    }
                }
            }
        }
        let cx = Self { field, twists, maps };
        for i in 0..cx.twists[2].len() {
            for l in 0..cx.twists[0].len() {
                let mut acc = MultiPoly::zero(cx.field.clone(), 2);
                for j in 0..cx.twists[1].len() {
                    acc = &acc + &(&cx.maps[1][i][j] * &cx.maps[0][j][l]);
                }
                if !acc.is_zero() {
                    return Err(QuasiLineError::NotAComplex);
                }
            }
        }
        Ok(cx)
    }

    /// Rank of the (virtual) bundle represented by the complex.
    pub fn rank(&self) -> i64 {
        self.twists[1].len() as i64 - self.twists[0].len() as i64 - self.twists[2].len() as i64
    }

    /// Degree of the (virtual) bundle represented by the complex.
    pub fn degree(&self) -> i64 {
        let s = |v: &Vec<i64>| v.iter().sum::<i64>();
        s(&self.twists[1]) - s(&self.twists[0]) - s(&self.twists[2])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyDims {
    pub twist: i64,
    pub h0: usize,
    pub h1: usize,
    pub h_minus1: usize,
    pub h2: usize,
}

impl CohomologyDims {
    /// `h0 - h1 = rank (m + 1) + degree`.
    pub fn riemann_roch_holds(&self, rank: i64, degree: i64) -> bool {
        self.h0 as i64 - self.h1 as i64 == rank * (self.twist + 1) + degree
    }
}

/// Exponent windows of one position of the complex on the three Čech opens.
struct Windows {
    /// `(lo, len)` per summand, for `U_u`, `U_v`, `U_uv`.
    u: Vec<(i64, usize)>,
    v: Vec<(i64, usize)>,
    uv: Vec<(i64, usize)>,
}

impl Windows {
    fn new(twists: &[i64], l: i64) -> Self {
        let span = |lo: i64, hi: i64| (lo, (hi - lo + 1).max(0) as usize);
        Windows {
            u: twists.iter().map(|&k| span(-l, k)).collect(),
            v: twists.iter().map(|&k| span(0, k + l)).collect(),
            uv: twists.iter().map(|&k| span(-l, k + l)).collect(),
        }
    }

    fn size(ws: &[(i64, usize)]) -> usize {
        ws.iter().map(|w| w.1).sum()
    }

    fn c0(&self) -> usize {
        Self::size(&self.u) + Self::size(&self.v)
    }

    fn c1(&self) -> usize {
        Self::size(&self.uv)
    }
}

fn offsets(ws: &[(i64, usize)]) -> Vec<usize> {
    let mut off = Vec::with_capacity(ws.len());
    let mut acc = 0;
    for w in ws {
        off.push(acc);
        acc += w.1;
    }
    off
}

/// Adds `sign * forms` acting on Laurent monomials from window `src` to
/// window `dst` into the block of `mat` at (`row0`, `col0`).
#[allow(clippy::too_many_arguments)]
fn add_form_block<F: Field>(
    mat: &mut Matrix<F>,
    row0: usize,
    col0: usize,
    src: &[(i64, usize)],
    dst: &[(i64, usize)],
    forms: &[Vec<MultiPoly<F>>],
    negate: bool,
) {
    let f = mat.field().clone();
    let (so, doff) = (offsets(src), offsets(dst));
    for (i, row) in forms.iter().enumerate() {
        for (j, form) in row.iter().enumerate() {
            for (m, c) in form.terms() {
                let shift = m.exponents()[0] as i64;
                let c = if negate { f.neg(c) } else { c.clone() };
                for t in 0..src[j].1 {
                    let a = src[j].0 + t as i64;
                    let target = a + shift - dst[i].0;
                    debug_assert!(target >= 0 && (target as usize) < dst[i].1);
                    mat.add_to(row0 + doff[i] + target as usize, col0 + so[j] + t, &c);
                }
            }
        }
    }
}

/// Čech difference `(s_u, s_v) -> s_v - s_u` from `C^0` to `C^1`.
fn add_cech_block<F: Field>(mat: &mut Matrix<F>, row0: usize, col0: usize, w: &Windows) {
    let f = mat.field().clone();
    let (one, minus) = (f.one(), f.neg(&f.one()));
    let (ou, ov, ouv) = (offsets(&w.u), offsets(&w.v), offsets(&w.uv));
    let vbase = Windows::size(&w.u);
    for s in 0..w.uv.len() {
        for t in 0..w.u[s].1 {
            let a = w.u[s].0 + t as i64;
            let r = (a - w.uv[s].0) as usize;
            mat.add_to(row0 + ouv[s] + r, col0 + ou[s] + t, &minus);
        }
        for t in 0..w.v[s].1 {
            let a = w.v[s].0 + t as i64;
            let r = (a - w.uv[s].0) as usize;
            mat.add_to(row0 + ouv[s] + r, col0 + vbase + ov[s] + t, &one);
        }
    }
}

/// Chartwise map on `C^0`.
fn add_c0_block<F: Field>(mat: &mut Matrix<F>, row0: usize, col0: usize, src: &Windows, dst: &Windows, forms: &[Vec<MultiPoly<F>>]) {
    add_form_block(mat, row0, col0, &src.u, &dst.u, forms, false);
    add_form_block(
        mat,
        row0 + Windows::size(&dst.u),
        col0 + Windows::size(&src.u),
        &src.v,
        &dst.v,
        forms,
        false,
    );
}

/// Hypercohomology of `cx ⊗ O(m)` in degrees -1, 0, 1, 2.
pub fn hypercohomology_dims<F: Field>(cx: &SplitComplex<F>, m: i64) -> CohomologyDims {
    let tw: Vec<Vec<i64>> = cx.twists.iter().map(|v| v.iter().map(|k| k + m).collect()).collect();
    let kmin = tw.iter().flatten().copied().min().unwrap_or(0);
    let l = (-kmin - 1).max(0) + 1;
    let w: Vec<Windows> = tw.iter().map(|t| Windows::new(t, l)).collect();
    let f = cx.field.clone();
    let (c0, c1): (Vec<usize>, Vec<usize>) = w.iter().map(|x| (x.c0(), x.c1())).unzip();
    let tot = [c0[0], c1[0] + c0[1], c1[1] + c0[2], c1[2]];

    // D^-1 = [δ; d]
    let mut dm1 = Matrix::zeros(f.clone(), tot[1], tot[0]);
    add_cech_block(&mut dm1, 0, 0, &w[0]);
    add_c0_block(&mut dm1, c1[0], 0, &w[0], &w[1], &cx.maps[0]);

    // D^0 = [[-d, δ], [0, d]]
    let mut d0 = Matrix::zeros(f.clone(), tot[2], tot[1]);
    add_form_block(&mut d0, 0, 0, &w[0].uv, &w[1].uv, &cx.maps[0], true);
    add_cech_block(&mut d0, 0, c1[0], &w[1]);
    add_c0_block(&mut d0, c1[1], c1[0], &w[1], &w[2], &cx.maps[1]);

    // D^1 = [-d, δ]
    let mut d1 = Matrix::zeros(f, tot[3], tot[2]);
    add_form_block(&mut d1, 0, 0, &w[1].uv, &w[2].uv, &cx.maps[1], true);
    add_cech_block(&mut d1, 0, c1[1], &w[2]);

    let (r_m1, r0, r1) = (dm1.rank(), d0.rank(), d1.rank());
    CohomologyDims {
        twist: m,
        h_minus1: tot[0] - r_m1,
        h0: tot[1] - r0 - r_m1,
        h1: tot[2] - r1 - r0,
        h2: tot[3] - r1,
    }
}

/// A nonincreasing list of integers `a_i` describing `⊕ O(a_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SplittingType(Vec<i64>);

impl SplittingType {
    pub fn new(mut parts: Vec<i64>) -> Self {
        parts.sort_by(|a, b| b.cmp(a));
        SplittingType(parts)
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `h^0(⊕ O(a_i + m))`.
    pub fn h0(&self, m: i64) -> usize {
        self.0.iter().map(|&a| (a + m + 1).max(0) as usize).sum()
    }

    /// Recovers the splitting from `h^0` at consecutive twists `m_lo..=m_hi`,
    /// provided `h^0(m_lo) = 0` and the top twist sees every summand.
    pub fn from_h0_profile(m_lo: i64, h0: &[usize], rank: usize) -> Option<Self> {
        if h0.len() < 2 || h0[0] != 0 {
            return None;
        }
        // jumps[t] = #{a_i >= -(m_lo + t)}
        let jumps: Vec<usize> = h0.windows(2).map(|w| w[1].checked_sub(w[0])).collect::<Option<_>>()?;
        if jumps.windows(2).any(|w| w[1] < w[0]) || *jumps.last()? != rank {
            return None;
        }
        let mut parts = Vec::with_capacity(rank);
        let mut prev = 0;
        for (t, &j) in jumps.iter().enumerate() {
            let m = m_lo + 1 + t as i64;
            for _ in prev..j {
                parts.push(-m);
            }
            prev = j;
        }
        let st = SplittingType::new(parts);
        (0..h0.len()).all(|t| st.h0(m_lo + t as i64) == h0[t]).then_some(st)
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `{2, 1^{n-1}}`.
pub fn quasi_line_splitting(n: u32) -> SplittingType {
    let mut parts = vec![2];
    parts.extend(std::iter::repeat(1).take(n.saturating_sub(1) as usize));
    SplittingType::new(parts)
}

/// `{2, 1^{(n-3)/2}, 0^{(n+1)/2}}`, the splitting along a line through a
/// general point.
pub fn expected_line_splitting(n: u32) -> SplittingType {
    let mut parts = vec![2];
    parts.extend(std::iter::repeat(1).take(n.saturating_sub(3) as usize / 2));
    parts.extend(std::iter::repeat(0).take((n as usize + 1) / 2));
    SplittingType::new(parts)
}

/// True iff the splitting is `{2, 1, …, 1}`.
pub fn is_quasi_line(st: &SplittingType) -> bool {
    match st.parts().split_first() {
        Some((&2, rest)) => rest.iter().all(|&a| a == 1),
        _ => false,
    }
}

/// A map `P^1 -> P^N` given by binary forms of a common degree.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalCurveMap<F: Field> {
    pub degree: u32,
    pub coords: Vec<MultiPoly<F>>,
}

impl<F: Field> RationalCurveMap<F> {
    pub fn new(coords: Vec<MultiPoly<F>>) -> Result<Self, QuasiLineError> {
        let degree = coords.iter().find_map(MultiPoly::total_degree).ok_or(QuasiLineError::BasePoint)?;
        if coords
            .iter()
            .any(|c| c.nvars() != 2 || !(c.is_zero() || (c.is_homogeneous() && c.total_degree() == Some(degree))))
        {
            return Err(QuasiLineError::BasePoint);
        }
        let map = Self { degree, coords };
        if map.has_base_point() {
            return Err(QuasiLineError::BasePoint);
        }
        Ok(map)
    }

    /// Whether the coordinate forms share a zero on `P^1`.
    pub fn has_base_point(&self) -> bool {
        let f = self.coords[0].ring().clone();
        let e = self.degree as usize;
        // [1:0] is a base point iff every coefficient of u^e vanishes
        let top = Monomial::new(vec![self.degree, 0]);
        if self.coords.iter().all(|c| f.is_zero(&c.coeff(&top))) {
            return true;
        }
        let mut g = UniPoly::zero(f.clone());
        for c in &self.coords {
            let coeffs = (0..=e).map(|i| c.coeff(&Monomial::new(vec![i as u32, (e - i) as u32]))).collect();
            g = g.gcd(&UniPoly::new(f.clone(), coeffs));
        }
        g.degree().unwrap_or(0) > 0
    }

    pub fn lands_in(&self, ci: &CISections<F>) -> bool {
        ci.sections.iter().all(|s| s.compose(&self.coords).is_zero())
    }
}

/// The Euler/Jacobian complex of `ci` pulled back along `f`.
pub fn euler_jacobian_complex<F: Field>(ci: &CISections<F>, f: &RationalCurveMap<F>) -> Result<SplitComplex<F>, QuasiLineError> {
    if !f.lands_in(ci) {
        return Err(QuasiLineError::NotOnVariety);
    }
    let e = f.degree as i64;
    let nv = f.coords.len();
    let euler: Vec<Vec<MultiPoly<F>>> = f.coords.iter().map(|c| vec![c.clone()]).collect();
    let jacobian: Vec<Vec<MultiPoly<F>>> = ci
        .sections
        .iter()
        .map(|s| (0..nv).map(|j| s.derivative(j).compose(&f.coords)).collect())
        .collect();
    let twists = [
        vec![0],
        vec![e; nv],
        ci.multidegree.degrees().iter().map(|&d| e * d as i64).collect(),
    ];
    SplitComplex::new(ci.field.clone(), twists, [euler, jacobian])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub curve_degree: u32,
    pub rank: i64,
    pub degree: i64,
    pub splitting: SplittingType,
    pub quasi_line: bool,
    pub riemann_roch_ok: bool,
    pub profile: Vec<CohomologyDims>,
}

/// Splitting type of `f^* T_X`, computed from `h^0` of enough twists.
pub fn splitting_type<F: Field>(ci: &CISections<F>, f: &RationalCurveMap<F>) -> Result<SplittingReport, QuasiLineError> {
    let cx = euler_jacobian_complex(ci, f)?;
    splitting_of_complex(&cx, f.degree)
}

pub fn splitting_of_complex<F: Field>(cx: &SplitComplex<F>, curve_degree: u32) -> Result<SplittingReport, QuasiLineError> {
    let rank = cx.rank();
    let degree = cx.degree();
    if rank <= 0 {
        return Err(QuasiLineError::InconsistentProfile);
    }
    let at = |m: i64| -> Result<CohomologyDims, QuasiLineError> {
        let d = hypercohomology_dims(cx, m);
        if d.h_minus1 != 0 || d.h2 != 0 {
            return Err(QuasiLineError::NotASheaf {
                h_minus1: d.h_minus1,
                h2: d.h2,
            });
        }
        Ok(d)
    };
    let mut lo = -5i64;
    let mut hi = 1i64;
    let mut dims: Vec<CohomologyDims> = (lo..=hi).map(at).collect::<Result<_, _>>()?;
    // extend downwards until h^0 vanishes, upwards until every summand is seen
    while dims[0].h0 != 0 {
        lo -= 1;
        dims.insert(0, at(lo)?);
    }
    loop {
        let n = dims.len();
        let jump = dims[n - 1].h0 as i64 - dims[n - 2].h0 as i64;
        if jump == rank && dims[n - 1].h1 == 0 {
            break;
        }
        if hi - lo > 200 {
            return Err(QuasiLineError::InconsistentProfile);
        }
        hi += 1;
        dims.push(at(hi)?);
    }
    let h0: Vec<usize> = dims.iter().map(|d| d.h0).collect();
    let st = SplittingType::from_h0_profile(lo, &h0, rank as usize).ok_or(QuasiLineError::InconsistentProfile)?;
    let rr = dims.iter().all(|d| d.riemann_roch_holds(rank, degree));
    Ok(SplittingReport {
        curve_degree,
        rank,
        degree,
        quasi_line: is_quasi_line(&st),
        splitting: st,
        riemann_roch_ok: rr,
        profile: dims,
    })
}

/// Parametrization of an explicit conic by the pencil of lines through `p`.
pub fn conic_map<F: Field>(conic: &ExplicitConic<F>, variant: Variant) -> Result<RationalCurveMap<F>, QuasiLineError> {
    let f = conic.form.ring().clone();
    let coeff = |e: [u32; 3]| conic.form.coeff(&Monomial::new(e.to_vec()));
    let (s2, s1, s1p) = (coeff([0, 2, 0]), coeff([1, 1, 0]), coeff([0, 1, 1]));
    let form = |terms: &[(F::El, [u32; 2])]| MultiPoly::from_terms(f.clone(), 2, terms.iter().map(|(c, e)| (Monomial::new(e.to_vec()), c.clone())));
    let one = f.one();
    let (x, z, y) = match variant {
        Variant::Secant => (
            // -σ(s2 σ + s1' τ), σ(s1 σ + τ), τ(s1 σ + τ)
            form(&[(f.neg(&s2), [2, 0]), (f.neg(&s1p), [1, 1])]),
            form(&[(s1.clone(), [2, 0]), (one.clone(), [1, 1])]),
            form(&[(s1, [1, 1]), (one, [0, 2])]),
        ),
        Variant::Tangent => (
            // -(s2 σ² + s1' στ + τ²), s1 σ², s1 στ
            form(&[(f.neg(&s2), [2, 0]), (f.neg(&s1p), [1, 1]), (f.neg(&one), [0, 2])]),
            form(&[(s1.clone(), [2, 0])]),
            form(&[(s1, [1, 1])]),
        ),
    };
    let mut coords = vec![x];
    coords.extend(conic.plane.iter().map(|a| z.scale(a)));
    coords.push(y);
    RationalCurveMap::new(coords)
}

/// A line through `p = [1:0:…:0]` in direction `w`: `[u : v w_1 : … : v w_N]`.
pub fn line_map<F: Field>(field: &F, w: &[F::El]) -> Result<RationalCurveMap<F>, QuasiLineError> {
    let u = MultiPoly::var(field.clone(), 2, 0);
    let v = MultiPoly::var(field.clone(), 2, 1);
    let mut coords = vec![u];
    coords.extend(w.iter().map(|c| v.scale(c)));
    RationalCurveMap::new(coords)
}

/// Equations on directions `w ∈ P^{N-1}` of lines through `p` on `X`: the
/// coefficients of `s^k t^{d-k}`, `k < d`, in `s_i(s p + t w)`.
pub fn lines_through_p_equations<F: Field>(ci: &CISections<F>) -> Vec<MultiPoly<F>> {
    let nv = ci.multidegree.ambient_dim();
    let mut out = Vec::new();
    for (s, &d) in ci.sections.iter().zip(ci.multidegree.degrees()) {
        let mut by_k: Vec<MultiPoly<F>> = vec![MultiPoly::zero(ci.field.clone(), nv); d as usize + 1];
        for (m, c) in s.terms() {
            let e = m.exponents();
            by_k[e[0] as usize].add_term(Monomial::new(e[1..].to_vec()), c.clone());
        }
        out.extend(by_k.into_iter().take(d as usize));
    }
    out
}

/// A line through `p` on `X` defined over the smallest available extension,
/// cut down to finitely many by `(n-3)/2` random hyperplanes.
pub struct FoundLine {
    pub field: ExtField,
    pub ci: CISections<ExtField>,
    pub map: RationalCurveMap<ExtField>,
    pub attempts: u32,
}

pub fn find_line_through_p(ci: &CISections<PrimeField>, seed: u64, max_attempts: u32) -> Result<FoundLine, QuasiLineError> {
    let f = ci.field;
    let nv = ci.multidegree.ambient_dim();
    let extra = (ci.multidegree.n() as usize).saturating_sub(3) / 2;
    let base = lines_through_p_equations(ci);
    for attempt in 0..max_attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64).rotate_left(7));
        let mut eqs = base.clone();
        for _ in 0..extra {
            let mut h = MultiPoly::zero(f, nv);
            for j in 0..nv {
                h.add_term(Monomial::var(nv, j), f.random(&mut rng));
            }
            eqs.push(h);
        }
        let Ok(sol) = solve_homogeneous(f, nv, &eqs, Method::Auto, &mut rng, seed) else {
            continue;
        };
        if !sol.is_squarefree() {
            continue;
        }
        let mut orbits = sol.orbits(crate::counting::MAX_RECONSTRUCTION_DEGREE)?;
        orbits.sort_by_key(|o| o.degree);
        for o in orbits {
            let (Some(k), Some(w)) = (o.field, o.point) else {
                continue;
            };
            let lifted = ci.map_field(&k, |c| k.embed(*c));
            let Ok(map) = line_map(&k, &w) else {
                continue;
            };
            if map.lands_in(&lifted) {
                return Ok(FoundLine {
                    field: k,
                    ci: lifted,
                    map,
                    attempts: attempt + 1,
                });
            }
        }
    }
    Err(QuasiLineError::NoLineFound(max_attempts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Rationals;

    fn single(field: Rationals, k: i64) -> SplitComplex<Rationals> {
        SplitComplex::new(field, [vec![], vec![k], vec![]], [vec![vec![]], vec![]]).unwrap()
    }

    #[test]
    fn line_bundle_cohomology() {
        for d in 0..5 {
            let c = hypercohomology_dims(&single(Rationals, d), 0);
            assert_eq!((c.h0, c.h1), (d as usize + 1, 0));
        }
        let c = hypercohomology_dims(&single(Rationals, -2), 0);
        assert_eq!((c.h0, c.h1), (0, 1));
        let c = hypercohomology_dims(&single(Rationals, -5), 0);
        assert_eq!((c.h0, c.h1), (0, 4));
    }

    #[test]
    fn euler_sequence_gives_tangent_bundle() {
        // O -> O(1)^2 on P^1: the quotient is T_{P^1} = O(2)
        let q = Rationals;
        let u = MultiPoly::var(q, 2, 0);
        let v = MultiPoly::var(q, 2, 1);
        let cx = SplitComplex::new(q, [vec![0], vec![1, 1], vec![]], [vec![vec![u], vec![v]], vec![]]).unwrap();
        let r = splitting_of_complex(&cx, 1).unwrap();
        assert_eq!(r.splitting, SplittingType::new(vec![2]));
        assert!(r.riemann_roch_ok);
    }

    #[test]
    fn non_complex_rejected() {
        let q = Rationals;
        let u = MultiPoly::var(q, 2, 0);
        let one = MultiPoly::one(q, 2);
        let r = SplitComplex::new(q, [vec![0], vec![1], vec![1]], [vec![vec![u]], vec![vec![one]]]);
        assert!(matches!(r, Err(QuasiLineError::NotAComplex)));
    }

    #[test]
    fn quasi_line_predicate() {
        assert!(is_quasi_line(&SplittingType::new(vec![1, 2, 1])));
        assert!(!is_quasi_line(&SplittingType::new(vec![2, 0, 0])));
        assert!(!is_quasi_line(&SplittingType::new(vec![3, 1, 0])));
    }

    #[test]
    fn profile_round_trip() {
        for parts in [vec![2, 1, 1], vec![2, 0, 0], vec![3, -1, -4, 0], vec![0]] {
            let st = SplittingType::new(parts);
            let lo = -st.parts()[0] - 1;
            let hi = -st.parts().last().unwrap() + 1;
            let h0: Vec<usize> = (lo..=hi).map(|m| st.h0(m)).collect();
            assert_eq!(SplittingType::from_h0_profile(lo, &h0, st.rank()), Some(st));
        }
    }
}
