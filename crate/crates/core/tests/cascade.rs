use std::collections::HashSet;

use conics_core::conic_system::{
    build_instance, dimension_from_degrees, restrict_to_plane_family, EquationOrigin, Variant, DEFAULT_MAX_RETRIES,
};
use conics_core::counting::{bezout_number, expected_count};
use conics_core::poly::{Field, Monomial, MultiPoly, PrimeField, Ring};

/// Embeds a form in the plane parameters into `nv + 3` variables and
/// multiplies by `x^i z^j y^l`.
fn lift<F: Field>(p: &MultiPoly<F>, nv: usize, xzy: [u32; 3]) -> MultiPoly<F> {
    MultiPoly::from_terms(
        p.ring().clone(),
        nv + 3,
        p.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.extend(xzy);
            (Monomial::new(e), c.clone())
        }),
    )
}

/// Coefficient of `x^a y^{k-a} z^{d-k}` as a form in the plane parameters.
fn coefficient_at<F: Field>(p: &MultiPoly<F>, nv: usize, d: u32, a: u32, k: u32) -> MultiPoly<F> {
    let mut out = MultiPoly::zero(p.ring().clone(), nv);
    for (m, c) in p.terms() {
        let e = m.exponents();
        if e[nv] == a && e[nv + 2] == k - a && e[nv + 1] == d - k {
            out.add_term(Monomial::new(e[..nv].to_vec()), c.clone());
        }
    }
    out
}

fn is_scalar_multiple<F: Field>(p: &MultiPoly<F>, q: &MultiPoly<F>) -> bool {
    let f = p.ring();
    let Some((m, c)) = q.terms().next() else {
        return p.is_zero();
    };
    let ratio = f.div(&p.coeff(m), c).unwrap();
    &q.scale(&ratio) == p
}

/// `s|π − s_C · s̃` is supported exactly on the leftover positions, where
/// it is a multiple of the derived equation.
fn check_residual_support(ds: &[u32], variant: Variant, seed: u64) {
    let md = dimension_from_degrees(ds).unwrap();
    let f = PrimeField::new(10007).unwrap();
    let inst = build_instance(&md, &f, seed, variant, DEFAULT_MAX_RETRIES).unwrap();
    let pr = restrict_to_plane_family(&inst.ci);
    let nv = pr.nvars;
    for (i, &d) in ds.iter().enumerate() {
        let ans = &inst.cascade.ansatz[i];
        let res = &inst.cascade.residuals[i];
        assert_eq!(res.degree, d);
        assert_eq!(res.coeffs.len(), d as usize - 1);
        let mut restricted = MultiPoly::zero(f, nv + 3);
        for k in 0..=d {
            for a in 0..=k {
                restricted = &restricted + &lift(pr.coeff(i, a, k), nv, [a, d - k, k - a]);
            }
        }
        let one = MultiPoly::one(f, nv);
        let last = match variant {
            Variant::Secant => lift(&one, nv, [1, 0, 1]),
            Variant::Tangent => lift(&one, nv, [0, 0, 2]),
        };
        let conic = &(&(&lift(&ans.s2, nv, [0, 2, 0]) + &lift(&ans.s1, nv, [1, 1, 0])) + &lift(&ans.s1p, nv, [0, 1, 1]))
            + &last;
        let mut residual = MultiPoly::zero(f, nv + 3);
        for k in 0..=d - 2 {
            for a in 0..=k {
                residual = &residual + &lift(&res.coeffs[k as usize][a as usize], nv, [a, d - 2 - k, k - a]);
            }
        }
        let diff = &restricted - &(&conic * &residual);
        let leftovers: Vec<(u32, u32, &MultiPoly<PrimeField>)> = inst
            .cascade
            .system
            .equations
            .iter()
            .filter_map(|e| match e.origin {
                EquationOrigin::Universal { system, a, k } if system == i => Some((a, k, &e.poly)),
                _ => None,
            })
            .collect();
        let positions: HashSet<(u32, u32)> = leftovers.iter().map(|&(a, k, _)| (a, k)).collect();
        for k in 0..=d {
            for a in 0..=k {
                let c = coefficient_at(&diff, nv, d, a, k);
                if !positions.contains(&(a, k)) {
                    assert!(c.is_zero(), "{ds:?} {variant} system {i}: nonzero at ({a},{k})");
                }
            }
        }
        for (a, k, eq) in leftovers {
            let c = coefficient_at(&diff, nv, d, a, k);
            assert!(!c.is_zero(), "{ds:?} {variant}: leftover ({a},{k}) vanishes identically");
            assert!(is_scalar_multiple(eq, &c), "{ds:?} {variant}: leftover ({a},{k}) differs");
        }
    }
}

#[test]
fn residuals_supported_on_leftovers() {
    for ds in [&[3][..], &[4], &[5], &[2, 2], &[3, 2], &[2, 2, 2]] {
        for variant in [Variant::Secant, Variant::Tangent] {
            for seed in 0..2 {
                check_residual_support(ds, variant, seed);
            }
        }
    }
}

fn multidegrees(max: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for d in (2..=cap.min(rest)).rev() {
            cur.push(d);
            go(rest - d, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max, max, &mut Vec::new(), &mut out);
    out
}

#[test]
fn profile_matches_prediction() {
    for ds in multidegrees(6) {
        let md = dimension_from_degrees(&ds).unwrap();
        let f = PrimeField::new(10007).unwrap();
        for variant in [Variant::Secant, Variant::Tangent] {
            for seed in 0..5 {
                let inst = build_instance(&md, &f, seed, variant, DEFAULT_MAX_RETRIES).unwrap();
                let sys = &inst.cascade.system;
                let mut got = sys.degree_profile();
                let mut want = md.predicted_profile();
                if variant == Variant::Secant {
                    assert_eq!(got, want, "{ds:?} seed {seed}");
                }
                got.sort_unstable();
                want.sort_unstable();
                assert_eq!(got, want, "{ds:?} {variant} seed {seed}");
                assert_eq!(sys.len(), md.plane_params() - 1, "{ds:?}: square system expected");
                for e in &sys.equations {
                    assert_eq!(e.poly.total_degree(), Some(e.degree));
                    assert!(e.poly.is_homogeneous());
                }
                assert_eq!(bezout_number(sys), expected_count(&ds));
            }
        }
    }
}

#[test]
fn reordered_degrees_give_same_bezout() {
    for ds in multidegrees(9).into_iter().filter(|d| d.len() > 1) {
        let mut rev = ds.clone();
        rev.reverse();
        let a = dimension_from_degrees(&ds).unwrap();
        let b = dimension_from_degrees(&rev).unwrap();
        let prod = |p: Vec<u32>| p.iter().map(|&x| x as u64).product::<u64>();
        assert_eq!(prod(a.predicted_profile()), prod(b.predicted_profile()));
        assert_eq!(a.n(), b.n());
    }
}

#[test]
fn sections_vanish_at_both_points() {
    let f = PrimeField::new(10007).unwrap();
    for ds in [&[3][..], &[2, 2], &[4]] {
        let md = dimension_from_degrees(ds).unwrap();
        let inst = build_instance(&md, &f, 7, Variant::Secant, DEFAULT_MAX_RETRIES).unwrap();
        let nv = md.ambient_dim() + 1;
        let mut p = vec![f.zero(); nv];
        p[0] = f.one();
        let mut q = vec![f.zero(); nv];
        q[nv - 1] = f.one();
        for s in &inst.ci.sections {
            assert!(f.is_zero(&s.eval(&p)) && f.is_zero(&s.eval(&q)));
        }
    }
}
