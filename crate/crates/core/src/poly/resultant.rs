//! Sylvester resultants.

use super::field::Field;
use super::linalg::Matrix;
use super::multi::{Monomial, MultiPoly};
use super::uni::UniPoly;
use super::PolyError;

/// Coefficients of `f` as a polynomial in `var`, highest power first.
fn coefficients_in<F: Field>(f: &MultiPoly<F>, var: usize) -> Vec<MultiPoly<F>> {
    let deg = f.degree_in(var).unwrap_or(0) as usize;
    let nvars = f.nvars();
    let mut out = vec![MultiPoly::zero(f.ring().clone(), nvars); deg + 1];
    for (m, c) in f.terms() {
        let mut e = m.exponents().to_vec();
        let k = e[var] as usize;
        e[var] = 0;
        out[deg - k].add_term(Monomial::new(e), c.clone());
    }
    out
}

/// Sylvester matrix from coefficient lists (highest power first).
pub fn sylvester_matrix<T: Clone>(f: &[T], g: &[T], zero: &T) -> Vec<Vec<T>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        row[i..i + m + 1].clone_from_slice(f);
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        row[i..i + n + 1].clone_from_slice(g);
        rows.push(row);
    }
    rows
}

/// Fraction-free (Bareiss) determinant of a matrix of polynomials.
fn bareiss_det<F: Field>(mut a: Vec<Vec<MultiPoly<F>>>, ring: &F, nvars: usize) -> Result<MultiPoly<F>, PolyError> {
    let n = a.len();
    if n == 0 {
        return Ok(MultiPoly::one(ring.clone(), nvars));
    }
    let mut sign = false;
    let mut prev = MultiPoly::one(ring.clone(), nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(MultiPoly::zero(ring.clone(), nvars));
            };
            a.swap(k, r);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign { -&det } else { det })
}

/// Resultant of `f` and `g` with respect to the variable `var`. The result
/// does not involve `var`.
pub fn sylvester_resultant<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>, var: usize) -> Result<MultiPoly<F>, PolyError> {
    if f.ring() != g.ring() || f.nvars() != g.nvars() {
        return Err(PolyError::RingMismatch);
    }
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let ring = f.ring().clone();
    let nvars = f.nvars();
    let fc = coefficients_in(f, var);
    let gc = coefficients_in(g, var);
    if fc.len() == 1 && gc.len() == 1 {
        return Ok(MultiPoly::one(ring, nvars));
    }
    let zero = MultiPoly::zero(ring.clone(), nvars);
    bareiss_det(sylvester_matrix(&fc, &gc, &zero), &ring, nvars)
}

/// Resultant of two univariate polynomials over a field.
pub fn univariate_resultant<F: Field>(f: &UniPoly<F>, g: &UniPoly<F>) -> F::El {
    let ring = f.ring().clone();
    let fc: Vec<F::El> = f.coeffs().iter().rev().cloned().collect();
    let gc: Vec<F::El> = g.coeffs().iter().rev().cloned().collect();
    if fc.is_empty() || gc.is_empty() {
        return ring.zero();
    }
    let rows = sylvester_matrix(&fc, &gc, &ring.zero());
    if rows.is_empty() {
        return ring.one();
    }
    Matrix::from_rows(ring, rows).det()
}

/// Resultant of two binary forms of the given formal degrees, from their
/// coefficients listed by decreasing power of the first variable.
pub fn binary_form_resultant<F: Field>(field: &F, f: &[F::El], g: &[F::El]) -> F::El {
    let rows = sylvester_matrix(f, g, &field.zero());
    if rows.is_empty() {
        return field.one();
    }
    Matrix::from_rows(field.clone(), rows).det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::{PrimeField, Rationals, Ring};

    fn two_var(terms: &[(i64, &[u32])]) -> MultiPoly<Rationals> {
        MultiPoly::from_int_terms(Rationals, 2, terms)
    }

    #[test]
    fn small_resultants() {
        let f = two_var(&[(1, &[1, 0]), (-1, &[0, 1])]);
        let g = two_var(&[(1, &[1, 0]), (1, &[0, 1])]);
        let r = sylvester_resultant(&f, &g, 0).unwrap();
        // 2y, which is the binary-form value 2 at y = 1
        assert_eq!(r, two_var(&[(2, &[0, 1])]));
        let q = Rationals;
        let v = binary_form_resultant(&q, &[q.from_i64(1), q.from_i64(-1)], &[q.from_i64(1), q.from_i64(1)]);
        assert_eq!(v, q.from_i64(2));

        let f = two_var(&[(1, &[2, 0]), (-1, &[0, 2])]);
        let g = two_var(&[(1, &[1, 0]), (-2, &[0, 1])]);
        let r = sylvester_resultant(&f, &g, 0).unwrap();
        assert_eq!(r, two_var(&[(3, &[0, 2])]));
    }

    #[test]
    fn resultant_specializes() {
        let f = two_var(&[(1, &[2, 0]), (3, &[1, 1]), (-1, &[0, 2]), (2, &[0, 0])]);
        let g = two_var(&[(2, &[1, 0]), (1, &[0, 1]), (-5, &[0, 0])]);
        let r = sylvester_resultant(&f, &g, 0).unwrap();
        let q = Rationals;
        for y in -3..4 {
            let yv = q.from_i64(y);
            let fu = UniPoly::new(q, vec![q.from_i64(2 - y * y), q.from_i64(3 * y), q.one()]);
            let gu = UniPoly::new(q, vec![q.from_i64(y - 5), q.from_i64(2)]);
            assert_eq!(r.eval(&[q.zero(), yv]), univariate_resultant(&fu, &gu));
        }
    }

    proptest::proptest! {
        #[test]
        fn vanishes_iff_common_factor(
            a in proptest::collection::vec(0u64..13, 2..6),
            b in proptest::collection::vec(0u64..13, 2..6),
        ) {
            let f = PrimeField::new(13).unwrap();
            let pa = UniPoly::new(f, a);
            let pb = UniPoly::new(f, b);
            proptest::prop_assume!(pa.degree().unwrap_or(0) > 0 && pb.degree().unwrap_or(0) > 0);
            let r = univariate_resultant(&pa, &pb);
            let common = pa.gcd(&pb).degree().unwrap_or(0) > 0;
            proptest::prop_assert_eq!(f.is_zero(&r), common);
        }
    }
}
