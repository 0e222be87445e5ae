//! Dense matrices over a field.

use super::field::Field;
use super::uni::UniPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::El>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let z = field.zero();
        Self {
            field,
            rows,
            cols,
            data: vec![z; rows * cols],
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, m.field.one());
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::El>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<_> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        Self {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::El {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::El) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &F::El) {
        let idx = i * self.cols + j;
        self.data[idx] = self.field.add(&self.data[idx], v);
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.mul(a, other.get(k, j));
                    out.add_to(i, j, &v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::El]) -> Vec<F::El> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(self.get(i, j), &v[j])))
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !f.is_zero(self.get(r, col))) else {
                continue;
            };
            if pr != row {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, row * self.cols + j);
                }
            }
            let inv = f.inv(self.get(row, col)).expect("nonzero pivot");
            for j in col..self.cols {
                let v = f.mul(self.get(row, j), &inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in col..self.cols {
                    let v = f.sub(self.get(r, j), &f.mul(&factor, self.get(row, j)));
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F::El>> {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> F::El {
        assert_eq!(self.rows, self.cols);
        let f = self.field.clone();
        let mut m = self.clone();
        let n = self.rows;
        let mut det = f.one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !f.is_zero(m.get(r, col))) else {
                return f.zero();
            };
            if pr != col {
                for j in 0..n {
                    m.data.swap(pr * n + j, col * n + j);
                }
                det = f.neg(&det);
            }
            let piv = m.get(col, col).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).expect("nonzero pivot");
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in col..n {
                    let v = f.sub(m.get(r, j), &f.mul(&factor, m.get(col, j)));
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(t I - M)` via reduction to upper
    /// Hessenberg form followed by the standard recurrence.
    pub fn char_poly(&self) -> UniPoly<F> {
        assert_eq!(self.rows, self.cols);
        let f = self.field.clone();
        let n = self.rows;
        let mut h = self.clone();
        // similarity transforms to Hessenberg form
        for col in 0..n.saturating_sub(2) {
            let Some(pr) = (col + 1..n).find(|&r| !f.is_zero(h.get(r, col))) else {
                continue;
            };
            if pr != col + 1 {
                for j in 0..n {
                    h.data.swap(pr * n + j, (col + 1) * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + pr, i * n + col + 1);
                }
            }
            let inv = f.inv(h.get(col + 1, col)).expect("nonzero pivot");
            for r in col + 2..n {
                let factor = f.mul(h.get(r, col), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                // row_r -= factor * row_{col+1}
                for j in 0..n {
                    let v = f.sub(h.get(r, j), &f.mul(&factor, h.get(col + 1, j)));
                    h.set(r, j, v);
                }
                // col_{col+1} += factor * col_r
                for i in 0..n {
                    let v = f.add(h.get(i, col + 1), &f.mul(&factor, h.get(i, r)));
                    h.set(i, col + 1, v);
                }
            }
        }
        // p_k = char poly of leading k x k block
        let t = UniPoly::x(f.clone());
        let mut polys: Vec<UniPoly<F>> = vec![UniPoly::one(f.clone())];
        for k in 0..n {
            let diag = UniPoly::new(f.clone(), vec![f.neg(h.get(k, k))]);
            let mut pk = t.add(&diag).mul(&polys[k]);
            let mut prod = f.one();
            for i in (0..k).rev() {
                prod = f.mul(&prod, h.get(i + 1, i));
                let c = f.mul(&prod, h.get(i, k));
                let term = polys[i].scale(&c);
                pk = pk.sub(&term);
            }
            polys.push(pk);
        }
        polys.pop().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::{PrimeField, Rationals, Ring};

    fn q(rows: &[&[i64]]) -> Matrix<Rationals> {
        Matrix::from_rows(
            Rationals,
            rows.iter()
                .map(|r| r.iter().map(|&v| Rationals.from_i64(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn determinant_and_rank() {
        let m = q(&[&[1, -1], &[1, 1]]);
        assert_eq!(m.det(), Rationals.from_i64(2));
        let s = q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.det(), Rationals.zero());
        let ns = s.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(s.mul_vec(&ns[0]).iter().all(|x| Rationals.is_zero(x)));
    }

    #[test]
    fn char_poly_matches_determinant_expansion() {
        let m = q(&[&[2, 1, 0, 3], &[1, 0, 4, 1], &[0, 5, 1, 2], &[7, 1, 1, 1]]);
        let cp = m.char_poly();
        // evaluate det(tI - M) at several points independently
        for tv in -3..4 {
            let mut shifted = m.clone();
            for i in 0..4 {
                for j in 0..4 {
                    let v = Rationals.neg(m.get(i, j));
                    shifted.set(i, j, v);
                }
                let d = Rationals.add(shifted.get(i, i), &Rationals.from_i64(tv));
                shifted.set(i, i, d);
            }
            assert_eq!(cp.eval(&Rationals.from_i64(tv)), shifted.det());
        }
    }

    #[test]
    fn char_poly_over_prime_field() {
        let f = PrimeField::new(10007).unwrap();
        let m = Matrix::from_rows(f, vec![vec![0, 1], vec![1, 0]]);
        // t^2 - 1
        assert_eq!(m.char_poly(), UniPoly::from_i64s(f, &[-1, 0, 1]));
    }
}
