//! Buchberger's algorithm and zero-dimensional quotient machinery.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::linalg::Matrix;
use super::multi::{Monomial, MultiPoly};
use super::uni::UniPoly;
use super::PolyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Lex => ea.cmp(eb),
            MonomialOrder::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in ea.iter().zip(eb).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// Polynomial as a list of terms sorted descending in a fixed order.
#[derive(Clone, Debug)]
struct SortedPoly<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E: Clone> SortedPoly<E> {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
}

fn to_sorted<F: Field>(p: &MultiPoly<F>, order: MonomialOrder) -> SortedPoly<F::El> {
    let mut terms: Vec<_> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    SortedPoly { terms }
}

fn to_multi<F: Field>(p: &SortedPoly<F::El>, field: &F, nvars: usize) -> MultiPoly<F> {
    MultiPoly::from_terms(field.clone(), nvars, p.terms.iter().cloned())
}

struct Engine<'a, F: Field> {
    field: &'a F,
    order: MonomialOrder,
}

impl<F: Field> Engine<'_, F> {
    /// `a - c * m * b` where the leading terms are expected to cancel.
    fn sub_mul(&self, a: &[(Monomial, F::El)], c: &F::El, m: &Monomial, b: &[(Monomial, F::El)]) -> Vec<(Monomial, F::El)> {
        let f = self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let shifted = |k: usize| (m.mul(&b[k].0), f.mul(c, &b[k].1));
        let mut next_b = if b.is_empty() { None } else { Some(shifted(0)) };
        while i < a.len() || next_b.is_some() {
            match (&next_b, a.get(i)) {
                (Some((bm, bc)), Some((am, ac))) => match self.order.cmp(am, bm) {
                    Ordering::Greater => {
                        out.push((am.clone(), ac.clone()));
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push((bm.clone(), f.neg(bc)));
                        j += 1;
                        next_b = (j < b.len()).then(|| shifted(j));
                    }
                    Ordering::Equal => {
                        let v = f.sub(ac, bc);
                        if !f.is_zero(&v) {
                            out.push((am.clone(), v));
                        }
                        i += 1;
                        j += 1;
                        next_b = (j < b.len()).then(|| shifted(j));
                    }
                },
                (Some((bm, bc)), None) => {
                    out.push((bm.clone(), f.neg(bc)));
                    j += 1;
                    next_b = (j < b.len()).then(|| shifted(j));
                }
                (None, Some((am, ac))) => {
                    out.push((am.clone(), ac.clone()));
                    i += 1;
                }
                (None, None) => break,
            }
        }
        out
    }

    /// Full reduction of `p` modulo monic `basis`.
    fn reduce(&self, p: Vec<(Monomial, F::El)>, basis: &[SortedPoly<F::El>]) -> Vec<(Monomial, F::El)> {
        let mut p = p;
        let mut i = 0;
        while i < p.len() {
            let m = &p[i].0;
            if let Some(g) = basis.iter().find(|g| g.lm().divides(m)) {
                let q = g.lm().quotient_of(m);
                let c = p[i].1.clone();
                let tail = self.sub_mul(&p[i..], &c, &q, &g.terms);
                p.truncate(i);
                p.extend(tail);
            } else {
                i += 1;
            }
        }
        p
    }

    fn monic(&self, mut p: Vec<(Monomial, F::El)>) -> SortedPoly<F::El> {
        let inv = self.field.inv(&p[0].1).expect("nonzero leading coefficient");
        for t in &mut p {
            t.1 = self.field.mul(&t.1, &inv);
        }
        SortedPoly { terms: p }
    }

    fn spoly(&self, f: &SortedPoly<F::El>, g: &SortedPoly<F::El>) -> Vec<(Monomial, F::El)> {
        let l = f.lm().lcm(g.lm());
        let mf = f.lm().quotient_of(&l);
        let mg = g.lm().quotient_of(&l);
        let one = self.field.one();
        let scaled_f: Vec<_> = f.terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
        self.sub_mul(&scaled_f, &one, &mg, &g.terms)
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    field: F,
    nvars: usize,
    order: MonomialOrder,
    polys: Vec<SortedPoly<F::El>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientCount {
    Finite(usize),
    Infinite,
}

/// Reduced Gröbner basis of the ideal generated by `system`.
pub fn groebner_basis<F: Field>(system: &[MultiPoly<F>], order: MonomialOrder) -> Result<GroebnerBasis<F>, PolyError> {
    let first = system.first().ok_or(PolyError::EmptySystem)?;
    let field = first.ring().clone();
    let nvars = first.nvars();
    if system.iter().any(|p| p.nvars() != nvars || *p.ring() != field) {
        return Err(PolyError::RingMismatch);
    }
    let eng = Engine { field: &field, order };
    let mut basis: Vec<SortedPoly<F::El>> = Vec::new();
    // pending pairs keyed by (lcm degree, i, j) for deterministic selection
    let mut pending: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();

    let insert = |basis: &mut Vec<SortedPoly<F::El>>,
                      pending: &mut BTreeSet<(u32, usize, usize)>,
                      pending_set: &mut HashSet<(usize, usize)>,
                      h: SortedPoly<F::El>| {
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let deg = g.lm().lcm(h.lm()).degree();
            pending.insert((deg, i, k));
            pending_set.insert((i, k));
        }
        basis.push(h);
    };

    for p in system {
        let r = eng.reduce(to_sorted(p, order).terms, &basis);
        if !r.is_empty() {
            let h = eng.monic(r);
            insert(&mut basis, &mut pending, &mut pending_set, h);
        }
    }

    while let Some(&key) = pending.iter().next() {
        pending.remove(&key);
        let (_, i, j) = key;
        pending_set.remove(&(i, j));
        let (gi, gj) = (&basis[i], &basis[j]);
        // product criterion
        if gi.lm().is_coprime(gj.lm()) {
            continue;
        }
        // chain criterion
        let l = gi.lm().lcm(gj.lm());
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !pending_set.contains(&(i.min(k), i.max(k)))
                && !pending_set.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = eng.spoly(gi, gj);
        let r = eng.reduce(s, &basis);
        if !r.is_empty() {
            let h = eng.monic(r);
            insert(&mut basis, &mut pending, &mut pending_set, h);
        }
    }

    // minimize: drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<SortedPoly<F::El>> = Vec::new();
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for g in basis {
        if !keep.iter().any(|k| k.lm().divides(g.lm())) {
            keep.push(g);
        }
    }
    // interreduce tails
    let mut reduced = Vec::with_capacity(keep.len());
    for idx in 0..keep.len() {
        let others: Vec<SortedPoly<F::El>> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != idx)
            .map(|(_, g)| g.clone())
            .collect();
        let head = keep[idx].terms[0].clone();
        let tail = eng.reduce(keep[idx].terms[1..].to_vec(), &others);
        let mut terms = vec![head];
        terms.extend(tail);
        reduced.push(SortedPoly { terms });
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    Ok(GroebnerBasis {
        field,
        nvars,
        order,
        polys: reduced,
    })
}

impl<F: Field> GroebnerBasis<F> {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polys(&self) -> Vec<MultiPoly<F>> {
        self.polys.iter().map(|p| to_multi(p, &self.field, self.nvars)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p.lm().clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|p| p.lm().degree() == 0)
    }

    pub fn normal_form(&self, p: &MultiPoly<F>) -> MultiPoly<F> {
        let eng = Engine {
            field: &self.field,
            order: self.order,
        };
        let r = eng.reduce(to_sorted(p, self.order).terms, &self.polys);
        to_multi(&SortedPoly { terms: r }, &self.field, self.nvars)
    }

    pub fn contains(&self, p: &MultiPoly<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Monomials outside the leading-term ideal, ascending in the basis
    /// order; `None` if there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let lms = self.leading_monomials();
        let zero_dim = (0..self.nvars).all(|v| {
            lms.iter().any(|m| {
                let e = m.exponents();
                e[v] > 0 && e.iter().enumerate().all(|(i, &x)| i == v || x == 0)
            })
        });
        if !zero_dim {
            return None;
        }
        let is_standard = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
        let mut out = Vec::new();
        let one = Monomial::one(self.nvars);
        if !is_standard(&one) {
            return Some(out);
        }
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut queue = VecDeque::from([one.clone()]);
        seen.insert(one);
        while let Some(m) = queue.pop_front() {
            for v in 0..self.nvars {
                let next = m.mul(&Monomial::var(self.nvars, v));
                if is_standard(&next) && seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
            out.push(m);
        }
        out.sort_by(|a, b| self.order.cmp(a, b));
        Some(out)
    }

    pub fn quotient_count(&self) -> QuotientCount {
        match self.standard_monomials() {
            Some(v) => QuotientCount::Finite(v.len()),
            None => QuotientCount::Infinite,
        }
    }

    /// Matrix of multiplication by `p` on the quotient, in the standard
    /// monomial basis: column `j` holds the normal form of `p * basis[j]`.
    pub fn multiplication_matrix(&self, p: &MultiPoly<F>) -> Result<(Vec<Monomial>, Matrix<F>), PolyError> {
        let basis = self.standard_monomials().ok_or(PolyError::PositiveDimensional)?;
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let n = basis.len();
        let mut mat = Matrix::zeros(self.field.clone(), n, n);
        let one = self.field.one();
        for (j, b) in basis.iter().enumerate() {
            let nf = self.normal_form(&p.mul_monomial(b, &one));
            for (m, c) in nf.terms() {
                let i = index[m];
                mat.set(i, j, c.clone());
            }
        }
        Ok((basis, mat))
    }

    /// Characteristic polynomial of multiplication by `linear_form` on the
    /// quotient ring. Its degree equals the quotient dimension.
    pub fn eliminant_of_linear_form(&self, linear_form: &MultiPoly<F>) -> Result<UniPoly<F>, PolyError> {
        let (_, m) = self.multiplication_matrix(linear_form)?;
        Ok(m.char_poly())
    }
}

/// Count of standard monomials, or `Infinite` for positive-dimensional ideals.
pub fn quotient_count<F: Field>(basis: &GroebnerBasis<F>) -> QuotientCount {
    basis.quotient_count()
}

/// See [`GroebnerBasis::eliminant_of_linear_form`].
pub fn eliminant_of_linear_form<F: Field>(basis: &GroebnerBasis<F>, linear_form: &MultiPoly<F>) -> Result<UniPoly<F>, PolyError> {
    basis.eliminant_of_linear_form(linear_form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::{PrimeField, Rationals, Ring};

    fn poly(terms: &[(i64, &[u32])]) -> MultiPoly<Rationals> {
        MultiPoly::from_int_terms(Rationals, 2, terms)
    }

    #[test]
    fn already_reduced_points() {
        let sys = vec![poly(&[(1, &[1, 0]), (-1, &[0, 0])]), poly(&[(1, &[0, 1]), (-2, &[0, 0])])];
        let gb = groebner_basis(&sys, MonomialOrder::GrevLex).unwrap();
        assert_eq!(gb.len(), 2);
        let mut polys = gb.polys();
        polys.sort_by_key(|p| p.to_string());
        let mut expected = sys.clone();
        expected.sort_by_key(|p| p.to_string());
        assert_eq!(polys, expected);
        assert_eq!(gb.quotient_count(), QuotientCount::Finite(1));
    }

    #[test]
    fn ideal_membership_collapses() {
        let sys = vec![poly(&[(1, &[2, 0])]), poly(&[(1, &[1, 0])])];
        let gb = groebner_basis(&sys, MonomialOrder::GrevLex).unwrap();
        assert_eq!(gb.polys(), vec![poly(&[(1, &[1, 0])])]);
    }

    #[test]
    fn positive_dimensional_is_infinite() {
        let gb = groebner_basis(&[poly(&[(1, &[2, 0])])], MonomialOrder::GrevLex).unwrap();
        assert_eq!(gb.quotient_count(), QuotientCount::Infinite);
        assert!(gb.eliminant_of_linear_form(&poly(&[(1, &[1, 0])])).is_err());
    }

    #[test]
    fn circle_and_diagonal() {
        let sys = vec![
            poly(&[(1, &[2, 0]), (1, &[0, 2]), (-1, &[0, 0])]),
            poly(&[(1, &[1, 0]), (-1, &[0, 1])]),
        ];
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            let gb = groebner_basis(&sys, order).unwrap();
            assert_eq!(gb.quotient_count(), QuotientCount::Finite(2));
            let elim = gb.eliminant_of_linear_form(&poly(&[(1, &[1, 0])])).unwrap();
            // t^2 - 1/2
            let q = Rationals;
            assert_eq!(elim, UniPoly::new(q, vec![q.from_ratio(-1, 2), q.zero(), q.one()]));
        }
    }

    #[test]
    fn eliminant_of_single_point_and_pair() {
        let sys = vec![poly(&[(1, &[1, 0]), (-1, &[0, 0])]), poly(&[(1, &[0, 1]), (-2, &[0, 0])])];
        let gb = groebner_basis(&sys, MonomialOrder::GrevLex).unwrap();
        let lam = poly(&[(1, &[1, 0]), (1, &[0, 1])]);
        assert_eq!(gb.eliminant_of_linear_form(&lam).unwrap(), UniPoly::from_i64s(Rationals, &[-3, 1]));

        let sys = vec![poly(&[(1, &[2, 0]), (-1, &[0, 0])]), poly(&[(1, &[0, 1])])];
        let gb = groebner_basis(&sys, MonomialOrder::GrevLex).unwrap();
        let e = gb.eliminant_of_linear_form(&poly(&[(1, &[1, 0])])).unwrap();
        assert_eq!(e, UniPoly::from_i64s(Rationals, &[-1, 0, 1]));
    }

    #[test]
    fn basis_is_idempotent() {
        let f = PrimeField::new(10007).unwrap();
        let sys = vec![
            MultiPoly::from_int_terms(f, 3, &[(1, &[2, 0, 0]), (3, &[0, 1, 1]), (-5, &[0, 0, 0])]),
            MultiPoly::from_int_terms(f, 3, &[(1, &[0, 2, 0]), (7, &[1, 0, 1]), (1, &[0, 0, 1])]),
            MultiPoly::from_int_terms(f, 3, &[(1, &[0, 0, 2]), (-2, &[1, 1, 0]), (4, &[1, 0, 0])]),
        ];
        let gb = groebner_basis(&sys, MonomialOrder::GrevLex).unwrap();
        let again = groebner_basis(&gb.polys(), MonomialOrder::GrevLex).unwrap();
        assert_eq!(gb.polys(), again.polys());
        assert_eq!(gb.quotient_count(), QuotientCount::Finite(8));
        for p in &sys {
            assert!(gb.contains(p));
        }
    }
}
