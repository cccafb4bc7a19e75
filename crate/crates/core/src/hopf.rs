//! Hopf algebras given by explicit comultiplication, counit and antipode tables.

use std::sync::Arc;

use crate::algebra::{group_algebra, quotient_algebra, Algebra};
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::linalg::{self, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    algebra: Arc<Algebra>,
    /// `delta[i]` lists the coordinates of `Delta(e_i)` on `e_p (x) e_q` at `p * d + q`.
    delta: Vec<Vec<Elem>>,
    counit: Vec<Elem>,
    antipode: Matrix,
}

/// `(a (x) b)(c (x) d) = ac (x) bd` on coordinate vectors of length `d^2`.
pub fn tensor_square_mul(alg: &Algebra, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
    let k = &**alg.field();
    let d = alg.dim();
    let sc = alg.structure_constants();
    let mut out = vec![0; d * d];
    for (i, &x) in u.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let (a, b) = (i / d, i % d);
        for (j, &y) in v.iter().enumerate() {
            if y == 0 {
                continue;
            }
            let (c, e) = (j / d, j % d);
            let xy = k.mul(x, y);
            for (p, &s) in sc[a * d + c].iter().enumerate() {
                if s == 0 {
                    continue;
                }
                let sp = k.mul(xy, s);
                for (q, &t) in sc[b * d + e].iter().enumerate() {
                    if t != 0 {
                        let cell = &mut out[p * d + q];
                        *cell = k.add(*cell, k.mul(sp, t));
                    }
                }
            }
        }
    }
    out
}

impl HopfAlgebra {
    pub fn new(algebra: Arc<Algebra>, delta: Vec<Vec<Elem>>, counit: Vec<Elem>, antipode: Matrix) -> Result<Self> {
        let d = algebra.dim();
        if delta.len() != d || delta.iter().any(|v| v.len() != d * d) || counit.len() != d {
            return Err(Error::InvalidArgument("Hopf tables have the wrong shape".into()));
        }
        if antipode.rows() != d || antipode.cols() != d {
            return Err(Error::InvalidArgument("antipode table has the wrong shape".into()));
        }
        Ok(HopfAlgebra { algebra, delta, counit, antipode })
    }

    /// Extend comultiplication and counit given on presentation generators
    /// multiplicatively, and solve for an antipode (zero when none exists).
    pub fn from_generators(algebra: Arc<Algebra>, delta_gens: &[Vec<Elem>], counit_gens: &[Elem]) -> Result<Self> {
        let wb = algebra
            .word_basis()
            .ok_or_else(|| Error::Precondition("algebra has no presentation".into()))?
            .clone();
        let k = &**algebra.field();
        let d = algebra.dim();
        let mut one = vec![0; d * d];
        for p in 0..d {
            for q in 0..d {
                one[p * d + q] = k.mul(algebra.unit()[p], algebra.unit()[q]);
            }
        }
        let word_delta: Vec<Vec<Elem>> = wb
            .words
            .iter()
            .map(|w| w.iter().fold(one.clone(), |acc, &g| tensor_square_mul(&algebra, &acc, &delta_gens[g])))
            .collect();
        let word_counit: Vec<Elem> = wb.words.iter().map(|w| w.iter().fold(1, |acc, &g| k.mul(acc, counit_gens[g]))).collect();
        let delta = wb
            .coeffs
            .iter()
            .map(|c| {
                let mut v = vec![0; d * d];
                for (w, &cw) in c.iter().enumerate() {
                    linalg::vec_axpy(&mut v, cw, &word_delta[w], k);
                }
                v
            })
            .collect::<Vec<_>>();
        let counit = wb
            .coeffs
            .iter()
            .map(|c| c.iter().zip(&word_counit).fold(0, |acc, (&a, &b)| k.add(acc, k.mul(a, b))))
            .collect::<Vec<_>>();
        let antipode = solve_antipode(&algebra, &delta, &counit).unwrap_or_else(|| Matrix::zeros(d, d));
        Self::new(algebra, delta, counit, antipode)
    }

    /// `k[x]/(x^2)` in characteristic 2 with `Delta(x) = 1 (x) x + x (x) 1 + b x (x) x`.
    pub fn dual_numbers(k: Arc<FiniteField>, b: Elem) -> Result<Self> {
        if k.characteristic() != 2 {
            return Err(Error::Precondition("primitive dual numbers need characteristic 2".into()));
        }
        let alg = Arc::new(quotient_algebra(k, &[0, 0, 1])?);
        Self::from_generators(alg, &[vec![0, 1, 1, b]], &[0])
    }

    pub fn h0(k: Arc<FiniteField>) -> Result<Self> {
        Self::dual_numbers(k, 0)
    }

    pub fn h1(k: Arc<FiniteField>) -> Result<Self> {
        Self::dual_numbers(k, 1)
    }

    /// A group algebra with every group element group-like.
    pub fn group_like(k: Arc<FiniteField>, cyclic_orders: &[usize]) -> Result<Self> {
        let alg = Arc::new(group_algebra(k, cyclic_orders)?);
        let d = alg.dim();
        let gens = alg.presentation().expect("group algebras carry a presentation").generators.clone();
        let delta_gens: Vec<Vec<Elem>> = gens
            .iter()
            .map(|&g| {
                let mut v = vec![0; d * d];
                v[g * d + g] = 1;
                v
            })
            .collect();
        Self::from_generators(alg, &delta_gens, &vec![1; gens.len()])
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn delta(&self, i: usize) -> &[Elem] {
        &self.delta[i]
    }

    pub fn delta_table(&self) -> &[Vec<Elem>] {
        &self.delta
    }

    pub fn counit(&self) -> &[Elem] {
        &self.counit
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    fn field(&self) -> &FiniteField {
        self.algebra.field()
    }

    /// `Delta` of an arbitrary element.
    pub fn comultiply(&self, a: &[Elem]) -> Vec<Elem> {
        let k = self.field();
        let d = self.algebra.dim();
        let mut v = vec![0; d * d];
        for (i, &c) in a.iter().enumerate() {
            linalg::vec_axpy(&mut v, c, &self.delta[i], k);
        }
        v
    }

    pub fn counit_of(&self, a: &[Elem]) -> Elem {
        let k = self.field();
        a.iter().zip(&self.counit).fold(0, |acc, (&x, &e)| k.add(acc, k.mul(x, e)))
    }

    pub fn is_cocommutative(&self) -> bool {
        let d = self.algebra.dim();
        self.delta
            .iter()
            .all(|v| (0..d).all(|p| (0..d).all(|q| v[p * d + q] == v[q * d + p])))
    }

    /// Every failed Hopf axiom, empty iff this is a Hopf algebra.
    pub fn verify(&self) -> Vec<String> {
        let alg = &*self.algebra;
        let k = self.field();
        let d = alg.dim();
        let mut out = Vec::new();
        let basis: Vec<Vec<Elem>> = (0..d).map(|i| alg.basis_vector(i)).collect();
        let one = alg.unit().to_vec();
        let mut one_one = vec![0; d * d];
        for p in 0..d {
            for q in 0..d {
                one_one[p * d + q] = k.mul(one[p], one[q]);
            }
        }
        if self.comultiply(&one) != one_one {
            out.push("comultiplication is not unital".into());
        }
        if self.counit_of(&one) != 1 {
            out.push("counit is not unital".into());
        }
        for i in 0..d {
            for j in 0..d {
                let prod = alg.multiply(&basis[i], &basis[j]);
                if self.comultiply(&prod) != tensor_square_mul(alg, &self.delta[i], &self.delta[j]) {
                    out.push(format!("comultiplication is not multiplicative on ({i},{j})"));
                }
                if self.counit_of(&prod) != k.mul(self.counit[i], self.counit[j]) {
                    out.push(format!("counit is not multiplicative on ({i},{j})"));
                }
            }
        }
        for i in 0..d {
            let di = &self.delta[i];
            // coassociativity on e_p (x) e_q (x) e_r at (p * d + q) * d + r
            let mut left = vec![0; d * d * d];
            let mut right = vec![0; d * d * d];
            for p in 0..d {
                for q in 0..d {
                    let c = di[p * d + q];
                    if c == 0 {
                        continue;
                    }
                    for (ab, &v) in self.delta[p].iter().enumerate() {
                        let cell = &mut left[ab * d + q];
                        *cell = k.add(*cell, k.mul(c, v));
                    }
                    for (ab, &v) in self.delta[q].iter().enumerate() {
                        let cell = &mut right[p * d * d + ab];
                        *cell = k.add(*cell, k.mul(c, v));
                    }
                }
            }
            if left != right {
                out.push(format!("comultiplication is not coassociative on basis element {i}"));
            }
            let mut lc = vec![0; d];
            let mut rc = vec![0; d];
            let mut ls = vec![0; d];
            let mut rs = vec![0; d];
            for p in 0..d {
                for q in 0..d {
                    let c = di[p * d + q];
                    if c == 0 {
                        continue;
                    }
                    lc[q] = k.add(lc[q], k.mul(c, self.counit[p]));
                    rc[p] = k.add(rc[p], k.mul(c, self.counit[q]));
                    let sp = self.antipode.column(p);
                    let sq = self.antipode.column(q);
                    linalg::vec_axpy(&mut ls, c, &alg.multiply(&sp, &basis[q]), k);
                    linalg::vec_axpy(&mut rs, c, &alg.multiply(&basis[p], &sq), k);
                }
            }
            if lc != basis[i] || rc != basis[i] {
                out.push(format!("counit law fails on basis element {i}"));
            }
            let target = linalg::vec_scale(&one, self.counit[i], k);
            if ls != target || rs != target {
                out.push(format!("antipode law fails on basis element {i}"));
            }
        }
        out
    }
}

/// Solve `sum Delta_i[p,q] S(e_p) e_q = eps(e_i) 1` for the antipode table.
fn solve_antipode(alg: &Algebra, delta: &[Vec<Elem>], counit: &[Elem]) -> Option<Matrix> {
    let k = &**alg.field();
    let d = alg.dim();
    // unknown S[r][p] (row r of column p) at r * d + p
    let mut sys = Matrix::zeros(d * d, d * d);
    let mut rhs = vec![0; d * d];
    for i in 0..d {
        for p in 0..d {
            for q in 0..d {
                let c = delta[i][p * d + q];
                if c == 0 {
                    continue;
                }
                // S(e_p) e_q = sum_r S[r][p] e_r e_q
                for r in 0..d {
                    let prod = &alg.structure_constants()[r * d + q];
                    for (t, &v) in prod.iter().enumerate() {
                        if v != 0 {
                            let cell = &mut sys[(i * d + t, r * d + p)];
                            *cell = k.add(*cell, k.mul(c, v));
                        }
                    }
                }
            }
        }
        for t in 0..d {
            rhs[i * d + t] = k.mul(counit[i], alg.unit()[t]);
        }
    }
    let s = sys.solve(&rhs, k)?;
    Some(Matrix::from_vec(d, d, s))
}

pub fn verify_hopf(h: &HopfAlgebra) -> Vec<String> {
    h.verify()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<FiniteField> {
        Arc::new(FiniteField::new(2, 1).unwrap())
    }

    #[test]
    fn both_primitive_shapes_are_hopf() {
        assert!(HopfAlgebra::h0(f2()).unwrap().verify().is_empty());
        assert!(HopfAlgebra::h1(f2()).unwrap().verify().is_empty());
        assert!(HopfAlgebra::h1(f2()).unwrap().is_cocommutative());
    }

    #[test]
    fn group_like_is_hopf() {
        let k = Arc::new(FiniteField::new(3, 1).unwrap());
        let h = HopfAlgebra::group_like(k, &[2]).unwrap();
        assert!(h.verify().is_empty());
        assert_eq!(h.antipode(), &Matrix::identity(2));
    }

    #[test]
    fn constant_coproduct_fails() {
        let alg = Arc::new(quotient_algebra(f2(), &[0, 0, 1]).unwrap());
        let h = HopfAlgebra::from_generators(alg, &[vec![1, 0, 0, 0]], &[0]).unwrap();
        assert!(!h.verify().is_empty());
    }
}
