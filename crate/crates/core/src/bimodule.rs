//! n-fold bimodules: a left module with `n` pairwise-commuting right actions.
//!
//! Every action is stored per basis element of the algebra as an `m x m` table
//! acting on column vectors. Right actions are anti-homomorphisms,
//! `right(t, ab) = right(t, b) * right(t, a)`, so `x . (ab) = (x . a) . b`.
//! Slots are numbered from 0 in code and from 1 in diagnostics.

use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::linalg::{self, Matrix};

#[derive(Clone, PartialEq, Eq)]
pub struct NFoldBimodule {
    algebra: Arc<Algebra>,
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Vec<Matrix>>,
    labels: Vec<String>,
}

impl fmt::Debug for NFoldBimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NFoldBimodule(fold {}, dim {})", self.fold(), self.dim)
    }
}

/// A violated bimodule axiom with the basis indices exhibiting it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (basis indices {:?})", self.axiom, self.witness)
    }
}

/// Value of a generator word under an action given on generators.
fn word_value(word: &[usize], gens: &[Matrix], dim: usize, anti: bool, k: &FiniteField) -> Matrix {
    let mut acc = Matrix::identity(dim);
    for &g in word {
        acc = if anti { gens[g].mul(&acc, k) } else { acc.mul(&gens[g], k) };
    }
    acc
}

/// Extend an action given on presentation generators to every basis element.
pub fn expand_generator_action(
    algebra: &Algebra,
    dim: usize,
    gens: &[Matrix],
    anti: bool,
) -> Result<Vec<Matrix>> {
    let wb = algebra
        .word_basis()
        .ok_or_else(|| Error::Precondition("algebra has no presentation".into()))?;
    let k = &**algebra.field();
    let word_tables: Vec<Matrix> = wb.words.iter().map(|w| word_value(w, gens, dim, anti, k)).collect();
    Ok(wb.coeffs.iter().map(|c| linalg::combine(c, &word_tables, k)).collect())
}

/// Whether generator tables satisfy every presentation relation.
pub fn satisfies_relations(algebra: &Algebra, dim: usize, gens: &[Matrix], anti: bool) -> bool {
    let Some(p) = algebra.presentation() else {
        return false;
    };
    let k = &**algebra.field();
    p.relations.iter().all(|rel| {
        let mut acc = Matrix::zeros(dim, dim);
        for (c, w) in rel {
            acc.axpy(*c, &word_value(w, gens, dim, anti, k), k);
        }
        acc.is_zero()
    })
}

impl NFoldBimodule {
    /// Build from full per-basis-element tables and validate.
    pub fn new(algebra: Arc<Algebra>, dim: usize, left: Vec<Matrix>, right: Vec<Vec<Matrix>>) -> Result<Self> {
        let m = Self::new_unchecked(algebra, dim, left, right)?;
        if let Some(v) = m.validate().first() {
            return Err(Error::InvalidArgument(format!("not an n-fold bimodule: {v}")));
        }
        Ok(m)
    }

    /// Build without checking the module axioms (shapes are still checked).
    pub fn new_unchecked(algebra: Arc<Algebra>, dim: usize, left: Vec<Matrix>, right: Vec<Vec<Matrix>>) -> Result<Self> {
        let d = algebra.dim();
        let shape_ok = |tables: &[Matrix]| tables.len() == d && tables.iter().all(|t| t.rows() == dim && t.cols() == dim);
        if !shape_ok(&left) || !right.iter().all(|r| shape_ok(r)) {
            return Err(Error::InvalidArgument("action table has wrong shape".into()));
        }
        let labels = (0..right.len()).map(|t| format!("{}", t + 1)).collect();
        Ok(NFoldBimodule { algebra, dim, left, right, labels })
    }

    /// Build from actions of the presentation generators.
    pub fn from_generators(algebra: Arc<Algebra>, dim: usize, left_gens: &[Matrix], right_gens: &[Vec<Matrix>]) -> Result<Self> {
        let left = expand_generator_action(&algebra, dim, left_gens, false)?;
        let right = right_gens
            .iter()
            .map(|g| expand_generator_action(&algebra, dim, g, true))
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra, dim, left, right)
    }

    /// `R` with left multiplication and `fold` copies of right multiplication.
    pub fn regular(algebra: Arc<Algebra>, fold: usize) -> Self {
        let d = algebra.dim();
        let left = (0..d).map(|i| algebra.left_mult(&algebra.basis_vector(i))).collect();
        let r: Vec<Matrix> = (0..d).map(|i| algebra.right_mult(&algebra.basis_vector(i))).collect();
        Self::new_unchecked(algebra, d, left, vec![r; fold]).expect("regular tables have the right shape")
    }

    pub fn zero(algebra: Arc<Algebra>, fold: usize) -> Self {
        let d = algebra.dim();
        let z = vec![Matrix::zeros(0, 0); d];
        Self::new_unchecked(algebra, 0, z.clone(), vec![z; fold]).expect("empty tables")
    }

    /// A left module with tables for every basis element.
    pub fn left_module(algebra: Arc<Algebra>, dim: usize, left: Vec<Matrix>) -> Result<Self> {
        Self::new(algebra, dim, left, vec![])
    }

    /// One-dimensional left module on which basis element `i` acts by `chi[i]`.
    pub fn character(algebra: Arc<Algebra>, chi: &[Elem]) -> Result<Self> {
        let left = chi.iter().map(|&c| Matrix::from_vec(1, 1, vec![c])).collect();
        Self::left_module(algebra, 1, left)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> &FiniteField {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn fold(&self) -> usize {
        self.right.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.fold());
        self.labels = labels;
        self
    }

    /// Left action of basis element `i`.
    pub fn left(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    /// Right action of basis element `i` in slot `t`.
    pub fn right(&self, t: usize, i: usize) -> &Matrix {
        &self.right[t][i]
    }

    pub fn left_tables(&self) -> &[Matrix] {
        &self.left
    }

    pub fn right_tables(&self) -> &[Vec<Matrix>] {
        &self.right
    }

    pub fn act_left(&self, r: &[Elem]) -> Matrix {
        linalg::combine(r, &self.left, self.field())
    }

    pub fn act_right(&self, t: usize, r: &[Elem]) -> Matrix {
        linalg::combine(r, &self.right[t], self.field())
    }

    /// Forget every right action.
    pub fn underlying_left(&self) -> Self {
        Self::new_unchecked(self.algebra.clone(), self.dim, self.left.clone(), vec![]).unwrap()
    }

    /// Every axiom violation; empty iff this is an n-fold bimodule.
    pub fn validate(&self) -> Vec<Violation> {
        let k = self.field();
        let a = &*self.algebra;
        let d = a.dim();
        let mut out = Vec::new();
        let id = Matrix::identity(self.dim);
        if self.act_left(a.unit()) != id {
            out.push(Violation { axiom: "left action is not unital".into(), witness: vec![] });
        }
        for (t, r) in self.right.iter().enumerate() {
            if linalg::combine(a.unit(), r, k) != id {
                out.push(Violation { axiom: format!("right action at slot {} is not unital", t + 1), witness: vec![] });
            }
        }
        for i in 0..d {
            for j in 0..d {
                let prod = &a.structure_constants()[i * d + j];
                if self.left[i].mul(&self.left[j], k) != self.act_left(prod) {
                    out.push(Violation { axiom: "left action is not multiplicative".into(), witness: vec![i, j] });
                }
                for (t, r) in self.right.iter().enumerate() {
                    if r[j].mul(&r[i], k) != linalg::combine(prod, r, k) {
                        out.push(Violation {
                            axiom: format!("right action at slot {} is not anti-multiplicative", t + 1),
                            witness: vec![i, j],
                        });
                    }
                }
            }
        }
        for (t, r) in self.right.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    if self.left[i].mul(&r[j], k) != r[j].mul(&self.left[i], k) {
                        out.push(Violation { axiom: format!("left/right commutation at slot {}", t + 1), witness: vec![i, j] });
                    }
                }
            }
        }
        for s in 0..self.fold() {
            for t in s + 1..self.fold() {
                for i in 0..d {
                    for j in 0..d {
                        if self.right[s][i].mul(&self.right[t][j], k) != self.right[t][j].mul(&self.right[s][i], k) {
                            out.push(Violation {
                                axiom: format!("right/right commutation at slots {} and {}", s + 1, t + 1),
                                witness: vec![i, j],
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// `(sigma M)` with slot `t` of the result carrying slot `sigma[t]` of `self`.
    pub fn permute_actions(&self, sigma: &[usize]) -> Result<Self> {
        check_permutation(sigma, self.fold())?;
        let right = sigma.iter().map(|&s| self.right[s].clone()).collect();
        let labels = sigma.iter().map(|&s| self.labels[s].clone()).collect();
        Ok(NFoldBimodule { right, labels, ..self.clone() })
    }

    /// Precompose the left action with an algebra automorphism `phi`
    /// (columns of `phi` are the images of basis elements).
    pub fn twist_left(&self, phi: &Matrix) -> Self {
        let left = (0..self.algebra.dim()).map(|i| self.act_left(&phi.column(i))).collect();
        NFoldBimodule { left, ..self.clone() }
    }

    /// Precompose the right action in `slot` with an automorphism `phi`.
    pub fn twist_right(&self, slot: usize, phi: &Matrix) -> Self {
        let mut right = self.right.clone();
        right[slot] = (0..self.algebra.dim()).map(|i| self.act_right(slot, &phi.column(i))).collect();
        NFoldBimodule { right, ..self.clone() }
    }

    /// Precompose every action with `phi`.
    pub fn twist_all(&self, phi: &Matrix) -> Self {
        (0..self.fold()).fold(self.twist_left(phi), |m, t| m.twist_right(t, phi))
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.algebra != other.algebra || self.fold() != other.fold() {
            return Err(Error::InvalidArgument("direct sum of incompatible bimodules".into()));
        }
        let n = self.dim + other.dim;
        let block = |a: &Matrix, b: &Matrix| {
            let mut m = Matrix::zeros(n, n);
            for r in 0..a.rows() {
                for c in 0..a.cols() {
                    m[(r, c)] = a[(r, c)];
                }
            }
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    m[(self.dim + r, self.dim + c)] = b[(r, c)];
                }
            }
            m
        };
        let left = self.left.iter().zip(&other.left).map(|(a, b)| block(a, b)).collect();
        let right = self
            .right
            .iter()
            .zip(&other.right)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| block(a, b)).collect())
            .collect();
        Ok(NFoldBimodule { algebra: self.algebra.clone(), dim: n, left, right, labels: self.labels.clone() })
    }

    /// Transport every action along a change of basis `p` (new coordinates are `p x`).
    pub fn conjugate(&self, p: &Matrix) -> Option<Self> {
        let k = self.field();
        let pinv = p.inverse(k)?;
        let conj = |m: &Matrix| p.mul(m, k).mul(&pinv, k);
        Some(NFoldBimodule {
            left: self.left.iter().map(conj).collect(),
            right: self.right.iter().map(|r| r.iter().map(conj).collect()).collect(),
            ..self.clone()
        })
    }

    /// Tables of the presentation generators: left first, then each slot.
    pub fn generator_tables(&self) -> Vec<Matrix> {
        let gens = self.algebra.action_generators();
        let mut out: Vec<Matrix> = gens.iter().map(|&g| self.left[g].clone()).collect();
        for r in &self.right {
            out.extend(gens.iter().map(|&g| r[g].clone()));
        }
        out
    }

    /// Canonical flat encoding used for lexicographic tie-breaking.
    pub fn encoding(&self) -> Vec<Elem> {
        let mut out = vec![self.fold() as Elem];
        out.extend(std::iter::once(self.dim as Elem));
        for m in self.generator_tables() {
            out.extend_from_slice(m.data());
        }
        out
    }

    /// Annihilator of the left action: `{ r : r M = 0 }` as a basis.
    pub fn left_annihilator(&self) -> Vec<Vec<Elem>> {
        annihilator(&self.left, self.dim, self.algebra.dim(), self.field())
    }

    /// Annihilator of the right action in `slot`.
    pub fn right_annihilator(&self, slot: usize) -> Vec<Vec<Elem>> {
        annihilator(&self.right[slot], self.dim, self.algebra.dim(), self.field())
    }
}

fn annihilator(tables: &[Matrix], m: usize, d: usize, k: &FiniteField) -> Vec<Vec<Elem>> {
    let mut sys = Matrix::zeros(m * m, d);
    for (i, t) in tables.iter().enumerate() {
        for (e, &v) in t.data().iter().enumerate() {
            sys[(e, i)] = v;
        }
    }
    sys.nullspace(k)
}

pub fn check_permutation(sigma: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if sigma.len() != n {
        return Err(Error::InvalidArgument(format!("permutation of length {} for fold {n}", sigma.len())));
    }
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(Error::InvalidArgument(format!("{sigma:?} is not a permutation")));
        }
        seen[s] = true;
    }
    Ok(())
}

pub fn identity_permutation(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn invert_permutation(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    inv
}

/// `first` then `second` as slot correspondences: `t -> second[first[t]]`.
pub fn compose_permutations(first: &[usize], second: &[usize]) -> Vec<usize> {
    first.iter().map(|&t| second[t]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_algebra, quotient_algebra};
    use crate::field::FiniteField;

    fn dual_numbers() -> Arc<Algebra> {
        let k = Arc::new(FiniteField::new(2, 1).unwrap());
        Arc::new(quotient_algebra(k, &[0, 0, 1]).unwrap())
    }

    #[test]
    fn regular_bimodule_is_valid() {
        let r = dual_numbers();
        for n in 0..3 {
            assert!(NFoldBimodule::regular(r.clone(), n).validate().is_empty());
        }
    }

    #[test]
    fn identical_square_zero_actions_are_valid() {
        let r = dual_numbers();
        let mut x = Matrix::zeros(4, 4);
        x[(1, 0)] = 1;
        x[(3, 2)] = 1;
        let m = NFoldBimodule::from_generators(r, 4, &[x.clone()], &[vec![x.clone()], vec![x]]).unwrap();
        assert!(m.validate().is_empty());
    }

    #[test]
    fn noncommuting_right_action_is_reported() {
        let r = dual_numbers();
        let mut lx = Matrix::zeros(2, 2);
        lx[(1, 0)] = 1;
        let mut rx = Matrix::zeros(2, 2);
        rx[(0, 1)] = 1;
        let left = expand_generator_action(&r, 2, &[lx], false).unwrap();
        let right = expand_generator_action(&r, 2, &[rx], true).unwrap();
        let m = NFoldBimodule::new_unchecked(r, 2, left, vec![right]).unwrap();
        let v = m.validate();
        assert!(v.iter().any(|v| v.axiom == "left/right commutation at slot 1"));
    }

    #[test]
    fn permutation_conventions() {
        let k = Arc::new(FiniteField::new(3, 1).unwrap());
        let r = Arc::new(group_algebra(k, &[2]).unwrap());
        let m = NFoldBimodule::regular(r, 3).with_labels(vec!["A".into(), "B".into(), "C".into()]);
        let cyc = m.permute_actions(&[2, 0, 1]).unwrap();
        assert_eq!(cyc.labels(), &["C", "A", "B"]);
        let swap = m.permute_actions(&[1, 0, 2]).unwrap();
        assert_eq!(swap.permute_actions(&[1, 0, 2]).unwrap(), m);
        assert_eq!(m.permute_actions(&[0, 1, 2]).unwrap(), m);
    }

    #[test]
    fn characters_of_z2_over_f3() {
        let k = Arc::new(FiniteField::new(3, 1).unwrap());
        let r = Arc::new(group_algebra(k, &[2]).unwrap());
        assert!(NFoldBimodule::character(r.clone(), &[1, 1]).is_ok());
        assert!(NFoldBimodule::character(r.clone(), &[1, 2]).is_ok());
        assert!(NFoldBimodule::character(r, &[1, 0]).is_err());
    }
}
