//! Enumeration of left modules and n-fold bimodules of a fixed dimension, up
//! to isomorphism. Actions are searched on presentation generators; each class
//! is represented by its lexicographically least generator-table encoding.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::bimodule::{self, NFoldBimodule};
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::hom;
use crate::linalg::{self, Matrix};

pub const DEFAULT_ENUM_CAP: u128 = 1 << 24;

/// Stage filter: called on the left module (fold 0) and after each right slot
/// is added; returning `false` drops the candidate and all its extensions.
pub type StageFilter<'a> = dyn Fn(&NFoldBimodule) -> bool + Sync + 'a;

fn presentation_gens(r: &Algebra) -> Result<usize> {
    r.presentation()
        .map(|p| p.generators.len())
        .ok_or_else(|| Error::Precondition("enumeration needs an algebra with a presentation".into()))
}

fn digits(mut idx: u128, q: usize, n: usize) -> Vec<Elem> {
    let mut out = vec![0; n];
    for d in out.iter_mut().rev() {
        *d = (idx % q as u128) as Elem;
        idx /= q as u128;
    }
    out
}

/// Generator tuples `coeffs -> [g tables]` satisfying the relations, in
/// lexicographic order of the coefficient vectors.
fn search_tables(
    r: &Algebra,
    dim: usize,
    basis: &[Matrix],
    anti: bool,
    cap: u128,
    stage: &str,
) -> Result<Vec<Vec<Matrix>>> {
    let g = presentation_gens(r)?;
    let k = &**r.field();
    let n = g * basis.len();
    let size = linalg::space_size(k.order(), n);
    if size > cap {
        return Err(Error::budget(stage, size, cap));
    }
    let found: Vec<Vec<Matrix>> = (0..size)
        .into_par_iter()
        .filter_map(|idx| {
            let c = digits(idx, k.order(), n);
            let gens: Vec<Matrix> = (0..g)
                .map(|i| combine_or_zero(&c[i * basis.len()..(i + 1) * basis.len()], basis, dim, k))
                .collect();
            bimodule::satisfies_relations(r, dim, &gens, anti).then_some(gens)
        })
        .collect();
    Ok(found)
}

fn combine_or_zero(c: &[Elem], basis: &[Matrix], dim: usize, k: &FiniteField) -> Matrix {
    if basis.is_empty() {
        Matrix::zeros(dim, dim)
    } else {
        linalg::combine(c, basis, k)
    }
}

fn unit_matrices(dim: usize) -> Vec<Matrix> {
    let mut out = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut m = Matrix::zeros(dim, dim);
            m[(i, j)] = 1;
            out.push(m);
        }
    }
    out
}

/// Matrices commuting with every table in `tables`.
fn centralizer(tables: &[Matrix], dim: usize, k: &FiniteField) -> Vec<Matrix> {
    if tables.is_empty() {
        return unit_matrices(dim);
    }
    let n = dim * dim;
    let mut sys = Matrix::zeros(tables.len() * n, n);
    for (ti, t) in tables.iter().enumerate() {
        // (X T - T X)[i][j] = sum_l X[i][l] T[l][j] - T[i][l] X[l][j]
        for i in 0..dim {
            for j in 0..dim {
                let row = ti * n + i * dim + j;
                for l in 0..dim {
                    let a = t[(l, j)];
                    if a != 0 {
                        let c = i * dim + l;
                        sys[(row, c)] = k.add(sys[(row, c)], a);
                    }
                    let b = t[(i, l)];
                    if b != 0 {
                        let c = l * dim + j;
                        sys[(row, c)] = k.sub(sys[(row, c)], b);
                    }
                }
            }
        }
    }
    sys.nullspace(k).into_iter().map(|v| Matrix::from_vec(dim, dim, v)).collect()
}

/// Conjugation-invariant fingerprint used to bucket candidates before exact
/// isomorphism tests.
fn fingerprint(m: &NFoldBimodule) -> Vec<usize> {
    let k = m.field();
    let mut out = vec![m.dim(), m.fold()];
    out.extend(m.left_tables().iter().map(|t| t.rank(k)));
    for slot in m.right_tables() {
        out.extend(slot.iter().map(|t| t.rank(k)));
    }
    out
}

/// Keep the first member of each isomorphism class (input order).
pub fn dedupe_iso(candidates: Vec<NFoldBimodule>) -> Result<Vec<NFoldBimodule>> {
    let mut buckets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut reps: Vec<Arc<NFoldBimodule>> = Vec::new();
    for c in candidates {
        let c = Arc::new(c);
        let key = fingerprint(&c);
        let bucket = buckets.entry(key).or_default();
        let sigma = bimodule::identity_permutation(c.fold());
        let mut seen = false;
        for &i in bucket.iter() {
            if hom::iso_test(&reps[i], &c, &sigma)?.is_some() {
                seen = true;
                break;
            }
        }
        if !seen {
            bucket.push(reps.len());
            reps.push(c);
        }
    }
    Ok(reps.into_iter().map(|a| Arc::try_unwrap(a).unwrap_or_else(|a| (*a).clone())).collect())
}

/// Left modules of dimension `dim`, one per isomorphism class.
pub fn enumerate_left_modules(r: &Arc<Algebra>, dim: usize, cap: u128) -> Result<Vec<NFoldBimodule>> {
    enumerate_left_filtered(r, dim, cap, &|_| true)
}

pub fn enumerate_left_filtered(r: &Arc<Algebra>, dim: usize, cap: u128, filter: &StageFilter) -> Result<Vec<NFoldBimodule>> {
    if dim == 0 {
        let z = NFoldBimodule::zero(r.clone(), 0);
        return Ok(if filter(&z) { vec![z] } else { vec![] });
    }
    let tables = search_tables(r, dim, &unit_matrices(dim), false, cap, "left module enumeration")?;
    let mods: Vec<NFoldBimodule> = tables
        .into_par_iter()
        .map(|gens| NFoldBimodule::from_generators(r.clone(), dim, &gens, &[]))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|m| filter(m))
        .collect();
    dedupe_iso(mods)
}

/// n-fold bimodules of dimension `dim`, one per isomorphism class (identity
/// slot correspondence).
pub fn enumerate_bimodules(r: &Arc<Algebra>, fold: usize, dim: usize, cap: u128) -> Result<Vec<NFoldBimodule>> {
    enumerate_bimodules_filtered(r, fold, dim, cap, &|_| true)
}

pub fn enumerate_bimodules_filtered(
    r: &Arc<Algebra>,
    fold: usize,
    dim: usize,
    cap: u128,
    filter: &StageFilter,
) -> Result<Vec<NFoldBimodule>> {
    let k = r.field().clone();
    let mut layer = enumerate_left_filtered(r, dim, cap, filter)?;
    for slot in 0..fold {
        let mut next = Vec::new();
        for base in &layer {
            let mut fixed: Vec<Matrix> = base.generator_tables();
            fixed.dedup();
            let cent = centralizer(&fixed, dim, &k);
            let stage = format!("right action search (slot {})", slot + 1);
            for gens in search_tables(r, dim, &cent, true, cap, &stage)? {
                let mut rights: Vec<Vec<Matrix>> = (0..slot)
                    .map(|t| r.action_generators().iter().map(|&g| base.right(t, g).clone()).collect())
                    .collect();
                rights.push(gens);
                let lefts: Vec<Matrix> = r.action_generators().iter().map(|&g| base.left(g).clone()).collect();
                let cand = NFoldBimodule::from_generators(r.clone(), dim, &lefts, &rights)?;
                if filter(&cand) {
                    next.push(cand);
                }
            }
        }
        next.sort_by_key(|m| m.encoding());
        layer = dedupe_iso(next)?;
    }
    layer.sort_by_key(|m| m.encoding());
    Ok(layer)
}

/// Whether `r` acts faithfully on the left and on every right slot.
pub fn is_faithful(m: &NFoldBimodule) -> bool {
    m.left_annihilator().is_empty() && (0..m.fold()).all(|t| m.right_annihilator(t).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_algebra, quotient_algebra};

    fn dual_numbers(p: usize, e: usize) -> Arc<Algebra> {
        let k = Arc::new(FiniteField::new(p, e).unwrap());
        Arc::new(quotient_algebra(k, &[0, 0, 1]).unwrap())
    }

    #[test]
    fn dual_number_modules() {
        let r = dual_numbers(2, 1);
        assert_eq!(enumerate_left_modules(&r, 1, DEFAULT_ENUM_CAP).unwrap().len(), 1);
        let two = enumerate_left_modules(&r, 2, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(two.len(), 2);
        // k^2 (x acts as 0) comes first in lexicographic order
        assert!(two[0].left(1).is_zero());
        assert_eq!(two[1].left(1).rank(r.field()), 1);
    }

    #[test]
    fn sign_characters() {
        let k = Arc::new(FiniteField::new(3, 1).unwrap());
        let r = Arc::new(group_algebra(k, &[2]).unwrap());
        let ones = enumerate_left_modules(&r, 1, DEFAULT_ENUM_CAP).unwrap();
        let mut signs: Vec<Elem> = ones.iter().map(|m| m.left(1)[(0, 0)]).collect();
        signs.sort();
        assert_eq!(signs, vec![1, 2]);
        // semisimple: dim-2 modules are k+^2, k+ k-, k-^2
        assert_eq!(enumerate_left_modules(&r, 2, DEFAULT_ENUM_CAP).unwrap().len(), 3);
    }

    #[test]
    fn one_dimensional_bimodules_over_dual_numbers() {
        let r = dual_numbers(2, 1);
        let bims = enumerate_bimodules(&r, 2, 1, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(bims.len(), 1);
        assert!(bims[0].left(1).is_zero() && bims[0].right(0, 1).is_zero() && bims[0].right(1, 1).is_zero());
    }

    #[test]
    fn regular_bimodule_is_found() {
        let r = dual_numbers(2, 1);
        let reg = Arc::new(NFoldBimodule::regular(r.clone(), 1));
        let bims: Vec<Arc<NFoldBimodule>> =
            enumerate_bimodules(&r, 1, 2, DEFAULT_ENUM_CAP).unwrap().into_iter().map(Arc::new).collect();
        let hits = bims.iter().filter(|b| hom::iso_test(b, &reg, &[0]).unwrap().is_some()).count();
        assert_eq!(hits, 1);
    }

    #[test]
    fn zero_dimension_is_one_class() {
        let r = dual_numbers(3, 1);
        assert_eq!(enumerate_bimodules(&r, 2, 0, DEFAULT_ENUM_CAP).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let r = dual_numbers(2, 1);
        let a: Vec<Vec<Elem>> = enumerate_bimodules(&r, 1, 2, DEFAULT_ENUM_CAP).unwrap().iter().map(|m| m.encoding()).collect();
        let b: Vec<Vec<Elem>> = enumerate_bimodules(&r, 1, 2, DEFAULT_ENUM_CAP).unwrap().iter().map(|m| m.encoding()).collect();
        assert_eq!(a, b);
    }
}
