//! Intertwiners between n-fold bimodules: hom spaces by exact linear solving,
//! prescribed-value solving and certified isomorphism search.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bimodule::{self, NFoldBimodule};
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::linalg::{self, CoefficientOdometer, Echelon, Matrix};

/// Default number of hom-space elements scanned before giving up.
pub const DEFAULT_EXHAUSTIVE_CAP: u128 = 1 << 20;

/// A linear map `f` with `f(r x) = r f(x)` and `f(x . r) = f(x) . r` where the
/// right action on the left-hand side is in slot `t` and on the right-hand side
/// in slot `sigma[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intertwiner {
    pub domain: Arc<NFoldBimodule>,
    pub codomain: Arc<NFoldBimodule>,
    pub sigma: Vec<usize>,
    pub matrix: Matrix,
}

impl Intertwiner {
    pub fn new(domain: Arc<NFoldBimodule>, codomain: Arc<NFoldBimodule>, sigma: Vec<usize>, matrix: Matrix) -> Result<Self> {
        let f = Intertwiner { domain, codomain, sigma, matrix };
        if let Some(msg) = f.violations().into_iter().next() {
            return Err(Error::InvalidArgument(msg));
        }
        Ok(f)
    }

    pub fn identity(m: Arc<NFoldBimodule>) -> Self {
        let n = m.dim();
        let fold = m.fold();
        Intertwiner { domain: m.clone(), codomain: m, sigma: bimodule::identity_permutation(fold), matrix: Matrix::identity(n) }
    }

    /// Every failed intertwining condition.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (m, n) = (&self.domain, &self.codomain);
        if self.matrix.rows() != n.dim() || self.matrix.cols() != m.dim() {
            out.push("matrix shape does not match the modules".into());
            return out;
        }
        if m.fold() != n.fold() || bimodule::check_permutation(&self.sigma, m.fold()).is_err() {
            out.push("slot correspondence is not a permutation of the folds".into());
            return out;
        }
        let k = m.field();
        for g in m.algebra().action_generators() {
            if self.matrix.mul(m.left(g), k) != n.left(g).mul(&self.matrix, k) {
                out.push(format!("does not intertwine the left action of basis element {g}"));
            }
            for t in 0..m.fold() {
                if self.matrix.mul(m.right(t, g), k) != n.right(self.sigma[t], g).mul(&self.matrix, k) {
                    out.push(format!("does not intertwine slot {} with slot {} at basis element {g}", t + 1, self.sigma[t] + 1));
                }
            }
        }
        out
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_invertible(self.domain.field())
    }

    pub fn inverse(&self) -> Option<Intertwiner> {
        let inv = self.matrix.inverse(self.domain.field())?;
        Some(Intertwiner {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            sigma: bimodule::invert_permutation(&self.sigma),
            matrix: inv,
        })
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Intertwiner) -> Intertwiner {
        let k = self.domain.field();
        Intertwiner {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            sigma: bimodule::compose_permutations(&self.sigma, &next.sigma),
            matrix: next.matrix.mul(&self.matrix, k),
        }
    }
}

/// Linear constraints `F A = B F` for each action pair, as rows over `vec(F)`
/// (row-major, index `r * dim M + c`).
fn intertwining_system(m: &NFoldBimodule, n: &NFoldBimodule, sigma: &[usize]) -> Echelon {
    let k = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let mut ech = Echelon::new(dm * dn);
    let mut pairs: Vec<(&Matrix, &Matrix)> = Vec::new();
    for g in m.algebra().action_generators() {
        pairs.push((m.left(g), n.left(g)));
        for (t, &s) in sigma.iter().enumerate() {
            pairs.push((m.right(t, g), n.right(s, g)));
        }
    }
    let mut entries = Vec::new();
    for (a, b) in pairs {
        for r in 0..dn {
            for c in 0..dm {
                entries.clear();
                for l in 0..dm {
                    let v = a[(l, c)];
                    if v != 0 {
                        entries.push((r * dm + l, v));
                    }
                }
                for l in 0..dn {
                    let v = b[(r, l)];
                    if v != 0 {
                        entries.push((l * dm + c, k.neg(v)));
                    }
                }
                ech.insert_sparse(&entries, k);
            }
        }
    }
    ech.finish(k);
    ech
}

/// A basis of the intertwiners `M -> N` with slot correspondence `sigma`.
pub fn hom_space(m: &NFoldBimodule, n: &NFoldBimodule, sigma: &[usize]) -> Result<Vec<Matrix>> {
    if m.fold() != n.fold() {
        return Err(Error::InvalidArgument(format!("fold mismatch: {} vs {}", m.fold(), n.fold())));
    }
    if m.algebra() != n.algebra() {
        return Err(Error::InvalidArgument("modules over different algebras".into()));
    }
    bimodule::check_permutation(sigma, m.fold())?;
    let ech = intertwining_system(m, n, sigma);
    let k = m.field();
    Ok(ech
        .nullspace(k)
        .into_iter()
        .map(|v| Matrix::from_vec(n.dim(), m.dim(), v))
        .collect())
}

/// Intertwiners taking each `x` to the paired `y`, as a particular solution plus
/// the basis of the homogeneous part. `None` if no intertwiner fits.
pub fn hom_with_values(
    m: &NFoldBimodule,
    n: &NFoldBimodule,
    sigma: &[usize],
    values: &[(Vec<Elem>, Vec<Elem>)],
) -> Result<Option<(Matrix, Vec<Matrix>)>> {
    let basis = hom_space(m, n, sigma)?;
    let k = m.field();
    let h = basis.len();
    let rows = values.len() * n.dim();
    let mut sys = Matrix::zeros(rows, h);
    let mut rhs = Vec::with_capacity(rows);
    for (vi, (x, y)) in values.iter().enumerate() {
        for (bi, b) in basis.iter().enumerate() {
            for (r, v) in b.apply(x, k).into_iter().enumerate() {
                sys[(vi * n.dim() + r, bi)] = v;
            }
        }
        rhs.extend_from_slice(y);
    }
    let Some(coeffs) = sys.solve(&rhs, k) else {
        return Ok(None);
    };
    let particular = linalg::combine(&coeffs, &basis, k);
    let homogeneous = sys
        .nullspace(k)
        .iter()
        .map(|c| linalg::combine(c, &basis, k))
        .collect();
    Ok(Some((particular, homogeneous)))
}

/// Invertible members of the span of `basis`, scanned in lexicographic
/// coefficient order with the leading nonzero coefficient normalized to 1
/// (scalar multiples of an invertible map are invertible). An empty basis
/// yields nothing.
pub fn invertible_combinations(basis: &[Matrix], k: &FiniteField, cap: u128, stage: &str) -> Result<Vec<Matrix>> {
    let h = basis.len();
    if h == 0 {
        return Ok(vec![]);
    }
    let size = projective_count(k.order(), h);
    if size > cap {
        return Err(Error::budget(stage, size, cap));
    }
    let mut out = Vec::new();
    for coeffs in CoefficientOdometer::new(k.order(), h) {
        if coeffs.iter().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let f = linalg::combine(&coeffs, basis, k);
        if f.is_invertible(k) {
            out.push(f);
        }
    }
    Ok(out)
}

/// Every invertible member of the span (no normalization). An empty basis
/// yields nothing.
pub fn all_invertible_combinations(basis: &[Matrix], k: &FiniteField, cap: u128, stage: &str) -> Result<Vec<Matrix>> {
    if basis.is_empty() {
        return Ok(vec![]);
    }
    let size = linalg::space_size(k.order(), basis.len());
    if size > cap {
        return Err(Error::budget(stage, size, cap));
    }
    Ok(CoefficientOdometer::new(k.order(), basis.len())
        .map(|c| linalg::combine(&c, basis, k))
        .filter(|f| f.is_invertible(k))
        .collect())
}

/// Number of coefficient vectors whose leading nonzero entry is 1.
pub fn projective_count(q: usize, h: usize) -> u128 {
    if h == 0 {
        return 0;
    }
    (linalg::space_size(q, h).saturating_sub(1)) / (q as u128 - 1)
}

/// An invertible intertwiner `M -> N`, or `None` when certified absent.
pub fn iso_test(m: &Arc<NFoldBimodule>, n: &Arc<NFoldBimodule>, sigma: &[usize]) -> Result<Option<Intertwiner>> {
    iso_test_with_cap(m, n, sigma, DEFAULT_EXHAUSTIVE_CAP)
}

pub fn iso_test_with_cap(
    m: &Arc<NFoldBimodule>,
    n: &Arc<NFoldBimodule>,
    sigma: &[usize],
    cap: u128,
) -> Result<Option<Intertwiner>> {
    if m.fold() != n.fold() {
        return Err(Error::InvalidArgument("fold mismatch".into()));
    }
    let wrap = |f: Matrix| Intertwiner { domain: m.clone(), codomain: n.clone(), sigma: sigma.to_vec(), matrix: f };
    if m.dim() != n.dim() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(wrap(Matrix::zeros(0, 0))));
    }
    let basis = hom_space(m, n, sigma)?;
    let k = m.field();
    if basis.is_empty() {
        return Ok(None);
    }
    // quick positive probe: a generic combination is usually invertible
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..16 {
        let c: Vec<Elem> = (0..basis.len()).map(|_| rng.gen_range(0..k.order()) as Elem).collect();
        let f = linalg::combine(&c, &basis, k);
        if f.is_invertible(k) {
            return Ok(Some(wrap(f)));
        }
    }
    let total = projective_count(k.order(), basis.len());
    if total > cap {
        return Err(Error::Inconclusive(format!(
            "hom space of dimension {} ({} normalized elements) exceeds the exhaustive cap {cap}",
            basis.len(),
            total
        )));
    }
    for coeffs in CoefficientOdometer::new(k.order(), basis.len()) {
        if coeffs.iter().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let f = linalg::combine(&coeffs, &basis, k);
        if f.is_invertible(k) {
            return Ok(Some(wrap(f)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_algebra, quotient_algebra, Algebra};

    fn f3z2() -> Arc<Algebra> {
        let k = Arc::new(FiniteField::new(3, 1).unwrap());
        Arc::new(group_algebra(k, &[2]).unwrap())
    }

    fn dual() -> Arc<Algebra> {
        let k = Arc::new(FiniteField::new(2, 1).unwrap());
        Arc::new(quotient_algebra(k, &[0, 0, 1]).unwrap())
    }

    #[test]
    fn no_maps_between_distinct_characters() {
        let r = f3z2();
        let plus = NFoldBimodule::character(r.clone(), &[1, 1]).unwrap();
        let minus = NFoldBimodule::character(r, &[1, 2]).unwrap();
        assert!(hom_space(&plus, &minus, &[]).unwrap().is_empty());
        assert_eq!(hom_space(&plus, &plus, &[]).unwrap().len(), 1);
    }

    #[test]
    fn regular_module_homs() {
        let r = dual();
        let reg = NFoldBimodule::regular(r.clone(), 0);
        let m = NFoldBimodule::from_generators(r.clone(), 3, &[{
            let mut x = Matrix::zeros(3, 3);
            x[(1, 0)] = 1;
            x
        }], &[])
        .unwrap();
        assert_eq!(hom_space(&reg, &m, &[]).unwrap().len(), 3);
        let kk = NFoldBimodule::from_generators(r, 1, &[Matrix::zeros(1, 1)], &[]).unwrap();
        assert_eq!(hom_space(&kk, &kk, &[]).unwrap().len(), 1);
    }

    #[test]
    fn split_and_free_modules_are_not_isomorphic() {
        let r = dual();
        let split = Arc::new(NFoldBimodule::from_generators(r.clone(), 2, &[Matrix::zeros(2, 2)], &[]).unwrap());
        let free = Arc::new(NFoldBimodule::regular(r, 0));
        assert!(iso_test(&split, &free, &[]).unwrap().is_none());
        let id = iso_test(&free, &free, &[]).unwrap().unwrap();
        assert!(id.is_invertible());
        assert!(id.violations().is_empty());
    }

    #[test]
    fn prescribed_values() {
        let r = dual();
        let reg = NFoldBimodule::regular(r.clone(), 0);
        // the map sending 1 to x is right multiplication by x
        let (f, rest) = hom_with_values(&reg, &reg, &[], &[(vec![1, 0], vec![0, 1])]).unwrap().unwrap();
        assert!(rest.is_empty());
        assert_eq!(f.apply(&[0, 1], r.field()), vec![0, 0]);
    }
}
