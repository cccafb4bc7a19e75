//! Finite-dimensional unital associative algebras over finite fields, given by
//! structure constants, together with the named constructors (group algebras,
//! truncated polynomial rings, matrix algebras) and ring-theoretic probes.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::linalg::{self, CoefficientOdometer, Matrix};

/// Elements scanned exhaustively at most this many at a time.
pub const DEFAULT_SCAN_CAP: u128 = 4096;

/// One relation `sum coef * word = 0`; a word lists generator positions
/// (indices into [`Presentation::generators`]) and the empty word is the unit.
pub type Relation = Vec<(Elem, Vec<usize>)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    /// Basis indices of the generating elements.
    pub generators: Vec<usize>,
    pub relations: Vec<Relation>,
}

/// Expansion of each basis element as a linear combination of generator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordBasis {
    pub words: Vec<Vec<usize>>,
    /// `coeffs[i][w]` is the coefficient of `words[w]` in basis element `i`.
    pub coeffs: Vec<Vec<Elem>>,
}

#[derive(Clone)]
pub struct Algebra {
    field: Arc<FiniteField>,
    dim: usize,
    /// `mul[i * dim + j]` holds the coordinates of `e_i * e_j`.
    mul: Vec<Vec<Elem>>,
    unit: Vec<Elem>,
    names: Vec<String>,
    presentation: Option<Presentation>,
    word_basis: Option<WordBasis>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.mul == other.mul
            && self.unit == other.unit
            && self.names == other.names
            && self.presentation == other.presentation
    }
}

impl Eq for Algebra {}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra(dim {} over {:?}, basis {:?})", self.dim, self.field, self.names)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterReport {
    pub center_basis: Vec<Vec<Elem>>,
    pub central_idempotents: Vec<Vec<Elem>>,
    /// `None` when the ring is too large to list its units.
    pub units: Option<Vec<Vec<Elem>>>,
    /// Set when the idempotent scan had to stop at the cap.
    pub partial: bool,
}

impl Algebra {
    /// Build and verify an algebra from structure constants.
    pub fn new(
        field: Arc<FiniteField>,
        mul: Vec<Vec<Elem>>,
        unit: Vec<Elem>,
        names: Vec<String>,
        presentation: Option<Presentation>,
    ) -> Result<Self> {
        let dim = unit.len();
        if mul.len() != dim * dim || mul.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidArgument("structure constant table has wrong shape".into()));
        }
        if names.len() != dim {
            return Err(Error::InvalidArgument("basis name count differs from dimension".into()));
        }
        let q = field.order() as Elem;
        if mul.iter().flatten().chain(unit.iter()).any(|&x| x >= q) {
            return Err(Error::InvalidArgument("coordinate outside the field".into()));
        }
        let mut alg = Algebra {
            field,
            dim,
            mul,
            unit,
            names,
            presentation: None,
            word_basis: None,
        };
        if let Some(msg) = alg.axiom_violation() {
            return Err(Error::InvalidArgument(msg));
        }
        if let Some(p) = presentation {
            alg.set_presentation(p)?;
        }
        Ok(alg)
    }

    fn set_presentation(&mut self, p: Presentation) -> Result<()> {
        if p.generators.iter().any(|&g| g >= self.dim) {
            return Err(Error::InvalidArgument("generator index out of range".into()));
        }
        for rel in &p.relations {
            for (_, w) in rel {
                if w.iter().any(|&g| g >= p.generators.len()) {
                    return Err(Error::InvalidArgument("relation word uses unknown generator".into()));
                }
            }
            if self.eval_relation(&p, rel).iter().any(|&x| x != 0) {
                return Err(Error::InvalidArgument("relation does not hold in the algebra".into()));
            }
        }
        let wb = self.derive_word_basis(&p.generators)?;
        self.presentation = Some(p);
        self.word_basis = Some(wb);
        Ok(())
    }

    fn eval_relation(&self, p: &Presentation, rel: &Relation) -> Vec<Elem> {
        let k = &*self.field;
        let mut acc = vec![0; self.dim];
        for (c, w) in rel {
            let v = w
                .iter()
                .fold(self.unit.clone(), |a, &g| self.multiply(&a, &self.basis_vector(p.generators[g])));
            linalg::vec_axpy(&mut acc, *c, &v, k);
        }
        acc
    }

    fn derive_word_basis(&self, gens: &[usize]) -> Result<WordBasis> {
        let k = &*self.field;
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut values: Vec<Vec<Elem>> = vec![self.unit.clone()];
        let mut frontier = 0;
        while frontier < words.len() && values.len() < self.dim {
            let w = words[frontier].clone();
            let v = values[frontier].clone();
            for (gi, &g) in gens.iter().enumerate() {
                let nv = self.multiply(&v, &self.basis_vector(g));
                let mut trial = values.clone();
                trial.push(nv.clone());
                if linalg::rank_of(&trial, self.dim, k) == trial.len() {
                    let mut nw = w.clone();
                    nw.push(gi);
                    words.push(nw);
                    values.push(nv);
                }
            }
            frontier += 1;
        }
        if linalg::rank_of(&values, self.dim, k) < self.dim {
            return Err(Error::InvalidArgument("presentation generators do not generate the algebra".into()));
        }
        let value_matrix = Matrix::from_columns(self.dim, &values);
        let coeffs = (0..self.dim)
            .map(|i| value_matrix.solve(&self.basis_vector(i), k).expect("words span the algebra"))
            .collect();
        Ok(WordBasis { words, coeffs })
    }

    /// First violated associativity or unit law, if any.
    pub fn axiom_violation(&self) -> Option<String> {
        let d = self.dim;
        for i in 0..d {
            let ei = self.basis_vector(i);
            if self.multiply(&self.unit, &ei) != ei || self.multiply(&ei, &self.unit) != ei {
                return Some(format!("unit law fails on basis element {i}"));
            }
            for j in 0..d {
                for l in 0..d {
                    let left = self.multiply(&self.mul[i * d + j], &self.basis_vector(l));
                    let right = self.multiply(&ei, &self.mul[j * d + l]);
                    if left != right {
                        return Some(format!("associativity fails on basis triple ({i},{j},{l})"));
                    }
                }
            }
        }
        None
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Elem] {
        &self.unit
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn structure_constants(&self) -> &[Vec<Elem>] {
        &self.mul
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn word_basis(&self) -> Option<&WordBasis> {
        self.word_basis.as_ref()
    }

    /// Basis indices that suffice to test intertwining conditions: the
    /// presentation generators when present, otherwise every basis element.
    pub fn action_generators(&self) -> Vec<usize> {
        match &self.presentation {
            Some(p) => p.generators.clone(),
            None => (0..self.dim).collect(),
        }
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn zero(&self) -> Vec<Elem> {
        vec![0; self.dim]
    }

    pub fn multiply(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let k = &*self.field;
        let d = self.dim;
        let mut out = vec![0; d];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                linalg::vec_axpy(&mut out, k.mul(x, y), &self.mul[i * d + j], k);
            }
        }
        out
    }

    pub fn add(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        linalg::vec_add(a, b, &self.field)
    }

    pub fn scalar(&self, c: Elem) -> Vec<Elem> {
        linalg::vec_scale(&self.unit, c, &self.field)
    }

    /// Matrix of `x -> a x` on the basis.
    pub fn left_mult(&self, a: &[Elem]) -> Matrix {
        let cols: Vec<Vec<Elem>> = (0..self.dim).map(|j| self.multiply(a, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Matrix of `x -> x a` on the basis.
    pub fn right_mult(&self, a: &[Elem]) -> Matrix {
        let cols: Vec<Vec<Elem>> = (0..self.dim).map(|j| self.multiply(&self.basis_vector(j), a)).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| (0..d).all(|j| self.mul[i * d + j] == self.mul[j * d + i]))
    }

    pub fn is_unit(&self, a: &[Elem]) -> bool {
        self.left_mult(a).is_invertible(&self.field)
    }

    pub fn inverse(&self, a: &[Elem]) -> Option<Vec<Elem>> {
        let l = self.left_mult(a);
        let x = l.solve(&self.unit, &self.field)?;
        (self.multiply(&x, a) == self.unit).then_some(x)
    }

    pub fn element_count(&self) -> u128 {
        linalg::space_size(self.field.order(), self.dim)
    }

    /// All elements in lexicographic coordinate order, if within `cap`.
    pub fn elements(&self, cap: u128) -> Option<Vec<Vec<Elem>>> {
        (self.element_count() <= cap).then(|| CoefficientOdometer::new(self.field.order(), self.dim).collect())
    }

    /// Whether the linear map `phi` (columns = images of basis elements) is a
    /// unital algebra homomorphism into `target`.
    pub fn is_homomorphism(&self, phi: &Matrix, target: &Algebra) -> bool {
        let k = &*self.field;
        if phi.cols() != self.dim || phi.rows() != target.dim {
            return false;
        }
        if phi.apply(&self.unit, k) != target.unit {
            return false;
        }
        let img: Vec<Vec<Elem>> = (0..self.dim).map(|i| phi.column(i)).collect();
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| phi.apply(&self.mul[i * self.dim + j], k) == target.multiply(&img[i], &img[j]))
        })
    }

    /// Center, central idempotents and (for small rings) units.
    pub fn analyze(&self) -> CenterReport {
        self.analyze_with_cap(DEFAULT_SCAN_CAP)
    }

    pub fn analyze_with_cap(&self, cap: u128) -> CenterReport {
        let k = &*self.field;
        let d = self.dim;
        // z = sum z_i e_i is central iff sum z_i (e_i e_j - e_j e_i) = 0 for all j
        let mut sys = Matrix::zeros(d * d, d);
        for i in 0..d {
            for j in 0..d {
                let comm = linalg::vec_add(&self.mul[i * d + j], &linalg::vec_scale(&self.mul[j * d + i], k.neg(1), k), k);
                for (r, &c) in comm.iter().enumerate() {
                    sys[(j * d + r, i)] = c;
                }
            }
        }
        let center_basis = sys.nullspace(k);
        let zdim = center_basis.len();
        let scan = linalg::space_size(k.order(), zdim);
        let partial = scan > cap;
        let mut central_idempotents = Vec::new();
        for coeffs in CoefficientOdometer::new(k.order(), zdim).take(cap.min(scan) as usize) {
            let mut z = vec![0; d];
            for (c, b) in coeffs.iter().zip(&center_basis) {
                linalg::vec_axpy(&mut z, *c, b, k);
            }
            if self.multiply(&z, &z) == z {
                central_idempotents.push(z);
            }
        }
        central_idempotents.sort();
        let units = self
            .elements(cap)
            .map(|els| els.into_iter().filter(|a| self.is_unit(a)).collect());
        CenterReport {
            center_basis,
            central_idempotents,
            units,
            partial,
        }
    }

    /// Whether `z` commutes with every basis element.
    pub fn is_central(&self, z: &[Elem]) -> bool {
        (0..self.dim).all(|i| {
            let e = self.basis_vector(i);
            self.multiply(z, &e) == self.multiply(&e, z)
        })
    }

    /// No nonzero nilpotent elements (exhaustive; `None` above the cap).
    pub fn is_reduced(&self, cap: u128) -> Option<bool> {
        let els = self.elements(cap)?;
        Some(els.iter().all(|a| a.iter().all(|&x| x == 0) || !self.is_nilpotent(a)))
    }

    pub fn is_nilpotent(&self, a: &[Elem]) -> bool {
        let mut p = a.to_vec();
        for _ in 0..=self.dim {
            if p.iter().all(|&x| x == 0) {
                return true;
            }
            p = self.multiply(&p, a);
        }
        p.iter().all(|&x| x == 0)
    }

    /// Span closure helper: RREF basis of the span of `vectors`.
    pub fn span_basis(&self, vectors: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
        let k = &*self.field;
        if vectors.is_empty() {
            return vec![];
        }
        let data: Vec<Elem> = vectors.iter().flatten().copied().collect();
        let mut m = Matrix::from_vec(vectors.len(), self.dim, data);
        let r = m.rref(k).len();
        (0..r).map(|i| m.row(i).to_vec()).collect()
    }

    /// The two-sided ideal generated by `generators`, as an RREF basis.
    pub fn two_sided_ideal(&self, generators: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
        let mut gens = Vec::new();
        for g in generators {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let t = self.multiply(&self.multiply(&self.basis_vector(i), g), &self.basis_vector(j));
                    gens.push(t);
                }
            }
        }
        self.span_basis(&gens)
    }

    /// Every two-sided ideal (as RREF bases), found as sums of principal ideals.
    /// `None` when the ring has more than `cap` elements.
    pub fn two_sided_ideals(&self, cap: u128) -> Option<Vec<Vec<Vec<Elem>>>> {
        let els = self.elements(cap)?;
        let mut ideals: Vec<Vec<Vec<Elem>>> = vec![vec![]];
        for a in &els {
            let id = self.two_sided_ideal(std::slice::from_ref(a));
            if !ideals.contains(&id) {
                ideals.push(id);
            }
        }
        loop {
            let mut added = false;
            let snapshot = ideals.clone();
            for (i, a) in snapshot.iter().enumerate() {
                for b in snapshot.iter().skip(i + 1) {
                    let mut all = a.clone();
                    all.extend(b.iter().cloned());
                    let s = self.span_basis(&all);
                    if !ideals.contains(&s) {
                        ideals.push(s);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        ideals.sort_by_key(|b| (b.len(), b.clone()));
        Some(ideals)
    }

    /// No two-sided ideals other than 0 and the whole ring.
    pub fn is_simple(&self, cap: u128) -> Option<bool> {
        let ideals = self.two_sided_ideals(cap)?;
        Some(ideals.iter().all(|i| i.is_empty() || i.len() == self.dim))
    }

    /// The algebra with the same structure but no presentation.
    pub fn without_presentation(&self) -> Algebra {
        let mut a = self.clone();
        a.presentation = None;
        a.word_basis = None;
        a
    }
}

// ---------------------------------------------------------------------------
// Named constructors
// ---------------------------------------------------------------------------

pub const DEFAULT_MAX_ALGEBRA_DIM: usize = 64;

/// The group algebra of `Z/n_1 x ... x Z/n_r`.
pub fn group_algebra(k: Arc<FiniteField>, cyclic_orders: &[usize]) -> Result<Algebra> {
    if cyclic_orders.iter().any(|&n| n == 0) {
        return Err(Error::InvalidArgument("cyclic factor of order 0".into()));
    }
    let order: usize = cyclic_orders.iter().product();
    if order > DEFAULT_MAX_ALGEBRA_DIM {
        return Err(Error::InvalidArgument(format!("group order {order} exceeds maximum")));
    }
    let r = cyclic_orders.len();
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut exps = vec![0; r];
        for f in (0..r).rev() {
            exps[f] = idx % cyclic_orders[f];
            idx /= cyclic_orders[f];
        }
        exps
    };
    let encode = |exps: &[usize]| -> usize { exps.iter().zip(cyclic_orders).fold(0, |acc, (&e, &n)| acc * n + e) };
    let mut mul = Vec::with_capacity(order * order);
    for i in 0..order {
        for j in 0..order {
            let (a, b) = (decode(i), decode(j));
            let s: Vec<usize> = (0..r).map(|f| (a[f] + b[f]) % cyclic_orders[f]).collect();
            let mut v = vec![0; order];
            v[encode(&s)] = 1;
            mul.push(v);
        }
    }
    let mut unit = vec![0; order];
    unit[0] = 1;
    let names = (0..order)
        .map(|i| {
            let exps = decode(i);
            let parts: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(f, &e)| if r == 1 { format!("g^{e}") } else { format!("g{}^{e}", f + 1) })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        })
        .collect();
    let mut generators = Vec::new();
    let mut relations = Vec::new();
    for f in 0..r {
        if cyclic_orders[f] == 1 {
            continue;
        }
        let mut e = vec![0; r];
        e[f] = 1;
        generators.push(encode(&e));
    }
    let minus_one = k.neg(1);
    for (gi, f) in (0..r).filter(|&f| cyclic_orders[f] > 1).enumerate() {
        relations.push(vec![(1, vec![gi; cyclic_orders[f]]), (minus_one, vec![])]);
    }
    for a in 0..generators.len() {
        for b in a + 1..generators.len() {
            relations.push(vec![(1, vec![a, b]), (minus_one, vec![b, a])]);
        }
    }
    Algebra::new(k, mul, unit, names, Some(Presentation { generators, relations }))
}

/// `k[x]/(f)` for a monic `f` given by coefficients from the constant term up.
pub fn quotient_algebra(k: Arc<FiniteField>, f: &[Elem]) -> Result<Algebra> {
    let n = f.len().checked_sub(1).filter(|&n| n >= 1).ok_or_else(|| {
        Error::InvalidArgument("polynomial must have degree at least 1".into())
    })?;
    if f[n] != 1 {
        return Err(Error::InvalidArgument("polynomial must be monic".into()));
    }
    if n > DEFAULT_MAX_ALGEBRA_DIM {
        return Err(Error::InvalidArgument("degree exceeds maximum".into()));
    }
    // reduce x^m for m < 2n - 1
    let mut powers: Vec<Vec<Elem>> = Vec::new();
    for m in 0..(2 * n - 1) {
        if m < n {
            let mut v = vec![0; n];
            v[m] = 1;
            powers.push(v);
        } else {
            let prev = powers[m - 1].clone();
            let mut v = vec![0; n];
            for i in 0..n - 1 {
                v[i + 1] = prev[i];
            }
            let top = prev[n - 1];
            for i in 0..n {
                v[i] = k.sub(v[i], k.mul(top, f[i]));
            }
            powers.push(v);
        }
    }
    let mut mul = Vec::new();
    for i in 0..n {
        for j in 0..n {
            mul.push(powers[i + j].clone());
        }
    }
    let mut unit = vec![0; n];
    unit[0] = 1;
    let names = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    let presentation = if n == 1 {
        Presentation { generators: vec![], relations: vec![] }
    } else {
        let relation: Relation = f
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (c, vec![0; i]))
            .collect();
        Presentation { generators: vec![1], relations: vec![relation] }
    };
    Algebra::new(k, mul, unit, names, Some(presentation))
}

/// `M_n(k)` with matrix-unit basis `E_ij` at index `i * n + j`.
pub fn matrix_algebra(k: Arc<FiniteField>, n: usize) -> Result<Algebra> {
    if n == 0 || n * n > DEFAULT_MAX_ALGEBRA_DIM {
        return Err(Error::InvalidArgument(format!("matrix size {n} out of range")));
    }
    let d = n * n;
    let mut mul = Vec::new();
    for a in 0..d {
        for b in 0..d {
            let (i, j) = (a / n, a % n);
            let (l, m) = (b / n, b % n);
            let mut v = vec![0; d];
            if j == l {
                v[i * n + m] = 1;
            }
            mul.push(v);
        }
    }
    let mut unit = vec![0; d];
    for i in 0..n {
        unit[i * n + i] = 1;
    }
    let names = (0..d).map(|a| format!("E{}{}", a / n + 1, a % n + 1)).collect();
    let minus_one = k.neg(1);
    let presentation = match n {
        1 => Presentation { generators: vec![], relations: vec![] },
        2 => Presentation {
            // a = E12, b = E21: a^2 = b^2 = 0, ab + ba = 1
            generators: vec![1, 2],
            relations: vec![
                vec![(1, vec![0, 0])],
                vec![(1, vec![1, 1])],
                vec![(1, vec![0, 1]), (1, vec![1, 0]), (minus_one, vec![])],
            ],
        },
        _ => {
            let mut relations = Vec::new();
            for a in 0..d {
                for b in 0..d {
                    let (j, l) = (a % n, b / n);
                    let mut rel = vec![(1, vec![a, b])];
                    if j == l {
                        rel.push((minus_one, vec![(a / n) * n + b % n]));
                    }
                    relations.push(rel);
                }
            }
            let mut rel: Relation = (0..n).map(|i| (1, vec![i * n + i])).collect();
            rel.push((minus_one, vec![]));
            relations.push(rel);
            Presentation { generators: (0..d).collect(), relations }
        }
    };
    Algebra::new(k, mul, unit, names, Some(presentation))
}

/// The ground field as a one-dimensional algebra.
pub fn base_field_algebra(k: Arc<FiniteField>) -> Result<Algebra> {
    quotient_algebra(k, &[0, 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: usize) -> Arc<FiniteField> {
        Arc::new(FiniteField::new(p, 1).unwrap())
    }

    #[test]
    fn group_algebra_of_z2_over_f2() {
        let r = group_algebra(f(2), &[2]).unwrap();
        assert_eq!(r.dim(), 2);
        let g = r.basis_vector(1);
        assert_eq!(r.multiply(&g, &g), r.unit());
    }

    #[test]
    fn idempotents_of_f3_z2() {
        let k = f(3);
        let r = group_algebra(k.clone(), &[2]).unwrap();
        let report = r.analyze();
        let e_plus = vec![2, 2];
        let e_minus = vec![2, 1];
        let expected = vec![vec![0, 0], vec![1, 0], e_minus.clone(), e_plus.clone()];
        let mut exp_sorted = expected.clone();
        exp_sorted.sort();
        assert_eq!(report.central_idempotents, exp_sorted);
        assert_eq!(r.multiply(&e_plus, &e_minus), vec![0, 0]);
    }

    #[test]
    fn group_algebra_matches_truncated_polynomials_in_char_2() {
        let k = f(2);
        let g = group_algebra(k.clone(), &[2]).unwrap();
        let q = quotient_algebra(k.clone(), &[0, 0, 1]).unwrap();
        // 1 -> 1, g -> 1 + x
        let phi = Matrix::from_columns(2, &[vec![1, 0], vec![1, 1]]);
        assert!(g.is_homomorphism(&phi, &q));
        assert!(phi.is_invertible(&k));
    }

    #[test]
    fn quotient_examples() {
        let r = quotient_algebra(f(2), &[0, 0, 1]).unwrap();
        let x = r.basis_vector(1);
        assert_eq!(r.multiply(&x, &x), vec![0, 0]);
        let k3 = f(3);
        let s = quotient_algebra(k3.clone(), &[2, 0, 1]).unwrap();
        let x = s.basis_vector(1);
        assert_eq!(s.multiply(&x, &x), s.unit());
        let t = quotient_algebra(f(2), &[0, 1]).unwrap();
        assert_eq!(t.dim(), 1);
        let z = group_algebra(k3.clone(), &[2]).unwrap();
        let id = Matrix::identity(2);
        assert!(s.is_homomorphism(&id, &z));
    }

    #[test]
    fn matrix_units_and_center() {
        let m = matrix_algebra(f(2), 2).unwrap();
        let e11 = m.basis_vector(0);
        let e12 = m.basis_vector(1);
        assert_eq!(m.multiply(&e11, &e12), e12);
        assert_eq!(m.multiply(&e12, &e11), m.zero());
        let rep = m.analyze();
        assert_eq!(rep.center_basis.len(), 1);
        assert_eq!(rep.central_idempotents, vec![vec![0, 0, 0, 0], vec![1, 0, 0, 1]]);
        assert!(!m.is_commutative());
        assert_eq!(m.is_simple(4096), Some(true));
        assert_eq!(matrix_algebra(f(2), 1).unwrap().dim(), 1);
        assert!(matrix_algebra(f(2), 3).unwrap().word_basis().is_some());
    }

    #[test]
    fn commutative_local_ring_probe() {
        let r = quotient_algebra(f(2), &[0, 0, 1]).unwrap();
        let rep = r.analyze();
        assert_eq!(rep.center_basis.len(), 2);
        assert_eq!(rep.central_idempotents, vec![vec![0, 0], vec![1, 0]]);
        assert_eq!(rep.units.unwrap().len(), 2);
        assert_eq!(r.is_reduced(4096), Some(false));
        assert_eq!(r.two_sided_ideals(4096).unwrap().len(), 3);
    }

    #[test]
    fn associativity_exhaustive_for_constructors() {
        for alg in [
            group_algebra(f(3), &[3]).unwrap(),
            group_algebra(f(2), &[2, 2]).unwrap(),
            quotient_algebra(f(5), &[1, 0, 0, 1]).unwrap(),
            matrix_algebra(f(3), 2).unwrap(),
        ] {
            assert!(alg.axiom_violation().is_none());
        }
    }

    #[test]
    fn bad_presentation_rejected() {
        let k = f(2);
        let r = quotient_algebra(k.clone(), &[0, 0, 1]).unwrap();
        let bad = Presentation { generators: vec![], relations: vec![] };
        let res = Algebra::new(
            k,
            r.structure_constants().to_vec(),
            r.unit().to_vec(),
            r.names().to_vec(),
            Some(bad),
        );
        assert!(res.is_err());
    }
}
