//! Iterated tensor products over `R` of n-fold bimodules.
//!
//! A [`Shape`] is a rooted tree of factors: factor 0 keeps its left action and
//! every other factor has its left action consumed by exactly one right slot of
//! its parent. The ambient space is the field tensor product of the factors,
//! with pure tensors enumerated row-major (factor 0 most significant). The
//! quotient by the balancing relations `(x . r) (x) y - x (x) (r y)` gets as
//! basis the lexicographically-first pure tensors independent modulo the
//! relations. The surviving right slots are ordered by `(factor, slot)`.
//!
//! [`Leg`]s are linear maps between such spaces built from block maps (an
//! intertwiner applied to a contiguous sub-tree) and factor permutations; they
//! carry the slot correspondence along.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::bimodule::{self, NFoldBimodule};
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::linalg::{Echelon, Matrix};

/// Slot `slot` of factor `parent` is tensored against the left action of `child`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Link {
    pub parent: usize,
    pub slot: usize,
    pub child: usize,
}

impl Link {
    pub const fn new(parent: usize, slot: usize, child: usize) -> Self {
        Link { parent, slot, child }
    }
}

#[derive(Clone)]
pub struct Shape {
    factors: Vec<Arc<NFoldBimodule>>,
    links: Vec<Link>,
}

impl std::fmt::Debug for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let dims: Vec<(usize, usize)> = self.factors.iter().map(|m| (m.dim(), m.fold())).collect();
        write!(f, "Shape(factors(dim, fold) {:?}, links {:?})", dims, self.links)
    }
}

type ShapeKey = (Vec<usize>, Vec<Link>);

impl Shape {
    pub fn new(factors: Vec<Arc<NFoldBimodule>>, mut links: Vec<Link>) -> Result<Self> {
        let n = factors.len();
        if n == 0 {
            return Err(Error::InvalidArgument("shape without factors".into()));
        }
        if factors.iter().any(|f| f.algebra() != factors[0].algebra()) {
            return Err(Error::InvalidArgument("tensor factors over different algebras".into()));
        }
        links.sort();
        let mut parent = vec![None; n];
        for l in &links {
            if l.parent >= n || l.child >= n || l.child == 0 || l.slot >= factors[l.parent].fold() {
                return Err(Error::InvalidArgument(format!("invalid link {l:?}")));
            }
            if parent[l.child].is_some() {
                return Err(Error::InvalidArgument(format!("factor {} linked twice", l.child)));
            }
            parent[l.child] = Some(l.parent);
        }
        if links.windows(2).any(|w| (w[0].parent, w[0].slot) == (w[1].parent, w[1].slot)) {
            return Err(Error::InvalidArgument("slot consumed twice".into()));
        }
        for c in 1..n {
            let mut cur = c;
            let mut steps = 0;
            while cur != 0 {
                cur = parent[cur].ok_or_else(|| Error::InvalidArgument(format!("factor {c} is not attached")))?;
                steps += 1;
                if steps > n {
                    return Err(Error::InvalidArgument("links contain a cycle".into()));
                }
            }
        }
        Ok(Shape { factors, links })
    }

    pub fn single(m: Arc<NFoldBimodule>) -> Self {
        Shape { factors: vec![m], links: vec![] }
    }

    pub fn factors(&self) -> &[Arc<NFoldBimodule>] {
        &self.factors
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    /// Unconsumed right slots as `(factor, slot)`, in result order.
    pub fn surviving_slots(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (f, m) in self.factors.iter().enumerate() {
            for s in 0..m.fold() {
                if !self.links.iter().any(|l| l.parent == f && l.slot == s) {
                    out.push((f, s));
                }
            }
        }
        out
    }

    fn key(&self) -> ShapeKey {
        (self.factors.iter().map(|f| Arc::as_ptr(f) as usize).collect(), self.links.clone())
    }

    fn parent_of(&self, c: usize) -> Option<&Link> {
        self.links.iter().find(|l| l.child == c)
    }
}

pub struct TensorSpace {
    shape: Shape,
    dims: Vec<usize>,
    strides: Vec<usize>,
    ambient: usize,
    basis: Vec<usize>,
    proj: Vec<Vec<(u32, Elem)>>,
    slots: Vec<(usize, usize)>,
    module: Arc<NFoldBimodule>,
}

impl std::fmt::Debug for TensorSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TensorSpace(dim {} of ambient {}, {:?})", self.basis.len(), self.ambient, self.shape)
    }
}

impl TensorSpace {
    pub fn new(shape: Shape) -> Result<Self> {
        let algebra = shape.factors[0].algebra().clone();
        let k = &**algebra.field();
        let dims: Vec<usize> = shape.factors.iter().map(|f| f.dim()).collect();
        let n = dims.len();
        let mut strides = vec![1; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        let ambient: usize = dims.iter().product();
        if ambient > 1 << 22 {
            return Err(Error::budget("tensor ambient space", ambient, 1 << 22));
        }
        let mut ech = Echelon::new(ambient);
        let gens = algebra.action_generators();
        let mut entries: Vec<(usize, Elem)> = Vec::new();
        for l in &shape.links {
            let (p, c) = (l.parent, l.child);
            for &g in &gens {
                let rho = shape.factors[p].right(l.slot, g);
                let lam = shape.factors[c].left(g);
                for a in 0..ambient {
                    entries.clear();
                    let xp = (a / strides[p]) % dims[p];
                    let yc = (a / strides[c]) % dims[c];
                    let base_p = a - xp * strides[p];
                    let base_c = a - yc * strides[c];
                    for x2 in 0..dims[p] {
                        let v = rho[(x2, xp)];
                        if v != 0 {
                            entries.push((base_p + x2 * strides[p], v));
                        }
                    }
                    for y2 in 0..dims[c] {
                        let v = lam[(y2, yc)];
                        if v != 0 {
                            entries.push((base_c + y2 * strides[c], k.neg(v)));
                        }
                    }
                    ech.insert_sparse(&entries, k);
                }
            }
        }
        ech.finish(k);
        let basis = ech.free_columns();
        let mut qidx = vec![u32::MAX; ambient];
        for (i, &b) in basis.iter().enumerate() {
            qidx[b] = i as u32;
        }
        let proj: Vec<Vec<(u32, Elem)>> = (0..ambient)
            .map(|a| match ech.row(a) {
                None => vec![(qidx[a], 1)],
                Some(row) => row
                    .iter()
                    .filter(|&&(j, _)| j as usize != a)
                    .map(|&(j, c)| (qidx[j as usize], k.neg(c)))
                    .collect(),
            })
            .collect();
        let slots = shape.surviving_slots();
        let mut space = TensorSpace {
            shape,
            dims,
            strides,
            ambient,
            basis,
            proj,
            slots,
            module: Arc::new(NFoldBimodule::zero(algebra.clone(), 0)),
        };
        space.module = Arc::new(space.induced_module()?);
        Ok(space)
    }

    /// `M (x)_slot N` as a two-factor space.
    pub fn binary(m: Arc<NFoldBimodule>, slot: usize, n: Arc<NFoldBimodule>) -> Result<Self> {
        if slot >= m.fold() {
            return Err(Error::InvalidArgument(format!("slot {} out of range for fold {}", slot + 1, m.fold())));
        }
        TensorSpace::new(Shape::new(vec![m, n], vec![Link::new(0, slot, 1)])?)
    }

    fn induced_module(&self) -> Result<NFoldBimodule> {
        let algebra = self.shape.factors[0].algebra().clone();
        let d = algebra.dim();
        let left = (0..d)
            .map(|i| self.factor_action(0, self.shape.factors[0].left(i)))
            .collect();
        let right = self
            .slots
            .iter()
            .map(|&(f, s)| (0..d).map(|i| self.factor_action(f, self.shape.factors[f].right(s, i))).collect())
            .collect();
        let labels: Vec<String> = self
            .slots
            .iter()
            .map(|&(f, s)| self.shape.factors[f].labels()[s].clone())
            .collect();
        Ok(NFoldBimodule::new_unchecked(algebra, self.dim(), left, right)?.with_labels(labels))
    }

    /// Matrix on the quotient of `table` acting on factor `f`.
    fn factor_action(&self, f: usize, table: &Matrix) -> Matrix {
        let k = self.field();
        let dim = self.dim();
        let mut out = Matrix::zeros(dim, dim);
        let mut col = vec![0; dim];
        for (j, &a) in self.basis.iter().enumerate() {
            let x = (a / self.strides[f]) % self.dims[f];
            let base = a - x * self.strides[f];
            for x2 in 0..self.dims[f] {
                let v = table[(x2, x)];
                if v != 0 {
                    self.project_add(base + x2 * self.strides[f], v, &mut col, k);
                }
            }
            for (i, c) in col.iter_mut().enumerate() {
                out[(i, j)] = *c;
                *c = 0;
            }
        }
        out
    }

    pub fn field(&self) -> &FiniteField {
        self.shape.factors[0].field()
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Ambient index of the pure tensor chosen for each quotient basis element.
    pub fn section(&self) -> &[usize] {
        &self.basis
    }

    pub fn slots(&self) -> &[(usize, usize)] {
        &self.slots
    }

    pub fn module(&self) -> &Arc<NFoldBimodule> {
        &self.module
    }

    pub fn decode(&self, a: usize) -> Vec<usize> {
        (0..self.dims.len()).map(|f| (a / self.strides[f]) % self.dims[f]).collect()
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().zip(&self.strides).map(|(x, s)| x * s).sum()
    }

    /// Quotient coordinates of an ambient basis tensor.
    pub fn projection(&self, a: usize) -> &[(u32, Elem)] {
        &self.proj[a]
    }

    /// `out += c * pi(e_a)`.
    pub fn project_add(&self, a: usize, c: Elem, out: &mut [Elem], k: &FiniteField) {
        for &(q, v) in &self.proj[a] {
            let cell = &mut out[q as usize];
            *cell = k.add(*cell, k.mul(c, v));
        }
    }

    /// Project an ambient vector.
    pub fn project(&self, v: &[Elem]) -> Vec<Elem> {
        let k = self.field();
        let mut out = vec![0; self.dim()];
        for (a, &c) in v.iter().enumerate() {
            if c != 0 {
                self.project_add(a, c, &mut out, k);
            }
        }
        out
    }

    /// Quotient coordinates of the pure tensor `x_0 (x) x_1 (x) ...` of
    /// arbitrary factor vectors.
    pub fn pure(&self, vectors: &[Vec<Elem>]) -> Vec<Elem> {
        let k = self.field();
        let mut out = vec![0; self.dim()];
        let mut stack: Vec<(usize, usize, Elem)> = vec![(0, 0, 1)];
        while let Some((f, idx, c)) = stack.pop() {
            if f == vectors.len() {
                self.project_add(idx, c, &mut out, k);
                continue;
            }
            for (x, &v) in vectors[f].iter().enumerate() {
                if v != 0 {
                    stack.push((f + 1, idx + x * self.strides[f], k.mul(c, v)));
                }
            }
        }
        out
    }
}

/// Memoized tensor spaces keyed by factor identity and links.
#[derive(Default)]
pub struct TensorCache {
    spaces: Mutex<HashMap<ShapeKey, Arc<TensorSpace>>>,
}

impl TensorCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn space(&self, shape: Shape) -> Result<Arc<TensorSpace>> {
        let key = shape.key();
        if let Some(s) = self.spaces.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let s = Arc::new(TensorSpace::new(shape)?);
        Ok(self.spaces.lock().unwrap().entry(key).or_insert(s).clone())
    }

    pub fn single(&self, m: &Arc<NFoldBimodule>) -> Result<Arc<TensorSpace>> {
        self.space(Shape::single(m.clone()))
    }

    pub fn spaces(&self, factors: &[&Arc<NFoldBimodule>], links: &[(usize, usize, usize)]) -> Result<Arc<TensorSpace>> {
        let links = links.iter().map(|&(p, s, c)| Link::new(p, s, c)).collect();
        self.space(Shape::new(factors.iter().map(|&f| f.clone()).collect(), links)?)
    }

    pub fn len(&self) -> usize {
        self.spaces.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A linear map between tensor spaces together with its slot correspondence:
/// slot `t` of the source goes to slot `sigma[t]` of the target.
#[derive(Clone, Debug)]
pub struct Leg {
    pub src: Arc<TensorSpace>,
    pub dst: Arc<TensorSpace>,
    pub matrix: Matrix,
    pub sigma: Vec<usize>,
}

impl Leg {
    pub fn identity(space: &Arc<TensorSpace>) -> Leg {
        Leg {
            src: space.clone(),
            dst: space.clone(),
            matrix: Matrix::identity(space.dim()),
            sigma: bimodule::identity_permutation(space.slots().len()),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Leg) -> Result<Leg> {
        if !Arc::ptr_eq(&self.dst, &next.src) {
            return Err(Error::InvalidArgument("composing legs with mismatched spaces".into()));
        }
        let k = self.src.field();
        Ok(Leg {
            src: self.src.clone(),
            dst: next.dst.clone(),
            matrix: next.matrix.mul(&self.matrix, k),
            sigma: bimodule::compose_permutations(&self.sigma, &next.sigma),
        })
    }

    /// Continue with `f` applied to the factors of the current target starting
    /// at `start`.
    pub fn block(&self, cache: &TensorCache, start: usize, f: &Leg) -> Result<Leg> {
        self.then(&block_map(cache, &self.dst, start, f)?)
    }

    pub fn inverse(&self) -> Option<Leg> {
        let k = self.src.field();
        Some(Leg {
            src: self.dst.clone(),
            dst: self.src.clone(),
            matrix: self.matrix.inverse(k)?,
            sigma: bimodule::invert_permutation(&self.sigma),
        })
    }

    /// Continue with a factor permutation at the current target.
    pub fn permute(&self, cache: &TensorCache, perm: &[usize]) -> Result<Leg> {
        self.then(&permute_factors(cache, &self.dst, perm)?)
    }
}

/// Apply the intertwiner `f` to the sub-tree of `src` made of the factors
/// `start..start + n` (where `f.src` has `n` factors), identity elsewhere.
/// The result places the factors of `f.dst` where the block was.
pub fn block_map(cache: &TensorCache, src: &Arc<TensorSpace>, start: usize, f: &Leg) -> Result<Leg> {
    let (dst_block, sigma, f_matrix) = (&f.dst, &f.sigma[..], &f.matrix);
    let len = f.src.shape().factors.len();
    let shape = src.shape();
    let nf = shape.factors.len();
    let end = start + len;
    if len == 0 || end > nf {
        return Err(Error::InvalidArgument("block out of range".into()));
    }
    let in_block = |i: usize| i >= start && i < end;
    for i in start + 1..end {
        match shape.parent_of(i) {
            Some(l) if in_block(l.parent) => {}
            _ => return Err(Error::InvalidArgument("block is not a sub-tree rooted at its first factor".into())),
        }
    }
    let sub_links: Vec<Link> = shape
        .links
        .iter()
        .filter(|l| in_block(l.parent) && in_block(l.child))
        .map(|l| Link::new(l.parent - start, l.slot, l.child - start))
        .collect();
    let src_block = cache.space(Shape::new(shape.factors[start..end].to_vec(), sub_links)?)?;
    if src_block.shape().key() != f.src.shape().key() {
        return Err(Error::InvalidArgument(format!(
            "block {:?} does not match the map source {:?}",
            src_block.shape(),
            f.src.shape()
        )));
    }
    let src_block = &f.src;
    let tlen = dst_block.shape().factors.len();
    let map_outer = |i: usize| if i < start { i } else { i - len + tlen };
    let block_slot_target = |f_local: usize, s: usize| -> (usize, usize) {
        let u = src_block
            .slots()
            .iter()
            .position(|&x| x == (f_local, s))
            .expect("slot survives in the block");
        let (tf, ts) = dst_block.slots()[sigma[u]];
        (start + tf, ts)
    };
    let mut factors = shape.factors[..start].to_vec();
    factors.extend(dst_block.shape().factors.iter().cloned());
    factors.extend(shape.factors[end..].iter().cloned());
    let mut links: Vec<Link> = dst_block
        .shape()
        .links
        .iter()
        .map(|l| Link::new(start + l.parent, l.slot, start + l.child))
        .collect();
    for l in &shape.links {
        match (in_block(l.parent), in_block(l.child)) {
            (true, true) => {}
            (false, false) => links.push(Link::new(map_outer(l.parent), l.slot, map_outer(l.child))),
            (false, true) => links.push(Link::new(map_outer(l.parent), l.slot, start)),
            (true, false) => {
                let (tf, ts) = block_slot_target(l.parent - start, l.slot);
                links.push(Link::new(tf, ts, map_outer(l.child)));
            }
        }
    }
    let dst = cache.space(Shape::new(factors, links)?)?;
    let total_sigma: Vec<usize> = src
        .slots()
        .iter()
        .map(|&(fi, s)| {
            let target = if in_block(fi) { block_slot_target(fi - start, s) } else { (map_outer(fi), s) };
            dst.slots().iter().position(|&x| x == target).expect("slot survives in the target")
        })
        .collect();

    let k = src.field();
    let fcols: Vec<Vec<(usize, Elem)>> = (0..f_matrix.cols())
        .map(|q| {
            (0..f_matrix.rows())
                .filter(|&t| f_matrix[(t, q)] != 0)
                .map(|t| (t, f_matrix[(t, q)]))
                .collect()
        })
        .collect();
    let tsections: Vec<Vec<usize>> = dst_block.section().iter().map(|&a| dst_block.decode(a)).collect();
    let mut out = Matrix::zeros(dst.dim(), src.dim());
    let mut col = vec![0; dst.dim()];
    let mut tuple = vec![0; dst.shape().factors.len()];
    for (j, &a) in src.section().iter().enumerate() {
        let digits = src.decode(a);
        let block_idx = src_block.encode(&digits[start..end]);
        tuple[..start].copy_from_slice(&digits[..start]);
        tuple[start + tlen..].copy_from_slice(&digits[end..]);
        for &(q, c1) in src_block.projection(block_idx) {
            for &(t, c2) in &fcols[q as usize] {
                tuple[start..start + tlen].copy_from_slice(&tsections[t]);
                dst.project_add(dst.encode(&tuple), k.mul(c1, c2), &mut col, k);
            }
        }
        for (i, c) in col.iter_mut().enumerate() {
            out[(i, j)] = *c;
            *c = 0;
        }
    }
    Ok(Leg { src: src.clone(), dst, matrix: out, sigma: total_sigma })
}

/// Reorder factors: factor `i` of the result is factor `perm[i]` of `src`.
pub fn permute_factors(cache: &TensorCache, src: &Arc<TensorSpace>, perm: &[usize]) -> Result<Leg> {
    let shape = src.shape();
    let nf = shape.factors.len();
    bimodule::check_permutation(perm, nf)?;
    if perm[0] != 0 {
        return Err(Error::InvalidArgument("factor permutation must fix the root".into()));
    }
    let inv = bimodule::invert_permutation(perm);
    let factors = perm.iter().map(|&p| shape.factors[p].clone()).collect();
    let links = shape.links.iter().map(|l| Link::new(inv[l.parent], l.slot, inv[l.child])).collect();
    let dst = cache.space(Shape::new(factors, links)?)?;
    let sigma = src
        .slots()
        .iter()
        .map(|&(f, s)| dst.slots().iter().position(|&x| x == (inv[f], s)).expect("slot survives"))
        .collect();
    let k = src.field();
    let mut out = Matrix::zeros(dst.dim(), src.dim());
    let mut col = vec![0; dst.dim()];
    let mut tuple = vec![0; nf];
    for (j, &a) in src.section().iter().enumerate() {
        let digits = src.decode(a);
        for i in 0..nf {
            tuple[i] = digits[perm[i]];
        }
        dst.project_add(dst.encode(&tuple), 1, &mut col, k);
        for (i, c) in col.iter_mut().enumerate() {
            out[(i, j)] = *c;
            *c = 0;
        }
    }
    Ok(Leg { src: src.clone(), dst, matrix: out, sigma })
}

/// `R (x) Y -> Y`, `r (x) y -> r y`, from `[R, Y]` with link `(0, 0, 1)` where
/// `R` is regular of fold 1.
pub fn left_unitor(cache: &TensorCache, space: &Arc<TensorSpace>) -> Result<Leg> {
    let (matrix, sigma) = left_unit_map(space)?;
    let dst = cache.single(&space.shape().factors[1])?;
    Ok(Leg { src: space.clone(), dst, matrix, sigma })
}

/// `X (x)_t R -> X`, `x (x) r -> x . r`, from `[X, R]` with link `(0, t, 1)`.
pub fn right_unitor(cache: &TensorCache, space: &Arc<TensorSpace>) -> Result<Leg> {
    let (matrix, sigma) = right_unit_map(space)?;
    let dst = cache.single(&space.shape().factors[0])?;
    Ok(Leg { src: space.clone(), dst, matrix, sigma })
}

fn left_unit_map(space: &TensorSpace) -> Result<(Matrix, Vec<usize>)> {
    let sh = space.shape();
    if sh.factors.len() != 2 || sh.links != [Link::new(0, 0, 1)] || sh.factors[0].fold() != 1 {
        return Err(Error::InvalidArgument("left unitor needs shape [R, Y] linked at slot 1".into()));
    }
    let y = &sh.factors[1];
    let mut out = Matrix::zeros(y.dim(), space.dim());
    for (j, &a) in space.section().iter().enumerate() {
        let t = space.decode(a);
        for r in 0..y.dim() {
            out[(r, j)] = y.left(t[0])[(r, t[1])];
        }
    }
    Ok((out, bimodule::identity_permutation(y.fold())))
}

fn right_unit_map(space: &TensorSpace) -> Result<(Matrix, Vec<usize>)> {
    let sh = space.shape();
    if sh.factors.len() != 2 || sh.links.len() != 1 || sh.factors[1].fold() != 1 {
        return Err(Error::InvalidArgument("right unitor needs shape [X, R]".into()));
    }
    let t = sh.links[0].slot;
    let x = &sh.factors[0];
    let mut out = Matrix::zeros(x.dim(), space.dim());
    for (j, &a) in space.section().iter().enumerate() {
        let tup = space.decode(a);
        for r in 0..x.dim() {
            out[(r, j)] = x.right(t, tup[1])[(r, tup[0])];
        }
    }
    // surviving: X's slots other than t, then R's slot, which lands on t
    let mut sigma: Vec<usize> = (0..x.fold()).filter(|&s| s != t).collect();
    sigma.push(t);
    Ok((out, sigma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_algebra, quotient_algebra, Algebra};

    fn dual_numbers() -> Arc<Algebra> {
        let k = Arc::new(FiniteField::new(2, 1).unwrap());
        Arc::new(quotient_algebra(k, &[0, 0, 1]).unwrap())
    }

    fn trivial_module(r: &Arc<Algebra>) -> Arc<NFoldBimodule> {
        Arc::new(NFoldBimodule::from_generators(r.clone(), 1, &[Matrix::zeros(1, 1)], &[]).unwrap())
    }

    /// `R (x)_k R`, left action and slot 1 on the first factor, slot 2 on the second.
    fn free_two_fold(r: &Arc<Algebra>) -> Arc<NFoldBimodule> {
        let k = r.field();
        let d = r.dim();
        let id = Matrix::identity(d);
        let left = (0..d).map(|i| r.left_mult(&r.basis_vector(i)).kron(&id, k)).collect();
        let s1 = (0..d).map(|i| r.right_mult(&r.basis_vector(i)).kron(&id, k)).collect();
        let s2 = (0..d).map(|i| id.kron(&r.right_mult(&r.basis_vector(i)), k)).collect();
        Arc::new(NFoldBimodule::new(r.clone(), d * d, left, vec![s1, s2]).unwrap())
    }

    #[test]
    fn unit_law_dimension() {
        let r = dual_numbers();
        let reg = Arc::new(NFoldBimodule::regular(r.clone(), 1));
        let m = free_two_fold(&r);
        let cache = TensorCache::new();
        let s = cache.spaces(&[&reg, &m], &[(0, 0, 1)]).unwrap();
        assert_eq!(s.dim(), m.dim());
        let f = left_unitor(&cache, &s).unwrap();
        assert!(f.matrix.is_invertible(r.field()));
        let t = cache.spaces(&[&m, &reg], &[(0, 1, 1)]).unwrap();
        let g = right_unitor(&cache, &t).unwrap();
        assert!(g.matrix.is_invertible(r.field()));
        assert_eq!(g.sigma, vec![0, 1]);
    }

    #[test]
    fn trivial_modules_tensor_to_one_dimension() {
        let r = dual_numbers();
        let kk = trivial_module(&r);
        let mut x = Matrix::zeros(1, 1);
        x[(0, 0)] = 0;
        let kr = Arc::new(NFoldBimodule::from_generators(r.clone(), 1, &[x.clone()], &[vec![x]]).unwrap());
        let s = TensorSpace::binary(kr, 0, kk).unwrap();
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn free_two_fold_self_tensor() {
        let r = dual_numbers();
        let m = free_two_fold(&r);
        let s = TensorSpace::binary(m.clone(), 1, m).unwrap();
        assert_eq!(s.dim(), 8);
        assert_eq!(s.module().fold(), 3);
        assert!(s.module().validate().is_empty());
    }

    #[test]
    fn zero_factor_gives_zero_space() {
        let k = Arc::new(FiniteField::new(3, 1).unwrap());
        let r = Arc::new(group_algebra(k, &[2]).unwrap());
        let reg = Arc::new(NFoldBimodule::regular(r.clone(), 1));
        let z = Arc::new(NFoldBimodule::zero(r, 0));
        assert_eq!(TensorSpace::binary(reg, 0, z).unwrap().dim(), 0);
    }

    #[test]
    fn permuting_factors_is_invertible() {
        let r = dual_numbers();
        let m = free_two_fold(&r);
        let cache = TensorCache::new();
        let s = cache.spaces(&[&m, &m, &m], &[(0, 0, 1), (0, 1, 2)]).unwrap();
        let leg = permute_factors(&cache, &s, &[0, 2, 1]).unwrap();
        assert!(leg.matrix.is_invertible(r.field()));
        let back = leg.permute(&cache, &[0, 2, 1]).unwrap();
        assert!(Arc::ptr_eq(&back.dst, &s));
        assert_eq!(back.matrix, Matrix::identity(s.dim()));
        assert_eq!(back.sigma, vec![0, 1, 2, 3]);
    }
}
