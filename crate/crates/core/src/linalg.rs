//! Dense matrices over a [`FiniteField`] and the exact linear algebra the rest
//! of the crate is built on: products, row reduction, rank, null spaces,
//! inverses and subspace membership.
//!
//! Matrices act on column vectors. A table `M` for a linear map has the image of
//! basis vector `j` in column `j`.

use crate::field::{Elem, FiniteField};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data length");
        Matrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Elem>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, k: &FiniteField) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == 0 {
                    continue;
                }
                let orow = other.row(l);
                let base = i * other.cols;
                for (j, &b) in orow.iter().enumerate() {
                    if b != 0 {
                        let cell = &mut out.data[base + j];
                        *cell = k.add(*cell, k.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Elem], k: &FiniteField) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![0; self.rows];
        for (j, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.data[i * self.cols + j];
                if a != 0 {
                    *o = k.add(*o, k.mul(a, x));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix, k: &FiniteField) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| k.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix, k: &FiniteField) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| k.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: Elem, k: &FiniteField) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| k.mul(a, s)).collect(),
        }
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: Elem, other: &Matrix, k: &FiniteField) {
        if s == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            if b != 0 {
                *a = k.add(*a, k.mul(s, b));
            }
        }
    }

    pub fn kron(&self, other: &Matrix, k: &FiniteField) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == 0 {
                    continue;
                }
                for r in 0..other.rows {
                    for c in 0..other.cols {
                        out[(i * other.rows + r, j * other.cols + c)] = k.mul(a, other[(r, c)]);
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self, k: &FiniteField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self[(i, c)] != 0) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = k.inv(self[(r, c)]);
            for j in c..self.cols {
                self[(r, j)] = k.mul(self[(r, j)], inv);
            }
            for i in 0..self.rows {
                if i != r {
                    let f = self[(i, c)];
                    if f != 0 {
                        for j in c..self.cols {
                            let v = k.mul(f, self[(r, j)]);
                            self[(i, j)] = k.sub(self[(i, j)], v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, k: &FiniteField) -> usize {
        self.clone().rref(k).len()
    }

    pub fn is_invertible(&self, k: &FiniteField) -> bool {
        self.is_square() && self.rank(k) == self.rows
    }

    pub fn inverse(&self, k: &FiniteField) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = 1;
        }
        let piv = aug.rref(k);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)];
            }
        }
        Some(inv)
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self, k: &FiniteField) -> Vec<Vec<Elem>> {
        let mut m = self.clone();
        let pivots = m.rref(k);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; self.cols];
                v[f] = 1;
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = k.neg(m[(r, f)]);
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Elem], k: &FiniteField) -> Option<Vec<Elem>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let pivots = aug.rref(k);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[(r, self.cols)];
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Elem;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Elem {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Elem {
        &mut self.data[r * self.cols + c]
    }
}

/// Vector helpers.
pub fn vec_add(a: &[Elem], b: &[Elem], k: &FiniteField) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| k.add(x, y)).collect()
}

pub fn vec_scale(a: &[Elem], s: Elem, k: &FiniteField) -> Vec<Elem> {
    a.iter().map(|&x| k.mul(x, s)).collect()
}

/// `acc += s * v`.
pub fn vec_axpy(acc: &mut [Elem], s: Elem, v: &[Elem], k: &FiniteField) {
    if s == 0 {
        return;
    }
    for (a, &b) in acc.iter_mut().zip(v) {
        if b != 0 {
            *a = k.add(*a, k.mul(s, b));
        }
    }
}

/// Rank of a list of equal-length vectors.
pub fn rank_of(vectors: &[Vec<Elem>], len: usize, k: &FiniteField) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let data: Vec<Elem> = vectors.iter().flat_map(|v| v.iter().copied()).collect();
    Matrix::from_vec(vectors.len(), len, data).rank(k)
}

/// Iterate every vector of `F_q^n` as coefficient tuples, in lexicographic order.
pub struct CoefficientOdometer {
    q: usize,
    cur: Vec<Elem>,
    done: bool,
}

impl CoefficientOdometer {
    pub fn new(q: usize, n: usize) -> Self {
        CoefficientOdometer {
            q,
            cur: vec![0; n],
            done: false,
        }
    }
}

impl Iterator for CoefficientOdometer {
    type Item = Vec<Elem>;
    fn next(&mut self) -> Option<Vec<Elem>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let mut i = self.cur.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if (self.cur[i] as usize) + 1 < self.q {
                self.cur[i] += 1;
                break;
            }
            self.cur[i] = 0;
        }
        Some(out)
    }
}

/// Incremental row reduction over sparse rows with the pivot of each row at
/// its highest nonzero column. After [`Echelon::finish`] every row is zero at
/// all other pivot columns, so the non-pivot columns index the greedy
/// lexicographically-first complement of the row space.
#[derive(Clone, Debug)]
pub struct Echelon {
    n: usize,
    rows: Vec<Option<Vec<(u32, Elem)>>>,
    rank: usize,
    scratch: Vec<Elem>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon {
            n,
            rows: vec![None; n],
            rank: 0,
            scratch: vec![0; n],
        }
    }

    pub fn columns(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows[c].is_some()
    }

    /// Row with pivot `c`, as ascending `(column, value)` pairs.
    pub fn row(&self, c: usize) -> Option<&[(u32, Elem)]> {
        self.rows[c].as_deref()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.n).filter(|&c| self.rows[c].is_some()).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.n).filter(|&c| self.rows[c].is_none()).collect()
    }

    /// Add a sparse vector; returns whether the rank grew.
    pub fn insert_sparse(&mut self, entries: &[(usize, Elem)], k: &FiniteField) -> bool {
        let mut top = 0;
        let mut any = false;
        for &(c, v) in entries {
            if v != 0 {
                let cell = &mut self.scratch[c];
                *cell = k.add(*cell, v);
                top = top.max(c);
                any = true;
            }
        }
        if !any {
            return false;
        }
        self.reduce_scratch(top, k)
    }

    /// Add a dense vector; returns whether the rank grew.
    pub fn insert_dense(&mut self, v: &[Elem], k: &FiniteField) -> bool {
        let mut top = None;
        for (c, &x) in v.iter().enumerate() {
            if x != 0 {
                self.scratch[c] = x;
                top = Some(c);
            }
        }
        match top {
            Some(t) => self.reduce_scratch(t, k),
            None => false,
        }
    }

    fn reduce_scratch(&mut self, top: usize, k: &FiniteField) -> bool {
        let mut new_pivot = None;
        for h in (0..=top).rev() {
            let c = self.scratch[h];
            if c == 0 {
                continue;
            }
            if let Some(row) = &self.rows[h] {
                let f = k.neg(c);
                for &(j, v) in row {
                    let cell = &mut self.scratch[j as usize];
                    *cell = k.add(*cell, k.mul(f, v));
                }
            } else if new_pivot.is_none() {
                new_pivot = Some(h);
            }
        }
        let Some(p) = new_pivot else {
            return false;
        };
        let inv = k.inv(self.scratch[p]);
        let mut row = Vec::new();
        for j in 0..=p {
            let x = self.scratch[j];
            if x != 0 {
                row.push((j as u32, k.mul(x, inv)));
                self.scratch[j] = 0;
            }
        }
        self.rows[p] = Some(row);
        self.rank += 1;
        true
    }

    /// Fully reduce every row against the pivots below it.
    pub fn finish(&mut self, k: &FiniteField) {
        for p in 0..self.n {
            let Some(row) = self.rows[p].take() else {
                continue;
            };
            let needs = row.iter().any(|&(j, _)| (j as usize) < p && self.rows[j as usize].is_some());
            if !needs {
                self.rows[p] = Some(row);
                continue;
            }
            for &(j, v) in &row {
                self.scratch[j as usize] = v;
            }
            for j in (0..p).rev() {
                let c = self.scratch[j];
                if c == 0 {
                    continue;
                }
                if let Some(lower) = &self.rows[j] {
                    let f = k.neg(c);
                    for &(i, v) in lower {
                        let cell = &mut self.scratch[i as usize];
                        *cell = k.add(*cell, k.mul(f, v));
                    }
                }
            }
            let mut out = Vec::new();
            for j in 0..=p {
                let x = self.scratch[j];
                if x != 0 {
                    out.push((j as u32, x));
                    self.scratch[j] = 0;
                }
            }
            self.rows[p] = Some(out);
        }
    }

    /// Basis of the common kernel of the inserted rows (call after `finish`),
    /// one vector per free column in ascending order.
    pub fn nullspace(&self, k: &FiniteField) -> Vec<Vec<Elem>> {
        let free = self.free_columns();
        let mut slot = vec![usize::MAX; self.n];
        for (i, &f) in free.iter().enumerate() {
            slot[f] = i;
        }
        let mut out: Vec<Vec<Elem>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![0; self.n];
                v[f] = 1;
                v
            })
            .collect();
        for (p, row) in self.rows.iter().enumerate() {
            if let Some(row) = row {
                for &(j, c) in row {
                    let j = j as usize;
                    if j != p {
                        out[slot[j]][p] = k.neg(c);
                    }
                }
            }
        }
        out
    }
}

/// `sum c_i M_i`.
pub fn combine(coeffs: &[Elem], basis: &[Matrix], k: &FiniteField) -> Matrix {
    assert_eq!(coeffs.len(), basis.len());
    let (r, c) = basis
        .first()
        .map(|m| (m.rows(), m.cols()))
        .unwrap_or((0, 0));
    let mut out = Matrix::zeros(r, c);
    for (&s, m) in coeffs.iter().zip(basis) {
        out.axpy(s, m, k);
    }
    out
}

/// `q^n` as a saturating `u128`.
pub fn space_size(q: usize, n: usize) -> u128 {
    (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_nullspace_over_f3() {
        let k = FiniteField::new(3, 1).unwrap();
        let m = Matrix::from_vec(2, 2, vec![1, 2, 0, 1]);
        let inv = m.inverse(&k).unwrap();
        assert_eq!(m.mul(&inv, &k), Matrix::identity(2));
        let s = Matrix::from_vec(2, 3, vec![1, 1, 0, 0, 0, 1]);
        let ns = s.nullspace(&k);
        assert_eq!(ns.len(), 1);
        assert!(s.apply(&ns[0], &k).iter().all(|&x| x == 0));
    }

    #[test]
    fn singular_has_no_inverse() {
        let k = FiniteField::new(2, 1).unwrap();
        let m = Matrix::from_vec(2, 2, vec![1, 1, 1, 1]);
        assert!(m.inverse(&k).is_none());
        assert_eq!(m.rank(&k), 1);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let k = FiniteField::new(5, 1).unwrap();
        let m = Matrix::from_vec(2, 2, vec![1, 2, 2, 4]);
        assert!(m.solve(&[1, 2], &k).is_some());
        assert!(m.solve(&[1, 3], &k).is_none());
    }

    #[test]
    fn echelon_matches_dense_nullspace() {
        let k = FiniteField::new(3, 1).unwrap();
        let m = Matrix::from_vec(3, 4, vec![1, 2, 0, 1, 0, 1, 1, 0, 1, 0, 1, 1]);
        let mut e = Echelon::new(4);
        for r in 0..3 {
            e.insert_dense(m.row(r), &k);
        }
        e.finish(&k);
        assert_eq!(e.rank(), m.rank(&k));
        let ns = e.nullspace(&k);
        assert_eq!(ns.len(), 4 - m.rank(&k));
        for v in &ns {
            assert!(m.apply(v, &k).iter().all(|&x| x == 0));
        }
        for p in e.pivots() {
            for &(j, _) in e.row(p).unwrap() {
                assert!(j as usize == p || !e.is_pivot(j as usize));
            }
        }
    }

    #[test]
    fn odometer_counts() {
        assert_eq!(CoefficientOdometer::new(3, 2).count(), 9);
        assert_eq!(CoefficientOdometer::new(2, 0).count(), 1);
    }
}
