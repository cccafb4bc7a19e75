//! Named families of verified structures.

use std::sync::Arc;

use crate::algebra::{quotient_algebra, Algebra};
use crate::bimodule::NFoldBimodule;
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::hom;
use crate::hopf::HopfAlgebra;
use crate::linalg::Matrix;
use crate::smc::{SmcFrame, SmcStructure, ASSOC_SIGMA};

/// Refuse to emit a structure failing coherence.
fn gate(s: SmcStructure, family: &str) -> Result<SmcStructure> {
    let report = s.coherence_report()?;
    if !report.all_pass() {
        return Err(Error::Verification(format!("{family} structure fails coherence:\n{report}")));
    }
    Ok(s)
}

/// The usual tensor product over a commutative ring: `Lambda = R` with both
/// slots acting by multiplication, unit `R`, identity associator and symmetry.
pub fn standard_structure(r: &Arc<Algebra>) -> Result<SmcStructure> {
    if !r.is_commutative() {
        return Err(Error::Precondition("the standard structure needs a commutative ring".into()));
    }
    let lambda = Arc::new(NFoldBimodule::regular(r.clone(), 2));
    let unit = Arc::new(NFoldBimodule::regular(r.clone(), 0));
    let frame = SmcFrame::new(lambda, unit)?;
    let one = r.unit().to_vec();
    let one_one = frame.d3.pure(&[one.clone(), one.clone()]);
    let one_one_e = frame.e3.pure(&[one.clone(), one.clone()]);
    let (assoc, _) = hom::hom_with_values(frame.d3.module(), frame.e3.module(), &ASSOC_SIGMA, &[(one_one, one_one_e)])?
        .ok_or_else(|| Error::Verification("no associator fixing 1 (x) 1".into()))?;
    let lk_one = frame.lk.pure(&[one.clone(), one.clone()]);
    let (ell, _) = hom::hom_with_values(frame.lk.module(), &frame.regular, &[0], &[(lk_one, one.clone())])?
        .ok_or_else(|| Error::Verification("no unit map sending 1 (x) 1 to 1".into()))?;
    let comm = Matrix::identity(r.dim());
    gate(SmcStructure::new(frame, assoc, ell, comm)?, "standard")
}

/// `Lambda = H (x)_k H` with slot 1 on the first factor, slot 2 on the second
/// and `R` acting diagonally through the comultiplication.
pub fn hopf_lambda(h: &HopfAlgebra) -> Result<NFoldBimodule> {
    let alg = h.algebra();
    let k = &**alg.field();
    let d = alg.dim();
    let id = Matrix::identity(d);
    let mult: Vec<Matrix> = (0..d).map(|i| alg.left_mult(&alg.basis_vector(i))).collect();
    let left = (0..d)
        .map(|i| {
            let mut m = Matrix::zeros(d * d, d * d);
            for (pq, &c) in h.delta(i).iter().enumerate() {
                if c != 0 {
                    m.axpy(c, &mult[pq / d].kron(&mult[pq % d], k), k);
                }
            }
            m
        })
        .collect();
    let s1 = (0..d).map(|i| alg.right_mult(&alg.basis_vector(i)).kron(&id, k)).collect();
    let s2 = (0..d).map(|i| id.kron(&alg.right_mult(&alg.basis_vector(i)), k)).collect();
    NFoldBimodule::new(alg.clone(), d * d, left, vec![s1, s2])
}

/// The structure induced by a cocommutative Hopf algebra: `A ^ B = A (x)_k B`
/// with the diagonal action, unit `k` through the counit.
pub fn hopf_structure(h: &HopfAlgebra) -> Result<SmcStructure> {
    if let Some(v) = h.verify().first() {
        return Err(Error::Precondition(format!("not a Hopf algebra: {v}")));
    }
    if !h.is_cocommutative() {
        return Err(Error::Precondition("Hopf algebra is not cocommutative".into()));
    }
    let alg = h.algebra().clone();
    let k = &**alg.field();
    let d = alg.dim();
    let lambda = Arc::new(hopf_lambda(h)?.with_labels(vec!["B".into(), "A".into()]));
    let unit = Arc::new(NFoldBimodule::character(alg.clone(), h.counit())?);
    let frame = SmcFrame::new(lambda, unit)?;
    let unit_vec = alg.unit().to_vec();
    let pair = |u: &[Elem], v: &[Elem]| -> Vec<Elem> {
        let mut out = vec![0; d * d];
        for (p, &x) in u.iter().enumerate() {
            for (q, &y) in v.iter().enumerate() {
                out[p * d + q] = k.mul(x, y);
            }
        }
        out
    };

    // a(x (x) y (x) z (x) w) = sum 1 (x) y''w (x) x (x) y'z
    let mut assoc = Matrix::zeros(frame.e3.dim(), frame.d3.dim());
    for (j, &amb) in frame.d3.section().iter().enumerate() {
        let t = frame.d3.decode(amb);
        let (x, y) = (t[0] / d, t[0] % d);
        let (z, w) = (t[1] / d, t[1] % d);
        let mut col = vec![0; frame.e3.dim()];
        for (pq, &c) in h.delta(y).iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (p, q) = (pq / d, pq % d);
            let f0 = pair(&unit_vec, &alg.multiply(&alg.basis_vector(q), &alg.basis_vector(w)));
            let f1 = pair(&alg.basis_vector(x), &alg.multiply(&alg.basis_vector(p), &alg.basis_vector(z)));
            let v = frame.e3.pure(&[f0, f1]);
            crate::linalg::vec_axpy(&mut col, c, &v, k);
        }
        for (i, v) in col.into_iter().enumerate() {
            assoc[(i, j)] = v;
        }
    }

    // l((u (x) v) (x) 1) = u eps(v)
    let mut ell = Matrix::zeros(d, frame.lk.dim());
    for (j, &amb) in frame.lk.section().iter().enumerate() {
        let t = frame.lk.decode(amb);
        let (u, v) = (t[0] / d, t[0] % d);
        ell[(u, j)] = k.add(ell[(u, j)], h.counit()[v]);
    }

    let mut comm = Matrix::zeros(d * d, d * d);
    for u in 0..d {
        for v in 0..d {
            comm[(v * d + u, u * d + v)] = 1;
        }
    }
    gate(SmcStructure::new(frame, assoc, ell, comm)?, "Hopf")
}

/// Parameters of the characteristic-2 family over `k[x]/(x^2)` built on the
/// free bimodule with generator `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub field: Arc<FiniteField>,
    /// Coefficient of `x (m . x)` in `m .1 x`; 0 gives the shape of the
    /// primitive Hopf structure, 1 the shape with `x (x) x` in the diagonal.
    pub b1: Elem,
    /// Coefficient of `x n` in `c(m)`.
    pub beta: Elem,
    /// Coefficient of `x (n (x) n)` in `a(m (x) m)`.
    pub gamma: Elem,
}

impl FamilyParams {
    pub fn new(field: Arc<FiniteField>, b1: Elem, beta: Elem, gamma: Elem) -> Result<Self> {
        let p = FamilyParams { field, b1, beta, gamma };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let k = &self.field;
        if k.characteristic() != 2 {
            return Err(Error::Precondition("the parametric family needs characteristic 2".into()));
        }
        if self.b1 > 1 {
            return Err(Error::InvalidArgument("b1 must be 0 or 1".into()));
        }
        let q = k.order() as Elem;
        if self.beta >= q || self.gamma >= q {
            return Err(Error::InvalidArgument("parameter outside the field".into()));
        }
        if k.mul(self.gamma, self.b1) != 0 {
            return Err(Error::InvalidArgument("gamma must vanish when b1 = 1".into()));
        }
        Ok(())
    }

    /// Every admissible parameter triple over `k`, ordered by `(b1, gamma, beta)`.
    pub fn all(field: &Arc<FiniteField>) -> Vec<FamilyParams> {
        let mut out = Vec::new();
        for b1 in [0, 1] {
            for gamma in field.elements() {
                if b1 == 1 && gamma != 0 {
                    continue;
                }
                for beta in field.elements() {
                    out.push(FamilyParams { field: field.clone(), b1, beta, gamma });
                }
            }
        }
        out
    }
}

/// Index of the basis vectors `m, x m, n = m .2 x, x n` of the free bimodule.
pub const FREE_M: usize = 0;
pub const FREE_XM: usize = 1;
pub const FREE_N: usize = 2;
pub const FREE_XN: usize = 3;

/// Whether `r` is `k[x]/(x^2)` with basis `1, x`, generator `x` and `char k = 2`.
pub fn is_char2_dual_numbers(r: &Algebra) -> bool {
    let x = r.basis_vector(1.min(r.dim().saturating_sub(1)));
    r.dim() == 2
        && r.field().characteristic() == 2
        && r.unit() == [1, 0]
        && r.presentation().map(|p| p.generators.clone()) == Some(vec![1])
        && r.multiply(&x, &x).iter().all(|&c| c == 0)
}

/// The free 2-fold bimodule on `m` over `k[x]/(x^2)` with
/// `m .1 x = x m + n + b1 x n` and `m .2 x = n`.
pub fn free_dual_lambda(r: &Arc<Algebra>, b1: Elem) -> Result<NFoldBimodule> {
    if !is_char2_dual_numbers(r) {
        return Err(Error::Precondition("expected k[x]/(x^2) in characteristic 2".into()));
    }
    let table = |images: [&[(usize, Elem)]; 4]| {
        let mut t = Matrix::zeros(4, 4);
        for (col, img) in images.iter().enumerate() {
            for &(row, c) in *img {
                t[(row, col)] = c;
            }
        }
        t
    };
    let left = table([&[(FREE_XM, 1)], &[], &[(FREE_XN, 1)], &[]]);
    let slot1 = table([&[(FREE_XM, 1), (FREE_N, 1), (FREE_XN, b1)], &[(FREE_XN, 1)], &[(FREE_XN, 1)], &[]]);
    let slot2 = table([&[(FREE_N, 1)], &[(FREE_XN, 1)], &[], &[]]);
    Ok(NFoldBimodule::from_generators(r.clone(), 4, &[left], &[vec![slot1], vec![slot2]])?
        .with_labels(vec!["B".into(), "A".into()]))
}

/// The structure with unit `k` on the free bimodule, with
/// `c(m) = m + beta x n` and `a(m (x) m) = m (x) m + gamma x (n (x) n)`.
pub fn parametric_structure(p: &FamilyParams) -> Result<SmcStructure> {
    p.validate()?;
    let k = &*p.field;
    let r = Arc::new(quotient_algebra(p.field.clone(), &[0, 0, 1])?);
    let lambda = Arc::new(free_dual_lambda(&r, p.b1)?);
    let unit = Arc::new(NFoldBimodule::character(r.clone(), &[1, 0])?);
    let frame = SmcFrame::new(lambda, unit)?;
    let e = |i: usize| {
        let mut v = vec![0; 4];
        v[i] = 1;
        v
    };

    let m_one = frame.lk.pure(&[e(FREE_M), vec![1]]);
    let (ell, rest) = hom::hom_with_values(frame.lk.module(), &frame.regular, &[0], &[(m_one, r.unit().to_vec())])?
        .ok_or_else(|| Error::Verification("no unit map with l(m (x) 1) = 1".into()))?;
    debug_assert!(rest.is_empty());

    let mut comm = Matrix::zeros(4, 4);
    for (col, img) in [
        vec![(FREE_M, 1), (FREE_XN, p.beta)],
        vec![(FREE_XM, 1)],
        vec![(FREE_XM, 1), (FREE_N, 1), (FREE_XN, p.b1)],
        vec![(FREE_XN, 1)],
    ]
    .into_iter()
    .enumerate()
    {
        for (row, c) in img {
            comm[(row, col)] = k.add(comm[(row, col)], c);
        }
    }

    let mm_d = frame.d3.pure(&[e(FREE_M), e(FREE_M)]);
    let mut mm_e = frame.e3.pure(&[e(FREE_M), e(FREE_M)]);
    let x_nn = frame.e3.module().left(1).apply(&frame.e3.pure(&[e(FREE_N), e(FREE_N)]), k);
    crate::linalg::vec_axpy(&mut mm_e, p.gamma, &x_nn, k);
    let (assoc, rest) = hom::hom_with_values(frame.d3.module(), frame.e3.module(), &ASSOC_SIGMA, &[(mm_d, mm_e)])?
        .ok_or_else(|| Error::Verification("no associator with the prescribed value on m (x) m".into()))?;
    if !rest.is_empty() {
        return Err(Error::Verification("associator not determined by its value on m (x) m".into()));
    }
    gate(SmcStructure::new(frame, assoc, ell, comm)?, "parametric")
}

/// The automorphism `g -> -g` of `k[Z/2]`.
fn sign_flip(r: &Algebra) -> Matrix {
    let k = &**r.field();
    let mut phi = Matrix::identity(2);
    phi[(1, 1)] = k.neg(1);
    phi
}

fn is_z2_group_algebra(r: &Algebra) -> bool {
    let g = r.basis_vector(1);
    r.dim() == 2 && r.unit() == [1, 0] && r.multiply(&g, &g) == r.unit() && r.presentation().is_some()
}

/// The bimodule `Lambda` of the sign family: `v0 (+,+,+)`, `v1 (-,-,+)`,
/// `v2 (-,+,-)`, then `M` with both slots acting by `-1`.
pub fn sign_lambda(m: &NFoldBimodule) -> Result<NFoldBimodule> {
    let r = m.algebra().clone();
    let k = &**r.field();
    let minus = k.neg(1);
    let dm = m.dim();
    let n = 3 + dm;
    let g_m = m.left(1);
    let mut left = Matrix::zeros(n, n);
    let mut slot1 = Matrix::zeros(n, n);
    let mut slot2 = Matrix::zeros(n, n);
    for (i, (l, s1, s2)) in [(1, 1, 1), (minus, minus, 1), (minus, 1, minus)].into_iter().enumerate() {
        left[(i, i)] = l;
        slot1[(i, i)] = s1;
        slot2[(i, i)] = s2;
    }
    for i in 0..dm {
        for j in 0..dm {
            left[(3 + i, 3 + j)] = g_m[(i, j)];
        }
        slot1[(3 + i, 3 + i)] = minus;
        slot2[(3 + i, 3 + i)] = minus;
    }
    Ok(NFoldBimodule::from_generators(r, n, &[left], &[vec![slot1], vec![slot2]])?.with_labels(vec!["B".into(), "A".into()]))
}

/// The structure over `k[Z/2]` (odd characteristic) with unit `k+`, in which
/// `k- ^ k- = M`, `k+` acts as a two-sided unit and the associator is the
/// identity except on `(k- ^ k-) ^ k- -> k- ^ (k- ^ k-)`, where it is the symmetry.
pub fn char_ne2_structure(m: &Arc<NFoldBimodule>) -> Result<SmcStructure> {

    let r = m.algebra().clone();
    let k = &**r.field();
    if k.characteristic() == 2 {
        return Err(Error::Precondition("the sign family needs odd characteristic".into()));
    }
    if !is_z2_group_algebra(&r) {
        return Err(Error::Precondition("expected the group algebra k[Z/2]".into()));
    }
    if m.fold() != 0 {
        return Err(Error::InvalidArgument("M must be a left module".into()));
    }
    let minus = k.neg(1);
    let half = k.inv(2);
    let n = 3 + m.dim();
    let lambda = Arc::new(sign_lambda(m)?);
    let left = lambda.left(1).clone();
    let unit = Arc::new(NFoldBimodule::character(r.clone(), &[1, 1])?);
    let frame = SmcFrame::new(lambda, unit)?;

    let e = |i: usize| {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    // eigen-components of a vector of M inside Lambda
    let part = |v: &[Elem], sign: Elem| -> Vec<Elem> {
        let gv = left.apply(v, k);
        v.iter().zip(&gv).map(|(&a, &b)| k.mul(half, k.add(a, k.mul(sign, b)))).collect()
    };
    let idem = |sign: Elem| vec![half, k.mul(half, sign)];

    let ell_values = vec![
        (frame.lk.pure(&[e(0), vec![1]]), idem(1)),
        (frame.lk.pure(&[e(1), vec![1]]), idem(minus)),
    ];
    let (ell, _) = hom::hom_with_values(frame.lk.module(), &frame.regular, &[0], &ell_values)?
        .ok_or_else(|| Error::Verification("unit map values are inconsistent".into()))?;

    let mut comm = Matrix::identity(n);
    comm[(1, 1)] = 0;
    comm[(2, 2)] = 0;
    comm[(1, 2)] = 1;
    comm[(2, 1)] = 1;

    let d = |p: Vec<Elem>, q: Vec<Elem>| frame.d3.pure(&[p, q]);
    let t = |p: Vec<Elem>, q: Vec<Elem>| frame.e3.pure(&[p, q]);
    let ws: Vec<usize> = (3..n).collect();
    let mut values = vec![
        (d(e(0), e(0)), t(e(0), e(0))),
        (d(e(2), e(2)), t(e(2), e(0))),
        (d(e(2), e(1)), t(e(1), e(2))),
        (d(e(1), e(0)), t(e(1), e(1))),
    ];
    for &w in &ws {
        values.push((d(e(0), e(w)), t(part(&e(w), 1), e(2))));
        values.push((d(e(2), e(w)), t(part(&e(w), minus), e(2))));
        values.push((d(e(w), e(2)), t(e(w), e(1))));
        let mut sum = t(e(0), e(w));
        crate::linalg::vec_axpy(&mut sum, 1, &t(e(1), e(w)), k);
        values.push((d(e(w), e(1)), sum));
        values.push((d(e(1), e(w)), t(e(2), e(w))));
        for &w2 in &ws {
            values.push((d(e(w2), e(w)), t(e(w2), part(&e(w), minus))));
        }
    }
    let (assoc, rest) = hom::hom_with_values(frame.d3.module(), frame.e3.module(), &ASSOC_SIGMA, &values)?
        .ok_or_else(|| Error::Verification("associator values are inconsistent".into()))?;
    if !rest.is_empty() {
        return Err(Error::Verification("associator underdetermined".into()));
    }
    gate(SmcStructure::new(frame, assoc, ell, comm)?, "sign")
}

/// Transport a structure along an algebra automorphism `phi`: every action is
/// precomposed with `phi` and the unit map is followed by `phi`, which
/// identifies the twisted regular bimodule with `R`.
pub fn twist_structure(s: &SmcStructure, phi: &Matrix) -> Result<SmcStructure> {
    let r = s.algebra();
    if !r.is_homomorphism(phi, r) || !phi.is_invertible(r.field()) {
        return Err(Error::InvalidArgument("not an algebra automorphism".into()));
    }
    let lambda = Arc::new(s.lambda().twist_all(phi));
    let unit = Arc::new(s.unit().twist_all(phi));
    let frame = SmcFrame::new(lambda, unit)?;
    let ell = phi.mul(s.unit_map(), r.field());
    gate(SmcStructure::new(frame, s.assoc().clone(), ell, s.comm().clone())?, "twisted")
}

/// The twin of a sign-family structure with unit `k-`.
pub fn sign_mirror(s: &SmcStructure) -> Result<SmcStructure> {
    if !is_z2_group_algebra(s.algebra()) {
        return Err(Error::Precondition("expected the group algebra k[Z/2]".into()));
    }
    twist_structure(s, &sign_flip(s.algebra()))
}

/// The built-in Morita context between a field `k` and `M_n(k)`: `Q` is the
/// column module `k^n`, `P` the row vectors with `M_n(k)` acting on the right.
#[derive(Clone, Debug)]
pub struct MoritaContext {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    pub n: usize,
    /// `Q` as a left `M_n(k)`-module.
    pub columns: Arc<NFoldBimodule>,
    /// Right action tables of `M_n(k)` on `P`, one per basis element.
    pub row_action: Vec<Matrix>,
}

impl MoritaContext {
    pub fn matrix(k: Arc<FiniteField>, n: usize) -> Result<Self> {
        let source = Arc::new(crate::algebra::base_field_algebra(k.clone())?);
        let target = Arc::new(crate::algebra::matrix_algebra(k, n)?);
        let d = n * n;
        let mut left = Vec::with_capacity(d);
        let mut right = Vec::with_capacity(d);
        for e in 0..d {
            let (a, b) = (e / n, e % n);
            // E_ab e_b = e_a and f_a E_ab = f_b
            let mut l = Matrix::zeros(n, n);
            l[(a, b)] = 1;
            let mut r = Matrix::zeros(n, n);
            r[(b, a)] = 1;
            left.push(l);
            right.push(r);
        }
        let columns = Arc::new(NFoldBimodule::left_module(target.clone(), n, left)?);
        let ctx = MoritaContext { source, target, n, columns, row_action: right };
        let problems = ctx.verify();
        if !problems.is_empty() {
            return Err(Error::Verification(problems.join("; ")));
        }
        Ok(ctx)
    }

    /// `Q (x)_k P` as a fold-1 bimodule over `M_n(k)`, basis `e_i (x) f_j` at `i n + j`.
    pub fn column_row_bimodule(&self) -> Result<NFoldBimodule> {
        let n = self.n;
        let k = self.target.field();
        let id = Matrix::identity(n);
        let left = self.columns.left_tables().iter().map(|t| t.kron(&id, k)).collect();
        let right = vec![self.row_action.iter().map(|t| id.kron(t, k)).collect()];
        NFoldBimodule::new(self.target.clone(), n * n, left, right)
    }

    /// Checks the two witness isomorphisms `Q (x) P = M_n(k)` and
    /// `P (x) Q = k` and their compatibility on `Q (x) P (x) Q`.
    pub fn verify(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.n;
        match self.column_row_bimodule() {
            Err(e) => out.push(format!("Q (x) P: {e}")),
            Ok(qp) => {
                let regular = Arc::new(NFoldBimodule::regular(self.target.clone(), 1));
                let it = hom::Intertwiner {
                    domain: Arc::new(qp),
                    codomain: regular,
                    sigma: vec![0],
                    matrix: Matrix::identity(n * n),
                };
                out.extend(it.violations().into_iter().map(|v| format!("Q (x) P -> M_n: {v}")));
                if !it.is_invertible() {
                    out.push("Q (x) P -> M_n is not invertible".into());
                }
            }
        }
        // the pairing <f_j t, e_m> = <f_j, t e_m> makes P (x)_T Q -> k balanced
        for (t, r) in self.columns.left_tables().iter().zip(&self.row_action) {
            for j in 0..n {
                for m in 0..n {
                    if r[(m, j)] != t[(j, m)] {
                        out.push(format!("pairing not balanced at f{} e{}", j + 1, m + 1));
                    }
                }
            }
        }
        // (e_i f_j) e_m -> E_ij e_m and e_i <f_j, e_m> agree
        for i in 0..n {
            for j in 0..n {
                for m in 0..n {
                    let via_matrix = self.columns.left(i * n + j).column(m);
                    let mut via_pairing = vec![0; n];
                    if j == m {
                        via_pairing[i] = 1;
                    }
                    if via_matrix != via_pairing {
                        out.push(format!("context compatibility fails on e{} f{} e{}", i + 1, j + 1, m + 1));
                    }
                }
            }
        }
        out
    }
}

/// Transport a structure over the field `k` to `M_n(k)`: `Lambda' = Q (x)
/// Lambda (x) P (x) P`, unit `Q (x) K`, with the coherence scalars of the
/// source carried along the context witnesses.
pub fn morita_transport(s: &SmcStructure, ctx: &MoritaContext) -> Result<SmcStructure> {
    if s.algebra().as_ref() != ctx.source.as_ref() || s.lambda().dim() != 1 || s.unit().dim() != 1 {
        return Err(Error::Precondition("transport needs a structure over the context's field".into()));
    }
    let problems = ctx.verify();
    if !problems.is_empty() {
        return Err(Error::Verification(problems.join("; ")));
    }
    let (a0, l0, c0) = (s.assoc()[(0, 0)], s.unit_map()[(0, 0)], s.comm()[(0, 0)]);
    let t = &ctx.target;
    let k = t.field().clone();
    let n = ctx.n;
    let id = Matrix::identity(n);
    let left: Vec<Matrix> = ctx.columns.left_tables().iter().map(|q| q.kron(&id, &k).kron(&id, &k)).collect();
    let slot0: Vec<Matrix> = ctx.row_action.iter().map(|p| id.kron(p, &k).kron(&id, &k)).collect();
    let slot1: Vec<Matrix> = ctx.row_action.iter().map(|p| id.kron(&id, &k).kron(p, &k)).collect();
    let lambda = Arc::new(NFoldBimodule::new(t.clone(), n * n * n, left, vec![slot0, slot1])?.with_labels(s.lambda().labels().to_vec()));
    let unit = ctx.columns.clone();
    let frame = SmcFrame::new(lambda, unit)?;

    let basis = |i: usize| {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    let lam = |i: usize, j: usize, l: usize| {
        let mut v = vec![0; n * n * n];
        v[(i * n + j) * n + l] = 1;
        v
    };
    let mut comm_vals = Vec::new();
    let mut ell_vals = Vec::new();
    let mut assoc_vals = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                comm_vals.push((lam(i, j, l), lam(i, l, j).iter().map(|&x| k.mul(x, c0)).collect::<Vec<_>>()));
                let mut e = vec![0; n * n];
                e[i * n + j] = l0;
                ell_vals.push((frame.lk.pure(&[lam(i, j, l), basis(l)]), e));
            }
            for x in 0..n {
                for y in 0..n {
                    // outer slot 1 meets the inner factor through the pairing at index 0
                    let src = frame.d3.pure(&[lam(i, x, 0), lam(0, y, j)]);
                    let dst = frame.e3.pure(&[lam(i, 0, j), lam(0, x, y)]);
                    assoc_vals.push((src, dst.iter().map(|&v| k.mul(v, a0)).collect::<Vec<_>>()));
                }
            }
        }
    }
    let solve = |dom: &Arc<NFoldBimodule>, cod: &Arc<NFoldBimodule>, sigma: &[usize], vals: &[(Vec<Elem>, Vec<Elem>)], what: &str| {
        match hom::hom_with_values(dom, cod, sigma, vals)? {
            Some((m, rest)) if rest.is_empty() => Ok(m),
            Some(_) => Err(Error::Verification(format!("transported {what} underdetermined"))),
            None => Err(Error::Verification(format!("transported {what} values are inconsistent"))),
        }
    };
    let comm = solve(&frame.lambda, &frame.lambda, &crate::smc::SWAP_SIGMA, &comm_vals, "symmetry")?;
    let ell = solve(frame.lk.module(), &frame.regular, &[0], &ell_vals, "unit map")?;
    let assoc = solve(frame.d3.module(), frame.e3.module(), &ASSOC_SIGMA, &assoc_vals, "associator")?;
    gate(SmcStructure::new(frame, assoc, ell, comm)?, "Morita-transported")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_algebra, matrix_algebra};

    #[test]
    fn standard_structures_verify() {
        for (p, f) in [(3, vec![0, 1]), (2, vec![0, 0, 1]), (3, vec![2, 0, 1])] {
            let k = Arc::new(FiniteField::new(p, 1).unwrap());
            let r = Arc::new(quotient_algebra(k, &f).unwrap());
            let s = standard_structure(&r).unwrap();
            assert!(s.coherence_report().unwrap().all_pass());
        }
        let k = Arc::new(FiniteField::new(2, 1).unwrap());
        let m2 = Arc::new(matrix_algebra(k, 2).unwrap());
        assert!(matches!(standard_structure(&m2), Err(Error::Precondition(_))));
    }

    #[test]
    fn hopf_structures_verify() {
        let k = Arc::new(FiniteField::new(2, 1).unwrap());
        for h in [HopfAlgebra::h0(k.clone()).unwrap(), HopfAlgebra::h1(k.clone()).unwrap()] {
            let s = hopf_structure(&h).unwrap();
            assert!(s.coherence_report().unwrap().all_pass());
        }
        let k3 = Arc::new(FiniteField::new(3, 1).unwrap());
        let g = HopfAlgebra::group_like(k3, &[2]).unwrap();
        let s = hopf_structure(&g).unwrap();
        assert_eq!(s.unit().dim(), 1);
    }

    #[test]
    fn perturbed_symmetry_breaks_involution() {
        let k = Arc::new(FiniteField::new(2, 1).unwrap());
        let s = hopf_structure(&HopfAlgebra::h1(k).unwrap()).unwrap();
        let mut c = s.comm().clone();
        c[(1, 0)] = 1;
        let report = s.with_comm(c).coherence_report().unwrap();
        assert!(!report.involution.passed);
        assert!(report.involution.witness.is_some());
    }

    #[test]
    fn parametric_family_coherent_exactly_when_braiding_is_triangular() {
        // R = 1 + beta x(x)x is triangular for the primitive coproduct only, and
        // the hexagon forces the associator 1 + gamma x(x)x(x)x to be trivial.
        for q in [(2, 1), (2, 2)] {
            let k = Arc::new(FiniteField::new(q.0, q.1).unwrap());
            for p in FamilyParams::all(&k) {
                let expect = p.gamma == 0 && (p.b1 == 0 || p.beta == 0);
                match parametric_structure(&p) {
                    Ok(s) => {
                        assert!(expect, "{p:?}");
                        assert_eq!(s.lambda().dim(), 4);
                    }
                    Err(Error::Verification(msg)) => {
                        assert!(!expect, "{p:?}");
                        assert!(msg.contains("hexagon: FAIL"));
                    }
                    Err(e) => panic!("{e}"),
                }
            }
        }
        let k = Arc::new(FiniteField::new(2, 1).unwrap());
        assert!(FamilyParams::new(k, 1, 0, 1).is_err());
    }

    #[test]
    fn sign_family_verifies_for_small_products() {
        let k = Arc::new(FiniteField::new(3, 1).unwrap());
        let r = Arc::new(group_algebra(k, &[2]).unwrap());
        let plus = Arc::new(NFoldBimodule::character(r.clone(), &[1, 1]).unwrap());
        let minus = Arc::new(NFoldBimodule::character(r.clone(), &[1, 2]).unwrap());
        let zero = Arc::new(NFoldBimodule::zero(r.clone(), 0));
        for m in [zero, plus.clone(), minus.clone()] {
            let s = char_ne2_structure(&m).unwrap();
            assert_eq!(s.lambda().dim(), 3 + m.dim());
            let mirror = sign_mirror(&s).unwrap();
            assert_eq!(mirror.unit().left(1)[(0, 0)], 2);
        }
    }

    #[test]
    fn sign_family_rejects_two_dimensional_products() {
        // k- ^ k- = k+ (+) k+ cannot be associative: the pentagon on four
        // copies of k- would force the flip of V (x) V to equal A^2 (x) 1.
        let k = Arc::new(FiniteField::new(3, 1).unwrap());
        let r = Arc::new(group_algebra(k, &[2]).unwrap());
        let plus = NFoldBimodule::character(r.clone(), &[1, 1]).unwrap();
        let minus = NFoldBimodule::character(r.clone(), &[1, 2]).unwrap();
        for m in [plus.direct_sum(&plus).unwrap(), plus.direct_sum(&minus).unwrap(), minus.direct_sum(&minus).unwrap()] {
            match char_ne2_structure(&Arc::new(m)) {
                Err(Error::Verification(msg)) => assert!(msg.contains("pentagon: FAIL")),
                other => panic!("unexpected {:?}", other.map(|_| ())),
            }
        }
    }

    #[test]
    fn identity_context_transport_keeps_the_structure() {
        let k = Arc::new(FiniteField::new(3, 1).unwrap());
        let ctx = MoritaContext::matrix(k.clone(), 1).unwrap();
        let s = standard_structure(&ctx.source).unwrap();
        let t = morita_transport(&s, &ctx).unwrap();
        assert_eq!((t.assoc(), t.unit_map(), t.comm()), (s.assoc(), s.unit_map(), s.comm()));
        assert_eq!(t.lambda().left_tables(), s.lambda().left_tables());
    }

    #[test]
    fn transport_to_two_by_two_matrices() {
        let k = Arc::new(FiniteField::new(2, 1).unwrap());
        let ctx = MoritaContext::matrix(k, 2).unwrap();
        let s = standard_structure(&ctx.source).unwrap();
        let t = morita_transport(&s, &ctx).unwrap();
        assert_eq!(t.lambda().dim(), 8);
        assert_eq!(t.unit().dim(), 2);
        let audit = crate::audit::structural_audit(&t).unwrap();
        assert_eq!(audit.item("simple-ring-simple-unit").unwrap().passed, Some(true), "{}", audit.to_text());
        assert!(audit.passed(), "{}", audit.to_text());
    }
}
