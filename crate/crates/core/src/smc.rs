//! Candidate closed symmetric monoidal structures `(Lambda, K, a, l, c)` on
//! left modules, with `A ^ B = Lambda (x) A (x) B` where slot 2 of `Lambda`
//! meets `A` and slot 1 meets `B`. The coherence checker evaluates the four
//! diagrams on explicit bases of the computed tensor spaces.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::bimodule::NFoldBimodule;
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::hom::{self, Intertwiner};
use crate::linalg::Matrix;
use crate::tensor::{self, Leg, TensorCache, TensorSpace};

/// Slot correspondence of the associator `D3 -> E3`: the domain slots are
/// `(C, B, A)` and the codomain slots `(A, C, B)`.
pub const ASSOC_SIGMA: [usize; 3] = [1, 2, 0];
pub const SWAP_SIGMA: [usize; 2] = [1, 0];

/// The spaces and fixed maps shared by every structure on one `(Lambda, K)`.
pub struct SmcFrame {
    pub algebra: Arc<Algebra>,
    pub lambda: Arc<NFoldBimodule>,
    pub unit: Arc<NFoldBimodule>,
    /// `R` with one right action.
    pub regular: Arc<NFoldBimodule>,
    pub cache: Arc<TensorCache>,
    /// `Lambda_{C,Lambda} (x) Lambda_{B,A}`.
    pub d3: Arc<TensorSpace>,
    /// `Lambda_{Lambda,A} (x) Lambda_{C,B}`.
    pub e3: Arc<TensorSpace>,
    /// `Lambda_{B,K} (x) K`.
    pub lk: Arc<TensorSpace>,
    pub single_lambda: Arc<TensorSpace>,
    pub single_regular: Arc<TensorSpace>,
}

impl std::fmt::Debug for SmcFrame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SmcFrame(dim Lambda {}, dim K {})", self.lambda.dim(), self.unit.dim())
    }
}

impl SmcFrame {
    pub fn new(lambda: Arc<NFoldBimodule>, unit: Arc<NFoldBimodule>) -> Result<Arc<Self>> {
        Self::with_cache(lambda, unit, Arc::new(TensorCache::new()))
    }

    pub fn with_cache(lambda: Arc<NFoldBimodule>, unit: Arc<NFoldBimodule>, cache: Arc<TensorCache>) -> Result<Arc<Self>> {
        if lambda.fold() != 2 {
            return Err(Error::InvalidArgument(format!("Lambda must be 2-fold, got {}", lambda.fold())));
        }
        if unit.fold() != 0 {
            return Err(Error::InvalidArgument("the unit must be a left module".into()));
        }
        if lambda.algebra() != unit.algebra() {
            return Err(Error::InvalidArgument("Lambda and K over different algebras".into()));
        }
        let algebra = lambda.algebra().clone();
        let regular = Arc::new(NFoldBimodule::regular(algebra.clone(), 1));
        let d3 = cache.spaces(&[&lambda, &lambda], &[(0, 1, 1)])?;
        let e3 = cache.spaces(&[&lambda, &lambda], &[(0, 0, 1)])?;
        let lk = cache.spaces(&[&lambda, &unit], &[(0, 1, 1)])?;
        let single_lambda = cache.single(&lambda)?;
        let single_regular = cache.single(&regular)?;
        Ok(Arc::new(SmcFrame {
            algebra,
            lambda,
            unit,
            regular,
            cache,
            d3,
            e3,
            lk,
            single_lambda,
            single_regular,
        }))
    }

    pub fn field(&self) -> &FiniteField {
        self.algebra.field()
    }

    pub fn assoc_leg(&self, a: &Matrix) -> Leg {
        Leg { src: self.d3.clone(), dst: self.e3.clone(), matrix: a.clone(), sigma: ASSOC_SIGMA.to_vec() }
    }

    pub fn unit_leg(&self, l: &Matrix) -> Leg {
        Leg { src: self.lk.clone(), dst: self.single_regular.clone(), matrix: l.clone(), sigma: vec![0] }
    }

    pub fn comm_leg(&self, c: &Matrix) -> Leg {
        Leg { src: self.single_lambda.clone(), dst: self.single_lambda.clone(), matrix: c.clone(), sigma: SWAP_SIGMA.to_vec() }
    }

    /// Basis of the intertwiners the associator may be drawn from.
    pub fn assoc_hom(&self) -> Result<Vec<Matrix>> {
        hom::hom_space(self.d3.module(), self.e3.module(), &ASSOC_SIGMA)
    }

    pub fn unit_hom(&self) -> Result<Vec<Matrix>> {
        hom::hom_space(self.lk.module(), &self.regular, &[0])
    }

    pub fn comm_hom(&self) -> Result<Vec<Matrix>> {
        hom::hom_space(&self.lambda, &self.lambda, &SWAP_SIGMA)
    }
}

#[derive(Clone)]
pub struct SmcStructure {
    frame: Arc<SmcFrame>,
    assoc: Matrix,
    unit_map: Matrix,
    comm: Matrix,
}

impl std::fmt::Debug for SmcStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SmcStructure({:?})", self.frame)
    }
}

impl PartialEq for SmcStructure {
    fn eq(&self, other: &Self) -> bool {
        self.frame.lambda == other.frame.lambda
            && self.frame.unit == other.frame.unit
            && self.assoc == other.assoc
            && self.unit_map == other.unit_map
            && self.comm == other.comm
    }
}

impl SmcStructure {
    /// Assemble a structure, checking that `a`, `l` and `c` are invertible
    /// intertwiners with the required slot correspondences.
    pub fn new(frame: Arc<SmcFrame>, assoc: Matrix, unit_map: Matrix, comm: Matrix) -> Result<Self> {
        let s = SmcStructure { frame, assoc, unit_map, comm };
        s.check_data()?;
        Ok(s)
    }

    pub fn from_parts(
        lambda: Arc<NFoldBimodule>,
        unit: Arc<NFoldBimodule>,
        assoc: Matrix,
        unit_map: Matrix,
        comm: Matrix,
    ) -> Result<Self> {
        Self::new(SmcFrame::new(lambda, unit)?, assoc, unit_map, comm)
    }

    fn check_data(&self) -> Result<()> {
        let f = &self.frame;
        let checks = [
            ("associator", f.d3.module(), f.e3.module(), &ASSOC_SIGMA[..], &self.assoc),
            ("unit isomorphism", f.lk.module(), &f.regular, &[0][..], &self.unit_map),
            ("commutativity isomorphism", &f.lambda, &f.lambda, &SWAP_SIGMA[..], &self.comm),
        ];
        for (name, dom, cod, sigma, m) in checks {
            let it = Intertwiner { domain: dom.clone(), codomain: cod.clone(), sigma: sigma.to_vec(), matrix: m.clone() };
            if let Some(v) = it.violations().into_iter().next() {
                return Err(Error::Verification(format!("{name}: {v}")));
            }
            if !it.is_invertible() {
                return Err(Error::Verification(format!("{name} is not invertible")));
            }
        }
        Ok(())
    }

    pub fn frame(&self) -> &Arc<SmcFrame> {
        &self.frame
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.frame.algebra
    }

    pub fn lambda(&self) -> &Arc<NFoldBimodule> {
        &self.frame.lambda
    }

    pub fn unit(&self) -> &Arc<NFoldBimodule> {
        &self.frame.unit
    }

    pub fn assoc(&self) -> &Matrix {
        &self.assoc
    }

    pub fn unit_map(&self) -> &Matrix {
        &self.unit_map
    }

    pub fn comm(&self) -> &Matrix {
        &self.comm
    }

    pub fn with_comm(&self, comm: Matrix) -> Self {
        SmcStructure { comm, ..self.clone() }
    }

    pub fn with_assoc(&self, assoc: Matrix) -> Self {
        SmcStructure { assoc, ..self.clone() }
    }

    pub fn assoc_leg(&self) -> Leg {
        self.frame.assoc_leg(&self.assoc)
    }

    pub fn unit_leg(&self) -> Leg {
        self.frame.unit_leg(&self.unit_map)
    }

    pub fn comm_leg(&self) -> Leg {
        self.frame.comm_leg(&self.comm)
    }

    pub fn coherence_report(&self) -> Result<CoherenceReport> {
        let f = &self.frame;
        let a = self.assoc_leg();
        let l = self.unit_leg();
        let c = self.comm_leg();
        Ok(CoherenceReport {
            pentagon: pentagon(f, &a)?,
            unit: unit_compatibility(f, &a, &l, &c)?,
            hexagon: hexagon(f, &a, &c)?,
            involution: involution(f, &c),
        })
    }

    pub fn is_coherent(&self) -> Result<bool> {
        Ok(self.coherence_report()?.all_pass())
    }

    /// `A ^ B` as the space `[Lambda, A, B]`.
    pub fn smash(&self, a: &Arc<NFoldBimodule>, b: &Arc<NFoldBimodule>) -> Result<Arc<TensorSpace>> {
        if a.fold() != 0 || b.fold() != 0 {
            return Err(Error::InvalidArgument("smash product of left modules only".into()));
        }
        if a.algebra() != self.algebra() || b.algebra() != self.algebra() {
            return Err(Error::InvalidArgument("modules over a different algebra".into()));
        }
        self.frame.cache.spaces(&[&self.frame.lambda, a, b], &[(0, 1, 1), (0, 0, 2)])
    }

    /// `f ^ g : A ^ B -> A' ^ B'`.
    pub fn smash_map(&self, f: &Intertwiner, g: &Intertwiner) -> Result<Leg> {
        let cache = &self.frame.cache;
        let src = self.smash(&f.domain, &g.domain)?;
        let fl = Leg { src: cache.single(&f.domain)?, dst: cache.single(&f.codomain)?, matrix: f.matrix.clone(), sigma: vec![] };
        let gl = Leg { src: cache.single(&g.domain)?, dst: cache.single(&g.codomain)?, matrix: g.matrix.clone(), sigma: vec![] };
        Leg::identity(&src).block(cache, 1, &fl)?.block(cache, 2, &gl)
    }

    /// The internal hom `[B, P] = Hom_R(Lambda (x)_1 B, P)` with `R` acting
    /// through the remaining slot: `(r phi)(n) = phi(n . r)`.
    pub fn internal_hom(&self, b: &Arc<NFoldBimodule>, p: &Arc<NFoldBimodule>) -> Result<NFoldBimodule> {
        if b.algebra() != self.algebra() || p.algebra() != self.algebra() {
            return Err(Error::InvalidArgument("modules over a different algebra".into()));
        }
        let k = self.frame.field();
        let lb = self.frame.cache.spaces(&[&self.frame.lambda, b], &[(0, 0, 1)])?;
        let n = lb.module();
        let basis = hom::hom_space(&n.underlying_left(), p, &[])?;
        let h = basis.len();
        let algebra = self.algebra().clone();
        if h == 0 {
            return Ok(NFoldBimodule::zero(algebra, 0));
        }
        // solve phi . rho(r) in the hom basis
        let coords = Matrix::from_columns(basis[0].data().len(), &basis.iter().map(|m| m.data().to_vec()).collect::<Vec<_>>());
        let left = (0..algebra.dim())
            .map(|i| {
                let cols: Vec<Vec<Elem>> = basis
                    .iter()
                    .map(|phi| {
                        let moved = phi.mul(n.right(0, i), k);
                        coords.solve(moved.data(), k).expect("hom space is closed under the slot action")
                    })
                    .collect();
                Matrix::from_columns(h, &cols)
            })
            .collect();
        NFoldBimodule::left_module(algebra, h, left)
    }
}

/// Outcome of one coherence diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramCheck {
    pub passed: bool,
    /// First basis element of the source space where the two composites differ.
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub basis_index: usize,
    /// Factor coordinates of the pure tensor representing that basis element.
    pub pure_tensor: Vec<usize>,
    pub clockwise: Vec<Elem>,
    pub counterclockwise: Vec<Elem>,
    pub note: String,
}

impl DiagramCheck {
    fn pass() -> Self {
        DiagramCheck { passed: true, witness: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceReport {
    pub pentagon: DiagramCheck,
    pub unit: DiagramCheck,
    pub hexagon: DiagramCheck,
    pub involution: DiagramCheck,
}

impl CoherenceReport {
    pub fn all_pass(&self) -> bool {
        self.pentagon.passed && self.unit.passed && self.hexagon.passed && self.involution.passed
    }

    pub fn entries(&self) -> [(&'static str, &DiagramCheck); 4] {
        [
            ("pentagon", &self.pentagon),
            ("unit", &self.unit),
            ("hexagon", &self.hexagon),
            ("involution", &self.involution),
        ]
    }
}

impl std::fmt::Display for CoherenceReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (name, check) in self.entries() {
            match &check.witness {
                None if check.passed => writeln!(f, "{name}: pass")?,
                None => writeln!(f, "{name}: FAIL")?,
                Some(w) => writeln!(
                    f,
                    "{name}: FAIL at basis element {} (pure tensor {:?}){}: {:?} vs {:?}",
                    w.basis_index,
                    w.pure_tensor,
                    if w.note.is_empty() { String::new() } else { format!(" [{}]", w.note) },
                    w.clockwise,
                    w.counterclockwise
                )?,
            }
        }
        Ok(())
    }
}

/// Compare two legs with a common source.
pub fn compare_legs(x: &Leg, y: &Leg) -> DiagramCheck {
    let src = &x.src;
    let fail = |j: usize, note: &str, cw: Vec<Elem>, ccw: Vec<Elem>| DiagramCheck {
        passed: false,
        witness: Some(Witness {
            basis_index: j,
            pure_tensor: if src.dim() > 0 { src.decode(src.section()[j]) } else { vec![] },
            clockwise: cw,
            counterclockwise: ccw,
            note: note.to_string(),
        }),
    };
    if !Arc::ptr_eq(&x.dst, &y.dst) {
        return fail(0, &format!("composites land in different spaces {:?} and {:?}", x.dst.shape(), y.dst.shape()), vec![], vec![]);
    }
    if x.sigma != y.sigma {
        return fail(0, &format!("slot correspondences differ: {:?} vs {:?}", x.sigma, y.sigma), vec![], vec![]);
    }
    for j in 0..x.matrix.cols() {
        let (cx, cy) = (x.matrix.column(j), y.matrix.column(j));
        if cx != cy {
            return fail(j, "", cx, cy);
        }
    }
    DiagramCheck::pass()
}

pub fn pentagon_legs(f: &SmcFrame, a: &Leg) -> Result<(Leg, Leg)> {
    let l = &f.lambda;
    let cache = &f.cache;
    let p0 = cache.spaces(&[l, l, l], &[(0, 1, 1), (1, 1, 2)])?;
    let cw = Leg::identity(&p0).block(cache, 0, a)?.permute(cache, &[0, 2, 1])?.block(cache, 0, a)?;
    let ccw = Leg::identity(&p0).block(cache, 1, a)?.block(cache, 0, a)?.block(cache, 1, a)?;
    Ok((cw, ccw))
}

pub fn pentagon(f: &SmcFrame, a: &Leg) -> Result<DiagramCheck> {
    let (cw, ccw) = pentagon_legs(f, a)?;
    Ok(compare_legs(&cw, &ccw))
}

pub fn unit_compatibility(f: &SmcFrame, a: &Leg, l: &Leg, c: &Leg) -> Result<DiagramCheck> {
    let lam = &f.lambda;
    let cache = &f.cache;
    let u0 = cache.spaces(&[lam, lam, &f.unit], &[(0, 1, 1), (1, 0, 2)])?;
    let top = Leg::identity(&u0).block(cache, 0, a)?.block(cache, 1, l)?;
    let top = top.then(&tensor::right_unitor(cache, &top.dst)?)?;
    let bottom = Leg::identity(&u0).block(cache, 1, c)?.block(cache, 1, l)?;
    let bottom = bottom.then(&tensor::right_unitor(cache, &bottom.dst)?)?;
    Ok(compare_legs(&top, &bottom))
}

pub fn hexagon(f: &SmcFrame, a: &Leg, c: &Leg) -> Result<DiagramCheck> {
    let cache = &f.cache;
    let top = Leg::identity(&f.d3).block(cache, 1, c)?.then(a)?.block(cache, 1, c)?;
    let bottom = a.block(cache, 0, c)?.then(a)?;
    Ok(compare_legs(&top, &bottom))
}

pub fn involution(f: &SmcFrame, c: &Leg) -> DiagramCheck {
    let cc = c.then(c).expect("c is an endomorphism");
    compare_legs(&cc, &Leg::identity(&f.single_lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quotient_algebra;
    use crate::field::FiniteField;

    #[test]
    fn frame_rejects_wrong_folds() {
        let k = Arc::new(FiniteField::new(2, 1).unwrap());
        let r = Arc::new(quotient_algebra(k, &[0, 0, 1]).unwrap());
        let one = Arc::new(NFoldBimodule::regular(r.clone(), 1));
        let unit = Arc::new(NFoldBimodule::regular(r, 0));
        assert!(SmcFrame::new(one.clone(), unit.clone()).is_err());
        assert!(SmcFrame::new(unit.clone(), one).is_err());
    }
}
