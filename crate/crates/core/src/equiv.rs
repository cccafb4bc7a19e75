//! Invertible bimodules and equivalences of structures.
//!
//! An equivalence from a structure on `Lambda` to one on `Gamma` is the functor
//! `X (x) -` for an invertible bimodule `X`, together with `eta: K_Gamma ->
//! X (x) K_Lambda` and `m: Gamma (x) X (x) X -> X (x) Lambda` (the first copy
//! of `X` meets the `A` slot of `Gamma`), subject to the unit, commutativity
//! and associativity diagrams.

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::bimodule::NFoldBimodule;
use crate::enumerate;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::hom;
use crate::linalg::{self, CoefficientOdometer, Matrix};
use crate::smc::{self, SmcStructure};
use crate::tensor::{self, Leg, TensorCache, TensorSpace};

pub const DEFAULT_EQUIV_CAP: u128 = 1 << 20;

/// An invertible bimodule with its inverse and the two evaluation maps.
#[derive(Clone, Debug)]
pub struct PicardElement {
    pub x: Arc<NFoldBimodule>,
    pub y: Arc<NFoldBimodule>,
    /// `X (x) Y -> R`.
    pub xy: Matrix,
    /// `Y (x) X -> R`.
    pub yx: Matrix,
}

#[derive(Clone, Debug)]
pub struct EquivalenceWitness {
    pub picard: PicardElement,
    pub eta: Matrix,
    pub m: Matrix,
}

fn pair_space(cache: &TensorCache, a: &Arc<NFoldBimodule>, b: &Arc<NFoldBimodule>) -> Result<Arc<TensorSpace>> {
    cache.spaces(&[a, b], &[(0, 0, 1)])
}

/// `(X (x) Y) (x) X -> X` computed through `xy` and through `yx`.
fn triangle_legs(
    cache: &TensorCache,
    x: &Arc<NFoldBimodule>,
    y: &Arc<NFoldBimodule>,
    xy: &Matrix,
    yx: &Matrix,
    regular: &Arc<TensorSpace>,
) -> Result<(Leg, Leg)> {
    let xyx = cache.spaces(&[x, y, x], &[(0, 0, 1), (1, 0, 2)])?;
    let xy_leg = Leg { src: pair_space(cache, x, y)?, dst: regular.clone(), matrix: xy.clone(), sigma: vec![0] };
    let yx_leg = Leg { src: pair_space(cache, y, x)?, dst: regular.clone(), matrix: yx.clone(), sigma: vec![0] };
    let via_xy = Leg::identity(&xyx).block(cache, 0, &xy_leg)?;
    let via_xy = via_xy.then(&tensor::left_unitor(cache, &via_xy.dst)?)?;
    let via_yx = Leg::identity(&xyx).block(cache, 1, &yx_leg)?;
    let via_yx = via_yx.then(&tensor::right_unitor(cache, &via_yx.dst)?)?;
    Ok((via_xy, via_yx))
}

impl PicardElement {
    /// Whether both evaluation maps are invertible intertwiners and the two
    /// routes `X (x) Y (x) X -> X` agree.
    pub fn verify(&self) -> Result<bool> {
        let r = self.x.algebra();
        let cache = TensorCache::new();
        let reg = Arc::new(NFoldBimodule::regular(r.clone(), 1));
        for (a, b, f) in [(&self.x, &self.y, &self.xy), (&self.y, &self.x, &self.yx)] {
            let sp = pair_space(&cache, a, b)?;
            let it = hom::Intertwiner { domain: sp.module().clone(), codomain: reg.clone(), sigma: vec![0], matrix: f.clone() };
            if !it.violations().is_empty() || !it.is_invertible() {
                return Ok(false);
            }
        }
        let regular = cache.single(&reg)?;
        let (p, q) = triangle_legs(&cache, &self.x, &self.y, &self.xy, &self.yx, &regular)?;
        Ok(smc::compare_legs(&p, &q).passed)
    }

    /// `R` with identity evaluation maps.
    pub fn identity(r: &Arc<Algebra>) -> Result<Self> {
        let x = Arc::new(NFoldBimodule::regular(r.clone(), 1));
        let cache = TensorCache::new();
        let ev = tensor::left_unitor(&cache, &pair_space(&cache, &x, &x)?)?;
        Ok(PicardElement { x: x.clone(), y: x, xy: ev.matrix.clone(), yx: ev.matrix })
    }
}

/// An inverse of `x` among `candidates`, with evaluation maps satisfying the
/// triangle.
fn find_inverse(x: &Arc<NFoldBimodule>, candidates: &[Arc<NFoldBimodule>], cap: u128) -> Result<Option<PicardElement>> {
    let r = x.algebra();
    let k = &**r.field();
    let cache = TensorCache::new();
    let reg = Arc::new(NFoldBimodule::regular(r.clone(), 1));
    let regular = cache.single(&reg)?;
    for y in candidates {
        let xy_sp = pair_space(&cache, x, y)?;
        let yx_sp = pair_space(&cache, y, x)?;
        if xy_sp.dim() != r.dim() || yx_sp.dim() != r.dim() {
            continue;
        }
        let Some(xy) = hom::iso_test(xy_sp.module(), &reg, &[0])? else { continue };
        let yx_basis = hom::hom_space(yx_sp.module(), &reg, &[0])?;
        for yx in hom::all_invertible_combinations(&yx_basis, k, cap, "Picard evaluation search")? {
            let (p, q) = triangle_legs(&cache, x, y, &xy.matrix, &yx, &regular)?;
            if smc::compare_legs(&p, &q).passed {
                return Ok(Some(PicardElement { x: x.clone(), y: y.clone(), xy: xy.matrix, yx }));
            }
        }
    }
    Ok(None)
}

/// Invertible bimodules of dimension at most `max_dim`, up to isomorphism,
/// ordered by dimension then encoding.
pub fn picard_enumerate(r: &Arc<Algebra>, max_dim: usize, cap: u128) -> Result<Vec<PicardElement>> {
    let mut all: Vec<Arc<NFoldBimodule>> = Vec::new();
    for d in 1..=max_dim {
        all.extend(enumerate::enumerate_bimodules(r, 1, d, cap)?.into_iter().map(Arc::new));
    }
    let found: Vec<Option<PicardElement>> =
        all.par_iter().map(|x| find_inverse(x, &all, cap)).collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// The spaces and fixed legs of the three diagrams for one pair of structures
/// and one invertible bimodule.
struct DiagramSetup<'a> {
    cache: TensorCache,
    x: Arc<NFoldBimodule>,
    lam: &'a SmcStructure,
    gam: &'a SmcStructure,
    m0: Arc<TensorSpace>,
    n0: Arc<TensorSpace>,
    xk: Arc<TensorSpace>,
}

impl<'a> DiagramSetup<'a> {
    fn new(lam: &'a SmcStructure, gam: &'a SmcStructure, x: &Arc<NFoldBimodule>) -> Result<Self> {
        let cache = TensorCache::new();
        let (g, l) = (gam.lambda(), lam.lambda());
        let m0 = cache.spaces(&[g, x, x], &[(0, 1, 1), (0, 0, 2)])?;
        let n0 = cache.spaces(&[x, l], &[(0, 0, 1)])?;
        let xk = cache.spaces(&[x, lam.unit()], &[(0, 0, 1)])?;
        Ok(DiagramSetup { cache, x: x.clone(), lam, gam, m0, n0, xk })
    }

    fn m_leg(&self, m: &Matrix) -> Leg {
        Leg { src: self.m0.clone(), dst: self.n0.clone(), matrix: m.clone(), sigma: vec![1, 0] }
    }

    fn eta_leg(&self, eta: &Matrix) -> Result<Leg> {
        Ok(Leg { src: self.cache.single(self.gam.unit())?, dst: self.xk.clone(), matrix: eta.clone(), sigma: vec![] })
    }

    /// Left side of the unit diagram: `K' ^ X -> R (x) X -> X`.
    fn unit_left(&self) -> Result<Leg> {
        let c = &self.cache;
        let u = c.spaces(&[self.gam.lambda(), self.gam.unit(), &self.x], &[(0, 1, 1), (0, 0, 2)])?;
        let leg = Leg::identity(&u).block(c, 0, &self.gam.unit_leg())?;
        leg.then(&tensor::left_unitor(c, &leg.dst)?)
    }

    fn unit_right(&self, eta: &Leg, m: &Leg) -> Result<Leg> {
        let c = &self.cache;
        let u = c.spaces(&[self.gam.lambda(), self.gam.unit(), &self.x], &[(0, 1, 1), (0, 0, 2)])?;
        let leg = Leg::identity(&u)
            .block(c, 1, eta)?
            .permute(c, &[0, 1, 3, 2])?
            .block(c, 0, m)?
            .block(c, 1, &self.lam.unit_leg())?;
        leg.then(&tensor::right_unitor(c, &leg.dst)?)
    }

    fn comm_paths(&self, m: &Leg) -> Result<(Leg, Leg)> {
        let c = &self.cache;
        let top = Leg::identity(&self.m0).then(m)?.block(c, 1, &self.lam.comm_leg())?;
        let bottom = Leg::identity(&self.m0).block(c, 0, &self.gam.comm_leg())?.permute(c, &[0, 2, 1])?.block(c, 0, m)?;
        Ok((top, bottom))
    }

    fn assoc_paths(&self, m: &Leg) -> Result<(Leg, Leg)> {
        let c = &self.cache;
        let (g, x) = (self.gam.lambda(), &self.x);
        let a0 = c.spaces(&[g, g, x, x, x], &[(0, 1, 1), (0, 0, 4), (1, 1, 2), (1, 0, 3)])?;
        let top = Leg::identity(&a0)
            .block(c, 1, m)?
            .permute(c, &[0, 1, 3, 2])?
            .block(c, 0, m)?
            .block(c, 1, &self.lam.assoc_leg())?;
        let bottom = Leg::identity(&a0)
            .block(c, 0, &self.gam.assoc_leg())?
            .permute(c, &[0, 1, 3, 4, 2])?
            .block(c, 1, m)?
            .permute(c, &[0, 3, 1, 2])?
            .block(c, 0, m)?;
        Ok((top, bottom))
    }

    /// Affine space of `m` making the unit and commutativity diagrams commute
    /// for a fixed `eta`: a particular solution and a homogeneous basis.
    fn linear_solutions(&self, eta: &Leg, basis: &[Matrix]) -> Result<Option<(Matrix, Vec<Matrix>)>> {
        let k = self.lam.algebra().field();
        let target = self.unit_left()?;
        let mut cols: Vec<Vec<Elem>> = Vec::with_capacity(basis.len());
        for h in basis {
            let leg = self.m_leg(h);
            let u = self.unit_right(eta, &leg)?;
            if !Arc::ptr_eq(&u.dst, &target.dst) || u.sigma != target.sigma {
                return Ok(None);
            }
            let (t, b) = self.comm_paths(&leg)?;
            if !Arc::ptr_eq(&t.dst, &b.dst) || t.sigma != b.sigma {
                return Ok(None);
            }
            let mut col = u.matrix.data().to_vec();
            col.extend(t.matrix.sub(&b.matrix, k).data());
            cols.push(col);
        }
        let rows = target.matrix.data().len() + self.n0.dim() * self.m0.dim();
        let sys = Matrix::from_columns(rows, &cols);
        let mut rhs = target.matrix.data().to_vec();
        rhs.resize(rows, 0);
        let Some(coeffs) = sys.solve(&rhs, k) else {
            return Ok(None);
        };
        let particular = linalg::combine(&coeffs, basis, k);
        let homogeneous = sys.nullspace(k).iter().map(|c| linalg::combine(c, basis, k)).collect();
        Ok(Some((particular, homogeneous)))
    }
}

/// Search an equivalence `X (x) -` from `lam` to `gam` through each Picard
/// element in order. `Ok(None)` certifies absence within the given list.
pub fn equiv_test(
    lam: &SmcStructure,
    gam: &SmcStructure,
    picard: &[PicardElement],
    cap: u128,
) -> Result<Option<EquivalenceWitness>> {
    if lam.algebra() != gam.algebra() {
        return Err(Error::InvalidArgument("structures over different algebras".into()));
    }
    let k = &**lam.algebra().field();
    for p in picard {
        let setup = DiagramSetup::new(lam, gam, &p.x)?;
        if setup.m0.dim() != setup.n0.dim() || setup.xk.dim() != gam.unit().dim() {
            continue;
        }
        let eta_basis = hom::hom_space(gam.unit(), setup.xk.module(), &[])?;
        let etas = hom::all_invertible_combinations(&eta_basis, k, cap, "equivalence unit search")?;
        if etas.is_empty() {
            continue;
        }
        let m_basis = hom::hom_space(setup.m0.module(), setup.n0.module(), &[1, 0])?;
        if m_basis.is_empty() {
            continue;
        }
        for eta in etas {
            let eta_leg = setup.eta_leg(&eta)?;
            let Some((part, homog)) = setup.linear_solutions(&eta_leg, &m_basis)? else {
                continue;
            };
            let size = linalg::space_size(k.order(), homog.len());
            if size > cap {
                return Err(Error::Inconclusive(format!(
                    "equivalence search: {size} candidate structure maps exceed the cap {cap}"
                )));
            }
            for coeffs in CoefficientOdometer::new(k.order(), homog.len()) {
                let mut m = part.clone();
                for (c, h) in coeffs.iter().zip(&homog) {
                    m.axpy(*c, h, k);
                }
                if !m.is_invertible(k) {
                    continue;
                }
                let (top, bottom) = setup.assoc_paths(&setup.m_leg(&m))?;
                if smc::compare_legs(&top, &bottom).passed {
                    return Ok(Some(EquivalenceWitness { picard: p.clone(), eta, m }));
                }
            }
        }
    }
    Ok(None)
}

/// Re-check a witness: invertibility of `eta` and `m` and the three diagrams.
pub fn check_witness(lam: &SmcStructure, gam: &SmcStructure, w: &EquivalenceWitness) -> Result<bool> {
    let k = lam.algebra().field();
    if !w.picard.verify()? {
        return Ok(false);
    }
    let setup = DiagramSetup::new(lam, gam, &w.picard.x)?;
    let eta_ok = hom::Intertwiner { domain: gam.unit().clone(), codomain: setup.xk.module().clone(), sigma: vec![], matrix: w.eta.clone() };
    let m_ok = hom::Intertwiner { domain: setup.m0.module().clone(), codomain: setup.n0.module().clone(), sigma: vec![1, 0], matrix: w.m.clone() };
    if !eta_ok.violations().is_empty() || !m_ok.violations().is_empty() {
        return Ok(false);
    }
    if !w.eta.is_invertible(k) || !w.m.is_invertible(k) {
        return Ok(false);
    }
    let m = setup.m_leg(&w.m);
    let unit = smc::compare_legs(&setup.unit_left()?, &setup.unit_right(&setup.eta_leg(&w.eta)?, &m)?);
    let (t, b) = setup.comm_paths(&m)?;
    let (ta, ba) = setup.assoc_paths(&m)?;
    Ok(unit.passed && smc::compare_legs(&t, &b).passed && smc::compare_legs(&ta, &ba).passed)
}

/// One equivalence class: the representative is `members[0]`, and
/// `witnesses[i]` relates `members[i + 1]` to it.
#[derive(Clone, Debug)]
pub struct EquivClass {
    pub members: Vec<usize>,
    pub witnesses: Vec<EquivalenceWitness>,
}

/// Partition `structures` (already sorted by canonical encoding) into
/// equivalence classes. Each structure is tested against the representatives
/// found so far; the first match in order wins.
pub fn partition_classes(structures: &[SmcStructure], picard: &[PicardElement], cap: u128) -> Result<Vec<EquivClass>> {
    let mut classes: Vec<EquivClass> = Vec::new();
    for (i, s) in structures.iter().enumerate() {
        let hits: Vec<Option<EquivalenceWitness>> = classes
            .par_iter()
            .map(|cl| {
                equiv_test(s, &structures[cl.members[0]], picard, cap).map_err(|e| match e {
                    Error::Budget { .. } | Error::Inconclusive(_) => Error::Inconclusive(format!(
                        "structures {} and {} could not be compared: {e}",
                        i, cl.members[0]
                    )),
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        match hits.into_iter().enumerate().find_map(|(ci, w)| w.map(|w| (ci, w))) {
            Some((ci, w)) => {
                classes[ci].members.push(i);
                classes[ci].witnesses.push(w);
            }
            None => classes.push(EquivClass { members: vec![i], witnesses: vec![] }),
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{base_field_algebra, group_algebra, quotient_algebra};
    use crate::constructions::{self, FamilyParams};
    use crate::field::FiniteField;
    use crate::hopf::HopfAlgebra;

    fn dual_numbers(p: usize, e: usize) -> Arc<Algebra> {
        let k = Arc::new(FiniteField::new(p, e).unwrap());
        Arc::new(quotient_algebra(k, &[0, 0, 1]).unwrap())
    }

    #[test]
    fn picard_of_dual_numbers_has_q_minus_one_elements() {
        for (p, e, q) in [(2, 1, 2), (3, 1, 3), (2, 2, 4)] {
            let r = dual_numbers(p, e);
            let pic = picard_enumerate(&r, 2, DEFAULT_EQUIV_CAP).unwrap();
            assert_eq!(pic.len(), q - 1, "q = {q}");
            assert!(pic.iter().all(|x| x.verify().unwrap()));
        }
    }

    #[test]
    fn picard_of_prime_field_is_trivial() {
        let k = Arc::new(FiniteField::new(3, 1).unwrap());
        let r = Arc::new(base_field_algebra(k).unwrap());
        assert_eq!(picard_enumerate(&r, 1, DEFAULT_EQUIV_CAP).unwrap().len(), 1);
    }

    #[test]
    fn identity_element_verifies() {
        let r = dual_numbers(2, 1);
        assert!(PicardElement::identity(&r).unwrap().verify().unwrap());
    }

    #[test]
    fn reflexive_with_identity_bimodule() {
        let r = dual_numbers(2, 1);
        let pic = vec![PicardElement::identity(&r).unwrap()];
        let h0 = constructions::hopf_structure(&HopfAlgebra::h0(r.field().clone()).unwrap()).unwrap();
        let w = equiv_test(&h0, &h0, &pic, DEFAULT_EQUIV_CAP).unwrap().expect("identity equivalence");
        assert!(check_witness(&h0, &h0, &w).unwrap());
    }

    #[test]
    fn hopf_shapes_are_inequivalent() {
        let r = dual_numbers(2, 1);
        let pic = picard_enumerate(&r, 2, DEFAULT_EQUIV_CAP).unwrap();
        let k = r.field().clone();
        let h0 = constructions::hopf_structure(&HopfAlgebra::h0(k.clone()).unwrap()).unwrap();
        let h1 = constructions::hopf_structure(&HopfAlgebra::h1(k).unwrap()).unwrap();
        assert!(equiv_test(&h0, &h1, &pic, DEFAULT_EQUIV_CAP).unwrap().is_none());
        assert!(equiv_test(&h1, &h0, &pic, DEFAULT_EQUIV_CAP).unwrap().is_none());
    }

    #[test]
    fn symmetry_parameter_separates_classes() {
        let r = dual_numbers(2, 1);
        let pic = picard_enumerate(&r, 2, DEFAULT_EQUIV_CAP).unwrap();
        let k = r.field().clone();
        let b0 = constructions::parametric_structure(&FamilyParams::new(k.clone(), 0, 0, 0).unwrap()).unwrap();
        let b1 = constructions::parametric_structure(&FamilyParams::new(k.clone(), 0, 1, 0).unwrap()).unwrap();
        assert!(equiv_test(&b0, &b1, &pic, DEFAULT_EQUIV_CAP).unwrap().is_none());
        let h0 = constructions::hopf_structure(&HopfAlgebra::h0(k).unwrap()).unwrap();
        let w = equiv_test(&b0, &h0, &pic, DEFAULT_EQUIV_CAP).unwrap().expect("same family");
        assert!(check_witness(&b0, &h0, &w).unwrap());
    }

    #[test]
    fn sign_mirror_is_equivalent() {
        let k = Arc::new(FiniteField::new(3, 1).unwrap());
        let r = Arc::new(group_algebra(k, &[2]).unwrap());
        let pic = picard_enumerate(&r, 2, DEFAULT_EQUIV_CAP).unwrap();
        assert_eq!(pic.len(), 2);
        let plus = Arc::new(NFoldBimodule::character(r.clone(), &[1, 1]).unwrap());
        let s = constructions::char_ne2_structure(&plus).unwrap();
        let mirror = constructions::sign_mirror(&s).unwrap();
        let w = equiv_test(&s, &mirror, &pic, DEFAULT_EQUIV_CAP).unwrap().expect("mirror");
        assert!(check_witness(&s, &mirror, &w).unwrap());
        let w = equiv_test(&mirror, &s, &pic, DEFAULT_EQUIV_CAP).unwrap().expect("mirror back");
        assert!(check_witness(&mirror, &s, &w).unwrap());
    }

    #[test]
    fn partition_merges_duplicates() {
        let r = dual_numbers(2, 1);
        let pic = picard_enumerate(&r, 2, DEFAULT_EQUIV_CAP).unwrap();
        let h0 = constructions::hopf_structure(&HopfAlgebra::h0(r.field().clone()).unwrap()).unwrap();
        let classes = partition_classes(&[h0.clone(), h0.clone(), h0], &pic, DEFAULT_EQUIV_CAP).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members, vec![0, 1, 2]);
    }
}
