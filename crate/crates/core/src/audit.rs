//! Structural audit of a verified structure: reflection of zero, iso and
//! surjective maps under `Lambda (x) -`, faithfulness, the unit's endomorphism
//! ring inside the center, summands versus central idempotents, the ideal
//! quotient shape of the unit over reduced commutative rings, and simplicity
//! of the unit over simple rings.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::bimodule::{self, NFoldBimodule};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::hom;
use crate::linalg::{self, CoefficientOdometer, Matrix};
use crate::smc::SmcStructure;
use crate::tensor::Leg;

pub const DEFAULT_AUDIT_SEED: u64 = 0x5eed;
pub const DEFAULT_REFLECTION_SAMPLES: usize = 100;
const SCAN_CAP: u128 = 1 << 16;

/// Outcome of one audit item; `None` when the item does not apply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditItem {
    pub name: &'static str,
    pub passed: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReflectionStats {
    pub maps: usize,
    pub zero: usize,
    pub iso: usize,
    pub surjective: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub items: Vec<AuditItem>,
    pub reflection: ReflectionStats,
    /// Central element attached to each basis endomorphism of the unit.
    pub end_unit_image: Vec<Vec<Elem>>,
    /// `Some(v)` with a generator when the unit is cyclic.
    pub principal_generator: Option<Option<Vec<Elem>>>,
    /// Nonzero proper submodules of the unit (RREF bases) with their ideals.
    pub submodule_ideals: Vec<(Vec<Vec<Elem>>, Vec<Vec<Elem>>)>,
    /// Pairs of distinct submodules sent to the same ideal.
    pub ideal_collisions: Vec<(usize, usize)>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed != Some(false))
    }

    pub fn item(&self, name: &str) -> Option<&AuditItem> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for it in &self.items {
            let status = match it.passed {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "n/a",
            };
            let _ = writeln!(out, "{}: {status} ({})", it.name, it.detail);
        }
        let principal = match &self.principal_generator {
            Some(Some(v)) => format!("yes, generator {:?}", v),
            Some(None) => "no".into(),
            None => "not scanned".into(),
        };
        let _ = writeln!(out, "principal unit: {principal}");
        let _ = writeln!(
            out,
            "submodule ideals: {} nonzero proper submodules, {} collisions",
            self.submodule_ideals.len(),
            self.ideal_collisions.len()
        );
        out
    }
}

/// Span of `vectors` in `k^n` as RREF rows.
pub fn rref_span(vectors: &[Vec<Elem>], n: usize, k: &FiniteField) -> Vec<Vec<Elem>> {
    if vectors.is_empty() {
        return vec![];
    }
    let mut m = Matrix::from_vec(vectors.len(), n, vectors.iter().flatten().copied().collect());
    let r = m.rref(k).len();
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

/// The submodule of a left module generated by `vectors`, as RREF rows.
pub fn generated_submodule(m: &NFoldBimodule, vectors: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let k = m.field();
    let mut span = rref_span(vectors, m.dim(), k);
    loop {
        let mut more = span.clone();
        for t in m.left_tables() {
            for v in &span {
                more.push(t.apply(v, k));
            }
        }
        let next = rref_span(&more, m.dim(), k);
        if next.len() == span.len() {
            return next;
        }
        span = next;
    }
}

/// `A / B` for submodules `B` of `A` of a left module, given as spanning rows.
pub fn subquotient(m: &NFoldBimodule, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> Result<NFoldBimodule> {
    let k = m.field();
    let n = m.dim();
    let mut basis: Vec<Vec<Elem>> = rref_span(b, n, k);
    let s = basis.len();
    for v in a {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if linalg::rank_of(&trial, n, k) > basis.len() {
            basis = trial;
        }
    }
    let r = basis.len();
    let frame = Matrix::from_columns(n, &basis);
    let mut tables = Vec::with_capacity(m.left_tables().len());
    for t in m.left_tables() {
        let mut cols = Vec::with_capacity(r - s);
        for v in &basis[s..] {
            let x = frame
                .solve(&t.apply(v, k), k)
                .ok_or_else(|| Error::InvalidArgument("subspace is not a submodule".into()))?;
            cols.push(x[s..].to_vec());
        }
        tables.push(Matrix::from_columns(r - s, &cols));
    }
    NFoldBimodule::left_module(m.algebra().clone(), r - s, tables)
}

fn all_vectors(q: usize, n: usize) -> impl Iterator<Item = Vec<Elem>> {
    CoefficientOdometer::new(q, n)
}

/// Every submodule of a small left module, as RREF bases, sorted by dimension.
pub fn all_submodules(m: &NFoldBimodule, cap: u128) -> Option<Vec<Vec<Vec<Elem>>>> {
    let k = m.field();
    if linalg::space_size(k.order(), m.dim()) > cap {
        return None;
    }
    let mut subs: Vec<Vec<Vec<Elem>>> = vec![vec![]];
    for v in all_vectors(k.order(), m.dim()) {
        let s = generated_submodule(m, &[v]);
        if !subs.contains(&s) {
            subs.push(s);
        }
    }
    loop {
        let snapshot = subs.clone();
        let mut added = false;
        for (i, a) in snapshot.iter().enumerate() {
            for b in snapshot.iter().skip(i + 1) {
                let mut all = a.clone();
                all.extend(b.iter().cloned());
                let s = rref_span(&all, m.dim(), k);
                if !subs.contains(&s) {
                    subs.push(s);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    subs.sort_by_key(|s| (s.len(), s.clone()));
    Some(subs)
}

/// Matrix of `Lambda (x)_slot g` for a left module map `g: A -> B`.
pub fn lambda_tensor_map(
    s: &SmcStructure,
    slot: usize,
    a: &Arc<NFoldBimodule>,
    b: &Arc<NFoldBimodule>,
    g: &Matrix,
) -> Result<Leg> {
    let f = s.frame();
    let cache = &f.cache;
    let src = cache.spaces(&[&f.lambda, a], &[(0, slot, 1)])?;
    let gl = Leg { src: cache.single(a)?, dst: cache.single(b)?, matrix: g.clone(), sigma: vec![] };
    Leg::identity(&src).block(cache, 1, &gl)
}

fn test_modules(s: &SmcStructure) -> Vec<Arc<NFoldBimodule>> {
    let r = s.algebra();
    let mut mods = vec![Arc::new(NFoldBimodule::regular(r.clone(), 0)), s.unit().clone()];
    for d in 1..=2 {
        if let Ok(found) = enumerate::enumerate_left_modules(r, d, 1 << 16) {
            mods.extend(found.into_iter().map(Arc::new));
        }
    }
    mods
}

/// Item (i): reflection of zero, iso and surjective maps on `samples`
/// random module maps per slot.
pub fn reflection_audit(s: &SmcStructure, samples: usize, seed: u64) -> Result<ReflectionStats> {
    let k = s.frame().field();
    let mods = test_modules(s);
    let mut pairs = Vec::new();
    for a in &mods {
        for b in &mods {
            let basis = hom::hom_space(a, b, &[])?;
            pairs.push((a.clone(), b.clone(), basis));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = ReflectionStats::default();
    for slot in 0..2 {
        for n in 0..samples {
            let (a, b, basis) = &pairs[rng.gen_range(0..pairs.len())];
            let g = if basis.is_empty() || n % 10 == 0 {
                Matrix::zeros(b.dim(), a.dim())
            } else {
                let coeffs: Vec<Elem> = (0..basis.len()).map(|_| rng.gen_range(0..k.order()) as Elem).collect();
                linalg::combine(&coeffs, basis, k)
            };
            let lifted = lambda_tensor_map(s, slot, a, b, &g)?;
            let lm = &lifted.matrix;
            let g_zero = g.is_zero();
            let g_surj = g.rank(k) == b.dim();
            let g_iso = g_surj && a.dim() == b.dim();
            let l_surj = lm.rank(k) == lifted.dst.dim();
            let l_iso = l_surj && lifted.src.dim() == lifted.dst.dim();
            stats.maps += 1;
            stats.zero += usize::from(g_zero);
            stats.iso += usize::from(g_iso);
            stats.surjective += usize::from(g_surj);
            let tag = format!("slot {}, map {}x{}", slot + 1, b.dim(), a.dim());
            if g_zero != lm.is_zero() {
                stats.failures.push(format!("{tag}: zero not reflected"));
            }
            if g_iso != l_iso {
                stats.failures.push(format!("{tag}: iso not reflected"));
            }
            if g_surj != l_surj {
                stats.failures.push(format!("{tag}: surjection not reflected"));
            }
        }
    }
    Ok(stats)
}

/// The central element `z` with `l (Lambda (x) f) l^-1 = z .` for `f` in
/// `End(K)`; `None` if the conjugate is not multiplication by a central element.
pub fn central_image(s: &SmcStructure, f: &Matrix) -> Result<Option<Vec<Elem>>> {
    let frame = s.frame();
    let k = frame.field();
    let r = s.algebra();
    let lifted = lambda_tensor_map(s, 1, s.unit(), s.unit(), f)?;
    let l = s.unit_map();
    let linv = l.inverse(k).ok_or_else(|| Error::Verification("unit map is not invertible".into()))?;
    let conj = l.mul(&lifted.matrix, k).mul(&linv, k);
    let z = conj.apply(r.unit(), k);
    Ok((r.is_central(&z) && conj == r.left_mult(&z)).then_some(z))
}

fn end_unit_item(s: &SmcStructure, report: &mut AuditReport) -> Result<AuditItem> {
    let k = s.frame().field();
    let unit = s.unit();
    let basis = hom::hom_space(unit, unit, &[])?;
    let commutative = basis.iter().all(|a| basis.iter().all(|b| a.mul(b, k) == b.mul(a, k)));
    let mut images = Vec::new();
    for f in &basis {
        match central_image(s, f)? {
            Some(z) => images.push(z),
            None => {
                return Ok(AuditItem {
                    name: "end-unit-center",
                    passed: Some(false),
                    detail: "an endomorphism of the unit is not sent to a central multiplication".into(),
                })
            }
        }
    }
    let injective = linalg::rank_of(&images, s.algebra().dim(), k) == basis.len();
    let mut multiplicative = true;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let prod = central_image(s, &a.mul(b, k))?;
            if prod != Some(s.algebra().multiply(&images[i], &images[j])) {
                multiplicative = false;
            }
        }
    }
    report.end_unit_image = images;
    Ok(AuditItem {
        name: "end-unit-center",
        passed: Some(commutative && injective && multiplicative),
        detail: format!(
            "dim End(K) = {}, commutative {commutative}, injective {injective}, multiplicative {multiplicative}",
            basis.len()
        ),
    })
}

fn summand_item(s: &SmcStructure) -> Result<AuditItem> {
    let k = s.frame().field();
    let unit = s.unit();
    let basis = hom::hom_space(unit, unit, &[])?;
    if linalg::space_size(k.order(), basis.len()) > SCAN_CAP {
        return Ok(AuditItem { name: "summand-idempotents", passed: None, detail: "End(K) too large to scan".into() });
    }
    let mut summands: Vec<(Arc<NFoldBimodule>, Vec<Elem>)> = Vec::new();
    let odometer = CoefficientOdometer::new(k.order(), basis.len());
    for coeffs in odometer {
        let p = if basis.is_empty() { Matrix::zeros(unit.dim(), unit.dim()) } else { linalg::combine(&coeffs, &basis, k) };
        if p.mul(&p, k) != p {
            continue;
        }
        let cols: Vec<Vec<Elem>> = (0..p.cols()).map(|c| p.column(c)).collect();
        let image = Arc::new(subquotient(unit, &cols, &[])?);
        let Some(e) = central_image(s, &p)? else {
            return Ok(AuditItem {
                name: "summand-idempotents",
                passed: Some(false),
                detail: "a retraction is not sent to a central element".into(),
            });
        };
        summands.push((image, e));
    }
    let sigma = bimodule::identity_permutation(0);
    let mut classes = 0usize;
    let mut ok = true;
    let mut seen: Vec<(Arc<NFoldBimodule>, Vec<Elem>)> = Vec::new();
    for (m, e) in summands {
        let mut matched = false;
        for (n, f) in &seen {
            if m.dim() == n.dim() && hom::iso_test(&m, n, &sigma)?.is_some() {
                matched = true;
                ok &= e == *f;
            } else {
                ok &= e != *f;
            }
        }
        if !matched {
            classes += 1;
            seen.push((m, e));
        }
    }
    Ok(AuditItem {
        name: "summand-idempotents",
        passed: Some(ok),
        detail: format!("{classes} summand classes"),
    })
}

fn ideal_quotient(r: &Algebra, b: &[Vec<Elem>], a: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    // (b : a) = { x | x a_i in b for all i }
    let k = r.field();
    let d = r.dim();
    let bspan = rref_span(b, d, k);
    let mut sys_rows: Vec<Vec<Elem>> = Vec::new();
    let proj = complement_projector(&bspan, d, k);
    for ai in a {
        let m = r.right_mult(ai);
        let pm = proj.mul(&m, k);
        for row in 0..pm.rows() {
            sys_rows.push(pm.row(row).to_vec());
        }
    }
    if sys_rows.is_empty() {
        return (0..d).map(|i| r.basis_vector(i)).collect();
    }
    let sys = Matrix::from_vec(sys_rows.len(), d, sys_rows.concat());
    rref_span(&sys.nullspace(k), d, k)
}

/// Rows whose kernel is exactly `span(b)`.
fn complement_projector(b: &[Vec<Elem>], d: usize, k: &FiniteField) -> Matrix {
    if b.is_empty() {
        return Matrix::identity(d);
    }
    let bm = Matrix::from_vec(b.len(), d, b.concat());
    let annihilators = bm.nullspace(k);
    // functionals vanishing on b: nullspace of b as rows
    Matrix::from_vec(annihilators.len(), d, annihilators.concat())
}

fn noetherian_item(s: &SmcStructure) -> Result<AuditItem> {
    let r = s.algebra();
    let k = r.field();
    let name = "reduced-ideal-quotient";
    if !r.is_commutative() {
        return Ok(AuditItem { name, passed: None, detail: "ring not commutative".into() });
    }
    match r.is_reduced(256) {
        None => return Ok(AuditItem { name, passed: None, detail: "ring too large to scan".into() }),
        Some(false) => return Ok(AuditItem { name, passed: None, detail: "ring not reduced".into() }),
        Some(true) => {}
    }
    let unit = s.unit();
    let b = rref_span(&unit.left_annihilator(), r.dim(), k);
    let els = r.elements(256).expect("scanned above");
    let in_b = |v: &[Elem]| linalg::rank_of(&[b.clone(), vec![v.to_vec()]].concat(), r.dim(), k) == b.len();
    let radical = els.iter().all(|x| !in_b(&r.multiply(x, x)) || in_b(x));
    let regular = NFoldBimodule::regular(r.clone(), 0);
    let ideals = r.two_sided_ideals(256).expect("scanned above");
    let sigma = bimodule::identity_permutation(0);
    let unit_arc = unit.clone();
    let mut witness = None;
    for a in &ideals {
        let joined = rref_span(&[a.clone(), b.clone()].concat(), r.dim(), k);
        if joined.len() != a.len() || a.len() - b.len() != unit.dim() {
            continue;
        }
        let q = Arc::new(subquotient(&regular, a, &b)?);
        if hom::iso_test(&q, &unit_arc, &sigma)?.is_some() && ideal_quotient(r, &b, a) == b {
            witness = Some(a.clone());
            break;
        }
    }
    let found = witness.is_some();
    Ok(AuditItem {
        name,
        passed: Some(radical && found),
        detail: format!(
            "ann(K) of dim {} radical {radical}, ideal a with K = a/ann(K) found {found}",
            b.len()
        ),
    })
}

fn simple_item(s: &SmcStructure, subs: &Option<Vec<Vec<Vec<Elem>>>>) -> AuditItem {
    let r = s.algebra();
    let name = "simple-ring-simple-unit";
    match r.is_simple(256) {
        None => AuditItem { name, passed: None, detail: "ring too large to scan".into() },
        Some(false) => AuditItem { name, passed: None, detail: "ring not simple".into() },
        Some(true) => match subs {
            None => AuditItem { name, passed: None, detail: "unit too large to scan".into() },
            Some(subs) => {
                let simple = s.unit().dim() > 0 && subs.len() == 2;
                AuditItem { name, passed: Some(simple), detail: format!("{} submodules of K", subs.len()) }
            }
        },
    }
}

/// Image in `R` of `Lambda (x) L -> Lambda (x) K -> R` for a submodule `L`.
fn submodule_ideal(s: &SmcStructure, sub: &[Vec<Elem>]) -> Result<Vec<Vec<Elem>>> {
    let k = s.frame().field();
    let unit = s.unit();
    let l = Arc::new(subquotient(unit, sub, &[])?);
    let inclusion = Matrix::from_columns(unit.dim(), sub);
    let lifted = lambda_tensor_map(s, 1, &l, unit, &inclusion)?;
    let img = s.unit_map().mul(&lifted.matrix, k);
    let cols: Vec<Vec<Elem>> = (0..img.cols()).map(|c| img.column(c)).collect();
    Ok(rref_span(&cols, s.algebra().dim(), k))
}

/// Finite generation mechanism: the unit components of the tensors mapping
/// to `1` generate `K`.
fn generation_item(s: &SmcStructure) -> Result<AuditItem> {
    let frame = s.frame();
    let k = frame.field();
    let r = s.algebra();
    let linv = s.unit_map().inverse(k).ok_or_else(|| Error::Verification("unit map is not invertible".into()))?;
    let pre = linv.apply(r.unit(), k);
    let mut used = std::collections::BTreeSet::new();
    for (i, &c) in pre.iter().enumerate() {
        if c != 0 {
            used.insert(frame.lk.decode(frame.lk.section()[i])[1]);
        }
    }
    let gens: Vec<Vec<Elem>> = used
        .iter()
        .map(|&j| {
            let mut v = vec![0; s.unit().dim()];
            v[j] = 1;
            v
        })
        .collect();
    let span = generated_submodule(s.unit(), &gens);
    Ok(AuditItem {
        name: "unit-generation",
        passed: Some(span.len() == s.unit().dim()),
        detail: format!("{} unit basis vectors appear in the preimage of 1", used.len()),
    })
}

pub fn structural_audit(s: &SmcStructure) -> Result<AuditReport> {
    structural_audit_with(s, DEFAULT_REFLECTION_SAMPLES, DEFAULT_AUDIT_SEED)
}

pub fn structural_audit_with(s: &SmcStructure, samples: usize, seed: u64) -> Result<AuditReport> {
    let mut report = AuditReport {
        items: vec![],
        reflection: ReflectionStats::default(),
        end_unit_image: vec![],
        principal_generator: None,
        submodule_ideals: vec![],
        ideal_collisions: vec![],
    };
    let refl = reflection_audit(s, samples, seed)?;
    report.items.push(AuditItem {
        name: "reflection",
        passed: Some(refl.failures.is_empty()),
        detail: format!(
            "{} maps ({} zero, {} iso, {} surjective), {} failures",
            refl.maps,
            refl.zero,
            refl.iso,
            refl.surjective,
            refl.failures.len()
        ),
    });
    report.reflection = refl;
    let faithful = enumerate::is_faithful(s.lambda());
    report.items.push(AuditItem {
        name: "faithful",
        passed: Some(faithful),
        detail: "left and both right annihilators of Lambda".into(),
    });
    let end_item = end_unit_item(s, &mut report)?;
    report.items.push(end_item);
    report.items.push(summand_item(s)?);
    report.items.push(noetherian_item(s)?);
    let subs = all_submodules(s.unit(), SCAN_CAP);
    report.items.push(simple_item(s, &subs));
    report.items.push(generation_item(s)?);

    if let Some(subs) = &subs {
        let unit = s.unit();
        let k = unit.field();
        report.principal_generator = Some(
            all_vectors(k.order(), unit.dim()).find(|v| generated_submodule(unit, std::slice::from_ref(v)).len() == unit.dim()),
        );
        let d = s.algebra().dim();
        let mut proper_ok = true;
        for sub in subs.iter().filter(|b| !b.is_empty() && b.len() < unit.dim()) {
            let ideal = submodule_ideal(s, sub)?;
            proper_ok &= !ideal.is_empty() && ideal.len() < d;
            report.submodule_ideals.push((sub.clone(), ideal));
        }
        for i in 0..report.submodule_ideals.len() {
            for j in i + 1..report.submodule_ideals.len() {
                if report.submodule_ideals[i].1 == report.submodule_ideals[j].1 {
                    report.ideal_collisions.push((i, j));
                }
            }
        }
        report.items.push(AuditItem {
            name: "submodule-ideals",
            passed: Some(proper_ok),
            detail: format!("{} nonzero proper submodules", report.submodule_ideals.len()),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_algebra, quotient_algebra};
    use crate::constructions;
    use crate::hopf::HopfAlgebra;

    #[test]
    fn h0_unit_endomorphisms_embed_in_center() {
        let k = Arc::new(FiniteField::new(2, 1).unwrap());
        let s = constructions::hopf_structure(&HopfAlgebra::h0(k).unwrap()).unwrap();
        let rep = structural_audit(&s).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
        assert_eq!(rep.end_unit_image, vec![vec![1, 0]]);
        assert!(rep.reflection.zero > 0 && rep.reflection.iso > 0);
        assert_eq!(rep.item("reduced-ideal-quotient").unwrap().passed, None);
    }

    #[test]
    fn sign_unit_is_an_ideal_quotient() {
        let k = Arc::new(FiniteField::new(3, 1).unwrap());
        let r = Arc::new(group_algebra(k, &[2]).unwrap());
        let zero = Arc::new(NFoldBimodule::zero(r, 0));
        let s = constructions::char_ne2_structure(&zero).unwrap();
        let rep = structural_audit(&s).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
        assert_eq!(rep.item("reduced-ideal-quotient").unwrap().passed, Some(true));
        // ann(k+) is spanned by 1 - g
        let b = rref_span(&s.unit().left_annihilator(), 2, s.algebra().field());
        assert_eq!(b, vec![vec![1, 2]]);
    }

    #[test]
    fn subquotient_of_regular_dual_numbers() {
        let k = Arc::new(FiniteField::new(2, 1).unwrap());
        let r = Arc::new(quotient_algebra(k, &[0, 0, 1]).unwrap());
        let reg = NFoldBimodule::regular(r, 0);
        let q = subquotient(&reg, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(q.left(1).is_zero());
        let subs = all_submodules(&reg, SCAN_CAP).unwrap();
        assert_eq!(subs.len(), 3);
    }

    #[test]
    fn standard_structure_audit_passes() {
        let k = Arc::new(FiniteField::new(3, 1).unwrap());
        let r = Arc::new(group_algebra(k, &[2]).unwrap());
        let s = constructions::standard_structure(&r).unwrap();
        let rep = structural_audit(&s).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
        assert!(matches!(rep.principal_generator, Some(Some(_))));
    }
}
