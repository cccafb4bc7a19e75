//! End-to-end classification: enumerate units and carriers, prune, solve
//! coherence, partition up to equivalence and report.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::algebra::Algebra;
use crate::audit::{self, AuditReport};
use crate::bimodule::NFoldBimodule;
use crate::constructions::{self, FamilyParams};
use crate::enumerate;
use crate::equiv::{self, EquivClass, PicardElement};
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::hom;
use crate::io;
use crate::smc::{SmcFrame, SmcStructure, SWAP_SIGMA};
use crate::solve;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PruneConfig {
    pub faithful: bool,
    pub unit_iso: bool,
    pub swap_iso: bool,
}

impl PruneConfig {
    pub const ALL: PruneConfig = PruneConfig { faithful: true, unit_iso: true, swap_iso: true };
    pub const NONE: PruneConfig = PruneConfig { faithful: false, unit_iso: false, swap_iso: false };
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationConfig {
    pub max_lambda_dim: usize,
    pub max_unit_dim: usize,
    pub picard_dim: usize,
    pub enum_cap: u128,
    pub solve_cap: u128,
    pub equiv_cap: u128,
    pub shards: usize,
    pub prune: PruneConfig,
    pub audit: bool,
    pub audit_samples: usize,
    pub seed: u64,
}

impl ClassificationConfig {
    /// Defaults for `r`: carriers up to `(dim R)^2`, units and Picard
    /// elements up to `dim R`.
    pub fn for_ring(r: &Algebra) -> Self {
        let d = r.dim().max(1);
        ClassificationConfig {
            max_lambda_dim: d * d,
            max_unit_dim: d,
            picard_dim: d,
            enum_cap: enumerate::DEFAULT_ENUM_CAP,
            solve_cap: solve::DEFAULT_SOLVE_CAP,
            equiv_cap: equiv::DEFAULT_EQUIV_CAP,
            shards: 1,
            prune: PruneConfig::ALL,
            audit: true,
            audit_samples: audit::DEFAULT_REFLECTION_SAMPLES,
            seed: audit::DEFAULT_AUDIT_SEED,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_lambda_dim == 0 || self.max_unit_dim == 0 || self.picard_dim == 0 || self.shards == 0 {
            return Err(Error::InvalidArgument("dimension bounds and shard count must be at least 1".into()));
        }
        if self.enum_cap == 0 || self.solve_cap == 0 || self.equiv_cap == 0 {
            return Err(Error::InvalidArgument("search budgets must be positive".into()));
        }
        Ok(())
    }

    fn echo(&self, mode: &str) -> String {
        let prunes: Vec<&str> = [
            (self.prune.faithful, "faithful"),
            (self.prune.unit_iso, "unit-iso"),
            (self.prune.swap_iso, "swap-iso"),
        ]
        .iter()
        .filter(|(on, _)| *on)
        .map(|(_, n)| *n)
        .collect();
        format!(
            "mode={mode} max_lambda_dim={} max_unit_dim={} picard_dim={} prune={} enum_cap={} solve_cap={} equiv_cap={} audit={} audit_samples={} seed={}",
            self.max_lambda_dim,
            self.max_unit_dim,
            self.picard_dim,
            if prunes.is_empty() { "none".to_string() } else { prunes.join(",") },
            self.enum_cap,
            self.solve_cap,
            self.equiv_cap,
            self.audit,
            self.audit_samples,
            self.seed
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PruneStats {
    pub unit_candidates: usize,
    pub lambda_candidates: usize,
    pub faithful_rejections: usize,
    pub pairs: usize,
    pub dimension_rejections: usize,
    pub unit_iso_rejections: usize,
    pub swap_iso_rejections: usize,
    pub solved_pairs: usize,
}

/// Label of a representative inside the char-2 parametric family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyLabel {
    Tensor,
    Parametric(FamilyParams),
}

impl std::fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilyLabel::Tensor => write!(f, "tensor"),
            FamilyLabel::Parametric(p) => write!(f, "b1={} beta={} gamma={}", p.b1, p.beta, p.gamma),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassEntry {
    pub representative: usize,
    pub members: Vec<usize>,
    /// Witness `member -> representative` for every other member.
    pub witnesses: Vec<(usize, equiv::EquivalenceWitness)>,
    pub shape: usize,
    pub label: Option<FamilyLabel>,
    pub audit: Option<AuditReport>,
    pub hash: String,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub mode: &'static str,
    pub ring_text: String,
    pub ring_hash: String,
    pub config: ClassificationConfig,
    pub picard_count: usize,
    pub stats: PruneStats,
    pub structures: Vec<SmcStructure>,
    pub classes: Vec<ClassEntry>,
    pub shapes: usize,
    /// Parameter triples refused by the coherence gate, with the reason.
    pub rejected: Vec<(FamilyParams, String)>,
    pub notes: Vec<String>,
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn class_file(i: usize) -> String {
    format!("class-{:02}.smc", i + 1)
}

fn witness_file(i: usize, member: usize) -> String {
    format!("class-{:02}-member-{:03}.eqw", i + 1, member + 1)
}

impl ClassificationReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# classification report");
        let _ = writeln!(out, "ring_sha256: {}", self.ring_hash);
        for line in self.ring_text.lines() {
            let _ = writeln!(out, "ring| {line}");
        }
        let _ = writeln!(out, "config: {}", self.config.echo(self.mode));
        let _ = writeln!(out, "picard_elements: {} (bimodules of dimension <= {})", self.picard_count, self.config.picard_dim);
        let s = &self.stats;
        let _ = writeln!(out, "unit_candidates: {}", s.unit_candidates);
        let _ = writeln!(out, "lambda_candidates: {} (faithfulness rejections {})", s.lambda_candidates, s.faithful_rejections);
        let _ = writeln!(
            out,
            "pairs: {} (dimension rejections {}, unit-iso rejections {}, swap-iso rejections {}, solved {})",
            s.pairs, s.dimension_rejections, s.unit_iso_rejections, s.swap_iso_rejections, s.solved_pairs
        );
        for (p, why) in &self.rejected {
            let _ = writeln!(out, "rejected: b1={} beta={} gamma={} ({why})", p.b1, p.beta, p.gamma);
        }
        let _ = writeln!(out, "structures: {}", self.structures.len());
        let _ = writeln!(out, "classes: {}", self.classes.len());
        let _ = writeln!(out, "shapes: {}", self.shapes);
        for (i, c) in self.classes.iter().enumerate() {
            let rep = &self.structures[c.representative];
            let _ = writeln!(out, "[class {}]", i + 1);
            let _ = writeln!(out, "representative: {} sha256={}", class_file(i), c.hash);
            let members: Vec<String> = c.members.iter().map(|m| (m + 1).to_string()).collect();
            let _ = writeln!(out, "members: {}", members.join(" "));
            let _ = writeln!(out, "unit_dim: {}", rep.unit().dim());
            let _ = writeln!(out, "lambda_dim: {}", rep.lambda().dim());
            let _ = writeln!(out, "shape: {}", c.shape + 1);
            if let Some(l) = &c.label {
                let _ = writeln!(out, "family: {l}");
            }
            if let Some(a) = &c.audit {
                let _ = writeln!(out, "audit: {}", if a.passed() { "pass" } else { "FAIL" });
                for line in a.to_text().lines() {
                    let _ = writeln!(out, "audit| {line}");
                }
            }
            for (m, w) in &c.witnesses {
                let _ = writeln!(
                    out,
                    "witness: member {} -> representative via X of dimension {} ({})",
                    m + 1,
                    w.picard.x.dim(),
                    witness_file(i, *m)
                );
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(
            out,
            "caveat: completeness is relative to the bounds above (carrier dimension <= {}, unit dimension <= {}, Picard search dimension <= {}); structures outside them are not claimed to be absent.",
            self.config.max_lambda_dim, self.config.max_unit_dim, self.config.picard_dim
        );
        let _ = writeln!(out, "[summary]");
        let _ = writeln!(out, "classes: {}", self.classes.len());
        let _ = writeln!(out, "shapes: {}", self.shapes);
        for (i, c) in self.classes.iter().enumerate() {
            let _ = writeln!(out, "class_hash[{}]: {}", i + 1, c.hash);
        }
        out
    }

    /// Write the report, the class representatives and every merge witness
    /// into `dir`.
    pub fn write_certificates(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        for (i, c) in self.classes.iter().enumerate() {
            let rep = &self.structures[c.representative];
            io::write_atomic(&dir.join(class_file(i)), &io::structure_to_text(rep))?;
            for (m, w) in &c.witnesses {
                let text = io::witness_to_text(&self.structures[*m], rep, w);
                io::write_atomic(&dir.join(witness_file(i, *m)), &text)?;
            }
        }
        Ok(())
    }

    /// Re-verify every certificate written by [`write_certificates`].
    pub fn reverify_certificates(&self, dir: &Path) -> Result<bool> {
        for (i, c) in self.classes.iter().enumerate() {
            let rep = io::load_structure(&dir.join(class_file(i)))?;
            if rep != self.structures[c.representative] || !rep.is_coherent()? {
                return Ok(false);
            }
            for (m, _) in &c.witnesses {
                let text = std::fs::read_to_string(dir.join(witness_file(i, *m)))?;
                let (src, dst, w) = io::parse_witness(&text)?;
                if !src.is_coherent()? || !dst.is_coherent()? || !equiv::check_witness(&src, &dst, &w)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn with_pool<T: Send>(shards: usize, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(shards)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(f)
}

fn faithful_so_far(m: &NFoldBimodule) -> bool {
    m.left_annihilator().is_empty() && (0..m.fold()).all(|t| m.right_annihilator(t).is_empty())
}

/// Generic pipeline over a ring with a stored presentation.
pub fn classify(r: &Arc<Algebra>, cfg: &ClassificationConfig) -> Result<ClassificationReport> {
    cfg.validate()?;
    if r.presentation().is_none() {
        return Err(Error::Precondition("classification needs a ring with a presentation".into()));
    }
    with_pool(cfg.shards, || classify_inner(r, cfg))
}

fn classify_inner(r: &Arc<Algebra>, cfg: &ClassificationConfig) -> Result<ClassificationReport> {
    let mut stats = PruneStats::default();
    let mut units = Vec::new();
    for d in 1..=cfg.max_unit_dim {
        units.extend(enumerate::enumerate_left_modules(r, d, cfg.enum_cap)?.into_iter().map(Arc::new));
    }
    stats.unit_candidates = units.len();

    let rejected = AtomicUsize::new(0);
    let filter = |m: &NFoldBimodule| {
        if !cfg.prune.faithful || faithful_so_far(m) {
            true
        } else {
            rejected.fetch_add(1, Ordering::Relaxed);
            false
        }
    };
    let mut lambdas = Vec::new();
    for d in 1..=cfg.max_lambda_dim {
        lambdas.extend(enumerate::enumerate_bimodules_filtered(r, 2, d, cfg.enum_cap, &filter)?.into_iter().map(Arc::new));
    }
    stats.lambda_candidates = lambdas.len();
    stats.faithful_rejections = rejected.load(Ordering::Relaxed);

    let pairs: Vec<(usize, usize)> =
        (0..lambdas.len()).flat_map(|li| (0..units.len()).map(move |ui| (li, ui))).collect();
    stats.pairs = pairs.len();

    #[derive(Default)]
    struct PairOutcome {
        dimension: bool,
        unit_iso: bool,
        swap_iso: bool,
        structures: Vec<SmcStructure>,
    }
    let regular = Arc::new(NFoldBimodule::regular(r.clone(), 1));
    let outcomes: Vec<PairOutcome> = pairs
        .par_iter()
        .map(|&(li, ui)| -> Result<PairOutcome> {
            let (lam, unit) = (&lambdas[li], &units[ui]);
            let mut out = PairOutcome::default();
            let frame = SmcFrame::new(lam.clone(), unit.clone())?;
            if frame.lk.dim() != r.dim() {
                out.dimension = true;
                return Ok(out);
            }
            if cfg.prune.unit_iso && hom::iso_test(frame.lk.module(), &regular, &[0])?.is_none() {
                out.unit_iso = true;
                return Ok(out);
            }
            if cfg.prune.swap_iso && hom::iso_test(lam, lam, &SWAP_SIGMA)?.is_none() {
                out.swap_iso = true;
                return Ok(out);
            }
            out.structures = solve::solve_with_stats(frame, cfg.solve_cap)?.0;
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut structures = Vec::new();
    for o in outcomes {
        stats.dimension_rejections += usize::from(o.dimension);
        stats.unit_iso_rejections += usize::from(o.unit_iso);
        stats.swap_iso_rejections += usize::from(o.swap_iso);
        if !(o.dimension || o.unit_iso || o.swap_iso) {
            stats.solved_pairs += 1;
        }
        structures.extend(o.structures);
    }
    let picard = equiv::picard_enumerate(r, cfg.picard_dim, cfg.enum_cap)?;
    let mut report = finish(r, cfg, "generic", picard, structures, stats, vec![])?;
    if constructions::is_char2_dual_numbers(r) {
        label_char2(&mut report, cfg)?;
    }
    Ok(report)
}

fn finish(
    r: &Arc<Algebra>,
    cfg: &ClassificationConfig,
    mode: &'static str,
    picard: Vec<PicardElement>,
    structures: Vec<SmcStructure>,
    stats: PruneStats,
    rejected: Vec<(FamilyParams, String)>,
) -> Result<ClassificationReport> {
    let mut keyed: Vec<(String, SmcStructure)> =
        structures.into_iter().map(|s| (io::structure_to_text(&s), s)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    let (texts, structures): (Vec<String>, Vec<SmcStructure>) = keyed.into_iter().unzip();
    let partition: Vec<EquivClass> = equiv::partition_classes(&structures, &picard, cfg.equiv_cap)?;

    let mut shape_reps: Vec<usize> = Vec::new();
    let mut classes = Vec::with_capacity(partition.len());
    for cl in partition {
        let rep = cl.members[0];
        let lam = structures[rep].lambda();
        let mut shape = None;
        for (si, &other) in shape_reps.iter().enumerate() {
            let o = structures[other].lambda();
            if o.dim() == lam.dim()
                && (hom::iso_test(lam, o, &[0, 1])?.is_some() || hom::iso_test(lam, o, &SWAP_SIGMA)?.is_some())
            {
                shape = Some(si);
                break;
            }
        }
        let shape = shape.unwrap_or_else(|| {
            shape_reps.push(rep);
            shape_reps.len() - 1
        });
        let witnesses = cl.members[1..].iter().copied().zip(cl.witnesses).collect();
        classes.push(ClassEntry {
            representative: rep,
            members: cl.members,
            witnesses,
            shape,
            label: None,
            audit: None,
            hash: sha256_hex(&texts[rep]),
        });
    }
    if cfg.audit {
        let audits: Vec<AuditReport> = classes
            .par_iter()
            .map(|c| audit::structural_audit_with(&structures[c.representative], cfg.audit_samples, cfg.seed))
            .collect::<Result<Vec<_>>>()?;
        for (c, a) in classes.iter_mut().zip(audits) {
            c.audit = Some(a);
        }
    }
    let ring_text = io::algebra_to_text(r);
    Ok(ClassificationReport {
        mode,
        ring_hash: sha256_hex(&ring_text),
        ring_text,
        config: cfg.clone(),
        picard_count: picard.len(),
        stats,
        structures,
        shapes: shape_reps.len(),
        classes,
        rejected,
        notes: vec![],
    })
}

/// The standard structure and every coherent member of the parametric family
/// over `k`, plus the parameter triples the coherence gate refuses.
pub fn char2_family(k: &Arc<FiniteField>) -> Result<(Vec<(FamilyLabel, SmcStructure)>, Vec<(FamilyParams, String)>)> {
    let r = Arc::new(crate::algebra::quotient_algebra(k.clone(), &[0, 0, 1])?);
    let mut found = vec![(FamilyLabel::Tensor, constructions::standard_structure(&r)?)];
    let mut rejected = Vec::new();
    let params = FamilyParams::all(k);
    let built: Vec<Result<SmcStructure>> = params.par_iter().map(constructions::parametric_structure).collect();
    for (p, b) in params.into_iter().zip(built) {
        match b {
            Ok(s) => found.push((FamilyLabel::Parametric(p), s)),
            Err(Error::Verification(msg)) => {
                let failing: Vec<&str> = ["pentagon", "unit", "hexagon", "involution"]
                    .into_iter()
                    .filter(|d| msg.contains(&format!("{d}: FAIL")))
                    .collect();
                rejected.push((p, format!("coherence fails: {}", failing.join(", "))));
            }
            Err(e) => return Err(e),
        }
    }
    Ok((found, rejected))
}

fn label_char2(report: &mut ClassificationReport, cfg: &ClassificationConfig) -> Result<()> {
    let k = report.structures[0].algebra().field().clone();
    let (family, _) = char2_family(&k)?;
    let r = report.structures[0].algebra().clone();
    let picard = equiv::picard_enumerate(&r, cfg.picard_dim, cfg.enum_cap)?;
    let labels: Vec<Option<FamilyLabel>> = report
        .classes
        .par_iter()
        .map(|c| -> Result<Option<FamilyLabel>> {
            let rep = &report.structures[c.representative];
            for (label, s) in &family {
                if equiv::equiv_test(rep, s, &picard, cfg.equiv_cap)?.is_some() {
                    return Ok(Some(label.clone()));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?;
    for (c, l) in report.classes.iter_mut().zip(labels) {
        c.label = l;
    }
    Ok(())
}

/// Classification over `F_q[x]/(x^2)` in characteristic 2 from the parametric
/// family instead of generic enumeration.
pub fn classify_fastpath_char2(r: &Arc<Algebra>, cfg: &ClassificationConfig) -> Result<ClassificationReport> {
    cfg.validate()?;
    if !constructions::is_char2_dual_numbers(r) {
        return Err(Error::Precondition("the fast path needs k[x]/(x^2) over a field of characteristic 2".into()));
    }
    with_pool(cfg.shards, || {
        let (family, rejected) = char2_family(r.field())?;
        let stats = PruneStats { pairs: family.len() + rejected.len(), solved_pairs: family.len(), ..PruneStats::default() };
        let labelled: Vec<(String, FamilyLabel)> =
            family.iter().map(|(l, s)| (io::structure_to_text(s), l.clone())).collect();
        let picard = equiv::picard_enumerate(r, cfg.picard_dim, cfg.enum_cap)?;
        let structures = family.into_iter().map(|(_, s)| s).collect();
        let mut report = finish(r, cfg, "fastpath-char2", picard, structures, stats, rejected)?;
        for c in report.classes.iter_mut() {
            let text = io::structure_to_text(&report.structures[c.representative]);
            c.label = labelled.iter().find(|(t, _)| *t == text).map(|(_, l)| l.clone());
        }
        report.notes.push("beta ranges over {0} together with the nonzero square classes (union, not intersection)".into());
        Ok(report)
    })
}

/// Whether the two reports have the same number of classes and every
/// representative of one is equivalent to exactly one representative of the
/// other.
pub fn partitions_agree(a: &ClassificationReport, b: &ClassificationReport, cfg: &ClassificationConfig) -> Result<bool> {
    if a.class_count() != b.class_count() {
        return Ok(false);
    }
    let r = a.structures[0].algebra().clone();
    let picard = equiv::picard_enumerate(&r, cfg.picard_dim, cfg.enum_cap)?;
    for ca in &a.classes {
        let sa = &a.structures[ca.representative];
        let mut hits = 0;
        for cb in &b.classes {
            if equiv::equiv_test(sa, &b.structures[cb.representative], &picard, cfg.equiv_cap)?.is_some() {
                hits += 1;
            }
        }
        if hits != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{base_field_algebra, quotient_algebra};

    fn quick(r: &Algebra) -> ClassificationConfig {
        ClassificationConfig { audit_samples: 10, ..ClassificationConfig::for_ring(r) }
    }

    #[test]
    fn prime_fields_have_one_class() {
        for p in [2, 3, 5] {
            let k = Arc::new(FiniteField::new(p, 1).unwrap());
            let r = Arc::new(base_field_algebra(k).unwrap());
            let rep = classify(&r, &quick(&r)).unwrap();
            assert_eq!(rep.class_count(), 1, "{}", rep.to_text());
            assert_eq!(rep.structures.len(), p - 1);
        }
    }

    #[test]
    fn config_validation() {
        let k = Arc::new(FiniteField::new(2, 1).unwrap());
        let r = base_field_algebra(k).unwrap();
        let cfg = ClassificationConfig { shards: 0, ..ClassificationConfig::for_ring(&r) };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn dual_numbers_generic_matches_fastpath() {
        let k = Arc::new(FiniteField::new(2, 1).unwrap());
        let r = Arc::new(quotient_algebra(k, &[0, 0, 1]).unwrap());
        let cfg = quick(&r);
        let generic = classify(&r, &cfg).unwrap();
        let fast = classify_fastpath_char2(&r, &cfg).unwrap();
        assert_eq!(generic.class_count(), fast.class_count());
        assert!(partitions_agree(&generic, &fast, &cfg).unwrap());
        assert!(generic.classes.iter().all(|c| c.label.is_some() && c.audit.as_ref().unwrap().passed()));
        assert_eq!(generic.shapes, 3);
    }
}
