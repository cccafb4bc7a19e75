//! Acceptance criteria as one runnable target.
//!
//! Prints one `PASS`/`FAIL` line per criterion. The process exits non-zero
//! only when an internal consistency check breaks; known-unattainable counts
//! are reported as `FAIL` with the measured value.

mod common;

use std::sync::Arc;
use std::time::Instant;

use smcmod::algebra::{quotient_algebra, Algebra};
use smcmod::audit;
use smcmod::bimodule::NFoldBimodule;
use smcmod::classify::{self, ClassificationConfig, ClassificationReport};
use smcmod::constructions::{self, FamilyParams};
use smcmod::enumerate;
use smcmod::equiv;
use smcmod::hopf::{verify_hopf, HopfAlgebra};
use smcmod::smc::SmcStructure;

use common::{field, ring, UnitGroupOracle};

struct Outcome {
    passed: bool,
    detail: String,
    /// Consistency problems that make the run itself untrustworthy.
    broken: Vec<String>,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome { passed, detail: detail.into(), broken: vec![] }
    }
}

fn classify_default(r: &Arc<Algebra>) -> (ClassificationConfig, ClassificationReport) {
    let cfg = ClassificationConfig::for_ring(r);
    let report = classify::classify(r, &cfg).expect("classification runs");
    (cfg, report)
}

fn audits_pass(report: &ClassificationReport) -> bool {
    report.classes.iter().all(|c| c.audit.as_ref().is_some_and(|a| a.passed()))
}

fn seven_classes() -> Outcome {
    let r = ring("f2x2.alg");
    let start = Instant::now();
    let (cfg, generic) = classify_default(&r);
    let generic_time = start.elapsed();
    let start = Instant::now();
    let fast = classify::classify_fastpath_char2(&r, &cfg).expect("fast path runs");
    let fast_time = start.elapsed();
    let agree = classify::partitions_agree(&generic, &fast, &cfg).expect("partition comparison runs");
    let labels: Vec<String> = generic.classes.iter().map(|c| c.label.as_ref().map_or("?".into(), |l| l.to_string())).collect();
    let mut out = Outcome::new(
        generic.class_count() == 7 && generic.shapes == 3 && agree,
        format!(
            "classes={} (expected 7) shapes={} partitions_agree={agree} generic={:.2?} fastpath={:.2?} labels=[{}]",
            generic.class_count(),
            generic.shapes,
            generic_time,
            fast_time,
            labels.join("; ")
        ),
    );
    if !agree {
        out.broken.push("generic and fastpath partitions differ".into());
    }
    if !audits_pass(&generic) {
        out.broken.push("a representative failed its structural audit".into());
    }
    // every refused parameter triple is refused by the hexagon
    for (p, why) in &fast.rejected {
        if !why.contains("hexagon") {
            out.broken.push(format!("b1={} beta={} gamma={} refused without a hexagon failure: {why}", p.b1, p.beta, p.gamma));
        }
    }
    out
}

fn fields_unique() -> Outcome {
    let mut counts = vec![];
    let mut passed = true;
    let mut out = Outcome::new(true, "");
    for (name, q) in [("f2.alg", 2), ("f3.alg", 3), ("f5.alg", 5)] {
        let start = Instant::now();
        let (_, report) = classify_default(&ring(name));
        passed &= report.class_count() == 1;
        if !audits_pass(&report) {
            out.broken.push(format!("F{q}: audit failed"));
        }
        counts.push(format!("F{q}:{} ({:.2?})", report.class_count(), start.elapsed()));
    }
    out.passed = passed;
    out.detail = counts.join(" ");
    out
}

fn picard_counts() -> Outcome {
    let mut passed = true;
    let mut parts = vec![];
    for (p, e) in [(2, 1), (3, 1), (2, 2)] {
        let k = field(p, e);
        let q = k.order();
        let r = Arc::new(quotient_algebra(k, &[0, 0, 1]).expect("dual numbers"));
        let pic = equiv::picard_enumerate(&r, 2, enumerate::DEFAULT_ENUM_CAP).expect("Picard enumeration");
        // oracle: twists by the automorphisms x -> u x, one per unit u
        let expected = UnitGroupOracle::new(r.field()).units.len();
        passed &= pic.len() == expected && pic.len() == q - 1;
        parts.push(format!("q={q}:{} (expected {expected})", pic.len()));
    }
    Outcome::new(passed, parts.join(" "))
}

fn sign_family() -> Outcome {
    let r = ring("f3z2.alg");
    let cap = enumerate::DEFAULT_ENUM_CAP;
    let mut modules = vec![Arc::new(NFoldBimodule::zero(r.clone(), 0))];
    for d in 1..=2 {
        modules.extend(enumerate::enumerate_left_modules(&r, d, cap).expect("modules").into_iter().map(Arc::new));
    }
    let mut out = Outcome::new(false, "");
    // semisimple in odd characteristic: a module of dimension d is k+^a (+) k-^(d-a)
    if modules.len() != 6 {
        out.broken.push(format!("{} module classes of dimension <= 2, expected 6", modules.len()));
    }
    let mut built: Vec<(usize, SmcStructure)> = vec![];
    let mut parts = vec![];
    for (i, m) in modules.iter().enumerate() {
        match constructions::char_ne2_structure(m) {
            Ok(s) => {
                parts.push(format!("M{i}(dim {}):ok", m.dim()));
                built.push((i, s));
            }
            Err(e) => {
                let first = e.to_string().lines().next().unwrap_or_default().to_string();
                parts.push(format!("M{i}(dim {}):refused[{first}]", m.dim()));
                if m.dim() < 2 {
                    out.broken.push(format!("M{i} of dimension {} refused", m.dim()));
                }
            }
        }
    }
    let picard = equiv::picard_enumerate(&r, 2, cap).expect("Picard");
    let mut distinct = true;
    for a in 0..built.len() {
        for b in a + 1..built.len() {
            if equiv::equiv_test(&built[a].1, &built[b].1, &picard, equiv::DEFAULT_EQUIV_CAP).expect("equiv").is_some() {
                distinct = false;
            }
        }
    }
    let mut mirrors = true;
    for (_, s) in &built {
        let mirror = constructions::sign_mirror(s).expect("mirror builds");
        match equiv::equiv_test(&mirror, s, &picard, equiv::DEFAULT_EQUIV_CAP).expect("equiv") {
            Some(w) => mirrors &= equiv::check_witness(&mirror, s, &w).expect("witness check"),
            None => mirrors = false,
        }
    }
    if !distinct {
        out.broken.push("two sign structures with different M are equivalent".into());
    }
    if !mirrors {
        out.broken.push("a mirror is not certified equivalent to its partner".into());
    }
    out.passed = modules.len() == 6 && built.len() == 6 && distinct && mirrors;
    out.detail = format!("coherent {}/6; {}; pairwise distinct={distinct}; mirrors equivalent={mirrors}", built.len(), parts.join(" "));
    out
}

fn hopf_pipeline() -> Outcome {
    let k = field(2, 1);
    let alg = Arc::new(quotient_algebra(k.clone(), &[0, 0, 1]).expect("dual numbers"));
    let mut accepted = vec![];
    for bits in 0..16u8 {
        let pattern: Vec<u8> = (0..4).map(|i| (bits >> (3 - i)) & 1).collect();
        let ok = HopfAlgebra::from_generators(alg.clone(), &[pattern.clone()], &[0]).is_ok_and(|h| verify_hopf(&h).is_empty());
        if ok {
            accepted.push(pattern);
        }
    }
    // coordinates of Delta(x) on 1(x)1, 1(x)x, x(x)1, x(x)x
    let expected: Vec<Vec<u8>> = vec![vec![0, 1, 1, 0], vec![0, 1, 1, 1]];
    let mut out = Outcome::new(false, "");
    let pipeline_ok = accepted == expected;
    let h0 = constructions::hopf_structure(&HopfAlgebra::h0(k.clone()).expect("H0"));
    let h1 = constructions::hopf_structure(&HopfAlgebra::h1(k.clone()).expect("H1"));
    let coherent = matches!((&h0, &h1), (Ok(a), Ok(b)) if a.is_coherent().unwrap_or(false) && b.is_coherent().unwrap_or(false));
    let beta0 = constructions::parametric_structure(&FamilyParams::new(k.clone(), 1, 0, 0).expect("params"));
    let beta1 = constructions::parametric_structure(&FamilyParams::new(k.clone(), 1, 1, 0).expect("params"));
    let beta1_note = match &beta1 {
        Ok(_) => "built".to_string(),
        Err(e) => format!("refused ({})", if e.to_string().contains("hexagon: FAIL") { "hexagon" } else { "other" }),
    };
    let inequivalent = match (&beta0, &beta1) {
        (Ok(a), Ok(b)) => {
            let picard = equiv::picard_enumerate(a.algebra(), 2, enumerate::DEFAULT_ENUM_CAP).expect("Picard");
            equiv::equiv_test(a, b, &picard, equiv::DEFAULT_EQUIV_CAP).expect("equiv").is_none()
        }
        _ => false,
    };
    if !pipeline_ok {
        out.broken.push(format!("accepted patterns {accepted:?}"));
    }
    if !coherent || beta0.is_err() {
        out.broken.push("a Hopf-induced structure failed coherence".into());
    }
    out.passed = pipeline_ok && coherent && inequivalent;
    out.detail = format!(
        "accepted {} of 16 patterns {:?}; H0/H1 coherent={coherent}; H1 family beta=0 {} beta=1 {beta1_note}; certified inequivalent={inequivalent}",
        accepted.len(),
        accepted,
        if beta0.is_ok() { "built" } else { "refused" }
    );
    out
}

fn f4_count() -> Outcome {
    let r = ring("f4x2.alg");
    let oracle = UnitGroupOracle::new(r.field());
    let omega_orbits = oracle.omega_orbits.as_ref().map_or(0, |o| o.len());
    // tensor + H1 (beta in k) + H0 with gamma = 0 + H0 with gamma a nonzero cube class,
    // beta in {0} or one omega-orbit
    let q = r.field().order();
    let expected = 1 + q + (1 + oracle.square_classes()) + oracle.cube_classes() * (1 + usize::from(omega_orbits > 0));
    let start = Instant::now();
    let cfg = ClassificationConfig::for_ring(&r);
    let report = classify::classify_fastpath_char2(&r, &cfg).expect("fast path");
    let mut out = Outcome::new(
        report.class_count() == expected && expected == 13,
        format!(
            "classes={} oracle={expected} (squares {:?}, cubes {:?}, omega-orbits {omega_orbits}); refused triples={}; {:.2?}",
            report.class_count(),
            oracle.squares,
            oracle.cubes,
            report.rejected.len(),
            start.elapsed()
        ),
    );
    if expected != 13 {
        out.broken.push(format!("oracle evaluates to {expected}"));
    }
    out
}

fn property_suites() -> Outcome {
    let mut out = Outcome::new(true, "");
    let mut checked = 0;
    let mut structures: Vec<SmcStructure> = vec![];
    for name in ["f2x2.alg", "f2.alg", "f3.alg"] {
        let (_, report) = classify_default(&ring(name));
        structures.extend(report.classes.iter().map(|c| report.structures[c.representative].clone()));
    }
    structures.push(constructions::hopf_structure(&HopfAlgebra::h1(field(2, 1)).expect("H1")).expect("H1 structure"));
    for s in &structures {
        let report = audit::structural_audit(s).expect("audit runs");
        checked += 1;
        for item in &report.items {
            if item.passed == Some(false) {
                out.passed = false;
                out.broken.push(format!("{}: {}", item.name, item.detail));
            }
        }
        if report.reflection.maps < 100 {
            out.passed = false;
            out.broken.push("fewer than 100 reflection samples".into());
        }
    }
    let z2 = ring("f3z2.alg");
    let sign = constructions::char_ne2_structure(&Arc::new(NFoldBimodule::zero(z2.clone(), 0))).expect("sign structure");
    let noeth = audit::structural_audit(&sign).expect("audit runs");
    let ideal = noeth.item("reduced-ideal-quotient").and_then(|i| i.passed);
    if ideal != Some(true) {
        out.passed = false;
        out.broken.push(format!("ideal-quotient check on F3[Z/2]: {ideal:?}"));
    }
    out.detail = format!("{checked} structures audited, F3[Z/2] ideal-quotient check {ideal:?}; adjunction and round-trip suites run under cargo test");
    out
}

fn determinism() -> Outcome {
    let r = ring("f2x2.alg");
    let mut texts = vec![];
    let mut reports = vec![];
    for shards in [1, 4, 8, 1] {
        let mut cfg = ClassificationConfig::for_ring(&r);
        cfg.shards = shards;
        let report = classify::classify(&r, &cfg).expect("classification");
        texts.push(report.to_text());
        reports.push(report);
    }
    let identical = texts.windows(2).all(|w| w[0] == w[1]);
    let dir = tempfile::tempdir().expect("tempdir");
    reports[0].write_certificates(dir.path()).expect("write certificates");
    let files = std::fs::read_dir(dir.path()).map(|d| d.count()).unwrap_or(0);
    let reverified = reports[0].reverify_certificates(dir.path()).expect("reverify");
    Outcome::new(
        identical && reverified,
        format!("runs with shards 1,4,8,1 byte-identical={identical}; {files} certificate files re-verified={reverified}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("seven-class count", seven_classes),
        ("uniqueness on fields", fields_unique),
        ("Picard counts", picard_counts),
        ("char != 2 family", sign_family),
        ("Hopf pipeline", hopf_pipeline),
        ("F4 stretch count", f4_count),
        ("property suites", property_suites),
        ("engineering determinism", determinism),
    ];
    let mut broken = vec![];
    let mut passed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        if outcome.passed {
            passed += 1;
        }
        println!("criterion {}: {} {name}: {}", i + 1, if outcome.passed { "PASS" } else { "FAIL" }, outcome.detail);
        for b in outcome.broken {
            println!("    inconsistency: {b}");
            broken.push(format!("criterion {}: {b}", i + 1));
        }
    }
    println!("acceptance: {passed}/8 criteria pass");
    if !broken.is_empty() {
        eprintln!("{} internal inconsistencies", broken.len());
        std::process::exit(1);
    }
}
