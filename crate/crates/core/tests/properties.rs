mod common;

use std::sync::Arc;

use proptest::prelude::*;

use smcmod::algebra::{group_algebra, quotient_algebra};
use smcmod::audit;
use smcmod::bimodule::NFoldBimodule;
use smcmod::classify::{self, ClassificationConfig, PruneConfig};
use smcmod::constructions::{self, FamilyParams};
use smcmod::enumerate;
use smcmod::equiv;
use smcmod::hom;
use smcmod::hopf::HopfAlgebra;
use smcmod::io;
use smcmod::smc::SmcStructure;

use common::{field, ring};

/// Structures over rings of dimension at most 2 used by the invariant checks.
fn sample_structures() -> Vec<SmcStructure> {
    let f2 = field(2, 1);
    let mut out = vec![];
    for name in ["f2.alg", "f3.alg", "f4.alg", "f2x2.alg", "f3x2.alg", "f3z2.alg"] {
        out.push(constructions::standard_structure(&ring(name)).unwrap());
    }
    out.push(constructions::hopf_structure(&HopfAlgebra::h0(f2.clone()).unwrap()).unwrap());
    out.push(constructions::hopf_structure(&HopfAlgebra::h1(f2.clone()).unwrap()).unwrap());
    out.push(constructions::parametric_structure(&FamilyParams::new(f2, 0, 1, 0).unwrap()).unwrap());
    let z2 = ring("f3z2.alg");
    for m in enumerate::enumerate_left_modules(&z2, 1, 1 << 20).unwrap() {
        let s = constructions::char_ne2_structure(&Arc::new(m)).unwrap();
        out.push(constructions::sign_mirror(&s).unwrap());
        out.push(s);
    }
    out
}

fn modules_up_to_two(r: &Arc<smcmod::algebra::Algebra>) -> Vec<Arc<NFoldBimodule>> {
    let mut ms = vec![];
    for d in 1..=2 {
        ms.extend(enumerate::enumerate_left_modules(r, d, 1 << 20).unwrap().into_iter().map(Arc::new));
    }
    ms
}

#[test]
fn adjunction_cardinalities_agree_exhaustively() {
    for s in sample_structures() {
        let ms = modules_up_to_two(s.algebra());
        for a in &ms {
            for b in &ms {
                let smash = s.smash(a, b).unwrap();
                for p in &ms {
                    let left = hom::hom_space(smash.module(), p, &[]).unwrap().len();
                    let inner = Arc::new(s.internal_hom(b, p).unwrap());
                    let right = hom::hom_space(a, &inner, &[]).unwrap().len();
                    assert_eq!(left, right, "Hom(A^B, P) and Hom(A, [B, P]) differ");
                }
            }
        }
    }
}

#[test]
fn structural_audits_pass_on_samples() {
    for s in sample_structures() {
        let report = audit::structural_audit(&s).unwrap();
        assert!(report.passed(), "{}", report.to_text());
        for name in ["end-unit-center", "summand-idempotents", "reflection"] {
            assert_eq!(report.item(name).and_then(|i| i.passed), Some(true), "{name}");
        }
        assert!(report.reflection.maps >= 100);
    }
}

#[test]
fn ideal_quotients_are_checked_on_the_group_algebra() {
    let z2 = Arc::new(group_algebra(field(3, 1), &[2]).unwrap());
    let s = constructions::standard_structure(&z2).unwrap();
    let report = audit::structural_audit(&s).unwrap();
    let item = report.item("reduced-ideal-quotient").unwrap();
    assert_eq!(item.passed, Some(true), "{}", item.detail);
    // F3[Z/2] = F3 x F3 has four two-sided ideals
    assert_eq!(z2.two_sided_ideals(1 << 16).unwrap().len(), 4);
}

#[test]
fn pruning_does_not_change_the_classification() {
    let r = ring("f2x2.alg");
    let cfg = ClassificationConfig::for_ring(&r);
    let pruned = classify::classify(&r, &cfg).unwrap();
    let mut open = cfg.clone();
    open.prune = PruneConfig::NONE;
    let unpruned = classify::classify(&r, &open).unwrap();
    assert!(unpruned.structures.len() >= pruned.structures.len());
    assert!(classify::partitions_agree(&pruned, &unpruned, &cfg).unwrap());
}

#[test]
fn equivalence_is_reflexive_and_symmetric_on_the_family() {
    let f2 = field(2, 1);
    let (family, _) = classify::char2_family(&f2).unwrap();
    let r = family[0].1.algebra().clone();
    let picard = equiv::picard_enumerate(&r, 2, 1 << 20).unwrap();
    for (_, s) in &family {
        let w = equiv::equiv_test(s, s, &picard, 1 << 20).unwrap().expect("reflexive");
        assert!(equiv::check_witness(s, s, &w).unwrap());
    }
    for (_, a) in &family {
        for (_, b) in &family {
            let ab = equiv::equiv_test(a, b, &picard, 1 << 20).unwrap().is_some();
            let ba = equiv::equiv_test(b, a, &picard, 1 << 20).unwrap().is_some();
            assert_eq!(ab, ba);
        }
    }
}

fn dual_numbers(p: usize, e: usize) -> Arc<smcmod::algebra::Algebra> {
    Arc::new(quotient_algebra(field(p, e), &[0, 0, 1]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reflection_holds_for_random_maps(seed in any::<u64>(), which in 0usize..4) {
        let s = match which {
            0 => constructions::standard_structure(&dual_numbers(2, 1)).unwrap(),
            1 => constructions::hopf_structure(&HopfAlgebra::h0(field(2, 1)).unwrap()).unwrap(),
            2 => constructions::hopf_structure(&HopfAlgebra::h1(field(2, 1)).unwrap()).unwrap(),
            _ => constructions::standard_structure(&ring("f3z2.alg")).unwrap(),
        };
        let stats = audit::reflection_audit(&s, 100, seed).unwrap();
        // both slots of Lambda are sampled
        prop_assert_eq!(stats.maps, 200);
        prop_assert!(stats.failures.is_empty(), "{:?}", stats.failures);
    }

    #[test]
    fn quotient_algebras_round_trip(p in prop::sample::select(vec![2usize, 3, 5]), tail in prop::collection::vec(0usize..5, 1..4)) {
        let k = field(p, 1);
        let mut f: Vec<u8> = tail.iter().map(|&c| (c % p) as u8).collect();
        f.push(1);
        let r = quotient_algebra(k, &f).unwrap();
        let text = io::algebra_to_text(&r);
        let back = io::parse_algebra(&text).unwrap();
        prop_assert_eq!(io::algebra_to_text(&back), text);
        prop_assert_eq!(back.structure_constants(), r.structure_constants());
    }

    #[test]
    fn family_structures_round_trip(e in 1usize..=2, b1 in 0u8..2, beta in 0u8..4, gamma in 0u8..4) {
        let k = field(2, e);
        let q = k.order() as u8;
        prop_assume!(beta < q && gamma < q && (b1 == 0 || gamma == 0));
        if let Ok(s) = constructions::parametric_structure(&FamilyParams::new(k, b1, beta, gamma).unwrap()) {
            let text = io::structure_to_text(&s);
            let back = io::parse_structure(&text).unwrap();
            prop_assert_eq!(io::structure_to_text(&back), text);
            prop_assert!(back.is_coherent().unwrap());
        }
    }

    #[test]
    fn the_family_is_coherent_exactly_off_the_hexagon_obstruction(e in 1usize..=2, b1 in 0u8..2, beta in 0u8..4, gamma in 0u8..4) {
        let k = field(2, e);
        let q = k.order() as u8;
        prop_assume!(beta < q && gamma < q && (b1 == 0 || gamma == 0));
        let built = constructions::parametric_structure(&FamilyParams::new(k, b1, beta, gamma).unwrap());
        prop_assert_eq!(built.is_ok(), gamma == 0 && (b1 == 0 || beta == 0));
    }
}
