use homco::comodules::{comodule_residual_with, ComoduleCheckOptions, ComoduleKind, Ma3Reading};
use homco::search::oracle::{agrees, oracle_check_comodule, oracle_check_structure};
use homco::search::{Constraints, Layout, Subject};
use homco::structures::{check_structure, CheckOptions, EpsilonReading, StructureKind};
use homco::PrimeField;

fn structure_agreement(kind: StructureKind, eps: EpsilonReading, count: u64) {
    let f = PrimeField::new(7).unwrap();
    let layout = Layout::for_structure_raw(kind, &f, 3, &Constraints::default()).unwrap();
    let opts = CheckOptions { epsilon: eps, ..CheckOptions::default() };
    let mut nonzero = std::collections::BTreeMap::new();
    for idx in 0..count {
        let Subject::Structure(s) = layout.random(1, idx) else { unreachable!() };
        for (axiom, _) in kind.axioms() {
            let rep = check_structure(&s, Some(&[axiom]), &opts).unwrap();
            let r = &rep.entries[0].residual;
            let o = oracle_check_structure(&s, axiom, eps).unwrap();
            assert!(agrees(&o, r), "{kind} {axiom} candidate {idx}");
            *nonzero.entry(axiom).or_insert(0) += usize::from(!o.passed);
        }
    }
    for (axiom, n) in nonzero {
        assert!(n > 0, "{kind} {axiom}: every random residual vanished");
    }
}

#[test]
fn oracle_matches_checker_on_every_structure_axiom() {
    for kind in StructureKind::ALL {
        structure_agreement(kind, EpsilonReading::Xi, 200);
    }
}

#[test]
fn oracle_matches_checker_under_xi_squared() {
    structure_agreement(StructureKind::PostHomPoisson, EpsilonReading::XiSquared, 100);
}

#[test]
fn oracle_matches_checker_on_comodule_axioms() {
    let f = PrimeField::new(7).unwrap();
    for kind in ComoduleKind::ALL {
        let bl = Layout::for_structure(kind.base_kind(), &f, 2, &Constraints::default()).unwrap();
        for idx in 0..60u64 {
            let Subject::Structure(base) = bl.random(2, idx) else { unreachable!() };
            let cl = Layout::for_comodule(kind, &base, 2, &Constraints::default()).unwrap();
            let Subject::Comodule(c) = cl.random(3, idx) else { unreachable!() };
            for (axiom, _) in kind.axioms() {
                for (reading, printed) in [(Ma3Reading::Proof, false), (Ma3Reading::Printed, true)] {
                    let r = comodule_residual_with(&c, axiom, &ComoduleCheckOptions { ma3: reading }).unwrap();
                    let o = oracle_check_comodule(&c, axiom, printed).unwrap();
                    assert!(agrees(&o, &r), "{kind} {axiom} candidate {idx} printed={printed}");
                }
            }
        }
    }
}

#[test]
fn ma3_readings_are_distinguished() {
    let f = PrimeField::new(7).unwrap();
    let kind = ComoduleKind::PostHomLieComodule;
    let bl = Layout::for_structure(kind.base_kind(), &f, 2, &Constraints::default()).unwrap();
    let Subject::Structure(base) = bl.random(2, 0) else { unreachable!() };
    let cl = Layout::for_comodule(kind, &base, 2, &Constraints::default()).unwrap();
    let Subject::Comodule(c) = cl.random(3, 0) else { unreachable!() };
    let proof = comodule_residual_with(&c, "ma3", &ComoduleCheckOptions::default()).unwrap();
    let printed = oracle_check_comodule(&c, "ma3", true).unwrap();
    assert!(!agrees(&printed, &proof));
}
