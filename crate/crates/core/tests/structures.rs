mod common;

use homco::structures::{
    check_algebra, check_structure, dualize_algebra, dualize_coalgebra, opposite_tridend, CheckOptions, ComapName,
    EpsilonReading, Role, StructureError, StructureKind, StructurePackage,
};
use homco::{Field, PrimeField, Rationals, Space, TensorMap};

fn opts() -> CheckOptions {
    CheckOptions::default()
}

#[test]
fn zero_packages_pass_everything() {
    let f = PrimeField::new(7).unwrap();
    for d in 1..=3 {
        let c = Space::new("C", d).unwrap();
        for kind in StructureKind::ALL {
            let s = StructurePackage::zero(kind, &f, &c);
            let r = check_structure(&s, None, &opts()).unwrap();
            assert!(r.passes_strict(), "{kind:?} d{d}: {:?}", r.failing());
            assert_eq!(r.entries.len(), kind.axioms().len());
        }
    }
}

#[test]
fn two_dimensional_lie_coalgebra() {
    let s = common::structure(common::fixture("HomLie-d2-Q-hand.hcs"), &Rationals);
    let r = check_structure(&s, None, &opts()).unwrap();
    assert!(r.passes_strict());
    let g = s.comap(ComapName::Gamma);
    assert_eq!(*g.get(0, &[0, 1]), Rationals.one());
    assert_eq!(*g.get(0, &[1, 0]), -Rationals.one());
}

#[test]
fn sl2_dual_is_a_lie_coalgebra() {
    let s = common::structure(common::fixture("HomLie-d3-Q-hand.hcs"), &Rationals);
    assert!(check_structure(&s, None, &opts()).unwrap().passes_strict());
}

#[test]
fn failure_names_axiom_and_basis_index() {
    let c = Space::new("C", 2).unwrap();
    let f = Rationals;
    let mut d = TensorMap::zeros(&f, c.clone(), vec![c.clone(), c.clone()]).unwrap();
    d.set(0, &[0, 1], f.one());
    let s = StructurePackage::zero(StructureKind::HomCoassoc, &f, &c).with_comap(ComapName::Delta, d).unwrap();
    let r = check_structure(&s, None, &opts()).unwrap();
    assert!(!r.passes());
    assert_eq!(r.failing(), ["coasso"]);
    assert!(r.multiplicative());
    let e = r.entry("coasso").unwrap();
    assert_eq!(e.role, Role::Required);
    assert_eq!(e.first_failing_basis_index, Some(0));
    assert!(r.render().contains("coasso"));
}

#[test]
fn multiplicativity_does_not_decide_the_verdict() {
    let s = common::structure(common::fixture("HomCoassoc-d2-Q-hand.hcs"), &Rationals);
    let r = check_structure(&s, None, &opts()).unwrap();
    assert!(r.passes());
    assert_eq!(r.passes_strict(), r.multiplicative());
    for e in r.entries.iter().filter(|e| e.role == Role::Multiplicativity) {
        assert!(e.id.starts_with("multip") || e.id == "comult");
    }
}

#[test]
fn axiom_selection() {
    let f = PrimeField::new(5).unwrap();
    let c = Space::new("C", 1).unwrap();
    let s = StructurePackage::zero(StructureKind::HomTridendriform, &f, &c);
    let r = check_structure(&s, Some(&["c2", "c5"]), &opts()).unwrap();
    assert_eq!(r.verdicts(), [("c2".to_string(), true), ("c5".to_string(), true)]);
    let err = check_structure(&s, Some(&["c8"]), &opts()).unwrap_err();
    assert!(matches!(err, StructureError::UnknownAxiom { .. }));
}

#[test]
fn epsilon_reading_is_noted() {
    let f = PrimeField::new(5).unwrap();
    let s = common::structure(common::fixture("PostHomPoisson-d2-F5-1.hcs"), &f);
    let o = CheckOptions { epsilon: EpsilonReading::XiSquared, ..opts() };
    let r = check_structure(&s, None, &o).unwrap();
    assert!(r.notes.iter().any(|n| n.contains("xi^2")));
    assert!(check_structure(&s, None, &opts()).unwrap().passes());
}

#[test]
fn shape_errors() {
    let f = Rationals;
    let c = Space::new("C", 2).unwrap();
    let d = Space::new("D", 2).unwrap();
    let s = StructurePackage::zero(StructureKind::HomCoassoc, &f, &c);
    assert!(s.with_alpha(TensorMap::identity(&f, &d)).is_err());
    assert!(s.with_comap(ComapName::Gamma, TensorMap::zeros(&f, c.clone(), vec![c.clone(), c.clone()]).unwrap()).is_err());
    assert!(s.with_comap(ComapName::Delta, TensorMap::zeros(&f, c.clone(), vec![c.clone()]).unwrap()).is_err());
}

#[test]
fn opposite_is_an_involution_on_fixtures() {
    let f = PrimeField::new(5).unwrap();
    for s in common::all_structures(&f).into_iter().filter(|s| s.kind() == StructureKind::HomTridendriform) {
        let op = opposite_tridend(&s).unwrap();
        assert!(check_structure(&op, None, &opts()).unwrap().passes());
        assert_eq!(opposite_tridend(&op).unwrap(), s);
    }
    let lie = common::structure(common::fixture("HomLie-d2-F5-1.hcs"), &f);
    assert!(opposite_tridend(&lie).is_err());
}

#[test]
fn duality_round_trips() {
    let f = PrimeField::new(5).unwrap();
    let a = match homco::io::parse_with(common::fixture("HomTridendriformAlgebra-d2-F5-1.hcs"), &f).unwrap() {
        homco::io::Package::Algebra(a) => a,
        _ => unreachable!(),
    };
    assert!(check_algebra(&a).unwrap().passes());
    let s = dualize_algebra(&a).unwrap();
    assert_eq!(s.kind(), StructureKind::HomTridendriform);
    assert!(check_structure(&s, None, &opts()).unwrap().passes());
    assert_eq!(dualize_coalgebra(&s).unwrap(), a);
    for s in common::all_structures(&f).into_iter().filter(|s| s.kind() == StructureKind::HomTridendriform) {
        assert_eq!(dualize_algebra(&dualize_coalgebra(&s).unwrap()).unwrap(), s);
    }
}

#[test]
fn every_fixture_passes_its_kind() {
    for s in common::all_structures(&Rationals) {
        assert!(check_structure(&s, None, &opts()).unwrap().passes(), "{:?}", s.kind());
    }
    let f = PrimeField::new(5).unwrap();
    for s in common::all_structures(&f) {
        assert!(check_structure(&s, None, &opts()).unwrap().passes(), "{:?}", s.kind());
    }
}
