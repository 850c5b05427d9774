mod common;

use homco::search::{
    enumerate_instances, minimize_witness, Layout, Provenance, SearchConfig, SearchError, SearchMode, Subject,
    WitnessRecord,
};
use homco::structures::{ComapName, StructureKind};
use homco::{PrimeField, Rationals};

#[test]
fn one_dimensional_lie_coalgebras_have_zero_bracket() {
    for p in [3, 5] {
        let f = PrimeField::new(p).unwrap();
        let cfg = SearchConfig::structure(StructureKind::HomLie, 1, &f, SearchMode::Exhaustive, 100_000, 1);
        let out = enumerate_instances(&cfg).unwrap();
        assert!(!out.budget_exceeded);
        assert!(!out.records.is_empty());
        for r in &out.records {
            let Subject::Structure(s) = &r.subject else { panic!() };
            assert!(s.comap(ComapName::Gamma).is_zero());
            assert!(r.verdicts.passes());
        }
    }
}

#[test]
fn results_are_deterministic() {
    let f = PrimeField::new(5).unwrap();
    for mode in [SearchMode::Exhaustive, SearchMode::Random] {
        let cfg = SearchConfig::structure(StructureKind::HomCoassoc, 2, &f, mode, 3_000, 9);
        let a = enumerate_instances(&cfg).unwrap();
        let b = enumerate_instances(&cfg).unwrap();
        assert_eq!(a.records, b.records);
        assert_eq!(a.visited, 3_000);
    }
}

#[test]
fn budget_is_reported() {
    let f = PrimeField::new(5).unwrap();
    let cfg = SearchConfig::structure(StructureKind::HomCoassoc, 2, &f, SearchMode::Exhaustive, 10, 1);
    let out = enumerate_instances(&cfg).unwrap();
    assert!(out.budget_exceeded);
    assert_eq!(out.visited, 10);
    let huge = SearchConfig::structure(StructureKind::HomTridendriform, 2, &f, SearchMode::Exhaustive, 10, 1);
    assert!(matches!(enumerate_instances(&huge), Err(SearchError::GuardViolation(_))));
}

#[test]
fn exhaustive_over_the_rationals_is_refused() {
    let cfg = SearchConfig::structure(StructureKind::HomLie, 1, &Rationals, SearchMode::Exhaustive, 100, 1);
    assert!(matches!(enumerate_instances(&cfg), Err(SearchError::GuardViolation(_))));
    let cfg = SearchConfig { mode: SearchMode::Random, ..cfg };
    assert!(enumerate_instances(&cfg).is_ok());
}

#[test]
fn strict_search_keeps_only_multiplicative_witnesses() {
    let f = PrimeField::new(3).unwrap();
    let mut cfg = SearchConfig::structure(StructureKind::HomCoassoc, 2, &f, SearchMode::Random, 5_000, 2);
    cfg.strict = true;
    for r in enumerate_instances(&cfg).unwrap().records {
        assert!(r.verdicts.passes_strict());
    }
}

#[test]
fn minimizer_zeroes_redundant_coefficients() {
    let f = PrimeField::new(5).unwrap();
    let text = "kind = HomCoassoc\nfield = Fp 5\ndim C = 2\n\nmap alpha C {\n  e1 -> 1 e1\n  e2 -> 1 e2\n}\n\n\
comap delta C -> (C,C) {\n  e1 -> 1 (e1, e1)\n  e2 -> 1 (e2, e2)\n}\n";
    let s = common::structure(text, &f);
    let w = WitnessRecord::new(
        Subject::Structure(s),
        Provenance { source: "test".into(), seed: 4, index: 7 },
    )
    .unwrap();
    assert_eq!(w.file_name(), "HomCoassoc-d2-F5-4-7.hcs");
    let pred = |s: &Subject<PrimeField>| {
        let Subject::Structure(p) = s else { return false };
        !p.comap(ComapName::Delta).is_zero() && s.check().unwrap().passes()
    };
    let m = minimize_witness(&w, pred);
    assert!(m.minimized);
    assert!(m.subject.nonzero_count() < w.subject.nonzero_count());
    assert!(pred(&m.subject));
    assert_eq!(m.provenance, w.provenance);
}

#[test]
fn layouts_sample_reproducibly() {
    let f = PrimeField::new(7).unwrap();
    let cfg = SearchConfig::structure(StructureKind::PostHomLie, 2, &f, SearchMode::Random, 1, 3);
    let l = Layout::for_config(&cfg).unwrap();
    assert!(l.free_count() > 0);
    assert_eq!(l.random(3, 11), l.random(3, 11));
    assert_ne!(l.random(3, 11), l.random(3, 12));
    assert_eq!(l.template().kind_id(), "PostHomLie");
}
