mod common;

use homco::comodules::{
    check_comodule, direct_sum, regular_k, self_comodule, tensor_k, twist_0k, twist_beta, twist_n0, twist_nk,
    ComoduleCheckOptions, ComoduleError, ComoduleKind, ComodulePackage, Ma3Reading, ZeroKVariant,
};
use homco::search::pools::{comodule_pool, structure_pool};
use homco::structures::{check_structure, CheckOptions, StructureKind, StructurePackage};
use homco::tensor::precompose;
use homco::{Field, PrimeField, Rationals, TensorMap};

fn f5() -> PrimeField {
    PrimeField::new(5).unwrap()
}

fn ok<F: Field>(c: &ComodulePackage<F>) -> bool {
    check_comodule(c, None, &ComoduleCheckOptions::default()).unwrap().passes()
}

fn mult<F: Field>(s: &StructurePackage<F>) -> bool {
    check_structure(s, None, &CheckOptions::default()).unwrap().passes_strict()
}

fn kinds() -> [ComoduleKind; 2] {
    [ComoduleKind::TridendComodule, ComoduleKind::PostHomLieComodule]
}

#[test]
fn fixtures_are_comodules() {
    for c in common::all_comodules(&Rationals) {
        assert!(ok(&c), "{}", c.kind());
    }
    for c in common::all_comodules(&f5()) {
        assert!(ok(&c), "{}", c.kind());
    }
}

#[test]
fn every_base_is_a_comodule_over_itself() {
    let f = f5();
    for kind in kinds() {
        for base in structure_pool(kind.base_kind(), &f).iter().take(20) {
            let c = self_comodule(base).unwrap();
            assert_eq!(c.mspace().dim(), base.dim());
            assert!(ok(&c));
        }
    }
    let lie = common::structure(common::fixture("HomLie-d2-Q-hand.hcs"), &Rationals);
    assert!(self_comodule(&lie).is_err());
}

#[test]
fn regular_comodules_over_multiplicative_bases() {
    let f = f5();
    for base in structure_pool(StructureKind::PostHomLie, &f).iter().filter(|b| mult(b)).take(10) {
        for k in 0..3 {
            assert!(ok(&regular_k(base, k).unwrap()), "k={k}");
        }
    }
}

#[test]
fn left_twists_add_exponents() {
    let f = f5();
    for kind in kinds() {
        for c in comodule_pool(kind, &f).iter().take(10) {
            let two = twist_n0(&twist_n0(c, 1).unwrap(), 2).unwrap();
            assert_eq!(two, twist_n0(c, 3).unwrap());
            assert_eq!(twist_n0(c, 0).unwrap(), *c);
            let nk = twist_nk(c, 3, 0).unwrap();
            for (n, m) in twist_n0(c, 3).unwrap().maps() {
                assert_eq!(*nk.map(*n), precompose(m, c.alpha_m()).unwrap());
            }
        }
    }
}

#[test]
fn remark_reading_fails_at_k_zero() {
    let f = f5();
    let mut broken = 0;
    for c in comodule_pool(ComoduleKind::TridendComodule, &f).iter() {
        if !mult(c.base()) || *c.base().alpha() == TensorMap::identity(&f, c.base().space()) {
            continue;
        }
        for k in 1..3 {
            assert!(ok(&twist_0k(c, k, ZeroKVariant::Theorem).unwrap()), "theorem k={k}");
            assert!(ok(&twist_0k(c, k, ZeroKVariant::Consistent).unwrap()), "consistent k={k}");
        }
        let r = twist_0k(c, 0, ZeroKVariant::Remark).unwrap();
        assert_eq!(*r.base().alpha(), TensorMap::identity(&f, c.base().space()));
        if !ok(&r) {
            broken += 1;
        }
    }
    assert!(broken > 0, "expected a k = 0 failure");
    let c = &comodule_pool(ComoduleKind::TridendComodule, &f)[0];
    assert!(matches!(twist_0k(c, 21, ZeroKVariant::Theorem), Err(ComoduleError::ExponentOverflow(21))));
}

#[test]
fn direct_sum_and_tensor_dimensions() {
    let f = f5();
    let pool = comodule_pool(ComoduleKind::PostHomLieComodule, &f);
    let (a, b) = pool
        .iter()
        .flat_map(|a| pool.iter().map(move |b| (a, b)))
        .find(|(a, b)| a.base() == b.base() && a != b && mult(a.base()))
        .expect("two comodules over one multiplicative base");
    let s = direct_sum(a, b).unwrap();
    assert_eq!(s.mspace().dim(), a.mspace().dim() + b.mspace().dim());
    assert!(ok(&s));
    let t = tensor_k(a, b, 0).unwrap();
    assert_eq!(t.mspace().dim(), a.mspace().dim() * b.mspace().dim());
    let other = pool.iter().find(|c| c.base() != a.base()).unwrap();
    assert!(matches!(direct_sum(a, other), Err(ComoduleError::BaseMismatch)));
}

#[test]
fn beta_twist_requires_equivariance() {
    let f = f5();
    let c = common::comodule(common::fixture("PostHomLieComodule-F5-1.hcs"), &f);
    let id_l = TensorMap::identity(&f, c.base().space());
    let id_m = TensorMap::identity(&f, c.mspace());
    let t = twist_beta(&c, &id_l, &id_m).unwrap();
    assert_eq!(t, c);
    let z = TensorMap::zeros(&f, c.base().space().clone(), vec![c.base().space().clone()]).unwrap();
    assert!(c.maps().values().any(|m| !m.is_zero()));
    assert!(matches!(twist_beta(&c, &z, &id_m), Err(ComoduleError::NotEquivariant(_))));
    assert!(twist_beta(&c, &id_l, &id_l).is_err() || c.base().space() == c.mspace());
}

#[test]
fn ma3_reading_selects_terms() {
    let f = f5();
    for c in comodule_pool(ComoduleKind::PostHomLieComodule, &f).iter().take(20) {
        let printed = ComoduleCheckOptions { ma3: Ma3Reading::Printed };
        let r = check_comodule(c, Some(&["ma3"]), &printed).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert!(r.notes.iter().any(|n| n.contains("ma3")));
    }
    let c = &comodule_pool(ComoduleKind::PostHomLieComodule, &f)[0];
    assert!(check_comodule(c, Some(&["nope"]), &ComoduleCheckOptions::default()).is_err());
}
