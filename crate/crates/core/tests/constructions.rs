mod common;

use homco::constructions::{
    admissible, commutator, commutator_cobracket, dendriform_to_prelie, inverse_twist, le1_report, power_twist,
    rb_coassoc_derive, tensor_posthomlie, tilde, tridend_sum, tridend_to_posthomlie, yau_twist, ConstructionError,
    RbTarget,
};
use homco::structures::{check_structure, CheckOptions, ComapName, RotaBaxter, StructureKind, StructurePackage};
use homco::tensor::permute;
use homco::{Field, LegPermutation, PrimeField, Rationals, TensorMap};

fn passes<F: Field>(s: &StructurePackage<F>) -> bool {
    check_structure(s, None, &CheckOptions::default()).unwrap().passes()
}

fn of_kind<F: Field>(f: &F, kind: StructureKind) -> Vec<StructurePackage<F>> {
    common::all_structures(f).into_iter().filter(|s| s.kind() == kind).collect()
}

#[test]
fn commutator_is_skew() {
    let f = Rationals;
    for s in of_kind(&f, StructureKind::HomCoassoc) {
        let g = commutator(s.comap(ComapName::Delta)).unwrap();
        assert_eq!(permute(&LegPermutation::tau(), &g).unwrap(), g.scale(&-f.one()));
        let lie = commutator_cobracket(&s).unwrap();
        assert_eq!(lie.kind(), StructureKind::HomLie);
        assert!(passes(&lie));
    }
}

#[test]
fn yau_twist_by_alpha_powers() {
    let f = PrimeField::new(5).unwrap();
    for s in of_kind(&f, StructureKind::HomTridendriform) {
        if !check_structure(&s, None, &CheckOptions::default()).unwrap().multiplicative() {
            assert!(matches!(power_twist(&s, 2), Err(ConstructionError::NotMultiplicative(_))));
            continue;
        }
        assert_eq!(power_twist(&s, 0).unwrap(), s);
        assert!(passes(&power_twist(&s, 3).unwrap()));
        if let Ok(u) = inverse_twist(&s) {
            assert_eq!(*u.alpha(), TensorMap::identity(&f, s.space()));
            assert!(passes(&u));
        }
    }
}

#[test]
fn yau_twist_rejects_non_endomorphisms() {
    let f = Rationals;
    let s = common::structure(common::fixture("HomLie-d2-Q-hand.hcs"), &f);
    let swap = TensorMap::from_matrix(&f, s.space(), &[vec![f.zero(), f.one()], vec![f.one(), f.zero()]]).unwrap();
    assert!(matches!(yau_twist(&s, &swap), Err(ConstructionError::NotEndomorphism(_))));
    let id = TensorMap::identity(&f, s.space());
    assert_eq!(yau_twist(&s, &id).unwrap(), s);
    let pl = of_kind(&f, StructureKind::HomPreLie).remove(0);
    let id = TensorMap::identity(&f, pl.space());
    assert!(matches!(yau_twist(&pl, &id), Err(ConstructionError::UnsupportedKind(_))));
}

#[test]
fn rota_baxter_derivations() {
    let f = Rationals;
    let rbs = of_kind(&f, StructureKind::HomCoassocRB);
    assert!(rbs.len() >= 5);
    for s in &rbs {
        let t = rb_coassoc_derive(s, RbTarget::Tridend, None).unwrap();
        assert!(passes(&t));
        let sum = tridend_sum(&t).unwrap();
        assert!(passes(&sum));
        let d = rb_coassoc_derive(s, RbTarget::Dendriform, None).unwrap();
        assert!(passes(&d));
        let w = s.rb().unwrap().weight.clone();
        if w == f.zero() {
            assert!(passes(&rb_coassoc_derive(s, RbTarget::PreLie0, None).unwrap()));
            assert!(rb_coassoc_derive(s, RbTarget::PreLieM1, None).is_err());
        } else if w == -f.one() {
            assert!(passes(&rb_coassoc_derive(s, RbTarget::PreLieM1, None).unwrap()));
            assert!(matches!(
                rb_coassoc_derive(s, RbTarget::PreLie0, None),
                Err(ConstructionError::WeightMismatch(_))
            ));
        }
    }
}

#[test]
fn dendriform_to_prelie_on_fixtures() {
    let f = PrimeField::new(5).unwrap();
    for s in of_kind(&f, StructureKind::HomDendriform) {
        assert!(passes(&dendriform_to_prelie(&s).unwrap()));
    }
}

fn with_operator(s: &StructurePackage<Rationals>, op: TensorMap<Rationals>, w: i64) -> StructurePackage<Rationals> {
    let f = Rationals;
    StructurePackage::from_parts(
        StructureKind::HomCoassocRB,
        s.alpha().clone(),
        vec![(ComapName::Delta, s.comap(ComapName::Delta).clone())],
        Some(RotaBaxter { operator: op, weight: f.from_i64(w) }),
    )
    .unwrap()
}

#[test]
fn zero_operator_breaks_the_b_pair_at_every_weight() {
    let f = Rationals;
    let base = common::structure(common::fixture("HomCoassoc-d3-Q-hand.hcs"), &f);
    let zero = TensorMap::zeros(&f, base.space().clone(), vec![base.space().clone()]).unwrap();
    for w in [1, -1, 0, 2, -2] {
        let s = with_operator(&base, zero.clone(), w);
        assert!(passes(&s), "zero operator is Rota-Baxter of weight {w}");
        let lam = f.from_i64(w);
        let d = rb_coassoc_derive(&s, RbTarget::DendriformB, Some(&lam)).unwrap();
        assert!(!passes(&d), "weight {w}");
    }
}

#[test]
fn shifted_operator_repairs_the_b_pair() {
    let f = Rationals;
    let base = common::structure(common::fixture("HomCoassoc-d3-Q-hand.hcs"), &f);
    for w in [1, -1] {
        let lam = f.from_i64(w);
        let op = TensorMap::identity(&f, base.space()).scale(&lam);
        let s = with_operator(&base, op, w);
        let d = rb_coassoc_derive(&s, RbTarget::DendriformB, Some(&lam)).unwrap();
        assert!(passes(&d), "weight {w}");
    }
    let s = with_operator(&base, TensorMap::identity(&f, base.space()), 1);
    assert!(rb_coassoc_derive(&s, RbTarget::DendriformB, None).is_err());
}

#[test]
fn post_lie_derivations() {
    let f = Rationals;
    for p in of_kind(&f, StructureKind::PostHomLie) {
        let t = tilde(&p).unwrap();
        assert_eq!(t.kind(), StructureKind::PostHomLie);
        assert!(passes(&t));
        let adm = admissible(&p).unwrap();
        assert!(passes(&adm.homlie));
        let r = le1_report(&p).unwrap();
        assert!(r.cyclic_vanishes);
        assert!(r.admissible);
        assert_eq!(r.l_eq_r1, r.l == r.r1);
        assert_eq!(r.l_eq_r2, r.l == r.r2);
    }
    let lie = common::structure(common::fixture("HomLie-d2-Q-hand.hcs"), &f);
    assert!(le1_report(&lie).is_err());
}

#[test]
fn tridendriform_to_post_lie() {
    let f = PrimeField::new(5).unwrap();
    for s in of_kind(&f, StructureKind::HomTridendriform) {
        let p = tridend_to_posthomlie(&s).unwrap();
        assert_eq!(p.kind(), StructureKind::PostHomLie);
        assert!(passes(&p));
    }
}

#[test]
fn tensor_with_a_cocommutative_partner() {
    let f = Rationals;
    let q = common::structure(common::fixture("HomCoassoc-d3-Q-hand.hcs"), &f);
    for p in of_kind(&f, StructureKind::PostHomLie) {
        let t = tensor_posthomlie(&p, &q).unwrap();
        assert_eq!(t.dim(), 3 * p.dim());
        assert!(passes(&t));
    }
    let noncomm = common::structure(common::fixture("HomCoassoc-d2-Q-hand.hcs"), &f);
    let p = of_kind(&f, StructureKind::PostHomLie).remove(0);
    let d = noncomm.comap(ComapName::Delta);
    if *d != permute(&LegPermutation::tau(), d).unwrap() {
        assert!(matches!(tensor_posthomlie(&p, &noncomm), Err(ConstructionError::NotCocommutative)));
    }
}
