use homco::io::{emit_report, parse_structure_file, verify_theorem, CampaignConfig, Supply, TheoremId, Verdict};
use homco::{PrimeField, Rationals};

fn f5() -> PrimeField {
    PrimeField::new(5).unwrap()
}

#[test]
fn theorem_ids_round_trip() {
    for id in TheoremId::ALL {
        assert_eq!(id.id().parse::<TheoremId>().unwrap(), *id);
        assert!(!id.summary().is_empty());
    }
    assert!("T-nope".parse::<TheoremId>().is_err());
    let ro: Vec<_> = TheoremId::ALL.iter().filter(|t| t.report_only()).map(|t| t.id()).collect();
    assert_eq!(ro, ["L-le1", "T-com-0k"]);
}

#[test]
fn commutator_campaign_passes() {
    let sup = Supply::with_fixtures(&f5(), true);
    let r = verify_theorem(TheoremId::Am1, &sup, &CampaignConfig::default());
    assert_eq!(r.verdict(), Verdict::Pass);
    assert_eq!((r.gated_passed(), r.gated_used()), (25, 25));
    assert!(r.counterexamples.is_empty());
}

#[test]
fn tridendriform_twist_passes() {
    let sup = Supply::with_fixtures(&f5(), true);
    let r = verify_theorem(TheoremId::TridendTwist, &sup, &CampaignConfig::default());
    assert_eq!(r.verdict(), Verdict::Pass);
    assert!(r.used() > 0);
}

#[test]
fn empty_supply_gives_header_only() {
    let sup = Supply::new(&Rationals, false);
    let r = verify_theorem(TheoremId::Am1, &sup, &CampaignConfig::default());
    assert_eq!(r.verdict(), Verdict::NoWitnesses);
    let text = emit_report(&r);
    assert!(text.starts_with("campaign T-am1\n"));
    assert!(text.ends_with("verdict: no witnesses\n"));
    assert!(!text.contains("group"));
}

#[test]
fn reports_are_deterministic_and_seeded() {
    let sup = Supply::with_fixtures(&f5(), true);
    let cfg = CampaignConfig { trials: 10, ..Default::default() };
    let a = emit_report(&verify_theorem(TheoremId::PlcTwist, &sup, &cfg));
    let b = emit_report(&verify_theorem(TheoremId::PlcTwist, &sup, &cfg));
    assert_eq!(a, b);
    assert!(a.contains("seed 1\n"));
    let other = CampaignConfig { seed: 7, ..cfg };
    assert!(emit_report(&verify_theorem(TheoremId::PlcTwist, &sup, &other)).contains("seed 7\n"));
}

#[test]
fn associator_identity_records_every_witness() {
    let sup = Supply::with_fixtures(&f5(), true);
    let r = verify_theorem(TheoremId::Le1, &sup, &CampaignConfig::default());
    assert_eq!(r.verdict(), Verdict::ReportOnly);
    let witnesses: Vec<_> = r.ledger.iter().filter(|e| e.scope.starts_with("witness:")).collect();
    assert_eq!(witnesses.len(), r.used());
    for e in witnesses {
        assert!(matches!(e.get("l_eq_r1"), Some("yes" | "no")), "{e}");
        assert!(matches!(e.get("l_eq_r2"), Some("yes" | "no")), "{e}");
        assert_eq!(e.theorem, "L-le1");
        assert_eq!(e.field, "F5");
    }
}

#[test]
fn refutation_carries_a_parsable_counterexample() {
    let sup = Supply::with_fixtures(&f5(), true);
    let cfg = CampaignConfig { trials: 10, ..Default::default() };
    let r = verify_theorem(TheoremId::BDendriform, &sup, &cfg);
    assert_eq!(r.verdict(), Verdict::Refuted);
    let c = r.counterexamples.iter().find(|c| c.gated).expect("gated counterexample");
    assert!(c.file_name.starts_with("T-b-dendriform-"), "{}", c.file_name);
    assert!(c.file_name.ends_with(".hcs"));
    assert!(c.detail.contains(" at e"), "{}", c.detail);
    parse_structure_file(&c.text).unwrap();
    let modified = r.extras.iter().find(|(k, _)| k.contains("2R")).expect("modified operator extra");
    assert_eq!(modified.1 .0, modified.1 .1);
}
