mod common;

use homco::io::{emit, parse_structure_file, parse_with, AnyPackage, Package, ParseErrorKind, FIXTURES};
use homco::structures::{ComapName, StructureKind};
use homco::{Field, PrimeField, Rationals};

const MINIMAL: &str = "kind = HomCoassoc\nfield = Q\ndim C = 1\n\nmap alpha C {\n  e1 -> 1 e1\n}\n\n\
comap delta C -> (C,C) {\n  e1 -> 1 (e1, e1)\n}\n";

fn kind_of(text: &str) -> ParseErrorKind {
    parse_structure_file(text).unwrap_err().kind
}

#[test]
fn minimal_file_parses() {
    let s = common::structure(MINIMAL, &Rationals);
    assert_eq!(s.kind(), StructureKind::HomCoassoc);
    assert_eq!(s.dim(), 1);
    let d = s.comap(ComapName::Delta);
    assert_eq!(*d.get(0, &[0, 0]), Rationals.one());
}

#[test]
fn every_fixture_is_a_fixpoint() {
    assert!(FIXTURES.len() >= 40);
    for (name, text) in FIXTURES {
        let p = parse_structure_file(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(p.emit(), *text, "{name}");
        let twice = parse_structure_file(&p.emit()).unwrap();
        match (p, twice) {
            (AnyPackage::Q(a), AnyPackage::Q(b)) => assert_eq!(a, b),
            (AnyPackage::Fp(a), AnyPackage::Fp(b)) => assert_eq!(a, b),
            _ => panic!("{name} changed field"),
        }
    }
}

#[test]
fn emission_is_canonical() {
    let messy = "# comment\nkind = HomCoassoc\nfield = Q\ndim C = 2\n\
map alpha C {\n e2 -> 1 e2\n e1 -> 2/4 e1 + 1/2 e1\n}\n\
comap delta C -> (C,C) {\n e1 -> 1 (e2, e1) + 1 (e1, e2)   # trailing\n e2 -> 0\n}\n";
    let p = parse_structure_file(messy).unwrap();
    let out = p.emit();
    assert!(out.contains("  e1 -> 1 e1\n"), "{out}");
    assert!(out.contains("  e1 -> 1 (e1, e2) + 1 (e2, e1)\n"), "{out}");
    assert_eq!(parse_structure_file(&out).unwrap().emit(), out);
}

#[test]
fn non_prime_modulus() {
    let t = MINIMAL.replace("field = Q", "field = Fp 4");
    let e = parse_structure_file(&t).unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::NonPrimeModulus);
    assert_eq!(e.line, 2);
}

#[test]
fn unknown_kind_and_key() {
    assert_eq!(kind_of(&MINIMAL.replace("HomCoassoc", "HomBanana")), ParseErrorKind::UnknownKind);
    assert_eq!(kind_of(&MINIMAL.replace("dim C = 1", "dim C = 1\ncolor = red")), ParseErrorKind::UnknownKey);
    assert_eq!(
        kind_of(&MINIMAL.replace("comap delta", "comap gamma")),
        ParseErrorKind::Invalid,
        "a comap foreign to the kind is rejected"
    );
}

#[test]
fn dimension_mismatch() {
    let t = MINIMAL.replace("  e1 -> 1 (e1, e1)", "  e1 -> 1 (e1, e2)");
    assert_eq!(kind_of(&t), ParseErrorKind::DimMismatch);
    let t = MINIMAL.replace("  e1 -> 1 e1\n", "  e1 -> 1 e1\n  e2 -> 1 e1\n");
    assert_eq!(kind_of(&t), ParseErrorKind::DimMismatch);
}

#[test]
fn syntax_errors_carry_positions() {
    let t = MINIMAL.replace("  e1 -> 1 (e1, e1)", "  e1 => 1 (e1, e1)");
    let e = parse_structure_file(&t).unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::SyntaxError);
    assert_eq!(e.line, 10);
    assert!(e.col > 1);
    assert!(e.to_string().starts_with("10:"));
    assert_eq!(kind_of(&MINIMAL.replace("map alpha C {", "map alpha C")), ParseErrorKind::SyntaxError);
    assert_eq!(kind_of(&MINIMAL.replace("field = Q\n", "")), ParseErrorKind::SyntaxError);
}

#[test]
fn field_is_enforced_by_parse_with() {
    let f = PrimeField::new(5).unwrap();
    assert!(parse_with(MINIMAL, &f).is_err());
    assert!(parse_with(MINIMAL, &Rationals).is_ok());
}

#[test]
fn finite_field_scalars_are_reduced() {
    let t = MINIMAL.replace("field = Q", "field = Fp 5").replace("1 (e1, e1)", "-4 (e1, e1)");
    let p = parse_structure_file(&t).unwrap();
    assert!(p.emit().contains("  e1 -> 1 (e1, e1)\n"));
}

#[test]
fn comodule_and_algebra_round_trip() {
    let f = PrimeField::new(5).unwrap();
    for name in ["TridendComodule-F5-1.hcs", "PostHomLieComodule-Q-1.hcs", "HomTridendriformAlgebra-d2-F5-1.hcs"] {
        let text = common::fixture(name);
        let p = parse_structure_file(text).unwrap();
        assert_eq!(p.emit(), text);
    }
    let a = match parse_with(common::fixture("HomTridendriformAlgebra-d2-F5-1.hcs"), &f).unwrap() {
        Package::Algebra(a) => a,
        _ => panic!("expected an algebra"),
    };
    assert!(emit(&Package::Algebra(a)).starts_with("kind = HomTridendriformAlgebra\n"));
}
