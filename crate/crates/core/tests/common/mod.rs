#![allow(dead_code)]

use homco::io::{parse_with, Package, FIXTURES};
use homco::structures::StructurePackage;
use homco::comodules::ComodulePackage;
use homco::Field;

pub fn fixture(name: &str) -> &'static str {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .unwrap_or_else(|| panic!("no fixture {name}"))
}

pub fn structure<F: Field>(text: &str, f: &F) -> StructurePackage<F> {
    match parse_with(text, f).unwrap() {
        Package::Structure(s) => s,
        _ => panic!("not a structure file"),
    }
}

pub fn comodule<F: Field>(text: &str, f: &F) -> ComodulePackage<F> {
    match parse_with(text, f).unwrap() {
        Package::Comodule(c) => c,
        _ => panic!("not a comodule file"),
    }
}

pub fn all_structures<F: Field>(f: &F) -> Vec<StructurePackage<F>> {
    FIXTURES
        .iter()
        .filter_map(|(_, t)| match parse_with(t, f) {
            Ok(Package::Structure(s)) => Some(s),
            _ => None,
        })
        .collect()
}

pub fn all_comodules<F: Field>(f: &F) -> Vec<ComodulePackage<F>> {
    FIXTURES
        .iter()
        .filter_map(|(_, t)| match parse_with(t, f) {
            Ok(Package::Comodule(c)) => Some(c),
            _ => None,
        })
        .collect()
}
