//! Componentwise Sweedler oracle.
//!
//! Each axiom is a list of terms written in a small step language and
//! evaluated on explicit summand lists `(coefficient, index tuple)`. No
//! tensor composition code is used: maps are read coefficient by coefficient.
//!
//! A term is `<coef> <step> <step> ...`, steps applied left to right to the
//! single leg `x`:
//! - `name@p` replaces leg `p` by the expansion of map `name`;
//! - `[s0,s1,..]` reorders legs, output position `q` taking old leg `s_q`;
//! - `E1`, `E2` apply `ε`, `ε²` under the active reading.
//!
//! Coefficients are `+`, `-`, `+2`, `-lam` (the Rota–Baxter weight).

use std::collections::{BTreeMap, HashMap};

use crate::comodules::{ComoduleKind, ComodulePackage};
use crate::field::{Field, Scalar};
use crate::structures::{EpsilonReading, StructureError, StructureKind, StructurePackage};
use crate::tensor::TensorMap;

type Summands<E> = Vec<(E, Vec<usize>)>;

/// Expansion of one basis vector: each image term with its output indices.
type Expansion<E> = Vec<Vec<(E, Vec<usize>)>>;

pub struct Oracle<F: Field> {
    field: F,
    maps: HashMap<String, Expansion<F::Elem>>,
    lambda: F::Elem,
    eps: EpsilonReading,
}

/// Oracle verdict with its residual as `(input, output tuple) → coefficient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict<E> {
    pub passed: bool,
    pub residual: BTreeMap<(usize, Vec<usize>), E>,
    pub first_failing_basis_index: Option<usize>,
}

fn expand<F: Field>(t: &TensorMap<F>) -> Expansion<F::Elem> {
    let n = t.dom().dim();
    let dims: Vec<usize> = t.cod().iter().map(|s| s.dim()).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut terms = Vec::new();
        let mut idx = vec![0usize; dims.len()];
        'outer: loop {
            let c = t.get(i, &idx);
            if !c.is_zero_elem() {
                terms.push((c.clone(), idx.clone()));
            }
            let mut p = dims.len();
            loop {
                if p == 0 {
                    break 'outer;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < dims[p] {
                    break;
                }
                idx[p] = 0;
            }
        }
        out.push(terms);
    }
    out
}

impl<F: Field> Oracle<F> {
    fn new(field: &F, eps: EpsilonReading) -> Self {
        Oracle {
            field: field.clone(),
            maps: HashMap::new(),
            lambda: field.zero(),
            eps,
        }
    }

    fn bind(&mut self, name: &str, t: &TensorMap<F>) {
        self.maps.insert(name.to_string(), expand(t));
    }

    pub fn for_structure(s: &StructurePackage<F>, eps: EpsilonReading) -> Self {
        let mut o = Oracle::new(s.field(), eps);
        o.bind("alpha", s.alpha());
        for (n, m) in s.comaps() {
            o.bind(n.id(), m);
        }
        if s.kind() == StructureKind::HomDendriform {
            o.maps.insert("delta_0".into(), vec![Vec::new(); s.dim()]);
        }
        if let Some(rb) = s.rb() {
            o.bind("rb", &rb.operator);
            o.lambda = rb.weight.clone();
        }
        o
    }

    pub fn for_comodule(c: &ComodulePackage<F>) -> Self {
        let mut o = Oracle::for_structure(c.base(), EpsilonReading::Xi);
        o.bind("alpha_m", c.alpha_m());
        for (n, m) in c.maps() {
            o.bind(n.id(), m);
        }
        o
    }

    fn coef(&self, tok: &str) -> F::Elem {
        let (neg, rest) = match tok.as_bytes()[0] {
            b'+' => (false, &tok[1..]),
            b'-' => (true, &tok[1..]),
            _ => panic!("term must start with a sign: `{tok}`"),
        };
        let v = match rest {
            "" => self.field.one(),
            "lam" => self.lambda.clone(),
            n => self.field.from_i64(n.parse().expect("integer coefficient")),
        };
        if neg {
            -v
        } else {
            v
        }
    }

    fn reorder(list: Summands<F::Elem>, sources: &[usize]) -> Summands<F::Elem> {
        list.into_iter()
            .map(|(c, t)| (c, sources.iter().map(|s| t[*s]).collect()))
            .collect()
    }

    fn step(&self, list: Summands<F::Elem>, tok: &str) -> Summands<F::Elem> {
        match tok {
            "E1" | "E2" => {
                let xi = tok == "E1";
                let forward = matches!(self.eps, EpsilonReading::Xi) == xi;
                // ξ(x⊗y⊗z) = y⊗z⊗x; ξ²(x⊗y⊗z) = z⊗x⊗y.
                let src: &[usize] = if forward { &[1, 2, 0] } else { &[2, 0, 1] };
                Self::reorder(list, src)
            }
            t if t.starts_with('[') => {
                let src: Vec<usize> = t[1..t.len() - 1]
                    .split(',')
                    .map(|s| s.trim().parse().expect("leg index"))
                    .collect();
                Self::reorder(list, &src)
            }
            t => {
                let (name, pos) = t.split_once('@').expect("name@pos");
                let pos: usize = pos.parse().expect("leg position");
                let ex = self
                    .maps
                    .get(name)
                    .unwrap_or_else(|| panic!("oracle has no map `{name}`"));
                let mut out = Vec::new();
                for (c, tup) in list {
                    for (d, img) in &ex[tup[pos]] {
                        let mut nt = Vec::with_capacity(tup.len() + img.len() - 1);
                        nt.extend_from_slice(&tup[..pos]);
                        nt.extend_from_slice(img);
                        nt.extend_from_slice(&tup[pos + 1..]);
                        out.push((c.clone() * d.clone(), nt));
                    }
                }
                out
            }
        }
    }

    /// Evaluate a signed sum of terms on every basis vector of `dim` inputs.
    pub fn evaluate(&self, terms: &[String], dim: usize) -> OracleVerdict<F::Elem> {
        let mut acc: BTreeMap<(usize, Vec<usize>), F::Elem> = BTreeMap::new();
        for i in 0..dim {
            for term in terms {
                let mut toks = term.split_whitespace();
                let c = self.coef(toks.next().expect("coefficient"));
                let mut list = vec![(c, vec![i])];
                for tok in toks {
                    list = self.step(list, tok);
                }
                for (c, t) in list {
                    let e = acc.entry((i, t)).or_insert_with(|| self.field.zero());
                    *e = e.clone() + c;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero_elem());
        let first = acc.keys().next().map(|(i, _)| *i);
        OracleVerdict {
            passed: acc.is_empty(),
            residual: acc,
            first_failing_basis_index: first,
        }
    }
}

fn v(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn coasso(d: &str) -> Vec<String> {
    // α(x(1))⊗x(2)(1)⊗x(2)(2) − x(1)(1)⊗x(1)(2)⊗α(x(2))
    vec![format!("+ {d}@0 alpha@0 {d}@1"), format!("- {d}@0 {d}@0 alpha@2")]
}

fn multip(d: &str, a: &str, b: &str) -> Vec<String> {
    // d(α x) − α(x1)⊗β(x2)
    vec![format!("+ {a}@0 {d}@0"), format!("- {d}@0 {a}@0 {b}@1")]
}

fn skew(g: &str) -> Vec<String> {
    vec![format!("+ {g}@0"), format!("+ {g}@0 [1,0]")]
}

fn cocomm(d: &str) -> Vec<String> {
    vec![format!("+ {d}@0"), format!("- {d}@0 [1,0]")]
}

fn cojacobi(g: &str) -> Vec<String> {
    // α(x1)⊗x21⊗x22 + x21⊗x22⊗α(x1) + x22⊗α(x1)⊗x21
    let t = format!("{g}@0 alpha@0 {g}@1");
    vec![format!("+ {t}"), format!("+ {t} [1,2,0]"), format!("+ {t} [2,0,1]")]
}

fn prelie(d: &str) -> Vec<String> {
    let da = format!("{d}@0 {d}@0 alpha@2");
    let ad = format!("{d}@0 alpha@0 {d}@1");
    vec![
        format!("+ {da}"),
        format!("- {ad}"),
        format!("- {da} [1,0,2]"),
        format!("+ {ad} [1,0,2]"),
    ]
}

/// `(c1)..(c7)` with `m`, `z`, `p` for the `−1`, `0`, `1` comaps and
/// `a`/`am` for the twist on the first/last leg; `inner` names the maps
/// applied after the outer leg is split when they differ (comodule case).
fn tridend(which: usize, outer: [&str; 3], inner: [&str; 3], a: &str, am: &str) -> Vec<String> {
    let [m, z, p] = outer; // base maps, applied on leg 0
    let [im, iz, ip] = inner; // the maps that start the composite
    let left = |first: &str, second: &str| format!("{first}@0 {second}@0 {am}@2");
    let right = |first: &str, second: &str| format!("{first}@0 {a}@0 {second}@1");
    let pairs: Vec<(i64, String)> = match which {
        1 => vec![
            (1, left(im, m)),
            (-1, right(im, im)),
            (-1, right(im, ip)),
            (-1, right(im, iz)),
        ],
        2 => vec![(1, left(im, p)), (-1, right(ip, im))],
        3 => vec![
            (1, right(ip, ip)),
            (-1, left(ip, m)),
            (-1, left(ip, p)),
            (-1, left(ip, z)),
        ],
        4 => vec![(1, left(iz, m)), (-1, right(iz, ip))],
        5 => vec![(1, left(iz, p)), (-1, right(ip, iz))],
        6 => vec![(1, left(im, z)), (-1, right(iz, im))],
        7 => vec![(1, left(iz, z)), (-1, right(iz, iz))],
        _ => return Vec::new(),
    };
    pairs
        .into_iter()
        .map(|(s, t)| format!("{} {t}", if s > 0 { "+" } else { "-" }))
        .collect()
}

fn dplc3(g: &str, d: &str) -> Vec<String> {
    // α(x(1))⊗x(2)1⊗x(2)2 − x1(1)⊗x1(2)⊗α(x2) − x2(1)⊗α(x1)⊗x2(2)
    vec![
        format!("+ {d}@0 alpha@0 {g}@1"),
        format!("- {g}@0 {d}@0 alpha@2"),
        format!("- {g}@0 alpha@0 {d}@1 [1,0,2]"),
    ]
}

fn dplc4(g: &str, d: &str) -> Vec<String> {
    vec![
        format!("+ {d}@0 {d}@0 alpha@2"),
        format!("- {d}@0 alpha@0 {d}@1"),
        format!("- {d}@0 {d}@0 alpha@2 [1,0,2]"),
        format!("+ {d}@0 alpha@0 {d}@1 [1,0,2]"),
        format!("+ {d}@0 {g}@0 alpha@2"),
    ]
}

fn d3(s: &str, d: &str) -> Vec<String> {
    vec![
        format!("+ {s}@0 {s}@0 alpha@2"),
        format!("+ {s}@0 {s}@0 [1,0,2] alpha@2"),
        format!("+ {s}@0 {d}@0 alpha@2"),
        format!("- {s}@0 alpha@0 {s}@1"),
    ]
}

fn d4(s: &str, d: &str) -> Vec<String> {
    vec![format!("+ {d}@0 {s}@0 alpha@2"), format!("- {s}@0 alpha@0 {d}@1")]
}

fn p1(g: &str, t: &str) -> Vec<String> {
    vec![
        format!("+ {g}@0 alpha@0 {t}@1"),
        format!("- {t}@0 {g}@0 alpha@2"),
        format!("- {t}@0 alpha@0 {g}@1 [1,0,2]"),
    ]
}

fn rb_weight(m: &str) -> Vec<String> {
    vec![
        format!("+ {m}@0 rb@0 rb@1"),
        format!("- rb@0 {m}@0 rb@0"),
        format!("- rb@0 {m}@0 rb@1"),
        format!("-lam rb@0 {m}@0"),
    ]
}

/// Term list for a structure axiom, or `None` if the kind has no such axiom.
pub fn structure_terms(kind: StructureKind, axiom: &str) -> Option<Vec<String>> {
    use StructureKind::*;
    let cc = if kind == PostHomPoisson { "delta_ast" } else { "delta" };
    let rb_target = if kind == HomLieRB { "gamma" } else { "delta" };
    let has = |ks: &[StructureKind]| ks.contains(&kind);
    let coassoc_kinds = [HomCoassoc, HomCoassocRB, CoCommHomTridendriform, HomPoisson, PostHomPoisson];
    let lie_kinds = [HomLie, HomLieRB, HomPoisson];
    let post_kinds = [PostHomLie, PostHomPoisson];
    let tri_kinds = [HomTridendriform, HomDendriform];
    let t = match axiom {
        "coasso" if has(&coassoc_kinds) => coasso(cc),
        "cocomm" if has(&[CoCommHomTridendriform, HomPoisson, PostHomPoisson]) => cocomm(cc),
        "multip" if has(&[HomCoassoc, HomCoassocRB, HomPreLie, HomPoisson]) => multip("delta", "alpha", "alpha"),
        "skew" if has(&lie_kinds) => skew("gamma"),
        "comult" if has(&lie_kinds) => multip("gamma", "alpha", "alpha"),
        "cojacobi" if has(&lie_kinds) => cojacobi("gamma"),
        "prelie" if kind == HomPreLie => prelie("delta"),
        "dplc1" if has(&post_kinds) => skew("gamma"),
        "dplc1-comult" if has(&post_kinds) => multip("gamma", "alpha", "alpha"),
        "dplc2" if has(&post_kinds) => cojacobi("gamma"),
        "dplc3" if has(&post_kinds) => dplc3("gamma", "delta"),
        "dplc4" if has(&post_kinds) => dplc4("gamma", "delta"),
        "d3" if has(&[CoCommHomTridendriform, PostHomPoisson]) => d3("delta_star", cc),
        "d4" if has(&[CoCommHomTridendriform, PostHomPoisson]) => d4("delta_star", cc),
        "p1" if kind == HomPoisson => p1("gamma", "delta"),
        "p1" if kind == PostHomPoisson => p1("gamma", "delta_ast"),
        "p2" if kind == PostHomPoisson => v(&[
            "+ gamma@0 alpha@0 delta_star@1 [0,2,1]",
            "- delta_star@0 alpha@0 gamma@1 E2",
            "+ delta_ast@0 alpha@0 delta@1 E1",
        ]),
        "p3" if kind == PostHomPoisson => v(&[
            "+ delta@0 alpha@0 delta_ast@1",
            "- delta_ast@0 delta@0 alpha@2",
            "- delta_ast@0 alpha@0 delta@1 [1,0,2]",
        ]),
        "p4" if kind == PostHomPoisson => v(&[
            "+ delta@0 delta_star@0 alpha@2 E1",
            "+ delta@0 delta_star@0 alpha@2 [0,2,1] E2",
            "+ delta@0 delta_ast@0 alpha@2 E1",
            "- delta_ast@0 delta@0 alpha@2",
            "- delta_ast@0 alpha@0 delta@1 [1,0,2]",
        ]),
        "p5" if kind == PostHomPoisson => v(&[
            "+ delta@0 alpha@0 delta_star@1 [0,2,1]",
            "- delta_star@0 alpha@0 delta@1 E2",
            "- delta_star@0 delta@0 alpha@2 [0,2,1]",
            "+ delta_star@0 delta@0 alpha@2 E2",
            "- delta_star@0 gamma@0 alpha@2 [0,2,1]",
        ]),
        "rb-commute" if kind.has_rb() => v(&["+ alpha@0 rb@0", "- rb@0 alpha@0"]),
        "rb-weight" if kind.has_rb() => rb_weight(rb_target),
        a => {
            if let Some(rest) = a.strip_prefix("multip-") {
                let ok = match kind {
                    HomDendriform => ["delta_m1", "delta_1"].contains(&rest),
                    HomTridendriform => ["delta_m1", "delta_0", "delta_1"].contains(&rest),
                    CoCommHomTridendriform => ["delta", "delta_star"].contains(&rest),
                    PostHomLie => rest == "delta",
                    PostHomPoisson => ["delta", "delta_star", "delta_ast"].contains(&rest),
                    _ => false,
                };
                if !ok {
                    return None;
                }
                multip(rest, "alpha", "alpha")
            } else {
                let n = a.strip_prefix('c').and_then(|d| d.parse::<usize>().ok())?;
                let max = if kind == HomDendriform { 3 } else { 7 };
                if !has(&tri_kinds) || n == 0 || n > max {
                    return None;
                }
                let maps = ["delta_m1", "delta_0", "delta_1"];
                tridend(n, maps, maps, "alpha", "alpha")
            }
        }
    };
    Some(t)
}

/// Term list for a comodule axiom.
pub fn comodule_terms(kind: ComoduleKind, axiom: &str, printed_ma3: bool) -> Option<Vec<String>> {
    match kind {
        ComoduleKind::TridendComodule => {
            if let Some(rest) = axiom.strip_prefix("comult-") {
                if !["dm1", "d0", "d1"].contains(&rest) {
                    return None;
                }
                return Some(vec![
                    format!("+ alpha_m@0 {rest}@0"),
                    format!("- {rest}@0 alpha@0 alpha_m@1"),
                ]);
            }
            let n: usize = axiom.strip_prefix("cc")?.parse().ok()?;
            if !(1..=7).contains(&n) {
                return None;
            }
            Some(tridend(
                n,
                ["delta_m1", "delta_0", "delta_1"],
                ["dm1", "d0", "d1"],
                "alpha",
                "alpha_m",
            ))
        }
        ComoduleKind::PostHomLieComodule => Some(match axiom {
            "ma1-diamond" => v(&["+ alpha_m@0 diamond@0", "- diamond@0 alpha@0 alpha_m@1"]),
            "ma1-bullet" => v(&["+ alpha_m@0 bullet@0", "- bullet@0 alpha@0 alpha_m@1"]),
            "ma2" => v(&[
                "+ diamond@0 gamma@0 alpha_m@2",
                "- diamond@0 alpha@0 diamond@1",
                "+ diamond@0 alpha@0 diamond@1 [1,0,2]",
            ]),
            "ma3" => {
                let last = if printed_ma3 {
                    "+ bullet@0 alpha@0 bullet@1 [1,0,2]"
                } else {
                    "+ diamond@0 alpha@0 bullet@1 [1,0,2]"
                };
                v(&["+ diamond@0 delta@0 alpha_m@2", "- bullet@0 alpha@0 diamond@1", last])
            }
            "ma4" => v(&[
                "+ bullet@0 gamma@0 alpha_m@2",
                "- bullet@0 alpha@0 bullet@1",
                "+ bullet@0 alpha@0 bullet@1 [1,0,2]",
                "- bullet@0 delta@0 alpha_m@2 [1,0,2]",
                "+ bullet@0 delta@0 alpha_m@2",
            ]),
            _ => return None,
        }),
    }
}

pub fn oracle_check_structure<F: Field>(
    s: &StructurePackage<F>,
    axiom: &str,
    eps: EpsilonReading,
) -> Result<OracleVerdict<F::Elem>, StructureError> {
    let terms = structure_terms(s.kind(), axiom).ok_or_else(|| StructureError::UnknownAxiom {
        kind: s.kind().id().to_string(),
        axiom: axiom.to_string(),
    })?;
    Ok(Oracle::for_structure(s, eps).evaluate(&terms, s.dim()))
}

pub fn oracle_check_comodule<F: Field>(
    c: &ComodulePackage<F>,
    axiom: &str,
    printed_ma3: bool,
) -> Result<OracleVerdict<F::Elem>, StructureError> {
    let terms = comodule_terms(c.kind(), axiom, printed_ma3).ok_or_else(|| StructureError::UnknownAxiom {
        kind: c.kind().id().to_string(),
        axiom: axiom.to_string(),
    })?;
    Ok(Oracle::for_comodule(c).evaluate(&terms, c.mspace().dim()))
}

/// Coefficientwise agreement of an oracle residual with a checker residual.
pub fn agrees<F: Field>(o: &OracleVerdict<F::Elem>, residual: &TensorMap<F>) -> bool {
    let mut count = 0;
    for (i, js, c) in residual.support() {
        match o.residual.get(&(i, js)) {
            Some(v) if *v == c => count += 1,
            _ => return false,
        }
    }
    count == o.residual.len()
}
