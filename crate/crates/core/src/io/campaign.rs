//! Theorem campaigns: draw hypothesis witnesses, apply the construction,
//! re-check the conclusion, minimize whatever fails.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::comodules::{
    check_comodule, direct_sum, equivariance_violations, regular_k, tensor_k, twist_0k, twist_beta, twist_n0,
    twist_nk, ComoduleCheckOptions, ComoduleKind, ComodulePackage, ZeroKVariant,
};
use crate::constructions::{
    admissible, commutator_cobracket, dendriform_to_prelie, endomorphism_violations, inverse_twist, le1_report,
    postpoisson_to_homopoisson, power_twist, rb_coassoc_derive, rb_homlie_to_posthomlie, tensor_posthomlie, tilde,
    tridend_sum, tridend_to_posthomlie, yau_twist, RbTarget,
};
use crate::field::{Field, FieldSpec};
use crate::io::fixtures::FIXTURES;
use crate::io::format::{emit, parse_with, Package};
use crate::io::ledger::LedgerEntry;
use crate::search::pools::{all_matrices, comodule_pool, endomorphisms, structure_pool};
use crate::search::{minimize_witness, Provenance, Subject, WitnessRecord};
use crate::structures::render_support;
use crate::structures::{
    check_algebra, check_structure, dualize_algebra, dualize_coalgebra, opposite_tridend, CheckOptions, CheckReport,
    ComapName, EpsilonReading, RotaBaxter, StructureKind, StructurePackage,
};
use crate::tensor::{matmul, matrix_inverse, TensorMap};

macro_rules! theorems {
    ($($var:ident => $id:literal, $ro:literal, $what:literal;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum TheoremId { $($var),* }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$var),*];

            pub fn id(&self) -> &'static str {
                match self { $(TheoremId::$var => $id),* }
            }

            /// Failures are recorded in the ledger and never refute.
            pub fn report_only(&self) -> bool {
                match self { $(TheoremId::$var => $ro),* }
            }

            /// What the campaign checks, in one line.
            pub fn summary(&self) -> &'static str {
                match self { $(TheoremId::$var => $what),* }
            }
        }
    };
}

theorems! {
    Ha1 => "T-ha1", false, "classical coassociative + endomorphism beta: (delta∘beta, beta) is multiplicative Hom-coassociative";
    Amb => "T-amb", false, "classical Lie + endomorphism beta: (gamma∘beta, beta) is Hom-Lie";
    Am1 => "T-am1", false, "Hom-coassociative: commutator (1-tau)∘delta passes HomLie";
    Ib => "T-ib", false, "multiplicative Hom-coassociative: commutator is a multiplicative Hom-Lie coalgebra";
    Op => "T-op", false, "opposite of a Hom-tridendriform coalgebra is Hom-tridendriform";
    Dual => "T-dual", false, "dual of a Hom-tridendriform algebra is a Hom-tridendriform coalgebra";
    TridendTwist => "T-tridend-twist", false, "tridendriform + endomorphism beta: Yau twist is tridendriform";
    TridendPower => "T-tridend-power", false, "multiplicative tridendriform: twist by alpha^n is multiplicative tridendriform";
    TridendUntwist => "T-tridend-untwist", false, "multiplicative tridendriform with invertible alpha: untwisting gives alpha = id";
    TridendSum => "T-tridend-sum", false, "tridendriform: delta_m1 + delta_0 + delta_1 is Hom-coassociative";
    RbTridend => "T-rb-tridend", false, "Rota-Baxter Hom-coassociative: derived triple is tridendriform";
    RbDendriform => "T-rb-dendriform", false, "Rota-Baxter Hom-coassociative: derived pair is dendriform";
    DendPrelie => "T-dend-prelie", false, "dendriform: delta_1 - tau∘delta_m1 is Hom-preLie";
    Rb0Prelie => "T-rb0-prelie", false, "weight-0 Rota-Baxter: derived comultiplication is Hom-preLie";
    Rbm1Prelie => "T-rbm1-prelie", false, "weight -1 Rota-Baxter: derived comultiplication is Hom-preLie";
    BDendriform => "T-b-dendriform", false, "operator B on Hom-coassociative: derived pair is dendriform for some weight";
    Com3N0 => "T-com3-n0", false, "tridendriform comodule: (alpha^n ⊗ id)∘maps is a comodule";
    Com30k => "T-com3-0k", false, "tridendriform comodule: every twist exponent 2^k - 1 gives a comodule";
    PlcTwist => "T-plc-twist", false, "post-Hom-Lie + endomorphism beta: Yau twist is post-Hom-Lie";
    PlcTilde => "T-plc-tilde", false, "post-Hom-Lie: (delta + gamma, -gamma) is post-Hom-Lie";
    PlcAdmissible => "T-plc-admissible", false, "post-Hom-Lie: commutator of delta + gamma/2 is Hom-Lie";
    Le1 => "L-le1", true, "associator identity: L against both printed right-hand sides";
    RblPost => "T-rbl-post", false, "Rota-Baxter Hom-Lie: (lambda gamma, (R⊗I)∘gamma) is post-Hom-Lie";
    PlcTensor => "T-plc-tensor", false, "post-Hom-Lie ⊗ cocommutative Hom-coassociative is post-Hom-Lie";
    TridendPost => "T-tridend-post", false, "tridendriform: ((1-tau)∘delta_0, delta_1 - tau∘delta_m1) is post-Hom-Lie";
    PostPoisson => "T-postpoisson", false, "post-Hom-Poisson: (delta_A, delta_R) is Hom-Poisson";
    ComSum => "T-com-sum", false, "direct sum of two comodules is a comodule";
    ComRegular => "T-com-regular", false, "multiplicative post-Hom-Lie: ((alpha^k⊗I)∘gamma, (alpha^k⊗I)∘delta) is a comodule";
    ComTensor => "T-com-tensor", false, "tensor product of comodules over a multiplicative base is a comodule";
    ComN0 => "T-com-n0", false, "post-Hom-Lie comodule: (alpha^n ⊗ id)∘maps is a comodule";
    Com0k => "T-com-0k", true, "post-Hom-Lie comodule: maps∘alpha_M^{2^k} over the (2^k - 1)-twisted base";
    ComBeta => "T-com-beta", false, "equivariant pair (beta, beta_M): twisted comodule over the Yau-twisted base";
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for TheoremId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.id() == s)
            .ok_or_else(|| format!("unknown theorem id `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignConfig {
    pub trials: usize,
    pub seed: u64,
    /// Largest witness dimension drawn.
    pub max_dim: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            trials: 25,
            seed: 1,
            max_dim: 2,
        }
    }
}

/// One evaluated trial.
#[derive(Debug, Clone, Default)]
pub struct Eval {
    pub hypothesis: bool,
    pub conclusion: bool,
    pub extras: Vec<(String, bool)>,
    pub detail: Option<String>,
    /// Per-witness key/values copied into the ledger.
    pub record: Vec<(String, String)>,
}

impl Eval {
    fn skip() -> Self {
        Eval::default()
    }
}

type EvalFn<F> = Arc<dyn Fn(&Subject<F>) -> Eval + Send + Sync>;

struct Trial<F: Field> {
    label: String,
    group: usize,
    eval: EvalFn<F>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Gate {
    /// Every gated group must pass throughout.
    All,
    /// Some gated group must pass throughout.
    Any,
}

type Expand<F> = Box<dyn Fn(&Subject<F>) -> Vec<Trial<F>> + Send + Sync>;

struct Plan<F: Field> {
    groups: Vec<(String, bool)>,
    gate: Gate,
    bases: Vec<Subject<F>>,
    expand: Expand<F>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupStats {
    pub name: String,
    pub gated: bool,
    pub used: usize,
    pub passed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub group: String,
    pub label: String,
    pub file_name: String,
    pub text: String,
    pub detail: String,
    pub gated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Refuted,
    ReportOnly,
    NoWitnesses,
}

#[derive(Debug, Clone)]
pub struct CampaignReport {
    pub theorem: TheoremId,
    pub field: FieldSpec,
    pub seed: u64,
    pub requested: usize,
    pub max_dim: usize,
    pub candidates: usize,
    pub groups: Vec<GroupStats>,
    pub extras: BTreeMap<String, (usize, usize)>,
    pub counterexamples: Vec<Counterexample>,
    pub ledger: Vec<LedgerEntry>,
    pub notes: Vec<String>,
    /// Not part of the emitted report.
    pub runtime: Duration,
    gate_any: bool,
}

impl CampaignReport {
    pub fn used(&self) -> usize {
        self.groups.iter().map(|g| g.used).sum()
    }

    pub fn passed(&self) -> usize {
        self.groups.iter().map(|g| g.passed).sum()
    }

    /// Witnesses in gated groups.
    pub fn gated_used(&self) -> usize {
        self.groups.iter().filter(|g| g.gated).map(|g| g.used).sum()
    }

    pub fn gated_passed(&self) -> usize {
        self.groups.iter().filter(|g| g.gated).map(|g| g.passed).sum()
    }

    pub fn verdict(&self) -> Verdict {
        if self.used() == 0 {
            return Verdict::NoWitnesses;
        }
        if self.theorem.report_only() {
            return Verdict::ReportOnly;
        }
        let gated: Vec<&GroupStats> = self.groups.iter().filter(|g| g.gated && g.used > 0).collect();
        if gated.is_empty() {
            return Verdict::NoWitnesses;
        }
        let full = |g: &&GroupStats| g.passed == g.used;
        let ok = if self.gate_any { gated.iter().any(full) } else { gated.iter().all(full) };
        if ok {
            Verdict::Pass
        } else {
            Verdict::Refuted
        }
    }
}

/// Where hypothesis witnesses come from: the search pools over finite fields,
/// plus any stored witness files over the same field.
pub struct Supply<F: Field> {
    field: F,
    pools: bool,
    structures: BTreeMap<StructureKind, Vec<StructurePackage<F>>>,
    comodules: BTreeMap<ComoduleKind, Vec<ComodulePackage<F>>>,
}

impl<F: Field> Supply<F> {
    pub fn new(field: &F, pools: bool) -> Self {
        Supply {
            field: field.clone(),
            pools: pools && field.elements().is_some(),
            structures: BTreeMap::new(),
            comodules: BTreeMap::new(),
        }
    }

    /// Pools (finite fields only) plus every stored fixture over `field`.
    pub fn with_fixtures(field: &F, pools: bool) -> Self {
        let mut s = Supply::new(field, pools);
        for (_, text) in FIXTURES {
            if let Ok(p) = parse_with(text, field) {
                s.add(p);
            }
        }
        s
    }

    pub fn add(&mut self, p: Package<F>) {
        match p {
            Package::Structure(s) => self.structures.entry(s.kind()).or_default().push(s),
            Package::Comodule(c) => self.comodules.entry(c.kind()).or_default().push(c),
            Package::Algebra(a) => {
                if let Ok(s) = dualize_algebra(&a) {
                    self.structures.entry(s.kind()).or_default().push(s);
                }
            }
        }
    }

    pub fn structures(&self, kind: StructureKind) -> Vec<StructurePackage<F>> {
        let mut v = self.structures.get(&kind).cloned().unwrap_or_default();
        if self.pools {
            let extra: Vec<_> = structure_pool(kind, &self.field).iter().filter(|s| !v.contains(s)).cloned().collect();
            v.extend(extra);
        }
        v
    }

    pub fn comodules(&self, kind: ComoduleKind) -> Vec<ComodulePackage<F>> {
        let mut v = self.comodules.get(&kind).cloned().unwrap_or_default();
        if self.pools {
            let extra: Vec<_> = comodule_pool(kind, &self.field).iter().filter(|c| !v.contains(c)).cloned().collect();
            v.extend(extra);
        }
        v
    }
}

fn report<F: Field>(s: &StructurePackage<F>) -> Option<CheckReport<F>> {
    check_structure(s, None, &CheckOptions::default()).ok()
}

fn req<F: Field>(s: &StructurePackage<F>) -> bool {
    report(s).is_some_and(|r| r.passes())
}

fn strict<F: Field>(s: &StructurePackage<F>) -> bool {
    report(s).is_some_and(|r| r.passes_strict())
}

fn creport<F: Field>(c: &ComodulePackage<F>) -> Option<CheckReport<F>> {
    check_comodule(c, None, &ComoduleCheckOptions::default()).ok()
}

fn creq<F: Field>(c: &ComodulePackage<F>) -> bool {
    creport(c).is_some_and(|r| r.passes())
}

fn cstrict<F: Field>(c: &ComodulePackage<F>) -> bool {
    creport(c).is_some_and(|r| r.passes_strict())
}

fn describe<F: Field>(r: &CheckReport<F>, strict: bool) -> Option<String> {
    let e = r
        .entries
        .iter()
        .find(|e| !e.passed && (strict || e.role == crate::structures::Role::Required))?;
    let i = e.first_failing_basis_index.unwrap_or(0);
    Some(format!(
        "{} {} fails at e{}: residual {}",
        r.subject,
        e.id,
        i + 1,
        render_support(&e.residual)
    ))
}

/// Verdict and failure detail for a constructed structure.
fn judge<F: Field, E: fmt::Display>(out: Result<StructurePackage<F>, E>, strict: bool) -> (bool, Option<String>) {
    match out {
        Err(e) => (false, Some(format!("construction failed: {e}"))),
        Ok(s) => match report(&s) {
            None => (false, Some("check failed to run".into())),
            Some(r) => {
                let ok = if strict { r.passes_strict() } else { r.passes() };
                (ok, if ok { None } else { describe(&r, strict) })
            }
        },
    }
}

fn cjudge<F: Field, E: fmt::Display>(out: Result<ComodulePackage<F>, E>, strict: bool) -> (bool, Option<String>) {
    match out {
        Err(e) => (false, Some(format!("construction failed: {e}"))),
        Ok(c) => match creport(&c) {
            None => (false, Some("check failed to run".into())),
            Some(r) => {
                let ok = if strict { r.passes_strict() } else { r.passes() };
                (ok, if ok { None } else { describe(&r, strict) })
            }
        },
    }
}

fn verdict(hypothesis: bool, (conclusion, detail): (bool, Option<String>)) -> Eval {
    Eval {
        hypothesis,
        conclusion,
        detail,
        ..Eval::default()
    }
}

fn st<F: Field>(w: &Subject<F>) -> Option<&StructurePackage<F>> {
    match w {
        Subject::Structure(s) => Some(s),
        Subject::Comodule(_) => None,
    }
}

fn cm<F: Field>(w: &Subject<F>) -> Option<&ComodulePackage<F>> {
    match w {
        Subject::Comodule(c) => Some(c),
        Subject::Structure(_) => None,
    }
}

fn is_identity<F: Field>(m: &TensorMap<F>) -> bool {
    *m == TensorMap::identity(m.field(), m.dom())
}

fn is_endo<F: Field>(s: &StructurePackage<F>, beta: &TensorMap<F>) -> bool {
    beta.dom().dim() == s.dim()
        && beta
            .relabel(s.space().clone(), vec![s.space().clone()])
            .ok()
            .and_then(|b| endomorphism_violations(s, &b).ok())
            .is_some_and(|v| v.is_empty())
}

fn on_space<F: Field>(s: &StructurePackage<F>, beta: &TensorMap<F>) -> Option<TensorMap<F>> {
    (beta.dom().dim() == s.dim())
        .then(|| beta.relabel(s.space().clone(), vec![s.space().clone()]).ok())
        .flatten()
}

/// Candidate twisting maps: every endomorphism over a finite field, else
/// the identity, zero and low powers of `alpha` that qualify.
fn betas<F: Field>(s: &StructurePackage<F>, cap: usize, seed: u64) -> Vec<TensorMap<F>> {
    let mut all = if s.field().elements().is_some() {
        endomorphisms(s)
    } else {
        let id = TensorMap::identity(s.field(), s.space());
        let zero = TensorMap::zeros(s.field(), s.space().clone(), vec![s.space().clone()]).expect("square");
        let a2 = matmul(s.alpha(), s.alpha()).expect("square");
        let mut v = vec![id];
        for b in [s.alpha().clone(), a2, zero] {
            if !v.contains(&b) && is_endo(s, &b) {
                v.push(b);
            }
        }
        v
    };
    if all.len() > cap {
        let mut rest = all.split_off(1);
        rest.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        rest.truncate(cap - 1);
        all.extend(rest);
    }
    all
}

/// Maps `beta_M` on `M` satisfying the equivariance equations with `beta`.
fn beta_ms<F: Field>(c: &ComodulePackage<F>, beta: &TensorMap<F>, cap: usize, seed: u64) -> Vec<TensorMap<F>> {
    let m = c.mspace().clone();
    let id = TensorMap::identity(c.field(), &m);
    let cands: Vec<TensorMap<F>> = if c.field().elements().is_some() {
        all_matrices(c.field(), m.dim())
            .into_iter()
            .map(|b| b.relabel(m.clone(), vec![m.clone()]).expect("dim"))
            .collect()
    } else {
        let zero = TensorMap::zeros(c.field(), m.clone(), vec![m.clone()]).expect("square");
        vec![id.clone(), c.alpha_m().clone(), matmul(c.alpha_m(), c.alpha_m()).expect("square"), zero]
    };
    let mut out: Vec<TensorMap<F>> = cands
        .into_iter()
        .filter(|bm| equivariance_violations(c, beta, bm).is_ok_and(|v| v.is_empty()))
        .collect();
    out.dedup();
    if let Some(p) = out.iter().position(|b| *b == id) {
        let idm = out.remove(p);
        out.insert(0, idm);
    }
    if out.len() > cap {
        let mut rest = out.split_off(1);
        rest.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        rest.truncate(cap - 1);
        out.extend(rest);
    }
    out
}

fn structures<F: Field>(sup: &Supply<F>, kind: StructureKind, max_dim: usize) -> Vec<Subject<F>> {
    sup.structures(kind)
        .into_iter()
        .filter(|s| s.dim() <= max_dim)
        .map(Subject::Structure)
        .collect()
}

fn comodules<F: Field>(sup: &Supply<F>, kind: ComoduleKind, max_dim: usize) -> Vec<Subject<F>> {
    sup.comodules(kind)
        .into_iter()
        .filter(|c| c.mspace().dim() <= max_dim && c.base().dim() <= max_dim)
        .map(Subject::Comodule)
        .collect()
}

/// Same coalgebra with its operator replaced by `2R + λI`.
fn modified_b<F: Field>(s: &StructurePackage<F>, lam: &F::Elem) -> Option<StructurePackage<F>> {
    let rb = s.rb()?;
    let f = s.field();
    let op = rb.operator.scale(&f.from_i64(2)).add(&TensorMap::identity(f, s.space()).scale(lam)).ok()?;
    let comaps = s.comaps().iter().map(|(n, m)| (*n, m.clone())).collect();
    StructurePackage::from_parts(s.kind(), s.alpha().clone(), comaps, Some(RotaBaxter { operator: op, weight: rb.weight.clone() }))
        .ok()
}

fn one<F: Field>(label: &str, group: usize, f: impl Fn(&Subject<F>) -> Eval + Send + Sync + 'static) -> Trial<F> {
    Trial {
        label: label.to_string(),
        group,
        eval: Arc::new(f),
    }
}

/// A single trial per base: `hyp` on the witness, then `concl`.
fn simple<F: Field>(
    hyp: fn(&StructurePackage<F>) -> bool,
    concl: fn(&StructurePackage<F>) -> (bool, Option<String>),
) -> Expand<F> {
    Box::new(move |_| {
        vec![one("", 0, move |w| match st(w) {
            Some(s) if hyp(s) => verdict(true, concl(s)),
            _ => Eval::skip(),
        })]
    })
}

fn all_group() -> Vec<(String, bool)> {
    vec![("all".into(), true)]
}

fn mult_groups(what: &str) -> Vec<(String, bool)> {
    vec![(format!("multiplicative {what}"), true), (format!("non-multiplicative {what}"), false)]
}

fn plan<F: Field>(id: TheoremId, sup: &Supply<F>, cfg: &CampaignConfig) -> Plan<F> {
    use StructureKind::*;
    use TheoremId::*;
    let d = cfg.max_dim;
    let seed = cfg.seed;
    let mk = |groups, bases, expand| Plan {
        groups,
        gate: Gate::All,
        bases,
        expand,
    };
    match id {
        Ha1 | Amb => {
            let kind = if id == Ha1 { HomCoassoc } else { HomLie };
            let bases: Vec<Subject<F>> = structures(sup, kind, d)
                .into_iter()
                .filter(|w| st(w).is_some_and(|s| is_identity(s.alpha())))
                .collect();
            mk(
                all_group(),
                bases,
                Box::new(move |w| {
                    let s = st(w).expect("structure");
                    betas(s, 4, seed)
                        .into_iter()
                        .enumerate()
                        .map(|(j, beta)| {
                            one(&format!("beta{j}"), 0, move |w| match st(w) {
                                Some(s) if is_identity(s.alpha()) && req(s) && is_endo(s, &beta) => {
                                    let b = on_space(s, &beta).expect("dim");
                                    verdict(true, judge(yau_twist(s, &b), true))
                                }
                                _ => Eval::skip(),
                            })
                        })
                        .collect()
                }),
            )
        }
        Am1 => mk(
            all_group(),
            structures(sup, HomCoassoc, d),
            simple(req, |s| judge(commutator_cobracket(s), false)),
        ),
        Ib => mk(
            mult_groups("input"),
            structures(sup, HomCoassoc, d),
            Box::new(|w| {
                let g = if st(w).is_some_and(strict) { 0 } else { 1 };
                vec![one("", g, move |w| match st(w) {
                    Some(s) if req(s) && (strict(s) == (g == 0)) => verdict(true, judge(commutator_cobracket(s), true)),
                    _ => Eval::skip(),
                })]
            }),
        ),
        Op => mk(
            all_group(),
            structures(sup, HomTridendriform, d),
            simple(req, |s| judge(opposite_tridend(s), false)),
        ),
        Dual => mk(
            all_group(),
            structures(sup, HomTridendriform, d),
            Box::new(|_| {
                vec![one("", 0, |w| {
                    let Some(s) = st(w) else { return Eval::skip() };
                    let Ok(a) = dualize_coalgebra(s) else { return Eval::skip() };
                    if !check_algebra(&a).is_ok_and(|r| r.passes()) {
                        return Eval::skip();
                    }
                    let back = dualize_algebra(&a);
                    let round = back.as_ref().is_ok_and(|b| b == s);
                    let mut e = verdict(true, judge(back, false));
                    e.extras.push(("round trip".into(), round));
                    e
                })]
            }),
        ),
        TridendTwist | PlcTwist => {
            let kind = if id == TridendTwist { HomTridendriform } else { PostHomLie };
            mk(
                all_group(),
                structures(sup, kind, d),
                Box::new(move |w| {
                    let s = st(w).expect("structure");
                    betas(s, 4, seed)
                        .into_iter()
                        .enumerate()
                        .map(|(j, beta)| {
                            one(&format!("beta{j}"), 0, move |w| match st(w) {
                                Some(s) if req(s) && is_endo(s, &beta) => {
                                    let b = on_space(s, &beta).expect("dim");
                                    verdict(true, judge(yau_twist(s, &b), false))
                                }
                                _ => Eval::skip(),
                            })
                        })
                        .collect()
                }),
            )
        }
        TridendPower => mk(
            all_group(),
            structures(sup, HomTridendriform, d),
            Box::new(|_| {
                (1..=3u64)
                    .map(|n| {
                        one(&format!("n{n}"), 0, move |w| match st(w) {
                            Some(s) if strict(s) => verdict(true, judge(power_twist(s, n), true)),
                            _ => Eval::skip(),
                        })
                    })
                    .collect()
            }),
        ),
        TridendUntwist => mk(
            all_group(),
            structures(sup, HomTridendriform, d),
            simple(
                |s| strict(s) && matrix_inverse(s.alpha()).is_ok(),
                |s| match inverse_twist(s) {
                    Ok(t) if !is_identity(t.alpha()) => (false, Some("untwisted alpha is not the identity".into())),
                    out => judge(out, true),
                },
            ),
        ),
        TridendSum => mk(
            all_group(),
            structures(sup, HomTridendriform, d),
            simple(req, |s| judge(tridend_sum(s), false)),
        ),
        RbTridend => mk(
            all_group(),
            structures(sup, HomCoassocRB, d),
            simple(req, |s| judge(rb_coassoc_derive(s, RbTarget::Tridend, None), false)),
        ),
        RbDendriform => mk(
            all_group(),
            structures(sup, HomCoassocRB, d),
            simple(req, |s| judge(rb_coassoc_derive(s, RbTarget::Dendriform, None), false)),
        ),
        DendPrelie => mk(
            all_group(),
            structures(sup, HomDendriform, d),
            simple(req, |s| judge(dendriform_to_prelie(s), false)),
        ),
        Rb0Prelie => mk(
            all_group(),
            weighted(sup, d, &[0]),
            simple(
                |s| req(s) && weight_is(s, 0),
                |s| judge(rb_coassoc_derive(s, RbTarget::PreLie0, None), false),
            ),
        ),
        Rbm1Prelie => mk(
            all_group(),
            weighted(sup, d, &[-1]),
            simple(
                |s| req(s) && weight_is(s, -1),
                |s| judge(rb_coassoc_derive(s, RbTarget::PreLieM1, None), false),
            ),
        ),
        BDendriform => {
            let ws = B_WEIGHTS;
            Plan {
                groups: ws.iter().map(|w| (format!("weight {w}"), true)).collect(),
                gate: Gate::Any,
                bases: weighted(sup, d, ws),
                expand: Box::new(move |w| {
                    let Some(g) = ws.iter().position(|x| st(w).is_some_and(|s| weight_is(s, *x))) else {
                        return Vec::new();
                    };
                    let lam = ws[g];
                    vec![one("", g, move |w: &Subject<F>| match st(w) {
                        Some(s) if req(s) && weight_is(s, lam) => {
                            let l = s.field().from_i64(lam);
                            let mut e =
                                verdict(true, judge(rb_coassoc_derive(s, RbTarget::DendriformB, Some(&l)), false));
                            if lam == 1 || lam == -1 {
                                let ok = modified_b(s, &l)
                                    .is_some_and(|m| judge(rb_coassoc_derive(&m, RbTarget::DendriformB, Some(&l)), false).0);
                                e.extras.push((format!("operator 2R{lam:+}I at weight {lam}"), ok));
                            }
                            e
                        }
                        _ => Eval::skip(),
                    })]
                }),
            }
        }
        Com3N0 | ComN0 => {
            let kind = if id == Com3N0 { ComoduleKind::TridendComodule } else { ComoduleKind::PostHomLieComodule };
            mk(
                mult_groups("comodule"),
                comodules(sup, kind, d),
                Box::new(|w| {
                    let g = group_of_comodule(w);
                    (1..=2u64)
                        .map(|n| {
                            one(&format!("n{n}"), g, move |w| match cm(w) {
                                Some(c) if creq(c) && group_of_comodule(w) == g => {
                                    verdict(true, cjudge(twist_n0(c, n), false))
                                }
                                _ => Eval::skip(),
                            })
                        })
                        .collect()
                }),
            )
        }
        Com30k | Com0k => {
            let (kind, variant, others): (ComoduleKind, ZeroKVariant, &[ZeroKVariant]) = if id == Com30k {
                (
                    ComoduleKind::TridendComodule,
                    ZeroKVariant::Remark,
                    &[ZeroKVariant::Theorem, ZeroKVariant::Consistent],
                )
            } else {
                (
                    ComoduleKind::PostHomLieComodule,
                    ZeroKVariant::Theorem,
                    &[ZeroKVariant::Remark, ZeroKVariant::Consistent],
                )
            };
            let combined = id == Com30k;
            mk(
                mult_groups("comodule"),
                comodules(sup, kind, d),
                Box::new(move |w| {
                    let g = group_of_comodule(w);
                    (0..=2u32)
                        .map(|k| {
                            one(&format!("k{k}"), g, move |w| match cm(w) {
                                Some(c) if creq(c) && group_of_comodule(w) == g => {
                                    let mut e = verdict(true, cjudge(twist_0k(c, k, variant), false));
                                    for v in others {
                                        let ok = twist_0k(c, k, *v).is_ok_and(|t| creq(&t));
                                        e.extras.push((format!("{} variant k={k}", v.id()), ok));
                                    }
                                    if combined {
                                        let ok = twist_nk(c, 1, k).is_ok_and(|t| creq(&t));
                                        e.extras.push((format!("combined n=1 k={k}"), ok));
                                    }
                                    e
                                }
                                _ => Eval::skip(),
                            })
                        })
                        .collect()
                }),
            )
        }
        PlcTilde => mk(
            all_group(),
            structures(sup, PostHomLie, d),
            simple(req, |s| judge(tilde(s), false)),
        ),
        PlcAdmissible => mk(
            all_group(),
            structures(sup, PostHomLie, d),
            simple(req, |s| judge(admissible(s).map(|o| o.homlie), false)),
        ),
        Le1 => mk(
            all_group(),
            structures(sup, PostHomLie, d),
            Box::new(|_| {
                vec![one("", 0, |w| {
                    let Some(s) = st(w) else { return Eval::skip() };
                    if !req(s) {
                        return Eval::skip();
                    }
                    let Ok(r) = le1_report(s) else { return Eval::skip() };
                    let yn = |b: bool| if b { "yes" } else { "no" }.to_string();
                    let matched = match (r.l_eq_r1, r.l_eq_r2) {
                        (true, true) => "both",
                        (true, false) => "R1",
                        (false, true) => "R2",
                        (false, false) => "neither",
                    };
                    Eval {
                        hypothesis: true,
                        conclusion: r.l_eq_r1,
                        extras: vec![
                            ("L=R2".into(), r.l_eq_r2),
                            ("cyclic sum of L vanishes".into(), r.cyclic_vanishes),
                            ("admissible".into(), r.admissible),
                        ],
                        detail: (!r.l_eq_r1).then(|| {
                            format!("L = {}; R1 = {}", render_support(&r.l), render_support(&r.r1))
                        }),
                        record: vec![
                            ("l_eq_r1".into(), yn(r.l_eq_r1)),
                            ("l_eq_r2".into(), yn(r.l_eq_r2)),
                            ("match".into(), matched.into()),
                            ("l_zero".into(), yn(r.l.is_zero())),
                        ],
                    }
                })]
            }),
        ),
        RblPost => mk(
            mult_groups("input"),
            structures(sup, HomLieRB, d),
            Box::new(|w| {
                let g = if st(w).is_some_and(strict) { 0 } else { 1 };
                vec![one("", g, move |w| match st(w) {
                    Some(s) if req(s) && (strict(s) == (g == 0)) => {
                        verdict(true, judge(rb_homlie_to_posthomlie(s), false))
                    }
                    _ => Eval::skip(),
                })]
            }),
        ),
        PlcTensor => {
            let qs: Arc<Vec<(StructurePackage<F>, bool)>> = Arc::new(
                sup.structures(HomCoassoc)
                    .into_iter()
                    .filter(|q| q.dim() <= 2 && is_cocommutative(q.comap(ComapName::Delta)) && req(q))
                    .map(|q| {
                        let m = strict(&q);
                        (q, m)
                    })
                    .collect(),
            );
            mk(
                mult_groups("partner"),
                structures(sup, PostHomLie, d),
                Box::new(move |w| {
                    let s = st(w).expect("structure");
                    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ s.nonzero_count() as u64);
                    let mut out = Vec::new();
                    for g in 0..2 {
                        let mut pick: Vec<usize> =
                            (0..qs.len()).filter(|i| qs[*i].0.dim() * s.dim() <= 4 && qs[*i].1 == (g == 0)).collect();
                        pick.shuffle(&mut rng);
                        pick.truncate(2);
                        for i in pick {
                            let q = qs[i].0.clone();
                            out.push(one(&format!("q{i}"), g, move |w| match st(w) {
                                Some(s) if req(s) => verdict(true, judge(tensor_posthomlie(s, &q), false)),
                                _ => Eval::skip(),
                            }));
                        }
                    }
                    out
                }),
            )
        }
        TridendPost => mk(
            mult_groups("input"),
            structures(sup, HomTridendriform, d),
            Box::new(|w| {
                let g = if st(w).is_some_and(strict) { 0 } else { 1 };
                vec![one("", g, move |w| match st(w) {
                    Some(s) if req(s) && (strict(s) == (g == 0)) => {
                        verdict(true, judge(tridend_to_posthomlie(s), false))
                    }
                    _ => Eval::skip(),
                })]
            }),
        ),
        PostPoisson => mk(
            all_group(),
            structures(sup, PostHomPoisson, d),
            Box::new(|_| {
                vec![one("", 0, |w| {
                    let Some(s) = st(w) else { return Eval::skip() };
                    if !req(s) {
                        return Eval::skip();
                    }
                    let mut e = verdict(true, judge(postpoisson_to_homopoisson(s), false));
                    let xi2 = CheckOptions {
                        epsilon: EpsilonReading::XiSquared,
                        ..CheckOptions::default()
                    };
                    let alt = check_structure(s, None, &xi2).is_ok_and(|r| r.passes());
                    e.extras.push(("input passes with epsilon = xi^2".into(), alt));
                    e.extras.push(("multiplicative input".into(), strict(s)));
                    e
                })]
            }),
        ),
        ComSum => {
            let all: Arc<Vec<ComodulePackage<F>>> = Arc::new(sup.comodules(ComoduleKind::PostHomLieComodule));
            mk(
                all_group(),
                comodules(sup, ComoduleKind::PostHomLieComodule, d),
                Box::new(move |w| {
                    let c = cm(w).expect("comodule");
                    partners(&all, c, 3, seed)
                        .into_iter()
                        .map(|(i, c2)| {
                            one(&format!("with{i}"), 0, move |w| match cm(w) {
                                Some(c) if creq(c) && creq(&c2) && c.base() == c2.base() => {
                                    verdict(true, cjudge(direct_sum(c, &c2), false))
                                }
                                _ => Eval::skip(),
                            })
                        })
                        .collect()
                }),
            )
        }
        ComRegular => mk(
            all_group(),
            structures(sup, PostHomLie, d),
            Box::new(|_| {
                (0..=2u64)
                    .map(|k| {
                        one(&format!("k{k}"), 0, move |w| match st(w) {
                            Some(s) if strict(s) => verdict(true, cjudge(regular_k(s, k), false)),
                            _ => Eval::skip(),
                        })
                    })
                    .collect()
            }),
        ),
        ComTensor => {
            let all: Arc<Vec<ComodulePackage<F>>> = Arc::new(sup.comodules(ComoduleKind::PostHomLieComodule));
            mk(
                all_group(),
                comodules(sup, ComoduleKind::PostHomLieComodule, d),
                Box::new(move |w| {
                    let c = cm(w).expect("comodule");
                    let mut v = Vec::new();
                    for (i, c2) in partners(&all, c, 2, seed) {
                        for k in 0..=1u64 {
                            let c2 = c2.clone();
                            v.push(one(&format!("with{i}-k{k}"), 0, move |w| match cm(w) {
                                Some(c)
                                    if cstrict(c) && cstrict(&c2) && strict(c.base()) && c.base() == c2.base() =>
                                {
                                    verdict(true, cjudge(tensor_k(c, &c2, k), false))
                                }
                                _ => Eval::skip(),
                            }));
                        }
                    }
                    v
                }),
            )
        }
        ComBeta => mk(
            all_group(),
            comodules(sup, ComoduleKind::PostHomLieComodule, d),
            Box::new(move |w| {
                let c = cm(w).expect("comodule");
                let mut v = Vec::new();
                for (j, beta) in betas(c.base(), 3, seed).into_iter().enumerate() {
                    for (l, bm) in beta_ms(c, &beta, 3, seed).into_iter().enumerate() {
                        let beta = beta.clone();
                        v.push(one(&format!("beta{j}-m{l}"), 0, move |w| match cm(w) {
                            Some(c)
                                if creq(c)
                                    && bm.dom() == c.mspace()
                                    && equivariance_violations(c, &beta, &bm).is_ok_and(|x| x.is_empty()) =>
                            {
                                verdict(true, cjudge(twist_beta(c, &beta, &bm), false))
                            }
                            _ => Eval::skip(),
                        }));
                    }
                }
                v
            }),
        ),
    }
}

fn weight_is<F: Field>(s: &StructurePackage<F>, w: i64) -> bool {
    s.rb().is_some_and(|r| r.weight == s.field().from_i64(w))
}

fn weighted<F: Field>(sup: &Supply<F>, d: usize, ws: &[i64]) -> Vec<Subject<F>> {
    structures(sup, StructureKind::HomCoassocRB, d)
        .into_iter()
        .filter(|w| st(w).is_some_and(|s| ws.iter().any(|x| weight_is(s, *x))))
        .collect()
}

fn group_of_comodule<F: Field>(w: &Subject<F>) -> usize {
    match cm(w) {
        Some(c) if cstrict(c) && strict(c.base()) => 0,
        _ => 1,
    }
}

fn is_cocommutative<F: Field>(d: &TensorMap<F>) -> bool {
    let n = d.dom().dim();
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| d.get(i, &[j, k]) == d.get(i, &[k, j]))))
}

/// Up to `n` comodules over the same base: the comodule itself, then a seeded pick.
fn partners<F: Field>(
    all: &[ComodulePackage<F>],
    c: &ComodulePackage<F>,
    n: usize,
    seed: u64,
) -> Vec<(usize, ComodulePackage<F>)> {
    let mut same: Vec<usize> = (0..all.len())
        .filter(|i| all[*i].base() == c.base() && all[*i] != *c && all[*i].mspace().dim() * c.mspace().dim() <= 4)
        .collect();
    same.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ c.nonzero_count() as u64));
    let mut out = vec![(usize::MAX, c.clone())];
    out.extend(same.into_iter().take(n.saturating_sub(1)).map(|i| (i, all[i].clone())));
    out
}

const CHUNK: usize = 16;

/// Weights tried for the operator B, in group order.
const B_WEIGHTS: &[i64] = &[1, -1, 0, 2, -2];

/// Run the campaign for `id` over the witnesses in `sup`.
pub fn verify_theorem<F: Field>(id: TheoremId, sup: &Supply<F>, cfg: &CampaignConfig) -> CampaignReport {
    let start = Instant::now();
    let field = sup.field.spec();
    let mut p = plan(id, sup, cfg);
    p.bases.shuffle(&mut ChaCha8Rng::seed_from_u64(cfg.seed));
    let ng = p.groups.len();
    let mut accepted: Vec<Vec<(String, Subject<F>, EvalFn<F>, Eval)>> = vec![Vec::new(); ng];
    let mut candidates = 0usize;
    let full = |acc: &Vec<Vec<_>>| acc.iter().all(|g| g.len() >= cfg.trials);
    for (ci, chunk) in p.bases.chunks(CHUNK).enumerate() {
        if full(&accepted) {
            break;
        }
        let evals: Vec<Vec<(String, Subject<F>, usize, EvalFn<F>, Eval)>> = chunk
            .par_iter()
            .enumerate()
            .map(|(bi, w)| {
                let index = ci * CHUNK + bi;
                (p.expand)(w)
                    .into_iter()
                    .map(|t| {
                        let e = (t.eval)(w);
                        let label = if t.label.is_empty() { format!("w{index}") } else { format!("w{index}-{}", t.label) };
                        (label, w.clone(), t.group, t.eval, e)
                    })
                    .collect()
            })
            .collect();
        for (label, w, g, f, e) in evals.into_iter().flatten() {
            candidates += 1;
            if e.hypothesis && accepted[g].len() < cfg.trials {
                accepted[g].push((label, w, f, e));
            }
        }
    }
    let mut groups = Vec::new();
    let mut extras: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut counterexamples = Vec::new();
    let mut ledger = Vec::new();
    let tag = field.tag();
    for (g, acc) in accepted.iter().enumerate() {
        let (gname, gated) = p.groups[g].clone();
        let passed = acc.iter().filter(|a| a.3.conclusion).count();
        groups.push(GroupStats {
            name: gname.clone(),
            gated,
            used: acc.len(),
            passed,
        });
        for (label, w, f, e) in acc {
            for (k, ok) in &e.extras {
                let slot = extras.entry(k.clone()).or_default();
                slot.1 += 1;
                if *ok {
                    slot.0 += 1;
                }
            }
            if !e.record.is_empty() {
                let mut fields = vec![("group".to_string(), gname.clone())];
                fields.extend(e.record.iter().cloned());
                ledger.push(LedgerEntry::new(id.id(), &tag, cfg.seed, &format!("witness:{label}"), fields));
            }
            if e.conclusion {
                continue;
            }
            let f2 = f.clone();
            let rec = WitnessRecord {
                verdicts: w.check().unwrap_or_else(|_| CheckReport {
                    subject: w.kind_id().to_string(),
                    entries: Vec::new(),
                    notes: Vec::new(),
                }),
                subject: w.clone(),
                provenance: Provenance {
                    source: format!("campaign:{}", id.id()),
                    seed: cfg.seed,
                    index: label_index(label),
                },
                minimized: false,
            };
            let min = minimize_witness(&rec, move |s| {
                let e = f2(s);
                e.hypothesis && !e.conclusion
            });
            let detail = f(&min.subject).detail.or_else(|| e.detail.clone()).unwrap_or_default();
            let text = match &min.subject {
                Subject::Structure(s) => emit(&Package::Structure(s.clone())),
                Subject::Comodule(c) => emit(&Package::Comodule(c.clone())),
            };
            let file_name = format!(
                "{}-{}-d{}-{}-{}-{}.hcs",
                id.id(),
                min.subject.kind_id(),
                min.subject.dim(),
                tag,
                cfg.seed,
                label
            );
            ledger.push(LedgerEntry::new(
                id.id(),
                &tag,
                cfg.seed,
                &format!("counterexample:{label}"),
                vec![
                    ("group".into(), gname.clone()),
                    ("gated".into(), if gated { "yes" } else { "no" }.into()),
                    ("file".into(), file_name.clone()),
                ],
            ));
            counterexamples.push(Counterexample {
                group: gname.clone(),
                label: label.clone(),
                file_name,
                text,
                detail,
                gated,
            });
        }
    }
    let mut notes = Vec::new();
    for gs in &groups {
        if gs.used < cfg.trials {
            notes.push(format!("group `{}`: found {} of {} requested witnesses", gs.name, gs.used, cfg.trials));
        }
    }
    let mut rep = CampaignReport {
        theorem: id,
        field,
        seed: cfg.seed,
        requested: cfg.trials,
        max_dim: cfg.max_dim,
        candidates,
        groups,
        extras,
        counterexamples,
        ledger,
        notes,
        runtime: Duration::ZERO,
        gate_any: p.gate == Gate::Any,
    };
    if id.report_only() || !rep.extras.is_empty() || rep.groups.len() > 1 {
        let mut fields: Vec<(String, String)> = rep
            .groups
            .iter()
            .map(|g| (format!("pass[{}]", g.name), format!("{}/{}", g.passed, g.used)))
            .collect();
        fields.extend(rep.extras.iter().map(|(k, (a, b))| (format!("extra[{k}]"), format!("{a}/{b}"))));
        if matches!(id, TheoremId::PostPoisson | TheoremId::TridendPost) {
            fields.push(("epsilon".into(), "xi".into()));
        }
        rep.ledger.insert(0, LedgerEntry::new(id.id(), &tag, cfg.seed, "summary", fields));
    }
    rep.runtime = start.elapsed();
    rep
}

fn label_index(label: &str) -> u64 {
    label
        .trim_start_matches('w')
        .split('-')
        .next()
        .and_then(|n| n.parse().ok())
        .unwrap_or(0)
}

/// Deterministic text; runtime is left out so equal seeds give equal bytes.
pub fn emit_report(r: &CampaignReport) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let _ = writeln!(s, "campaign {}", r.theorem);
    let _ = writeln!(s, "statement: {}", r.theorem.summary());
    let _ = writeln!(s, "field {}", r.field);
    let _ = writeln!(s, "seed {}", r.seed);
    let _ = writeln!(s, "max-dim {}", r.max_dim);
    let _ = writeln!(s, "requested {}", r.requested);
    if r.theorem.report_only() {
        let _ = writeln!(s, "report-only");
    }
    if r.used() == 0 {
        let _ = writeln!(s, "verdict: no witnesses");
        return s;
    }
    let _ = writeln!(s, "candidates {}", r.candidates);
    for g in &r.groups {
        let _ = writeln!(
            s,
            "group `{}`{}: {}/{} conclusions pass",
            g.name,
            if g.gated { "" } else { " [report]" },
            g.passed,
            g.used
        );
    }
    for (k, (a, b)) in &r.extras {
        let _ = writeln!(s, "extra `{k}`: {a}/{b}");
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    for c in &r.counterexamples {
        let _ = writeln!(
            s,
            "counterexample {} group `{}`{} -> {}",
            c.label,
            c.group,
            if c.gated { "" } else { " [report]" },
            c.file_name
        );
        if !c.detail.is_empty() {
            let _ = writeln!(s, "  {}", c.detail);
        }
    }
    let v = match r.verdict() {
        Verdict::Pass => "PASS",
        Verdict::Refuted => "FAIL",
        Verdict::ReportOnly => "REPORT-ONLY",
        Verdict::NoWitnesses => "no witnesses",
    };
    let _ = writeln!(s, "verdict: {v}");
    s
}
