//! Command-line surface. `run` returns the process exit code.
//!
//! Exit codes: 0 pass, 1 refutation, 2 input error, 3 no witnesses.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::comodules::{
    check_comodule, direct_sum, regular_k, self_comodule, tensor_k, twist_0k, twist_beta, twist_n0, twist_nk,
    ComoduleCheckOptions, ComodulePackage, Ma3Reading,
};
use crate::constructions::{
    admissible, commutator_cobracket, dendriform_to_prelie, inverse_twist, le1_report, postpoisson_to_homopoisson,
    power_twist, rb_coassoc_derive, rb_homlie_to_posthomlie, sub_homlie, tensor_posthomlie, tilde, tridend_sum,
    tridend_to_posthomlie, yau_twist, RbTarget,
};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::io::ledger::{merge, parse_ledger};
use crate::io::{emit, emit_report, parse_structure_file, parse_with, verify_theorem, AnyPackage, CampaignConfig};
use crate::io::{Package, Supply, TheoremId, Verdict};
use crate::search::oracle::{oracle_check_comodule, oracle_check_structure, OracleVerdict};
use crate::search::{enumerate_instances, SearchConfig, SearchMode, SearchTarget};
use crate::structures::{
    check_algebra, check_structure, dualize_algebra, dualize_coalgebra, opposite_tridend, CheckOptions, CheckReport,
    EpsilonReading, StructureKind, StructurePackage,
};
use crate::tensor::matrix_power;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NO_WITNESSES: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "homco", version, about = "Exact checks for Hom-coalgebra structures and constructions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check every axiom of a structure, comodule or algebra file.
    Check {
        file: PathBuf,
        /// Comma-separated axiom ids; all axioms when absent.
        #[arg(long, value_delimiter = ',')]
        axioms: Option<Vec<String>>,
        #[arg(long, value_parser = parse_epsilon, default_value = "xi")]
        epsilon: EpsilonReading,
        #[arg(long, value_parser = parse_ma3, default_value = "proof")]
        ma3: Ma3Reading,
    },
    /// Apply a construction and write the result.
    Construct {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(RULES))]
        rule: String,
        file: PathBuf,
        #[arg(long)]
        aux: Option<PathBuf>,
        /// `key=value`, repeatable.
        #[arg(long = "param", value_parser = parse_kv)]
        params: Vec<(String, String)>,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Enumerate witnesses of a kind and write one file per witness.
    Search {
        kind: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_parser = parse_field)]
        field: FieldSpec,
        #[arg(long, value_parser = parse_mode, default_value = "exhaustive")]
        mode: SearchMode,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Keep only witnesses passing multiplicativity as well.
        #[arg(long)]
        strict: bool,
        /// Base coalgebra file, required for comodule kinds.
        #[arg(long)]
        base: Option<PathBuf>,
    },
    /// Run a theorem campaign, print its report and update the ledger.
    VerifyTheorem {
        id: String,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, value_parser = parse_field, default_value = "F5")]
        field: FieldSpec,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Directory for counterexample files and `discrepancies.txt`.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Dualize an algebra into a coalgebra, or the reverse.
    Dualize {
        file: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Evaluate one axiom with the independent Sweedler oracle.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        axiom: String,
        #[arg(long, value_parser = parse_epsilon, default_value = "xi")]
        epsilon: EpsilonReading,
        #[arg(long, value_parser = parse_ma3, default_value = "proof")]
        ma3: Ma3Reading,
    },
}

fn parse_epsilon(s: &str) -> Result<EpsilonReading, String> {
    match s {
        "xi" => Ok(EpsilonReading::Xi),
        "xi2" => Ok(EpsilonReading::XiSquared),
        _ => Err(format!("expected `xi` or `xi2`, found `{s}`")),
    }
}

fn parse_ma3(s: &str) -> Result<Ma3Reading, String> {
    match s {
        "proof" => Ok(Ma3Reading::Proof),
        "printed" => Ok(Ma3Reading::Printed),
        _ => Err(format!("expected `proof` or `printed`, found `{s}`")),
    }
}

fn parse_kv(s: &str) -> Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, found `{s}`"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse::<FieldSpec>().map_err(|e| e.to_string())
}

fn parse_mode(s: &str) -> Result<SearchMode, String> {
    s.parse()
}

/// An error that maps to exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Res = Result<i32, InputError>;

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<AnyPackage, InputError> {
    let text = read(path)?;
    parse_structure_file(&text).map_err(|e| InputError(format!("{}:{e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), InputError> {
    fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn dispatch(cmd: Cmd) -> Res {
    match cmd {
        Cmd::Check {
            file,
            axioms,
            epsilon,
            ma3,
        } => match load(&file)? {
            AnyPackage::Q(p) => check(&p, axioms.as_deref(), epsilon, ma3),
            AnyPackage::Fp(p) => check(&p, axioms.as_deref(), epsilon, ma3),
        },
        Cmd::Construct {
            rule,
            file,
            aux,
            params,
            out,
        } => {
            let params = Params::new(params)?;
            let text = read(&file)?;
            let aux_text = aux.as_deref().map(read).transpose()?;
            let result = match parse_structure_file(&text).map_err(|e| InputError(format!("{}:{e}", file.display())))? {
                AnyPackage::Q(p) => construct(&rule, p, aux_text.as_deref(), &params, &Rationals)?,
                AnyPackage::Fp(p) => {
                    let f = *p.field();
                    construct(&rule, p, aux_text.as_deref(), &params, &f)?
                }
            };
            params.finish()?;
            match out {
                Some(o) => write(&o, &result)?,
                None => print!("{result}"),
            }
            Ok(EXIT_PASS)
        }
        Cmd::Search {
            kind,
            dim,
            field,
            mode,
            budget,
            seed,
            out,
            strict,
            base,
        } => {
            let base_text = base.as_deref().map(read).transpose()?;
            let opts = SearchArgs {
                kind,
                dim,
                mode,
                budget,
                seed,
                out,
                strict,
                base: base_text,
            };
            match field {
                FieldSpec::Rationals => search(&Rationals, &opts),
                FieldSpec::PrimeField(p) => search(&PrimeField::new(p.into())?, &opts),
            }
        }
        Cmd::VerifyTheorem {
            id,
            trials,
            dim,
            field,
            seed,
            out,
        } => {
            let id: TheoremId = id.parse()?;
            let cfg = CampaignConfig {
                trials,
                seed,
                max_dim: dim,
            };
            match field {
                FieldSpec::Rationals => campaign(id, &Supply::with_fixtures(&Rationals, false), &cfg, &out),
                FieldSpec::PrimeField(p) => campaign(id, &Supply::with_fixtures(&PrimeField::new(p.into())?, true), &cfg, &out),
            }
        }
        Cmd::Dualize { file, out } => {
            let text = match load(&file)? {
                AnyPackage::Q(p) => dualize(&p)?,
                AnyPackage::Fp(p) => dualize(&p)?,
            };
            write(&out, &text)?;
            Ok(EXIT_PASS)
        }
        Cmd::Oracle {
            file,
            axiom,
            epsilon,
            ma3,
        } => match load(&file)? {
            AnyPackage::Q(p) => oracle(&p, &axiom, epsilon, ma3),
            AnyPackage::Fp(p) => oracle(&p, &axiom, epsilon, ma3),
        },
    }
}

fn verdict_code<F: Field>(r: &CheckReport<F>) -> i32 {
    if r.passes() {
        EXIT_PASS
    } else {
        EXIT_REFUTED
    }
}

fn check<F: Field>(p: &Package<F>, axioms: Option<&[String]>, epsilon: EpsilonReading, ma3: Ma3Reading) -> Res {
    let ids: Option<Vec<&str>> = axioms.map(|v| v.iter().map(String::as_str).collect());
    let report = match p {
        Package::Structure(s) => check_structure(
            s,
            ids.as_deref(),
            &CheckOptions {
                epsilon,
                ..CheckOptions::default()
            },
        )?,
        Package::Comodule(c) => check_comodule(c, ids.as_deref(), &ComoduleCheckOptions { ma3 })?,
        Package::Algebra(a) => {
            if ids.is_some() {
                return Err(InputError("--axioms is not supported for algebra files".into()));
            }
            check_algebra(a)?
        }
    };
    print!("{}", report.render());
    Ok(verdict_code(&report))
}

/// `--param` values, each of which must be consumed by the rule.
struct Params {
    map: BTreeMap<String, String>,
    used: std::cell::RefCell<Vec<String>>,
}

impl Params {
    fn new(list: Vec<(String, String)>) -> Result<Self, InputError> {
        let mut map = BTreeMap::new();
        for (k, v) in list {
            if map.insert(k.clone(), v).is_some() {
                return Err(InputError(format!("parameter `{k}` given twice")));
            }
        }
        Ok(Params {
            map,
            used: Default::default(),
        })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.used.borrow_mut().push(key.to_string());
        self.map.get(key).map(String::as_str)
    }

    fn int<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T, InputError> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| InputError(format!("parameter `{key}`: bad value `{v}`"))),
        }
    }

    fn finish(&self) -> Result<(), InputError> {
        let used = self.used.borrow();
        match self.map.keys().find(|k| !used.contains(k)) {
            Some(k) => Err(InputError(format!("parameter `{k}` is not used by this rule"))),
            None => Ok(()),
        }
    }
}

fn structure<F: Field>(p: Package<F>, rule: &str) -> Result<StructurePackage<F>, InputError> {
    match p {
        Package::Structure(s) => Ok(s),
        _ => Err(InputError(format!("rule `{rule}` needs a structure file"))),
    }
}

fn comodule<F: Field>(p: Package<F>, rule: &str) -> Result<ComodulePackage<F>, InputError> {
    match p {
        Package::Comodule(c) => Ok(c),
        _ => Err(InputError(format!("rule `{rule}` needs a comodule file"))),
    }
}

fn aux_package<F: Field>(aux: Option<&str>, field: &F, rule: &str) -> Result<Package<F>, InputError> {
    let text = aux.ok_or_else(|| InputError(format!("rule `{rule}` needs --aux")))?;
    parse_with(text, field).map_err(|e| InputError(format!("aux:{e}")))
}

pub const RULES: &[&str] = &[
    "yau_twist",
    "power_twist",
    "inverse_twist",
    "opposite",
    "commutator_cobracket",
    "tridend_sum",
    "rb_tridend",
    "rb_dendriform",
    "rb_prelie0",
    "rb_prelie_m1",
    "rb_dendriform_b",
    "dendriform_to_prelie",
    "tilde",
    "admissible",
    "sub_homlie",
    "le1_report",
    "rb_homlie_to_posthomlie",
    "tensor_posthomlie",
    "tridend_to_posthomlie",
    "postpoisson_to_homopoisson",
    "self_comodule",
    "regular_k",
    "direct_sum",
    "tensor_k",
    "twist_n0",
    "twist_0k",
    "twist_nk",
    "twist_beta",
];

fn construct<F: Field>(rule: &str, p: Package<F>, aux: Option<&str>, params: &Params, field: &F) -> Result<String, InputError> {
    let s_out = |s: StructurePackage<F>| emit(&Package::Structure(s));
    let c_out = |c: ComodulePackage<F>| emit(&Package::Comodule(c));
    let rb = |target| -> Result<String, InputError> {
        let s = structure(p.clone(), rule)?;
        let w = params.raw("weight").map(|v| field.parse_elem(v)).transpose()?;
        Ok(s_out(rb_coassoc_derive(&s, target, w.as_ref())?))
    };
    Ok(match rule {
        "yau_twist" => {
            let s = structure(p, rule)?;
            let beta = matrix_power(s.alpha(), params.int("beta-power", 1u64)?)?;
            s_out(yau_twist(&s, &beta)?)
        }
        "power_twist" => {
            let s = structure(p, rule)?;
            s_out(power_twist(&s, params.int("n", 1u64)?)?)
        }
        "inverse_twist" => s_out(inverse_twist(&structure(p, rule)?)?),
        "opposite" => s_out(opposite_tridend(&structure(p, rule)?)?),
        "commutator_cobracket" => s_out(commutator_cobracket(&structure(p, rule)?)?),
        "tridend_sum" => s_out(tridend_sum(&structure(p, rule)?)?),
        "rb_tridend" => rb(RbTarget::Tridend)?,
        "rb_dendriform" => rb(RbTarget::Dendriform)?,
        "rb_prelie0" => rb(RbTarget::PreLie0)?,
        "rb_prelie_m1" => rb(RbTarget::PreLieM1)?,
        "rb_dendriform_b" => rb(RbTarget::DendriformB)?,
        "dendriform_to_prelie" => s_out(dendriform_to_prelie(&structure(p, rule)?)?),
        "tilde" => s_out(tilde(&structure(p, rule)?)?),
        "admissible" => s_out(admissible(&structure(p, rule)?)?.homlie),
        "sub_homlie" => s_out(sub_homlie(&structure(p, rule)?)?),
        "le1_report" => {
            let r = le1_report(&structure(p, rule)?)?;
            let yn = |b: bool| if b { "yes" } else { "no" };
            format!(
                "l_eq_r1 {}\nl_eq_r2 {}\ncyclic_vanishes {}\nadmissible {}\nl {}\nr1 {}\nr2 {}\n",
                yn(r.l_eq_r1),
                yn(r.l_eq_r2),
                yn(r.cyclic_vanishes),
                yn(r.admissible),
                crate::structures::render_support(&r.l),
                crate::structures::render_support(&r.r1),
                crate::structures::render_support(&r.r2),
            )
        }
        "rb_homlie_to_posthomlie" => s_out(rb_homlie_to_posthomlie(&structure(p, rule)?)?),
        "tensor_posthomlie" => {
            let q = structure(aux_package(aux, field, rule)?, rule)?;
            s_out(tensor_posthomlie(&structure(p, rule)?, &q)?)
        }
        "tridend_to_posthomlie" => s_out(tridend_to_posthomlie(&structure(p, rule)?)?),
        "postpoisson_to_homopoisson" => s_out(postpoisson_to_homopoisson(&structure(p, rule)?)?),
        "self_comodule" => c_out(self_comodule(&structure(p, rule)?)?),
        "regular_k" => {
            let s = structure(p, rule)?;
            c_out(regular_k(&s, params.int("k", 0u64)?)?)
        }
        "direct_sum" => {
            let b = comodule(aux_package(aux, field, rule)?, rule)?;
            c_out(direct_sum(&comodule(p, rule)?, &b)?)
        }
        "tensor_k" => {
            let b = comodule(aux_package(aux, field, rule)?, rule)?;
            c_out(tensor_k(&comodule(p, rule)?, &b, params.int("k", 0u64)?)?)
        }
        "twist_n0" => c_out(twist_n0(&comodule(p, rule)?, params.int("n", 1u64)?)?),
        "twist_0k" => {
            let c = comodule(p, rule)?;
            let variant = params.raw("variant").unwrap_or("theorem").parse()?;
            c_out(twist_0k(&c, params.int("k", 1u32)?, variant)?)
        }
        "twist_nk" => {
            let c = comodule(p, rule)?;
            c_out(twist_nk(&c, params.int("n", 1u64)?, params.int("k", 1u32)?)?)
        }
        "twist_beta" => {
            let c = comodule(p, rule)?;
            let beta = matrix_power(c.base().alpha(), params.int("beta-power", 1u64)?)?;
            let beta_m = matrix_power(c.alpha_m(), params.int("beta-m-power", 1u64)?)?;
            c_out(twist_beta(&c, &beta, &beta_m)?)
        }
        _ => {
            return Err(InputError(format!(
                "unknown rule `{rule}`; expected one of {}",
                RULES.join(", ")
            )))
        }
    })
}

struct SearchArgs {
    kind: String,
    dim: usize,
    mode: SearchMode,
    budget: u64,
    seed: u64,
    out: PathBuf,
    strict: bool,
    base: Option<String>,
}

fn search<F: Field>(field: &F, a: &SearchArgs) -> Res {
    let target = if let Ok(k) = a.kind.parse::<StructureKind>() {
        SearchTarget::Structure(k)
    } else if let Ok(k) = a.kind.parse::<crate::comodules::ComoduleKind>() {
        let text = a
            .base
            .as_deref()
            .ok_or_else(|| InputError(format!("comodule kind `{}` needs --base", a.kind)))?;
        let base = match parse_with(text, field).map_err(|e| InputError(format!("base:{e}")))? {
            Package::Structure(s) => s,
            _ => return Err(InputError("--base must be a structure file".into())),
        };
        SearchTarget::Comodule { kind: k, base }
    } else {
        return Err(InputError(format!("unknown kind `{}`", a.kind)));
    };
    let mut cfg = SearchConfig::structure(StructureKind::HomCoassoc, a.dim, field, a.mode, a.budget, a.seed);
    cfg.target = target;
    cfg.strict = a.strict;
    let outcome = enumerate_instances(&cfg)?;
    fs::create_dir_all(&a.out)?;
    for r in &outcome.records {
        let text = match &r.subject {
            crate::search::Subject::Structure(s) => emit(&Package::Structure(s.clone())),
            crate::search::Subject::Comodule(c) => emit(&Package::Comodule(c.clone())),
        };
        write(&a.out.join(r.file_name()), &text)?;
        println!("{}", r.file_name());
    }
    println!(
        "visited {} witnesses {}{}",
        outcome.visited,
        outcome.records.len(),
        if outcome.budget_exceeded { " (budget exceeded)" } else { "" }
    );
    Ok(if outcome.records.is_empty() {
        EXIT_NO_WITNESSES
    } else {
        EXIT_PASS
    })
}

fn campaign<F: Field>(id: TheoremId, sup: &Supply<F>, cfg: &CampaignConfig, out: &Path) -> Res {
    let started = Instant::now();
    let report = verify_theorem(id, sup, cfg);
    fs::create_dir_all(out)?;
    for c in &report.counterexamples {
        write(&out.join(&c.file_name), &c.text)?;
    }
    let path = out.join("discrepancies.txt");
    let old = if path.exists() {
        parse_ledger(&read(&path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))?
    } else {
        Vec::new()
    };
    write(&path, &merge(old, report.ledger.clone()))?;
    print!("{}", emit_report(&report));
    eprintln!("runtime {:.3}s", started.elapsed().as_secs_f64());
    Ok(match report.verdict() {
        Verdict::Pass | Verdict::ReportOnly => EXIT_PASS,
        Verdict::Refuted => EXIT_REFUTED,
        Verdict::NoWitnesses => EXIT_NO_WITNESSES,
    })
}

fn dualize<F: Field>(p: &Package<F>) -> Result<String, InputError> {
    Ok(match p {
        Package::Algebra(a) => emit(&Package::Structure(dualize_algebra(a)?)),
        Package::Structure(s) => emit(&Package::Algebra(dualize_coalgebra(s)?)),
        Package::Comodule(_) => return Err(InputError("comodule files cannot be dualized".into())),
    })
}

fn render_oracle<E: std::fmt::Display>(axiom: &str, v: &OracleVerdict<E>) -> String {
    let mut s = String::new();
    match v.first_failing_basis_index {
        None => s.push_str(&format!("oracle {axiom} PASS\n")),
        Some(i) => {
            s.push_str(&format!("oracle {axiom} FAIL at e{}\n", i + 1));
            for ((inp, outs), c) in &v.residual {
                let js: Vec<String> = outs.iter().map(|j| format!("e{}", j + 1)).collect();
                s.push_str(&format!("  e{} -> {c} ({})\n", inp + 1, js.join(", ")));
            }
        }
    }
    s
}

fn oracle<F: Field>(p: &Package<F>, axiom: &str, epsilon: EpsilonReading, ma3: Ma3Reading) -> Res {
    let v = match p {
        Package::Structure(s) => oracle_check_structure(s, axiom, epsilon)?,
        Package::Comodule(c) => oracle_check_comodule(c, axiom, ma3 == Ma3Reading::Printed)?,
        Package::Algebra(_) => return Err(InputError("the oracle covers coalgebras and comodules only".into())),
    };
    print!("{}", render_oracle(axiom, &v));
    Ok(if v.passed { EXIT_PASS } else { EXIT_REFUTED })
}
