//! Witness search over small fields, linear-slice solving, and witness minimization.

pub mod oracle;
pub mod pools;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::comodules::{check_comodule, ComoduleCheckOptions, ComoduleKind, ComodulePackage};
use crate::field::{Field, Scalar};
use crate::structures::{
    check_structure, CheckOptions, CheckReport, ComapName, RotaBaxter, StructureError, StructureKind, StructurePackage,
};
use crate::tensor::{nullspace, Space, TensorMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("search guard violated: {0}")]
    GuardViolation(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchMode {
    Exhaustive,
    Random,
}

impl std::str::FromStr for SearchMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exhaustive" => Ok(SearchMode::Exhaustive),
            "random" => Ok(SearchMode::Random),
            _ => Err(format!("unknown mode `{s}`")),
        }
    }
}

/// A structure package or a comodule package.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject<F: Field> {
    Structure(StructurePackage<F>),
    Comodule(ComodulePackage<F>),
}

impl<F: Field> Subject<F> {
    pub fn kind_id(&self) -> &'static str {
        match self {
            Subject::Structure(s) => s.kind().id(),
            Subject::Comodule(c) => c.kind().id(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Subject::Structure(s) => s.dim(),
            Subject::Comodule(c) => c.mspace().dim(),
        }
    }

    pub fn field(&self) -> &F {
        match self {
            Subject::Structure(s) => s.field(),
            Subject::Comodule(c) => c.field(),
        }
    }

    pub fn nonzero_count(&self) -> usize {
        match self {
            Subject::Structure(s) => s.nonzero_count(),
            Subject::Comodule(c) => c.nonzero_count(),
        }
    }

    /// Full default check of the subject's own axioms.
    pub fn check(&self) -> Result<CheckReport<F>, StructureError> {
        match self {
            Subject::Structure(s) => check_structure(s, None, &CheckOptions::default()),
            Subject::Comodule(c) => check_comodule(c, None, &ComoduleCheckOptions::default()).map_err(|e| match e {
                crate::comodules::ComoduleError::Structure(s) => s,
                other => StructureError::KindMismatch(other.to_string()),
            }),
        }
    }

    fn components_mut(&mut self) -> Vec<&mut TensorMap<F>> {
        match self {
            Subject::Structure(s) => s.components_mut(),
            Subject::Comodule(c) => c.components_mut(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub source: String,
    pub seed: u64,
    pub index: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRecord<F: Field> {
    pub subject: Subject<F>,
    pub provenance: Provenance,
    pub verdicts: CheckReport<F>,
    pub minimized: bool,
}

impl<F: Field> WitnessRecord<F> {
    pub fn new(subject: Subject<F>, provenance: Provenance) -> Result<Self, StructureError> {
        let verdicts = subject.check()?;
        Ok(WitnessRecord {
            subject,
            provenance,
            verdicts,
            minimized: false,
        })
    }

    /// `<kind>-d<dim>-<field>-<seed>-<index>.hcs`.
    pub fn file_name(&self) -> String {
        format!(
            "{}-d{}-{}-{}-{}.hcs",
            self.subject.kind_id(),
            self.subject.dim(),
            self.subject.field().spec().tag(),
            self.provenance.seed,
            self.provenance.index
        )
    }
}

/// What to search for.
#[derive(Debug, Clone)]
pub enum SearchTarget<F: Field> {
    Structure(StructureKind),
    /// Comodules with `dim M = cfg.dim` over a fixed base.
    Comodule { kind: ComoduleKind, base: StructurePackage<F> },
}

#[derive(Debug, Clone)]
pub struct Constraints<F: Field> {
    /// Components held fixed, by component name (`alpha`, `rb`, comap ids, `alpha_m`, map ids).
    pub fixed: BTreeMap<String, TensorMap<F>>,
    /// Fixed Rota–Baxter weight; free otherwise.
    pub weight: Option<F::Elem>,
}

impl<F: Field> Default for Constraints<F> {
    fn default() -> Self {
        Constraints {
            fixed: BTreeMap::new(),
            weight: None,
        }
    }
}

impl<F: Field> Constraints<F> {
    pub fn alpha_identity(field: &F, space: &Space) -> Self {
        let mut fixed = BTreeMap::new();
        fixed.insert("alpha".to_string(), TensorMap::identity(field, space));
        Constraints { fixed, weight: None }
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig<F: Field> {
    pub target: SearchTarget<F>,
    pub dim: usize,
    pub field: F,
    pub mode: SearchMode,
    pub budget: u64,
    pub seed: u64,
    pub constraints: Constraints<F>,
    /// Emit only candidates passing every entry, multiplicativity included.
    pub strict: bool,
}

impl<F: Field> SearchConfig<F> {
    pub fn structure(kind: StructureKind, dim: usize, field: &F, mode: SearchMode, budget: u64, seed: u64) -> Self {
        SearchConfig {
            target: SearchTarget::Structure(kind),
            dim,
            field: field.clone(),
            mode,
            budget,
            seed,
            constraints: Constraints {
                fixed: BTreeMap::new(),
                weight: None,
            },
            strict: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome<F: Field> {
    pub records: Vec<WitnessRecord<F>>,
    pub visited: u64,
    /// The candidate space was larger than the budget; results are partial.
    pub budget_exceeded: bool,
}

/// One free scalar: sets each listed coefficient to `sign · value`.
#[derive(Debug, Clone)]
struct Slot {
    comp: usize,
    cells: Vec<(usize, Vec<usize>, bool)>,
}

/// A template subject plus its free slots.
#[derive(Debug, Clone)]
pub struct Layout<F: Field> {
    template: Subject<F>,
    slots: Vec<Slot>,
    weight_free: bool,
}

fn comap_slots(kind: StructureKind, name: ComapName, comp: usize, n: usize, char2: bool, symmetric: bool) -> Vec<Slot> {
    let mut out = Vec::new();
    let skew = symmetric && kind.skew_comaps().contains(&name);
    let sym = symmetric && kind.cocommutative_comaps().contains(&name);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let cells = if skew {
                    if j > k || (j == k && !char2) {
                        continue;
                    }
                    if j == k {
                        vec![(i, vec![j, k], false)]
                    } else {
                        vec![(i, vec![j, k], false), (i, vec![k, j], true)]
                    }
                } else if sym {
                    if j > k {
                        continue;
                    }
                    if j == k {
                        vec![(i, vec![j, k], false)]
                    } else {
                        vec![(i, vec![j, k], false), (i, vec![k, j], false)]
                    }
                } else {
                    vec![(i, vec![j, k], false)]
                };
                out.push(Slot { comp, cells });
            }
        }
    }
    out
}

fn endo_slots(comp: usize, n: usize) -> Vec<Slot> {
    (0..n)
        .flat_map(|i| (0..n).map(move |j| Slot { comp, cells: vec![(i, vec![j], false)] }))
        .collect()
}

impl<F: Field> Layout<F> {
    pub fn for_structure(kind: StructureKind, field: &F, dim: usize, c: &Constraints<F>) -> Result<Self, SearchError> {
        Self::structure_layout(kind, field, dim, c, true)
    }

    /// Every coefficient free, ignoring skew and cocommutative symmetry.
    pub fn for_structure_raw(kind: StructureKind, field: &F, dim: usize, c: &Constraints<F>) -> Result<Self, SearchError> {
        Self::structure_layout(kind, field, dim, c, false)
    }

    fn structure_layout(
        kind: StructureKind,
        field: &F,
        dim: usize,
        c: &Constraints<F>,
        symmetric: bool,
    ) -> Result<Self, SearchError> {
        let space = Space::new("C", dim).map_err(StructureError::from)?;
        let mut s = StructurePackage::zero(kind, field, &space);
        let char2 = field.characteristic() == 2;
        for (name, m) in &c.fixed {
            s = match name.as_str() {
                "alpha" => s.with_alpha(m.clone())?,
                "rb" => {
                    let w = s.rb().map(|r| r.weight.clone()).unwrap_or_else(|| field.zero());
                    s.with_rb(Some(RotaBaxter {
                        operator: m.clone(),
                        weight: w,
                    }))?
                }
                other => s.with_comap(other.parse()?, m.clone())?,
            };
        }
        if let (Some(w), Some(rb)) = (&c.weight, s.rb()) {
            let op = rb.operator.clone();
            s = s.with_rb(Some(RotaBaxter {
                operator: op,
                weight: w.clone(),
            }))?;
        }
        let mut slots = Vec::new();
        let mut comp = 0;
        if !c.fixed.contains_key("alpha") {
            slots.extend(endo_slots(comp, dim));
        }
        comp += 1;
        if kind.has_rb() {
            if !c.fixed.contains_key("rb") {
                slots.extend(endo_slots(comp, dim));
            }
            comp += 1;
        }
        let names: Vec<ComapName> = s.comaps().keys().copied().collect();
        for name in names {
            if !c.fixed.contains_key(name.id()) {
                slots.extend(comap_slots(kind, name, comp, dim, char2, symmetric));
            }
            comp += 1;
        }
        Ok(Layout {
            template: Subject::Structure(s),
            slots,
            weight_free: kind.has_rb() && c.weight.is_none(),
        })
    }

    pub fn for_comodule(
        kind: ComoduleKind,
        base: &StructurePackage<F>,
        mdim: usize,
        c: &Constraints<F>,
    ) -> Result<Self, SearchError> {
        let m = Space::new("M", mdim).map_err(StructureError::from)?;
        let mut cm = ComodulePackage::zero(kind, base.clone(), &m)?;
        let mut slots = Vec::new();
        let names: Vec<String> = cm.components().into_iter().map(|(n, _)| n).collect();
        for (idx, (t, name)) in cm.components_mut().into_iter().zip(names).enumerate() {
            if let Some(fixed) = c.fixed.get(&name) {
                if !fixed.same_signature(t) {
                    return Err(SearchError::GuardViolation(format!("fixed {name} has the wrong signature")));
                }
                *t = fixed.clone();
            } else if idx == 0 {
                slots.extend(endo_slots(idx, mdim));
            } else {
                for i in 0..mdim {
                    for x in 0..base.dim() {
                        for j in 0..mdim {
                            slots.push(Slot {
                                comp: idx,
                                cells: vec![(i, vec![x, j], false)],
                            });
                        }
                    }
                }
            }
        }
        Ok(Layout {
            template: Subject::Comodule(cm),
            slots,
            weight_free: false,
        })
    }

    pub fn for_config(cfg: &SearchConfig<F>) -> Result<Self, SearchError> {
        match &cfg.target {
            SearchTarget::Structure(k) => Layout::for_structure(*k, &cfg.field, cfg.dim, &cfg.constraints),
            SearchTarget::Comodule { kind, base } => Layout::for_comodule(*kind, base, cfg.dim, &cfg.constraints),
        }
    }

    /// Number of free scalars, the weight included.
    pub fn free_count(&self) -> usize {
        self.slots.len() + usize::from(self.weight_free)
    }

    pub fn template(&self) -> &Subject<F> {
        &self.template
    }

    /// Candidate `index` of the random stream under `seed`.
    pub fn random(&self, seed: u64, index: u64) -> Subject<F> {
        let f = self.template.field().clone();
        self.build(&random_values(&f, seed, index, self.free_count()))
    }

    /// Instantiate with one value per free scalar (weight last).
    pub fn build(&self, values: &[F::Elem]) -> Subject<F> {
        let mut s = self.template.clone();
        {
            let mut comps = s.components_mut();
            for (slot, v) in self.slots.iter().zip(values) {
                for (i, js, neg) in &slot.cells {
                    let val = if *neg { -v.clone() } else { v.clone() };
                    comps[slot.comp].set(*i, js, val);
                }
            }
        }
        if self.weight_free {
            if let Subject::Structure(p) = &s {
                let rb = p.rb().expect("rb kind");
                let w = values[self.slots.len()].clone();
                let op = rb.operator.clone();
                s = Subject::Structure(p.with_rb(Some(RotaBaxter { operator: op, weight: w })).expect("same shape"));
            }
        }
        s
    }
}

fn passes<F: Field>(s: &Subject<F>, strict: bool) -> Option<CheckReport<F>> {
    let r = s.check().ok()?;
    let ok = if strict { r.passes_strict() } else { r.passes() };
    ok.then_some(r)
}

fn guard<F: Field>(cfg: &SearchConfig<F>, layout: &Layout<F>) -> Result<Option<u64>, SearchError> {
    if !(1..=4).contains(&cfg.dim) {
        return Err(SearchError::GuardViolation(format!("dim {} outside 1..4", cfg.dim)));
    }
    if cfg.mode == SearchMode::Random {
        return Ok(None);
    }
    let elems = cfg
        .field
        .elements()
        .ok_or_else(|| SearchError::GuardViolation("exhaustive mode needs a finite field".into()))?;
    let n = cfg.dim;
    let count = layout.free_count();
    if count > 3 * n * n * n + n * n {
        return Err(SearchError::GuardViolation(format!("{count} free coefficients exceed 3·d³+d²")));
    }
    let bits = (count as f64) * (elems.len() as f64).log2();
    if bits > 36.0 {
        return Err(SearchError::GuardViolation(format!(
            "{}^{count} candidates exceed 2^36",
            elems.len()
        )));
    }
    Ok(Some((elems.len() as u64).pow(count as u32)))
}

fn decode<E: Clone>(mut idx: u64, elems: &[E], count: usize) -> Vec<E> {
    let q = elems.len() as u64;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(elems[(idx % q) as usize].clone());
        idx /= q;
    }
    out
}

/// Values for random candidate `index`: its own ChaCha stream under `seed`.
fn random_values<F: Field>(field: &F, seed: u64, index: u64, count: usize) -> Vec<F::Elem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    (0..count).map(|_| field.sample(&mut rng)).collect()
}

/// Enumerate candidates and keep those passing the target's check, in candidate order.
pub fn enumerate_instances<F: Field>(cfg: &SearchConfig<F>) -> Result<SearchOutcome<F>, SearchError> {
    let layout = Layout::for_config(cfg)?;
    let total = guard(cfg, &layout)?;
    let count = layout.free_count();
    let (limit, exceeded) = match total {
        Some(t) => (t.min(cfg.budget), t > cfg.budget),
        None => (cfg.budget, false),
    };
    let elems = cfg.field.elements();
    let source = match &cfg.target {
        SearchTarget::Structure(k) => format!("search:{}:{:?}", k.id(), cfg.mode).to_lowercase(),
        SearchTarget::Comodule { kind, .. } => format!("search:{}:{:?}", kind.id(), cfg.mode).to_lowercase(),
    };
    let records: Vec<WitnessRecord<F>> = (0..limit)
        .into_par_iter()
        .filter_map(|idx| {
            let values = match (cfg.mode, &elems) {
                (SearchMode::Exhaustive, Some(e)) => decode(idx, e, count),
                _ => random_values(&cfg.field, cfg.seed, idx, count),
            };
            let subject = layout.build(&values);
            let verdicts = passes(&subject, cfg.strict)?;
            Some(WitnessRecord {
                subject,
                provenance: Provenance {
                    source: source.clone(),
                    seed: cfg.seed,
                    index: idx,
                },
                verdicts,
                minimized: false,
            })
        })
        .collect();
    Ok(SearchOutcome {
        records,
        visited: limit,
        budget_exceeded: exceeded,
    })
}

/// Solve the axioms listed in `linear` as a homogeneous linear system in the
/// layout's free slots, then enumerate kernel vectors (at most `cap`) and keep
/// the first `max_keep` passing `keep`. Axioms in `linear` must be linear and homogeneous in
/// the free slots; any that are not simply yield fewer survivors.
pub fn linear_slice<F: Field>(
    layout: &Layout<F>,
    linear: &[&str],
    cap: u64,
    max_keep: usize,
    seed: u64,
    keep: impl Fn(&Subject<F>) -> bool + Sync,
) -> Vec<Subject<F>> {
    let f = layout.template.field().clone();
    let n = layout.slots.len();
    let residual_vec = |s: &Subject<F>| -> Option<Vec<F::Elem>> {
        let r = s.check().ok()?;
        let mut v = Vec::new();
        for id in linear {
            v.extend(r.entry(id)?.residual.coeffs().iter().cloned());
        }
        Some(v)
    };
    let zero_vals = vec![f.zero(); layout.free_count()];
    let Some(base) = residual_vec(&layout.build(&zero_vals)) else {
        return Vec::new();
    };
    if base.iter().any(|c| !c.is_zero_elem()) {
        return Vec::new();
    }
    let mut columns = Vec::with_capacity(n);
    for s in 0..n {
        let mut vals = zero_vals.clone();
        vals[s] = f.one();
        match residual_vec(&layout.build(&vals)) {
            Some(c) => columns.push(c),
            None => return Vec::new(),
        }
    }
    let rows = base.len();
    let matrix: Vec<Vec<F::Elem>> = (0..rows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let kernel = nullspace(&f, matrix, n);
    let r = kernel.len();
    let combos: Vec<Vec<F::Elem>> = match f.elements() {
        Some(e) if (e.len() as f64).powi(r as i32) <= cap as f64 => {
            let total = (e.len() as u64).pow(r as u32);
            (0..total).map(|i| decode(i, &e, r)).collect()
        }
        _ => (0..cap).map(|i| random_values(&f, seed, i, r)).collect(),
    };
    let weight_tail = if layout.weight_free { vec![layout_weight(layout)] } else { vec![] };
    let mut out = Vec::new();
    for chunk in combos.chunks(4096) {
        let found: Vec<Subject<F>> = chunk
            .par_iter()
            .filter_map(|coef| {
                let mut vals = vec![f.zero(); n];
                for (c, b) in coef.iter().zip(&kernel) {
                    if c.is_zero_elem() {
                        continue;
                    }
                    for (v, x) in vals.iter_mut().zip(b) {
                        *v = v.clone() + c.clone() * x.clone();
                    }
                }
                vals.extend(weight_tail.iter().cloned());
                let s = layout.build(&vals);
                keep(&s).then_some(s)
            })
            .collect();
        out.extend(found);
        if out.len() >= max_keep {
            out.truncate(max_keep);
            break;
        }
    }
    out
}

fn layout_weight<F: Field>(layout: &Layout<F>) -> F::Elem {
    match &layout.template {
        Subject::Structure(s) => s.rb().map(|r| r.weight.clone()).unwrap_or_else(|| s.field().zero()),
        Subject::Comodule(c) => c.field().zero(),
    }
}

/// Greedy minimization: zero coefficients one at a time, then drop basis
/// vectors untouched by every component, keeping `pred` true throughout.
pub fn minimize_witness<F: Field>(
    w: &WitnessRecord<F>,
    pred: impl Fn(&Subject<F>) -> bool,
) -> WitnessRecord<F> {
    let mut cur = w.subject.clone();
    if !pred(&cur) {
        return w.clone();
    }
    loop {
        let mut changed = false;
        let ncomp = cur.clone().components_mut().len();
        for c in 0..ncomp {
            let len = cur.clone().components_mut()[c].coeffs().len();
            for k in 0..len {
                let mut cand = cur.clone();
                {
                    let mut comps = cand.components_mut();
                    let cell = &mut comps[c].coeffs_mut()[k];
                    if cell.is_zero_elem() {
                        continue;
                    }
                    *cell = w.subject.field().zero();
                }
                if pred(&cand) {
                    cur = cand;
                    changed = true;
                }
            }
        }
        while let Some(smaller) = drop_unused_basis(&cur).filter(|s| pred(s)) {
            cur = smaller;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let minimized = cur != w.subject;
    let verdicts = cur.check().unwrap_or_else(|_| w.verdicts.clone());
    WitnessRecord {
        subject: cur,
        provenance: w.provenance.clone(),
        verdicts,
        minimized: minimized || w.minimized,
    }
}

/// Restrict to the complement of the first basis vector on which every component vanishes.
fn drop_unused_basis<F: Field>(s: &Subject<F>) -> Option<Subject<F>> {
    let Subject::Structure(p) = s else {
        return None;
    };
    let n = p.dim();
    if n == 1 {
        return None;
    }
    let comps = p.components();
    let unused = (0..n).find(|b| {
        comps.iter().all(|(_, m)| {
            m.support()
                .iter()
                .all(|(i, js, _)| *i != *b && js.iter().all(|j| j != b))
        })
    })?;
    let keep: Vec<usize> = (0..n).filter(|i| *i != unused).collect();
    let sp = Space::new(p.space().name(), n - 1).ok()?;
    let restrict = |m: &TensorMap<F>| -> TensorMap<F> {
        let cod = vec![sp.clone(); m.arity()];
        TensorMap::from_fn(p.field(), sp.clone(), cod, |i, js| {
            let jj: Vec<usize> = js.iter().map(|j| keep[*j]).collect();
            m.get(keep[i], &jj).clone()
        })
        .expect("restriction shape")
    };
    let comaps = p.comaps().iter().map(|(n, m)| (*n, restrict(m))).collect();
    let rb = p.rb().map(|r| RotaBaxter {
        operator: restrict(&r.operator),
        weight: r.weight.clone(),
    });
    StructurePackage::new(p.kind(), restrict(p.alpha()), comaps, rb)
        .ok()
        .map(Subject::Structure)
}
