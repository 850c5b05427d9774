//! Comodules over Hom-tridendriform and post-Hom-Lie coalgebras.
//!
//! Structure maps are typed `M → L⊗M` throughout; the `α_M⊗α` of the
//! printed comultiplicativity condition is reordered to `α⊗α_M`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::constructions::{endomorphism_violations, multiplicativity_violations, yau_twist, ConstructionError};
use crate::field::Field;
use crate::structures::{AxiomEntry, CheckReport, ComapName, Role, StructureError, StructureKind, StructurePackage};
use crate::tensor::{compose_legs, lincomb, matmul, matrix_power, permute, precompose, Leg, LegPermutation, Space, TensorMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComoduleError {
    #[error("comodules are over different base coalgebras")]
    BaseMismatch,
    #[error("base is not multiplicative: {0} fails")]
    NotMultiplicative(String),
    #[error("not equivariant: {0} fails")]
    NotEquivariant(String),
    #[error("exponent 2^{0} exceeds 2^20")]
    ExponentOverflow(u32),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl From<crate::tensor::TensorError> for ComoduleError {
    fn from(e: crate::tensor::TensorError) -> Self {
        ComoduleError::Structure(StructureError::Tensor(e))
    }
}

impl From<ConstructionError> for ComoduleError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Structure(s) => ComoduleError::Structure(s),
            ConstructionError::NotEndomorphism(s) => ComoduleError::NotEquivariant(s),
            ConstructionError::NotMultiplicative(s) => ComoduleError::NotMultiplicative(s),
            other => ComoduleError::Structure(StructureError::KindMismatch(other.to_string())),
        }
    }
}

type R<T> = Result<T, ComoduleError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComoduleKind {
    TridendComodule,
    PostHomLieComodule,
}

impl ComoduleKind {
    pub const ALL: [ComoduleKind; 2] = [ComoduleKind::TridendComodule, ComoduleKind::PostHomLieComodule];

    pub fn id(&self) -> &'static str {
        match self {
            ComoduleKind::TridendComodule => "TridendComodule",
            ComoduleKind::PostHomLieComodule => "PostHomLieComodule",
        }
    }

    pub fn base_kind(&self) -> StructureKind {
        match self {
            ComoduleKind::TridendComodule => StructureKind::HomTridendriform,
            ComoduleKind::PostHomLieComodule => StructureKind::PostHomLie,
        }
    }

    pub fn for_base(kind: StructureKind) -> Option<ComoduleKind> {
        ComoduleKind::ALL.into_iter().find(|k| k.base_kind() == kind)
    }

    pub fn maps(&self) -> &'static [CoactionName] {
        use CoactionName::*;
        match self {
            ComoduleKind::TridendComodule => &[Dm1, D0, D1],
            ComoduleKind::PostHomLieComodule => &[Diamond, Bullet],
        }
    }

    /// The base comap each structure map mirrors in the regular comodule.
    pub fn regular_source(&self, n: CoactionName) -> ComapName {
        match n {
            CoactionName::Dm1 => ComapName::DeltaM1,
            CoactionName::D0 => ComapName::Delta0,
            CoactionName::D1 => ComapName::Delta1,
            CoactionName::Diamond => ComapName::Gamma,
            CoactionName::Bullet => ComapName::Delta,
        }
    }

    pub fn axioms(&self) -> Vec<(&'static str, Role)> {
        use Role::*;
        match self {
            ComoduleKind::TridendComodule => vec![
                ("cc1", Required),
                ("cc2", Required),
                ("cc3", Required),
                ("cc4", Required),
                ("cc5", Required),
                ("cc6", Required),
                ("cc7", Required),
                ("comult-dm1", Multiplicativity),
                ("comult-d0", Multiplicativity),
                ("comult-d1", Multiplicativity),
            ],
            ComoduleKind::PostHomLieComodule => vec![
                ("ma1-diamond", Multiplicativity),
                ("ma1-bullet", Multiplicativity),
                ("ma2", Required),
                ("ma3", Required),
                ("ma4", Required),
            ],
        }
    }
}

impl fmt::Display for ComoduleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ComoduleKind {
    type Err = StructureError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ComoduleKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| StructureError::KindMismatch(format!("unknown comodule kind `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoactionName {
    Dm1,
    D0,
    D1,
    Diamond,
    Bullet,
}

impl CoactionName {
    pub const ALL: [CoactionName; 5] = [
        CoactionName::Dm1,
        CoactionName::D0,
        CoactionName::D1,
        CoactionName::Diamond,
        CoactionName::Bullet,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            CoactionName::Dm1 => "dm1",
            CoactionName::D0 => "d0",
            CoactionName::D1 => "d1",
            CoactionName::Diamond => "diamond",
            CoactionName::Bullet => "bullet",
        }
    }
}

impl FromStr for CoactionName {
    type Err = StructureError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CoactionName::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| StructureError::KindMismatch(format!("unknown structure map `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComodulePackage<F: Field> {
    kind: ComoduleKind,
    base: StructurePackage<F>,
    mspace: Space,
    alpha_m: TensorMap<F>,
    maps: BTreeMap<CoactionName, TensorMap<F>>,
}

/// A module sharing the base's space name gets its own, so files stay unambiguous.
fn distinct_module_space<F: Field>(
    l: &Space,
    alpha_m: TensorMap<F>,
    maps: BTreeMap<CoactionName, TensorMap<F>>,
) -> Result<(TensorMap<F>, BTreeMap<CoactionName, TensorMap<F>>), StructureError> {
    let name = if l.name() == "M" { "N" } else { "M" };
    let m = alpha_m.dom().renamed(name)?;
    let is_old = |s: &Space| s.name() == l.name() && s.dim() == m.dim();
    let am = if alpha_m.cod().iter().all(is_old) { alpha_m.relabel(m.clone(), vec![m.clone()])? } else { alpha_m };
    let mut out = BTreeMap::new();
    for (n, t) in maps {
        let ok = t.cod().len() == 2 && t.cod()[0] == *l && is_old(&t.cod()[1]) && t.dom().dim() == m.dim();
        out.insert(n, if ok { t.relabel(m.clone(), vec![l.clone(), m.clone()])? } else { t });
    }
    Ok((am, out))
}

impl<F: Field> ComodulePackage<F> {
    pub fn new(
        kind: ComoduleKind,
        base: StructurePackage<F>,
        alpha_m: TensorMap<F>,
        maps: BTreeMap<CoactionName, TensorMap<F>>,
    ) -> Result<Self, StructureError> {
        if base.kind() != kind.base_kind() {
            return Err(StructureError::KindMismatch(format!(
                "{kind} needs a {} base, found {}",
                kind.base_kind(),
                base.kind()
            )));
        }
        let l = base.space().clone();
        let (alpha_m, maps) = if alpha_m.dom().name() == l.name() {
            distinct_module_space(&l, alpha_m, maps)?
        } else {
            (alpha_m, maps)
        };
        let m = alpha_m.dom().clone();
        if alpha_m.cod() != [m.clone()] {
            return Err(StructureError::ShapeError(format!("alpha_m must be {m} -> {m}")));
        }
        for n in kind.maps() {
            let t = maps
                .get(n)
                .ok_or_else(|| StructureError::KindMismatch(format!("{kind} requires map {}", n.id())))?;
            if t.dom() != &m || t.cod() != [l.clone(), m.clone()] {
                return Err(StructureError::ShapeError(format!(
                    "map {} must be {m} -> ({l},{m}), found {}",
                    n.id(),
                    t.signature()
                )));
            }
        }
        if let Some(extra) = maps.keys().find(|n| !kind.maps().contains(n)) {
            return Err(StructureError::KindMismatch(format!("{kind} does not take map {}", extra.id())));
        }
        Ok(ComodulePackage {
            kind,
            base,
            mspace: m,
            alpha_m,
            maps,
        })
    }

    pub fn from_parts(
        kind: ComoduleKind,
        base: StructurePackage<F>,
        alpha_m: TensorMap<F>,
        maps: Vec<(CoactionName, TensorMap<F>)>,
    ) -> Result<Self, StructureError> {
        ComodulePackage::new(kind, base, alpha_m, maps.into_iter().collect())
    }

    /// Zero structure maps and identity `α_M`.
    pub fn zero(kind: ComoduleKind, base: StructurePackage<F>, mspace: &Space) -> Result<Self, StructureError> {
        let f = base.field().clone();
        let z = TensorMap::zeros(&f, mspace.clone(), vec![base.space().clone(), mspace.clone()])?;
        let maps = kind.maps().iter().map(|n| (*n, z.clone())).collect();
        ComodulePackage::new(kind, base, TensorMap::identity(&f, mspace), maps)
    }

    pub fn kind(&self) -> ComoduleKind {
        self.kind
    }
    pub fn base(&self) -> &StructurePackage<F> {
        &self.base
    }
    pub fn field(&self) -> &F {
        self.base.field()
    }
    pub fn mspace(&self) -> &Space {
        &self.mspace
    }
    pub fn alpha_m(&self) -> &TensorMap<F> {
        &self.alpha_m
    }
    pub fn maps(&self) -> &BTreeMap<CoactionName, TensorMap<F>> {
        &self.maps
    }
    pub fn map(&self, n: CoactionName) -> &TensorMap<F> {
        self.maps
            .get(&n)
            .unwrap_or_else(|| panic!("{} has no map {}", self.kind, n.id()))
    }

    /// Components owned by the comodule itself (base excluded), canonical order.
    pub fn components(&self) -> Vec<(String, &TensorMap<F>)> {
        let mut out = vec![("alpha_m".to_string(), &self.alpha_m)];
        for (n, m) in &self.maps {
            out.push((n.id().to_string(), m));
        }
        out
    }

    pub fn components_mut(&mut self) -> Vec<&mut TensorMap<F>> {
        let mut out = vec![&mut self.alpha_m];
        out.extend(self.maps.values_mut());
        out
    }

    pub fn nonzero_count(&self) -> usize {
        self.components().iter().map(|(_, m)| m.nonzero_count()).sum()
    }

    fn with_maps(
        &self,
        base: StructurePackage<F>,
        alpha_m: TensorMap<F>,
        f: impl Fn(&TensorMap<F>) -> Result<TensorMap<F>, crate::tensor::TensorError>,
    ) -> R<Self> {
        let mut maps = BTreeMap::new();
        for (n, m) in &self.maps {
            maps.insert(*n, f(m)?);
        }
        Ok(ComodulePackage::new(self.kind, base, alpha_m, maps)?)
    }
}

/// Reading of the last term of `ma3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ma3Reading {
    /// `(τ⊗I)(α⊗Δ•)Δ⋄`, the form used in the regular-comodule argument.
    #[default]
    Proof,
    /// `(τ⊗I)(α⊗Δ•)Δ•` as printed in the definition.
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ComoduleCheckOptions {
    pub ma3: Ma3Reading,
}

struct MCtx<'a, F: Field> {
    c: &'a ComodulePackage<F>,
}

impl<'a, F: Field> MCtx<'a, F> {
    fn a(&self) -> Leg<'a, F> {
        Leg::Map(self.c.base.alpha())
    }
    fn am(&self) -> Leg<'a, F> {
        Leg::Map(&self.c.alpha_m)
    }
    fn base(&self, n: ComapName) -> Leg<'a, F> {
        Leg::Map(self.c.base.comap(n))
    }
    fn m(&self, n: CoactionName) -> &'a TensorMap<F> {
        self.c.map(n)
    }
    fn lc(&self, terms: &[(i64, &TensorMap<F>)]) -> R<TensorMap<F>> {
        let f = self.c.field();
        let t: Vec<_> = terms.iter().map(|(k, m)| (f.from_i64(*k), *m)).collect();
        Ok(lincomb(&t)?)
    }
    fn t12(&self, t: &TensorMap<F>) -> R<TensorMap<F>> {
        Ok(permute(&LegPermutation::tau12(), t)?)
    }
    /// `D∘α_M − (α⊗α_M)∘D`.
    fn comult(&self, d: &TensorMap<F>) -> R<TensorMap<F>> {
        let l = precompose(d, &self.c.alpha_m)?;
        let r = compose_legs(self.a(), self.am(), d)?;
        self.lc(&[(1, &l), (-1, &r)])
    }

    fn cc(&self, which: usize) -> R<TensorMap<F>> {
        use CoactionName::*;
        use ComapName::*;
        let (a, am) = (self.a(), self.am());
        let (dm1, d0, d1) = (self.m(Dm1), self.m(D0), self.m(D1));
        let msum = self.lc(&[(1, dm1), (1, d0), (1, d1)])?;
        let b = self.c.base.comap(DeltaM1).clone();
        let bsum = self.lc(&[(1, &b), (1, self.c.base.comap(Delta0)), (1, self.c.base.comap(Delta1))])?;
        let (l, r) = match which {
            1 => (compose_legs(self.base(DeltaM1), am, dm1)?, compose_legs(a, Leg::Map(&msum), dm1)?),
            2 => (compose_legs(self.base(Delta1), am, dm1)?, compose_legs(a, Leg::Map(dm1), d1)?),
            3 => (compose_legs(a, Leg::Map(d1), d1)?, compose_legs(Leg::Map(&bsum), am, d1)?),
            4 => (compose_legs(self.base(DeltaM1), am, d0)?, compose_legs(a, Leg::Map(d1), d0)?),
            5 => (compose_legs(self.base(Delta1), am, d0)?, compose_legs(a, Leg::Map(d0), d1)?),
            6 => (compose_legs(self.base(Delta0), am, dm1)?, compose_legs(a, Leg::Map(dm1), d0)?),
            7 => (compose_legs(self.base(Delta0), am, d0)?, compose_legs(a, Leg::Map(d0), d0)?),
            _ => unreachable!("comodule axiom index"),
        };
        self.lc(&[(1, &l), (-1, &r)])
    }

    /// `(γ⊗α_M)Δ⋄ − (α⊗Δ⋄)Δ⋄ + (τ⊗I)(α⊗Δ⋄)Δ⋄`.
    fn ma2(&self) -> R<TensorMap<F>> {
        let dm = self.m(CoactionName::Diamond);
        let l = compose_legs(self.base(ComapName::Gamma), self.am(), dm)?;
        let r = compose_legs(self.a(), Leg::Map(dm), dm)?;
        let tr = self.t12(&r)?;
        self.lc(&[(1, &l), (-1, &r), (1, &tr)])
    }

    /// `(Δ·⊗α_M)Δ⋄ − (α⊗Δ⋄)Δ• + (τ⊗I)(α⊗Δ•)X` with `X` per the reading.
    fn ma3(&self, reading: Ma3Reading) -> R<TensorMap<F>> {
        let dm = self.m(CoactionName::Diamond);
        let bl = self.m(CoactionName::Bullet);
        let l = compose_legs(self.base(ComapName::Delta), self.am(), dm)?;
        let r1 = compose_legs(self.a(), Leg::Map(dm), bl)?;
        let inner = match reading {
            Ma3Reading::Proof => dm,
            Ma3Reading::Printed => bl,
        };
        let r2 = self.t12(&compose_legs(self.a(), Leg::Map(bl), inner)?)?;
        self.lc(&[(1, &l), (-1, &r1), (1, &r2)])
    }

    /// `(γ⊗α_M)Δ• − (1−(τ⊗I))(α⊗Δ•)Δ• − ((τ⊗I)−1)(Δ·⊗α_M)Δ•`.
    fn ma4(&self) -> R<TensorMap<F>> {
        let bl = self.m(CoactionName::Bullet);
        let l = compose_legs(self.base(ComapName::Gamma), self.am(), bl)?;
        let ab = compose_legs(self.a(), Leg::Map(bl), bl)?;
        let da = compose_legs(self.base(ComapName::Delta), self.am(), bl)?;
        let tab = self.t12(&ab)?;
        let tda = self.t12(&da)?;
        self.lc(&[(1, &l), (-1, &ab), (1, &tab), (-1, &tda), (1, &da)])
    }
}

pub fn comodule_residual_with<F: Field>(
    c: &ComodulePackage<F>,
    axiom: &str,
    opts: &ComoduleCheckOptions,
) -> R<TensorMap<F>> {
    if !c.kind.axioms().iter().any(|(id, _)| *id == axiom) {
        return Err(StructureError::UnknownAxiom {
            kind: c.kind.id().to_string(),
            axiom: axiom.to_string(),
        }
        .into());
    }
    let cx = MCtx { c };
    if let Some(n) = axiom.strip_prefix("cc").and_then(|d| d.parse::<usize>().ok()) {
        return cx.cc(n);
    }
    if let Some(rest) = axiom.strip_prefix("comult-").or_else(|| axiom.strip_prefix("ma1-")) {
        let name: CoactionName = rest.parse()?;
        return cx.comult(c.map(name));
    }
    match axiom {
        "ma2" => cx.ma2(),
        "ma3" => cx.ma3(opts.ma3),
        "ma4" => cx.ma4(),
        _ => unreachable!("comodule axiom table and dispatch disagree on `{axiom}`"),
    }
}

pub fn comodule_residual<F: Field>(c: &ComodulePackage<F>, axiom: &str) -> R<TensorMap<F>> {
    comodule_residual_with(c, axiom, &ComoduleCheckOptions::default())
}

pub fn check_comodule<F: Field>(
    c: &ComodulePackage<F>,
    axioms: Option<&[&str]>,
    opts: &ComoduleCheckOptions,
) -> R<CheckReport<F>> {
    let table = c.kind.axioms();
    if let Some(sel) = axioms {
        if let Some(bad) = sel.iter().find(|a| !table.iter().any(|(id, _)| id == *a)) {
            return Err(StructureError::UnknownAxiom {
                kind: c.kind.id().to_string(),
                axiom: bad.to_string(),
            }
            .into());
        }
    }
    let mut entries = Vec::new();
    for (id, role) in table {
        if axioms.is_some_and(|s| !s.contains(&id)) {
            continue;
        }
        entries.push(AxiomEntry::new(id, role, comodule_residual_with(c, id, opts)?));
    }
    let mut notes = Vec::new();
    if c.kind == ComoduleKind::PostHomLieComodule {
        notes.push("ma1 applied as (alpha⊗alpha_m) on L⊗M".to_string());
        if opts.ma3 == Ma3Reading::Printed {
            notes.push("ma3 read with bullet as the inner map of its last term".to_string());
        }
    }
    Ok(CheckReport {
        subject: c.kind.id().to_string(),
        entries,
        notes,
    })
}

fn require_mult<F: Field>(base: &StructurePackage<F>) -> R<()> {
    match multiplicativity_violations(base)?.into_iter().next() {
        Some(v) => Err(ComoduleError::NotMultiplicative(v)),
        None => Ok(()),
    }
}

/// `M₁⊕M₂` with block-diagonal maps; the basis of `M₂` follows that of `M₁`.
pub fn direct_sum<F: Field>(a: &ComodulePackage<F>, b: &ComodulePackage<F>) -> R<ComodulePackage<F>> {
    if a.kind != b.kind || a.base != b.base {
        return Err(ComoduleError::BaseMismatch);
    }
    let f = a.field();
    let (d1, d2) = (a.mspace.dim(), b.mspace.dim());
    let m = Space::new(a.mspace.name(), d1 + d2)?;
    let l = a.base.space().clone();
    let alpha_m = TensorMap::from_fn(f, m.clone(), vec![m.clone()], |i, js| {
        let j = js[0];
        match (i < d1, j < d1) {
            (true, true) => a.alpha_m.get(i, &[j]).clone(),
            (false, false) => b.alpha_m.get(i - d1, &[j - d1]).clone(),
            _ => f.zero(),
        }
    })?;
    let mut maps = BTreeMap::new();
    for n in a.kind.maps() {
        let (ma, mb) = (a.map(*n), b.map(*n));
        let t = TensorMap::from_fn(f, m.clone(), vec![l.clone(), m.clone()], |i, js| {
            let (x, j) = (js[0], js[1]);
            match (i < d1, j < d1) {
                (true, true) => ma.get(i, &[x, j]).clone(),
                (false, false) => mb.get(i - d1, &[x, j - d1]).clone(),
                _ => f.zero(),
            }
        })?;
        maps.insert(*n, t);
    }
    Ok(ComodulePackage::new(a.kind, a.base.clone(), alpha_m, maps)?)
}

/// The coalgebra as a comodule over itself.
pub fn self_comodule<F: Field>(base: &StructurePackage<F>) -> R<ComodulePackage<F>> {
    let kind = ComoduleKind::for_base(base.kind())
        .ok_or_else(|| StructureError::KindMismatch(format!("no comodule kind over {}", base.kind())))?;
    let maps = kind
        .maps()
        .iter()
        .map(|n| (*n, base.comap(kind.regular_source(*n)).clone()))
        .collect();
    Ok(ComodulePackage::new(kind, base.clone(), base.alpha().clone(), maps)?)
}

/// `(L, (α^k⊗I)γ, (α^k⊗I)Δ, α)` over a multiplicative post-Hom-Lie `L`.
pub fn regular_k<F: Field>(base: &StructurePackage<F>, k: u64) -> R<ComodulePackage<F>> {
    base.require_kind(StructureKind::PostHomLie)?;
    require_mult(base)?;
    let ak = matrix_power(base.alpha(), k)?;
    let sp = base.space();
    let g = compose_legs(Leg::Map(&ak), Leg::Id(sp), base.comap(ComapName::Gamma))?;
    let d = compose_legs(Leg::Map(&ak), Leg::Id(sp), base.comap(ComapName::Delta))?;
    Ok(ComodulePackage::from_parts(
        ComoduleKind::PostHomLieComodule,
        base.clone(),
        base.alpha().clone(),
        vec![(CoactionName::Diamond, g), (CoactionName::Bullet, d)],
    )?)
}

/// `M₁⊗M₂` on the lexicographic basis, `α_M = α_{M₁}⊗α_{M₂}`.
pub fn tensor_k<F: Field>(a: &ComodulePackage<F>, b: &ComodulePackage<F>, k: u64) -> R<ComodulePackage<F>> {
    if a.kind != b.kind || a.base != b.base {
        return Err(ComoduleError::BaseMismatch);
    }
    a.base.require_kind(StructureKind::PostHomLie)?;
    require_mult(&a.base)?;
    let f = a.field();
    let (d1, d2) = (a.mspace.dim(), b.mspace.dim());
    let m = Space::new(a.mspace.name(), d1 * d2)?;
    let l = a.base.space().clone();
    let ak = matrix_power(a.base.alpha(), k)?;
    let alpha_m = TensorMap::from_fn(f, m.clone(), vec![m.clone()], |i, js| {
        let j = js[0];
        a.alpha_m.get(i / d2, &[j / d2]).clone() * b.alpha_m.get(i % d2, &[j % d2]).clone()
    })?;
    let mut maps = BTreeMap::new();
    for n in a.kind.maps() {
        let t1 = compose_legs(Leg::Map(&ak), Leg::Id(&a.mspace), a.map(*n))?;
        let t2 = compose_legs(Leg::Map(&ak), Leg::Id(&b.mspace), b.map(*n))?;
        let mut t = TensorMap::zeros(f, m.clone(), vec![l.clone(), m.clone()])?;
        for i1 in 0..d1 {
            for i2 in 0..d2 {
                let i = i1 * d2 + i2;
                for x in 0..l.dim() {
                    for j1 in 0..d1 {
                        for j2 in 0..d2 {
                            let v = t1.get(i1, &[x, j1]).clone() * b.alpha_m.get(i2, &[j2]).clone()
                                + a.alpha_m.get(i1, &[j1]).clone() * t2.get(i2, &[x, j2]).clone();
                            let j = j1 * d2 + j2;
                            let cur = t.get(i, &[x, j]).clone();
                            t.set(i, &[x, j], cur + v);
                        }
                    }
                }
            }
        }
        maps.insert(*n, t);
    }
    Ok(ComodulePackage::new(a.kind, a.base.clone(), alpha_m, maps)?)
}

/// `D ↦ (αⁿ⊗Id_M)∘D`, base and `α_M` unchanged.
pub fn twist_n0<F: Field>(c: &ComodulePackage<F>, n: u64) -> R<ComodulePackage<F>> {
    let an = matrix_power(c.base.alpha(), n)?;
    let m = c.mspace.clone();
    c.with_maps(c.base.clone(), c.alpha_m.clone(), |d| compose_legs(Leg::Map(&an), Leg::Id(&m), d))
}

/// Which printed form of the `(0,k)` twist to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroKVariant {
    /// Maps `∘α_M^{2^k}`, `α_M^{2^k}`, base `(m∘α^{2^k−1}, α^{2^k})`.
    Theorem,
    /// Every exponent `2^k − 1`, base twist map `α^{2^k−1}`.
    Remark,
    /// Maps `∘α_M^{2^k−1}`, `α_M^{2^k}`, base `(m∘α^{2^k−1}, α^{2^k})`.
    Consistent,
}

impl ZeroKVariant {
    pub const ALL: [ZeroKVariant; 3] = [ZeroKVariant::Theorem, ZeroKVariant::Remark, ZeroKVariant::Consistent];

    pub fn id(&self) -> &'static str {
        match self {
            ZeroKVariant::Theorem => "theorem",
            ZeroKVariant::Remark => "remark",
            ZeroKVariant::Consistent => "consistent",
        }
    }
}

impl FromStr for ZeroKVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ZeroKVariant::ALL
            .into_iter()
            .find(|v| v.id() == s)
            .ok_or_else(|| format!("unknown variant `{s}`"))
    }
}

fn pow2(k: u32) -> R<u64> {
    if k > 20 {
        return Err(ComoduleError::ExponentOverflow(k));
    }
    Ok(1u64 << k)
}

/// Base coalgebra `(m∘α^e, α^t)`, not re-validated.
fn twisted_base<F: Field>(base: &StructurePackage<F>, e: u64, t: u64) -> R<StructurePackage<F>> {
    let ae = matrix_power(base.alpha(), e)?;
    let mut comaps = BTreeMap::new();
    for (n, m) in base.comaps() {
        comaps.insert(*n, precompose(m, &ae)?);
    }
    Ok(StructurePackage::new(base.kind(), matrix_power(base.alpha(), t)?, comaps, None)?)
}

pub fn twist_0k<F: Field>(c: &ComodulePackage<F>, k: u32, variant: ZeroKVariant) -> R<ComodulePackage<F>> {
    let p = pow2(k)?;
    let (map_e, am_e, base_t) = match variant {
        ZeroKVariant::Theorem => (p, p, p),
        ZeroKVariant::Remark => (p - 1, p - 1, p - 1),
        ZeroKVariant::Consistent => (p - 1, p, p),
    };
    let base = twisted_base(&c.base, p - 1, base_t)?;
    let am_pow = matrix_power(&c.alpha_m, map_e)?;
    c.with_maps(base, matrix_power(&c.alpha_m, am_e)?, |d| precompose(d, &am_pow))
}

/// `D ↦ (αⁿ⊗Id_M)∘D∘α_M^{2^k}`; base and `α_M` unchanged.
pub fn twist_nk<F: Field>(c: &ComodulePackage<F>, n: u64, k: u32) -> R<ComodulePackage<F>> {
    let an = matrix_power(c.base.alpha(), n)?;
    let amp = matrix_power(&c.alpha_m, pow2(k)?)?;
    let m = c.mspace.clone();
    c.with_maps(c.base.clone(), c.alpha_m.clone(), |d| {
        compose_legs(Leg::Map(&an), Leg::Id(&m), &precompose(d, &amp)?)
    })
}

/// Equations among the `β_M` conditions that fail, by name.
pub fn equivariance_violations<F: Field>(
    c: &ComodulePackage<F>,
    beta: &TensorMap<F>,
    beta_m: &TensorMap<F>,
) -> R<Vec<String>> {
    let mut bad: Vec<String> = endomorphism_violations(&c.base, beta)?;
    if matmul(&c.alpha_m, beta_m)? != matmul(beta_m, &c.alpha_m)? {
        bad.push("alpha_m∘beta_m = beta_m∘alpha_m".into());
    }
    for (n, d) in &c.maps {
        if precompose(d, beta_m)? != compose_legs(Leg::Map(beta), Leg::Map(beta_m), d)? {
            bad.push(format!("{}∘beta_m = (beta⊗beta_m)∘{}", n.id(), n.id()));
        }
    }
    Ok(bad)
}

/// `D ↦ (β⊗Id_M)∘D∘β_M`, `α_M ↦ α_M∘β_M`, base Yau-twisted by `β`.
pub fn twist_beta<F: Field>(
    c: &ComodulePackage<F>,
    beta: &TensorMap<F>,
    beta_m: &TensorMap<F>,
) -> R<ComodulePackage<F>> {
    if beta_m.dom() != &c.mspace || beta_m.cod() != [c.mspace.clone()] {
        return Err(StructureError::ShapeError(format!("beta_m must be an endomorphism of {}", c.mspace)).into());
    }
    if let Some(v) = equivariance_violations(c, beta, beta_m)?.into_iter().next() {
        return Err(ComoduleError::NotEquivariant(v));
    }
    let base = yau_twist(&c.base, beta)?;
    let m = c.mspace.clone();
    c.with_maps(base, matmul(&c.alpha_m, beta_m)?, |d| {
        compose_legs(Leg::Map(beta), Leg::Id(&m), &precompose(d, beta_m)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn zero_post(f: &PrimeField) -> StructurePackage<PrimeField> {
        StructurePackage::zero(StructureKind::PostHomLie, f, &Space::new("L", 2).unwrap())
    }

    #[test]
    fn zero_comodule_passes() {
        let f = PrimeField::new(5).unwrap();
        for kind in ComoduleKind::ALL {
            let base = StructurePackage::zero(kind.base_kind(), &f, &Space::new("L", 2).unwrap());
            let c = ComodulePackage::zero(kind, base, &Space::new("M", 2).unwrap()).unwrap();
            let r = check_comodule(&c, None, &ComoduleCheckOptions::default()).unwrap();
            assert!(r.passes_strict(), "{}", r.render());
        }
    }

    #[test]
    fn exponent_guard() {
        let f = PrimeField::new(5).unwrap();
        let c = ComodulePackage::zero(ComoduleKind::PostHomLieComodule, zero_post(&f), &Space::new("M", 1).unwrap())
            .unwrap();
        assert!(matches!(
            twist_0k(&c, 21, ZeroKVariant::Theorem),
            Err(ComoduleError::ExponentOverflow(21))
        ));
        assert_eq!(twist_0k(&c, 0, ZeroKVariant::Consistent).unwrap(), c);
    }

    #[test]
    fn direct_sum_dimension() {
        let f = PrimeField::new(5).unwrap();
        let a = ComodulePackage::zero(ComoduleKind::PostHomLieComodule, zero_post(&f), &Space::new("M", 1).unwrap())
            .unwrap();
        let b = ComodulePackage::zero(ComoduleKind::PostHomLieComodule, zero_post(&f), &Space::new("M", 2).unwrap())
            .unwrap();
        assert_eq!(direct_sum(&a, &b).unwrap().mspace().dim(), 3);
        assert_eq!(tensor_k(&a, &b, 1).unwrap().mspace().dim(), 2);
    }
}
