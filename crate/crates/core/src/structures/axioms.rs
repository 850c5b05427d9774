//! Every axiom as a residual tensor, built from `compose_legs`, `permute`
//! and `lincomb`.

use super::{CheckReport, ComapName, Role, StructureError, StructureKind, StructurePackage};
use crate::field::Field;
use crate::structures::report::AxiomEntry;
use crate::tensor::{compose_legs, lincomb, permute, precompose, Leg, LegPermutation, TensorMap};

type R<F> = Result<TensorMap<F>, StructureError>;

/// How the undefined symbols `ε`, `ε²` in the post-Hom-Poisson axioms are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EpsilonReading {
    /// `ε = ξ`, `ε² = ξ²`.
    #[default]
    Xi,
    /// `ε = ξ²`, `ε² = ξ`.
    XiSquared,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CheckOptions {
    /// Treat α as the identity by dropping every α-composition.
    pub elide_alpha: bool,
    pub epsilon: EpsilonReading,
}

pub(crate) fn axiom_table(kind: StructureKind) -> Vec<(&'static str, Role)> {
    use Role::*;
    use StructureKind::*;
    let rb = [("rb-commute", Required), ("rb-weight", Required)];
    let post = [
        ("dplc1", Required),
        ("dplc1-comult", Required),
        ("dplc2", Required),
        ("dplc3", Required),
        ("dplc4", Required),
    ];
    let mut t: Vec<(&'static str, Role)> = match kind {
        HomCoassoc => vec![("coasso", Required), ("multip", Multiplicativity)],
        HomCoassocRB => vec![("coasso", Required), ("multip", Multiplicativity)],
        HomLie | HomLieRB => vec![("skew", Required), ("comult", Multiplicativity), ("cojacobi", Required)],
        HomPreLie => vec![("prelie", Required), ("multip", Multiplicativity)],
        HomDendriform => vec![
            ("c1", Required),
            ("c2", Required),
            ("c3", Required),
            ("multip-delta_m1", Multiplicativity),
            ("multip-delta_1", Multiplicativity),
        ],
        HomTridendriform => {
            let mut v: Vec<_> = ["c1", "c2", "c3", "c4", "c5", "c6", "c7"].iter().map(|c| (*c, Required)).collect();
            v.extend([
                ("multip-delta_m1", Multiplicativity),
                ("multip-delta_0", Multiplicativity),
                ("multip-delta_1", Multiplicativity),
            ]);
            v
        }
        CoCommHomTridendriform => vec![
            ("coasso", Required),
            ("cocomm", Required),
            ("d3", Required),
            ("d4", Required),
            ("multip-delta", Multiplicativity),
            ("multip-delta_star", Multiplicativity),
        ],
        PostHomLie => {
            let mut v = post.to_vec();
            v.push(("multip-delta", Multiplicativity));
            v
        }
        HomPoisson => vec![
            ("skew", Required),
            ("cojacobi", Required),
            ("coasso", Required),
            ("cocomm", Required),
            ("p1", Required),
            ("comult", Multiplicativity),
            ("multip", Multiplicativity),
        ],
        PostHomPoisson => {
            let mut v = post.to_vec();
            v.extend([
                ("coasso", Required),
                ("cocomm", Required),
                ("d3", Required),
                ("d4", Required),
                ("p1", Required),
                ("p2", Required),
                ("p3", Required),
                ("p4", Required),
                ("p5", Required),
                ("multip-delta", Multiplicativity),
                ("multip-delta_star", Multiplicativity),
                ("multip-delta_ast", Multiplicativity),
            ]);
            v
        }
    };
    if kind.has_rb() {
        t.extend(rb);
    }
    t
}

pub(crate) struct Ctx<'a, F: Field> {
    pub alpha: &'a TensorMap<F>,
    pub elide: bool,
    pub eps: EpsilonReading,
}

impl<'a, F: Field> Ctx<'a, F> {
    pub fn a(&self) -> Leg<'a, F> {
        if self.elide {
            Leg::Id(self.alpha.dom())
        } else {
            Leg::Map(self.alpha)
        }
    }
    pub fn id(&self) -> Leg<'a, F> {
        Leg::Id(self.alpha.dom())
    }
    pub fn c<'b>(&self, l1: Leg<'b, F>, l2: Leg<'b, F>, d: &TensorMap<F>) -> R<F> {
        Ok(compose_legs(l1, l2, d)?)
    }
    pub fn p(&self, perm: &LegPermutation, t: &TensorMap<F>) -> R<F> {
        Ok(permute(perm, t)?)
    }
    /// `d∘α`, or `d` when α is elided.
    pub fn pre_alpha(&self, d: &TensorMap<F>) -> R<F> {
        if self.elide {
            Ok(d.clone())
        } else {
            Ok(precompose(d, self.alpha)?)
        }
    }
    pub fn lc(&self, terms: &[(i64, &TensorMap<F>)]) -> R<F> {
        let f = self.alpha.field();
        let t: Vec<_> = terms.iter().map(|(c, m)| (f.from_i64(*c), *m)).collect();
        Ok(lincomb(&t)?)
    }
    pub fn eps(&self) -> LegPermutation {
        match self.eps {
            EpsilonReading::Xi => LegPermutation::xi(),
            EpsilonReading::XiSquared => LegPermutation::xi2(),
        }
    }
    pub fn eps2(&self) -> LegPermutation {
        match self.eps {
            EpsilonReading::Xi => LegPermutation::xi2(),
            EpsilonReading::XiSquared => LegPermutation::xi(),
        }
    }

    /// `(α⊗Δ)∘Δ − (Δ⊗α)∘Δ`.
    pub fn coasso(&self, d: &TensorMap<F>) -> R<F> {
        let l = self.c(self.a(), Leg::Map(d), d)?;
        let r = self.c(Leg::Map(d), self.a(), d)?;
        self.lc(&[(1, &l), (-1, &r)])
    }

    /// `d∘α − (α⊗α)∘d`.
    pub fn multip(&self, d: &TensorMap<F>) -> R<F> {
        let l = self.pre_alpha(d)?;
        let r = self.c(self.a(), self.a(), d)?;
        self.lc(&[(1, &l), (-1, &r)])
    }

    /// `g + τ∘g`.
    pub fn skew(&self, g: &TensorMap<F>) -> R<F> {
        let t = self.p(&LegPermutation::tau(), g)?;
        self.lc(&[(1, g), (1, &t)])
    }

    /// `d − τ∘d`.
    pub fn cocomm(&self, d: &TensorMap<F>) -> R<F> {
        let t = self.p(&LegPermutation::tau(), d)?;
        self.lc(&[(1, d), (-1, &t)])
    }

    /// `(1+ξ+ξ²)∘(α⊗g)∘g`.
    pub fn cojacobi(&self, g: &TensorMap<F>) -> R<F> {
        let t = self.c(self.a(), Leg::Map(g), g)?;
        let t1 = self.p(&LegPermutation::xi(), &t)?;
        let t2 = self.p(&LegPermutation::xi2(), &t)?;
        self.lc(&[(1, &t), (1, &t1), (1, &t2)])
    }

    pub fn prelie(&self, d: &TensorMap<F>) -> R<F> {
        let l = self.c(Leg::Map(d), self.a(), d)?;
        let r = self.c(self.a(), Leg::Map(d), d)?;
        let c = self.lc(&[(1, &l), (-1, &r)])?;
        let tc = self.p(&LegPermutation::tau12(), &c)?;
        self.lc(&[(1, &c), (-1, &tc)])
    }

    /// Tridendriform axioms `c1..c7` for `(Δ₋₁, Δ₀, Δ₁)`.
    pub fn tridend(&self, which: usize, m1: &TensorMap<F>, z: &TensorMap<F>, p1: &TensorMap<F>) -> R<F> {
        let (a, m) = (self.a(), |t| Leg::Map(t));
        let sum = self.lc(&[(1, m1), (1, z), (1, p1)])?;
        let (l, r) = match which {
            1 => (self.c(m(m1), a, m1)?, self.c(a, m(&sum), m1)?),
            2 => (self.c(m(p1), a, m1)?, self.c(a, m(m1), p1)?),
            3 => (self.c(a, m(p1), p1)?, self.c(m(&sum), a, p1)?),
            4 => (self.c(m(m1), a, z)?, self.c(a, m(p1), z)?),
            5 => (self.c(m(p1), a, z)?, self.c(a, m(z), p1)?),
            6 => (self.c(m(z), a, m1)?, self.c(a, m(m1), z)?),
            7 => (self.c(m(z), a, z)?, self.c(a, m(z), z)?),
            _ => unreachable!("tridendriform axiom index"),
        };
        self.lc(&[(1, &l), (-1, &r)])
    }

    /// `(α⊗γ)Δ − (Δ⊗α)γ − (τ⊗I)(α⊗Δ)γ`.
    pub fn dplc3(&self, g: &TensorMap<F>, d: &TensorMap<F>) -> R<F> {
        let t1 = self.c(self.a(), Leg::Map(g), d)?;
        let t2 = self.c(Leg::Map(d), self.a(), g)?;
        let t3 = self.p(&LegPermutation::tau12(), &self.c(self.a(), Leg::Map(d), g)?)?;
        self.lc(&[(1, &t1), (-1, &t2), (-1, &t3)])
    }

    /// `(Δ⊗α)Δ − (α⊗Δ)Δ − (τ⊗I)(Δ⊗α)Δ + (τ⊗I)(α⊗Δ)Δ + (γ⊗α)Δ`.
    pub fn dplc4(&self, g: &TensorMap<F>, d: &TensorMap<F>) -> R<F> {
        let t = LegPermutation::tau12();
        let da = self.c(Leg::Map(d), self.a(), d)?;
        let ad = self.c(self.a(), Leg::Map(d), d)?;
        let tda = self.p(&t, &da)?;
        let tad = self.p(&t, &ad)?;
        let ga = self.c(Leg::Map(g), self.a(), d)?;
        self.lc(&[(1, &da), (-1, &ad), (-1, &tda), (1, &tad), (1, &ga)])
    }

    /// `((S + τS + D)⊗α)S − (α⊗S)S`.
    pub fn d3(&self, s: &TensorMap<F>, d: &TensorMap<F>) -> R<F> {
        let ts = self.p(&LegPermutation::tau(), s)?;
        let sum = self.lc(&[(1, s), (1, &ts), (1, d)])?;
        let l = self.c(Leg::Map(&sum), self.a(), s)?;
        let r = self.c(self.a(), Leg::Map(s), s)?;
        self.lc(&[(1, &l), (-1, &r)])
    }

    /// `(S⊗α)D − (α⊗D)S`.
    pub fn d4(&self, s: &TensorMap<F>, d: &TensorMap<F>) -> R<F> {
        let l = self.c(Leg::Map(s), self.a(), d)?;
        let r = self.c(self.a(), Leg::Map(d), s)?;
        self.lc(&[(1, &l), (-1, &r)])
    }

    /// `(α⊗Δ∗)γ − (γ⊗α)Δ∗ − (τ⊗I)(α⊗γ)Δ∗`.
    pub fn p1(&self, g: &TensorMap<F>, ast: &TensorMap<F>) -> R<F> {
        let l = self.c(self.a(), Leg::Map(ast), g)?;
        let r1 = self.c(Leg::Map(g), self.a(), ast)?;
        let r2 = self.p(&LegPermutation::tau12(), &self.c(self.a(), Leg::Map(g), ast)?)?;
        self.lc(&[(1, &l), (-1, &r1), (-1, &r2)])
    }

    /// `(I⊗τ)(α⊗Δ⋆)γ − ε²(α⊗γ)Δ⋆ + ε(α⊗Δ·)Δ∗`.
    pub fn p2(&self, g: &TensorMap<F>, dot: &TensorMap<F>, star: &TensorMap<F>, ast: &TensorMap<F>) -> R<F> {
        let l = self.p(&LegPermutation::tau23(), &self.c(self.a(), Leg::Map(star), g)?)?;
        let r1 = self.p(&self.eps2(), &self.c(self.a(), Leg::Map(g), star)?)?;
        let r2 = self.p(&self.eps(), &self.c(self.a(), Leg::Map(dot), ast)?)?;
        self.lc(&[(1, &l), (-1, &r1), (1, &r2)])
    }

    /// `(α⊗Δ∗)Δ· − (Δ·⊗α)Δ∗ − (τ⊗I)(α⊗Δ·)Δ∗`.
    pub fn p3(&self, dot: &TensorMap<F>, ast: &TensorMap<F>) -> R<F> {
        let l = self.c(self.a(), Leg::Map(ast), dot)?;
        let r1 = self.c(Leg::Map(dot), self.a(), ast)?;
        let r2 = self.p(&LegPermutation::tau12(), &self.c(self.a(), Leg::Map(dot), ast)?)?;
        self.lc(&[(1, &l), (-1, &r1), (-1, &r2)])
    }

    /// `ε(Δ⋆⊗α)Δ· + ε²(I⊗τ)(Δ⋆⊗α)Δ· + ε(Δ∗⊗α)Δ· − (Δ·⊗α)Δ∗ − (τ⊗I)(α⊗Δ·)Δ∗`.
    pub fn p4(&self, dot: &TensorMap<F>, star: &TensorMap<F>, ast: &TensorMap<F>) -> R<F> {
        let sa = self.c(Leg::Map(star), self.a(), dot)?;
        let l1 = self.p(&self.eps(), &sa)?;
        let l2 = self.p(&self.eps2().compose(&LegPermutation::tau23()), &sa)?;
        let l3 = self.p(&self.eps(), &self.c(Leg::Map(ast), self.a(), dot)?)?;
        let r1 = self.c(Leg::Map(dot), self.a(), ast)?;
        let r2 = self.p(&LegPermutation::tau12(), &self.c(self.a(), Leg::Map(dot), ast)?)?;
        self.lc(&[(1, &l1), (1, &l2), (1, &l3), (-1, &r1), (-1, &r2)])
    }

    /// `(I⊗τ)(α⊗Δ⋆)Δ· − ε²(α⊗Δ·)Δ⋆ − (I⊗τ)(Δ·⊗α)Δ⋆ + ε²(Δ·⊗α)Δ⋆ − (I⊗τ)(γ⊗α)Δ⋆`.
    pub fn p5(&self, g: &TensorMap<F>, dot: &TensorMap<F>, star: &TensorMap<F>) -> R<F> {
        let t23 = LegPermutation::tau23();
        let l = self.p(&t23, &self.c(self.a(), Leg::Map(star), dot)?)?;
        let r1 = self.p(&self.eps2(), &self.c(self.a(), Leg::Map(dot), star)?)?;
        let da = self.c(Leg::Map(dot), self.a(), star)?;
        let r2 = self.p(&t23, &da)?;
        let r3 = self.p(&self.eps2(), &da)?;
        let r4 = self.p(&t23, &self.c(Leg::Map(g), self.a(), star)?)?;
        self.lc(&[(1, &l), (-1, &r1), (-1, &r2), (1, &r3), (-1, &r4)])
    }

    /// `R∘α − α∘R`.
    pub fn rb_commute(&self, r: &TensorMap<F>) -> R<F> {
        if self.elide {
            return self.lc(&[(1, r), (-1, r)]);
        }
        let ra = precompose(r, self.alpha)?;
        let ar = precompose(self.alpha, r)?;
        self.lc(&[(1, &ra), (-1, &ar)])
    }

    /// `(R⊗R)∘m − ((R⊗I)∘m + (I⊗R)∘m + λm)∘R`.
    pub fn rb_weight(&self, r: &TensorMap<F>, weight: &F::Elem, m: &TensorMap<F>) -> R<F> {
        let l = self.c(Leg::Map(r), Leg::Map(r), m)?;
        let ri = self.c(Leg::Map(r), self.id(), m)?;
        let ir = self.c(self.id(), Leg::Map(r), m)?;
        let one = self.alpha.field().one();
        let inner = lincomb(&[(one.clone(), &ri), (one, &ir), (weight.clone(), m)])?;
        let rhs = precompose(&inner, r)?;
        self.lc(&[(1, &l), (-1, &rhs)])
    }
}

/// The residual of one axiom.
pub fn axiom_residual<F: Field>(s: &StructurePackage<F>, axiom: &str) -> R<F> {
    axiom_residual_with(s, axiom, &CheckOptions::default())
}

pub(crate) fn axiom_residual_with<F: Field>(s: &StructurePackage<F>, axiom: &str, opts: &CheckOptions) -> R<F> {
    use ComapName::*;
    use StructureKind::*;
    let kind = s.kind();
    if !axiom_table(kind).iter().any(|(id, _)| *id == axiom) {
        return Err(StructureError::UnknownAxiom {
            kind: kind.id().to_string(),
            axiom: axiom.to_string(),
        });
    }
    let cx = Ctx {
        alpha: s.alpha(),
        elide: opts.elide_alpha,
        eps: opts.epsilon,
    };
    let m = |n| s.comap(n);
    let zero = || TensorMap::zeros(s.field(), s.space().clone(), vec![s.space().clone(), s.space().clone()]);
    if let Some(rest) = axiom.strip_prefix("multip-") {
        let name: ComapName = rest.parse()?;
        return cx.multip(m(name));
    }
    if let Some(n) = axiom.strip_prefix('c').and_then(|d| d.parse::<usize>().ok()) {
        return match kind {
            HomDendriform => cx.tridend(n, m(DeltaM1), &zero()?, m(Delta1)),
            _ => cx.tridend(n, m(DeltaM1), m(Delta0), m(Delta1)),
        };
    }
    // The cocommutative coassociative comap and the Δ⋆ partner, per kind.
    let (ccd, star) = match kind {
        PostHomPoisson => (DeltaAst, DeltaStar),
        _ => (Delta, DeltaStar),
    };
    match axiom {
        "coasso" => cx.coasso(m(ccd)),
        "multip" => cx.multip(m(Delta)),
        "cocomm" => cx.cocomm(m(ccd)),
        "skew" | "dplc1" => cx.skew(m(Gamma)),
        "comult" | "dplc1-comult" => cx.multip(m(Gamma)),
        "cojacobi" | "dplc2" => cx.cojacobi(m(Gamma)),
        "prelie" => cx.prelie(m(Delta)),
        "dplc3" => cx.dplc3(m(Gamma), m(Delta)),
        "dplc4" => cx.dplc4(m(Gamma), m(Delta)),
        "d3" => cx.d3(m(star), m(ccd)),
        "d4" => cx.d4(m(star), m(ccd)),
        "p1" => match kind {
            HomPoisson => cx.p1(m(Gamma), m(Delta)),
            _ => cx.p1(m(Gamma), m(DeltaAst)),
        },
        "p2" => cx.p2(m(Gamma), m(Delta), m(DeltaStar), m(DeltaAst)),
        "p3" => cx.p3(m(Delta), m(DeltaAst)),
        "p4" => cx.p4(m(Delta), m(DeltaStar), m(DeltaAst)),
        "p5" => cx.p5(m(Gamma), m(Delta), m(DeltaStar)),
        "rb-commute" => cx.rb_commute(&s.rb().expect("rb kind").operator),
        "rb-weight" => {
            let rb = s.rb().expect("rb kind");
            let target = match kind {
                HomLieRB => m(Gamma),
                _ => m(Delta),
            };
            cx.rb_weight(&rb.operator, &rb.weight, target)
        }
        _ => unreachable!("axiom table and dispatch disagree on `{axiom}`"),
    }
}

/// Evaluate every axiom of the package's kind, or only `axioms` if given.
pub fn check_structure<F: Field>(
    s: &StructurePackage<F>,
    axioms: Option<&[&str]>,
    opts: &CheckOptions,
) -> Result<CheckReport<F>, StructureError> {
    let table = axiom_table(s.kind());
    if let Some(sel) = axioms {
        if let Some(bad) = sel.iter().find(|a| !table.iter().any(|(id, _)| id == *a)) {
            return Err(StructureError::UnknownAxiom {
                kind: s.kind().id().to_string(),
                axiom: bad.to_string(),
            });
        }
    }
    let mut entries = Vec::new();
    for (id, role) in table {
        if axioms.is_some_and(|sel| !sel.contains(&id)) {
            continue;
        }
        entries.push(AxiomEntry::new(id, role, axiom_residual_with(s, id, opts)?));
    }
    let mut notes = Vec::new();
    if opts.elide_alpha {
        notes.push("alpha compositions elided".to_string());
    }
    if opts.epsilon == EpsilonReading::XiSquared && s.kind() == StructureKind::PostHomPoisson {
        notes.push("epsilon read as xi^2".to_string());
    }
    Ok(CheckReport {
        subject: s.kind().id().to_string(),
        entries,
        notes,
    })
}
