//! Structure packages and their axiom checker.

mod algebra;
mod axioms;
mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::field::Field;
use crate::tensor::{permute, LegPermutation, Space, TensorError, TensorMap};

pub use algebra::{check_algebra, dualize_algebra, dualize_coalgebra, AlgebraPackage, ProductName, ALGEBRA_KIND};
pub use axioms::{axiom_residual, check_structure, CheckOptions, EpsilonReading};
pub use report::{render_support, AxiomEntry, CheckReport, Role};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("unknown axiom `{axiom}` for {kind}")]
    UnknownAxiom { kind: String, axiom: String },
    #[error("characteristic conflict: {0}")]
    CharacteristicConflict(String),
    #[error("shape error: {0}")]
    ShapeError(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureKind {
    HomCoassoc,
    HomCoassocRB,
    HomLie,
    HomLieRB,
    HomPreLie,
    HomDendriform,
    HomTridendriform,
    CoCommHomTridendriform,
    PostHomLie,
    HomPoisson,
    PostHomPoisson,
}

impl StructureKind {
    pub const ALL: [StructureKind; 11] = [
        StructureKind::HomCoassoc,
        StructureKind::HomCoassocRB,
        StructureKind::HomLie,
        StructureKind::HomLieRB,
        StructureKind::HomPreLie,
        StructureKind::HomDendriform,
        StructureKind::HomTridendriform,
        StructureKind::CoCommHomTridendriform,
        StructureKind::PostHomLie,
        StructureKind::HomPoisson,
        StructureKind::PostHomPoisson,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            StructureKind::HomCoassoc => "HomCoassoc",
            StructureKind::HomCoassocRB => "HomCoassocRB",
            StructureKind::HomLie => "HomLie",
            StructureKind::HomLieRB => "HomLieRB",
            StructureKind::HomPreLie => "HomPreLie",
            StructureKind::HomDendriform => "HomDendriform",
            StructureKind::HomTridendriform => "HomTridendriform",
            StructureKind::CoCommHomTridendriform => "CoCommHomTridendriform",
            StructureKind::PostHomLie => "PostHomLie",
            StructureKind::HomPoisson => "HomPoisson",
            StructureKind::PostHomPoisson => "PostHomPoisson",
        }
    }

    pub fn required_comaps(&self) -> &'static [ComapName] {
        use ComapName::*;
        match self {
            StructureKind::HomCoassoc | StructureKind::HomCoassocRB | StructureKind::HomPreLie => &[Delta],
            StructureKind::HomLie | StructureKind::HomLieRB => &[Gamma],
            StructureKind::HomDendriform => &[DeltaM1, Delta1],
            StructureKind::HomTridendriform => &[DeltaM1, Delta0, Delta1],
            StructureKind::CoCommHomTridendriform => &[Delta, DeltaStar],
            StructureKind::PostHomLie | StructureKind::HomPoisson => &[Gamma, Delta],
            StructureKind::PostHomPoisson => &[Gamma, Delta, DeltaStar, DeltaAst],
        }
    }

    pub fn has_rb(&self) -> bool {
        matches!(self, StructureKind::HomCoassocRB | StructureKind::HomLieRB)
    }

    /// Comaps that must satisfy `m = -τ∘m`.
    pub fn skew_comaps(&self) -> &'static [ComapName] {
        match self {
            StructureKind::HomLie
            | StructureKind::HomLieRB
            | StructureKind::PostHomLie
            | StructureKind::HomPoisson
            | StructureKind::PostHomPoisson => &[ComapName::Gamma],
            _ => &[],
        }
    }

    /// Comaps that must satisfy `m = τ∘m`.
    pub fn cocommutative_comaps(&self) -> &'static [ComapName] {
        match self {
            StructureKind::CoCommHomTridendriform | StructureKind::HomPoisson => &[ComapName::Delta],
            StructureKind::PostHomPoisson => &[ComapName::DeltaAst],
            _ => &[],
        }
    }

    /// Axiom ids checked for this kind, in report order.
    pub fn axioms(&self) -> Vec<(&'static str, Role)> {
        axioms::axiom_table(*self)
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for StructureKind {
    type Err = StructureError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StructureKind::ALL
            .iter()
            .copied()
            .find(|k| k.id() == s)
            .ok_or_else(|| StructureError::KindMismatch(format!("unknown structure kind `{s}`")))
    }
}

/// Named comultiplications. The declaration order is the canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComapName {
    Gamma,
    Delta,
    DeltaM1,
    Delta0,
    Delta1,
    DeltaStar,
    DeltaAst,
}

impl ComapName {
    pub const ALL: [ComapName; 7] = [
        ComapName::Gamma,
        ComapName::Delta,
        ComapName::DeltaM1,
        ComapName::Delta0,
        ComapName::Delta1,
        ComapName::DeltaStar,
        ComapName::DeltaAst,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            ComapName::Gamma => "gamma",
            ComapName::Delta => "delta",
            ComapName::DeltaM1 => "delta_m1",
            ComapName::Delta0 => "delta_0",
            ComapName::Delta1 => "delta_1",
            ComapName::DeltaStar => "delta_star",
            ComapName::DeltaAst => "delta_ast",
        }
    }
}

impl FromStr for ComapName {
    type Err = StructureError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ComapName::ALL
            .iter()
            .copied()
            .find(|c| c.id() == s)
            .ok_or_else(|| StructureError::KindMismatch(format!("unknown comap `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotaBaxter<F: Field> {
    pub operator: TensorMap<F>,
    pub weight: F::Elem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructurePackage<F: Field> {
    kind: StructureKind,
    field: F,
    space: Space,
    alpha: TensorMap<F>,
    comaps: BTreeMap<ComapName, TensorMap<F>>,
    rb: Option<RotaBaxter<F>>,
}

fn check_endo<F: Field>(what: &str, m: &TensorMap<F>, space: &Space) -> Result<(), StructureError> {
    if m.dom() != space || m.cod() != [space.clone()] {
        return Err(StructureError::ShapeError(format!(
            "{what} must be {space} -> {space}, found {}",
            m.signature()
        )));
    }
    Ok(())
}

impl<F: Field> StructurePackage<F> {
    pub fn new(
        kind: StructureKind,
        alpha: TensorMap<F>,
        comaps: BTreeMap<ComapName, TensorMap<F>>,
        rb: Option<RotaBaxter<F>>,
    ) -> Result<Self, StructureError> {
        let space = alpha.dom().clone();
        let field = alpha.field().clone();
        check_endo("alpha", &alpha, &space)?;
        let required = kind.required_comaps();
        for name in required {
            let m = comaps
                .get(name)
                .ok_or_else(|| StructureError::KindMismatch(format!("{kind} requires comap {}", name.id())))?;
            if m.dom() != &space || m.cod() != [space.clone(), space.clone()] {
                return Err(StructureError::ShapeError(format!(
                    "comap {} must be {space} -> ({space},{space}), found {}",
                    name.id(),
                    m.signature()
                )));
            }
        }
        if let Some(extra) = comaps.keys().find(|n| !required.contains(n)) {
            return Err(StructureError::KindMismatch(format!("{kind} does not take comap {}", extra.id())));
        }
        match (&rb, kind.has_rb()) {
            (Some(r), true) => check_endo("rb operator", &r.operator, &space)?,
            (None, false) => {}
            (None, true) => return Err(StructureError::KindMismatch(format!("{kind} requires an rb block"))),
            (Some(_), false) => return Err(StructureError::KindMismatch(format!("{kind} takes no rb block"))),
        }
        Ok(StructurePackage {
            kind,
            field,
            space,
            alpha,
            comaps,
            rb,
        })
    }

    /// Identity twist, zero comaps, zero RB operator of weight 0.
    pub fn zero(kind: StructureKind, field: &F, space: &Space) -> Self {
        let z2 = TensorMap::zeros(field, space.clone(), vec![space.clone(), space.clone()]).expect("arity 2");
        let comaps = kind.required_comaps().iter().map(|n| (*n, z2.clone())).collect();
        let rb = kind.has_rb().then(|| RotaBaxter {
            operator: TensorMap::zeros(field, space.clone(), vec![space.clone()]).expect("arity 1"),
            weight: field.zero(),
        });
        StructurePackage::new(kind, TensorMap::identity(field, space), comaps, rb).expect("zero package")
    }

    /// Build from `(name, map)` pairs.
    pub fn from_parts(
        kind: StructureKind,
        alpha: TensorMap<F>,
        comaps: Vec<(ComapName, TensorMap<F>)>,
        rb: Option<RotaBaxter<F>>,
    ) -> Result<Self, StructureError> {
        StructurePackage::new(kind, alpha, comaps.into_iter().collect(), rb)
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn space(&self) -> &Space {
        &self.space
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
    pub fn alpha(&self) -> &TensorMap<F> {
        &self.alpha
    }
    pub fn comaps(&self) -> &BTreeMap<ComapName, TensorMap<F>> {
        &self.comaps
    }
    pub fn rb(&self) -> Option<&RotaBaxter<F>> {
        self.rb.as_ref()
    }

    pub fn comap(&self, name: ComapName) -> &TensorMap<F> {
        self.comaps
            .get(&name)
            .unwrap_or_else(|| panic!("{} has no comap {}", self.kind, name.id()))
    }

    pub fn with_alpha(&self, alpha: TensorMap<F>) -> Result<Self, StructureError> {
        StructurePackage::new(self.kind, alpha, self.comaps.clone(), self.rb.clone())
    }

    pub fn with_comap(&self, name: ComapName, m: TensorMap<F>) -> Result<Self, StructureError> {
        let mut comaps = self.comaps.clone();
        comaps.insert(name, m);
        StructurePackage::new(self.kind, self.alpha.clone(), comaps, self.rb.clone())
    }

    pub fn with_rb(&self, rb: Option<RotaBaxter<F>>) -> Result<Self, StructureError> {
        StructurePackage::new(self.kind, self.alpha.clone(), self.comaps.clone(), rb)
    }

    /// Same data under a different kind with the given comaps.
    pub fn rekind(
        &self,
        kind: StructureKind,
        comaps: Vec<(ComapName, TensorMap<F>)>,
    ) -> Result<Self, StructureError> {
        let rb = if kind.has_rb() { self.rb.clone() } else { None };
        StructurePackage::from_parts(kind, self.alpha.clone(), comaps, rb)
    }

    pub fn require_kind(&self, kind: StructureKind) -> Result<(), StructureError> {
        if self.kind != kind {
            return Err(StructureError::KindMismatch(format!("expected {kind}, found {}", self.kind)));
        }
        Ok(())
    }

    /// Every component map, in canonical order, with a display name.
    pub fn components(&self) -> Vec<(String, &TensorMap<F>)> {
        let mut out = vec![("alpha".to_string(), &self.alpha)];
        if let Some(r) = &self.rb {
            out.push(("rb".to_string(), &r.operator));
        }
        for (n, m) in &self.comaps {
            out.push((n.id().to_string(), m));
        }
        out
    }

    /// Mutable access to every coefficient in the order of [`Self::components`].
    pub fn components_mut(&mut self) -> Vec<&mut TensorMap<F>> {
        let mut out = vec![&mut self.alpha];
        if let Some(r) = &mut self.rb {
            out.push(&mut r.operator);
        }
        for m in self.comaps.values_mut() {
            out.push(m);
        }
        out
    }

    pub fn nonzero_count(&self) -> usize {
        self.components().iter().map(|(_, m)| m.nonzero_count()).sum()
    }

    /// Transport along the basis change `e_i ↦ P e_i`: every comap `m`
    /// becomes `(P⁻¹⊗P⁻¹)∘m∘P`, every endomorphism `f` becomes `P⁻¹fP`.
    pub fn transport(&self, p: &TensorMap<F>, p_inv: &TensorMap<F>) -> Result<Self, StructureError> {
        use crate::tensor::{compose_pair, matmul, precompose};
        let conj = |f: &TensorMap<F>| -> Result<TensorMap<F>, TensorError> { matmul(p_inv, &matmul(f, p)?) };
        let mut comaps = BTreeMap::new();
        for (n, m) in &self.comaps {
            comaps.insert(*n, compose_pair(p_inv, p_inv, &precompose(m, p)?)?);
        }
        let rb = match &self.rb {
            Some(r) => Some(RotaBaxter {
                operator: conj(&r.operator)?,
                weight: r.weight.clone(),
            }),
            None => None,
        };
        StructurePackage::new(self.kind, conj(&self.alpha)?, comaps, rb)
    }
}

/// Opposite tridendriform coalgebra: `Δ₋₁' = τΔ₁`, `Δ₁' = τΔ₋₁`, `Δ₀' = τΔ₀`.
pub fn opposite_tridend<F: Field>(s: &StructurePackage<F>) -> Result<StructurePackage<F>, StructureError> {
    s.require_kind(StructureKind::HomTridendriform)?;
    let tau = LegPermutation::tau();
    let t = |n| permute(&tau, s.comap(n));
    s.rekind(
        StructureKind::HomTridendriform,
        vec![
            (ComapName::DeltaM1, t(ComapName::Delta1)?),
            (ComapName::Delta0, t(ComapName::Delta0)?),
            (ComapName::Delta1, t(ComapName::DeltaM1)?),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn zero_packages_are_well_formed() {
        let f = PrimeField::new(5).unwrap();
        let c = Space::new("C", 2).unwrap();
        for k in StructureKind::ALL {
            let s = StructurePackage::zero(k, &f, &c);
            assert_eq!(s.comaps().len(), k.required_comaps().len());
            assert_eq!(s.rb().is_some(), k.has_rb());
            assert_eq!(k.id().parse::<StructureKind>().unwrap(), k);
        }
    }

    #[test]
    fn rejects_extra_and_missing_comaps() {
        let f = PrimeField::new(5).unwrap();
        let c = Space::new("C", 1).unwrap();
        let z = TensorMap::zeros(&f, c.clone(), vec![c.clone(), c.clone()]).unwrap();
        let id = TensorMap::identity(&f, &c);
        let r = StructurePackage::from_parts(
            StructureKind::HomCoassoc,
            id.clone(),
            vec![(ComapName::Delta, z.clone()), (ComapName::Gamma, z.clone())],
            None,
        );
        assert!(matches!(r, Err(StructureError::KindMismatch(_))));
        let r = StructurePackage::from_parts(StructureKind::PostHomLie, id.clone(), vec![(ComapName::Delta, z)], None);
        assert!(matches!(r, Err(StructureError::KindMismatch(_))));
        let r = StructurePackage::from_parts(StructureKind::HomLieRB, id, vec![], None);
        assert!(r.is_err());
    }
}
