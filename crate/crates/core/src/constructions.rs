//! Constructors for new structures from old ones.
//!
//! Constructors check structural preconditions (kind, weight, characteristic,
//! equivariance) but never assume the target axioms; callers re-check.

use std::collections::BTreeMap;

use crate::field::{Field, Scalar};
use crate::structures::{
    axiom_residual, CheckOptions, ComapName, RotaBaxter, StructureError, StructureKind, StructurePackage,
};
use crate::tensor::{
    compose_legs, compose_pair, lincomb, matmul, matrix_inverse, matrix_power, permute, precompose, Leg,
    LegPermutation, Space, TensorError, TensorMap,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("not an endomorphism: {0} fails")]
    NotEndomorphism(String),
    #[error("unsupported kind {0}")]
    UnsupportedKind(String),
    #[error("not multiplicative: {0} fails")]
    NotMultiplicative(String),
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("not cocommutative")]
    NotCocommutative,
    #[error("twist map is singular")]
    Singular,
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl From<TensorError> for ConstructionError {
    fn from(e: TensorError) -> Self {
        ConstructionError::Structure(StructureError::Tensor(e))
    }
}

type R<T> = Result<T, ConstructionError>;

fn tau() -> LegPermutation {
    LegPermutation::tau()
}

/// `(1 − τ)∘m`.
pub fn commutator<F: Field>(m: &TensorMap<F>) -> R<TensorMap<F>> {
    Ok(m.sub(&permute(&tau(), m)?)?)
}

/// Equations among `βα = αβ` and `m∘β = (β⊗β)∘m` that fail, by name.
pub fn endomorphism_violations<F: Field>(s: &StructurePackage<F>, beta: &TensorMap<F>) -> R<Vec<String>> {
    let mut bad = Vec::new();
    if matmul(beta, s.alpha())? != matmul(s.alpha(), beta)? {
        bad.push("beta∘alpha = alpha∘beta".to_string());
    }
    for (n, m) in s.comaps() {
        if precompose(m, beta)? != compose_pair(beta, beta, m)? {
            bad.push(format!("{}∘beta = (beta⊗beta)∘{}", n.id(), n.id()));
        }
    }
    if let Some(rb) = s.rb() {
        if matmul(beta, &rb.operator)? != matmul(&rb.operator, beta)? {
            bad.push("beta∘R = R∘beta".to_string());
        }
    }
    Ok(bad)
}

/// Multiplicativity in the sense of `α` being an endomorphism of every comap.
pub fn multiplicativity_violations<F: Field>(s: &StructurePackage<F>) -> R<Vec<String>> {
    Ok(endomorphism_violations(s, s.alpha())?
        .into_iter()
        .map(|e| e.replace("beta", "alpha"))
        .collect())
}

fn require_multiplicative<F: Field>(s: &StructurePackage<F>) -> R<()> {
    let v = multiplicativity_violations(s)?;
    if let Some(first) = v.into_iter().next() {
        return Err(ConstructionError::NotMultiplicative(first));
    }
    Ok(())
}

fn twist_checked<F: Field>(s: &StructurePackage<F>, beta: &TensorMap<F>) -> R<StructurePackage<F>> {
    let mut comaps = BTreeMap::new();
    for (n, m) in s.comaps() {
        comaps.insert(*n, precompose(m, beta)?);
    }
    let alpha = matmul(beta, s.alpha())?;
    Ok(StructurePackage::new(s.kind(), alpha, comaps, s.rb().cloned())?)
}

/// Replace every comap `m` by `m∘β` and `α` by `β∘α`.
pub fn yau_twist<F: Field>(s: &StructurePackage<F>, beta: &TensorMap<F>) -> R<StructurePackage<F>> {
    use StructureKind::*;
    if !matches!(s.kind(), HomCoassoc | HomLie | HomTridendriform | PostHomLie) {
        return Err(ConstructionError::UnsupportedKind(s.kind().id().to_string()));
    }
    if beta.dom() != s.space() || beta.cod() != [s.space().clone()] {
        return Err(StructureError::ShapeError(format!("beta must be an endomorphism of {}", s.space())).into());
    }
    if let Some(first) = endomorphism_violations(s, beta)?.into_iter().next() {
        return Err(ConstructionError::NotEndomorphism(first));
    }
    twist_checked(s, beta)
}

/// Yau twist by `αⁿ`; `n = 0` returns the input.
pub fn power_twist<F: Field>(s: &StructurePackage<F>, n: u64) -> R<StructurePackage<F>> {
    require_multiplicative(s)?;
    if n == 0 {
        return Ok(s.clone());
    }
    yau_twist(s, &matrix_power(s.alpha(), n)?)
}

/// Yau twist by `α⁻¹`, giving twist map the identity.
pub fn inverse_twist<F: Field>(s: &StructurePackage<F>) -> R<StructurePackage<F>> {
    require_multiplicative(s)?;
    let inv = matrix_inverse(s.alpha()).map_err(|e| match e {
        TensorError::Singular => ConstructionError::Singular,
        other => other.into(),
    })?;
    yau_twist(s, &inv)
}

/// `γ = (1 − τ)∘Δ` as a Hom-Lie package.
pub fn commutator_cobracket<F: Field>(s: &StructurePackage<F>) -> R<StructurePackage<F>> {
    s.require_kind(StructureKind::HomCoassoc)?;
    let g = commutator(s.comap(ComapName::Delta))?;
    Ok(s.rekind(StructureKind::HomLie, vec![(ComapName::Gamma, g)])?)
}

/// `Δ = Δ₋₁ + Δ₀ + Δ₁`.
pub fn tridend_sum<F: Field>(s: &StructurePackage<F>) -> R<StructurePackage<F>> {
    s.require_kind(StructureKind::HomTridendriform)?;
    let one = s.field().one();
    let d = lincomb(&[
        (one.clone(), s.comap(ComapName::DeltaM1)),
        (one.clone(), s.comap(ComapName::Delta0)),
        (one, s.comap(ComapName::Delta1)),
    ])?;
    Ok(s.rekind(StructureKind::HomCoassoc, vec![(ComapName::Delta, d)])?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RbTarget {
    Tridend,
    Dendriform,
    PreLie0,
    PreLieM1,
    DendriformB,
}

impl RbTarget {
    pub const ALL: [RbTarget; 5] = [
        RbTarget::Tridend,
        RbTarget::Dendriform,
        RbTarget::PreLie0,
        RbTarget::PreLieM1,
        RbTarget::DendriformB,
    ];
}

fn rb_parts<F: Field>(s: &StructurePackage<F>) -> R<(TensorMap<F>, TensorMap<F>, &RotaBaxter<F>)> {
    s.require_kind(StructureKind::HomCoassocRB)?;
    let rb = s.rb().expect("rb kind");
    let d0 = s.comap(ComapName::Delta);
    let sp = s.space();
    let left = compose_legs(Leg::Id(sp), Leg::Map(&rb.operator), d0)?;
    let right = compose_legs(Leg::Map(&rb.operator), Leg::Id(sp), d0)?;
    Ok((left, right, rb))
}

/// Structures derived from a Hom-coassociative Rota–Baxter coalgebra `(Δ₀, α, R, λ)`.
///
/// `weight` must be given for [`RbTarget::DendriformB`] and equal the input's
/// weight; for the other targets it is optional and checked when present.
pub fn rb_coassoc_derive<F: Field>(
    s: &StructurePackage<F>,
    target: RbTarget,
    weight: Option<&F::Elem>,
) -> R<StructurePackage<F>> {
    let (ir, ri, rb) = rb_parts(s)?;
    let f = s.field();
    let lam = rb.weight.clone();
    let need = |w: F::Elem, what: &str| -> R<()> {
        if lam != w {
            return Err(ConstructionError::WeightMismatch(format!("{what} requires weight {w}, found {lam}")));
        }
        Ok(())
    };
    if let Some(w) = weight {
        need(w.clone(), "caller")?;
    }
    let d0 = s.comap(ComapName::Delta);
    let alpha = s.alpha().clone();
    let one = f.one();
    let build = |kind, comaps: Vec<(ComapName, TensorMap<F>)>| -> R<StructurePackage<F>> {
        Ok(StructurePackage::from_parts(kind, alpha.clone(), comaps, None)?)
    };
    match target {
        RbTarget::Tridend => build(
            StructureKind::HomTridendriform,
            vec![
                (ComapName::DeltaM1, ir),
                (ComapName::Delta0, d0.scale(&lam)),
                (ComapName::Delta1, ri),
            ],
        ),
        RbTarget::Dendriform => build(
            StructureKind::HomDendriform,
            vec![
                (ComapName::DeltaM1, lincomb(&[(one, &ir), (lam.clone(), d0)])?),
                (ComapName::Delta1, ri),
            ],
        ),
        RbTarget::PreLie0 | RbTarget::PreLieM1 => {
            let base = ri.sub(&permute(&tau(), &ir)?)?;
            let d = if target == RbTarget::PreLie0 {
                need(f.zero(), "prelie0")?;
                base
            } else {
                need(-f.one(), "prelie_m1")?;
                base.sub(d0)?
            };
            build(StructureKind::HomPreLie, vec![(ComapName::Delta, d)])
        }
        RbTarget::DendriformB => {
            if weight.is_none() {
                return Err(ConstructionError::WeightMismatch(
                    "dendriform_B needs the weight of its RB check".into(),
                ));
            }
            build(
                StructureKind::HomDendriform,
                vec![(ComapName::DeltaM1, ir.sub(d0)?), (ComapName::Delta1, ri.add(d0)?)],
            )
        }
    }
}

/// `Δ = Δ₁ − τ∘Δ₋₁`.
pub fn dendriform_to_prelie<F: Field>(s: &StructurePackage<F>) -> R<StructurePackage<F>> {
    s.require_kind(StructureKind::HomDendriform)?;
    let d = s.comap(ComapName::Delta1).sub(&permute(&tau(), s.comap(ComapName::DeltaM1))?)?;
    Ok(s.rekind(StructureKind::HomPreLie, vec![(ComapName::Delta, d)])?)
}

fn half<F: Field>(f: &F) -> R<F::Elem> {
    f.from_i64(2).inverse().ok_or_else(|| {
        StructureError::CharacteristicConflict("one half does not exist in characteristic 2".into()).into()
    })
}

/// `(Δ + γ, −γ, α)`.
pub fn tilde<F: Field>(p: &StructurePackage<F>) -> R<StructurePackage<F>> {
    p.require_kind(StructureKind::PostHomLie)?;
    let g = p.comap(ComapName::Gamma);
    let d = p.comap(ComapName::Delta).add(g)?;
    Ok(p.rekind(
        StructureKind::PostHomLie,
        vec![(ComapName::Gamma, g.scale(&-p.field().one())), (ComapName::Delta, d)],
    )?)
}

/// `Δ̃ = Δ + ½γ` and the Hom-Lie candidate `(1 − τ)∘Δ̃`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleOutput<F: Field> {
    pub delta_tilde: TensorMap<F>,
    pub homlie: StructurePackage<F>,
}

pub fn admissible<F: Field>(p: &StructurePackage<F>) -> R<AdmissibleOutput<F>> {
    p.require_kind(StructureKind::PostHomLie)?;
    let h = half(p.field())?;
    let one = p.field().one();
    let dt = lincomb(&[(one, p.comap(ComapName::Delta)), (h, p.comap(ComapName::Gamma))])?;
    let homlie = p.rekind(StructureKind::HomLie, vec![(ComapName::Gamma, commutator(&dt)?)])?;
    Ok(AdmissibleOutput {
        delta_tilde: dt,
        homlie,
    })
}

/// The three tensors of the associator lemma and their comparisons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Le1Report<F: Field> {
    /// `as_Δ̃ − (τ⊗I)∘as_Δ̃`.
    pub l: TensorMap<F>,
    /// `−½(τ⊗I)∘(γ⊗α)∘γ`.
    pub r1: TensorMap<F>,
    /// `−¼(α⊗γ)∘γ`.
    pub r2: TensorMap<F>,
    pub l_eq_r1: bool,
    pub l_eq_r2: bool,
    /// `(I+ξ+ξ²)(as_Δ̃ − (τ⊗I)as_Δ̃) = 0`.
    pub cyclic_vanishes: bool,
    /// The commutator of `Δ̃` satisfies co-Jacobi.
    pub admissible: bool,
}

pub fn le1_report<F: Field>(p: &StructurePackage<F>) -> R<Le1Report<F>> {
    p.require_kind(StructureKind::PostHomLie)?;
    let f = p.field();
    let h = half(f)?;
    let q = h.clone() * h.clone();
    let out = admissible(p)?;
    let dt = &out.delta_tilde;
    let a = p.alpha();
    let g = p.comap(ComapName::Gamma);
    let t12 = LegPermutation::tau12();
    let as_dt = compose_pair(dt, a, dt)?.sub(&compose_pair(a, dt, dt)?)?;
    let l = as_dt.sub(&permute(&t12, &as_dt)?)?;
    let r1 = permute(&t12, &compose_pair(g, a, g)?)?.scale(&-h);
    let r2 = compose_pair(a, g, g)?.scale(&-q);
    let one = f.one();
    let cyc = lincomb(&[
        (one.clone(), &l),
        (one.clone(), &permute(&LegPermutation::xi(), &l)?),
        (one, &permute(&LegPermutation::xi2(), &l)?),
    ])?;
    let admissible = axiom_residual(&out.homlie, "cojacobi")?.is_zero();
    Ok(Le1Report {
        l_eq_r1: l == r1,
        l_eq_r2: l == r2,
        cyclic_vanishes: cyc.is_zero(),
        admissible,
        l,
        r1,
        r2,
    })
}

/// `(γ, α)` as a Hom-Lie package.
pub fn sub_homlie<F: Field>(p: &StructurePackage<F>) -> R<StructurePackage<F>> {
    p.require_kind(StructureKind::PostHomLie)?;
    Ok(p.rekind(
        StructureKind::HomLie,
        vec![(ComapName::Gamma, p.comap(ComapName::Gamma).clone())],
    )?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PostTarget {
    Tilde,
    Admissible,
    Le1Report,
    SubHomLie,
}

pub enum PostDerived<F: Field> {
    Package(StructurePackage<F>),
    Admissible(AdmissibleOutput<F>),
    Le1(Le1Report<F>),
}

pub fn posthomlie_derive<F: Field>(p: &StructurePackage<F>, target: PostTarget) -> R<PostDerived<F>> {
    Ok(match target {
        PostTarget::Tilde => PostDerived::Package(tilde(p)?),
        PostTarget::Admissible => PostDerived::Admissible(admissible(p)?),
        PostTarget::Le1Report => PostDerived::Le1(le1_report(p)?),
        PostTarget::SubHomLie => PostDerived::Package(sub_homlie(p)?),
    })
}

/// `(λγ, (R⊗I)∘γ, α)`.
pub fn rb_homlie_to_posthomlie<F: Field>(s: &StructurePackage<F>) -> R<StructurePackage<F>> {
    s.require_kind(StructureKind::HomLieRB)?;
    let rb = s.rb().expect("rb kind");
    let g = s.comap(ComapName::Gamma);
    let d = compose_legs(Leg::Map(&rb.operator), Leg::Id(s.space()), g)?;
    Ok(s.rekind(
        StructureKind::PostHomLie,
        vec![(ComapName::Gamma, g.scale(&rb.weight)), (ComapName::Delta, d)],
    )?)
}

/// Tensor factor of the product: `(a⊗x) ↦ (I⊗τ⊗I)(m'(a)⊗m(x))` on the lexicographic basis.
fn tensor_comap<F: Field>(mq: &TensorMap<F>, mp: &TensorMap<F>, out: &Space) -> R<TensorMap<F>> {
    let (dq, dp) = (mq.dom().dim(), mp.dom().dim());
    let f = mq.field();
    let mut t = TensorMap::zeros(f, out.clone(), vec![out.clone(), out.clone()])?;
    for (a, qa, c1) in mq.support() {
        for (x, px, c2) in mp.support() {
            let i = a * dp + x;
            let j1 = qa[0] * dp + px[0];
            let j2 = qa[1] * dp + px[1];
            let v = t.get(i, &[j1, j2]).clone() + c1.clone() * c2.clone();
            t.set(i, &[j1, j2], v);
        }
    }
    debug_assert_eq!(out.dim(), dq * dp);
    Ok(t)
}

fn kron<F: Field>(a: &TensorMap<F>, b: &TensorMap<F>, out: &Space) -> R<TensorMap<F>> {
    let db = b.dom().dim();
    let f = a.field();
    Ok(TensorMap::from_fn(f, out.clone(), vec![out.clone()], |i, js| {
        let (ia, ib) = (i / db, i % db);
        let (ja, jb) = (js[0] / db, js[0] % db);
        a.get(ia, &[ja]).clone() * b.get(ib, &[jb]).clone()
    })?)
}

/// Post-Hom-Lie structure on `C′⊗C` from `P` on `C` and a cocommutative `Q` on `C′`.
pub fn tensor_posthomlie<F: Field>(p: &StructurePackage<F>, q: &StructurePackage<F>) -> R<StructurePackage<F>> {
    p.require_kind(StructureKind::PostHomLie)?;
    q.require_kind(StructureKind::HomCoassoc)?;
    let dq = q.comap(ComapName::Delta);
    if dq != &permute(&tau(), dq)? {
        return Err(ConstructionError::NotCocommutative);
    }
    let out = Space::new(p.space().name(), q.dim() * p.dim())?;
    let g = tensor_comap(dq, p.comap(ComapName::Gamma), &out)?;
    let d = tensor_comap(dq, p.comap(ComapName::Delta), &out)?;
    let alpha = kron(q.alpha(), p.alpha(), &out)?;
    Ok(StructurePackage::from_parts(
        StructureKind::PostHomLie,
        alpha,
        vec![(ComapName::Gamma, g), (ComapName::Delta, d)],
        None,
    )?)
}

/// `(γ, Δ) = ((1 − τ)∘Δ₀, Δ₁ − τ∘Δ₋₁)`.
pub fn tridend_to_posthomlie<F: Field>(s: &StructurePackage<F>) -> R<StructurePackage<F>> {
    s.require_kind(StructureKind::HomTridendriform)?;
    let g = commutator(s.comap(ComapName::Delta0))?;
    let d = s.comap(ComapName::Delta1).sub(&permute(&tau(), s.comap(ComapName::DeltaM1))?)?;
    Ok(s.rekind(StructureKind::PostHomLie, vec![(ComapName::Gamma, g), (ComapName::Delta, d)])?)
}

/// `Δ_A = (1 − τ)∘Δ· + γ`, `Δ_R = (1 + τ)∘Δ⋆ + Δ∗` as a Hom-Poisson package.
pub fn postpoisson_to_homopoisson<F: Field>(s: &StructurePackage<F>) -> R<StructurePackage<F>> {
    s.require_kind(StructureKind::PostHomPoisson)?;
    let da = commutator(s.comap(ComapName::Delta))?.add(s.comap(ComapName::Gamma))?;
    let star = s.comap(ComapName::DeltaStar);
    let dr = star.add(&permute(&tau(), star)?)?.add(s.comap(ComapName::DeltaAst))?;
    Ok(s.rekind(StructureKind::HomPoisson, vec![(ComapName::Gamma, da), (ComapName::Delta, dr)])?)
}

/// Default checker options, re-exported for constructors' callers.
pub fn default_options() -> CheckOptions {
    CheckOptions::default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::structures::check_structure;

    fn sp(d: usize) -> Space {
        Space::new("C", d).unwrap()
    }

    #[test]
    fn identity_twist_is_identity() {
        let f = PrimeField::new(5).unwrap();
        let c = sp(2);
        let mut d = TensorMap::zeros(&f, c.clone(), vec![c.clone(), c.clone()]).unwrap();
        d.set(0, &[0, 0], f.one());
        d.set(1, &[0, 1], f.one());
        d.set(1, &[1, 0], f.one());
        let s = StructurePackage::from_parts(
            StructureKind::HomCoassoc,
            TensorMap::identity(&f, &c),
            vec![(ComapName::Delta, d)],
            None,
        )
        .unwrap();
        assert_eq!(yau_twist(&s, &TensorMap::identity(&f, &c)).unwrap(), s);
        assert_eq!(power_twist(&s, 0).unwrap(), s);
    }

    #[test]
    fn rb_identity_at_weight_minus_one() {
        // R = id solves the weighted identity exactly when λ = −1.
        let f = Rationals;
        let c = sp(1);
        let d = TensorMap::from_fn(&f, c.clone(), vec![c.clone(), c.clone()], |_, _| f.one()).unwrap();
        let s = StructurePackage::from_parts(
            StructureKind::HomCoassocRB,
            TensorMap::identity(&f, &c),
            vec![(ComapName::Delta, d.clone())],
            Some(RotaBaxter {
                operator: TensorMap::identity(&f, &c),
                weight: f.from_i64(-1),
            }),
        )
        .unwrap();
        assert!(check_structure(&s, None, &CheckOptions::default()).unwrap().passes());
        let p = rb_coassoc_derive(&s, RbTarget::PreLieM1, None).unwrap();
        assert_eq!(p.comap(ComapName::Delta), &permute(&tau(), &d).unwrap().scale(&f.from_i64(-1)));
        assert!(check_structure(&p, None, &CheckOptions::default()).unwrap().passes());
        assert!(matches!(
            rb_coassoc_derive(&s, RbTarget::PreLie0, None),
            Err(ConstructionError::WeightMismatch(_))
        ));
    }

    #[test]
    fn half_needs_odd_characteristic() {
        let f = PrimeField::new(2).unwrap();
        let s = StructurePackage::zero(StructureKind::PostHomLie, &f, &sp(1));
        assert!(matches!(
            admissible(&s),
            Err(ConstructionError::Structure(StructureError::CharacteristicConflict(_)))
        ));
    }

    #[test]
    fn tilde_twice_restores_delta() {
        let f = PrimeField::new(5).unwrap();
        let c = sp(2);
        let mut g = TensorMap::zeros(&f, c.clone(), vec![c.clone(), c.clone()]).unwrap();
        g.set(0, &[0, 1], f.one());
        g.set(0, &[1, 0], -f.one());
        let mut d = TensorMap::zeros(&f, c.clone(), vec![c.clone(), c.clone()]).unwrap();
        d.set(1, &[1, 1], f.from_i64(3));
        let p = StructurePackage::from_parts(
            StructureKind::PostHomLie,
            TensorMap::identity(&f, &c),
            vec![(ComapName::Gamma, g), (ComapName::Delta, d)],
            None,
        )
        .unwrap();
        assert_eq!(tilde(&tilde(&p).unwrap()).unwrap(), p);
    }
}
