//! Finite-dimensional Hom-tridendriform algebras, their own axiom checker,
//! and transposition to and from coalgebras.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{CheckReport, ComapName, Role, StructureError, StructureKind, StructurePackage};
use crate::field::{Field, Scalar};
use crate::structures::report::AxiomEntry;
use crate::tensor::{Space, TensorMap};

/// Products `⊣`, `⊢`, `·`, dual to `Δ₋₁`, `Δ₁`, `Δ₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProductName {
    Prec,
    Succ,
    Dot,
}

impl ProductName {
    pub const ALL: [ProductName; 3] = [ProductName::Prec, ProductName::Succ, ProductName::Dot];

    pub fn id(&self) -> &'static str {
        match self {
            ProductName::Prec => "prec",
            ProductName::Succ => "succ",
            ProductName::Dot => "dot",
        }
    }

    pub fn dual(&self) -> ComapName {
        match self {
            ProductName::Prec => ComapName::DeltaM1,
            ProductName::Succ => ComapName::Delta1,
            ProductName::Dot => ComapName::Delta0,
        }
    }
}

impl fmt::Display for ProductName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ProductName {
    type Err = StructureError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ProductName::ALL
            .iter()
            .copied()
            .find(|p| p.id() == s)
            .ok_or_else(|| StructureError::KindMismatch(format!("unknown product `{s}`")))
    }
}

/// `m[i][j][k]`: coefficient of `e_k` in `e_i ∘ e_j`; `alpha[r][c]`: coefficient of `e_r` in `α(e_c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPackage<F: Field> {
    pub field: F,
    pub space: Space,
    pub alpha: Vec<Vec<F::Elem>>,
    pub products: BTreeMap<ProductName, Vec<Vec<Vec<F::Elem>>>>,
}

pub const ALGEBRA_KIND: &str = "HomTridendriformAlgebra";

impl<F: Field> AlgebraPackage<F> {
    pub fn validate(&self) -> Result<(), StructureError> {
        let n = self.space.dim();
        let sq = |m: &Vec<Vec<F::Elem>>| m.len() == n && m.iter().all(|r| r.len() == n);
        if !sq(&self.alpha) {
            return Err(StructureError::ShapeError("alpha matrix shape".into()));
        }
        for p in ProductName::ALL {
            let m = self
                .products
                .get(&p)
                .ok_or_else(|| StructureError::ShapeError(format!("missing product {p}")))?;
            if m.len() != n || !m.iter().all(sq) {
                return Err(StructureError::ShapeError(format!("product {p} shape")));
            }
        }
        if self.products.len() != 3 {
            return Err(StructureError::ShapeError("exactly three products expected".into()));
        }
        Ok(())
    }

    pub fn zero(field: &F, space: &Space) -> Self {
        let n = space.dim();
        let z = vec![vec![vec![field.zero(); n]; n]; n];
        AlgebraPackage {
            field: field.clone(),
            space: space.clone(),
            alpha: (0..n)
                .map(|r| (0..n).map(|c| if r == c { field.one() } else { field.zero() }).collect())
                .collect(),
            products: ProductName::ALL.iter().map(|p| (*p, z.clone())).collect(),
        }
    }

    fn mul(&self, p: ProductName, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let m = &self.products[&p];
        let n = self.space.dim();
        let mut out = vec![self.field.zero(); n];
        for i in 0..n {
            if x[i].is_zero_elem() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero_elem() {
                    continue;
                }
                let c = x[i].clone() * y[j].clone();
                for k in 0..n {
                    out[k] = out[k].clone() + c.clone() * m[i][j][k].clone();
                }
            }
        }
        out
    }

    fn star(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let a = self.mul(ProductName::Prec, x, y);
        let b = self.mul(ProductName::Succ, x, y);
        let c = self.mul(ProductName::Dot, x, y);
        a.into_iter().zip(b).zip(c).map(|((a, b), c)| a + b + c).collect()
    }

    fn apply_alpha(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let n = self.space.dim();
        (0..n)
            .map(|r| (0..n).fold(self.field.zero(), |s, c| s + self.alpha[r][c].clone() * x[c].clone()))
            .collect()
    }

    fn basis(&self, i: usize) -> Vec<F::Elem> {
        (0..self.space.dim())
            .map(|k| if k == i { self.field.one() } else { self.field.zero() })
            .collect()
    }
}

/// The seven Hom-tridendriform algebra identities `a1..a7` on basis triples.
/// Residual entry `(i; j, k, l)`: the `e_l` coefficient of lhs − rhs at `(e_i, e_j, e_k)`,
/// packed as a map from the `i` index over `(j, k, l)` legs.
pub fn check_algebra<F: Field>(a: &AlgebraPackage<F>) -> Result<CheckReport<F>, StructureError> {
    use ProductName::*;
    a.validate()?;
    let n = a.space.dim();
    let mut entries = Vec::new();
    for which in 1..=7 {
        let mut res = TensorMap::zeros(&a.field, a.space.clone(), vec![a.space.clone(); 3])?;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (a.basis(i), a.basis(j), a.basis(k));
                    let (ax, az) = (a.apply_alpha(&x), a.apply_alpha(&z));
                    let (l, r) = match which {
                        1 => (a.mul(Prec, &a.mul(Prec, &x, &y), &az), a.mul(Prec, &ax, &a.star(&y, &z))),
                        2 => (a.mul(Prec, &a.mul(Succ, &x, &y), &az), a.mul(Succ, &ax, &a.mul(Prec, &y, &z))),
                        3 => (a.mul(Succ, &ax, &a.mul(Succ, &y, &z)), a.mul(Succ, &a.star(&x, &y), &az)),
                        4 => (a.mul(Dot, &a.mul(Prec, &x, &y), &az), a.mul(Dot, &ax, &a.mul(Succ, &y, &z))),
                        5 => (a.mul(Dot, &a.mul(Succ, &x, &y), &az), a.mul(Succ, &ax, &a.mul(Dot, &y, &z))),
                        6 => (a.mul(Prec, &a.mul(Dot, &x, &y), &az), a.mul(Dot, &ax, &a.mul(Prec, &y, &z))),
                        _ => (a.mul(Dot, &a.mul(Dot, &x, &y), &az), a.mul(Dot, &ax, &a.mul(Dot, &y, &z))),
                    };
                    for (t, (u, v)) in l.into_iter().zip(r).enumerate() {
                        res.set(i, &[j, k, t], u - v);
                    }
                }
            }
        }
        entries.push(AxiomEntry::new(&format!("a{which}"), Role::Required, res));
    }
    Ok(CheckReport {
        subject: ALGEBRA_KIND.to_string(),
        entries,
        notes: vec![],
    })
}

fn transpose<F: Field>(m: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let n = m.len();
    (0..n).map(|r| (0..n).map(|c| m[c][r].clone()).collect()).collect()
}

/// Dual coalgebra on the dual basis: `D[k][i][j] = m[i][j][k]`, α transposed.
pub fn dualize_algebra<F: Field>(a: &AlgebraPackage<F>) -> Result<StructurePackage<F>, StructureError> {
    a.validate()?;
    let sp = a.space.clone();
    let mut comaps = Vec::new();
    for p in ProductName::ALL {
        let m = &a.products[&p];
        let d = TensorMap::from_fn(&a.field, sp.clone(), vec![sp.clone(), sp.clone()], |k, js| {
            m[js[0]][js[1]][k].clone()
        })?;
        comaps.push((p.dual(), d));
    }
    let alpha = TensorMap::from_matrix(&a.field, &sp, &transpose::<F>(&a.alpha))?;
    StructurePackage::from_parts(StructureKind::HomTridendriform, alpha, comaps, None)
}

/// Inverse of [`dualize_algebra`].
pub fn dualize_coalgebra<F: Field>(s: &StructurePackage<F>) -> Result<AlgebraPackage<F>, StructureError> {
    s.require_kind(StructureKind::HomTridendriform)?;
    let n = s.dim();
    let mut products = BTreeMap::new();
    for p in ProductName::ALL {
        let d = s.comap(p.dual());
        let m: Vec<Vec<Vec<F::Elem>>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| d.get(k, &[i, j]).clone()).collect()).collect())
            .collect();
        products.insert(p, m);
    }
    Ok(AlgebraPackage {
        field: s.field().clone(),
        space: s.space().clone(),
        alpha: transpose::<F>(&s.alpha().matrix_rows()),
        products,
    })
}
