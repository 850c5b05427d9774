//! Deterministic witness pools over finite fields, dimension at most 2.
//!
//! Pools are assembled from dim-1 exhaustive search, dim-2 linear slices at a
//! fixed list of twist maps, Rota–Baxter enumeration, and derived packages.
//! Every member passes the required axioms of its kind; constructions used to
//! seed a pool are always re-checked, so a false construction only shrinks it.

use std::any::Any;
use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use crate::comodules::{check_comodule, self_comodule, ComoduleCheckOptions, ComoduleKind, ComodulePackage};
use crate::constructions::{
    endomorphism_violations, multiplicativity_violations, rb_coassoc_derive, yau_twist, RbTarget,
};
use crate::field::Field;
use crate::structures::{
    check_structure, opposite_tridend, CheckOptions, ComapName, RotaBaxter, StructureKind, StructurePackage,
};
use crate::tensor::{matrix_inverse, Space, TensorMap};

use super::{enumerate_instances, linear_slice, Constraints, Layout, SearchConfig, SearchMode, Subject};

const POOL_CAP: usize = 400;
const SLICE_CAP: u64 = 78_125;
const SLICE_KEEP: usize = 120;
const POOL_SEED: u64 = 7;

type Cache = Mutex<HashMap<String, Arc<dyn Any + Send + Sync>>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached<T: Any + Send + Sync>(key: String, build: impl FnOnce() -> T) -> Arc<T> {
    if let Some(v) = cache().lock().unwrap().get(&key) {
        return v.clone().downcast::<T>().expect("cache type");
    }
    let v = Arc::new(build());
    cache().lock().unwrap().insert(key, v.clone());
    v
}

fn square<F: Field>(f: &F, rows: [[i64; 2]; 2]) -> TensorMap<F> {
    let sp = Space::new("C", 2).expect("dim 2");
    let rows: Vec<Vec<F::Elem>> = rows.iter().map(|r| r.iter().map(|v| f.from_i64(*v)).collect()).collect();
    TensorMap::from_matrix(f, &sp, &rows).expect("2x2")
}

/// The dim-2 twist maps at which slices are taken.
pub fn alpha_slices<F: Field>(f: &F) -> Vec<TensorMap<F>> {
    [
        [[1, 0], [0, 1]],
        [[1, 0], [0, 2]],
        [[2, 0], [0, 3]],
        [[1, 0], [0, 0]],
        [[1, 1], [0, 1]],
        [[0, 1], [0, 0]],
        [[0, 0], [0, 0]],
        [[4, 0], [0, 1]],
        [[2, 1], [0, 2]],
    ]
    .into_iter()
    .map(|r| square(f, r))
    .collect()
}

/// Every endomorphism matrix of a `dim`-space over a finite field.
pub fn all_matrices<F: Field>(f: &F, dim: usize) -> Vec<TensorMap<F>> {
    let elems = f.elements().expect("finite field");
    let sp = Space::new("C", dim).expect("dim");
    let n = dim * dim;
    let q = elems.len();
    (0..q.pow(n as u32))
        .map(|mut idx| {
            let mut coeffs = Vec::with_capacity(n);
            for _ in 0..n {
                coeffs.push(elems[idx % q].clone());
                idx /= q;
            }
            TensorMap::from_coeffs(f, sp.clone(), vec![sp.clone()], coeffs).expect("shape")
        })
        .collect()
}

/// Endomorphisms β of `s` (βα = αβ and every comap β-equivariant), identity first.
pub fn endomorphisms<F: Field>(s: &StructurePackage<F>) -> Vec<TensorMap<F>> {
    let id = TensorMap::identity(s.field(), s.space());
    let mut out = vec![id.clone()];
    for b in all_matrices(s.field(), s.dim()) {
        let b = b.relabel(s.space().clone(), vec![s.space().clone()]).expect("same dim");
        if b != id && endomorphism_violations(s, &b).map(|v| v.is_empty()).unwrap_or(false) {
            out.push(b);
        }
    }
    out
}

/// Invertible base changes used to spread witnesses over bases: swap and shear.
fn transports<F: Field>(f: &F) -> Vec<(TensorMap<F>, TensorMap<F>)> {
    [[[0, 1], [1, 0]], [[1, 1], [0, 1]]]
        .into_iter()
        .map(|r| {
            let p = square(f, r);
            let pi = matrix_inverse(&p).expect("invertible");
            (p, pi)
        })
        .collect()
}

fn key_of<F: Field>(s: &StructurePackage<F>) -> Vec<F::Elem> {
    let mut k: Vec<F::Elem> = vec![s.field().from_i64(s.dim() as i64)];
    for (_, m) in s.components() {
        k.extend(m.coeffs().iter().cloned());
    }
    if let Some(rb) = s.rb() {
        k.push(rb.weight.clone());
    }
    k
}

fn passes<F: Field>(s: &StructurePackage<F>) -> bool {
    check_structure(s, None, &CheckOptions::default())
        .map(|r| r.passes())
        .unwrap_or(false)
}

/// Deduplicate, keep passing members, and thin evenly to the cap.
fn finish<F: Field>(cands: Vec<StructurePackage<F>>, cap: usize) -> Vec<StructurePackage<F>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in cands {
        if seen.insert(key_of(&s)) && passes(&s) {
            out.push(s);
        }
    }
    thin(out, cap)
}

fn thin<T>(v: Vec<T>, cap: usize) -> Vec<T> {
    if v.len() <= cap {
        return v;
    }
    let n = v.len();
    v.into_iter()
        .enumerate()
        .filter(|(i, _)| (i * cap) / n != ((i + 1) * cap) / n)
        .map(|(_, x)| x)
        .collect()
}

fn dim1<F: Field>(kind: StructureKind, f: &F) -> Vec<StructurePackage<F>> {
    let cfg = SearchConfig::structure(kind, 1, f, SearchMode::Exhaustive, u64::MAX, POOL_SEED);
    enumerate_instances(&cfg)
        .map(|o| {
            o.records
                .into_iter()
                .filter_map(|r| match r.subject {
                    Subject::Structure(s) => Some(s),
                    Subject::Comodule(_) => None,
                })
                .collect()
        })
        .unwrap_or_default()
}

fn constraints<F: Field>(pairs: &[(&str, &TensorMap<F>)]) -> Constraints<F> {
    let mut c = Constraints::default();
    for (n, m) in pairs {
        c.fixed.insert(n.to_string(), (*m).clone());
    }
    c
}

/// Solve one slice of `kind` at dim 2, keeping passing packages.
fn slice<F: Field>(kind: StructureKind, f: &F, c: &Constraints<F>, linear: &[&str]) -> Vec<StructurePackage<F>> {
    let Ok(layout) = Layout::for_structure(kind, f, 2, c) else {
        return Vec::new();
    };
    linear_slice(&layout, linear, SLICE_CAP, SLICE_KEEP, POOL_SEED, |s| match s {
        Subject::Structure(p) => passes(p),
        Subject::Comodule(_) => false,
    })
    .into_iter()
    .filter_map(|s| match s {
        Subject::Structure(p) => Some(p),
        Subject::Comodule(_) => None,
    })
    .collect()
}

fn with_transports<F: Field>(v: &[StructurePackage<F>], f: &F, every: usize) -> Vec<StructurePackage<F>> {
    let ts = transports(f);
    let mut out = Vec::new();
    for (i, s) in v.iter().enumerate() {
        if s.dim() != 2 || i % every != 0 {
            continue;
        }
        for (p, pi) in &ts {
            let p = p.relabel(s.space().clone(), vec![s.space().clone()]).expect("dim");
            let pi = pi.relabel(s.space().clone(), vec![s.space().clone()]).expect("dim");
            if let Ok(t) = s.transport(&p, &pi) {
                out.push(t);
            }
        }
    }
    out
}

fn is_mult<F: Field>(s: &StructurePackage<F>) -> bool {
    multiplicativity_violations(s).map(|v| v.is_empty()).unwrap_or(false)
}

/// Prefer nonzero structures, then keep the original order.
fn nonzero_first<F: Field>(v: &[StructurePackage<F>], n: usize) -> Vec<StructurePackage<F>> {
    let mut nz: Vec<_> = v.iter().filter(|s| s.comaps().values().any(|m| !m.is_zero())).cloned().collect();
    nz.extend(v.iter().filter(|s| s.comaps().values().all(|m| m.is_zero())).cloned());
    thin(nz, n)
}

fn key<F: Field>(name: &str, f: &F) -> String {
    format!("{name}/{}", f.spec())
}

/// The pool of `kind` over `f`.
pub fn structure_pool<F: Field>(kind: StructureKind, f: &F) -> Arc<Vec<StructurePackage<F>>> {
    let f2 = f.clone();
    cached(key(kind.id(), f), move || build_pool(kind, &f2))
}

fn pool_vec<F: Field>(kind: StructureKind, f: &F) -> Vec<StructurePackage<F>> {
    structure_pool(kind, f).as_ref().clone()
}

fn build_pool<F: Field>(kind: StructureKind, f: &F) -> Vec<StructurePackage<F>> {
    use StructureKind::*;
    let mut v = dim1(kind, f);
    let alphas = alpha_slices(f);
    match kind {
        HomCoassoc | HomPreLie => {
            for a in &alphas {
                v.extend(slice(kind, f, &constraints(&[("alpha", a)]), &["multip"]));
            }
            let base = v.clone();
            v.extend(with_transports(&base, f, 7));
        }
        HomLie => {
            for a in &alphas {
                v.extend(slice(kind, f, &constraints(&[("alpha", a)]), &[]));
            }
        }
        HomCoassocRB | HomLieRB => {
            let base_kind = if kind == HomCoassocRB { HomCoassoc } else { HomLie };
            let bases = nonzero_first(&pool_vec(base_kind, f), 36);
            let weights = f.elements().expect("finite");
            for b in &bases {
                let rs: Vec<TensorMap<F>> = all_matrices(f, b.dim())
                    .into_iter()
                    .map(|r| r.relabel(b.space().clone(), vec![b.space().clone()]).expect("dim"))
                    .collect();
                for r in rs {
                    for w in &weights {
                        let rb = RotaBaxter {
                            operator: r.clone(),
                            weight: w.clone(),
                        };
                        let Ok(s) = StructurePackage::new(kind, b.alpha().clone(), b.comaps().clone(), Some(rb)) else {
                            continue;
                        };
                        if passes(&s) {
                            v.push(s);
                        }
                    }
                }
            }
        }
        HomTridendriform | HomDendriform => {
            let target = if kind == HomTridendriform { RbTarget::Tridend } else { RbTarget::Dendriform };
            let rbs = pool_vec(HomCoassocRB, f);
            for s in &rbs {
                if let Ok(t) = rb_coassoc_derive(s, target, None) {
                    v.push(t);
                }
            }
            if kind == HomTridendriform {
                // Δ₀ alone coassociative.
                for c in nonzero_first(&pool_vec(HomCoassoc, f), 60) {
                    let mut comaps = std::collections::BTreeMap::new();
                    let z = TensorMap::zeros(f, c.space().clone(), vec![c.space().clone(); 2]).expect("shape");
                    comaps.insert(ComapName::DeltaM1, z.clone());
                    comaps.insert(ComapName::Delta0, c.comap(ComapName::Delta).clone());
                    comaps.insert(ComapName::Delta1, z);
                    if let Ok(t) = c.rekind(kind, comaps.into_iter().collect()) {
                        v.push(t);
                    }
                }
                let base = finish(v.clone(), usize::MAX);
                for s in &base {
                    if let Ok(o) = opposite_tridend(s) {
                        v.push(o);
                    }
                }
                for s in nonzero_first(&base, 12) {
                    for b in endomorphisms(&s).into_iter().skip(1).take(3) {
                        if let Ok(t) = yau_twist(&s, &b) {
                            v.push(t);
                        }
                    }
                }
            }
            let base = finish(v.clone(), usize::MAX);
            v.extend(with_transports(&base, f, 5));
        }
        CoCommHomTridendriform => {
            let cocomm: Vec<_> = pool_vec(HomCoassoc, f)
                .iter()
                .filter(|s| s.dim() == 2 && is_cocomm(s.comap(ComapName::Delta)))
                .cloned()
                .collect();
            for s in nonzero_first(&cocomm, 30) {
                let d = s.comap(ComapName::Delta);
                v.extend(slice(kind, f, &constraints(&[("alpha", s.alpha()), ("delta", d)]), &["d4"]));
            }
        }
        PostHomLie => {
            let lies: Vec<_> = pool_vec(HomLie, f).iter().filter(|s| s.dim() == 2 && is_mult(s)).cloned().collect();
            for s in thin(lies, 40) {
                let g = s.comap(ComapName::Gamma);
                v.extend(slice(kind, f, &constraints(&[("alpha", s.alpha()), ("gamma", g)]), &["dplc3"]));
            }
        }
        HomPoisson => {
            let lies: Vec<_> = pool_vec(HomLie, f).iter().filter(|s| s.dim() == 2).cloned().collect();
            for s in thin(lies, 40) {
                let g = s.comap(ComapName::Gamma);
                v.extend(slice(kind, f, &constraints(&[("alpha", s.alpha()), ("gamma", g)]), &["p1"]));
            }
        }
        PostHomPoisson => {
            let posts: Vec<_> = pool_vec(PostHomLie, f).iter().filter(|s| s.dim() == 2).cloned().collect();
            for s in nonzero_first(&posts, 30) {
                let c = constraints(&[
                    ("alpha", s.alpha()),
                    ("gamma", s.comap(ComapName::Gamma)),
                    ("delta", s.comap(ComapName::Delta)),
                ]);
                v.extend(slice(kind, f, &c, &["p1", "p2", "p3", "p4", "p5"]));
            }
        }
    }
    finish(v, POOL_CAP)
}

fn is_cocomm<F: Field>(d: &TensorMap<F>) -> bool {
    let n = d.dom().dim();
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| d.get(i, &[j, k]) == d.get(i, &[k, j]))))
}

/// Comodules of `kind` with `dim M = 1` over a few bases, plus every base as a comodule over itself.
pub fn comodule_pool<F: Field>(kind: ComoduleKind, f: &F) -> Arc<Vec<ComodulePackage<F>>> {
    let f2 = f.clone();
    cached(key(kind.id(), f), move || build_comodule_pool(kind, &f2))
}

fn comodule_passes<F: Field>(c: &ComodulePackage<F>) -> bool {
    check_comodule(c, None, &ComoduleCheckOptions::default())
        .map(|r| r.passes())
        .unwrap_or(false)
}

fn build_comodule_pool<F: Field>(kind: ComoduleKind, f: &F) -> Vec<ComodulePackage<F>> {
    let bases_all = pool_vec(kind.base_kind(), f);
    let mut bases: Vec<_> = bases_all.iter().filter(|s| s.dim() == 2 && is_mult(s)).cloned().collect();
    bases = nonzero_first(&bases, if kind == ComoduleKind::TridendComodule { 2 } else { 6 });
    let mut out = Vec::new();
    for b in &bases {
        let Ok(layout) = Layout::for_comodule(kind, b, 1, &Constraints::default()) else {
            continue;
        };
        let found = linear_slice(&layout, &[], SLICE_CAP, POOL_CAP, POOL_SEED, |s| match s {
            Subject::Comodule(c) => comodule_passes(c),
            Subject::Structure(_) => false,
        });
        out.extend(found.into_iter().filter_map(|s| match s {
            Subject::Comodule(c) => Some(c),
            Subject::Structure(_) => None,
        }));
    }
    for b in nonzero_first(&bases_all, 30) {
        if let Ok(c) = self_comodule(&b) {
            if comodule_passes(&c) {
                out.push(c);
            }
        }
    }
    thin(out, POOL_CAP)
}
