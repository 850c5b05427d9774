//! Structure-constant tensors `V -> W1 ⊗ ... ⊗ Wk` with `k <= 3`.
//!
//! Coefficients are stored densely. For a map `T` the entry at
//! `(i; j1..jk)` is the coefficient of `e_{j1} ⊗ .. ⊗ e_{jk}` in `T(e_i)`.
//! Indices are 0-based in memory; the text format is 1-based.

use std::fmt;

use crate::field::{Field, Scalar};

pub const MAX_ARITY: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TensorError {
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("composition would produce arity {0} > 3")]
    ArityOverflow(usize),
    #[error("empty linear combination")]
    EmptyInput,
    #[error("space `{0}` must have positive dimension")]
    ZeroDimension(String),
    #[error("invalid space name `{0}`")]
    BadSpaceName(String),
    #[error("not a permutation: {0:?}")]
    BadPermutation(Vec<usize>),
    #[error("matrix is singular")]
    Singular,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Space {
    name: String,
    dim: usize,
}

impl Space {
    pub fn new(name: &str, dim: usize) -> Result<Self, TensorError> {
        let ok = !name.is_empty()
            && name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(TensorError::BadSpaceName(name.to_string()));
        }
        if dim == 0 {
            return Err(TensorError::ZeroDimension(name.to_string()));
        }
        Ok(Space {
            name: name.to_string(),
            dim,
        })
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn renamed(&self, name: &str) -> Result<Self, TensorError> {
        Space::new(name, self.dim)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.name, self.dim)
    }
}

/// Permutation of tensor legs. `images[s]` is the output position of input
/// leg `s`, so `Φσ(x1⊗x2⊗x3) = x_{σ⁻¹(1)}⊗x_{σ⁻¹(2)}⊗x_{σ⁻¹(3)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LegPermutation {
    images: Vec<usize>,
}

impl LegPermutation {
    pub fn from_images(images: Vec<usize>) -> Result<Self, TensorError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &t in &images {
            if t >= n || seen[t] {
                return Err(TensorError::BadPermutation(images));
            }
            seen[t] = true;
        }
        if !(2..=MAX_ARITY).contains(&n) {
            return Err(TensorError::BadPermutation(images));
        }
        Ok(LegPermutation { images })
    }

    /// Output position `t` receives input leg `sources[t]`.
    pub fn from_sources(sources: &[usize]) -> Result<Self, TensorError> {
        let n = sources.len();
        let mut images = vec![usize::MAX; n];
        for (t, &s) in sources.iter().enumerate() {
            if s >= n || images[s] != usize::MAX {
                return Err(TensorError::BadPermutation(sources.to_vec()));
            }
            images[s] = t;
        }
        LegPermutation::from_images(images)
    }

    pub fn identity(arity: usize) -> Self {
        LegPermutation {
            images: (0..arity).collect(),
        }
    }

    /// `x⊗y ↦ y⊗x`.
    pub fn tau() -> Self {
        LegPermutation { images: vec![1, 0] }
    }

    /// `x⊗y⊗z ↦ y⊗z⊗x`.
    pub fn xi() -> Self {
        LegPermutation {
            images: vec![2, 0, 1],
        }
    }

    /// `x⊗y⊗z ↦ z⊗x⊗y`.
    pub fn xi2() -> Self {
        LegPermutation::xi().compose(&LegPermutation::xi())
    }

    /// `τ⊗I` on three legs.
    pub fn tau12() -> Self {
        LegPermutation {
            images: vec![1, 0, 2],
        }
    }

    /// `I⊗τ` on three legs.
    pub fn tau23() -> Self {
        LegPermutation {
            images: vec![0, 2, 1],
        }
    }

    pub fn arity(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LegPermutation) -> LegPermutation {
        assert_eq!(self.arity(), other.arity(), "permutation arity");
        LegPermutation {
            images: other.images.iter().map(|&s| self.images[s]).collect(),
        }
    }

    pub fn inverse(&self) -> LegPermutation {
        let mut inv = vec![0; self.arity()];
        for (s, &t) in self.images.iter().enumerate() {
            inv[t] = s;
        }
        LegPermutation { images: inv }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorMap<F: Field> {
    field: F,
    dom: Space,
    cod: Vec<Space>,
    coeffs: Vec<F::Elem>,
}

fn cod_size(cod: &[Space]) -> usize {
    cod.iter().map(Space::dim).product()
}

fn check_arity(k: usize) -> Result<(), TensorError> {
    if k == 0 || k > MAX_ARITY {
        Err(TensorError::ArityMismatch {
            expected: MAX_ARITY,
            found: k,
        })
    } else {
        Ok(())
    }
}

impl<F: Field> TensorMap<F> {
    pub fn zeros(field: &F, dom: Space, cod: Vec<Space>) -> Result<Self, TensorError> {
        check_arity(cod.len())?;
        let n = dom.dim() * cod_size(&cod);
        Ok(TensorMap {
            coeffs: vec![field.zero(); n],
            field: field.clone(),
            dom,
            cod,
        })
    }

    pub fn from_fn(
        field: &F,
        dom: Space,
        cod: Vec<Space>,
        mut f: impl FnMut(usize, &[usize]) -> F::Elem,
    ) -> Result<Self, TensorError> {
        let mut t = TensorMap::zeros(field, dom, cod)?;
        let dims: Vec<usize> = t.cod.iter().map(Space::dim).collect();
        let mut js = vec![0usize; dims.len()];
        for pos in 0..t.coeffs.len() {
            let i = pos / t.row_len();
            unflatten(pos % t.row_len(), &dims, &mut js);
            t.coeffs[pos] = f(i, &js);
        }
        Ok(t)
    }

    /// Build from raw coefficients in storage order.
    pub fn from_coeffs(
        field: &F,
        dom: Space,
        cod: Vec<Space>,
        coeffs: Vec<F::Elem>,
    ) -> Result<Self, TensorError> {
        check_arity(cod.len())?;
        if coeffs.len() != dom.dim() * cod_size(&cod) {
            return Err(TensorError::SignatureMismatch(format!(
                "{} coefficients for {}",
                coeffs.len(),
                signature_string(&dom, &cod)
            )));
        }
        Ok(TensorMap {
            field: field.clone(),
            dom,
            cod,
            coeffs,
        })
    }

    pub fn identity(field: &F, space: &Space) -> Self {
        TensorMap::from_fn(field, space.clone(), vec![space.clone()], |i, js| {
            if i == js[0] {
                field.one()
            } else {
                field.zero()
            }
        })
        .expect("arity 1")
    }

    /// Matrix map with `rows[r][c]` the coefficient of `e_r` in `f(e_c)`.
    pub fn from_matrix(field: &F, space: &Space, rows: &[Vec<F::Elem>]) -> Result<Self, TensorError> {
        let d = space.dim();
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(TensorError::SignatureMismatch(format!(
                "matrix shape does not match {}",
                space
            )));
        }
        TensorMap::from_fn(field, space.clone(), vec![space.clone()], |i, js| {
            rows[js[0]][i].clone()
        })
    }

    /// Rows of the matrix of an arity-1 map (see [`TensorMap::from_matrix`]).
    pub fn matrix_rows(&self) -> Vec<Vec<F::Elem>> {
        assert_eq!(self.arity(), 1, "matrix_rows on arity {}", self.arity());
        let r = self.cod[0].dim();
        (0..r)
            .map(|row| (0..self.dom.dim()).map(|c| self.get(c, &[row]).clone()).collect())
            .collect()
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dom(&self) -> &Space {
        &self.dom
    }
    pub fn cod(&self) -> &[Space] {
        &self.cod
    }
    pub fn arity(&self) -> usize {
        self.cod.len()
    }
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }
    pub fn coeffs_mut(&mut self) -> &mut [F::Elem] {
        &mut self.coeffs
    }

    /// Number of coefficients per input basis vector.
    pub fn row_len(&self) -> usize {
        cod_size(&self.cod)
    }

    pub fn signature(&self) -> String {
        signature_string(&self.dom, &self.cod)
    }

    pub fn same_signature(&self, other: &TensorMap<F>) -> bool {
        self.dom == other.dom && self.cod == other.cod
    }

    fn offset(&self, i: usize, js: &[usize]) -> usize {
        debug_assert_eq!(js.len(), self.cod.len());
        let mut off = 0;
        for (t, &j) in js.iter().enumerate() {
            debug_assert!(j < self.cod[t].dim());
            off = off * self.cod[t].dim() + j;
        }
        i * self.row_len() + off
    }

    pub fn get(&self, i: usize, js: &[usize]) -> &F::Elem {
        &self.coeffs[self.offset(i, js)]
    }

    pub fn set(&mut self, i: usize, js: &[usize], v: F::Elem) {
        let o = self.offset(i, js);
        self.coeffs[o] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero_elem)
    }

    /// Smallest input basis index whose image is nonzero.
    pub fn first_nonzero_input(&self) -> Option<usize> {
        let w = self.row_len();
        (0..self.dom.dim()).find(|&i| self.coeffs[i * w..(i + 1) * w].iter().any(|c| !c.is_zero_elem()))
    }

    /// Nonzero entries `(i, js, c)` in storage order.
    pub fn support(&self) -> Vec<(usize, Vec<usize>, F::Elem)> {
        let dims: Vec<usize> = self.cod.iter().map(Space::dim).collect();
        let w = self.row_len();
        let mut out = Vec::new();
        for (pos, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero_elem() {
                let mut js = vec![0; dims.len()];
                unflatten(pos % w, &dims, &mut js);
                out.push((pos / w, js, c.clone()));
            }
        }
        out
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero_elem()).count()
    }

    pub fn scale(&self, c: &F::Elem) -> TensorMap<F> {
        let mut t = self.clone();
        for x in &mut t.coeffs {
            *x = c.clone() * x.clone();
        }
        t
    }

    pub fn add(&self, other: &TensorMap<F>) -> Result<TensorMap<F>, TensorError> {
        lincomb(&[(self.field.one(), self), (self.field.one(), other)])
    }

    pub fn sub(&self, other: &TensorMap<F>) -> Result<TensorMap<F>, TensorError> {
        lincomb(&[(self.field.one(), self), (-self.field.one(), other)])
    }

    /// Same coefficients, with spaces renamed.
    pub fn relabel(&self, dom: Space, cod: Vec<Space>) -> Result<TensorMap<F>, TensorError> {
        let dims_ok = dom.dim() == self.dom.dim()
            && cod.len() == self.cod.len()
            && cod.iter().zip(&self.cod).all(|(a, b)| a.dim() == b.dim());
        if !dims_ok {
            return Err(TensorError::SignatureMismatch(format!(
                "cannot relabel {} as {}",
                self.signature(),
                signature_string(&dom, &cod)
            )));
        }
        Ok(TensorMap {
            field: self.field.clone(),
            dom,
            cod,
            coeffs: self.coeffs.clone(),
        })
    }

    /// Image of the basis vector `e_i` as a coefficient slice.
    pub fn row(&self, i: usize) -> &[F::Elem] {
        let w = self.row_len();
        &self.coeffs[i * w..(i + 1) * w]
    }
}

fn signature_string(dom: &Space, cod: &[Space]) -> String {
    let names: Vec<String> = cod.iter().map(|s| s.to_string()).collect();
    format!("{} -> ({})", dom, names.join(","))
}

fn unflatten(mut off: usize, dims: &[usize], js: &mut [usize]) {
    for t in (0..dims.len()).rev() {
        js[t] = off % dims[t];
        off /= dims[t];
    }
}

/// Coefficientwise linear combination of maps sharing one signature.
pub fn lincomb<F: Field>(terms: &[(F::Elem, &TensorMap<F>)]) -> Result<TensorMap<F>, TensorError> {
    let (_, first) = terms.first().ok_or(TensorError::EmptyInput)?;
    let mut out = TensorMap::zeros(first.field(), first.dom.clone(), first.cod.clone())?;
    for (c, t) in terms {
        if !t.same_signature(first) {
            return Err(TensorError::SignatureMismatch(format!(
                "{} vs {}",
                t.signature(),
                first.signature()
            )));
        }
        if c.is_zero_elem() {
            continue;
        }
        for (o, x) in out.coeffs.iter_mut().zip(&t.coeffs) {
            if !x.is_zero_elem() {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
    }
    Ok(out)
}

/// Reorder output legs of `t` by `p`.
pub fn permute<F: Field>(p: &LegPermutation, t: &TensorMap<F>) -> Result<TensorMap<F>, TensorError> {
    if p.arity() != t.arity() {
        return Err(TensorError::ArityMismatch {
            expected: p.arity(),
            found: t.arity(),
        });
    }
    let mut cod = t.cod.clone();
    for (s, &img) in p.images().iter().enumerate() {
        cod[img] = t.cod[s].clone();
    }
    let mut out = TensorMap::zeros(t.field(), t.dom.clone(), cod)?;
    let mut js_out = vec![0; t.arity()];
    for (i, js, c) in t.support() {
        for (s, &img) in p.images().iter().enumerate() {
            js_out[img] = js[s];
        }
        out.set(i, &js_out, c);
    }
    Ok(out)
}

/// One tensor factor in a composition `(h1⊗h2)∘D`.
#[derive(Debug)]
pub enum Leg<'a, F: Field> {
    Id(&'a Space),
    Map(&'a TensorMap<F>),
}

impl<F: Field> Clone for Leg<'_, F> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<F: Field> Copy for Leg<'_, F> {}

impl<'a, F: Field> Leg<'a, F> {
    fn dom(&self) -> &Space {
        match self {
            Leg::Id(s) => s,
            Leg::Map(t) => t.dom(),
        }
    }
    fn cod(&self) -> Vec<Space> {
        match self {
            Leg::Id(s) => vec![(*s).clone()],
            Leg::Map(t) => t.cod.clone(),
        }
    }
    /// Nonzero `(flat output offset, coefficient)` of the image of `e_a`.
    fn image(&self, a: usize, one: &F::Elem) -> Vec<(usize, F::Elem)> {
        match self {
            Leg::Id(_) => vec![(a, one.clone())],
            Leg::Map(t) => t
                .row(a)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero_elem())
                .map(|(o, c)| (o, c.clone()))
                .collect(),
        }
    }
}

/// `(h1⊗h2)∘D` with either leg allowed to be an identity.
pub fn compose_legs<F: Field>(l1: Leg<'_, F>, l2: Leg<'_, F>, d: &TensorMap<F>) -> Result<TensorMap<F>, TensorError> {
    if d.arity() != 2 {
        return Err(TensorError::ArityMismatch {
            expected: 2,
            found: d.arity(),
        });
    }
    if l1.dom() != &d.cod[0] || l2.dom() != &d.cod[1] {
        return Err(TensorError::SignatureMismatch(format!(
            "legs ({}, {}) after {}",
            l1.dom(),
            l2.dom(),
            d.signature()
        )));
    }
    let mut cod = l1.cod();
    let c2 = l2.cod();
    let w2: usize = cod_size(&c2);
    cod.extend(c2);
    if cod.len() > MAX_ARITY {
        return Err(TensorError::ArityOverflow(cod.len()));
    }
    let field = d.field().clone();
    let one = field.one();
    let mut out = TensorMap::zeros(&field, d.dom.clone(), cod)?;
    let row_out = out.row_len();
    let im1: Vec<_> = (0..d.cod[0].dim()).map(|a| l1.image(a, &one)).collect();
    let im2: Vec<_> = (0..d.cod[1].dim()).map(|b| l2.image(b, &one)).collect();
    let db = d.cod[1].dim();
    for i in 0..d.dom.dim() {
        for (ab, c) in d.row(i).iter().enumerate() {
            if c.is_zero_elem() {
                continue;
            }
            let (a, b) = (ab / db, ab % db);
            for (o1, c1) in &im1[a] {
                let c01 = c.clone() * c1.clone();
                for (o2, c2) in &im2[b] {
                    let pos = i * row_out + o1 * w2 + o2;
                    out.coeffs[pos] = out.coeffs[pos].clone() + c01.clone() * c2.clone();
                }
            }
        }
    }
    Ok(out)
}

/// `(h1⊗h2)∘D`.
pub fn compose_pair<F: Field>(h1: &TensorMap<F>, h2: &TensorMap<F>, d: &TensorMap<F>) -> Result<TensorMap<F>, TensorError> {
    compose_legs(Leg::Map(h1), Leg::Map(h2), d)
}

/// `D∘f` for an arity-1 `f`.
pub fn precompose<F: Field>(d: &TensorMap<F>, f: &TensorMap<F>) -> Result<TensorMap<F>, TensorError> {
    if f.arity() != 1 {
        return Err(TensorError::ArityMismatch {
            expected: 1,
            found: f.arity(),
        });
    }
    if f.cod[0] != d.dom {
        return Err(TensorError::SignatureMismatch(format!(
            "{} after {}",
            d.signature(),
            f.signature()
        )));
    }
    let field = d.field().clone();
    let mut out = TensorMap::zeros(&field, f.dom.clone(), d.cod.clone())?;
    let w = d.row_len();
    for i in 0..f.dom.dim() {
        for (k, c) in f.row(i).iter().enumerate() {
            if c.is_zero_elem() {
                continue;
            }
            for (o, x) in d.row(k).iter().enumerate() {
                if !x.is_zero_elem() {
                    let pos = i * w + o;
                    out.coeffs[pos] = out.coeffs[pos].clone() + c.clone() * x.clone();
                }
            }
        }
    }
    Ok(out)
}

/// Apply an arity-1 map to one output leg of `t`.
pub fn apply_on_leg<F: Field>(t: &TensorMap<F>, leg: usize, h: &TensorMap<F>) -> Result<TensorMap<F>, TensorError> {
    if h.arity() != 1 || leg >= t.arity() || h.dom() != &t.cod[leg] {
        return Err(TensorError::SignatureMismatch(format!(
            "cannot apply {} on leg {} of {}",
            h.signature(),
            leg,
            t.signature()
        )));
    }
    let mut cod = t.cod.clone();
    cod[leg] = h.cod[0].clone();
    let mut out = TensorMap::zeros(t.field(), t.dom.clone(), cod)?;
    let mut js2;
    for (i, js, c) in t.support() {
        for (j, x) in h.row(js[leg]).iter().enumerate() {
            if x.is_zero_elem() {
                continue;
            }
            js2 = js.clone();
            js2[leg] = j;
            let v = out.get(i, &js2).clone() + c.clone() * x.clone();
            out.set(i, &js2, v);
        }
    }
    Ok(out)
}

/// `f∘g` for arity-1 maps.
pub fn matmul<F: Field>(f: &TensorMap<F>, g: &TensorMap<F>) -> Result<TensorMap<F>, TensorError> {
    precompose(f, g)
}

/// `f^n` by binary powering.
pub fn matrix_power<F: Field>(f: &TensorMap<F>, mut n: u64) -> Result<TensorMap<F>, TensorError> {
    if f.arity() != 1 || f.dom != f.cod[0] {
        return Err(TensorError::SignatureMismatch(format!("power of {}", f.signature())));
    }
    let mut acc = TensorMap::identity(f.field(), &f.dom);
    let mut base = f.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = matmul(&acc, &base)?;
        }
        n >>= 1;
        if n > 0 {
            base = matmul(&base, &base)?;
        }
    }
    Ok(acc)
}

/// Exact inverse by Gauss–Jordan elimination.
pub fn matrix_inverse<F: Field>(f: &TensorMap<F>) -> Result<TensorMap<F>, TensorError> {
    if f.arity() != 1 || f.dom != f.cod[0] {
        return Err(TensorError::SignatureMismatch(format!("inverse of {}", f.signature())));
    }
    let field = f.field().clone();
    let n = f.dom.dim();
    let mut a = f.matrix_rows();
    let mut inv: Vec<Vec<F::Elem>> = (0..n)
        .map(|r| (0..n).map(|c| if r == c { field.one() } else { field.zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero_elem()).ok_or(TensorError::Singular)?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let s = a[col][col].inverse().expect("nonzero pivot");
        for c in 0..n {
            a[col][c] = s.clone() * a[col][c].clone();
            inv[col][c] = s.clone() * inv[col][c].clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero_elem() {
                let m = a[r][col].clone();
                for c in 0..n {
                    a[r][c] = a[r][c].clone() - m.clone() * a[col][c].clone();
                    inv[r][c] = inv[r][c].clone() - m.clone() * inv[col][c].clone();
                }
            }
        }
    }
    TensorMap::from_matrix(&field, &f.dom, &inv)
}

/// Basis of the right kernel of a `rows × cols` matrix.
pub fn nullspace<F: Field>(field: &F, mut m: Vec<Vec<F::Elem>>, cols: usize) -> Vec<Vec<F::Elem>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero_elem()) else {
            continue;
        };
        m.swap(r, p);
        let s = m[r][c].inverse().expect("pivot");
        for x in m[r].iter_mut() {
            *x = s.clone() * x.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero_elem() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    m[i][k] = m[i][k].clone() - f.clone() * m[r][k].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); cols];
            v[fc] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][fc].clone();
            }
            v
        })
        .collect()
}
