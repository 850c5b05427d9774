//! The structure file format: parse with line/column errors, canonical emit.
//!
//! ```text
//! kind = HomCoassoc
//! field = Fp 5
//! dim C = 2
//!
//! map alpha C {
//!   e1 -> 1 e1
//!   e2 -> 2 e2
//! }
//!
//! comap delta C -> (C,C) {
//!   e1 -> 1 (e1, e1)
//!   e2 -> 1 (e1, e2) + 1 (e2, e1)
//! }
//! ```
//!
//! Comodule files add `base = <kind>` and a second space; algebra files use
//! `product <name> (A,A) -> A { (e1, e2) -> c e1 + ... }` blocks.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::comodules::{CoactionName, ComoduleKind, ComodulePackage};
use crate::field::{Field, FieldError, FieldSpec, PrimeField, Rationals};
use crate::structures::{AlgebraPackage, ProductName, ALGEBRA_KIND};
use crate::structures::{ComapName, RotaBaxter, StructureKind, StructurePackage};
use crate::tensor::{Space, TensorMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    SyntaxError,
    DimMismatch,
    NonPrimeModulus,
    UnknownKind,
    UnknownKey,
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {kind:?}: {msg}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

/// Anything a structure file can hold, over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Package<F: Field> {
    Structure(StructurePackage<F>),
    Comodule(ComodulePackage<F>),
    Algebra(AlgebraPackage<F>),
}

/// A parsed file, over whichever field its header names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyPackage {
    Q(Package<Rationals>),
    Fp(Package<PrimeField>),
}

impl<F: Field> Package<F> {
    pub fn field(&self) -> &F {
        match self {
            Package::Structure(s) => s.field(),
            Package::Comodule(c) => c.field(),
            Package::Algebra(a) => &a.field,
        }
    }
}

impl AnyPackage {
    pub fn emit(&self) -> String {
        match self {
            AnyPackage::Q(p) => emit(p),
            AnyPackage::Fp(p) => emit(p),
        }
    }
}

fn err(kind: ParseErrorKind, line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        kind,
        line,
        col,
        msg: msg.into(),
    }
}

/// A line split into tokens with 1-based columns.
struct Line<'a> {
    no: usize,
    toks: Vec<(usize, &'a str)>,
}

fn tokenize(no: usize, text: &str) -> Line<'_> {
    let text = match text.find('#') {
        Some(i) => &text[..i],
        None => text,
    };
    let mut toks = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if b"{}(),=+".contains(&c) {
            i += 1;
        } else if c == b'-' && bytes.get(i + 1) == Some(&b'>') {
            i += 2;
        } else if c == b'-' && bytes.get(i + 1).is_none_or(|n| n.is_ascii_whitespace()) {
            i += 1;
        } else {
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() && !b"{}(),=+".contains(&bytes[i]) {
                if bytes[i] == b'-' && bytes.get(i + 1) == Some(&b'>') {
                    break;
                }
                i += 1;
            }
        }
        toks.push((start + 1, &text[start..i]));
    }
    Line { no, toks }
}

struct Cursor<'l, 'a> {
    line: &'l Line<'a>,
    pos: usize,
}

impl<'a> Cursor<'_, 'a> {
    fn col(&self) -> usize {
        self.line.toks.get(self.pos).map(|t| t.0).unwrap_or_else(|| {
            self.line.toks.last().map(|(c, s)| c + s.len()).unwrap_or(1)
        })
    }
    fn peek(&self) -> Option<&'a str> {
        self.line.toks.get(self.pos).map(|t| t.1)
    }
    fn next(&mut self, what: &str) -> Result<&'a str, ParseError> {
        let t = self
            .peek()
            .ok_or_else(|| err(ParseErrorKind::SyntaxError, self.line.no, self.col(), format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }
    fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        let col = self.col();
        let t = self.next(&format!("`{tok}`"))?;
        if t != tok {
            return Err(err(ParseErrorKind::SyntaxError, self.line.no, col, format!("expected `{tok}`, found `{t}`")));
        }
        Ok(())
    }
    fn end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(err(ParseErrorKind::SyntaxError, self.line.no, self.col(), format!("unexpected `{t}`"))),
        }
    }
    fn error(&self, kind: ParseErrorKind, msg: impl Into<String>) -> ParseError {
        err(kind, self.line.no, self.col(), msg)
    }
}

/// Raw block contents before typing: row index, term list of (coef text, indices).
#[derive(Debug)]
struct Block {
    line: usize,
    kind: BlockKind,
    name: String,
    dom: String,
    cod: Vec<String>,
    rows: Vec<(usize, usize, Vec<usize>, String, Vec<usize>)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BlockKind {
    Map,
    Comap,
    Product,
}

#[derive(Default)]
struct Header {
    kind: Option<(usize, String)>,
    base: Option<(usize, String)>,
    field: Option<(usize, FieldSpec)>,
    dims: Vec<(String, usize)>,
    weight: Option<(usize, usize, String)>,
}

fn basis_index(c: &Cursor<'_, '_>, tok: &str) -> Result<usize, ParseError> {
    tok.strip_prefix('e')
        .and_then(|n| n.parse::<usize>().ok())
        .filter(|n| *n >= 1)
        .map(|n| n - 1)
        .ok_or_else(|| c.error(ParseErrorKind::SyntaxError, format!("expected basis vector `e<i>`, found `{tok}`")))
}

/// Parse `terms`: `0` or `[sign] [coef] target (sign [coef] target)*`.
fn parse_terms(
    c: &mut Cursor<'_, '_>,
    pair: bool,
) -> Result<Vec<(usize, String, Vec<usize>)>, ParseError> {
    let mut out = Vec::new();
    if c.peek() == Some("0") && c.line.toks.len() == c.pos + 1 {
        c.pos += 1;
        return Ok(out);
    }
    let mut first = true;
    while c.peek().is_some() {
        let mut neg = false;
        match c.peek() {
            Some("+") if !first => c.pos += 1,
            Some("-") => {
                c.pos += 1;
                neg = true;
            }
            _ if !first => return Err(c.error(ParseErrorKind::SyntaxError, "expected `+` or `-` between terms")),
            _ => {}
        }
        first = false;
        let col = c.col();
        let mut coef = "1".to_string();
        if let Some(t) = c.peek() {
            if t != "(" && !t.starts_with('e') {
                coef = t.to_string();
                c.pos += 1;
            }
        }
        if neg {
            coef = match coef.strip_prefix('-') {
                Some(rest) => rest.to_string(),
                None => format!("-{coef}"),
            };
        }
        let idx = if pair {
            c.expect("(")?;
            let j = c.next("basis vector")?;
            let j = basis_index(c, j)?;
            c.expect(",")?;
            let k = c.next("basis vector")?;
            let k = basis_index(c, k)?;
            c.expect(")")?;
            vec![j, k]
        } else {
            let j = c.next("basis vector")?;
            vec![basis_index(c, j)?]
        };
        out.push((col, coef, idx));
    }
    Ok(out)
}

fn parse_raw(text: &str) -> Result<(Header, Vec<Block>), ParseError> {
    let mut h = Header::default();
    let mut blocks: Vec<Block> = Vec::new();
    let mut open: Option<Block> = None;
    for (i, raw) in text.split('\n').enumerate() {
        let line = tokenize(i + 1, raw.strip_suffix('\r').unwrap_or(raw));
        if line.toks.is_empty() {
            continue;
        }
        let mut c = Cursor { line: &line, pos: 0 };
        if let Some(b) = open.as_mut() {
            if c.peek() == Some("}") {
                c.pos += 1;
                c.end()?;
                blocks.push(open.take().expect("open block"));
                continue;
            }
            let col = c.col();
            let (src, pair) = match b.kind {
                BlockKind::Map => (vec![basis_index(&c, c.peek().unwrap_or(""))?], false),
                BlockKind::Comap => (vec![basis_index(&c, c.peek().unwrap_or(""))?], true),
                BlockKind::Product => {
                    c.expect("(")?;
                    let a = c.next("basis vector")?;
                    let a = basis_index(&c, a)?;
                    c.expect(",")?;
                    let bb = c.next("basis vector")?;
                    let bb = basis_index(&c, bb)?;
                    c.expect(")")?;
                    c.pos -= 1;
                    (vec![a, bb], false)
                }
            };
            c.pos += 1;
            c.expect("->")?;
            for (tcol, coef, idx) in parse_terms(&mut c, pair)? {
                b.rows.push((line.no, tcol, src.clone(), coef, idx));
            }
            let _ = col;
            continue;
        }
        let key_col = c.col();
        let key = c.next("key")?;
        match key {
            "kind" | "base" => {
                c.expect("=")?;
                let v = c.next("kind id")?.to_string();
                c.end()?;
                let slot = if key == "kind" { &mut h.kind } else { &mut h.base };
                if slot.is_some() {
                    return Err(err(ParseErrorKind::SyntaxError, line.no, key_col, format!("duplicate `{key}`")));
                }
                *slot = Some((line.no, v));
            }
            "field" => {
                c.expect("=")?;
                let col = c.col();
                let rest: Vec<&str> = line.toks[c.pos..].iter().map(|t| t.1).collect();
                let spec: FieldSpec = rest.join(" ").parse().map_err(|e: FieldError| match e {
                    FieldError::NonPrimeModulus(_) => err(ParseErrorKind::NonPrimeModulus, line.no, col, e.to_string()),
                    other => err(ParseErrorKind::SyntaxError, line.no, col, other.to_string()),
                })?;
                h.field = Some((line.no, spec));
            }
            "dim" => {
                let name = c.next("space name")?.to_string();
                c.expect("=")?;
                let col = c.col();
                let n: usize = c
                    .next("dimension")?
                    .parse()
                    .map_err(|_| err(ParseErrorKind::SyntaxError, line.no, col, "dimension must be an integer"))?;
                c.end()?;
                if h.dims.iter().any(|(s, _)| *s == name) {
                    return Err(err(ParseErrorKind::SyntaxError, line.no, key_col, format!("space {name} declared twice")));
                }
                h.dims.push((name, n));
            }
            "rb" => {
                c.expect("weight")?;
                c.expect("=")?;
                let col = c.col();
                let v = c.next("scalar")?.to_string();
                c.end()?;
                h.weight = Some((line.no, col, v));
            }
            "map" | "comap" | "product" => {
                let name = c.next("map name")?.to_string();
                let (kind, dom, cod) = match key {
                    "map" => {
                        let dom = c.next("space")?.to_string();
                        (BlockKind::Map, dom.clone(), vec![dom])
                    }
                    "comap" => {
                        let dom = c.next("space")?.to_string();
                        c.expect("->")?;
                        c.expect("(")?;
                        let a = c.next("space")?.to_string();
                        c.expect(",")?;
                        let b = c.next("space")?.to_string();
                        c.expect(")")?;
                        (BlockKind::Comap, dom, vec![a, b])
                    }
                    _ => {
                        c.expect("(")?;
                        let a = c.next("space")?.to_string();
                        c.expect(",")?;
                        let b = c.next("space")?.to_string();
                        c.expect(")")?;
                        c.expect("->")?;
                        let out = c.next("space")?.to_string();
                        (BlockKind::Product, out, vec![a, b])
                    }
                };
                c.expect("{")?;
                c.end()?;
                if blocks.iter().any(|b| b.name == name) {
                    return Err(err(ParseErrorKind::SyntaxError, line.no, key_col, format!("block `{name}` repeated")));
                }
                open = Some(Block {
                    line: line.no,
                    kind,
                    name,
                    dom,
                    cod,
                    rows: Vec::new(),
                });
            }
            other => {
                return Err(err(ParseErrorKind::UnknownKey, line.no, key_col, format!("unknown key `{other}`")));
            }
        }
    }
    if let Some(b) = open {
        return Err(err(ParseErrorKind::SyntaxError, b.line, 1, format!("block `{}` is not closed", b.name)));
    }
    Ok((h, blocks))
}

/// Parse a structure, comodule, or algebra file.
pub fn parse_structure_file(text: &str) -> Result<AnyPackage, ParseError> {
    let (h, blocks) = parse_raw(text)?;
    let Some((line, spec)) = h.field else {
        return Err(err(ParseErrorKind::SyntaxError, 1, 1, "missing `field` header"));
    };
    match spec {
        FieldSpec::Rationals => Ok(AnyPackage::Q(build(&Rationals, &h, &blocks)?)),
        FieldSpec::PrimeField(p) => {
            let f = PrimeField::new(p as u64).map_err(|e| err(ParseErrorKind::NonPrimeModulus, line, 1, e.to_string()))?;
            Ok(AnyPackage::Fp(build(&f, &h, &blocks)?))
        }
    }
}

/// Parse a file that must be over `field`.
pub fn parse_with<F: Field>(text: &str, field: &F) -> Result<Package<F>, ParseError> {
    let (h, blocks) = parse_raw(text)?;
    match h.field {
        Some((_, s)) if s == field.spec() => build(field, &h, &blocks),
        Some((line, s)) => Err(err(ParseErrorKind::Invalid, line, 1, format!("file is over {s}, expected {}", field.spec()))),
        None => Err(err(ParseErrorKind::SyntaxError, 1, 1, "missing `field` header")),
    }
}

struct Built<F: Field> {
    spaces: BTreeMap<String, Space>,
    maps: BTreeMap<String, (usize, TensorMap<F>)>,
    products: BTreeMap<String, (usize, Vec<Vec<Vec<F::Elem>>>)>,
}

fn build_blocks<F: Field>(f: &F, h: &Header, blocks: &[Block]) -> Result<Built<F>, ParseError> {
    let mut spaces = BTreeMap::new();
    for (name, n) in &h.dims {
        let sp = Space::new(name, *n).map_err(|e| err(ParseErrorKind::DimMismatch, 1, 1, e.to_string()))?;
        spaces.insert(name.clone(), sp);
    }
    let space = |line: usize, name: &str| -> Result<Space, ParseError> {
        spaces
            .get(name)
            .cloned()
            .ok_or_else(|| err(ParseErrorKind::DimMismatch, line, 1, format!("space `{name}` has no `dim` line")))
    };
    let mut maps = BTreeMap::new();
    let mut products = BTreeMap::new();
    for b in blocks {
        let dom = space(b.line, &b.dom)?;
        let cod: Vec<Space> = b.cod.iter().map(|s| space(b.line, s)).collect::<Result<_, _>>()?;
        let check = |line: usize, col: usize, idx: usize, sp: &Space| -> Result<(), ParseError> {
            if idx >= sp.dim() {
                return Err(err(
                    ParseErrorKind::DimMismatch,
                    line,
                    col,
                    format!("e{} exceeds dim {} = {}", idx + 1, sp.name(), sp.dim()),
                ));
            }
            Ok(())
        };
        let scalar = |line: usize, col: usize, s: &str| -> Result<F::Elem, ParseError> {
            f.parse_elem(s).map_err(|e| err(ParseErrorKind::SyntaxError, line, col, e.to_string()))
        };
        match b.kind {
            BlockKind::Map | BlockKind::Comap => {
                let mut t = TensorMap::zeros(f, dom.clone(), cod.clone())
                    .map_err(|e| err(ParseErrorKind::Invalid, b.line, 1, e.to_string()))?;
                for (line, col, src, coef, idx) in &b.rows {
                    check(*line, 1, src[0], &dom)?;
                    for (i, sp) in idx.iter().zip(&cod) {
                        check(*line, *col, *i, sp)?;
                    }
                    let v = scalar(*line, *col, coef)?;
                    let cur = t.get(src[0], idx).clone();
                    t.set(src[0], idx, cur + v);
                }
                maps.insert(b.name.clone(), (b.line, t));
            }
            BlockKind::Product => {
                let n = dom.dim();
                if cod.iter().any(|c| c.dim() != n) {
                    return Err(err(ParseErrorKind::DimMismatch, b.line, 1, "product spaces differ"));
                }
                let mut m = vec![vec![vec![f.zero(); n]; n]; n];
                for (line, col, src, coef, idx) in &b.rows {
                    check(*line, 1, src[0], &cod[0])?;
                    check(*line, 1, src[1], &cod[1])?;
                    check(*line, *col, idx[0], &dom)?;
                    let v = scalar(*line, *col, coef)?;
                    let cell = &mut m[src[0]][src[1]][idx[0]];
                    *cell = cell.clone() + v;
                }
                products.insert(b.name.clone(), (b.line, m));
            }
        }
    }
    Ok(Built { spaces, maps, products })
}

fn invalid(line: usize, msg: impl Into<String>) -> ParseError {
    err(ParseErrorKind::Invalid, line, 1, msg)
}

fn build<F: Field>(f: &F, h: &Header, blocks: &[Block]) -> Result<Package<F>, ParseError> {
    let Some((kline, kind)) = &h.kind else {
        return Err(err(ParseErrorKind::SyntaxError, 1, 1, "missing `kind` header"));
    };
    let mut b = build_blocks(f, h, blocks)?;
    let take_unknown = |b: &Built<F>| -> Result<(), ParseError> {
        if let Some((name, (line, _))) = b.maps.iter().next() {
            return Err(err(ParseErrorKind::UnknownKey, *line, 1, format!("unexpected block `{name}`")));
        }
        if let Some((name, (line, _))) = b.products.iter().next() {
            return Err(err(ParseErrorKind::UnknownKey, *line, 1, format!("unexpected block `{name}`")));
        }
        Ok(())
    };
    if kind == ALGEBRA_KIND {
        if h.base.is_some() || h.weight.is_some() || b.spaces.len() != 1 {
            return Err(invalid(*kline, "algebra files take one space and no base or weight"));
        }
        let space = b.spaces.values().next().expect("one space").clone();
        let (_, alpha) = b.maps.remove("alpha").ok_or_else(|| invalid(*kline, "missing map alpha"))?;
        let alpha_cols = alpha.matrix_rows();
        let mut products = BTreeMap::new();
        for p in ProductName::ALL {
            let (_, m) = b
                .products
                .remove(p.id())
                .ok_or_else(|| invalid(*kline, format!("missing product {p}")))?;
            products.insert(p, m);
        }
        take_unknown(&b)?;
        let a = AlgebraPackage {
            field: f.clone(),
            space,
            alpha: alpha_cols,
            products,
        };
        a.validate().map_err(|e| invalid(*kline, e.to_string()))?;
        return Ok(Package::Algebra(a));
    }
    let base_kind_id = match &h.base {
        Some((_, k)) => k.clone(),
        None => kind.clone(),
    };
    let skind: StructureKind = base_kind_id
        .parse()
        .map_err(|_| err(ParseErrorKind::UnknownKind, h.base.as_ref().map_or(*kline, |x| x.0), 1, format!("unknown kind `{base_kind_id}`")))?;
    let ckind: Option<ComoduleKind> = match &h.base {
        Some(_) => Some(
            kind.parse()
                .map_err(|_| err(ParseErrorKind::UnknownKind, *kline, 1, format!("unknown comodule kind `{kind}`")))?,
        ),
        None => None,
    };
    if !b.products.is_empty() {
        take_unknown(&Built { spaces: BTreeMap::new(), maps: BTreeMap::new(), products: b.products })?;
        unreachable!();
    }
    let (_, alpha) = b.maps.remove("alpha").ok_or_else(|| invalid(*kline, "missing map alpha"))?;
    let mut comaps = BTreeMap::new();
    for name in skind.required_comaps() {
        let (_, m) = b
            .maps
            .remove(name.id())
            .ok_or_else(|| invalid(*kline, format!("missing comap {}", name.id())))?;
        comaps.insert(*name, m);
    }
    let rb = if skind.has_rb() {
        let (_, r) = b.maps.remove("rb").ok_or_else(|| invalid(*kline, "missing map rb"))?;
        let (wl, wc, w) = h.weight.as_ref().ok_or_else(|| invalid(*kline, "missing `rb weight`"))?;
        let weight = f
            .parse_elem(w)
            .map_err(|e| err(ParseErrorKind::SyntaxError, *wl, *wc, e.to_string()))?;
        Some(RotaBaxter { operator: r, weight })
    } else {
        if let Some((wl, _, _)) = &h.weight {
            return Err(err(ParseErrorKind::UnknownKey, *wl, 1, format!("{skind} takes no Rota–Baxter weight")));
        }
        None
    };
    let s = StructurePackage::new(skind, alpha, comaps, rb).map_err(|e| invalid(*kline, e.to_string()))?;
    let Some(ck) = ckind else {
        if b.spaces.len() != 1 {
            return Err(invalid(*kline, "structure files declare exactly one space"));
        }
        take_unknown(&b)?;
        return Ok(Package::Structure(s));
    };
    if ck.base_kind() != skind {
        return Err(err(ParseErrorKind::UnknownKind, *kline, 1, format!("{ck} is not a comodule over {skind}")));
    }
    let (_, alpha_m) = b.maps.remove("alpha_m").ok_or_else(|| invalid(*kline, "missing map alpha_m"))?;
    let mut maps = BTreeMap::new();
    for n in ck.maps() {
        let (_, m) = b.maps.remove(n.id()).ok_or_else(|| invalid(*kline, format!("missing comap {}", n.id())))?;
        maps.insert(*n, m);
    }
    take_unknown(&b)?;
    if b.spaces.len() != 2 {
        return Err(invalid(*kline, "comodule files declare exactly two spaces"));
    }
    let c = ComodulePackage::new(ck, s, alpha_m, maps).map_err(|e| invalid(*kline, e.to_string()))?;
    Ok(Package::Comodule(c))
}

fn emit_map<F: Field>(out: &mut String, name: &str, m: &TensorMap<F>) {
    let dom = m.dom().name();
    if m.arity() == 1 {
        let _ = writeln!(out, "map {name} {dom} {{");
    } else {
        let _ = writeln!(out, "comap {name} {dom} -> ({},{}) {{", m.cod()[0].name(), m.cod()[1].name());
    }
    let mut rows: BTreeMap<usize, Vec<String>> = (0..m.dom().dim()).map(|i| (i, Vec::new())).collect();
    for (i, js, c) in m.support() {
        let target = if js.len() == 1 {
            format!("e{}", js[0] + 1)
        } else {
            format!("(e{}, e{})", js[0] + 1, js[1] + 1)
        };
        rows.get_mut(&i).expect("row").push(format!("{c} {target}"));
    }
    for (i, terms) in rows {
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        let _ = writeln!(out, "  e{} -> {body}", i + 1);
    }
    out.push_str("}\n");
}

/// Canonical text: fixed header order, every row present, sorted terms.
pub fn emit<F: Field>(p: &Package<F>) -> String {
    let mut out = String::new();
    match p {
        Package::Structure(s) => {
            let _ = writeln!(out, "kind = {}", s.kind());
            let _ = writeln!(out, "field = {}", s.field().spec());
            let _ = writeln!(out, "dim {} = {}", s.space().name(), s.dim());
            if let Some(rb) = s.rb() {
                let _ = writeln!(out, "rb weight = {}", rb.weight);
            }
            emit_structure_maps(&mut out, s);
        }
        Package::Comodule(c) => {
            let _ = writeln!(out, "kind = {}", c.kind());
            let _ = writeln!(out, "base = {}", c.base().kind());
            let _ = writeln!(out, "field = {}", c.field().spec());
            let _ = writeln!(out, "dim {} = {}", c.base().space().name(), c.base().dim());
            let _ = writeln!(out, "dim {} = {}", c.mspace().name(), c.mspace().dim());
            emit_structure_maps(&mut out, c.base());
            out.push('\n');
            emit_map(&mut out, "alpha_m", c.alpha_m());
            for n in CoactionName::ALL {
                if let Some(m) = c.maps().get(&n) {
                    out.push('\n');
                    emit_map(&mut out, n.id(), m);
                }
            }
        }
        Package::Algebra(a) => {
            let n = a.space.dim();
            let sp = a.space.name();
            let _ = writeln!(out, "kind = {ALGEBRA_KIND}");
            let _ = writeln!(out, "field = {}", a.field.spec());
            let _ = writeln!(out, "dim {sp} = {n}");
            out.push('\n');
            let alpha = TensorMap::from_matrix(&a.field, &a.space, &a.alpha).expect("square");
            emit_map(&mut out, "alpha", &alpha);
            for p in ProductName::ALL {
                let m = &a.products[&p];
                let _ = writeln!(out, "\nproduct {} ({sp},{sp}) -> {sp} {{", p.id());
                for i in 0..n {
                    for j in 0..n {
                        let terms: Vec<String> = (0..n)
                            .filter(|k| !crate::field::Scalar::is_zero_elem(&m[i][j][*k]))
                            .map(|k| format!("{} e{}", m[i][j][k], k + 1))
                            .collect();
                        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                        let _ = writeln!(out, "  (e{}, e{}) -> {body}", i + 1, j + 1);
                    }
                }
                out.push_str("}\n");
            }
        }
    }
    out
}

fn emit_structure_maps<F: Field>(out: &mut String, s: &StructurePackage<F>) {
    out.push('\n');
    emit_map(out, "alpha", s.alpha());
    if let Some(rb) = s.rb() {
        out.push('\n');
        emit_map(out, "rb", &rb.operator);
    }
    for n in ComapName::ALL {
        if let Some(m) = s.comaps().get(&n) {
            out.push('\n');
            emit_map(out, n.id(), m);
        }
    }
}
