//! The line-oriented `.mctx` context description format.
//!
//! ```text
//! # Z6 with V = 2Z6, W = 3Z6
//! context ex
//! base zn 6
//! R all
//! S all
//! V subset 0,2,4
//! W subset 0,3
//! product VW inherited
//! product WV inherited
//! ideal H two 0,3 / all / all / 0,2,4
//! ```
//!
//! Explicit tables follow a `table` directive, one row per line:
//! `table add R`, `table mul R`, `table add V`, `table left V`,
//! `table right V`, and `product VW table`.

use std::fmt::{self, Write as _};

use morita_core::finring::{make_zn, RawRingTables};
use morita_core::modstruct::{Bimodule, RawBimodule};
use morita_core::morita::{ContextParts, IdealQuadruple, MoritaContext};
use morita_core::{FiniteRing, Side, Subset};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    /// The base ring `Z_n`.
    Base,
    Zn(usize),
    Explicit {
        order: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    /// The base ring `Z_n` as a module by residues.
    Base,
    /// An additive subgroup of the base ring, as residues.
    Subset(Vec<usize>),
    /// `Z_g` acted on by residues.
    Zn(usize),
    Zero,
    Explicit {
        order: usize,
        add: Vec<Vec<usize>>,
        left: Vec<Vec<usize>>,
        right: Vec<Vec<usize>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductSpec {
    /// Multiply the residues of `v` and `w` and reduce into the ring.
    Inherited,
    Zero,
    /// Inherited product scaled by `k`.
    Scalar(usize),
    Table(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentSpec {
    All,
    Zero,
    Elements(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSpec {
    pub name: String,
    pub side: Side,
    pub parts: [ComponentSpec; 4],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextDocument {
    pub name: String,
    pub base: Option<usize>,
    pub r: RingSpec,
    pub s: RingSpec,
    pub v: ModuleSpec,
    pub w: ModuleSpec,
    pub vw: ProductSpec,
    pub wv: ProductSpec,
    pub ideals: Vec<IdealSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    R,
    S,
    V,
    W,
}

impl Slot {
    fn name(self) -> &'static str {
        match self {
            Slot::R => "R",
            Slot::S => "S",
            Slot::V => "V",
            Slot::W => "W",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TableKind {
    Add,
    Mul,
    Left,
    Right,
    Product,
}

#[derive(Debug)]
struct PendingTable {
    kind: TableKind,
    slot: Slot,
    /// For products, whether this is `VW` (true) or `WV`.
    vw: bool,
    line: usize,
    rows: Vec<Vec<usize>>,
}

#[derive(Debug, Default)]
struct Builder {
    name: Option<String>,
    base: Option<usize>,
    rings: [Option<(RingSpec, usize)>; 2],
    modules: [Option<(ModuleSpec, usize)>; 2],
    vw: Option<ProductSpec>,
    wv: Option<ProductSpec>,
    ideals: Vec<IdealSpec>,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], column: line[..s].chars().count() + 1 });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], column: line[..s].chars().count() + 1 });
    }
    out
}

struct Cursor<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    pos: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn next(&mut self, expected: &str) -> Result<&Token<'a>, ParseError> {
        if self.pos < self.tokens.len() {
            self.pos += 1;
            Ok(&self.tokens[self.pos - 1])
        } else {
            Err(self.err(self.end_column, format!("expected {expected}, found end of line")))
        }
    }

    fn keyword(&mut self, options: &[&str]) -> Result<(String, usize), ParseError> {
        let expected = options.iter().map(|o| format!("`{o}`")).collect::<Vec<_>>().join(" or ");
        let tok = self.next(&expected)?;
        let (text, column) = (tok.text.to_string(), tok.column);
        if options.contains(&text.as_str()) {
            Ok((text, column))
        } else {
            Err(self.err(column, format!("expected {expected}, found `{text}`")))
        }
    }

    fn number(&mut self, what: &str) -> Result<(usize, usize), ParseError> {
        let tok = self.next(what)?;
        let (text, column) = (tok.text, tok.column);
        text.parse()
            .map(|n| (n, column))
            .map_err(|_| self.err(column, format!("expected {what}, found `{text}`")))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.tokens.get(self.pos) {
            Some(t) => Err(self.err(t.column, format!("unexpected `{}` at end of directive", t.text))),
            None => Ok(()),
        }
    }

    /// Everything after the current token, with the column it starts at.
    fn rest(&self, raw: &'a str) -> (&'a str, usize) {
        match self.tokens.get(self.pos) {
            Some(t) => {
                let byte = raw.char_indices().nth(t.column - 1).map(|(b, _)| b).unwrap_or(raw.len());
                (&raw[byte..], t.column)
            }
            None => ("", self.end_column),
        }
    }
}

fn parse_list(cur: &Cursor<'_>, text: &str, column: usize) -> Result<Vec<usize>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let trimmed = part.trim();
        let col = column + offset + (part.len() - part.trim_start().len());
        out.push(
            trimmed
                .parse()
                .map_err(|_| cur.err(col, format!("expected a residue, found `{trimmed}`")))?,
        );
        offset += part.chars().count() + 1;
    }
    Ok(out)
}

fn parse_component(cur: &Cursor<'_>, text: &str, column: usize) -> Result<ComponentSpec, ParseError> {
    let t = text.trim();
    match t {
        "all" => Ok(ComponentSpec::All),
        "zero" => Ok(ComponentSpec::Zero),
        "" => Err(cur.err(column, "expected `all`, `zero` or a comma-separated element list")),
        _ => {
            let items: Vec<String> = t.split(',').map(|x| x.trim().to_string()).collect();
            if items.iter().any(String::is_empty) {
                return Err(cur.err(column, "empty element in list"));
            }
            Ok(ComponentSpec::Elements(items))
        }
    }
}

fn is_row(tokens: &[Token<'_>]) -> bool {
    !tokens.is_empty() && tokens.iter().all(|t| t.text.bytes().all(|b| b.is_ascii_digit()))
}

/// Parses a context description.
pub fn parse_mctx(text: &str) -> Result<ContextDocument, ParseError> {
    let mut b = Builder::default();
    let mut pending: Option<PendingTable> = None;
    let mut last_line = 0;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let raw = raw_line.split('#').next().unwrap_or("");
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            continue;
        }
        let mut cur = Cursor {
            line: line_no,
            end_column: raw.chars().count() + 1,
            tokens,
            pos: 0,
        };
        if is_row(&cur.tokens) {
            let row: Vec<usize> = cur
                .tokens
                .iter()
                .map(|t| t.text.parse().map_err(|_| cur.err(t.column, "table entry out of range")))
                .collect::<Result<_, _>>()?;
            match pending.as_mut() {
                Some(p) => p.rows.push(row),
                None => return Err(cur.err(1, "table row outside a `table` directive")),
            }
            continue;
        }
        if let Some(p) = pending.take() {
            store_table(&mut b, p)?;
        }
        pending = directive(&mut b, &mut cur, raw)?;
    }
    if let Some(p) = pending.take() {
        store_table(&mut b, p)?;
    }
    finish(b, last_line + 1)
}

fn slot_of(cur: &Cursor<'_>, text: &str, column: usize, allowed: &[Slot]) -> Result<Slot, ParseError> {
    let slot = match text {
        "R" => Slot::R,
        "S" => Slot::S,
        "V" => Slot::V,
        "W" => Slot::W,
        _ => return Err(cur.err(column, format!("expected a component name, found `{text}`"))),
    };
    if allowed.contains(&slot) {
        Ok(slot)
    } else {
        Err(cur.err(column, format!("`{text}` is not valid here")))
    }
}

fn directive(b: &mut Builder, cur: &mut Cursor<'_>, raw: &str) -> Result<Option<PendingTable>, ParseError> {
    let head = cur.next("a directive")?;
    let (head_text, head_col) = (head.text.to_string(), head.column);
    let line = cur.line;
    match head_text.as_str() {
        "context" => {
            let name = cur.next("a context name")?.text.to_string();
            cur.finish()?;
            if b.name.replace(name).is_some() {
                return Err(cur.err(head_col, "duplicate `context` directive"));
            }
        }
        "base" => {
            cur.keyword(&["zn"])?;
            let (n, col) = cur.number("the base modulus")?;
            cur.finish()?;
            if n < 2 {
                return Err(cur.err(col, "base modulus must be at least 2"));
            }
            if b.base.replace(n).is_some() {
                return Err(cur.err(head_col, "duplicate `base` directive"));
            }
        }
        "R" | "S" => {
            let slot = if head_text == "R" { Slot::R } else { Slot::S };
            let (form, col) = cur.keyword(&["all", "zn", "explicit"])?;
            let spec = match form.as_str() {
                "all" => {
                    if b.base.is_none() {
                        return Err(cur.err(col, "`all` needs a preceding `base zn n`"));
                    }
                    RingSpec::Base
                }
                "zn" => {
                    let (k, kcol) = cur.number("a modulus")?;
                    if k < 2 {
                        return Err(cur.err(kcol, "modulus must be at least 2"));
                    }
                    RingSpec::Zn(k)
                }
                _ => {
                    let (k, kcol) = cur.number("the ring order")?;
                    if k == 0 {
                        return Err(cur.err(kcol, "ring order must be positive"));
                    }
                    RingSpec::Explicit {
                        order: k,
                        add: Vec::new(),
                        mul: Vec::new(),
                    }
                }
            };
            cur.finish()?;
            let i = if slot == Slot::R { 0 } else { 1 };
            if b.rings[i].replace((spec, line)).is_some() {
                return Err(cur.err(head_col, format!("duplicate `{head_text}` directive")));
            }
        }
        "V" | "W" => {
            let (form, col) = cur.keyword(&["all", "subset", "zn", "zero", "explicit"])?;
            let spec = match form.as_str() {
                "all" => {
                    if b.base.is_none() {
                        return Err(cur.err(col, "`all` needs a preceding `base zn n`"));
                    }
                    ModuleSpec::Base
                }
                "subset" => {
                    let n = b
                        .base
                        .ok_or_else(|| cur.err(col, "`subset` needs a preceding `base zn n`"))?;
                    let (text, lcol) = cur.rest(raw);
                    if text.trim().is_empty() {
                        return Err(cur.err(lcol, "expected a comma-separated residue list"));
                    }
                    let list = parse_list(cur, text.trim_end(), lcol)?;
                    cur.pos = cur.tokens.len();
                    if let Some(bad) = list.iter().find(|&&x| x >= n) {
                        return Err(cur.err(lcol, format!("element {bad} out of range for base Z{n}")));
                    }
                    check_subgroup(cur, &list, n, lcol)?;
                    let mut list = list;
                    list.sort_unstable();
                    list.dedup();
                    ModuleSpec::Subset(list)
                }
                "zn" => {
                    let (g, gcol) = cur.number("a modulus")?;
                    if g == 0 {
                        return Err(cur.err(gcol, "modulus must be positive"));
                    }
                    ModuleSpec::Zn(g)
                }
                "zero" => ModuleSpec::Zero,
                _ => {
                    let (m, mcol) = cur.number("the module order")?;
                    if m == 0 {
                        return Err(cur.err(mcol, "module order must be positive"));
                    }
                    ModuleSpec::Explicit {
                        order: m,
                        add: Vec::new(),
                        left: Vec::new(),
                        right: Vec::new(),
                    }
                }
            };
            cur.finish()?;
            let i = if head_text == "V" { 0 } else { 1 };
            if b.modules[i].replace((spec, line)).is_some() {
                return Err(cur.err(head_col, format!("duplicate `{head_text}` directive")));
            }
        }
        "table" => {
            let (kind, _) = cur.keyword(&["add", "mul", "left", "right"])?;
            let target = cur.next("a component name")?;
            let (ttext, tcol) = (target.text.to_string(), target.column);
            cur.finish()?;
            let (kind, allowed): (TableKind, &[Slot]) = match kind.as_str() {
                "add" => (TableKind::Add, &[Slot::R, Slot::S, Slot::V, Slot::W]),
                "mul" => (TableKind::Mul, &[Slot::R, Slot::S]),
                "left" => (TableKind::Left, &[Slot::V, Slot::W]),
                _ => (TableKind::Right, &[Slot::V, Slot::W]),
            };
            let slot = slot_of(cur, &ttext, tcol, allowed)?;
            let explicit = match slot {
                Slot::R => matches!(b.rings[0], Some((RingSpec::Explicit { .. }, _))),
                Slot::S => matches!(b.rings[1], Some((RingSpec::Explicit { .. }, _))),
                Slot::V => matches!(b.modules[0], Some((ModuleSpec::Explicit { .. }, _))),
                Slot::W => matches!(b.modules[1], Some((ModuleSpec::Explicit { .. }, _))),
            };
            if !explicit {
                return Err(cur.err(tcol, format!("`{ttext}` must be declared `explicit` before its tables")));
            }
            return Ok(Some(PendingTable {
                kind,
                slot,
                vw: false,
                line,
                rows: Vec::new(),
            }));
        }
        "product" => {
            let (which, _) = cur.keyword(&["VW", "WV"])?;
            let (form, _) = cur.keyword(&["inherited", "zero", "table", "scalar"])?;
            let spec = match form.as_str() {
                "inherited" => ProductSpec::Inherited,
                "zero" => ProductSpec::Zero,
                "scalar" => ProductSpec::Scalar(cur.number("a scalar")?.0),
                _ => {
                    cur.finish()?;
                    return Ok(Some(PendingTable {
                        kind: TableKind::Product,
                        slot: Slot::R,
                        vw: which == "VW",
                        line,
                        rows: Vec::new(),
                    }));
                }
            };
            cur.finish()?;
            let target = if which == "VW" { &mut b.vw } else { &mut b.wv };
            if target.replace(spec).is_some() {
                return Err(cur.err(head_col, format!("duplicate product {which}")));
            }
        }
        "scalar" => {
            cur.keyword(&["s"])?;
            let (k, _) = cur.number("a scalar")?;
            cur.finish()?;
            if b.vw.is_some() || b.wv.is_some() {
                return Err(cur.err(head_col, "`scalar` conflicts with an earlier `product` directive"));
            }
            b.vw = Some(ProductSpec::Scalar(k));
            b.wv = Some(ProductSpec::Scalar(k));
        }
        "ideal" => {
            let name = cur.next("an ideal name")?.text.to_string();
            let (side, _) = cur.keyword(&["two", "left", "right"])?;
            let side = match side.as_str() {
                "two" => Side::Two,
                "left" => Side::Left,
                _ => Side::Right,
            };
            let (text, col) = cur.rest(raw);
            let pieces: Vec<&str> = text.split('/').collect();
            if pieces.len() != 4 {
                return Err(cur.err(col, format!("expected four `/`-separated components, found {}", pieces.len())));
            }
            let mut parts = Vec::new();
            let mut offset = 0;
            for p in &pieces {
                parts.push(parse_component(cur, p, col + offset)?);
                offset += p.chars().count() + 1;
            }
            if b.ideals.iter().any(|i| i.name == name) {
                return Err(cur.err(head_col, format!("duplicate ideal `{name}`")));
            }
            b.ideals.push(IdealSpec {
                name,
                side,
                parts: parts.try_into().expect("four components"),
            });
        }
        other => return Err(cur.err(head_col, format!("unknown directive `{other}`"))),
    }
    Ok(None)
}

fn check_subgroup(cur: &Cursor<'_>, list: &[usize], n: usize, column: usize) -> Result<(), ParseError> {
    for &a in list {
        for &b in list {
            let c = (a + b) % n;
            if !list.contains(&c) {
                return Err(cur.err(
                    column,
                    format!("subset not closed under addition mod {n}: {a}+{b}={c} missing"),
                ));
            }
        }
    }
    Ok(())
}

fn store_table(b: &mut Builder, p: PendingTable) -> Result<(), ParseError> {
    let err = |message: String| ParseError {
        line: p.line,
        column: 1,
        message,
    };
    if p.rows.is_empty() {
        return Err(err("table has no rows".into()));
    }
    let duplicate = || err("duplicate table".into());
    match p.kind {
        TableKind::Product => {
            let target = if p.vw { &mut b.vw } else { &mut b.wv };
            if target.replace(ProductSpec::Table(p.rows)).is_some() {
                return Err(duplicate());
            }
        }
        TableKind::Add | TableKind::Mul if matches!(p.slot, Slot::R | Slot::S) => {
            let i = if p.slot == Slot::R { 0 } else { 1 };
            if let Some((RingSpec::Explicit { add, mul, .. }, _)) = b.rings[i].as_mut() {
                let t = if p.kind == TableKind::Add { add } else { mul };
                if !t.is_empty() {
                    return Err(duplicate());
                }
                *t = p.rows;
            }
        }
        _ => {
            let i = if p.slot == Slot::V { 0 } else { 1 };
            if let Some((ModuleSpec::Explicit { add, left, right, .. }, _)) = b.modules[i].as_mut() {
                let t = match p.kind {
                    TableKind::Add => add,
                    TableKind::Left => left,
                    _ => right,
                };
                if !t.is_empty() {
                    return Err(duplicate());
                }
                *t = p.rows;
            }
        }
    }
    Ok(())
}

fn finish(b: Builder, eof_line: usize) -> Result<ContextDocument, ParseError> {
    let missing = |what: &str| ParseError {
        line: eof_line,
        column: 1,
        message: format!("missing `{what}` directive"),
    };
    let [r, s] = b.rings;
    let [v, w] = b.modules;
    let (r, r_line) = r.ok_or_else(|| missing("R"))?;
    let (s, s_line) = s.ok_or_else(|| missing("S"))?;
    let (v, v_line) = v.ok_or_else(|| missing("V"))?;
    let (w, w_line) = w.ok_or_else(|| missing("W"))?;
    for (spec, line, slot) in [(&r, r_line, Slot::R), (&s, s_line, Slot::S)] {
        if let RingSpec::Explicit { add, mul, .. } = spec {
            for (t, what) in [(add, "add"), (mul, "mul")] {
                if t.is_empty() {
                    return Err(ParseError {
                        line,
                        column: 1,
                        message: format!("explicit {} needs `table {what} {}`", slot.name(), slot.name()),
                    });
                }
            }
        }
    }
    for (spec, line, slot) in [(&v, v_line, Slot::V), (&w, w_line, Slot::W)] {
        if let ModuleSpec::Explicit { add, left, right, .. } = spec {
            for (t, what) in [(add, "add"), (left, "left"), (right, "right")] {
                if t.is_empty() {
                    return Err(ParseError {
                        line,
                        column: 1,
                        message: format!("explicit {} needs `table {what} {}`", slot.name(), slot.name()),
                    });
                }
            }
        }
    }
    Ok(ContextDocument {
        name: b.name.unwrap_or_else(|| "context".into()),
        base: b.base,
        r,
        s,
        v,
        w,
        vw: b.vw.unwrap_or(ProductSpec::Inherited),
        wv: b.wv.unwrap_or(ProductSpec::Inherited),
        ideals: b.ideals,
    })
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn write_rows(out: &mut String, rows: &[Vec<usize>]) {
    for row in rows {
        let _ = writeln!(out, "{}", join(row, " "));
    }
}

impl ContextDocument {
    /// Canonical text form; parsing it yields an equal document.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "context {}", self.name);
        if let Some(n) = self.base {
            let _ = writeln!(out, "base zn {n}");
        }
        for (spec, name) in [(&self.r, "R"), (&self.s, "S")] {
            match spec {
                RingSpec::Base => {
                    let _ = writeln!(out, "{name} all");
                }
                RingSpec::Zn(k) => {
                    let _ = writeln!(out, "{name} zn {k}");
                }
                RingSpec::Explicit { order, add, mul } => {
                    let _ = writeln!(out, "{name} explicit {order}");
                    let _ = writeln!(out, "table add {name}");
                    write_rows(&mut out, add);
                    let _ = writeln!(out, "table mul {name}");
                    write_rows(&mut out, mul);
                }
            }
        }
        for (spec, name) in [(&self.v, "V"), (&self.w, "W")] {
            match spec {
                ModuleSpec::Base => {
                    let _ = writeln!(out, "{name} all");
                }
                ModuleSpec::Subset(list) => {
                    let _ = writeln!(out, "{name} subset {}", join(list, ","));
                }
                ModuleSpec::Zn(g) => {
                    let _ = writeln!(out, "{name} zn {g}");
                }
                ModuleSpec::Zero => {
                    let _ = writeln!(out, "{name} zero");
                }
                ModuleSpec::Explicit { order, add, left, right } => {
                    let _ = writeln!(out, "{name} explicit {order}");
                    for (t, what) in [(add, "add"), (left, "left"), (right, "right")] {
                        let _ = writeln!(out, "table {what} {name}");
                        write_rows(&mut out, t);
                    }
                }
            }
        }
        match (&self.vw, &self.wv) {
            (ProductSpec::Scalar(a), ProductSpec::Scalar(b)) if a == b => {
                let _ = writeln!(out, "scalar s {a}");
            }
            _ => {
                for (spec, which) in [(&self.vw, "VW"), (&self.wv, "WV")] {
                    match spec {
                        ProductSpec::Inherited => {
                            let _ = writeln!(out, "product {which} inherited");
                        }
                        ProductSpec::Zero => {
                            let _ = writeln!(out, "product {which} zero");
                        }
                        ProductSpec::Scalar(k) => {
                            let _ = writeln!(out, "product {which} scalar {k}");
                        }
                        ProductSpec::Table(rows) => {
                            let _ = writeln!(out, "product {which} table");
                            write_rows(&mut out, rows);
                        }
                    }
                }
            }
        }
        for ideal in &self.ideals {
            let side = match ideal.side {
                Side::Two => "two",
                Side::Left => "left",
                Side::Right => "right",
            };
            let parts: Vec<String> = ideal
                .parts
                .iter()
                .map(|p| match p {
                    ComponentSpec::All => "all".to_string(),
                    ComponentSpec::Zero => "zero".to_string(),
                    ComponentSpec::Elements(xs) => xs.join(","),
                })
                .collect();
            let _ = writeln!(out, "ideal {} {side} {}", ideal.name, parts.join(" / "));
        }
        out
    }

    /// Builds and validates the context and resolves the named ideals.
    pub fn resolve(&self) -> Result<ResolvedDocument, CliError> {
        let base = || self.base.ok_or_else(|| CliError::Invalid("`all`/`subset` need a base ring".into()));
        let ring = |spec: &RingSpec, name: &str| -> Result<FiniteRing, CliError> {
            Ok(match spec {
                RingSpec::Base => make_zn(base()?)?,
                RingSpec::Zn(k) => make_zn(*k)?,
                RingSpec::Explicit { add, mul, .. } => {
                    let raw = RawRingTables {
                        labels: None,
                        zero: find_identity(add),
                        one: find_identity(mul),
                        add: add.clone(),
                        mul: mul.clone(),
                    };
                    FiniteRing::from_tables(name, &raw)?
                }
            })
        };
        let r = ring(&self.r, "R")?;
        let s = ring(&self.s, "S")?;
        let module = |spec: &ModuleSpec, name: &str, left: &FiniteRing, right: &FiniteRing| -> Result<Bimodule, CliError> {
            Ok(match spec {
                ModuleSpec::Base => {
                    let n = base()?;
                    Bimodule::residues(name, n, &(0..n).collect::<Vec<_>>(), left, right)?
                }
                ModuleSpec::Subset(list) => Bimodule::residues(name, base()?, list, left, right)?,
                ModuleSpec::Zn(g) => Bimodule::residues(name, *g, &(0..*g).collect::<Vec<_>>(), left, right)?,
                ModuleSpec::Zero => Bimodule::zero_module(left, right),
                ModuleSpec::Explicit { add, left: l, right: rt, .. } => {
                    let raw = RawBimodule {
                        labels: None,
                        zero: find_identity(add),
                        add: add.clone(),
                        left_act: l.clone(),
                        right_act: rt.clone(),
                    };
                    Bimodule::from_tables(name, &raw, left, right)?
                }
            })
        };
        let v = module(&self.v, "V", &r, &s)?;
        let w = module(&self.w, "W", &s, &r)?;
        let vw = product_table(&self.vw, &v, &w, &r, "VW")?;
        let wv = product_table(&self.wv, &w, &v, &s, "WV")?;
        let ctx = MoritaContext::new(self.name.clone(), ContextParts { r, s, v, w, vw, wv })?;
        let ideals = self
            .ideals
            .iter()
            .map(|spec| {
                Ok(NamedIdeal {
                    name: spec.name.clone(),
                    side: spec.side,
                    quad: resolve_quadruple(&ctx, &spec.parts)?,
                })
            })
            .collect::<Result<_, CliError>>()?;
        Ok(ResolvedDocument { ctx, ideals })
    }
}

fn find_identity(add: &[Vec<usize>]) -> usize {
    (0..add.len())
        .find(|&e| (0..add.len()).all(|x| add[e].get(x) == Some(&x) && add.get(x).and_then(|r| r.get(e)) == Some(&x)))
        .unwrap_or(0)
}

/// Residue value of a label, for inherited products.
fn residue(label: &str, what: &str) -> Result<usize, CliError> {
    label
        .parse()
        .map_err(|_| CliError::Invalid(format!("inherited product needs residue labels, {what} has `{label}`")))
}

fn product_table(
    spec: &ProductSpec,
    left: &Bimodule,
    right: &Bimodule,
    target: &FiniteRing,
    what: &str,
) -> Result<Vec<Vec<usize>>, CliError> {
    let scaled = |k: usize| -> Result<Vec<Vec<usize>>, CliError> {
        let n = target.order();
        if (0..n).any(|i| target.label(i) != i.to_string()) {
            return Err(CliError::Invalid(format!("{what} inherited product needs a residue ring")));
        }
        left.elements()
            .map(|a| {
                right
                    .elements()
                    .map(|b| Ok(k * residue(left.label(a), left.name())? * residue(right.label(b), right.name())? % n))
                    .collect()
            })
            .collect()
    };
    match spec {
        ProductSpec::Inherited => scaled(1),
        ProductSpec::Scalar(k) => scaled(*k),
        ProductSpec::Zero => Ok(vec![vec![target.zero(); right.order()]; left.order()]),
        ProductSpec::Table(rows) => Ok(rows.clone()),
    }
}

fn resolve_quadruple(ctx: &MoritaContext, parts: &[ComponentSpec; 4]) -> Result<IdealQuadruple, CliError> {
    let r_labels: Vec<String> = ctx.r().elements().map(|i| ctx.r().label(i)).collect();
    let s_labels: Vec<String> = ctx.s().elements().map(|i| ctx.s().label(i)).collect();
    let v_labels: Vec<String> = ctx.v().elements().map(|i| ctx.v().label(i).to_string()).collect();
    let w_labels: Vec<String> = ctx.w().elements().map(|i| ctx.w().label(i).to_string()).collect();
    let comp = |spec: &ComponentSpec, labels: &[String], zero: usize, what: &str| -> Result<Subset, CliError> {
        let n = labels.len();
        Ok(match spec {
            ComponentSpec::All => Subset::full(n),
            ComponentSpec::Zero => Subset::singleton(n, zero),
            ComponentSpec::Elements(xs) => {
                let mut out = Subset::empty(n);
                for x in xs {
                    let i = labels
                        .iter()
                        .position(|l| l == x)
                        .ok_or_else(|| CliError::Invalid(format!("`{x}` is not an element of {what}")))?;
                    out.insert(i);
                }
                out
            }
        })
    };
    Ok(IdealQuadruple {
        i: comp(&parts[0], &r_labels, ctx.r().zero(), "R")?,
        v1: comp(&parts[1], &v_labels, ctx.v().zero(), "V")?,
        w1: comp(&parts[2], &w_labels, ctx.w().zero(), "W")?,
        j: comp(&parts[3], &s_labels, ctx.s().zero(), "S")?,
    })
}

/// Parses an inline ideal `[side:]I / V1 / W1 / J` against a context.
pub fn parse_inline_ideal(ctx: &MoritaContext, text: &str) -> Result<NamedIdeal, CliError> {
    let (side, body) = match text.split_once(':') {
        Some(("two", rest)) => (Side::Two, rest),
        Some(("left", rest)) => (Side::Left, rest),
        Some(("right", rest)) => (Side::Right, rest),
        Some((other, _)) => return Err(CliError::Invalid(format!("unknown side `{other}`"))),
        None => (Side::Two, text),
    };
    let pieces: Vec<&str> = body.split('/').collect();
    if pieces.len() != 4 {
        return Err(CliError::Invalid(format!(
            "ideal `{text}` needs four `/`-separated components"
        )));
    }
    let dummy = Cursor {
        line: 1,
        tokens: Vec::new(),
        pos: 0,
        end_column: 1,
    };
    let parts: Vec<ComponentSpec> = pieces
        .iter()
        .map(|p| parse_component(&dummy, p, 1).map_err(|e| CliError::Invalid(e.message)))
        .collect::<Result<_, _>>()?;
    Ok(NamedIdeal {
        name: text.to_string(),
        side,
        quad: resolve_quadruple(ctx, &parts.try_into().expect("four components"))?,
    })
}

/// An ideal of the context ring given in product form.
#[derive(Debug, Clone)]
pub struct NamedIdeal {
    pub name: String,
    pub side: Side,
    pub quad: IdealQuadruple,
}

#[derive(Debug, Clone)]
pub struct ResolvedDocument {
    pub ctx: MoritaContext,
    pub ideals: Vec<NamedIdeal>,
}

impl ResolvedDocument {
    pub fn ideal(&self, name: &str) -> Option<&NamedIdeal> {
        self.ideals.iter().find(|i| i.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX28: &str = "context ex\nbase zn 6\nR all\nS all\nV subset 0,2,4\nW subset 0,3\nproduct VW inherited\nproduct WV inherited";

    #[test]
    fn parses_subset_context() {
        let doc = parse_mctx(EX28).unwrap();
        assert_eq!(doc.name, "ex");
        assert_eq!(doc.v, ModuleSpec::Subset(vec![0, 2, 4]));
        let res = doc.resolve().unwrap();
        assert_eq!(res.ctx.order(), Some(216));
        assert!(!res.ctx.is_surjective());
    }

    #[test]
    fn scalar_shortcut() {
        let doc = parse_mctx("base zn 4\nR all\nS all\nV all\nW all\nscalar s 2").unwrap();
        assert_eq!(doc.vw, ProductSpec::Scalar(2));
        let ctx = doc.resolve().unwrap().ctx;
        let k = morita_core::morita::build_ks_context(&make_zn(4).unwrap(), 2).unwrap();
        assert_eq!(ctx.parts().vw, k.parts().vw);
        assert_eq!(ctx.parts().wv, k.parts().wv);
    }

    #[test]
    fn subset_not_closed() {
        let err = parse_mctx("base zn 6\nR all\nS all\nV subset 0,1\nW all").unwrap_err();
        assert_eq!(err.line, 4);
        assert!(err.message.contains("not closed under addition"), "{err}");
    }

    #[test]
    fn out_of_range_subset_element() {
        let err = parse_mctx("base zn 6\nV subset 0,7").unwrap_err();
        assert_eq!((err.line, err.column), (2, 10));
        assert!(err.message.contains("out of range"));
    }

    #[test]
    fn unknown_directive_position() {
        let err = parse_mctx("base zn 6\n  frobnicate 3").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!(err.message.contains("unknown directive"));
    }

    #[test]
    fn expected_token_message() {
        let err = parse_mctx("R zn").unwrap_err();
        assert_eq!((err.line, err.column), (1, 5));
        assert!(err.message.contains("expected a modulus"));
        let err = parse_mctx("R ring").unwrap_err();
        assert_eq!(err.column, 3);
        assert!(err.message.contains("`all` or `zn` or `explicit`"));
    }

    #[test]
    fn missing_component() {
        let err = parse_mctx("R zn 2\nS zn 2\nV zero").unwrap_err();
        assert_eq!(err.line, 4);
        assert!(err.message.contains("`W`"));
    }

    #[test]
    fn explicit_tables_roundtrip() {
        let text = "context tiny\nR explicit 2\ntable add R\n0 1\n1 0\ntable mul R\n0 0\n0 1\nS zn 2\nV zero\nW zero\nproduct VW zero\nproduct WV zero\n";
        let doc = parse_mctx(text).unwrap();
        assert_eq!(doc.to_text(), text);
        let ctx = doc.resolve().unwrap().ctx;
        assert_eq!(ctx.order(), Some(4));
    }

    #[test]
    fn comments_and_ideals() {
        let doc = parse_mctx(&format!("{EX28}\n# the ideal\nideal H two 0,3 / all / all / 0,2,4  # trailing")).unwrap();
        let res = doc.resolve().unwrap();
        let h = res.ideal("H").unwrap();
        assert_eq!(h.side, Side::Two);
        assert_eq!(h.quad.i.members(), vec![0, 3]);
        assert!(h.quad.v1.is_full());
    }

    #[test]
    fn invalid_context_is_rejected_at_resolution() {
        // VW table that is not biadditive
        let text = "base zn 2\nR all\nS all\nV all\nW all\nproduct VW table\n1 0\n0 0\nproduct WV inherited";
        let doc = parse_mctx(text).unwrap();
        assert!(matches!(doc.resolve(), Err(CliError::Algebra(_))));
    }

    #[test]
    fn row_outside_table() {
        let err = parse_mctx("0 1").unwrap_err();
        assert!(err.message.contains("outside"));
    }
}
