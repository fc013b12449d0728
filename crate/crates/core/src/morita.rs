//! Morita contexts `(R, V, W, S)` and the ring of formal matrices
//! `[[R, V], [W, S]]` they define.
//!
//! Ideals of the context ring are handled through their quadruple form
//! `(I, V1, W1, J)`; primeness and semiprimeness of ideals, the prime
//! radical and the radical quotient are computed both from the quadruple
//! characterisations and directly on the context ring, so the two routes
//! can be compared.

use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::finring::{check_square, quotient_ring, verify_ring_map, Arithmetic, FiniteRing, MapFailure, RingMap};
use crate::ideals::{
    check_ideal, elementwise_prime, elementwise_semiprime, enumerate_ideals, is_prime_ring, is_semiprime_ring,
    prime_radical, Ideal, Side, DEFAULT_LATTICE_CAP,
};
use crate::modstruct::{
    check_submodule, enumerate_submodules, is_prime_module, quotient_module, Bimodule, ModuleView, Submodule,
};
use crate::span::additive_span;
use crate::subset::Subset;
use crate::validate::ValidationReport;
use crate::Verdict;

/// Default bound on the order of a context ring that may be built.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// Size limits for exhaustive work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest context ring that may be built.
    pub order: usize,
    /// Largest ideal or submodule lattice that may be enumerated.
    pub lattice: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            order: DEFAULT_ORDER_CAP,
            lattice: DEFAULT_LATTICE_CAP,
        }
    }
}

/// Components of a context before validation. `vw[v][w]` lies in `R`,
/// `wv[w][v]` lies in `S`.
#[derive(Debug, Clone)]
pub struct ContextParts {
    pub r: FiniteRing,
    pub s: FiniteRing,
    pub v: Bimodule,
    pub w: Bimodule,
    pub vw: Vec<Vec<usize>>,
    pub wv: Vec<Vec<usize>>,
}

fn check_dimensions(p: &ContextParts) -> Result<()> {
    let pairs = [
        (p.v.left_ring(), &p.r, "V must be a left R-module"),
        (p.v.right_ring(), &p.s, "V must be a right S-module"),
        (p.w.left_ring(), &p.s, "W must be a left S-module"),
        (p.w.right_ring(), &p.r, "W must be a right R-module"),
    ];
    for (acting, expected, msg) in pairs {
        if !acting.same_structure(expected) {
            return Err(AlgebraError::Mismatch(msg.into()));
        }
    }
    check_square("VW product table", &p.vw, p.v.order(), p.w.order(), p.r.order())?;
    check_square("WV product table", &p.wv, p.w.order(), p.v.order(), p.s.order())?;
    Ok(())
}

/// Checks that both context products are biadditive, are bimodule maps,
/// are balanced, and satisfy the two mixed associativity laws. Together
/// with the component axioms these are exactly what associativity of the
/// context ring requires, so no cubic check on the ring itself is needed.
pub fn validate_context(p: &ContextParts) -> Result<ValidationReport> {
    check_dimensions(p)?;
    let (r, s, v, w) = (&p.r, &p.s, &p.v, &p.w);
    let vw = |a: usize, b: usize| p.vw[a][b];
    let wv = |a: usize, b: usize| p.wv[a][b];
    let mut rep = ValidationReport::default();

    for a in v.elements() {
        for b in w.elements() {
            for a2 in v.elements() {
                if vw(v.add(a, a2), b) != r.add(vw(a, b), vw(a2, b)) {
                    rep.record("VW additive in V", &[a, a2, b]);
                }
                if wv(b, v.add(a, a2)) != s.add(wv(b, a), wv(b, a2)) {
                    rep.record("WV additive in V", &[b, a, a2]);
                }
                // (vw)v' = v(wv')
                if v.left_act(vw(a, b), a2) != v.right_act(a, wv(b, a2)) {
                    rep.record("(vw)v' = v(wv')", &[a, b, a2]);
                }
            }
            for b2 in w.elements() {
                if vw(a, w.add(b, b2)) != r.add(vw(a, b), vw(a, b2)) {
                    rep.record("VW additive in W", &[a, b, b2]);
                }
                if wv(w.add(b, b2), a) != s.add(wv(b, a), wv(b2, a)) {
                    rep.record("WV additive in W", &[b, b2, a]);
                }
                // (wv)w' = w(vw')
                if w.left_act(wv(b, a), b2) != w.right_act(b, vw(a, b2)) {
                    rep.record("(wv)w' = w(vw')", &[b, a, b2]);
                }
            }
            for x in r.elements() {
                if r.mul(x, vw(a, b)) != vw(v.left_act(x, a), b) {
                    rep.record("r(vw) = (rv)w", &[x, a, b]);
                }
                if r.mul(vw(a, b), x) != vw(a, w.right_act(b, x)) {
                    rep.record("(vw)r = v(wr)", &[a, b, x]);
                }
                if wv(w.right_act(b, x), a) != wv(b, v.left_act(x, a)) {
                    rep.record("(wr)v = w(rv)", &[b, x, a]);
                }
            }
            for y in s.elements() {
                if s.mul(y, wv(b, a)) != wv(w.left_act(y, b), a) {
                    rep.record("s(wv) = (sw)v", &[y, b, a]);
                }
                if s.mul(wv(b, a), y) != wv(b, v.right_act(a, y)) {
                    rep.record("(wv)s = w(vs)", &[b, a, y]);
                }
                if vw(v.right_act(a, y), b) != vw(a, w.left_act(y, b)) {
                    rep.record("(vs)w = v(sw)", &[a, y, b]);
                }
            }
        }
    }
    Ok(rep)
}

/// A matrix `[[r, v], [w, s]]` of the context ring, by component indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContextElement {
    pub r: usize,
    pub v: usize,
    pub w: usize,
    pub s: usize,
}

/// A validated Morita context.
#[derive(Clone)]
pub struct MoritaContext {
    name: String,
    r: FiniteRing,
    s: FiniteRing,
    v: Bimodule,
    w: Bimodule,
    vw: Vec<u32>,
    wv: Vec<u32>,
}

impl fmt::Debug for MoritaContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MoritaContext")
            .field("name", &self.name)
            .field("R", &self.r.order())
            .field("V", &self.v.order())
            .field("W", &self.w.order())
            .field("S", &self.s.order())
            .finish()
    }
}

impl MoritaContext {
    pub fn new(name: impl Into<String>, parts: ContextParts) -> Result<Self> {
        let name = name.into();
        let report = validate_context(&parts)?;
        if !report.is_ok() {
            return Err(AlgebraError::Invalid {
                what: format!("Morita context {name}"),
                report,
            });
        }
        let flat = |t: &Vec<Vec<usize>>| t.iter().flatten().map(|&x| x as u32).collect();
        Ok(Self {
            name,
            vw: flat(&parts.vw),
            wv: flat(&parts.wv),
            r: parts.r,
            s: parts.s,
            v: parts.v,
            w: parts.w,
        })
    }

    /// `R = V = W = S = Z_n` with every product the multiplication of `Z_n`.
    pub fn full_zn(n: usize) -> Result<Self> {
        let all: Vec<usize> = (0..n).collect();
        Self::zn_subsets(format!("full:{n}"), n, &all, &all)
    }

    /// `R = S = Z_n`, `V` and `W` additive subgroups of `Z_n` given by
    /// residues, and both products inherited from `Z_n`.
    pub fn zn_subsets(name: impl Into<String>, n: usize, v_res: &[usize], w_res: &[usize]) -> Result<Self> {
        let ring = crate::finring::make_zn(n)?;
        let v = Bimodule::residues("V", n, v_res, &ring, &ring)?;
        let w = Bimodule::residues("W", n, w_res, &ring, &ring)?;
        let value = |m: &Bimodule, i: usize| m.label(i).parse::<usize>().expect("residue label");
        let vw = v
            .elements()
            .map(|a| w.elements().map(|b| value(&v, a) * value(&w, b) % n).collect())
            .collect();
        let wv = w
            .elements()
            .map(|b| v.elements().map(|a| value(&w, b) * value(&v, a) % n).collect())
            .collect();
        Self::new(
            name,
            ContextParts {
                r: ring.clone(),
                s: ring,
                v,
                w,
                vw,
                wv,
            },
        )
    }

    /// `V = W = 0`, so the context ring is `R × S`.
    pub fn zero_bimodule(name: impl Into<String>, r: &FiniteRing, s: &FiniteRing) -> Result<Self> {
        let v = Bimodule::zero_module(r, s);
        let w = Bimodule::zero_module(s, r);
        Self::new(
            name,
            ContextParts {
                r: r.clone(),
                s: s.clone(),
                vw: vec![vec![r.zero()]],
                wv: vec![vec![s.zero()]],
                v,
                w,
            },
        )
    }

    /// Formal triangular ring `[[Z_n, Z_g], [0, Z_m]]` with `g = gcd(n, m)`
    /// and both rings acting on `Z_g` by residues.
    pub fn triangular_zn(n: usize, m: usize) -> Result<Self> {
        let r = crate::finring::make_zn(n)?;
        let s = crate::finring::make_zn(m)?;
        let g = gcd(n, m);
        let v = Bimodule::residues("V", g, &(0..g).collect::<Vec<_>>(), &r, &s)?;
        let w = Bimodule::zero_module(&s, &r);
        let vw = vec![vec![r.zero()]; v.order()];
        let wv = vec![vec![s.zero(); v.order()]];
        Self::new(format!("tri:{n},{m}"), ContextParts { r, s, v, w, vw, wv })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn r(&self) -> &FiniteRing {
        &self.r
    }

    pub fn s(&self) -> &FiniteRing {
        &self.s
    }

    pub fn v(&self) -> &Bimodule {
        &self.v
    }

    pub fn w(&self) -> &Bimodule {
        &self.w
    }

    #[inline]
    pub fn vw(&self, v: usize, w: usize) -> usize {
        self.vw[v * self.w.order() + w] as usize
    }

    #[inline]
    pub fn wv(&self, w: usize, v: usize) -> usize {
        self.wv[w * self.v.order() + v] as usize
    }

    pub fn parts(&self) -> ContextParts {
        ContextParts {
            r: self.r.clone(),
            s: self.s.clone(),
            v: self.v.clone(),
            w: self.w.clone(),
            vw: self.v.elements().map(|a| self.w.elements().map(|b| self.vw(a, b)).collect()).collect(),
            wv: self.w.elements().map(|b| self.v.elements().map(|a| self.wv(b, a)).collect()).collect(),
        }
    }

    /// `|R|·|V|·|W|·|S|`, or `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        self.r
            .order()
            .checked_mul(self.v.order())?
            .checked_mul(self.w.order())?
            .checked_mul(self.s.order())
    }

    /// Lexicographic index of a matrix.
    #[inline]
    pub fn encode(&self, e: ContextElement) -> usize {
        ((e.r * self.v.order() + e.v) * self.w.order() + e.w) * self.s.order() + e.s
    }

    #[inline]
    pub fn decode(&self, x: usize) -> ContextElement {
        let (ns, nw, nv) = (self.s.order(), self.w.order(), self.v.order());
        let s = x % ns;
        let x = x / ns;
        let w = x % nw;
        let x = x / nw;
        ContextElement { r: x / nv, v: x % nv, w, s }
    }

    pub fn zero_element(&self) -> ContextElement {
        ContextElement {
            r: self.r.zero(),
            v: self.v.zero(),
            w: self.w.zero(),
            s: self.s.zero(),
        }
    }

    pub fn add_elements(&self, a: ContextElement, b: ContextElement) -> ContextElement {
        ContextElement {
            r: self.r.add(a.r, b.r),
            v: self.v.add(a.v, b.v),
            w: self.w.add(a.w, b.w),
            s: self.s.add(a.s, b.s),
        }
    }

    /// Matrix product using the context products for the off-diagonal terms.
    #[inline]
    pub fn mul_elements(&self, a: ContextElement, b: ContextElement) -> ContextElement {
        let (r, s, v, w) = (&self.r, &self.s, &self.v, &self.w);
        ContextElement {
            r: r.add(r.mul(a.r, b.r), self.vw(a.v, b.w)),
            v: v.add(v.left_act(a.r, b.v), v.right_act(a.v, b.s)),
            w: w.add(w.right_act(a.w, b.r), w.left_act(a.s, b.w)),
            s: s.add(self.wv(a.w, b.v), s.mul(a.s, b.s)),
        }
    }

    pub fn format_element(&self, e: ContextElement) -> String {
        if e.v == self.v.zero() && e.w == self.w.zero() {
            format!("diag({},{})", self.r.label(e.r), self.s.label(e.s))
        } else {
            format!(
                "[[{},{}],[{},{}]]",
                self.r.label(e.r),
                self.v.label(e.v),
                self.w.label(e.w),
                self.s.label(e.s)
            )
        }
    }

    pub fn format_quadruple(&self, q: &IdealQuadruple) -> String {
        format!(
            "(I={}, V1={}, W1={}, J={})",
            self.r.format_subset(&q.i),
            self.v.format_subset(&q.v1),
            self.w.format_subset(&q.w1),
            self.s.format_subset(&q.j)
        )
    }

    /// Additive span of all products `vw` (a subgroup, indeed an ideal, of `R`).
    pub fn vw_span(&self) -> Subset {
        additive_span(
            &self.r,
            self.v.elements().flat_map(|a| self.w.elements().map(move |b| self.vw(a, b))),
        )
    }

    /// Additive span of all products `wv` in `S`.
    pub fn wv_span(&self) -> Subset {
        additive_span(
            &self.s,
            self.w.elements().flat_map(|b| self.v.elements().map(move |a| self.wv(b, a))),
        )
    }

    /// `VW = R` and `WV = S` as additive spans.
    pub fn is_surjective(&self) -> bool {
        self.vw_span().is_full() && self.wv_span().is_full()
    }

    /// `R ⊕ W` (columns `(r; w)`) as a right `R`-module, indexed `r·|W| + w`.
    pub fn column_module_rw(&self) -> ModuleView {
        ModuleView::direct_sum(&ModuleView::regular(&self.r, Side::Right), &self.w.right_view())
            .expect("W is a right R-module")
    }

    /// `V ⊕ S` (columns `(v; s)`) as a right `S`-module, indexed `v·|S| + s`.
    pub fn column_module_vs(&self) -> ModuleView {
        ModuleView::direct_sum(&self.v.right_view(), &ModuleView::regular(&self.s, Side::Right))
            .expect("V is a right S-module")
    }

    /// `R ⊕ V` (rows `(r, v)`) as a left `R`-module, indexed `r·|V| + v`.
    pub fn row_module_rv(&self) -> ModuleView {
        ModuleView::direct_sum(&ModuleView::regular(&self.r, Side::Left), &self.v.left_view())
            .expect("V is a left R-module")
    }

    /// `W ⊕ S` (rows `(w, s)`) as a left `S`-module, indexed `w·|S| + s`.
    pub fn row_module_ws(&self) -> ModuleView {
        ModuleView::direct_sum(&self.w.left_view(), &ModuleView::regular(&self.s, Side::Left))
            .expect("W is a left S-module")
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Context rings up to this order get a tabulated product.
const DENSE_CONTEXT_LIMIT: usize = 4096;

#[derive(Debug)]
struct ContextArith {
    ctx: MoritaContext,
    order: usize,
    dense_mul: Option<Vec<u16>>,
}

impl Arithmetic for ContextArith {
    fn order(&self) -> usize {
        self.order
    }
    fn add(&self, a: usize, b: usize) -> usize {
        let c = &self.ctx;
        c.encode(c.add_elements(c.decode(a), c.decode(b)))
    }
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        match &self.dense_mul {
            Some(t) => t[a * self.order + b] as usize,
            None => {
                let c = &self.ctx;
                c.encode(c.mul_elements(c.decode(a), c.decode(b)))
            }
        }
    }
    fn neg(&self, a: usize) -> usize {
        let c = &self.ctx;
        let e = c.decode(a);
        c.encode(ContextElement {
            r: c.r.neg(e.r),
            v: c.v.neg(e.v),
            w: c.w.neg(e.w),
            s: c.s.neg(e.s),
        })
    }
    fn label(&self, a: usize) -> String {
        self.ctx.format_element(self.ctx.decode(a))
    }
}

/// The context ring, elements in lexicographic `(r, v, w, s)` order.
pub fn build_context_ring(ctx: &MoritaContext, cap: usize) -> Result<FiniteRing> {
    let order = ctx.order().filter(|&n| n <= cap).ok_or_else(|| AlgebraError::Capacity {
        what: format!("context ring of {}", ctx.name()),
        cap,
    })?;
    let dense_mul = (order <= DENSE_CONTEXT_LIMIT).then(|| {
        let elems: Vec<ContextElement> = (0..order).map(|x| ctx.decode(x)).collect();
        let mut t = Vec::with_capacity(order * order);
        for &a in &elems {
            for &b in &elems {
                t.push(ctx.encode(ctx.mul_elements(a, b)) as u16);
            }
        }
        t
    });
    let zero = ctx.encode(ctx.zero_element());
    let one = ctx.encode(ContextElement {
        r: ctx.r.one(),
        v: ctx.v.zero(),
        w: ctx.w.zero(),
        s: ctx.s.one(),
    });
    let arith = ContextArith {
        ctx: ctx.clone(),
        order,
        dense_mul,
    };
    Ok(FiniteRing::from_arith(format!("T({})", ctx.name()), Arc::new(arith), zero, one))
}

/// `K_s(R)`: `R = V = W = S` with both context products scaled by the
/// central element `s`, i.e. `vw = s·v·w` and `wv = s·w·v`.
pub fn build_ks_context(ring: &FiniteRing, s: usize) -> Result<MoritaContext> {
    if s >= ring.order() {
        return Err(AlgebraError::Mismatch(format!("element {s} outside {}", ring.name())));
    }
    if let Some(witness) = ring.commutes_with_all(s) {
        return Err(AlgebraError::NotCentral { element: s, witness });
    }
    let module = Bimodule::regular(ring);
    let scaled = |a: usize, b: usize| ring.mul(ring.mul(s, a), b);
    let table: Vec<Vec<usize>> = ring.elements().map(|a| ring.elements().map(|b| scaled(a, b)).collect()).collect();
    MoritaContext::new(
        format!("K_{}({})", ring.label(s), ring.name()),
        ContextParts {
            r: ring.clone(),
            s: ring.clone(),
            v: module.clone(),
            w: module,
            vw: table.clone(),
            wv: table,
        },
    )
}

/// `(I, V1, W1, J)`: the ideal of all matrices with entries in the four sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealQuadruple {
    pub i: Subset,
    pub v1: Subset,
    pub w1: Subset,
    pub j: Subset,
}

impl IdealQuadruple {
    pub fn zero(ctx: &MoritaContext) -> Self {
        Self {
            i: Subset::singleton(ctx.r.order(), ctx.r.zero()),
            v1: Subset::singleton(ctx.v.order(), ctx.v.zero()),
            w1: Subset::singleton(ctx.w.order(), ctx.w.zero()),
            j: Subset::singleton(ctx.s.order(), ctx.s.zero()),
        }
    }

    pub fn whole(ctx: &MoritaContext) -> Self {
        Self {
            i: Subset::full(ctx.r.order()),
            v1: Subset::full(ctx.v.order()),
            w1: Subset::full(ctx.w.order()),
            j: Subset::full(ctx.s.order()),
        }
    }

    pub fn is_proper(&self) -> bool {
        !(self.i.is_full() && self.v1.is_full() && self.w1.is_full() && self.j.is_full())
    }

    pub fn contains(&self, e: ContextElement) -> bool {
        self.i.contains(e.r) && self.v1.contains(e.v) && self.w1.contains(e.w) && self.j.contains(e.s)
    }

    /// The product-form subset of the context ring.
    pub fn to_subset(&self, ctx: &MoritaContext) -> Subset {
        let n = ctx.order().expect("context order fits in usize");
        let mut out = Subset::empty(n);
        for r in self.i.iter() {
            for v in self.v1.iter() {
                for w in self.w1.iter() {
                    for s in self.j.iter() {
                        out.insert(ctx.encode(ContextElement { r, v, w, s }));
                    }
                }
            }
        }
        out
    }
}

/// Checks that the four components are ideals/sub-bimodules and that the
/// eight containments linking them hold. `Err` names the first failure.
pub fn check_quadruple(ctx: &MoritaContext, q: &IdealQuadruple) -> Result<(), String> {
    check_ideal(&ctx.r, &q.i, Side::Two).map_err(|e| format!("I is not an ideal of R: {e}"))?;
    check_ideal(&ctx.s, &q.j, Side::Two).map_err(|e| format!("J is not an ideal of S: {e}"))?;
    check_submodule(&ctx.v, &q.v1, Side::Two).map_err(|e| format!("V1 is not a sub-bimodule: {e}"))?;
    check_submodule(&ctx.w, &q.w1, Side::Two).map_err(|e| format!("W1 is not a sub-bimodule: {e}"))?;
    v1_conditions(ctx, &q.i, &q.j, &q.v1)?;
    w1_conditions(ctx, &q.i, &q.j, &q.w1)?;
    Ok(())
}

/// `V1W ⊆ I`, `WV1 ⊆ J`, `IV ⊆ V1`, `VJ ⊆ V1`.
fn v1_conditions(ctx: &MoritaContext, i: &Subset, j: &Subset, v1: &Subset) -> Result<(), String> {
    let (v, w) = (&ctx.v, &ctx.w);
    for a in v1.iter() {
        if w.elements().any(|b| !i.contains(ctx.vw(a, b))) {
            return Err("V1W ⊄ I".into());
        }
        if w.elements().any(|b| !j.contains(ctx.wv(b, a))) {
            return Err("WV1 ⊄ J".into());
        }
    }
    for a in v.elements() {
        if i.iter().any(|x| !v1.contains(v.left_act(x, a))) {
            return Err("IV ⊄ V1".into());
        }
        if j.iter().any(|y| !v1.contains(v.right_act(a, y))) {
            return Err("VJ ⊄ V1".into());
        }
    }
    Ok(())
}

/// `W1V ⊆ J`, `VW1 ⊆ I`, `JW ⊆ W1`, `WI ⊆ W1`.
fn w1_conditions(ctx: &MoritaContext, i: &Subset, j: &Subset, w1: &Subset) -> Result<(), String> {
    let (v, w) = (&ctx.v, &ctx.w);
    for b in w1.iter() {
        if v.elements().any(|a| !j.contains(ctx.wv(b, a))) {
            return Err("W1V ⊄ J".into());
        }
        if v.elements().any(|a| !i.contains(ctx.vw(a, b))) {
            return Err("VW1 ⊄ I".into());
        }
    }
    for b in w.elements() {
        if j.iter().any(|y| !w1.contains(w.left_act(y, b))) {
            return Err("JW ⊄ W1".into());
        }
        if i.iter().any(|x| !w1.contains(w.right_act(b, x))) {
            return Err("WI ⊄ W1".into());
        }
    }
    Ok(())
}

/// Reads off the quadruple of a two-sided ideal of the context ring and
/// confirms the ideal is exactly the product of its four components.
pub fn decompose_ideal(ctx: &MoritaContext, t: &FiniteRing, u: &Ideal) -> Result<IdealQuadruple> {
    if u.members.universe() != t.order() || ctx.order() != Some(t.order()) {
        return Err(AlgebraError::Mismatch("ideal and context ring sizes differ".into()));
    }
    check_ideal(t, &u.members, Side::Two).map_err(AlgebraError::NotAnIdeal)?;
    let z = ctx.zero_element();
    let at = |e: ContextElement| u.members.contains(ctx.encode(e));
    let q = IdealQuadruple {
        i: Subset::from_predicate(ctx.r.order(), |r| at(ContextElement { r, ..z })),
        v1: Subset::from_predicate(ctx.v.order(), |v| at(ContextElement { v, ..z })),
        w1: Subset::from_predicate(ctx.w.order(), |w| at(ContextElement { w, ..z })),
        j: Subset::from_predicate(ctx.s.order(), |s| at(ContextElement { s, ..z })),
    };
    if q.to_subset(ctx) != u.members {
        return Err(AlgebraError::Inconsistent(format!(
            "ideal is not the product of its entry sets {}",
            ctx.format_quadruple(&q)
        )));
    }
    check_quadruple(ctx, &q).map_err(AlgebraError::Inconsistent)?;
    Ok(q)
}

/// All ideal quadruples, from the component lattices. For fixed `(I, J)`
/// the admissible `V1` and `W1` are constrained independently, so the
/// result is a union of products.
pub fn enumerate_context_ideals(ctx: &MoritaContext, cap: usize) -> Result<Vec<IdealQuadruple>> {
    let ir = enumerate_ideals(&ctx.r, Side::Two, cap)?;
    let is = enumerate_ideals(&ctx.s, Side::Two, cap)?;
    let sv = enumerate_submodules(&ctx.v, Side::Two, cap)?;
    let sw = enumerate_submodules(&ctx.w, Side::Two, cap)?;
    let mut out = Vec::new();
    for i in &ir {
        for j in &is {
            let v1s: Vec<&Submodule> = sv
                .iter()
                .filter(|v1| v1_conditions(ctx, &i.members, &j.members, &v1.members).is_ok())
                .collect();
            let w1s: Vec<&Submodule> = sw
                .iter()
                .filter(|w1| w1_conditions(ctx, &i.members, &j.members, &w1.members).is_ok())
                .collect();
            for v1 in &v1s {
                for w1 in &w1s {
                    out.push(IdealQuadruple {
                        i: i.members.clone(),
                        v1: v1.members.clone(),
                        w1: w1.members.clone(),
                        j: j.members.clone(),
                    });
                    if out.len() > cap {
                        return Err(AlgebraError::Capacity {
                            what: format!("ideal quadruples of {}", ctx.name()),
                            cap,
                        });
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Column spaces of a right ideal or row spaces of a left ideal.
///
/// Right: `first = C1(U) ⊆ R ⊕ W`, `second = C2(U) ⊆ V ⊕ S`.
/// Left: `first = R1(U) ⊆ R ⊕ V`, `second = R2(U) ⊆ W ⊕ S`.
/// Indexing follows [`MoritaContext::column_module_rw`] and friends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneSidedDecomposition {
    pub side: Side,
    pub first: Subset,
    pub second: Subset,
}

/// Splits a one-sided ideal into its column (right) or row (left) spaces and
/// verifies: each space is embedded in `U` on its own, `U` is recovered from
/// the two spaces, both are submodules, and the cross conditions hold
/// (`C1·V ⊆ C2`, `C2·W ⊆ C1`; dually `V·R2 ⊆ R1`, `W·R1 ⊆ R2`).
pub fn side_decomposition(ctx: &MoritaContext, t: &FiniteRing, u: &Ideal) -> Result<OneSidedDecomposition> {
    if u.side == Side::Two {
        return Err(AlgebraError::NotAnIdeal("side decomposition needs a left or right ideal".into()));
    }
    check_ideal(t, &u.members, u.side).map_err(AlgebraError::NotAnIdeal)?;
    let (nr, nv, nw, ns) = (ctx.r.order(), ctx.v.order(), ctx.w.order(), ctx.s.order());
    let z = ctx.zero_element();
    let elems: Vec<ContextElement> = u.members.iter().map(|x| ctx.decode(x)).collect();
    let inconsistent = |msg: &str| AlgebraError::Inconsistent(format!("{msg} in {}", ctx.name()));

    let (first, second, first_view, second_view) = match u.side {
        Side::Right => (
            Subset::from_members(nr * nw, elems.iter().map(|e| e.r * nw + e.w)),
            Subset::from_members(nv * ns, elems.iter().map(|e| e.v * ns + e.s)),
            ctx.column_module_rw(),
            ctx.column_module_vs(),
        ),
        _ => (
            Subset::from_members(nr * nv, elems.iter().map(|e| e.r * nv + e.v)),
            Subset::from_members(nw * ns, elems.iter().map(|e| e.w * ns + e.s)),
            ctx.row_module_rv(),
            ctx.row_module_ws(),
        ),
    };

    // each space sits inside U on its own
    for x in first.iter() {
        let e = match u.side {
            Side::Right => ContextElement { r: x / nw, w: x % nw, ..z },
            _ => ContextElement { r: x / nv, v: x % nv, ..z },
        };
        if !u.members.contains(ctx.encode(e)) {
            return Err(inconsistent("first space element not embedded"));
        }
    }
    for x in second.iter() {
        let e = match u.side {
            Side::Right => ContextElement { v: x / ns, s: x % ns, ..z },
            _ => ContextElement { w: x / ns, s: x % ns, ..z },
        };
        if !u.members.contains(ctx.encode(e)) {
            return Err(inconsistent("second space element not embedded"));
        }
    }
    if first.count() * second.count() != u.members.count() {
        return Err(inconsistent("ideal is not determined by its two spaces"));
    }
    first_view
        .check_submodule(&first)
        .map_err(|e| inconsistent(&format!("first space is not a submodule: {e}")))?;
    second_view
        .check_submodule(&second)
        .map_err(|e| inconsistent(&format!("second space is not a submodule: {e}")))?;

    let (v, w) = (&ctx.v, &ctx.w);
    match u.side {
        Side::Right => {
            for x in first.iter() {
                let (r, wi) = (x / nw, x % nw);
                for a in v.elements() {
                    // (r; w)·v = (rv; wv)
                    if !second.contains(v.left_act(r, a) * ns + ctx.wv(wi, a)) {
                        return Err(inconsistent("C1·V ⊄ C2"));
                    }
                }
            }
            for x in second.iter() {
                let (vi, s) = (x / ns, x % ns);
                for b in w.elements() {
                    // (v; s)·w = (vw; sw)
                    if !first.contains(ctx.vw(vi, b) * nw + w.left_act(s, b)) {
                        return Err(inconsistent("C2·W ⊄ C1"));
                    }
                }
            }
        }
        _ => {
            for x in second.iter() {
                let (wi, s) = (x / ns, x % ns);
                for a in v.elements() {
                    // v·(w, s) = (vw, vs)
                    if !first.contains(ctx.vw(a, wi) * nv + v.right_act(a, s)) {
                        return Err(inconsistent("V·R2 ⊄ R1"));
                    }
                }
            }
            for x in first.iter() {
                let (r, vi) = (x / nv, x % nv);
                for b in w.elements() {
                    // w·(r, v) = (wr, wv)
                    if !second.contains(w.right_act(b, r) * ns + ctx.wv(b, vi)) {
                        return Err(inconsistent("W·R1 ⊄ R2"));
                    }
                }
            }
        }
    }
    Ok(OneSidedDecomposition {
        side: u.side,
        first,
        second,
    })
}

/// Elementwise primeness of a one-sided ideal of the context ring:
/// `aTb ⊆ U` implies `a ∈ U` or `b ∈ U`.
pub fn is_prime_onesided_ideal(
    ctx: &MoritaContext,
    t: &FiniteRing,
    u: &Ideal,
) -> Result<Verdict<(ContextElement, ContextElement)>> {
    check_ideal(t, &u.members, u.side).map_err(AlgebraError::NotAnIdeal)?;
    if !u.is_proper() {
        return Err(AlgebraError::NotProper("one-sided ideals"));
    }
    Ok(match elementwise_prime(t, &u.members) {
        Verdict::Holds => Verdict::Holds,
        Verdict::Fails((a, b)) => Verdict::Fails((ctx.decode(a), ctx.decode(b))),
    })
}

/// The four sets `A = {v : vW ⊆ I}`, `B = {v : Wv ⊆ J}`,
/// `C = {w : Vw ⊆ I}`, `D = {w : wV ⊆ J}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSets {
    pub a: Subset,
    pub b: Subset,
    pub c: Subset,
    pub d: Subset,
}

impl ClosureSets {
    pub fn v_sides_agree(&self) -> bool {
        self.a == self.b
    }

    pub fn w_sides_agree(&self) -> bool {
        self.c == self.d
    }
}

pub fn closure_sets(ctx: &MoritaContext, i: &Subset, j: &Subset) -> Result<ClosureSets> {
    check_ideal(&ctx.r, i, Side::Two).map_err(|e| AlgebraError::NotAnIdeal(format!("I: {e}")))?;
    check_ideal(&ctx.s, j, Side::Two).map_err(|e| AlgebraError::NotAnIdeal(format!("J: {e}")))?;
    let (v, w) = (&ctx.v, &ctx.w);
    let sets = ClosureSets {
        a: Subset::from_predicate(v.order(), |a| w.elements().all(|b| i.contains(ctx.vw(a, b)))),
        b: Subset::from_predicate(v.order(), |a| w.elements().all(|b| j.contains(ctx.wv(b, a)))),
        c: Subset::from_predicate(w.order(), |b| v.elements().all(|a| i.contains(ctx.vw(a, b)))),
        d: Subset::from_predicate(w.order(), |b| v.elements().all(|a| j.contains(ctx.wv(b, a)))),
    };
    for (set, module, name) in [(&sets.a, v, "A"), (&sets.b, v, "B"), (&sets.c, w, "C"), (&sets.d, w, "D")] {
        check_submodule(module, set, Side::Two)
            .map_err(|e| AlgebraError::Inconsistent(format!("closure set {name} is not a sub-bimodule: {e}")))?;
    }
    Ok(sets)
}

fn require_proper_quadruple(ctx: &MoritaContext, q: &IdealQuadruple) -> Result<()> {
    check_quadruple(ctx, q).map_err(AlgebraError::NotAnIdeal)?;
    if !q.is_proper() {
        return Err(AlgebraError::NotProper("ideals of the context ring"));
    }
    Ok(())
}

/// Both sides of the primeness criterion for one ideal quadruple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeQuadrupleReport {
    /// Elementwise primeness of the ideal in the context ring.
    pub is_prime: bool,
    pub prime_witness: Option<(ContextElement, ContextElement)>,
    pub i_prime: bool,
    pub j_prime: bool,
    pub closure: ClosureSets,
    /// Componentwise condition: `I`, `J` prime and `V1 = A = B`, `W1 = C = D`.
    pub cond2: bool,
    pub surjective: bool,
}

impl PrimeQuadrupleReport {
    /// Prime ideal implies the componentwise condition.
    pub fn forward_holds(&self) -> bool {
        !self.is_prime || self.cond2
    }

    /// The converse, which is only claimed for surjective contexts.
    pub fn converse_holds(&self) -> bool {
        !self.cond2 || self.is_prime
    }

    pub fn theorem_violation(&self) -> bool {
        !self.forward_holds() || (self.surjective && !self.converse_holds())
    }
}

/// Component primeness uses the elementwise condition, which the whole ring
/// satisfies vacuously: in non-surjective contexts `(R, V1, W1, J)` can be a
/// proper prime ideal.
pub fn check_prime_quadruple(ctx: &MoritaContext, t: &FiniteRing, q: &IdealQuadruple) -> Result<PrimeQuadrupleReport> {
    require_proper_quadruple(ctx, q)?;
    let u = q.to_subset(ctx);
    let prime_witness = elementwise_prime(t, &u)
        .witness()
        .map(|&(a, b)| (ctx.decode(a), ctx.decode(b)));
    let i_prime = elementwise_prime(&ctx.r, &q.i).holds();
    let j_prime = elementwise_prime(&ctx.s, &q.j).holds();
    let closure = closure_sets(ctx, &q.i, &q.j)?;
    let cond2 = i_prime && j_prime && q.v1 == closure.a && closure.v_sides_agree() && q.w1 == closure.c && closure.w_sides_agree();
    Ok(PrimeQuadrupleReport {
        is_prime: prime_witness.is_none(),
        prime_witness,
        i_prime,
        j_prime,
        closure,
        cond2,
        surjective: ctx.is_surjective(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiprimeQuadrupleReport {
    pub is_semiprime: bool,
    pub semiprime_witness: Option<ContextElement>,
    pub i_semiprime: bool,
    pub j_semiprime: bool,
    pub closure: ClosureSets,
    pub cond2: bool,
}

impl SemiprimeQuadrupleReport {
    /// The two sides are claimed equivalent with no hypothesis on the context.
    pub fn theorem_violation(&self) -> bool {
        self.is_semiprime != self.cond2
    }
}

pub fn check_semiprime_quadruple(
    ctx: &MoritaContext,
    t: &FiniteRing,
    q: &IdealQuadruple,
) -> Result<SemiprimeQuadrupleReport> {
    require_proper_quadruple(ctx, q)?;
    let u = q.to_subset(ctx);
    let semiprime_witness = elementwise_semiprime(t, &u).witness().map(|&a| ctx.decode(a));
    let i_semiprime = elementwise_semiprime(&ctx.r, &q.i).holds();
    let j_semiprime = elementwise_semiprime(&ctx.s, &q.j).holds();
    let closure = closure_sets(ctx, &q.i, &q.j)?;
    let cond2 = i_semiprime
        && j_semiprime
        && q.v1 == closure.a
        && closure.v_sides_agree()
        && q.w1 == closure.c
        && closure.w_sides_agree();
    Ok(SemiprimeQuadrupleReport {
        is_semiprime: semiprime_witness.is_none(),
        semiprime_witness,
        i_semiprime,
        j_semiprime,
        closure,
        cond2,
    })
}

/// `(P(R), V0, W0, P(S))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalQuadruple {
    pub pr: Subset,
    pub v0: Subset,
    pub w0: Subset,
    pub ps: Subset,
}

impl RadicalQuadruple {
    pub fn as_quadruple(&self) -> IdealQuadruple {
        IdealQuadruple {
            i: self.pr.clone(),
            v1: self.v0.clone(),
            w1: self.w0.clone(),
            j: self.ps.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalReport {
    pub radical: RadicalQuadruple,
    /// `{v : vW ⊆ P(R)} = {v : Wv ⊆ P(S)}` and the dual for `W0`.
    pub descriptions_agree: bool,
    /// Quadruple of the intersection of all prime ideals of the context
    /// ring, when the ring was small enough to build.
    pub direct: Option<IdealQuadruple>,
    pub degenerate: bool,
}

impl RadicalReport {
    pub fn direct_agrees(&self) -> Option<bool> {
        self.direct.as_ref().map(|d| *d == self.radical.as_quadruple())
    }
}

/// The radical from the component radicals; `V0` is `{v : vW ⊆ P(R)}` and
/// `W0` is `{w : wV ⊆ P(S)}`.
pub fn formula_radical(ctx: &MoritaContext, cap: usize) -> Result<(RadicalQuadruple, bool, bool)> {
    let pr = prime_radical(&ctx.r, cap)?;
    let ps = prime_radical(&ctx.s, cap)?;
    let sets = closure_sets(ctx, &pr.ideal.members, &ps.ideal.members)?;
    let agree = sets.v_sides_agree() && sets.w_sides_agree();
    Ok((
        RadicalQuadruple {
            pr: pr.ideal.members,
            v0: sets.a,
            w0: sets.d,
            ps: ps.ideal.members,
        },
        agree,
        pr.degenerate || ps.degenerate,
    ))
}

pub fn context_prime_radical(ctx: &MoritaContext, caps: &Caps) -> Result<RadicalReport> {
    let (radical, descriptions_agree, degenerate) = formula_radical(ctx, caps.lattice)?;
    let direct = match ctx.order() {
        Some(n) if n <= caps.order => {
            let t = build_context_ring(ctx, caps.order)?;
            let p = prime_radical(&t, caps.lattice)?;
            Some(decompose_ideal(ctx, &t, &p.ideal)?)
        }
        _ => None,
    };
    Ok(RadicalReport {
        radical,
        descriptions_agree,
        direct,
        degenerate,
    })
}

/// `(R/P(R), V/V0, W/W0, S/P(S))` with the induced products.
#[derive(Debug, Clone)]
pub struct QuotientContext {
    pub ctx: MoritaContext,
    pub radical: RadicalQuadruple,
    pub r_proj: RingMap,
    pub s_proj: RingMap,
    pub v_proj: Vec<usize>,
    pub w_proj: Vec<usize>,
}

pub fn quotient_context(ctx: &MoritaContext, caps: &Caps) -> Result<QuotientContext> {
    let (radical, _, _) = formula_radical(ctx, caps.lattice)?;
    let pr = Ideal::new(&ctx.r, radical.pr.clone(), Side::Two)?;
    let ps = Ideal::new(&ctx.s, radical.ps.clone(), Side::Two)?;
    let (rq, r_proj) = quotient_ring(&ctx.r, &pr)?;
    let (sq, s_proj) = quotient_ring(&ctx.s, &ps)?;
    let v0 = Submodule::new(&ctx.v, radical.v0.clone(), Side::Two)?;
    let w0 = Submodule::new(&ctx.w, radical.w0.clone(), Side::Two)?;
    let (vq, v_proj) = quotient_module(&ctx.v, &v0, Some(&r_proj), Some(&s_proj))?;
    let (wq, w_proj) = quotient_module(&ctx.w, &w0, Some(&s_proj), Some(&r_proj))?;

    let mut vw = vec![vec![usize::MAX; wq.order()]; vq.order()];
    let mut wv = vec![vec![usize::MAX; vq.order()]; wq.order()];
    for a in ctx.v.elements() {
        for b in ctx.w.elements() {
            let (qa, qb) = (v_proj[a], w_proj[b]);
            let x = r_proj.apply(ctx.vw(a, b));
            let y = s_proj.apply(ctx.wv(b, a));
            for (slot, val, what) in [(&mut vw[qa][qb], x, "VW"), (&mut wv[qb][qa], y, "WV")] {
                if *slot == usize::MAX {
                    *slot = val;
                } else if *slot != val {
                    return Err(AlgebraError::WellDefinedness(format!(
                        "{what} product on cosets at v={}, w={}",
                        ctx.v.label(a),
                        ctx.w.label(b)
                    )));
                }
            }
        }
    }
    let qctx = MoritaContext::new(
        format!("{}/P", ctx.name()),
        ContextParts {
            r: rq.clone(),
            s: sq.clone(),
            v: vq,
            w: wq,
            vw,
            wv,
        },
    )?;
    Ok(QuotientContext {
        ctx: qctx,
        radical,
        r_proj,
        s_proj,
        v_proj,
        w_proj,
    })
}

/// Builds `T/P(T)` from the directly computed radical of the context ring,
/// builds the ring of the quotient context, and checks that the entrywise
/// projection is a well-defined ring isomorphism between them.
pub fn verify_quotient_iso(ctx: &MoritaContext, caps: &Caps) -> Result<Verdict<MapFailure>> {
    let t = build_context_ring(ctx, caps.order)?;
    let pt = prime_radical(&t, caps.lattice)?;
    let (tq, t_proj) = quotient_ring(&t, &pt.ideal)?;
    let qc = quotient_context(ctx, caps)?;
    let q = build_context_ring(&qc.ctx, caps.order)?;

    let mut image = vec![usize::MAX; tq.order()];
    for x in t.elements() {
        let e = ctx.decode(x);
        let fx = qc.ctx.encode(ContextElement {
            r: qc.r_proj.apply(e.r),
            v: qc.v_proj[e.v],
            w: qc.w_proj[e.w],
            s: qc.s_proj.apply(e.s),
        });
        let c = t_proj.apply(x);
        if image[c] == usize::MAX {
            image[c] = fx;
        } else if image[c] != fx {
            return Ok(Verdict::Fails(MapFailure::NotWellDefined(x)));
        }
    }
    let f = RingMap {
        source: tq,
        target: q,
        image,
    };
    Ok(verify_ring_map(&f, true))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeContextReport {
    pub t_prime: bool,
    pub t_witness: Option<(ContextElement, ContextElement)>,
    pub r_prime: bool,
    pub s_prime: bool,
    /// `V` prime as a left `R`-module and as a right `S`-module.
    pub v_prime_module: (bool, bool),
    /// `W` prime as a left `S`-module and as a right `R`-module.
    pub w_prime_module: (bool, bool),
    pub surjective: bool,
}

impl PrimeContextReport {
    pub fn modules_prime(&self) -> bool {
        self.v_prime_module.0 && self.v_prime_module.1 && self.w_prime_module.0 && self.w_prime_module.1
    }

    /// Implications of the chain `T prime ⇒ (R, S, V, W prime) ⇒ (R and S
    /// prime) ⇒ (R or S prime)`, plus `(R or S prime) ⇒ T prime` for
    /// surjective contexts, that fail here.
    pub fn violations(&self) -> Vec<&'static str> {
        let c2 = self.r_prime && self.s_prime && self.modules_prime();
        let c3 = self.r_prime && self.s_prime;
        let c4 = self.r_prime || self.s_prime;
        let mut out = Vec::new();
        if self.t_prime && !c2 {
            out.push("(1)=>(2)");
        }
        if c2 && !c3 {
            out.push("(2)=>(3)");
        }
        if c3 && !c4 {
            out.push("(3)=>(4)");
        }
        if self.surjective && c4 && !self.t_prime {
            out.push("(4)=>(1)");
        }
        out
    }
}

pub fn is_prime_context(ctx: &MoritaContext, caps: &Caps) -> Result<PrimeContextReport> {
    let t = build_context_ring(ctx, caps.order)?;
    let t_witness = elementwise_prime(&t, &Ideal::zero(&t).members)
        .witness()
        .map(|&(a, b)| (ctx.decode(a), ctx.decode(b)));
    Ok(PrimeContextReport {
        t_prime: t_witness.is_none(),
        t_witness,
        r_prime: is_prime_ring(&ctx.r),
        s_prime: is_prime_ring(&ctx.s),
        v_prime_module: (is_prime_module(&ctx.v.left_view()), is_prime_module(&ctx.v.right_view())),
        w_prime_module: (is_prime_module(&ctx.w.left_view()), is_prime_module(&ctx.w.right_view())),
        surjective: ctx.is_surjective(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiprimeContextReport {
    pub t_semiprime: bool,
    pub r_semiprime: bool,
    pub s_semiprime: bool,
    pub surjective: bool,
}

impl SemiprimeContextReport {
    pub fn violations(&self) -> Vec<&'static str> {
        let c2 = self.r_semiprime && self.s_semiprime;
        let c3 = self.r_semiprime || self.s_semiprime;
        let mut out = Vec::new();
        if self.t_semiprime && !c2 {
            out.push("(1)=>(2)");
        }
        if c2 && !c3 {
            out.push("(2)=>(3)");
        }
        if self.surjective && c3 && !self.t_semiprime {
            out.push("(3)=>(1)");
        }
        out
    }
}

/// Semiprimeness of the context ring is decided elementwise and
/// cross-checked against its prime radical being zero.
pub fn is_semiprime_context(ctx: &MoritaContext, caps: &Caps) -> Result<SemiprimeContextReport> {
    let t = build_context_ring(ctx, caps.order)?;
    Ok(SemiprimeContextReport {
        t_semiprime: is_semiprime_ring(&t, caps.lattice)?,
        r_semiprime: is_semiprime_ring(&ctx.r, caps.lattice)?,
        s_semiprime: is_semiprime_ring(&ctx.s, caps.lattice)?,
        surjective: ctx.is_surjective(),
    })
}
