//! Finite bimodules `_R M _S`, their submodule lattices, quotients, and the
//! one-sided views used for prime submodules and annihilators.

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::finring::{check_square, cosets, FiniteRing, RingMap};
use crate::ideals::{Ideal, Side};
use crate::span::{additive_generators, close_under, enumerate_lattice, is_subgroup, AdditiveGroup};
use crate::subset::Subset;
use crate::validate::ValidationReport;
use crate::Verdict;

/// Unvalidated bimodule tables. `left_act[r][v]` is `r·v`, `right_act[v][s]` is `v·s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawBimodule {
    pub labels: Option<Vec<String>>,
    pub add: Vec<Vec<usize>>,
    pub zero: usize,
    pub left_act: Vec<Vec<usize>>,
    pub right_act: Vec<Vec<usize>>,
}

/// A finite `(R, S)`-bimodule.
#[derive(Clone)]
pub struct Bimodule {
    name: String,
    labels: Vec<String>,
    order: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
    zero: usize,
    left: FiniteRing,
    left_act: Vec<u32>,
    right: FiniteRing,
    right_act: Vec<u32>,
    gens: Vec<usize>,
}

impl fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Bimodule")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("left", &self.left.name())
            .field("right", &self.right.name())
            .finish()
    }
}

pub fn validate_bimodule(raw: &RawBimodule, left: &FiniteRing, right: &FiniteRing) -> Result<ValidationReport> {
    let m = raw.add.len();
    if m == 0 {
        return Err(AlgebraError::MalformedTable("empty module addition table".into()));
    }
    let (kl, kr) = (left.order(), right.order());
    check_square("module addition table", &raw.add, m, m, m)?;
    check_square("left action table", &raw.left_act, kl, m, m)?;
    check_square("right action table", &raw.right_act, m, kr, m)?;
    if raw.zero >= m {
        return Err(AlgebraError::MalformedTable(format!("zero {} outside 0..{m}", raw.zero)));
    }
    if let Some(labels) = &raw.labels {
        if labels.len() != m {
            return Err(AlgebraError::MalformedTable(format!("{} labels for {m} elements", labels.len())));
        }
    }

    let add = |a: usize, b: usize| raw.add[a][b];
    let la = |r: usize, v: usize| raw.left_act[r][v];
    let ra = |v: usize, s: usize| raw.right_act[v][s];
    let zero = raw.zero;
    let mut report = ValidationReport::default();

    for a in 0..m {
        if add(zero, a) != a || add(a, zero) != a {
            report.record("additive identity", &[a]);
        }
        if !(0..m).any(|b| add(a, b) == zero) {
            report.record("additive inverse", &[a]);
        }
        for b in 0..m {
            if add(a, b) != add(b, a) {
                report.record("additive commutativity", &[a, b]);
            }
            for c in 0..m {
                if add(add(a, b), c) != add(a, add(b, c)) {
                    report.record("additive associativity", &[a, b, c]);
                }
            }
        }
    }
    for v in 0..m {
        if la(left.one(), v) != v {
            report.record("left unital", &[v]);
        }
        if ra(v, right.one()) != v {
            report.record("right unital", &[v]);
        }
        for r in 0..kl {
            for r2 in 0..kl {
                if la(left.mul(r, r2), v) != la(r, la(r2, v)) {
                    report.record("left associativity", &[r, r2, v]);
                }
                if la(left.add(r, r2), v) != add(la(r, v), la(r2, v)) {
                    report.record("left action additive in ring", &[r, r2, v]);
                }
            }
            for w in 0..m {
                if la(r, add(v, w)) != add(la(r, v), la(r, w)) {
                    report.record("left action additive in module", &[r, v, w]);
                }
            }
            for s in 0..kr {
                if ra(la(r, v), s) != la(r, ra(v, s)) {
                    report.record("bimodule compatibility", &[r, v, s]);
                }
            }
        }
        for s in 0..kr {
            for s2 in 0..kr {
                if ra(v, right.mul(s, s2)) != ra(ra(v, s), s2) {
                    report.record("right associativity", &[v, s, s2]);
                }
                if ra(v, right.add(s, s2)) != add(ra(v, s), ra(v, s2)) {
                    report.record("right action additive in ring", &[v, s, s2]);
                }
            }
            for w in 0..m {
                if ra(add(v, w), s) != add(ra(v, s), ra(w, s)) {
                    report.record("right action additive in module", &[v, w, s]);
                }
            }
        }
    }
    Ok(report)
}

impl Bimodule {
    pub fn from_tables(name: impl Into<String>, raw: &RawBimodule, left: &FiniteRing, right: &FiniteRing) -> Result<Self> {
        let name = name.into();
        let report = validate_bimodule(raw, left, right)?;
        if !report.is_ok() {
            return Err(AlgebraError::Invalid {
                what: format!("bimodule {name}"),
                report,
            });
        }
        Ok(Self::from_raw_unchecked(name, raw, left, right))
    }

    fn from_raw_unchecked(name: String, raw: &RawBimodule, left: &FiniteRing, right: &FiniteRing) -> Self {
        let m = raw.add.len();
        let flat = |t: &Vec<Vec<usize>>| t.iter().flatten().map(|&x| x as u32).collect::<Vec<u32>>();
        let add = flat(&raw.add);
        let neg = (0..m)
            .map(|a| (0..m).find(|&b| raw.add[a][b] == raw.zero).expect("validated inverse") as u32)
            .collect();
        let mut module = Self {
            name,
            labels: raw
                .labels
                .clone()
                .unwrap_or_else(|| (0..m).map(|i| i.to_string()).collect()),
            order: m,
            add,
            neg,
            zero: raw.zero,
            left: left.clone(),
            left_act: flat(&raw.left_act),
            right: right.clone(),
            right_act: flat(&raw.right_act),
            gens: Vec::new(),
        };
        module.gens = additive_generators(&module, &Subset::full(m));
        module
    }

    /// The additive subgroup `residues` of `Z_n`, with ring elements acting
    /// through their index read as an integer: `r·v = r v mod n`,
    /// `v·s = v s mod n`. This matches rings built by `make_zn`. The
    /// resulting tables are validated, so incompatible choices of rings are
    /// rejected.
    pub fn residues(
        name: impl Into<String>,
        n: usize,
        residues: &[usize],
        left: &FiniteRing,
        right: &FiniteRing,
    ) -> Result<Self> {
        let name = name.into();
        if let Some(&bad) = residues.iter().find(|&&x| x >= n) {
            return Err(AlgebraError::NotASubmodule(format!("residue {bad} outside Z{n}")));
        }
        let mut carrier: Vec<usize> = residues.to_vec();
        carrier.sort_unstable();
        carrier.dedup();
        let pos = |x: usize| carrier.binary_search(&x).ok();
        let close = |x: usize, what: &str| {
            pos(x).ok_or_else(|| AlgebraError::NotASubmodule(format!("{name}: {what} gives {x}, not in the subset")))
        };
        if pos(0).is_none() {
            return Err(AlgebraError::NotASubmodule(format!("{name}: subset does not contain 0")));
        }
        let m = carrier.len();
        let mut add = vec![vec![0; m]; m];
        for (i, &a) in carrier.iter().enumerate() {
            for (j, &b) in carrier.iter().enumerate() {
                add[i][j] = close((a + b) % n, &format!("{a}+{b}"))?;
            }
        }
        let mut left_act = vec![vec![0; m]; left.order()];
        for (r, row) in left_act.iter_mut().enumerate() {
            for (j, &v) in carrier.iter().enumerate() {
                row[j] = close((r * v) % n, &format!("{r}*{v}"))?;
            }
        }
        let mut right_act = vec![vec![0; right.order()]; m];
        for (i, &v) in carrier.iter().enumerate() {
            for s in 0..right.order() {
                right_act[i][s] = close((v * s) % n, &format!("{v}*{s}"))?;
            }
        }
        let raw = RawBimodule {
            labels: Some(carrier.iter().map(|x| x.to_string()).collect()),
            add,
            zero: 0,
            left_act,
            right_act,
        };
        Self::from_tables(name, &raw, left, right)
    }

    /// A ring as a bimodule over itself by multiplication.
    pub fn regular(ring: &FiniteRing) -> Self {
        let raw = RawBimodule {
            labels: Some(ring.elements().map(|a| ring.label(a)).collect()),
            add: ring.elements().map(|a| ring.elements().map(|b| ring.add(a, b)).collect()).collect(),
            zero: ring.zero(),
            left_act: ring.elements().map(|a| ring.elements().map(|b| ring.mul(a, b)).collect()).collect(),
            right_act: ring.elements().map(|a| ring.elements().map(|b| ring.mul(a, b)).collect()).collect(),
        };
        Self::from_raw_unchecked(ring.name().to_string(), &raw, ring, ring)
    }

    pub fn zero_module(left: &FiniteRing, right: &FiniteRing) -> Self {
        let raw = RawBimodule {
            labels: Some(vec!["0".into()]),
            add: vec![vec![0]],
            zero: 0,
            left_act: vec![vec![0]; left.order()],
            right_act: vec![vec![0; right.order()]],
        };
        Self::from_raw_unchecked("0".into(), &raw, left, right)
    }

    pub fn to_raw(&self) -> RawBimodule {
        let m = self.order;
        RawBimodule {
            labels: Some(self.labels.clone()),
            add: (0..m).map(|a| (0..m).map(|b| self.add(a, b)).collect()).collect(),
            zero: self.zero,
            left_act: self.left.elements().map(|r| (0..m).map(|v| self.left_act(r, v)).collect()).collect(),
            right_act: (0..m).map(|v| self.right.elements().map(|s| self.right_act(v, s)).collect()).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// `r·v`
    #[inline]
    pub fn left_act(&self, r: usize, v: usize) -> usize {
        self.left_act[r * self.order + v] as usize
    }

    /// `v·s`
    #[inline]
    pub fn right_act(&self, v: usize, s: usize) -> usize {
        self.right_act[v * self.right.order() + s] as usize
    }

    pub fn left_ring(&self) -> &FiniteRing {
        &self.left
    }

    pub fn right_ring(&self) -> &FiniteRing {
        &self.right
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn additive_gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn format_subset(&self, s: &Subset) -> String {
        let items: Vec<&str> = s.iter().map(|x| self.label(x)).collect();
        format!("{{{}}}", items.join(","))
    }

    /// `_R M`, forgetting the right action.
    pub fn left_view(&self) -> ModuleView {
        ModuleView::from_parts(
            format!("{} as left {}-module", self.name, self.left.name()),
            &self.left,
            Side::Left,
            self.labels.clone(),
            self.add.clone(),
            self.zero,
            |r, v| self.left_act(r, v),
        )
    }

    /// `M_S`, forgetting the left action.
    pub fn right_view(&self) -> ModuleView {
        ModuleView::from_parts(
            format!("{} as right {}-module", self.name, self.right.name()),
            &self.right,
            Side::Right,
            self.labels.clone(),
            self.add.clone(),
            self.zero,
            |s, v| self.right_act(v, s),
        )
    }
}

impl AdditiveGroup for Bimodule {
    fn size(&self) -> usize {
        self.order
    }
    fn zero(&self) -> usize {
        self.zero
    }
    fn add(&self, a: usize, b: usize) -> usize {
        Bimodule::add(self, a, b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Submodule {
    pub members: Subset,
    pub side: Side,
}

impl Submodule {
    pub fn new(module: &Bimodule, members: Subset, side: Side) -> Result<Self> {
        if members.universe() != module.order() {
            return Err(AlgebraError::Mismatch(format!(
                "subset of a {}-element carrier used in {}",
                members.universe(),
                module.name()
            )));
        }
        check_submodule(module, &members, side).map_err(AlgebraError::NotASubmodule)?;
        Ok(Self { members, side })
    }

    pub fn zero(module: &Bimodule) -> Self {
        Self {
            members: Subset::singleton(module.order(), module.zero()),
            side: Side::Two,
        }
    }

    pub fn whole(module: &Bimodule) -> Self {
        Self {
            members: Subset::full(module.order()),
            side: Side::Two,
        }
    }
}

pub fn check_submodule(module: &Bimodule, members: &Subset, side: Side) -> Result<(), String> {
    if !is_subgroup(module, members) {
        return Err("not an additive subgroup".into());
    }
    for v in additive_generators(module, members) {
        if matches!(side, Side::Left | Side::Two) {
            if let Some(&r) = module
                .left_ring()
                .additive_gens()
                .iter()
                .find(|&&r| !members.contains(module.left_act(r, v)))
            {
                return Err(format!("{}·{} escapes", module.left_ring().label(r), module.label(v)));
            }
        }
        if matches!(side, Side::Right | Side::Two) {
            if let Some(&s) = module
                .right_ring()
                .additive_gens()
                .iter()
                .find(|&&s| !members.contains(module.right_act(v, s)))
            {
                return Err(format!("{}·{} escapes", module.label(v), module.right_ring().label(s)));
            }
        }
    }
    Ok(())
}

pub fn generated_submodule(module: &Bimodule, seeds: impl IntoIterator<Item = usize>, side: Side) -> Submodule {
    let mut ops: Vec<Box<dyn Fn(usize) -> usize + '_>> = Vec::new();
    if matches!(side, Side::Left | Side::Two) {
        for &r in module.left_ring().additive_gens() {
            ops.push(Box::new(move |v| module.left_act(r, v)));
        }
    }
    if matches!(side, Side::Right | Side::Two) {
        for &s in module.right_ring().additive_gens() {
            ops.push(Box::new(move |v| module.right_act(v, s)));
        }
    }
    Submodule {
        members: close_under(module, seeds, &ops),
        side,
    }
}

/// All submodules closed under the actions named by `side`, sorted canonically.
pub fn enumerate_submodules(module: &Bimodule, side: Side, cap: usize) -> Result<Vec<Submodule>> {
    let what = format!("{side} submodule lattice of {}", module.name());
    let lattice = enumerate_lattice(module, |v| generated_submodule(module, [v], side).members, cap, &what)?;
    Ok(lattice.into_iter().map(|members| Submodule { members, side }).collect())
}

/// `M / N` for a sub-bimodule `N`. When projections `R -> R/I` or
/// `S -> S/J` are supplied the quotient is a module over the quotient rings;
/// each induced action is checked to be independent of representatives.
/// Returns the quotient and the projection table `M -> M/N`.
pub fn quotient_module(
    module: &Bimodule,
    sub: &Submodule,
    left_proj: Option<&RingMap>,
    right_proj: Option<&RingMap>,
) -> Result<(Bimodule, Vec<usize>)> {
    check_submodule(module, &sub.members, Side::Two).map_err(AlgebraError::NotASubmodule)?;
    for (proj, ring) in [(left_proj, module.left_ring()), (right_proj, module.right_ring())] {
        if let Some(p) = proj {
            if !p.source.same_structure(ring) {
                return Err(AlgebraError::Mismatch("projection source is not the acting ring".into()));
            }
        }
    }
    let (reps, coset_of) = cosets(module, &sub.members);
    let q = reps.len();
    let cls = |v: usize| coset_of[v] as usize;

    let left_q = left_proj.map_or_else(|| module.left_ring().clone(), |p| p.target.clone());
    let right_q = right_proj.map_or_else(|| module.right_ring().clone(), |p| p.target.clone());
    let lproj = |r: usize| left_proj.map_or(r, |p| p.apply(r));
    let rproj = |s: usize| right_proj.map_or(s, |p| p.apply(s));
    let least_preimage = |k: usize, proj: &dyn Fn(usize) -> usize, n: usize| (0..n).find(|&r| proj(r) == k);

    let mut left_act = vec![vec![0; q]; left_q.order()];
    for (rq, row) in left_act.iter_mut().enumerate() {
        let r = least_preimage(rq, &lproj, module.left_ring().order())
            .ok_or_else(|| AlgebraError::Mismatch("left projection is not surjective".into()))?;
        for (vq, entry) in row.iter_mut().enumerate() {
            *entry = cls(module.left_act(r, reps[vq]));
        }
    }
    let mut right_act = vec![vec![0; right_q.order()]; q];
    for (vq, row) in right_act.iter_mut().enumerate() {
        for (sq, entry) in row.iter_mut().enumerate() {
            let s = least_preimage(sq, &rproj, module.right_ring().order())
                .ok_or_else(|| AlgebraError::Mismatch("right projection is not surjective".into()))?;
            *entry = cls(module.right_act(reps[vq], s));
        }
    }
    for r in module.left_ring().elements() {
        for v in module.elements() {
            if cls(module.left_act(r, v)) != left_act[lproj(r)][cls(v)] {
                return Err(AlgebraError::WellDefinedness(format!(
                    "left action on {}/N at r={}, v={}",
                    module.name(),
                    module.left_ring().label(r),
                    module.label(v)
                )));
            }
        }
    }
    for v in module.elements() {
        for s in module.right_ring().elements() {
            if cls(module.right_act(v, s)) != right_act[cls(v)][rproj(s)] {
                return Err(AlgebraError::WellDefinedness(format!(
                    "right action on {}/N at v={}, s={}",
                    module.name(),
                    module.label(v),
                    module.right_ring().label(s)
                )));
            }
        }
    }
    let raw = RawBimodule {
        labels: Some(reps.iter().map(|&v| module.label(v).to_string()).collect()),
        add: (0..q).map(|a| (0..q).map(|b| cls(module.add(reps[a], reps[b]))).collect()).collect(),
        zero: cls(module.zero()),
        left_act,
        right_act,
    };
    let name = format!("{}/{}", module.name(), module.format_subset(&sub.members));
    let quotient = Bimodule::from_raw_unchecked(name, &raw, &left_q, &right_q);
    Ok((quotient, (0..module.order()).map(cls).collect()))
}

/// A one-sided module over a single ring. `act(r, m)` is `r·m` for a left
/// module and `m·r` for a right module.
#[derive(Clone)]
pub struct ModuleView {
    name: String,
    ring: FiniteRing,
    side: Side,
    order: usize,
    labels: Vec<String>,
    add: Vec<u32>,
    zero: usize,
    act: Vec<u32>,
    gens: Vec<usize>,
}

impl fmt::Debug for ModuleView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleView")
            .field("name", &self.name)
            .field("side", &self.side)
            .field("order", &self.order)
            .finish()
    }
}

impl ModuleView {
    fn from_parts(
        name: String,
        ring: &FiniteRing,
        side: Side,
        labels: Vec<String>,
        add: Vec<u32>,
        zero: usize,
        act: impl Fn(usize, usize) -> usize,
    ) -> Self {
        assert!(side != Side::Two, "a module view is one-sided");
        let order = labels.len();
        let mut table = Vec::with_capacity(ring.order() * order);
        for r in ring.elements() {
            for m in 0..order {
                table.push(act(r, m) as u32);
            }
        }
        let mut view = Self {
            name,
            ring: ring.clone(),
            side,
            order,
            labels,
            add,
            zero,
            act: table,
            gens: Vec::new(),
        };
        view.gens = additive_generators(&view, &Subset::full(order));
        view
    }

    /// `R_R` or `_R R`.
    pub fn regular(ring: &FiniteRing, side: Side) -> Self {
        let k = ring.order();
        let add = (0..k * k).map(|i| ring.add(i / k, i % k) as u32).collect();
        let labels = ring.elements().map(|a| ring.label(a)).collect();
        let name = format!("{} as {side} module", ring.name());
        match side {
            Side::Left => Self::from_parts(name, ring, side, labels, add, ring.zero(), |r, m| ring.mul(r, m)),
            _ => Self::from_parts(name, ring, Side::Right, labels, add, ring.zero(), |r, m| ring.mul(m, r)),
        }
    }

    /// `A ⊕ B`, elements indexed as `a * |B| + b`.
    pub fn direct_sum(a: &ModuleView, b: &ModuleView) -> Result<Self> {
        if a.side != b.side || !a.ring.same_structure(&b.ring) {
            return Err(AlgebraError::Mismatch(format!(
                "cannot sum {} and {}: different rings or sides",
                a.name, b.name
            )));
        }
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let split = |x: usize| (x / nb, x % nb);
        let mut add = Vec::with_capacity(n * n);
        for x in 0..n {
            let (xa, xb) = split(x);
            for y in 0..n {
                let (ya, yb) = split(y);
                add.push((a.add(xa, ya) * nb + b.add(xb, yb)) as u32);
            }
        }
        let labels = (0..n)
            .map(|x| {
                let (xa, xb) = split(x);
                format!("({},{})", a.label(xa), b.label(xb))
            })
            .collect();
        Ok(Self::from_parts(
            format!("{} ⊕ {}", a.name, b.name),
            &a.ring,
            a.side,
            labels,
            add,
            a.zero * nb + b.zero,
            |r, x| {
                let (xa, xb) = split(x);
                a.act(r, xa) * nb + b.act(r, xb)
            },
        ))
    }

    /// `M / N` for a submodule `N`.
    pub fn quotient(&self, sub: &Subset) -> Result<Self> {
        self.check_submodule(sub).map_err(AlgebraError::NotASubmodule)?;
        let (reps, coset_of) = cosets(self, sub);
        let q = reps.len();
        let cls = |v: usize| coset_of[v] as usize;
        let add = (0..q * q).map(|i| cls(self.add(reps[i / q], reps[i % q])) as u32).collect();
        let labels = reps.iter().map(|&v| self.label(v).to_string()).collect();
        Ok(Self::from_parts(
            format!("{}/{}", self.name, self.format_subset(sub)),
            &self.ring,
            self.side,
            labels,
            add,
            cls(self.zero),
            |r, m| cls(self.act(r, reps[m])),
        ))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn act(&self, r: usize, m: usize) -> usize {
        self.act[r * self.order + m] as usize
    }

    pub fn label(&self, m: usize) -> &str {
        &self.labels[m]
    }

    pub fn format_subset(&self, s: &Subset) -> String {
        let items: Vec<&str> = s.iter().map(|x| self.label(x)).collect();
        format!("{{{}}}", items.join(","))
    }

    /// Index of the element with the given label.
    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn check_submodule(&self, members: &Subset) -> Result<(), String> {
        if members.universe() != self.order {
            return Err("subset of another carrier".into());
        }
        if !is_subgroup(self, members) {
            return Err("not an additive subgroup".into());
        }
        for m in additive_generators(self, members) {
            if let Some(&r) = self.ring.additive_gens().iter().find(|&&r| !members.contains(self.act(r, m))) {
                return Err(format!("acting by {} on {} escapes", self.ring.label(r), self.label(m)));
            }
        }
        Ok(())
    }

    /// `rRm ⊆ N` for a left module, `mRr ⊆ N` for a right module.
    fn cyclic_product_within(&self, r: usize, m: usize, sub: &Subset) -> bool {
        self.ring.additive_gens().iter().all(|&x| {
            let scalar = match self.side {
                Side::Left => self.ring.mul(r, x),
                _ => self.ring.mul(x, r),
            };
            sub.contains(self.act(scalar, m))
        })
    }

    /// `rM ⊆ N` (resp. `Mr ⊆ N`).
    fn scaled_module_within(&self, r: usize, sub: &Subset) -> bool {
        self.gens.iter().all(|&g| sub.contains(self.act(r, g)))
    }
}

impl AdditiveGroup for ModuleView {
    fn size(&self) -> usize {
        self.order
    }
    fn zero(&self) -> usize {
        self.zero
    }
    fn add(&self, a: usize, b: usize) -> usize {
        ModuleView::add(self, a, b)
    }
}

/// Whether `(r, m)` refutes primeness of `N`: `rRm ⊆ N` while `rM ⊄ N`
/// and `m ∉ N` (right modules: `mRr ⊆ N`, `Mr ⊄ N`, `m ∉ N`).
pub fn refutes_prime_submodule(module: &ModuleView, sub: &Subset, r: usize, m: usize) -> bool {
    !sub.contains(m) && module.cyclic_product_within(r, m, sub) && !module.scaled_module_within(r, sub)
}

/// Prime-submodule test over all pairs `(r, m)`; the first witness in
/// `(r, m)` index order is returned on failure.
pub fn is_prime_submodule(module: &ModuleView, sub: &Subset) -> Result<Verdict<(usize, usize)>> {
    module.check_submodule(sub).map_err(AlgebraError::NotASubmodule)?;
    if sub.is_full() {
        return Err(AlgebraError::NotProper("submodules"));
    }
    for r in module.ring().elements() {
        if module.scaled_module_within(r, sub) {
            continue;
        }
        for m in (0..module.order()).filter(|&m| !sub.contains(m)) {
            if module.cyclic_product_within(r, m, sub) {
                return Ok(Verdict::Fails((r, m)));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// A module is prime when `{0}` is a prime submodule; the zero module has no
/// proper submodules and is not prime.
pub fn is_prime_module(module: &ModuleView) -> bool {
    let zero = Subset::singleton(module.order(), module.zero());
    matches!(is_prime_submodule(module, &zero), Ok(Verdict::Holds))
}

/// `{r : rM = 0}` (or `Mr = 0`), verified to be a two-sided ideal.
pub fn annihilator(module: &ModuleView) -> Result<Ideal> {
    let ring = module.ring();
    let members = Subset::from_predicate(ring.order(), |r| {
        module.gens.iter().all(|&g| module.act(r, g) == module.zero())
    });
    Ideal::new(ring, members, Side::Two)
        .map_err(|e| AlgebraError::Inconsistent(format!("annihilator of {} is not two-sided: {e}", module.name())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{make_zn, quotient_ring};
    use crate::ideals::{is_prime_ideal, principal_ideal};

    fn z(n: usize) -> FiniteRing {
        make_zn(n).unwrap()
    }

    fn brute_force_submodules(m: &Bimodule, side: Side) -> Vec<Subset> {
        let n = m.order();
        let mut out = Vec::new();
        for mask in 0u64..(1 << n) {
            let s = Subset::from_predicate(n, |x| mask >> x & 1 == 1);
            if !s.contains(m.zero()) {
                continue;
            }
            let closed = s.iter().all(|a| {
                s.iter().all(|b| s.contains(m.add(a, b)))
                    && (side == Side::Right || m.left_ring().elements().all(|r| s.contains(m.left_act(r, a))))
                    && (side == Side::Left || m.right_ring().elements().all(|r| s.contains(m.right_act(a, r))))
            });
            if closed {
                out.push(s);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn residue_module_two_z6_is_valid() {
        let r = z(6);
        let v = Bimodule::residues("2Z6", 6, &[0, 2, 4], &r, &r).unwrap();
        assert_eq!(v.order(), 3);
        assert!(validate_bimodule(&v.to_raw(), &r, &r).unwrap().is_ok());
        assert_eq!(v.label(v.left_act(5, 1)), "4");
    }

    #[test]
    fn broken_left_action_is_reported() {
        let r = z(4);
        let mut raw = Bimodule::regular(&r).to_raw();
        raw.left_act[2][1] = 1;
        let report = validate_bimodule(&raw, &r, &r).unwrap();
        assert!(!report.is_ok());
        assert!(report.violations.iter().any(|v| v.axiom.starts_with("left")));
    }

    #[test]
    fn incompatible_residue_actions_are_rejected() {
        // Z3 cannot act on Z2 by residues: (1+2)·1 = 0 but 1·1 + 2·1 = 1.
        let err = Bimodule::residues("Z2", 2, &[0, 1], &z(3), &z(2)).unwrap_err();
        assert!(matches!(err, AlgebraError::Invalid { .. }));
    }

    #[test]
    fn zero_module_is_valid() {
        let m = Bimodule::zero_module(&z(4), &z(6));
        assert!(validate_bimodule(&m.to_raw(), &z(4), &z(6)).unwrap().is_ok());
        let subs = enumerate_submodules(&m, Side::Two, 10).unwrap();
        assert_eq!(subs.len(), 1);
    }

    #[test]
    fn submodule_lattices_match_brute_force() {
        let z6 = Bimodule::regular(&z(6));
        let subs = enumerate_submodules(&z6, Side::Two, 100).unwrap();
        assert_eq!(subs.len(), 4);
        let z4 = Bimodule::regular(&z(4));
        assert_eq!(enumerate_submodules(&z4, Side::Two, 100).unwrap().len(), 3);
        let tri = Bimodule::residues("Z2", 2, &[0, 1], &z(4), &z(2)).unwrap();
        for m in [z6, z4, tri, Bimodule::regular(&z(12))] {
            for side in [Side::Left, Side::Right, Side::Two] {
                let got: Vec<Subset> = enumerate_submodules(&m, side, 100)
                    .unwrap()
                    .into_iter()
                    .map(|s| s.members)
                    .collect();
                assert_eq!(got, brute_force_submodules(&m, side), "{} {side}", m.name());
            }
        }
    }

    #[test]
    fn quotient_modules() {
        let z4 = z(4);
        let v = Bimodule::residues("2Z4", 4, &[0, 2], &z4, &z4).unwrap();
        let all = Submodule::whole(&v);
        let i = principal_ideal(&z4, 2, Side::Two);
        let (q4, p4) = quotient_ring(&z4, &i).unwrap();
        let (q, proj) = quotient_module(&v, &all, Some(&p4), Some(&p4)).unwrap();
        assert_eq!(q.order(), 1);
        assert_eq!(q.left_ring().order(), q4.order());
        assert_eq!(proj, vec![0, 0]);

        let z6 = z(6);
        let m = Bimodule::regular(&z6);
        let (q, proj) = quotient_module(&m, &Submodule::zero(&m), None, None).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(proj, (0..6).collect::<Vec<_>>());

        let three = Submodule::new(&m, Subset::from_members(6, [0, 3]), Side::Two).unwrap();
        let (q3, p3) = quotient_ring(&z6, &principal_ideal(&z6, 3, Side::Two)).unwrap();
        let (q, _) = quotient_module(&m, &three, Some(&p3), Some(&p3)).unwrap();
        assert_eq!(q.order(), 3);
        assert!(validate_bimodule(&q.to_raw(), &q3, &q3).unwrap().is_ok());
    }

    #[test]
    fn quotient_module_detects_ill_defined_actions() {
        // Z6/{0} cannot be a module over Z6/3Z6 since 3 does not act as zero.
        let z6 = z(6);
        let m = Bimodule::regular(&z6);
        let (_, p3) = quotient_ring(&z6, &principal_ideal(&z6, 3, Side::Two)).unwrap();
        let err = quotient_module(&m, &Submodule::zero(&m), Some(&p3), None).unwrap_err();
        assert!(matches!(err, AlgebraError::WellDefinedness(_)));
    }

    #[test]
    fn prime_submodule_example_over_z8() {
        let z8 = z(8);
        let rr = ModuleView::regular(&z8, Side::Right);
        let sum = ModuleView::direct_sum(&rr, &rr).unwrap();
        let four = [0usize, 4];
        let n = Subset::from_predicate(64, |x| four.contains(&(x / 8)));
        let verdict = is_prime_submodule(&sum, &n).unwrap();
        let (r, m) = *verdict.witness().expect("not prime");
        assert!(refutes_prime_submodule(&sum, &n, r, m));
        assert!(refutes_prime_submodule(&sum, &n, 2, 2 * 8 + 2));
        assert_eq!(r, 2);
    }

    #[test]
    fn simple_and_cyclic_prime_submodules() {
        let z2 = ModuleView::regular(&z(2), Side::Left);
        assert!(is_prime_submodule(&z2, &Subset::singleton(2, 0)).unwrap().holds());
        let z6 = ModuleView::regular(&z(6), Side::Left);
        assert!(is_prime_submodule(&z6, &Subset::from_members(6, [0, 3])).unwrap().holds());
        assert!(matches!(
            is_prime_submodule(&z6, &Subset::full(6)),
            Err(AlgebraError::NotProper(_))
        ));
        assert!(matches!(
            is_prime_submodule(&z6, &Subset::from_members(6, [0, 1])),
            Err(AlgebraError::NotASubmodule(_))
        ));
    }

    #[test]
    fn annihilators() {
        let z6 = z(6);
        let m = ModuleView::regular(&z6, Side::Left);
        let q = m.quotient(&Subset::from_members(6, [0, 3])).unwrap();
        assert_eq!(annihilator(&q).unwrap().members.members(), vec![0, 3]);
        assert_eq!(annihilator(&m).unwrap().members.members(), vec![0]);
        let zero = Bimodule::zero_module(&z(4), &z(4)).left_view();
        assert!(annihilator(&zero).unwrap().members.is_full());
    }

    #[test]
    fn prime_submodules_have_prime_annihilators() {
        for n in 2..=12 {
            let ring = z(n);
            for side in [Side::Left, Side::Right] {
                let m = ModuleView::regular(&ring, side);
                let sum = ModuleView::direct_sum(&m, &m).unwrap();
                for view in [m.clone(), sum] {
                    let subs = enumerate_lattice(&view, |x| {
                        let ops: Vec<Box<dyn Fn(usize) -> usize>> = ring
                            .additive_gens()
                            .iter()
                            .map(|&r| {
                                let v = view.clone();
                                Box::new(move |y| v.act(r, y)) as Box<dyn Fn(usize) -> usize>
                            })
                            .collect();
                        close_under(&view, [x], &ops)
                    }, 1000, "test")
                    .unwrap();
                    for s in subs.iter().filter(|s| !s.is_full()) {
                        if is_prime_submodule(&view, s).unwrap().holds() {
                            let ann = annihilator(&view.quotient(s).unwrap()).unwrap();
                            assert!(is_prime_ideal(&ring, &ann).unwrap().holds(), "Z{n}");
                        }
                    }
                }
            }
        }
    }
}
