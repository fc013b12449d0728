//! Finite unital rings presented by Cayley tables over dense indices.
//!
//! Elements are the indices `0..order`. User-supplied tables are validated
//! against every ring axiom before a [`FiniteRing`] is built from them;
//! rings produced by [`make_zn`], [`quotient_ring`] and the context-ring
//! constructor are correct by construction and skip the cubic check.

use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::ideals::{check_ideal, Ideal, Side};
use crate::span::{additive_generators, AdditiveGroup};
use crate::subset::Subset;
use crate::validate::ValidationReport;

/// Index arithmetic behind a [`FiniteRing`].
pub trait Arithmetic: Send + Sync + fmt::Debug {
    fn order(&self) -> usize;
    fn add(&self, a: usize, b: usize) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn neg(&self, a: usize) -> usize;
    fn label(&self, a: usize) -> String;
}

/// Row-major dense tables.
#[derive(Debug, Clone)]
pub struct TableArith {
    order: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    labels: Vec<String>,
}

impl TableArith {
    fn build(
        order: usize,
        labels: Vec<String>,
        zero: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut at = Vec::with_capacity(order * order);
        let mut mt = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                at.push(add(a, b) as u32);
                mt.push(mul(a, b) as u32);
            }
        }
        let neg = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| at[a * order + b] as usize == zero)
                    .expect("additive inverse exists") as u32
            })
            .collect();
        Self {
            order,
            add: at,
            mul: mt,
            neg,
            labels,
        }
    }
}

impl Arithmetic for TableArith {
    fn order(&self) -> usize {
        self.order
    }
    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }
    #[inline]
    fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }
    fn label(&self, a: usize) -> String {
        self.labels[a].clone()
    }
}

/// A finite associative ring with `1 != 0`. Cloning is cheap.
#[derive(Clone)]
pub struct FiniteRing {
    name: String,
    arith: Arc<dyn Arithmetic>,
    zero: usize,
    one: usize,
    gens: Arc<Vec<usize>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("name", &self.name)
            .field("order", &self.order())
            .finish()
    }
}

impl FiniteRing {
    /// Wraps arithmetic that is correct by construction.
    pub(crate) fn from_arith(name: impl Into<String>, arith: Arc<dyn Arithmetic>, zero: usize, one: usize) -> Self {
        let mut ring = Self {
            name: name.into(),
            arith,
            zero,
            one,
            gens: Arc::new(Vec::new()),
        };
        let gens = additive_generators(&ring, &Subset::full(ring.order()));
        ring.gens = Arc::new(gens);
        ring
    }

    /// Validates user-supplied tables and builds the ring.
    pub fn from_tables(name: impl Into<String>, raw: &RawRingTables) -> Result<Self> {
        let name = name.into();
        let report = validate_ring(raw)?;
        if !report.is_ok() {
            return Err(AlgebraError::Invalid {
                what: format!("ring {name}"),
                report,
            });
        }
        let k = raw.add.len();
        let labels = raw
            .labels
            .clone()
            .unwrap_or_else(|| (0..k).map(|i| i.to_string()).collect());
        let arith = TableArith::build(k, labels, raw.zero, |a, b| raw.add[a][b], |a, b| raw.mul[a][b]);
        Ok(Self::from_arith(name, Arc::new(arith), raw.zero, raw.one))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.arith.order()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.arith.add(a, b)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.arith.mul(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.arith.neg(a)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn label(&self, a: usize) -> String {
        self.arith.label(a)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// A generating set of the additive group. Any additive condition
    /// quantified over the whole ring (`aRb ⊆ I`, `rM ⊆ N`, ...) only needs
    /// checking on these.
    pub fn additive_gens(&self) -> &[usize] {
        &self.gens
    }

    /// `None` when `x` commutes with everything, otherwise a witness.
    pub fn commutes_with_all(&self, x: usize) -> Option<usize> {
        self.gens
            .iter()
            .copied()
            .find(|&g| self.mul(x, g) != self.mul(g, x))
            .map(|g| {
                // report the first non-commuting element in index order
                self.elements()
                    .find(|&y| self.mul(x, y) != self.mul(y, x))
                    .unwrap_or(g)
            })
    }

    /// Zero-divisor in the two-sided sense: `rs = 0` or `sr = 0` for some `r != 0`.
    pub fn is_zero_divisor(&self, s: usize) -> bool {
        self.elements()
            .any(|r| r != self.zero && (self.mul(r, s) == self.zero || self.mul(s, r) == self.zero))
    }

    /// Copies the arithmetic into dense tables (useful before heavy scans
    /// when the arithmetic is computed rather than tabulated).
    pub fn tabulated(&self) -> Self {
        let k = self.order();
        let labels = (0..k).map(|a| self.label(a)).collect();
        let arith = TableArith::build(k, labels, self.zero, |a, b| self.add(a, b), |a, b| self.mul(a, b));
        Self {
            name: self.name.clone(),
            arith: Arc::new(arith),
            zero: self.zero,
            one: self.one,
            gens: self.gens.clone(),
        }
    }

    /// Structural equality of the arithmetic (same order, zero, one and tables).
    pub fn same_structure(&self, other: &FiniteRing) -> bool {
        if Arc::ptr_eq(&self.arith, &other.arith) {
            return self.zero == other.zero && self.one == other.one;
        }
        self.order() == other.order()
            && self.zero == other.zero
            && self.one == other.one
            && self.elements().all(|a| {
                self.elements()
                    .all(|b| self.add(a, b) == other.add(a, b) && self.mul(a, b) == other.mul(a, b))
            })
    }

    pub fn format_subset(&self, s: &Subset) -> String {
        let items: Vec<String> = s.iter().map(|x| self.label(x)).collect();
        format!("{{{}}}", items.join(","))
    }
}

impl AdditiveGroup for FiniteRing {
    fn size(&self) -> usize {
        self.order()
    }
    fn zero(&self) -> usize {
        self.zero
    }
    fn add(&self, a: usize, b: usize) -> usize {
        self.arith.add(a, b)
    }
}

/// The ring of integers modulo `n`, with labels `"0".."n-1"`.
pub fn make_zn(n: usize) -> Result<FiniteRing> {
    if n < 2 {
        return Err(AlgebraError::InvalidOrder(n));
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    let arith = TableArith::build(n, labels, 0, |a, b| (a + b) % n, |a, b| (a * b) % n);
    Ok(FiniteRing::from_arith(format!("Z{n}"), Arc::new(arith), 0, 1))
}

/// Unvalidated ring tables as read from user input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRingTables {
    pub labels: Option<Vec<String>>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

impl RawRingTables {
    pub fn from_ring(ring: &FiniteRing) -> Self {
        let k = ring.order();
        Self {
            labels: Some((0..k).map(|a| ring.label(a)).collect()),
            add: (0..k).map(|a| (0..k).map(|b| ring.add(a, b)).collect()).collect(),
            mul: (0..k).map(|a| (0..k).map(|b| ring.mul(a, b)).collect()).collect(),
            zero: ring.zero(),
            one: ring.one(),
        }
    }
}

pub(crate) fn check_square(name: &str, t: &[Vec<usize>], rows: usize, cols: usize, range: usize) -> Result<()> {
    if t.len() != rows {
        return Err(AlgebraError::MalformedTable(format!(
            "{name} has {} rows, expected {rows}",
            t.len()
        )));
    }
    for (i, row) in t.iter().enumerate() {
        if row.len() != cols {
            return Err(AlgebraError::MalformedTable(format!(
                "{name} row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= range) {
            return Err(AlgebraError::MalformedTable(format!(
                "{name} row {i} has entry {bad} outside 0..{range}"
            )));
        }
    }
    Ok(())
}

/// Checks every ring axiom by exhaustive evaluation (cubic in the order).
/// Each violated axiom is reported once with its first witness.
pub fn validate_ring(raw: &RawRingTables) -> Result<ValidationReport> {
    let k = raw.add.len();
    if k == 0 {
        return Err(AlgebraError::MalformedTable("empty addition table".into()));
    }
    check_square("addition table", &raw.add, k, k, k)?;
    check_square("multiplication table", &raw.mul, k, k, k)?;
    if raw.zero >= k || raw.one >= k {
        return Err(AlgebraError::MalformedTable(format!(
            "zero {} / one {} outside 0..{k}",
            raw.zero, raw.one
        )));
    }
    if let Some(labels) = &raw.labels {
        if labels.len() != k {
            return Err(AlgebraError::MalformedTable(format!(
                "{} labels for {k} elements",
                labels.len()
            )));
        }
    }

    let add = |a: usize, b: usize| raw.add[a][b];
    let mul = |a: usize, b: usize| raw.mul[a][b];
    let (zero, one) = (raw.zero, raw.one);
    let mut report = ValidationReport::default();

    if zero == one {
        report.record("one distinct from zero", &[zero]);
    }
    for a in 0..k {
        if add(zero, a) != a || add(a, zero) != a {
            report.record("additive identity", &[a]);
        }
        if !(0..k).any(|b| add(a, b) == zero) {
            report.record("additive inverse", &[a]);
        }
        if mul(one, a) != a || mul(a, one) != a {
            report.record("multiplicative identity", &[a]);
        }
        for b in 0..k {
            if add(a, b) != add(b, a) {
                report.record("additive commutativity", &[a, b]);
            }
            for c in 0..k {
                if add(add(a, b), c) != add(a, add(b, c)) {
                    report.record("additive associativity", &[a, b, c]);
                }
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    report.record("multiplicative associativity", &[a, b, c]);
                }
                if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)) {
                    report.record("left distributivity", &[a, b, c]);
                }
                if mul(add(a, b), c) != add(mul(a, c), mul(b, c)) {
                    report.record("right distributivity", &[a, b, c]);
                }
            }
        }
    }
    Ok(report)
}

/// Cosets of a two-sided ideal, represented by their least member.
#[derive(Debug)]
struct QuotientArith {
    parent: FiniteRing,
    reps: Vec<usize>,
    coset_of: Vec<u32>,
}

impl Arithmetic for QuotientArith {
    fn order(&self) -> usize {
        self.reps.len()
    }
    fn add(&self, a: usize, b: usize) -> usize {
        self.coset_of[self.parent.add(self.reps[a], self.reps[b])] as usize
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.coset_of[self.parent.mul(self.reps[a], self.reps[b])] as usize
    }
    fn neg(&self, a: usize) -> usize {
        self.coset_of[self.parent.neg(self.reps[a])] as usize
    }
    fn label(&self, a: usize) -> String {
        self.parent.label(self.reps[a])
    }
}

/// Above this order a quotient keeps computed arithmetic instead of tables.
const DENSE_QUOTIENT_LIMIT: usize = 1024;

/// Partition of the carrier into cosets of an additive subgroup, numbered by
/// increasing least member. Returns `(representatives, coset index of each element)`.
pub(crate) fn cosets<G: AdditiveGroup + ?Sized>(group: &G, sub: &Subset) -> (Vec<usize>, Vec<u32>) {
    let n = group.size();
    let mut coset_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let members = sub.members();
    for x in 0..n {
        if coset_of[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &i in &members {
            coset_of[group.add(x, i)] = id;
        }
    }
    (reps, coset_of)
}

/// `R / I` together with the projection `R -> R/I`.
pub fn quotient_ring(ring: &FiniteRing, ideal: &Ideal) -> Result<(FiniteRing, RingMap)> {
    if ideal.side != Side::Two {
        return Err(AlgebraError::NotAnIdeal(format!(
            "quotient needs a two-sided ideal, got a {} ideal",
            ideal.side
        )));
    }
    if ideal.members.universe() != ring.order() {
        return Err(AlgebraError::Mismatch("ideal belongs to a ring of another order".into()));
    }
    check_ideal(ring, &ideal.members, Side::Two).map_err(AlgebraError::NotAnIdeal)?;
    if ideal.members.is_full() {
        return Err(AlgebraError::NotProper("ideals (the quotient by the whole ring is the zero ring)"));
    }

    let (reps, coset_of) = cosets(ring, &ideal.members);
    let zero = coset_of[ring.zero()] as usize;
    let one = coset_of[ring.one()] as usize;
    let image = coset_of.iter().map(|&c| c as usize).collect();
    let arith = QuotientArith {
        parent: ring.clone(),
        reps,
        coset_of,
    };
    let name = format!("{}/{}", ring.name(), ring.format_subset(&ideal.members));
    let mut q = FiniteRing::from_arith(name, Arc::new(arith), zero, one);
    if q.order() <= DENSE_QUOTIENT_LIMIT {
        q = q.tabulated();
    }
    let proj = RingMap {
        source: ring.clone(),
        target: q.clone(),
        image,
    };
    Ok((q, proj))
}

/// An explicitly tabulated map between two finite rings.
#[derive(Debug, Clone)]
pub struct RingMap {
    pub source: FiniteRing,
    pub target: FiniteRing,
    pub image: Vec<usize>,
}

impl RingMap {
    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }

    /// Elements mapped to zero.
    pub fn kernel(&self) -> Subset {
        let z = self.target.zero();
        Subset::from_predicate(self.source.order(), |a| self.image[a] == z)
    }
}

/// Why a map failed to be a ring homomorphism (or isomorphism).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapFailure {
    /// Image table length differs from the source order.
    Length,
    OutOfRange(usize),
    Additive(usize, usize),
    Multiplicative(usize, usize),
    One,
    NotInjective(usize, usize),
    NotSurjective(usize),
    /// The map is not constant on a coset it is supposed to factor through.
    NotWellDefined(usize),
}

impl fmt::Display for MapFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapFailure::Length => write!(f, "image table has the wrong length"),
            MapFailure::OutOfRange(a) => write!(f, "image of {a} is outside the target"),
            MapFailure::Additive(a, b) => write!(f, "f({a}+{b}) != f({a})+f({b})"),
            MapFailure::Multiplicative(a, b) => write!(f, "f({a}*{b}) != f({a})*f({b})"),
            MapFailure::One => write!(f, "f(1) != 1"),
            MapFailure::NotInjective(a, b) => write!(f, "f({a}) = f({b})"),
            MapFailure::NotSurjective(t) => write!(f, "target element {t} has no preimage"),
            MapFailure::NotWellDefined(a) => write!(f, "value at {a} depends on the coset representative"),
        }
    }
}

/// Exhaustive check over all pairs of source elements.
pub fn verify_ring_map(f: &RingMap, require_bijective: bool) -> crate::Verdict<MapFailure> {
    use crate::Verdict::{Fails, Holds};
    let (src, tgt) = (&f.source, &f.target);
    if f.image.len() != src.order() {
        return Fails(MapFailure::Length);
    }
    if let Some(a) = src.elements().find(|&a| f.image[a] >= tgt.order()) {
        return Fails(MapFailure::OutOfRange(a));
    }
    if f.apply(src.one()) != tgt.one() {
        return Fails(MapFailure::One);
    }
    for a in src.elements() {
        let fa = f.apply(a);
        for b in src.elements() {
            let fb = f.apply(b);
            if f.apply(src.add(a, b)) != tgt.add(fa, fb) {
                return Fails(MapFailure::Additive(a, b));
            }
            if f.apply(src.mul(a, b)) != tgt.mul(fa, fb) {
                return Fails(MapFailure::Multiplicative(a, b));
            }
        }
    }
    if require_bijective {
        let mut preimage = vec![usize::MAX; tgt.order()];
        for a in src.elements() {
            let t = f.apply(a);
            if preimage[t] != usize::MAX {
                return Fails(MapFailure::NotInjective(preimage[t], a));
            }
            preimage[t] = a;
        }
        if let Some(t) = preimage.iter().position(|&p| p == usize::MAX) {
            return Fails(MapFailure::NotSurjective(t));
        }
    }
    Holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::principal_ideal;
    use crate::Verdict;

    fn zn_raw(n: usize) -> RawRingTables {
        RawRingTables {
            labels: None,
            add: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
            mul: (0..n).map(|a| (0..n).map(|b| (a * b) % n).collect()).collect(),
            zero: 0,
            one: 1 % n,
        }
    }

    #[test]
    fn zn_arithmetic() {
        let z2 = make_zn(2).unwrap();
        assert_eq!(z2.add(1, 1), 0);
        assert_eq!(z2.mul(1, 1), 1);
        let z6 = make_zn(6).unwrap();
        assert_eq!(z6.mul(2, 3), 0);
        assert_eq!(z6.add(4, 5), 3);
        let z8 = make_zn(8).unwrap();
        assert_eq!(z8.mul(4, 6), 0);
        assert_eq!(z8.add(4, 4), 0);
        assert_eq!(z8.label(7), "7");
    }

    #[test]
    fn zn_rejects_zero_ring() {
        assert!(matches!(make_zn(1), Err(AlgebraError::InvalidOrder(1))));
        assert!(matches!(make_zn(0), Err(AlgebraError::InvalidOrder(0))));
    }

    #[test]
    fn validate_accepts_z6_and_every_constructed_zn() {
        assert!(validate_ring(&zn_raw(6)).unwrap().is_ok());
        for n in 2..=9 {
            let raw = RawRingTables::from_ring(&make_zn(n).unwrap());
            assert!(validate_ring(&raw).unwrap().is_ok(), "Z{n}");
        }
    }

    #[test]
    fn validate_reports_tampered_product() {
        let mut raw = zn_raw(6);
        raw.mul[2][3] = 1;
        let report = validate_ring(&raw).unwrap();
        assert!(!report.is_ok());
        assert!(
            report.has("left distributivity")
                || report.has("right distributivity")
                || report.has("multiplicative associativity")
        );
        let v = &report.violations[0];
        assert_eq!(v.witness.len(), 3);
    }

    #[test]
    fn validate_rejects_one_element_ring() {
        let report = validate_ring(&zn_raw(1)).unwrap();
        assert!(report.has("one distinct from zero"));
        assert!(matches!(
            FiniteRing::from_tables("zero", &zn_raw(1)),
            Err(AlgebraError::Invalid { .. })
        ));
    }

    #[test]
    fn validate_rejects_malformed_tables() {
        let mut raw = zn_raw(3);
        raw.add[1].pop();
        assert!(matches!(validate_ring(&raw), Err(AlgebraError::MalformedTable(_))));
        let mut raw = zn_raw(3);
        raw.mul[0][0] = 7;
        assert!(matches!(validate_ring(&raw), Err(AlgebraError::MalformedTable(_))));
    }

    #[test]
    fn quotients_of_cyclic_rings() {
        let z8 = make_zn(8).unwrap();
        let two = principal_ideal(&z8, 2, Side::Two);
        let (q, proj) = quotient_ring(&z8, &two).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj.kernel(), two.members);
        assert!(verify_ring_map(&proj, false).holds());
        // the image is Z2
        assert_eq!(q.add(1, 1), 0);
        assert_eq!(q.mul(1, 1), 1);

        let z4 = make_zn(4).unwrap();
        let (q, _) = quotient_ring(&z4, &principal_ideal(&z4, 2, Side::Two)).unwrap();
        assert_eq!(q.order(), 2);

        let z6 = make_zn(6).unwrap();
        let (q, proj) = quotient_ring(&z6, &principal_ideal(&z6, 0, Side::Two)).unwrap();
        assert_eq!(q.order(), 6);
        assert!(verify_ring_map(&proj, true).holds());
    }

    #[test]
    fn quotient_rejects_non_ideal() {
        let z6 = make_zn(6).unwrap();
        let bogus = Ideal {
            members: Subset::from_members(6, [0, 1]),
            side: Side::Two,
        };
        assert!(matches!(quotient_ring(&z6, &bogus), Err(AlgebraError::NotAnIdeal(_))));
    }

    #[test]
    fn ring_map_checks() {
        let z6 = make_zn(6).unwrap();
        let id = RingMap {
            source: z6.clone(),
            target: z6.clone(),
            image: (0..6).collect(),
        };
        assert_eq!(verify_ring_map(&id, true), Verdict::Holds);

        let z4 = make_zn(4).unwrap();
        let z2 = make_zn(2).unwrap();
        let parity = RingMap {
            source: z4.clone(),
            target: z2,
            image: vec![0, 1, 0, 1],
        };
        assert!(verify_ring_map(&parity, false).holds());
        assert!(matches!(
            verify_ring_map(&parity, true),
            Verdict::Fails(MapFailure::NotInjective(0, 2))
        ));

        // x -> 3x swaps 1 and 3 but sends 1 to 3 != 1, so it is additive
        // but not unital; the exhaustive check catches it.
        let swap = RingMap {
            source: z4.clone(),
            target: z4.clone(),
            image: vec![0, 3, 2, 1],
        };
        assert_eq!(verify_ring_map(&swap, true), Verdict::Fails(MapFailure::One));
        let brute_mul_ok = (0..4).all(|a| (0..4).all(|b| swap.image[(a * b) % 4] == (swap.image[a] * swap.image[b]) % 4));
        assert!(!brute_mul_ok);
    }

    #[test]
    fn zero_divisors_and_centre() {
        let z6 = make_zn(6).unwrap();
        let zd: Vec<usize> = z6.elements().filter(|&s| z6.is_zero_divisor(s)).collect();
        assert_eq!(zd, vec![0, 2, 3, 4]);
        assert_eq!(z6.commutes_with_all(5), None);
    }
}
