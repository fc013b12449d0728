//! Ideal lattices of finite rings, prime and semiprime ideals, and the
//! prime radical.
//!
//! Additive conditions quantified over the whole ring, such as `aRb ⊆ I`,
//! are evaluated on an additive generating set of `R` only: `I` is an
//! additive subgroup and `a(Σ g)b = Σ agb`.

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::finring::FiniteRing;
use crate::span::{additive_generators, additive_span, close_under, enumerate_lattice, is_subgroup};
use crate::subset::Subset;
use crate::Verdict;

/// Default bound on the number of lattice members any enumeration may produce.
pub const DEFAULT_LATTICE_CAP: usize = 20_000;

/// Which multiplications a subset must absorb. For modules `Two` means a
/// sub-bimodule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
    Two,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Two => "two-sided",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    pub members: Subset,
    pub side: Side,
}

impl Ideal {
    /// Verifies closure before wrapping.
    pub fn new(ring: &FiniteRing, members: Subset, side: Side) -> Result<Self> {
        if members.universe() != ring.order() {
            return Err(AlgebraError::Mismatch(format!(
                "subset of a {}-element carrier used in {}",
                members.universe(),
                ring.name()
            )));
        }
        check_ideal(ring, &members, side).map_err(AlgebraError::NotAnIdeal)?;
        Ok(Self { members, side })
    }

    pub fn zero(ring: &FiniteRing) -> Self {
        Self {
            members: Subset::singleton(ring.order(), ring.zero()),
            side: Side::Two,
        }
    }

    pub fn whole(ring: &FiniteRing) -> Self {
        Self {
            members: Subset::full(ring.order()),
            side: Side::Two,
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_proper(&self) -> bool {
        !self.members.is_full()
    }
}

/// `Err` carries a description of the first closure failure found.
pub fn check_ideal(ring: &FiniteRing, members: &Subset, side: Side) -> Result<(), String> {
    if !members.contains(ring.zero()) {
        return Err("does not contain zero".into());
    }
    if !is_subgroup(ring, members) {
        return Err("not closed under addition".into());
    }
    let gens = additive_generators(ring, members);
    for &x in &gens {
        for &g in ring.additive_gens() {
            if matches!(side, Side::Left | Side::Two) && !members.contains(ring.mul(g, x)) {
                return Err(format!("{} * {} escapes", ring.label(g), ring.label(x)));
            }
            if matches!(side, Side::Right | Side::Two) && !members.contains(ring.mul(x, g)) {
                return Err(format!("{} * {} escapes", ring.label(x), ring.label(g)));
            }
        }
    }
    Ok(())
}

/// Smallest ideal of the given side generated by `seeds`.
pub fn generated_ideal(ring: &FiniteRing, seeds: impl IntoIterator<Item = usize>, side: Side) -> Ideal {
    let gens = ring.additive_gens();
    let mut ops: Vec<Box<dyn Fn(usize) -> usize + '_>> = Vec::new();
    for &g in gens {
        if matches!(side, Side::Left | Side::Two) {
            ops.push(Box::new(move |x| ring.mul(g, x)));
        }
        if matches!(side, Side::Right | Side::Two) {
            ops.push(Box::new(move |x| ring.mul(x, g)));
        }
    }
    Ideal {
        members: close_under(ring, seeds, &ops),
        side,
    }
}

pub fn principal_ideal(ring: &FiniteRing, a: usize, side: Side) -> Ideal {
    generated_ideal(ring, [a], side)
}

pub fn enumerate_ideals(ring: &FiniteRing, side: Side, cap: usize) -> Result<Vec<Ideal>> {
    let what = format!("{side} ideal lattice of {}", ring.name());
    let lattice = enumerate_lattice(ring, |x| principal_ideal(ring, x, side).members, cap, &what)?;
    Ok(lattice.into_iter().map(|members| Ideal { members, side }).collect())
}

/// Elementwise primeness of an additive subgroup `u`:
/// `aRb ⊆ u` implies `a ∈ u` or `b ∈ u`. Returns the first witness `(a, b)`
/// in index order. Works for one-sided ideals too.
pub fn elementwise_prime(ring: &FiniteRing, u: &Subset) -> Verdict<(usize, usize)> {
    let gens = ring.additive_gens();
    let outside: Vec<usize> = ring.elements().filter(|&x| !u.contains(x)).collect();
    let mut ag = Vec::with_capacity(gens.len());
    for &a in &outside {
        ag.clear();
        ag.extend(gens.iter().map(|&g| ring.mul(a, g)));
        for &b in &outside {
            if ag.iter().all(|&x| u.contains(ring.mul(x, b))) {
                return Verdict::Fails((a, b));
            }
        }
    }
    Verdict::Holds
}

/// Elementwise semiprimeness: `aRa ⊆ u` implies `a ∈ u`.
pub fn elementwise_semiprime(ring: &FiniteRing, u: &Subset) -> Verdict<usize> {
    let gens = ring.additive_gens();
    ring.elements()
        .filter(|&a| !u.contains(a))
        .find(|&a| gens.iter().all(|&g| u.contains(ring.mul(ring.mul(a, g), a))))
        .map_or(Verdict::Holds, Verdict::Fails)
}

fn require_proper_two_sided(ring: &FiniteRing, ideal: &Ideal) -> Result<()> {
    if ideal.side != Side::Two {
        return Err(AlgebraError::NotAnIdeal(format!(
            "expected a two-sided ideal, got a {} ideal",
            ideal.side
        )));
    }
    if ideal.members.universe() != ring.order() {
        return Err(AlgebraError::Mismatch("ideal belongs to a ring of another order".into()));
    }
    if !ideal.is_proper() {
        return Err(AlgebraError::NotProper("ideals"));
    }
    Ok(())
}

pub fn is_prime_ideal(ring: &FiniteRing, ideal: &Ideal) -> Result<Verdict<(usize, usize)>> {
    require_proper_two_sided(ring, ideal)?;
    Ok(elementwise_prime(ring, &ideal.members))
}

pub fn is_semiprime_ideal(ring: &FiniteRing, ideal: &Ideal) -> Result<Verdict<usize>> {
    require_proper_two_sided(ring, ideal)?;
    Ok(elementwise_semiprime(ring, &ideal.members))
}

/// `AB`: the additive span of all products `ab`.
pub fn ideal_product(ring: &FiniteRing, a: &Subset, b: &Subset) -> Subset {
    let ga = additive_generators(ring, a);
    let gb = additive_generators(ring, b);
    additive_span(
        ring,
        ga.iter().flat_map(|&x| gb.iter().map(move |&y| ring.mul(x, y))),
    )
}

/// Whether every product `ab` (a ∈ A, b ∈ B) lies in the additive subgroup `c`.
pub fn product_within(ring: &FiniteRing, a: &Subset, b: &Subset, c: &Subset) -> bool {
    let gb = additive_generators(ring, b);
    additive_generators(ring, a)
        .iter()
        .all(|&x| gb.iter().all(|&y| c.contains(ring.mul(x, y))))
}

/// Ideal-pair form of primeness: for all ideals `A, B` in `lattice`,
/// `AB ⊆ I` implies `A ⊆ I` or `B ⊆ I`.
pub fn is_prime_ideal_pairwise(ring: &FiniteRing, ideal: &Ideal, lattice: &[Ideal]) -> Result<bool> {
    require_proper_two_sided(ring, ideal)?;
    let i = &ideal.members;
    let outside: Vec<&Ideal> = lattice.iter().filter(|a| !a.members.is_subset(i)).collect();
    Ok(outside
        .iter()
        .all(|a| outside.iter().all(|b| !product_within(ring, &a.members, &b.members, i))))
}

/// Ideal form of semiprimeness: `A² ⊆ I` implies `A ⊆ I`.
pub fn is_semiprime_ideal_pairwise(ring: &FiniteRing, ideal: &Ideal, lattice: &[Ideal]) -> Result<bool> {
    require_proper_two_sided(ring, ideal)?;
    let i = &ideal.members;
    Ok(lattice
        .iter()
        .filter(|a| !a.members.is_subset(i))
        .all(|a| !product_within(ring, &a.members, &a.members, i)))
}

/// Whether `A^n = 0` for some `n ≤ |R|`.
pub fn is_nilpotent(ring: &FiniteRing, a: &Subset) -> bool {
    let zero = Subset::singleton(ring.order(), ring.zero());
    let mut power = a.clone();
    for _ in 0..ring.order() {
        if power == zero {
            return true;
        }
        let next = ideal_product(ring, &power, a);
        if next == power {
            return false;
        }
        power = next;
    }
    power == zero
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeRadical {
    pub ideal: Ideal,
    pub primes: Vec<Ideal>,
    /// No proper prime ideal exists; the intersection over the empty family is the ring.
    pub degenerate: bool,
}

/// The prime ideals among the given two-sided lattice.
pub fn prime_ideals(ring: &FiniteRing, lattice: &[Ideal]) -> Vec<Ideal> {
    lattice
        .iter()
        .filter(|i| i.side == Side::Two && i.is_proper() && elementwise_prime(ring, &i.members).holds())
        .cloned()
        .collect()
}

/// Intersection of all prime ideals.
pub fn prime_radical(ring: &FiniteRing, cap: usize) -> Result<PrimeRadical> {
    let lattice = enumerate_ideals(ring, Side::Two, cap)?;
    Ok(radical_from_lattice(ring, &lattice))
}

pub fn radical_from_lattice(ring: &FiniteRing, lattice: &[Ideal]) -> PrimeRadical {
    let primes = prime_ideals(ring, lattice);
    let members = primes
        .iter()
        .fold(Subset::full(ring.order()), |acc, p| acc.intersection(&p.members));
    PrimeRadical {
        ideal: Ideal {
            members,
            side: Side::Two,
        },
        degenerate: primes.is_empty(),
        primes,
    }
}

pub fn is_prime_ring(ring: &FiniteRing) -> bool {
    elementwise_prime(ring, &Ideal::zero(ring).members).holds()
}

/// Elementwise semiprimeness of `{0}`, cross-checked against `P(R) = 0`.
pub fn is_semiprime_ring(ring: &FiniteRing, cap: usize) -> Result<bool> {
    let elementwise = elementwise_semiprime(ring, &Ideal::zero(ring).members).holds();
    let radical = prime_radical(ring, cap)?;
    let radical_zero = radical.ideal.members.count() == 1;
    if elementwise != radical_zero {
        return Err(AlgebraError::Inconsistent(format!(
            "{}: elementwise semiprime = {elementwise} but P(R) = 0 is {radical_zero}",
            ring.name()
        )));
    }
    Ok(elementwise)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{make_zn, quotient_ring};

    fn z(n: usize) -> FiniteRing {
        make_zn(n).unwrap()
    }

    fn members(ring: &FiniteRing, xs: &[usize]) -> Subset {
        Subset::from_members(ring.order(), xs.iter().copied())
    }

    /// Brute force over all subsets containing zero.
    fn brute_force_ideals(ring: &FiniteRing, side: Side) -> Vec<Subset> {
        let n = ring.order();
        let mut out = Vec::new();
        for mask in 0u64..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let s = Subset::from_predicate(n, |x| mask >> x & 1 == 1);
            let closed = s.iter().all(|a| {
                s.iter().all(|b| s.contains(ring.add(a, b)))
                    && ring.elements().all(|r| {
                        (side == Side::Right || s.contains(ring.mul(r, a)))
                            && (side == Side::Left || s.contains(ring.mul(a, r)))
                    })
            });
            if closed {
                out.push(s);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn principal_ideals_in_z6() {
        let r = z(6);
        assert_eq!(principal_ideal(&r, 2, Side::Two).members.members(), vec![0, 2, 4]);
        assert_eq!(principal_ideal(&r, 0, Side::Two).members.members(), vec![0]);
        assert!(principal_ideal(&r, 1, Side::Two).members.is_full());
    }

    #[test]
    fn ideal_counts_match_brute_force() {
        let r6 = z(6);
        let ideals = enumerate_ideals(&r6, Side::Two, DEFAULT_LATTICE_CAP).unwrap();
        let got: Vec<Subset> = ideals.iter().map(|i| i.members.clone()).collect();
        assert_eq!(got, brute_force_ideals(&r6, Side::Two));
        assert_eq!(got.len(), 4);
        assert_eq!(got[1].members(), vec![0, 3]);
        assert_eq!(got[2].members(), vec![0, 2, 4]);

        assert_eq!(enumerate_ideals(&z(4), Side::Two, 100).unwrap().len(), 3);
        let z5 = enumerate_ideals(&z(5), Side::Two, 100).unwrap();
        assert_eq!(z5.len(), 2);
        for n in 2..=12 {
            let r = z(n);
            let got: Vec<Subset> = enumerate_ideals(&r, Side::Two, 100)
                .unwrap()
                .into_iter()
                .map(|i| i.members)
                .collect();
            assert_eq!(got, brute_force_ideals(&r, Side::Two), "Z{n}");
        }
    }

    #[test]
    fn enumeration_cap_error() {
        let err = enumerate_ideals(&z(12), Side::Two, 3).unwrap_err();
        assert!(matches!(err, AlgebraError::Capacity { cap: 3, .. }));
    }

    #[test]
    fn prime_ideal_examples() {
        let r6 = z(6);
        let i2 = Ideal::new(&r6, members(&r6, &[0, 2, 4]), Side::Two).unwrap();
        assert!(is_prime_ideal(&r6, &i2).unwrap().holds());
        assert_eq!(is_prime_ideal(&r6, &Ideal::zero(&r6)).unwrap(), Verdict::Fails((2, 3)));

        let r4 = z(4);
        assert!(!is_prime_ideal(&r4, &Ideal::zero(&r4)).unwrap().holds());
        assert!(matches!(
            is_prime_ideal(&r4, &Ideal::whole(&r4)),
            Err(AlgebraError::NotProper(_))
        ));
    }

    #[test]
    fn semiprime_ideal_examples() {
        let r4 = z(4);
        assert_eq!(is_semiprime_ideal(&r4, &Ideal::zero(&r4)).unwrap(), Verdict::Fails(2));
        let r6 = z(6);
        assert!(is_semiprime_ideal(&r6, &Ideal::zero(&r6)).unwrap().holds());
        let r8 = z(8);
        let four = Ideal::new(&r8, members(&r8, &[0, 4]), Side::Two).unwrap();
        assert_eq!(is_semiprime_ideal(&r8, &four).unwrap(), Verdict::Fails(2));
        assert!(matches!(
            is_semiprime_ideal(&r8, &Ideal::whole(&r8)),
            Err(AlgebraError::NotProper(_))
        ));
    }

    #[test]
    fn radicals_of_small_cyclic_rings() {
        let p4 = prime_radical(&z(4), 100).unwrap();
        assert_eq!(p4.ideal.members.members(), vec![0, 2]);
        assert!(!p4.degenerate);
        assert_eq!(prime_radical(&z(6), 100).unwrap().ideal.members.members(), vec![0]);
        assert_eq!(prime_radical(&z(5), 100).unwrap().ideal.members.members(), vec![0]);
        assert_eq!(prime_radical(&z(12), 100).unwrap().ideal.members.members(), vec![0, 6]);
    }

    #[test]
    fn ring_primeness() {
        assert!(is_prime_ring(&z(5)));
        assert!(is_semiprime_ring(&z(5), 100).unwrap());
        assert!(!is_prime_ring(&z(6)));
        assert!(is_semiprime_ring(&z(6), 100).unwrap());
        assert!(!is_prime_ring(&z(4)));
        assert!(!is_semiprime_ring(&z(4), 100).unwrap());
    }

    #[test]
    fn ideal_laws_on_cyclic_rings() {
        for n in 2..=16 {
            let r = z(n);
            let lattice = enumerate_ideals(&r, Side::Two, 100).unwrap();
            let radical = radical_from_lattice(&r, &lattice);
            for i in lattice.iter().filter(|i| i.is_proper()) {
                let prime = is_prime_ideal(&r, i).unwrap().holds();
                let semiprime = is_semiprime_ideal(&r, i).unwrap().holds();
                assert_eq!(prime, is_prime_ideal_pairwise(&r, i, &lattice).unwrap(), "Z{n}");
                assert_eq!(semiprime, is_semiprime_ideal_pairwise(&r, i, &lattice).unwrap(), "Z{n}");
                assert!(!prime || semiprime);
            }
            for a in &lattice {
                if is_nilpotent(&r, &a.members) {
                    assert!(a.members.is_subset(&radical.ideal.members));
                }
            }
            if radical.ideal.is_proper() {
                let (q, _) = quotient_ring(&r, &radical.ideal).unwrap();
                assert!(is_semiprime_ring(&q, 100).unwrap(), "Z{n}/P");
            }
        }
    }

    #[test]
    fn new_rejects_non_ideals() {
        let r = z(6);
        assert!(Ideal::new(&r, members(&r, &[0, 1]), Side::Two).is_err());
        assert!(Ideal::new(&r, members(&r, &[2, 4]), Side::Two).is_err());
    }
}
