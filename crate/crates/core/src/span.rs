//! Additive spans, closures under additive operators, and lattice
//! enumeration by joining cyclic members until fixpoint.
//!
//! Everything here works on any finite abelian group presented by index
//! arithmetic. A subgroup grows by coset expansion: adjoining `y` to `H`
//! yields the union of `H + k*y` for `k = 0, 1, ...` until `k*y` lands in
//! `H`, which costs time linear in the new subgroup's size.

use std::collections::{HashSet, VecDeque};

use crate::error::{AlgebraError, Result};
use crate::subset::Subset;

/// A finite abelian group on the carrier `0..size()`.
pub trait AdditiveGroup {
    fn size(&self) -> usize;
    fn zero(&self) -> usize;
    fn add(&self, a: usize, b: usize) -> usize;
}

/// An additive subgroup under construction.
pub struct SubgroupBuilder<'g, G: ?Sized> {
    group: &'g G,
    members: Subset,
    elems: Vec<usize>,
}

impl<'g, G: AdditiveGroup + ?Sized> SubgroupBuilder<'g, G> {
    pub fn new(group: &'g G) -> Self {
        let zero = group.zero();
        Self {
            group,
            members: Subset::singleton(group.size(), zero),
            elems: vec![zero],
        }
    }

    /// Starts from a set the caller knows to be a subgroup.
    pub fn from_subgroup(group: &'g G, subgroup: &Subset) -> Self {
        Self {
            group,
            members: subgroup.clone(),
            elems: subgroup.members(),
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Adjoins `y`; returns false when `y` was already a member.
    pub fn insert(&mut self, y: usize) -> bool {
        if self.members.contains(y) {
            return false;
        }
        let base = self.elems.len();
        let mut shift = y;
        while !self.members.contains(shift) {
            for i in 0..base {
                let z = self.group.add(self.elems[i], shift);
                self.members.insert(z);
                self.elems.push(z);
            }
            shift = self.group.add(shift, y);
        }
        true
    }

    pub fn into_subset(self) -> Subset {
        self.members
    }
}

/// Additive subgroup generated by `gens`.
pub fn additive_span<G: AdditiveGroup + ?Sized>(
    group: &G,
    gens: impl IntoIterator<Item = usize>,
) -> Subset {
    let mut b = SubgroupBuilder::new(group);
    for g in gens {
        b.insert(g);
    }
    b.into_subset()
}

/// A generating set of the subgroup spanned by `set`, chosen greedily in
/// index order. Each chosen generator at least doubles the running span,
/// so the result has at most log2 |span| elements.
pub fn additive_generators<G: AdditiveGroup + ?Sized>(group: &G, set: &Subset) -> Vec<usize> {
    let mut b = SubgroupBuilder::new(group);
    let mut gens = Vec::new();
    for x in set.iter() {
        if b.insert(x) {
            gens.push(x);
        }
    }
    gens
}

/// True when `set` contains zero and equals its own additive span.
pub fn is_subgroup<G: AdditiveGroup + ?Sized>(group: &G, set: &Subset) -> bool {
    set.contains(group.zero()) && additive_span(group, set.iter()).count() == set.count()
}

/// Smallest subgroup containing `seeds` and closed under every operator in
/// `ops`. Each operator must be additive (`op(x + y) = op(x) + op(y)`);
/// then only the elements that actually enlarge the span need processing.
pub fn close_under<G, F>(group: &G, seeds: impl IntoIterator<Item = usize>, ops: &[F]) -> Subset
where
    G: AdditiveGroup + ?Sized,
    F: Fn(usize) -> usize,
{
    let mut b = SubgroupBuilder::new(group);
    let mut queue = VecDeque::new();
    for s in seeds {
        if b.insert(s) {
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        for op in ops {
            let y = op(x);
            if b.insert(y) {
                queue.push_back(y);
            }
        }
    }
    b.into_subset()
}

/// Join of two subgroups.
pub fn join<G: AdditiveGroup + ?Sized>(group: &G, a: &Subset, b_gens: &[usize]) -> Subset {
    let mut b = SubgroupBuilder::from_subgroup(group, a);
    for &g in b_gens {
        b.insert(g);
    }
    b.into_subset()
}

/// Enumerates every subgroup closed under the operators that define
/// `cyclic`, where `cyclic(x)` is the smallest such subgroup containing `x`.
///
/// Every member of the lattice is the join of the cyclic members generated
/// by its elements, so folding each distinct cyclic member into the running
/// lattice (keeping old entries and adding their joins with it) reaches the
/// complete lattice. The result is sorted canonically.
pub fn enumerate_lattice<G, C>(group: &G, cyclic: C, cap: usize, what: &str) -> Result<Vec<Subset>>
where
    G: AdditiveGroup + ?Sized,
    C: Fn(usize) -> Subset,
{
    let mut cyclics: Vec<Subset> = {
        let mut seen = HashSet::new();
        (0..group.size())
            .map(&cyclic)
            .filter(|c| seen.insert(c.clone()))
            .collect()
    };
    cyclics.sort();

    let zero = Subset::singleton(group.size(), group.zero());
    let mut lattice = vec![zero.clone()];
    let mut seen: HashSet<Subset> = HashSet::from([zero]);

    for c in &cyclics {
        let gens = additive_generators(group, c);
        let snapshot = lattice.len();
        for i in 0..snapshot {
            if c.is_subset(&lattice[i]) {
                continue;
            }
            let j = join(group, &lattice[i], &gens);
            if seen.insert(j.clone()) {
                lattice.push(j);
                if lattice.len() > cap {
                    return Err(AlgebraError::Capacity {
                        what: what.to_string(),
                        cap,
                    });
                }
            }
        }
    }
    lattice.sort();
    Ok(lattice)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Cyclic(usize);

    impl AdditiveGroup for Cyclic {
        fn size(&self) -> usize {
            self.0
        }
        fn zero(&self) -> usize {
            0
        }
        fn add(&self, a: usize, b: usize) -> usize {
            (a + b) % self.0
        }
    }

    /// Klein four-group as bit pairs under xor.
    struct Klein;

    impl AdditiveGroup for Klein {
        fn size(&self) -> usize {
            4
        }
        fn zero(&self) -> usize {
            0
        }
        fn add(&self, a: usize, b: usize) -> usize {
            a ^ b
        }
    }

    #[test]
    fn span_of_two_in_z12_is_even_residues() {
        let s = additive_span(&Cyclic(12), [8]);
        assert_eq!(s.members(), vec![0, 4, 8]);
        let s = additive_span(&Cyclic(12), [8, 6]);
        assert_eq!(s.members(), vec![0, 2, 4, 6, 8, 10]);
    }

    #[test]
    fn subgroups_of_z12_and_klein() {
        let g = Cyclic(12);
        let all = enumerate_lattice(&g, |x| additive_span(&g, [x]), 100, "subgroups").unwrap();
        // one subgroup per divisor of 12
        assert_eq!(all.len(), 6);
        let all = enumerate_lattice(&Klein, |x| additive_span(&Klein, [x]), 100, "subgroups").unwrap();
        assert_eq!(all.len(), 5);
    }

    #[test]
    fn lattice_cap_is_enforced() {
        let err = enumerate_lattice(&Klein, |x| additive_span(&Klein, [x]), 3, "subgroups");
        assert!(matches!(err, Err(AlgebraError::Capacity { cap: 3, .. })));
    }

    #[test]
    fn generators_are_independent_and_spanning() {
        let g = Cyclic(12);
        let set = Subset::from_members(12, [0, 3, 6, 9]);
        let gens = additive_generators(&g, &set);
        assert_eq!(gens, vec![3]);
        assert!(is_subgroup(&g, &set));
        assert!(!is_subgroup(&g, &Subset::from_members(12, [0, 3])));
    }
}
