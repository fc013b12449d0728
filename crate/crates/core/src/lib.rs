//! Finite rings, bimodules and Morita contexts, with exhaustive decision
//! procedures for prime and semiprime ideals and the prime radical.
//!
//! Every structure lives on dense indices `0..n`, and every predicate is
//! decided by exhaustive evaluation on the finite carrier, returning a
//! witness whenever it fails.

pub mod checks;
pub mod error;
pub mod finring;
pub mod ideals;
pub mod modstruct;
pub mod morita;
pub mod span;
pub mod subset;
pub mod validate;

pub use error::{AlgebraError, Result};
pub use finring::{make_zn, quotient_ring, verify_ring_map, FiniteRing, RingMap};
pub use ideals::{Ideal, Side};
pub use subset::Subset;
pub use validate::{ValidationReport, Violation};

/// Outcome of a universally quantified check: either it holds, or here is
/// the first counterexample found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}
