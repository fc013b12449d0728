//! Axiom-violation reports shared by ring, bimodule and context validation.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    /// Indices of the offending elements, in the order the axiom names them.
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    /// Records a violation once per axiom; later witnesses for the same axiom are dropped.
    pub(crate) fn record(&mut self, axiom: &str, witness: &[usize]) {
        if !self.has(axiom) {
            self.violations.push(Violation {
                axiom: axiom.to_string(),
                witness: witness.to_vec(),
            });
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return writeln!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "  violated {} at {:?}", v.axiom, v.witness)?;
        }
        Ok(())
    }
}
