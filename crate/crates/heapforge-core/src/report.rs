//! Structured verification reports.
//!
//! Every verifier returns one line per axiom with a pass flag and, on
//! failure, the first witness coordinates, so front ends can render text or
//! JSON without re-deriving anything. Axiom order is fixed by the verifier.

use serde::{Deserialize, Serialize};
use std::fmt;

/// One checked axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub pass: bool,
    /// First witness coordinates on failure (tuple indices or matrix
    /// coordinates, depending on the axiom), `None` on pass.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub structure: String,
    pub checks: Vec<AxiomCheck>,
}

impl VerificationReport {
    pub fn new(structure: impl Into<String>) -> VerificationReport {
        VerificationReport {
            structure: structure.into(),
            checks: Vec::new(),
        }
    }

    pub fn record(&mut self, axiom: impl Into<String>, witness: Option<Vec<usize>>) {
        self.checks.push(AxiomCheck {
            axiom: axiom.into(),
            pass: witness.is_none(),
            witness,
        });
    }

    pub fn record_pass(&mut self, axiom: impl Into<String>) {
        self.record(axiom, None);
    }

    pub fn record_fail(&mut self, axiom: impl Into<String>, witness: Vec<usize>) {
        self.record(axiom, Some(witness));
    }

    /// Overall pass flag: true iff every axiom line passes.
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// The failing axiom ids, in check order.
    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.axiom.as_str())
            .collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.structure,
            if self.pass() { "PASS" } else { "FAIL" }
        )?;
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "  {:<40} pass", c.axiom)?,
                Some(w) => writeln!(f, "  {:<40} FAIL at {:?}", c.axiom, w)?,
            }
        }
        Ok(())
    }
}
