//! Report-style verification results.
//!
//! Verifiers in this crate never panic on bad input; they return a
//! [`VerificationReport`] listing every violation they found. An empty report
//! means the checked object satisfies the property.

use serde::{Deserialize, Serialize};
use std::fmt;

/// One violated condition, with the indices it involves (rows, bases,
/// vertices, ... — whatever the verifier works over).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Human-readable description of what failed.
    pub what: String,
    /// Indices of the objects involved in the violation.
    pub items: Vec<usize>,
}

/// Outcome of a report-style verifier.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    /// What was verified, e.g. `"GH(3,2) matrix"`.
    pub subject: String,
    /// All violations found; empty iff the check passed.
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport {
            subject: subject.into(),
            violations: Vec::new(),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, what: impl Into<String>, items: Vec<usize>) {
        self.violations.push(Violation {
            what: what.into(),
            items,
        });
    }

    /// True if some violation involves the given index.
    pub fn involves(&self, item: usize) -> bool {
        self.violations.iter().any(|v| v.items.contains(&item))
    }

    /// Merge another report's violations into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_pass() {
            write!(f, "{}: pass", self.subject)
        } else {
            writeln!(f, "{}: FAIL ({} violations)", self.subject, self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  - {} {:?}", v.what, v.items)?;
            }
            Ok(())
        }
    }
}
