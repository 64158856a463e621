//! Violation reports shared by every `check_*` suite. A check never
//! panics on a broken identity; it records the law id, the witness input
//! and both sides, so the CLI can cite exactly which equation failed.

use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Stable identity id, e.g. `mp-L-3`, `structure-identity`, `tau-order`.
    pub law: String,
    /// The inputs on which the identity failed, in display form.
    pub witness: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Report { violations: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: &str, witness: String, lhs: String, rhs: String) {
        self.violations.push(Violation { law: String::from(law), witness, lhs, rhs });
    }

    pub fn merge(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    /// Records a failed comparison when lhs ≠ rhs; returns whether it held.
    pub fn check<T: PartialEq + core::fmt::Display>(
        &mut self,
        law: &str,
        witness: impl FnOnce() -> String,
        lhs: &T,
        rhs: &T,
    ) -> bool {
        if lhs == rhs {
            true
        } else {
            self.push(law, witness(), alloc::format!("{lhs}"), alloc::format!("{rhs}"));
            false
        }
    }
}
