//! Named check outcomes with exact counterexamples.

use std::fmt;

use crate::poly::{format_rational, Rational};

/// Exact counterexample attached to a failed check.
///
/// `indices` are one-based, matching the coordinate labels `t1..tn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Which sub-condition failed, e.g. `"(ii)"` or `"jacobi"`.
    pub condition: String,
    pub indices: Vec<usize>,
    pub point: Option<Vec<Rational>>,
    /// The nonzero difference between the two sides, rendered exactly.
    pub residual: String,
}

impl Witness {
    pub fn new(condition: impl Into<String>, indices: Vec<usize>, residual: impl fmt::Display) -> Self {
        Witness { condition: condition.into(), indices, point: None, residual: residual.to_string() }
    }

    pub fn at(mut self, point: &[Rational]) -> Self {
        self.point = Some(point.to_vec());
        self
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.condition)?;
        if !self.indices.is_empty() {
            let idx: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
            write!(f, " at ({})", idx.join(","))?;
        }
        if let Some(p) = &self.point {
            let p: Vec<String> = p.iter().map(format_rational).collect();
            write!(f, " point [{}]", p.join(", "))?;
        }
        write!(f, ": residual {}", self.residual)
    }
}

/// Outcome of one named check.
///
/// A witness is present exactly when the check ran and failed. Skipped checks
/// carry the reason in `notes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub skipped: bool,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn passed(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), pass: true, skipped: false, witness: None, notes: Vec::new() }
    }

    pub fn failed(name: impl Into<String>, witness: Witness) -> Self {
        CheckReport { name: name.into(), pass: false, skipped: false, witness: Some(witness), notes: Vec::new() }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            pass: false,
            skipped: true,
            witness: None,
            notes: vec![reason.into()],
        }
    }

    /// `passed` or `failed` depending on whether a witness was found.
    pub fn from_witness(name: impl Into<String>, witness: Option<Witness>) -> Self {
        match witness {
            None => Self::passed(name),
            Some(w) => Self::failed(name, w),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Merges sub-reports into one: passes iff all pass, carrying the first
    /// failure's witness.
    pub fn combine(name: impl Into<String>, parts: &[CheckReport]) -> Self {
        let name = name.into();
        match parts.iter().find(|r| !r.pass && !r.skipped) {
            Some(first) => {
                let mut w = first.witness.clone().expect("failed report carries a witness");
                if !w.condition.starts_with(&first.name) {
                    w.condition = format!("{}: {}", first.name, w.condition);
                }
                CheckReport::failed(name, w)
            }
            None => CheckReport::passed(name),
        }
    }

    /// True unless the check ran and failed.
    pub fn ok(&self) -> bool {
        self.pass || self.skipped
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.skipped, self.pass) {
            (true, _) => "SKIP",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        write!(f, "{status} {}", self.name)?;
        if let Some(w) = &self.witness {
            write!(f, " -- {w}")?;
        }
        for n in &self.notes {
            write!(f, "\n     note: {n}")?;
        }
        Ok(())
    }
}
