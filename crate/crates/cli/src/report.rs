//! Run reports and their text and machine renderings.

use serde::Serialize;

use fmanifold::poly::format_rational;
use fmanifold::{CheckReport, Witness};

use crate::spec_file::RawTerm;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub condition: String,
    pub indices: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    pub residual: String,
}

impl From<&Witness> for WitnessRecord {
    fn from(w: &Witness) -> Self {
        WitnessRecord {
            condition: w.condition.clone(),
            indices: w.indices.clone(),
            point: w.point.as_ref().map(|p| p.iter().map(format_rational).collect()),
            residual: w.residual.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub pass: bool,
    pub skipped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl From<&CheckReport> for CheckRecord {
    fn from(r: &CheckReport) -> Self {
        CheckRecord {
            name: r.name.clone(),
            pass: r.pass,
            skipped: r.skipped,
            witness: r.witness.as_ref().map(WitnessRecord::from),
            notes: r.notes.clone(),
        }
    }
}

/// A rational function as a numerator and denominator term list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FractionRecord {
    pub num: Vec<RawTerm>,
    pub den: Vec<RawTerm>,
}

/// Structure constants `star[i][j][k]` of the dual product and the
/// intersection form `g^{ij}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualRecord {
    pub star: Vec<Vec<Vec<FractionRecord>>>,
    pub intersection_form: Vec<Vec<Vec<RawTerm>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub version: String,
    pub command: String,
    pub input_digest: String,
    pub seed: u64,
    pub points: usize,
    pub field_degree: u32,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualRecord>,
}

impl RunReport {
    pub fn new(command: &str, input_digest: String, seed: u64, points: usize, field_degree: u32, checks: &[CheckReport]) -> Self {
        RunReport {
            version: VERSION.to_string(),
            command: command.to_string(),
            input_digest,
            seed,
            points,
            field_degree,
            checks: checks.iter().map(CheckRecord::from).collect(),
            pass: checks.iter().all(CheckReport::ok),
            dual: None,
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

pub fn emit_report(report: &RunReport, format: Format) -> Vec<u8> {
    match format {
        Format::Machine => {
            let mut s = serde_json::to_string_pretty(report).expect("plain data serializes");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => text(report).into_bytes(),
    }
}

fn text(report: &RunReport) -> String {
    let mut out = format!(
        "fmanifold {} {}\ninput sha256 {}\nseed {} points {} field degree {}\n\n",
        report.version, report.command, report.input_digest, report.seed, report.points, report.field_degree
    );
    for c in &report.checks {
        let status = match (c.skipped, c.pass) {
            (true, _) => "SKIP",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        out.push_str(&format!("{status} {}\n", c.name));
        if let Some(w) = &c.witness {
            out.push_str(&format!("    witness {}", w.condition));
            if !w.indices.is_empty() {
                let idx: Vec<String> = w.indices.iter().map(ToString::to_string).collect();
                out.push_str(&format!(" at ({})", idx.join(",")));
            }
            if let Some(p) = &w.point {
                out.push_str(&format!(" point [{}]", p.join(", ")));
            }
            out.push_str(&format!(": {}\n", w.residual));
        }
        for n in &c.notes {
            out.push_str(&format!("    note {n}\n"));
        }
    }
    let failed = report.checks.iter().filter(|c| !c.pass && !c.skipped).count();
    out.push_str(&format!(
        "\n{}: {} checks, {} failed\n",
        if report.pass { "PASS" } else { "FAIL" },
        report.checks.len(),
        failed
    ));
    if let Some(d) = &report.dual {
        out.push_str("\ndual structure (machine format carries the full term lists)\n");
        out.push_str(&format!("    star constants: {}^3 fractions\n", d.star.len()));
    }
    out
}
