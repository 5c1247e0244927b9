//! Spec-file parsing, the `verify`, `dualize` and `chain` pipelines, and
//! report emission for the `fmanifold` command.

pub mod report;
pub mod runner;
pub mod spec_file;

pub use report::{emit_report, Format, RunReport};
pub use runner::{run_chain, run_dualize, run_verify, RunError, RunOptions};
pub use spec_file::{parse_spec, SpecError, SpecFile};
