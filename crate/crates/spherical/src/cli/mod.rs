//! Library side of the `sph` command: the pair-spec language, reports and commands.

pub mod report;
pub mod run;
pub mod spec;

pub use report::{CaseReport, Report, Status};
pub use spec::{parse_family, parse_spec, parse_terms, PairSpec, SpecError};
