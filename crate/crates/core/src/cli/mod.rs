//! File format, instance generation, reports and the verification battery
//! behind the `hyperspectra` binary.

pub mod analyze;
pub mod gen;
pub mod hgr;
pub mod verify;

pub use analyze::{analyze, AnalyzeOptions, SpectralReport, SCHEMA_VERSION};
pub use gen::{random_hypergraph, random_regular};
pub use hgr::{parse_hgr, render_hgr};
pub use verify::{verify, verify_report, Check, CheckKind, Status, Verification};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFICATION: i32 = 1;
    pub const CERTIFICATION: i32 = 2;
    pub const INPUT: i32 = 3;
}
