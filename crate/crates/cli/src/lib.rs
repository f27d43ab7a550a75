//! Curve files, reports, subcommands and the verification suite of the
//! `latnorm` command line tool.

pub mod commands;
pub mod curve_file;
pub mod report;
pub mod verify;

pub use curve_file::{load_curve, parse_curve, CurveFile, LoadError, CORPUS};
pub use report::{Body, ReportDocument, SCHEMA_VERSION};
pub use verify::{verify_corpus, verify_curve, VerifyOptions};
