//! Experiment files, reports, contour export and the `qdt` command line.

pub mod app;
pub mod dataset;
pub mod error;
pub mod export;
pub mod oracle;
pub mod reference;
pub mod render;
pub mod report;

pub use dataset::{ExperimentFile, LoadOptions, Record};
pub use error::CliError;
pub use report::ReportRow;
