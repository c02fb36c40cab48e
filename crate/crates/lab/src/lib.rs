//! IO/CLI companion of `pgreedy-core`: JSON configuration, experiment
//! orchestration, versioned reports and CSV export.

pub mod config;
pub mod error;
pub mod report;
pub mod run;

pub use config::RunConfig;
pub use error::LabError;
pub use report::Report;
