//! Config-driven batch runs over the symbolic dynamics crates.

pub mod config;
pub mod run;

pub use config::{
    build_shift, parse_config, validate, AnalysisConfig, Diagnostic, ExperimentConfig, Severity, DEFAULT_DEPTH_GUARD,
};
pub use run::{config_hash, run, write_outputs, Artifact, RunError, RunOptions, RunOutput};
