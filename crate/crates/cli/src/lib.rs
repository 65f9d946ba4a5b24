//! Command-line front end: JSON run specifications and the commands that
//! turn them into reports.

pub mod run;
pub mod spec;

pub use run::{run_command, Artifacts, Command, Overrides};
pub use spec::{parse_spec, EnriquesParams, Params, RunSpec};

use fibdense_core::density::DensityError;
use fibdense_core::enriques::EnriquesError;
use fibdense_core::fibration::FibrationError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("spec syntax error at line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("invalid spec field `{field}`: {reason}")]
    Validation { field: String, reason: String },
    #[error("spec has no `{0}` block, which this command needs")]
    Missing(&'static str),
    #[error(transparent)]
    Fibration(#[from] FibrationError),
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error(transparent)]
    Enriques(#[from] EnriquesError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input, 3 for failures during computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } | CliError::Validation { .. } | CliError::Missing(_) => 2,
            _ => 3,
        }
    }
}
