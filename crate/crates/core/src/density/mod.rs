//! Density sweeps: enumerate rational points of a multisection, certify
//! their class-map images as non-torsion, and translate to produce many
//! verified rational points on many fibers.

mod enumerate;
mod pipeline;
mod report;

pub use enumerate::{elliptic_graph_model, enumerate_multisection_points};
pub use pipeline::{
    certify_and_translate, densify, family_strategy, CertificationResult, DensityParams, FamilyOutcome, FiberRecord,
    Verdict,
};
pub use report::DensityReport;

use crate::fibration::FibrationError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DensityError {
    #[error("elliptic multisection needs a generator point")]
    NoGeneratorSupplied,
    #[error("cannot enumerate points of this multisection: {0}")]
    UnsupportedRepresentation(&'static str),
    #[error("empty family of multisections")]
    EmptyFamily,
    #[error(transparent)]
    Fibration(#[from] FibrationError),
}
