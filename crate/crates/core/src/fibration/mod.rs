//! Elliptic fibrations over the projective line in Weierstrass form over
//! ℚ(t): specialization, multisections, trace cycles, the class map `τ`,
//! order probing and ramification.

mod cycle;
mod model;
mod multisection;
mod probe;
mod ramification;

pub use cycle::{
    cycle_sum, fiber_points, tau_fiber_point, tau_map, tau_with_trace, trace_cycle, trace_on_fiber, Fiber, FiberPoint,
    TracePoint, ZeroCycle,
};
pub use model::{FiberLabel, FiberType, FibrationModel, QuarticFibers, Section, Specialization};
pub use multisection::{EllipticParam, Multisection};
pub use probe::{order_probe, section_difference_order, DifferenceVerdict, ProbeVerdict};
pub use ramification::{
    ramification_points, ParamValue, RamificationKind, RamificationPoint, RamificationReport, UnresolvedBranch,
};

use crate::elliptic::EllipticError;
use crate::exactmath::{ExactError, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FibrationError {
    #[error("generic fiber is singular (discriminant vanishes identically)")]
    SingularGenericFiber,
    #[error("coefficients have a pole at t = {0}")]
    PoleAtParameter(Rat),
    #[error("fiber over t = {0} is singular")]
    SingularFiberSkip(Rat),
    #[error("fiber over t = {t} needs a field of degree {degree}")]
    TraceFieldTooLarge { t: Rat, degree: usize },
    #[error("no usable sample fibers")]
    EmptySampleSet,
    #[error("unsupported multisection representation: {0}")]
    UnsupportedRepresentation(&'static str),
    #[error("invalid multisection: {0}")]
    InvalidMultisection(&'static str),
    #[error("point is not on the fiber")]
    NotOnFiber,
    #[error("quartic fibers need degree 4 in z with constant square leading coefficient")]
    BadQuarticFibers,
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("internal error: {0}")]
    Internal(String),
}
