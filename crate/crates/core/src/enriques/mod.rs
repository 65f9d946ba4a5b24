//! Quartics on the quadratic cone `z0·z1 = z2²`: restriction to the
//! ramification curve, section conics and their tangencies, the elliptic
//! double covers `w² = G_s(t)` and the Weierstrass model of the K3 cover.

mod cone;
mod k3;
mod multisection;
mod tangency;

pub use cone::{
    cone_monomials, restrict_quartic_to_cone, singular_points, ConeQuartic, CurvePoint, RamificationData, SingularLocus,
};
pub use k3::{k3_weierstrass_model, K3Model};
pub use multisection::{multisection_from_section, SectionMultisection, SectionPoint};
pub use tangency::{
    bitangent_sections, bitangent_sweep, intersection_at_infinity, section_intersection_poly, section_intersection_poly_in, tangency_profile,
    tangent_line, BitangentCandidate, CandidateField, BitangentSearch, CandidateSection, SectionConic, TangencyPoint, TangencyProfile,
    TangentLine,
};

use crate::exactmath::{ExactError, Rat};
use crate::fibration::FibrationError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnriquesError {
    #[error("quartic passes through the cone vertex (z3^4 coefficient is zero)")]
    VertexOnQuartic,
    #[error("restricted ramification curve is not reduced")]
    NonReducedRamification,
    #[error("bad monomial key {0:?}: expected four exponent digits summing to 4")]
    BadMonomial(String),
    #[error("point is not on the ramification curve")]
    NotOnR,
    #[error("point is singular on the ramification curve or tangent to a generator")]
    NotInR0,
    #[error("tangency discriminant vanishes identically")]
    DegenerateDiscriminant,
    #[error("no bitangent candidates over fields of degree at most 2")]
    NoCandidates,
    #[error("invalid node: {0}")]
    InvalidNode(&'static str),
    #[error("section lies in the ramification curve")]
    ZeroIntersection,
    #[error("leading z-coefficient {0} is not a rational square")]
    LeadingCoefficientNotSquare(Rat),
    #[error(transparent)]
    Fibration(#[from] FibrationError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
