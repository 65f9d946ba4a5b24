//! Short Weierstrass curves over exact fields: group law, torsion
//! certification and the quartic-with-point reduction.

mod curve;
mod quartic;
mod torsion;

pub use curve::{ec_add, ec_mul, naive_height, EllipticCurve, Point};
pub use quartic::{quartic_to_weierstrass, MarkedPoint, QuarticModel, QuarticPoint, QuarticToWeierstrass};
pub use torsion::{
    torsion_certify, torsion_certify_with, uniform_torsion_bound, TorsionVerdict, MAZUR_ORDERS,
    TORSION_BOUND_QUADRATIC, TORSION_BOUND_RATIONAL,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EllipticError {
    #[error("singular curve: 4a^3 + 27b^2 = 0")]
    SingularCurve,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("torsion bound {bound} is below the uniform bound {required} for this field")]
    BoundTooSmall { bound: u32, required: u32 },
    #[error("no uniform torsion bound known for fields of degree {0:?}")]
    UnsupportedField(Option<usize>),
    #[error("quartic has a repeated root")]
    NotSquarefree,
    #[error("quartic has degree below 3")]
    DegenerateQuartic,
    #[error("no marked point on the quartic model")]
    NoMarkedPoint,
}
