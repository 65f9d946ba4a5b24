//! Exact arithmetic: rationals, polynomials, rational functions and small
//! number fields.

mod bipoly;
mod factor;
mod field;
mod height;
mod numfield;
mod poly;
mod qpoly;
mod rat;
mod ratfn;

pub use bipoly::{determinant, sylvester_resultant, BiPoly};
pub use factor::{small_factors, SmallFactors};
pub use field::Field;
pub use height::enumerate_rationals;
pub use numfield::{quadratic_roots, sqrt_rat, NfElem, NumField, SquareRoot};
pub use poly::Poly;
pub use qpoly::{
    coefficient_height, content_and_primitive, discriminant, interpolate, poly_gcd, quadratic_factors,
    rational_roots, resultant, split_low_degree, squarefree_decompose, squarefree_part, LowDegreeSplit, PolyDisplay,
};
pub use rat::Rat;
pub use ratfn::{RatFn, RatFnDisplay};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("zero polynomial input")]
    ZeroInput,
    #[error("constant polynomial has no discriminant")]
    ConstantInput,
    #[error("number field degree {0} outside 1..=4")]
    FieldDegree(usize),
    #[error("minimal polynomial is reducible")]
    Reducible,
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}
