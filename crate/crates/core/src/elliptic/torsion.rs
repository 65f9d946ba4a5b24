use serde::{Deserialize, Serialize};

use super::{EllipticCurve, EllipticError, Point};
use crate::exactmath::Field;

/// Largest torsion order of a point on an elliptic curve over ℚ (Mazur).
pub const TORSION_BOUND_RATIONAL: u32 = 12;
/// Largest torsion order over any quadratic field (Kenku–Momose, Kamienny).
pub const TORSION_BOUND_QUADRATIC: u32 = 18;
/// Orders of torsion points over ℚ.
pub const MAZUR_ORDERS: [u32; 11] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12];

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum TorsionVerdict {
    Torsion(u32),
    InfiniteOrder,
}

pub fn uniform_torsion_bound(field_degree: Option<usize>) -> Option<u32> {
    match field_degree {
        Some(1) => Some(TORSION_BOUND_RATIONAL),
        Some(2) => Some(TORSION_BOUND_QUADRATIC),
        _ => None,
    }
}

/// Exact order of `p` if it is at most `bound`, otherwise `InfiniteOrder`.
/// Fails with `BoundTooSmall` when `bound` is below the uniform constant of
/// the coefficient field, since the negative answer would not be a proof.
pub fn torsion_certify<F: Field>(
    e: &EllipticCurve<F>,
    p: &Point<F>,
    bound: u32,
) -> Result<TorsionVerdict, EllipticError> {
    let deg = e.a().degree_over_q();
    let required = uniform_torsion_bound(deg).ok_or(EllipticError::UnsupportedField(deg))?;
    if bound < required {
        return Err(EllipticError::BoundTooSmall { bound, required });
    }
    torsion_certify_with(e, p, bound)
}

/// As [`torsion_certify`] with the bound taken as given.
pub fn torsion_certify_with<F: Field>(
    e: &EllipticCurve<F>,
    p: &Point<F>,
    bound: u32,
) -> Result<TorsionVerdict, EllipticError> {
    e.check(p)?;
    let mut acc = p.clone();
    for m in 1..=bound {
        if acc.is_infinity() {
            return Ok(TorsionVerdict::Torsion(m));
        }
        acc = e.add(&acc, p);
    }
    Ok(TorsionVerdict::InfiniteOrder)
}
