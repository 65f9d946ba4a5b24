//! Benchmark fixtures shared by the criterion targets.

use fibdense_core::elliptic::{EllipticCurve, Point};
use fibdense_core::enriques::{restrict_quartic_to_cone, ConeQuartic, RamificationData};
use fibdense_core::fibration::{FibrationModel, Multisection};
use fibdense_core::{Rat, RatFn};

/// y² = x³ + t·x + 1 with the 2-section x = 1.
pub fn worked() -> (FibrationModel, Multisection) {
    let f = FibrationModel::new(RatFn::t(), RatFn::one()).unwrap();
    (f, Multisection::ConstantX(Rat::from_int(1)))
}

/// y² = x³ − 2 and its generator (3, 5).
pub fn mordell_curve() -> (EllipticCurve, Point) {
    let e = EllipticCurve::new(Rat::zero(), Rat::from_int(-2)).unwrap();
    (e, Point::Affine(Rat::from_int(3), Rat::from_int(5)))
}

/// Restriction of z3⁴ + z0·z1·z2² − 2·z0⁴ to the cone.
pub fn cone_example() -> RamificationData {
    let b = ConeQuartic::from_terms([
        ("0004", Rat::from_int(1)),
        ("1120", Rat::from_int(1)),
        ("4000", Rat::from_int(-2)),
    ])
    .unwrap();
    restrict_quartic_to_cone(&b).unwrap()
}
