use serde::Serialize;

use super::{EnriquesError, RamificationData};
use crate::elliptic::Point;
use crate::exactmath::{BiPoly, Rat};
use crate::fibration::{FibrationModel, Section};

/// The elliptic fibration of the K3 double cover `w² = F(t, z)` over the
/// `t`-line, in Weierstrass form.
#[derive(Clone, Debug, Serialize)]
pub struct K3Model {
    #[serde(skip)]
    pub fibration: FibrationModel,
    /// `Some(c4)` when the model is that of `w² = F/c4`, the quadratic twist
    /// by `c4`, isomorphic to the cover over `ℚ(√c4)`.
    pub twist: Option<Rat>,
    /// The image of the second infinity branch `w/z² → −√c4`; the first is
    /// the zero section.
    pub e2: Section,
}

pub fn k3_weierstrass_model(fd: &RamificationData, allow_quadratic_twist_extension: bool) -> Result<K3Model, EnriquesError> {
    let c4 = fd.c4();
    let (f, root, twist) = match c4.sqrt_exact() {
        Some(r) => (fd.f().clone(), r, None),
        None if allow_quadratic_twist_extension => {
            let inv = c4.recip().unwrap();
            let rows = fd.f().rows().iter().map(|r| r.scale(&inv)).collect();
            (BiPoly::from_rows(rows), Rat::one(), Some(c4.clone()))
        }
        None => return Err(EnriquesError::LeadingCoefficientNotSquare(c4.clone())),
    };
    let fibration = FibrationModel::from_quartic(f, root, 8)?;
    let qf = fibration.quartic_fibers().expect("quartic model");
    let e2 = match qf.transform.second_branch_image() {
        Some(Point::Affine(x, y)) => Section::Affine { x, y },
        _ => Section::Zero,
    };
    Ok(K3Model { fibration, twist, e2 })
}
