use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::FibrationError;
use crate::elliptic::{quartic_to_weierstrass, EllipticCurve, MarkedPoint, Point, QuarticModel, QuarticToWeierstrass};
use crate::exactmath::{rational_roots, BiPoly, Field, Poly, Rat, RatFn};

/// Generic fiber `y² = x³ + a(t)·x + b(t)` over ℚ(t).
#[derive(Clone, Debug)]
pub struct FibrationModel {
    a: RatFn,
    b: RatFn,
    disc: RatFn,
    singular: Vec<Rat>,
    quartic: Option<Arc<QuarticFibers>>,
}

/// Fibers given as `w² = F(t, z)` with constant leading coefficient `root²`
/// in `z`, reduced to Weierstrass form by sending the infinity branch
/// `w/z² → root` to the zero section.
#[derive(Clone, Debug)]
pub struct QuarticFibers {
    pub f: BiPoly,
    pub root: Rat,
    /// Formal degree of `F(t, p(t))` for admissible graphs `z = p(t)`; a
    /// deficit is intersection at `t = ∞`.
    pub graph_degree: usize,
    pub transform: QuarticToWeierstrass<RatFn>,
}

#[derive(Clone, Debug)]
pub enum Specialization {
    Smooth(EllipticCurve),
    Singular,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum FiberLabel {
    I0,
    I1,
    II,
    Other,
}

impl fmt::Display for FiberLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FiberLabel::I0 => "I0",
            FiberLabel::I1 => "I1",
            FiberLabel::II => "II",
            FiberLabel::Other => "Other",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FiberType {
    pub ord_disc: usize,
    /// `None` when `c4 = −48a` vanishes identically.
    pub ord_c4: Option<usize>,
    pub label: FiberLabel,
    /// `None` for labels outside I0/I1/II.
    pub irreducible: Option<bool>,
}

/// A section `t ↦ (x(t), y(t))`, or the zero section.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Section {
    Zero,
    Affine { x: RatFn, y: RatFn },
}

impl Section {
    /// Value on the fiber over `t`; a pole of `x` is the point at infinity.
    pub fn eval(&self, t: &Rat) -> Point {
        match self {
            Section::Zero => Point::Infinity,
            Section::Affine { x, y } => match (x.eval(t), y.eval(t)) {
                (Some(x), Some(y)) => Point::Affine(x, y),
                _ => Point::Infinity,
            },
        }
    }

    pub fn lies_on(&self, f: &FibrationModel) -> bool {
        match self {
            Section::Zero => true,
            Section::Affine { x, y } => y.square() == x.square().plus(&f.a).times(x).plus(&f.b),
        }
    }
}

impl FibrationModel {
    pub fn new(a: RatFn, b: RatFn) -> Result<Self, FibrationError> {
        let disc = a.pow(3).scale_int(4).plus(&b.square().scale_int(27)).scale_int(-16);
        if disc.is_zero() {
            return Err(FibrationError::SingularGenericFiber);
        }
        let mut singular: Vec<Rat> = Vec::new();
        for p in [disc.numer(), a.denom(), b.denom()] {
            if p.degree().unwrap_or(0) > 0 {
                singular.extend(rational_roots(p)?.into_iter().map(|(r, _)| r));
            }
        }
        singular.sort();
        singular.dedup();
        Ok(FibrationModel {
            a,
            b,
            disc,
            singular,
            quartic: None,
        })
    }

    /// The Weierstrass model of `w² = F(t, z)` where the `z⁴` coefficient of
    /// `F` is the constant `root²`.
    pub fn from_quartic(f: BiPoly, root: Rat, graph_degree: usize) -> Result<Self, FibrationError> {
        if f.main_degree() != Some(4)
            || f.lead_row().and_then(Poly::degree) != Some(0)
            || f.lead_row().unwrap().coeffs()[0] != root.square()
            || root.is_zero()
        {
            return Err(FibrationError::BadQuarticFibers);
        }
        let q: [RatFn; 5] = std::array::from_fn(|k| RatFn::from_poly(f.rows()[k].clone()));
        let model = QuarticModel::new(
            q,
            Some(MarkedPoint::InfinityBranch {
                root: RatFn::constant(root.clone()),
            }),
        )?;
        let transform = quartic_to_weierstrass(&model)?;
        let curve = transform.curve();
        let mut out = FibrationModel::new(curve.a().clone(), curve.b().clone())?;
        out.quartic = Some(Arc::new(QuarticFibers {
            f,
            root,
            graph_degree,
            transform,
        }));
        Ok(out)
    }

    pub fn a(&self) -> &RatFn {
        &self.a
    }

    pub fn b(&self) -> &RatFn {
        &self.b
    }

    /// `−16(4a³ + 27b²)`.
    pub fn discriminant(&self) -> &RatFn {
        &self.disc
    }

    /// Rational roots of the discriminant numerator and rational poles of
    /// the coefficients, ascending.
    pub fn singular_parameters(&self) -> &[Rat] {
        &self.singular
    }

    pub fn quartic_fibers(&self) -> Option<&QuarticFibers> {
        self.quartic.as_deref()
    }

    pub fn generic_curve(&self) -> EllipticCurve<RatFn> {
        EllipticCurve::new(self.a.clone(), self.b.clone()).expect("checked at construction")
    }

    fn coeffs_at(&self, t: &Rat) -> Result<(Rat, Rat), FibrationError> {
        match (self.a.eval(t), self.b.eval(t)) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(FibrationError::PoleAtParameter(t.clone())),
        }
    }

    pub fn specialize(&self, t: &Rat) -> Result<Specialization, FibrationError> {
        let (a, b) = self.coeffs_at(t)?;
        Ok(match EllipticCurve::new(a, b) {
            Ok(e) => Specialization::Smooth(e),
            Err(_) => Specialization::Singular,
        })
    }

    /// The smooth fiber at `t`, or `SingularFiberSkip`.
    pub fn smooth_fiber(&self, t: &Rat) -> Result<EllipticCurve, FibrationError> {
        match self.specialize(t)? {
            Specialization::Smooth(e) => Ok(e),
            Specialization::Singular => Err(FibrationError::SingularFiberSkip(t.clone())),
        }
    }

    pub fn fiber_type(&self, t: &Rat) -> Result<FiberType, FibrationError> {
        self.coeffs_at(t)?;
        let ord_disc = self.disc.numer().root_multiplicity(t);
        let ord_c4 = (!self.a.is_zero()).then(|| self.a.numer().root_multiplicity(t));
        let label = match (ord_disc, ord_c4) {
            (0, _) => FiberLabel::I0,
            (1, _) => FiberLabel::I1,
            (2, None) => FiberLabel::II,
            (2, Some(c)) if c >= 1 => FiberLabel::II,
            _ => FiberLabel::Other,
        };
        let irreducible = (label != FiberLabel::Other).then_some(true);
        Ok(FiberType {
            ord_disc,
            ord_c4,
            label,
            irreducible,
        })
    }

    /// The model in the chart `s = 1/t`: `(s^{4k}·a(1/s), s^{6k}·b(1/s))` with
    /// the least `k ≥ 0` making both coefficients regular at `s = 0`.
    pub fn infinity_chart(&self) -> FibrationModel {
        let inv = RatFn::new(Poly::one(), Poly::t()).unwrap();
        let a = self.a.compose(&inv);
        let b = self.b.compose(&inv);
        let need = |f: &RatFn, w: isize| -> isize {
            match f.order_at(&Rat::zero()) {
                Some(o) if o < 0 => (-o + w - 1) / w,
                _ => 0,
            }
        };
        let k = need(&a, 4).max(need(&b, 6)) as usize;
        let sk = |e: usize| RatFn::from_poly(Poly::monomial(Rat::one(), e));
        FibrationModel::new(a.times(&sk(4 * k)), b.times(&sk(6 * k))).expect("nonzero discriminant is preserved")
    }

    pub fn fiber_type_at_infinity(&self) -> FiberType {
        self.infinity_chart().fiber_type(&Rat::zero()).expect("regular at s = 0 by construction")
    }

    /// Whether the fiber over `t` is smooth, for `t` in a number field.
    pub fn is_smooth_at<E: Field>(&self, t: &E) -> bool {
        match self.disc.eval_in(t) {
            Some(v) => !v.is_zero() && self.a.eval_in(t).is_some() && self.b.eval_in(t).is_some(),
            None => false,
        }
    }
}
