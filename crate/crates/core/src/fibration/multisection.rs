use super::{FibrationError, FibrationModel, Section};
use crate::elliptic::{MarkedPoint, QuarticPoint};
use crate::exactmath::{Field, Poly, Rat, RatFn};

/// A curve in the fibration mapping finitely onto the `t`-line.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Multisection {
    ZeroSection,
    /// `x = c`; the points `(c, ±√h(t))` with `h = c³ + a·c + b`.
    ConstantX(Rat),
    /// `s ↦ (t(s), x(s), y(s))`.
    Parametrized { t: RatFn, x: RatFn, y: RatFn },
    /// `z = p(t)` on a quartic-fibered model: the points `(p(t), ±√F(t, p(t)))`.
    GraphOnQuartic { p: Poly, elliptic: Option<EllipticParam> },
    SplitList(Vec<Section>),
}

/// Data for enumerating an elliptic `GraphOnQuartic` multisection: its own
/// model `v² = q(t)` (the square-free part of `F(t, p(t))`) with a marked
/// point and a generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EllipticParam {
    pub marked: MarkedPoint<Rat>,
    pub generator: QuarticPoint<Rat>,
}

impl Multisection {
    pub fn degree(&self) -> usize {
        match self {
            Multisection::ZeroSection => 1,
            Multisection::ConstantX(_) | Multisection::GraphOnQuartic { .. } => 2,
            Multisection::Parametrized { t, .. } => t.map_degree(),
            Multisection::SplitList(s) => s.len(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Multisection::ZeroSection => "zero_section",
            Multisection::ConstantX(_) => "constant_x",
            Multisection::Parametrized { .. } => "parametrized",
            Multisection::GraphOnQuartic { .. } => "graph_on_quartic",
            Multisection::SplitList(_) => "split",
        }
    }

    /// Checks the defining identities against the fibration.
    pub fn validate(&self, f: &FibrationModel) -> Result<(), FibrationError> {
        match self {
            Multisection::ZeroSection | Multisection::ConstantX(_) => Ok(()),
            Multisection::Parametrized { t, x, y } => {
                if t.is_constant() {
                    return Err(FibrationError::InvalidMultisection("t(s) is constant"));
                }
                let a = f.a().compose(t);
                let b = f.b().compose(t);
                if y.square() != x.square().plus(&a).times(x).plus(&b) {
                    return Err(FibrationError::InvalidMultisection("y² ≠ x³ + a(t)x + b(t) in ℚ(s)"));
                }
                Ok(())
            }
            Multisection::GraphOnQuartic { p, .. } => {
                if f.quartic_fibers().is_none() {
                    return Err(FibrationError::InvalidMultisection("fibration has no quartic model"));
                }
                if p.degree().unwrap_or(0) > 2 {
                    return Err(FibrationError::InvalidMultisection("graph polynomial has degree > 2"));
                }
                Ok(())
            }
            Multisection::SplitList(sections) => {
                if sections.is_empty() {
                    return Err(FibrationError::InvalidMultisection("empty section list"));
                }
                if sections.iter().all(|s| s.lies_on(f)) {
                    Ok(())
                } else {
                    Err(FibrationError::InvalidMultisection("section does not satisfy the fiber equation"))
                }
            }
        }
    }

    /// The 3-section `{y = 0}` of `y² = x³ + a(t)x + b(t)` when `a` is a
    /// nonzero polynomial of degree one: parametrized by `x`.
    pub fn two_torsion_trisection(f: &FibrationModel) -> Option<Multisection> {
        let a = f.a().as_polynomial()?;
        let b = f.b().as_polynomial()?;
        if a.degree() != Some(1) || b.degree().unwrap_or(0) > 1 {
            return None;
        }
        // x³ + (a0 + a1 t)x + b0 + b1 t = 0  ⇒  t = −(x³ + a0 x + b0)/(a1 x + b1)
        let c = |p: &Poly, i: usize| p.coeff(i).cloned().unwrap_or_else(Rat::zero);
        let num = Poly::from_rats(&[-c(b, 0), -c(a, 0), Rat::zero(), -Rat::one()]);
        let den = Poly::from_rats(&[c(b, 1), c(a, 1)]);
        Some(Multisection::Parametrized {
            t: RatFn::new(num, den).ok()?,
            x: RatFn::t(),
            y: RatFn::zero(),
        })
    }
}
