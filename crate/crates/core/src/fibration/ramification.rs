use std::fmt;

use serde::{Serialize, Serializer};

use super::{FiberPoint, FibrationError, FibrationModel, Multisection};
use crate::elliptic::{quartic_to_weierstrass, MarkedPoint, Point, QuarticModel, QuarticPoint};
use crate::exactmath::{poly_gcd, quadratic_roots, split_low_degree, Field, NfElem, Poly, Rat, RatFn};

/// A parameter value on the base: rational, quadratic, or `t = ∞`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParamValue {
    Rational(Rat),
    Quadratic(NfElem),
    Infinity,
}

impl ParamValue {
    pub fn from_ext(v: NfElem) -> Self {
        match v.as_rational() {
            Some(r) => ParamValue::Rational(r),
            None => ParamValue::Quadratic(v),
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            ParamValue::Rational(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Rational(r) => write!(f, "{r}"),
            ParamValue::Quadratic(v) => write!(f, "{v} in {}", v.field()),
            ParamValue::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for ParamValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RamificationKind {
    /// Odd local multiplicity: a branch point of the projection.
    Branch,
    /// Even multiplicity of a graph on a quartic model: a tangency with the
    /// ramification curve.
    Tangency,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RamificationPoint {
    pub t: ParamValue,
    /// The point of the multisection over `t`; absent over `t = ∞` and at
    /// poles of the model.
    pub point: Option<FiberPoint>,
    pub salient: bool,
    pub kind: RamificationKind,
}

/// Ramification over a factor with no roots of degree ≤ 2; salience is
/// still decided exactly via a gcd with the singular locus.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct UnresolvedBranch {
    /// Squarefree factor in the multisection parameter whose roots ramify.
    pub factor: Vec<String>,
    pub roots: usize,
    pub salient_roots: usize,
    pub kind: RamificationKind,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct RamificationReport {
    pub points: Vec<RamificationPoint>,
    pub unresolved: Vec<UnresolvedBranch>,
}

impl RamificationReport {
    pub fn has_salient(&self) -> bool {
        self.points.iter().any(|p| p.salient) || self.unresolved.iter().any(|u| u.salient_roots > 0)
    }

    pub fn salient_points(&self) -> impl Iterator<Item = &RamificationPoint> {
        self.points.iter().filter(|p| p.salient)
    }
}

/// Polynomial in the parameter `u` vanishing exactly where `t(u)` is a
/// singular or pole parameter of the model (finite `t(u)` only).
fn bad_locus(f: &FibrationModel, t: &RatFn) -> Poly {
    let disc = f.discriminant().compose(t);
    let a = f.a().compose(t);
    let b = f.b().compose(t);
    let poles = |r: &RatFn| {
        // drop poles of t itself: they lie over t = ∞
        let mut d = r.denom().clone();
        let td = t.denom();
        if td.degree().unwrap_or(0) > 0 {
            loop {
                let g = poly_gcd(&d, td).unwrap();
                if g.degree() == Some(0) {
                    break;
                }
                d = d.exact_div(&g).unwrap();
            }
        }
        d
    };
    &(&disc.numer().clone() * &poles(&a)) * &poles(&b)
}

fn unresolved(g: &Poly, bad: &Poly, kind: RamificationKind) -> UnresolvedBranch {
    let common = poly_gcd(g, bad).unwrap();
    let roots = g.degree().unwrap();
    UnresolvedBranch {
        factor: g.coeffs().iter().map(|c| c.to_string()).collect(),
        roots,
        salient_roots: roots - common.degree().unwrap(),
        kind,
    }
}

fn salient_at_infinity(f: &FibrationModel) -> bool {
    f.fiber_type_at_infinity().ord_disc == 0
}

pub fn ramification_points(f: &FibrationModel, m: &Multisection) -> Result<RamificationReport, FibrationError> {
    match m {
        Multisection::ZeroSection | Multisection::SplitList(_) => Ok(RamificationReport::default()),
        Multisection::ConstantX(c) => constant_x(f, c),
        Multisection::Parametrized { t, x, y } => parametrized(f, t, x, y),
        Multisection::GraphOnQuartic { p, .. } => graph(f, p),
    }
}

fn constant_x(f: &FibrationModel, c: &Rat) -> Result<RamificationReport, FibrationError> {
    let cf = RatFn::constant(c.clone());
    let h = cf.pow(3).plus(&f.a().times(&cf)).plus(f.b());
    let mut rep = RamificationReport::default();
    if h.is_zero() {
        return Ok(rep);
    }
    let bad = bad_locus(f, &RatFn::t());
    let point = |_: &()| Some(FiberPoint::Rational(Point::Affine(c.clone(), Rat::zero())));
    if h.numer().degree().unwrap_or(0) > 0 {
        let split = split_low_degree(h.numer())?;
        for (t0, mult) in &split.roots {
            if mult % 2 == 1 {
                rep.points.push(RamificationPoint {
                    t: ParamValue::Rational(t0.clone()),
                    point: point(&()),
                    salient: f.is_smooth_at(t0),
                    kind: RamificationKind::Branch,
                });
            }
        }
        for (g, mult) in &split.quadratics {
            if mult % 2 == 1 {
                let (r1, r2) = quadratic_roots(g).unwrap();
                for r in [r1, r2] {
                    rep.points.push(RamificationPoint {
                        salient: f.is_smooth_at(&r),
                        t: ParamValue::Quadratic(r),
                        point: point(&()),
                        kind: RamificationKind::Branch,
                    });
                }
            }
        }
        for (g, mult) in &split.leftover {
            if mult % 2 == 1 {
                rep.unresolved.push(unresolved(g, &bad, RamificationKind::Branch));
            }
        }
    }
    // odd-order poles of h sit over poles of the model
    if h.denom().degree().unwrap_or(0) > 0 {
        for (t0, mult) in split_low_degree(h.denom())?.roots {
            if mult % 2 == 1 {
                rep.points.push(RamificationPoint {
                    t: ParamValue::Rational(t0),
                    point: None,
                    salient: false,
                    kind: RamificationKind::Branch,
                });
            }
        }
    }
    if h.degree_at_infinity().unwrap() % 2 != 0 {
        rep.points.push(RamificationPoint {
            t: ParamValue::Infinity,
            point: None,
            salient: salient_at_infinity(f),
            kind: RamificationKind::Branch,
        });
    }
    Ok(rep)
}

fn parametrized(f: &FibrationModel, t: &RatFn, x: &RatFn, y: &RatFn) -> Result<RamificationReport, FibrationError> {
    let mut rep = RamificationReport::default();
    let bad = bad_locus(f, t);
    let dt = t.derivative();
    if dt.numer().degree().unwrap_or(0) > 0 {
        let split = split_low_degree(dt.numer())?;
        for (u, _) in &split.roots {
            let tv = t.eval(u).expect("critical points are not poles");
            let point = match (x.eval(u), y.eval(u)) {
                (Some(x), Some(y)) => Point::Affine(x, y),
                _ => Point::Infinity,
            };
            rep.points.push(RamificationPoint {
                salient: f.is_smooth_at(&tv),
                t: ParamValue::Rational(tv),
                point: Some(FiberPoint::Rational(point)),
                kind: RamificationKind::Branch,
            });
        }
        for (g, _) in &split.quadratics {
            let (r1, r2) = quadratic_roots(g).unwrap();
            for u in [r1, r2] {
                let tv = t.eval_in(&u).unwrap();
                let point = match (x.eval_in(&u), y.eval_in(&u)) {
                    (Some(x), Some(y)) => FiberPoint::from_ext(Point::Affine(x, y)),
                    _ => FiberPoint::Rational(Point::Infinity),
                };
                rep.points.push(RamificationPoint {
                    salient: f.is_smooth_at(&tv),
                    t: ParamValue::from_ext(tv),
                    point: Some(point),
                    kind: RamificationKind::Branch,
                });
            }
        }
        for (g, _) in &split.leftover {
            rep.unresolved.push(unresolved(g, &bad, RamificationKind::Branch));
        }
    }
    // poles of t of order ≥ 2 ramify over t = ∞
    let mut over_inf = 0;
    if t.denom().degree().unwrap_or(0) > 0 {
        over_inf += split_low_degree(t.denom())?
            .roots
            .iter()
            .filter(|(_, m)| *m >= 2)
            .count();
    }
    let deg_inf = t.degree_at_infinity().unwrap();
    if deg_inf >= 2 {
        over_inf += 1;
    } else if deg_inf == 0 {
        // t(∞) finite: local degree is the order of t − t(∞) at ∞
        let t_inf = t.eval_at_infinity().unwrap();
        let shifted = t.plus(&RatFn::constant(-t_inf.clone()));
        if -shifted.degree_at_infinity().unwrap() >= 2 {
            let point = match (x.eval_at_infinity(), y.eval_at_infinity()) {
                (Some(x), Some(y)) => Point::Affine(x, y),
                _ => Point::Infinity,
            };
            rep.points.push(RamificationPoint {
                salient: f.is_smooth_at(&t_inf),
                t: ParamValue::Rational(t_inf),
                point: Some(FiberPoint::Rational(point)),
                kind: RamificationKind::Branch,
            });
        }
    }
    if over_inf > 0 {
        let salient = salient_at_infinity(f);
        for _ in 0..over_inf {
            rep.points.push(RamificationPoint {
                t: ParamValue::Infinity,
                point: None,
                salient,
                kind: RamificationKind::Branch,
            });
        }
    }
    Ok(rep)
}

fn graph(f: &FibrationModel, p: &Poly) -> Result<RamificationReport, FibrationError> {
    let qf = f.quartic_fibers().ok_or(FibrationError::InvalidMultisection("fibration has no quartic model"))?;
    let g = qf.graph_poly(p);
    let mut rep = RamificationReport::default();
    if g.is_zero() {
        return Err(FibrationError::InvalidMultisection("graph lies in the ramification curve"));
    }
    let bad = bad_locus(f, &RatFn::t());
    let kind = |m: usize| {
        if m % 2 == 1 {
            RamificationKind::Branch
        } else {
            RamificationKind::Tangency
        }
    };
    if g.degree().unwrap_or(0) > 0 {
        let split = split_low_degree(&g)?;
        for (t0, mult) in &split.roots {
            let point = qf.point_at(t0, &p.eval(t0), &Rat::zero()).ok();
            rep.points.push(RamificationPoint {
                t: ParamValue::Rational(t0.clone()),
                point: point.map(FiberPoint::Rational),
                salient: f.is_smooth_at(t0),
                kind: kind(*mult),
            });
        }
        for (q, mult) in &split.quadratics {
            let (r1, r2) = quadratic_roots(q).unwrap();
            for r in [r1, r2] {
                let point = qf.point_at_ext(&r, &p.eval_with(&r, |c| r.embed(c)), &r.zero_like()).ok();
                rep.points.push(RamificationPoint {
                    salient: f.is_smooth_at(&r),
                    t: ParamValue::Quadratic(r),
                    point: point.map(FiberPoint::from_ext),
                    kind: kind(*mult),
                });
            }
        }
        for (q, mult) in &split.leftover {
            rep.unresolved.push(unresolved(q, &bad, kind(*mult)));
        }
    }
    let deficit = qf.graph_degree - g.degree().unwrap_or(0);
    if deficit > 0 {
        rep.points.push(RamificationPoint {
            t: ParamValue::Infinity,
            point: None,
            salient: salient_at_infinity(f),
            kind: kind(deficit),
        });
    }
    Ok(rep)
}

impl super::QuarticFibers {
    /// `F(t, p(t))`.
    pub fn graph_poly(&self, p: &Poly) -> Poly {
        self.f.substitute_main(p)
    }

    /// Image in the Weierstrass fiber over rational `t` of the quartic point `(z, w)`.
    pub fn point_at(&self, t: &Rat, z: &Rat, w: &Rat) -> Result<Point<Rat>, FibrationError> {
        let zq = self.f.eval_param(t);
        let coeffs: [Rat; 5] = std::array::from_fn(|k| zq.coeff(k).cloned().unwrap_or_else(Rat::zero));
        let model = QuarticModel::new(coeffs, Some(MarkedPoint::InfinityBranch { root: self.root.clone() }))?;
        Ok(quartic_to_weierstrass(&model)?.forward(&QuarticPoint::Affine(z.clone(), w.clone()))?)
    }

    /// As [`point_at`](Self::point_at) over a number field.
    pub fn point_at_ext(&self, t: &NfElem, z: &NfElem, w: &NfElem) -> Result<Point<NfElem>, FibrationError> {
        let coeffs: [NfElem; 5] = std::array::from_fn(|k| match self.f.rows().get(k) {
            Some(r) => r.eval_with(t, |c| t.embed(c)),
            None => t.zero_like(),
        });
        let model = QuarticModel::new(coeffs, Some(MarkedPoint::InfinityBranch { root: t.embed(&self.root) }))?;
        Ok(quartic_to_weierstrass(&model)?.forward(&QuarticPoint::Affine(z.clone(), w.clone()))?)
    }
}
