use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::{FibrationError, FibrationModel, Multisection};
use crate::elliptic::{
    quartic_to_weierstrass, torsion_certify, torsion_certify_with, EllipticCurve, MarkedPoint, Point, QuarticModel,
    QuarticPoint, TorsionVerdict,
};
use crate::exactmath::{quadratic_roots, split_low_degree, sqrt_rat, Field, NfElem, NumField, Rat, RatFn, SquareRoot};

/// A point on a fiber, rational or defined over a quadratic field. The
/// quadratic variant never holds a point with rational coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FiberPoint {
    Rational(Point<Rat>),
    Quadratic(Point<NfElem>),
}

impl FiberPoint {
    pub fn from_ext(p: Point<NfElem>) -> Self {
        match p.as_rational() {
            Some(r) => FiberPoint::Rational(r),
            None => FiberPoint::Quadratic(p),
        }
    }

    pub fn as_rational(&self) -> Option<&Point<Rat>> {
        match self {
            FiberPoint::Rational(p) => Some(p),
            FiberPoint::Quadratic(_) => None,
        }
    }

    pub fn field(&self) -> Option<&Arc<NumField>> {
        match self {
            FiberPoint::Quadratic(p) => p.x().map(NfElem::field),
            FiberPoint::Rational(_) => None,
        }
    }

    pub fn conjugate(&self) -> FiberPoint {
        match self {
            FiberPoint::Rational(_) => self.clone(),
            FiberPoint::Quadratic(p) => FiberPoint::Quadratic(p.map(|c| c.conjugate().expect("quadratic"))),
        }
    }
}

impl fmt::Display for FiberPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberPoint::Rational(p) => write!(f, "{p}"),
            FiberPoint::Quadratic(Point::Affine(x, y)) => write!(f, "[{x}, {y}] in {}", x.field()),
            FiberPoint::Quadratic(Point::Infinity) => write!(f, "inf"),
        }
    }
}

impl Serialize for FiberPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A smooth fiber with arithmetic on rational and quadratic points.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub t: Rat,
    pub curve: EllipticCurve,
}

impl Fiber {
    pub fn new(f: &FibrationModel, t: &Rat) -> Result<Self, FibrationError> {
        Ok(Fiber {
            t: t.clone(),
            curve: f.smooth_fiber(t)?,
        })
    }

    fn over(&self, k: &Arc<NumField>) -> EllipticCurve<NfElem> {
        self.curve.map(|c| k.from_rat(c))
    }

    fn lift(p: &FiberPoint, k: &Arc<NumField>) -> Point<NfElem> {
        match p {
            FiberPoint::Rational(r) => r.map(|c| k.from_rat(c)),
            FiberPoint::Quadratic(q) => q.clone(),
        }
    }

    fn common_field(&self, p: &FiberPoint, q: &FiberPoint) -> Result<Option<Arc<NumField>>, FibrationError> {
        match (p.field(), q.field()) {
            (None, None) => Ok(None),
            (Some(k), None) | (None, Some(k)) => Ok(Some(Arc::clone(k))),
            (Some(k), Some(l)) if k == l => Ok(Some(Arc::clone(k))),
            _ => Err(FibrationError::TraceFieldTooLarge { t: self.t.clone(), degree: 4 }),
        }
    }

    pub fn contains(&self, p: &FiberPoint) -> bool {
        match p {
            FiberPoint::Rational(r) => self.curve.contains(r),
            FiberPoint::Quadratic(q) => {
                let k = p.field().unwrap();
                self.over(k).contains(q)
            }
        }
    }

    pub fn add(&self, p: &FiberPoint, q: &FiberPoint) -> Result<FiberPoint, FibrationError> {
        Ok(match self.common_field(p, q)? {
            None => FiberPoint::Rational(self.curve.add(p.as_rational().unwrap(), q.as_rational().unwrap())),
            Some(k) => FiberPoint::from_ext(self.over(&k).add(&Self::lift(p, &k), &Self::lift(q, &k))),
        })
    }

    pub fn neg(&self, p: &FiberPoint) -> FiberPoint {
        match p {
            FiberPoint::Rational(r) => FiberPoint::Rational(self.curve.neg(r)),
            FiberPoint::Quadratic(q) => FiberPoint::Quadratic(Point::Affine(
                q.x().unwrap().clone(),
                q.y().unwrap().negated(),
            )),
        }
    }

    pub fn sub(&self, p: &FiberPoint, q: &FiberPoint) -> Result<FiberPoint, FibrationError> {
        self.add(p, &self.neg(q))
    }

    pub fn mul(&self, n: i64, p: &FiberPoint) -> FiberPoint {
        match p {
            FiberPoint::Rational(r) => FiberPoint::Rational(self.curve.mul(n, r)),
            FiberPoint::Quadratic(q) => {
                let k = p.field().unwrap();
                FiberPoint::from_ext(self.over(k).mul(n, q))
            }
        }
    }

    /// Exact order up to `bound`, with the uniform-bound check when
    /// `certify` is set.
    pub fn order(&self, p: &FiberPoint, bound: u32, certify: bool) -> Result<TorsionVerdict, FibrationError> {
        Ok(match p {
            FiberPoint::Rational(r) if certify => torsion_certify(&self.curve, r, bound)?,
            FiberPoint::Rational(r) => torsion_certify_with(&self.curve, r, bound)?,
            FiberPoint::Quadratic(q) => {
                let e = self.over(p.field().unwrap());
                if certify {
                    torsion_certify(&e, q, bound)?
                } else {
                    torsion_certify_with(&e, q, bound)?
                }
            }
        })
    }
}

/// The intersection of a multisection with the fiber over `t`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ZeroCycle {
    pub t: Rat,
    pub support: Vec<(FiberPoint, usize)>,
    pub degree: usize,
}

impl ZeroCycle {
    pub fn rational_points(&self) -> impl Iterator<Item = &Point<Rat>> {
        self.support.iter().filter_map(|(p, _)| p.as_rational())
    }
}

/// The group-law sum of a [`ZeroCycle`], always rational.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TracePoint {
    pub t: Rat,
    pub value: Point<Rat>,
}

fn eval_pair(x: &RatFn, y: &RatFn, s: &Rat) -> Point<Rat> {
    match (x.eval(s), y.eval(s)) {
        (Some(x), Some(y)) => Point::Affine(x, y),
        _ => Point::Infinity,
    }
}

fn eval_pair_in(x: &RatFn, y: &RatFn, s: &NfElem) -> FiberPoint {
    match (x.eval_in(s), y.eval_in(s)) {
        (Some(x), Some(y)) => FiberPoint::from_ext(Point::Affine(x, y)),
        _ => FiberPoint::Rational(Point::Infinity),
    }
}

fn push_pair(out: &mut Vec<(FiberPoint, usize)>, p: FiberPoint, m: usize) {
    let c = p.conjugate();
    out.push((p, m));
    out.push((c, m));
}

/// Support of the cycle `M ∩ E_t` with multiplicities, before summation.
pub fn fiber_points(
    f: &FibrationModel,
    m: &Multisection,
    fiber: &Fiber,
) -> Result<Vec<(FiberPoint, usize)>, FibrationError> {
    let t = &fiber.t;
    let mut out = Vec::new();
    match m {
        Multisection::ZeroSection => out.push((FiberPoint::Rational(Point::Infinity), 1)),
        Multisection::ConstantX(c) => {
            let h = fiber.curve.rhs(c);
            match sqrt_rat(&h) {
                SquareRoot::Rational(y) if y.is_zero() => out.push((FiberPoint::Rational(Point::Affine(c.clone(), y)), 2)),
                SquareRoot::Rational(y) => {
                    out.push((FiberPoint::Rational(Point::Affine(c.clone(), -&y)), 1));
                    out.push((FiberPoint::Rational(Point::Affine(c.clone(), y)), 1));
                }
                SquareRoot::Quadratic(y) => {
                    push_pair(&mut out, FiberPoint::Quadratic(Point::Affine(y.embed(c), y)), 1)
                }
            }
        }
        Multisection::Parametrized { t: tm, x, y } => {
            let poly = tm.numer() - &tm.denom().scale(t);
            let d = m.degree();
            let at_inf = d - poly.degree().unwrap_or(0);
            if at_inf > 0 {
                let p = match (x.eval_at_infinity(), y.eval_at_infinity()) {
                    (Some(x), Some(y)) => Point::Affine(x, y),
                    _ => Point::Infinity,
                };
                out.push((FiberPoint::Rational(p), at_inf));
            }
            if poly.degree().unwrap_or(0) > 0 {
                let split = split_low_degree(&poly)?;
                if split.leftover_degree() > 0 {
                    let degree = split.leftover.iter().map(|(g, _)| g.degree().unwrap()).max().unwrap();
                    return Err(FibrationError::TraceFieldTooLarge { t: t.clone(), degree });
                }
                for (s, mult) in &split.roots {
                    out.push((FiberPoint::Rational(eval_pair(x, y, s)), *mult));
                }
                for (g, mult) in &split.quadratics {
                    let (s, _) = quadratic_roots(g).expect("irreducible quadratic");
                    push_pair(&mut out, eval_pair_in(x, y, &s), *mult);
                }
            }
        }
        Multisection::GraphOnQuartic { p, .. } => {
            let qf = f.quartic_fibers().ok_or(FibrationError::InvalidMultisection("fibration has no quartic model"))?;
            let zq = qf.f.eval_param(t);
            let z0 = p.eval(t);
            let g = zq.eval(&z0);
            let coeffs: [Rat; 5] = std::array::from_fn(|k| zq.coeff(k).cloned().unwrap_or_else(Rat::zero));
            let model = QuarticModel::new(coeffs.clone(), Some(MarkedPoint::InfinityBranch { root: qf.root.clone() }))?;
            let tr = quartic_to_weierstrass(&model)?;
            debug_assert_eq!(tr.curve(), &fiber.curve);
            match sqrt_rat(&g) {
                SquareRoot::Rational(w) if w.is_zero() => {
                    out.push((FiberPoint::Rational(tr.forward(&QuarticPoint::Affine(z0, w))?), 2))
                }
                SquareRoot::Rational(w) => {
                    out.push((FiberPoint::Rational(tr.forward(&QuarticPoint::Affine(z0.clone(), -&w))?), 1));
                    out.push((FiberPoint::Rational(tr.forward(&QuarticPoint::Affine(z0, w))?), 1));
                }
                SquareRoot::Quadratic(w) => {
                    let k = Arc::clone(w.field());
                    let ck = coeffs.map(|c| k.from_rat(&c));
                    let root = k.from_rat(&qf.root);
                    let model_k = QuarticModel::new(ck, Some(MarkedPoint::InfinityBranch { root }))?;
                    let tr_k = quartic_to_weierstrass(&model_k)?;
                    let pt = tr_k.forward(&QuarticPoint::Affine(k.from_rat(&z0), w))?;
                    push_pair(&mut out, FiberPoint::from_ext(pt), 1);
                }
            }
        }
        Multisection::SplitList(sections) => {
            for s in sections {
                out.push((FiberPoint::Rational(s.eval(t)), 1));
            }
        }
    }
    let total: usize = out.iter().map(|(_, m)| m).sum();
    if total != m.degree() {
        return Err(FibrationError::Internal(format!(
            "cycle over {t} has degree {total}, expected {}",
            m.degree()
        )));
    }
    debug_assert!(out.iter().all(|(p, _)| fiber.contains(p)));
    Ok(out)
}

/// Group sum of the support; each Galois orbit sums to a rational point.
pub fn cycle_sum(fiber: &Fiber, support: &[(FiberPoint, usize)]) -> Result<Point<Rat>, FibrationError> {
    let mut acc = Point::Infinity;
    let mut partial: Vec<(Arc<NumField>, Point<NfElem>)> = Vec::new();
    for (p, m) in support {
        match p {
            FiberPoint::Rational(r) => acc = fiber.curve.add(&acc, &fiber.curve.mul(*m as i64, r)),
            FiberPoint::Quadratic(q) => {
                let k = p.field().unwrap();
                let e = fiber.over(k);
                let term = e.mul(*m as i64, q);
                match partial.iter_mut().find(|(l, _)| l == k) {
                    Some((_, s)) => *s = e.add(s, &term),
                    None => partial.push((Arc::clone(k), term)),
                }
            }
        }
    }
    for (_, s) in partial {
        let r = s
            .as_rational()
            .ok_or_else(|| FibrationError::Internal(format!("trace over {} is not rational", fiber.t)))?;
        acc = fiber.curve.add(&acc, &r);
    }
    Ok(acc)
}

pub fn trace_cycle(f: &FibrationModel, m: &Multisection, t: &Rat) -> Result<(ZeroCycle, TracePoint), FibrationError> {
    let fiber = Fiber::new(f, t)?;
    trace_on_fiber(f, m, &fiber)
}

pub fn trace_on_fiber(
    f: &FibrationModel,
    m: &Multisection,
    fiber: &Fiber,
) -> Result<(ZeroCycle, TracePoint), FibrationError> {
    let support = fiber_points(f, m, fiber)?;
    let value = cycle_sum(fiber, &support)?;
    let t = fiber.t.clone();
    Ok((
        ZeroCycle {
            t: t.clone(),
            support,
            degree: m.degree(),
        },
        TracePoint { t, value },
    ))
}

/// `τ(p) = [d]p ⊖ Tr(t)` for a point of the fiber, given the trace.
pub fn tau_with_trace(fiber: &Fiber, d: usize, p: &FiberPoint, trace: &Point<Rat>) -> Result<FiberPoint, FibrationError> {
    fiber.sub(&fiber.mul(d as i64, p), &FiberPoint::Rational(trace.clone()))
}

/// The class map on a rational point of the smooth fiber over `t`.
pub fn tau_map(f: &FibrationModel, m: &Multisection, p: &Point<Rat>, t: &Rat) -> Result<Point<Rat>, FibrationError> {
    let fiber = Fiber::new(f, t)?;
    if !fiber.curve.contains(p) {
        return Err(FibrationError::NotOnFiber);
    }
    let (_, trace) = trace_on_fiber(f, m, &fiber)?;
    let d = m.degree() as i64;
    Ok(fiber.curve.sub(&fiber.curve.mul(d, p), &trace.value))
}

/// The class map on any point of the fiber (rational or quadratic).
pub fn tau_fiber_point(f: &FibrationModel, m: &Multisection, t: &Rat, p: &FiberPoint) -> Result<FiberPoint, FibrationError> {
    let fiber = Fiber::new(f, t)?;
    if !fiber.contains(p) {
        return Err(FibrationError::NotOnFiber);
    }
    let (_, trace) = trace_on_fiber(f, m, &fiber)?;
    tau_with_trace(&fiber, m.degree(), p, &trace.value)
}
