use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{enumerate_multisection_points, DensityError, DensityReport};
use crate::elliptic::{torsion_certify, Point, TorsionVerdict, TORSION_BOUND_RATIONAL};
use crate::exactmath::Rat;
use crate::fibration::{trace_on_fiber, Fiber, FibrationError, FibrationModel, Multisection};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DensityParams {
    pub height_bound: u64,
    pub k_max: u32,
    pub torsion_bound: u32,
}

impl Default for DensityParams {
    fn default() -> Self {
        DensityParams {
            height_bound: 10,
            k_max: 5,
            torsion_bound: TORSION_BOUND_RATIONAL,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum Verdict {
    NonTorsion,
    Torsion(u32),
    Skipped(String),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CertificationResult {
    pub t: Rat,
    pub base_point: Point,
    pub tau_point: Option<Point>,
    pub verdict: Verdict,
}

fn skipped(t: &Rat, p: &Point, reason: String) -> (CertificationResult, Vec<Point>) {
    let res = CertificationResult {
        t: t.clone(),
        base_point: p.clone(),
        tau_point: None,
        verdict: Verdict::Skipped(reason),
    };
    (res, vec![])
}

/// Certifies `τ(p)` on the fiber over `t` and, when it has infinite order,
/// returns the translates `p ⊕ k·τ(p)` for `k = 0..=k_max`. Per-fiber
/// failures (singular fiber, large trace field) come back as `Skipped`.
pub fn certify_and_translate(
    f: &FibrationModel,
    m: &Multisection,
    t: &Rat,
    p: &Point,
    k_max: u32,
    torsion_bound: u32,
) -> Result<(CertificationResult, Vec<Point>), DensityError> {
    let fiber = match Fiber::new(f, t) {
        Ok(fb) => fb,
        Err(FibrationError::SingularFiberSkip(_)) => return Ok(skipped(t, p, "singular".into())),
        Err(FibrationError::PoleAtParameter(_)) => return Ok(skipped(t, p, "pole".into())),
        Err(e) => return Err(e.into()),
    };
    if !fiber.curve.contains(p) {
        return Err(FibrationError::NotOnFiber.into());
    }
    let trace = match trace_on_fiber(f, m, &fiber) {
        Ok((_, tr)) => tr.value,
        Err(e @ FibrationError::TraceFieldTooLarge { .. }) => return Ok(skipped(t, p, e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let e = &fiber.curve;
    let q = e.sub(&e.mul(m.degree() as i64, p), &trace);
    let verdict = torsion_certify(e, &q, torsion_bound).map_err(FibrationError::from)?;
    let mut points = vec![p.clone()];
    let verdict = match verdict {
        TorsionVerdict::Torsion(k) => Verdict::Torsion(k),
        TorsionVerdict::InfiniteOrder => {
            for _ in 0..k_max {
                let next = e.add(points.last().unwrap(), &q);
                points.push(next);
            }
            Verdict::NonTorsion
        }
    };
    for (i, a) in points.iter().enumerate() {
        assert!(e.contains(a), "emitted point off the fiber");
        // equal translates would make τ(p) torsion
        assert!(points[..i].iter().all(|b| b != a), "repeated translate of a non-torsion point");
    }
    let res = CertificationResult {
        t: t.clone(),
        base_point: p.clone(),
        tau_point: Some(q),
        verdict,
    };
    Ok((res, points))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FiberRecord {
    pub t: Rat,
    /// One entry per base point tried, in order; at most one is `NonTorsion`.
    pub attempts: Vec<CertificationResult>,
    /// Translates `(k, p ⊕ k·τ(p))` from the certified attempt.
    pub points: Vec<(u32, Point)>,
}

impl FiberRecord {
    pub fn certified(&self) -> bool {
        self.attempts.iter().any(|a| a.verdict == Verdict::NonTorsion)
    }
}

fn process_fiber(
    f: &FibrationModel,
    m: &Multisection,
    t: &Rat,
    bases: &[Point],
    params: &DensityParams,
) -> Result<FiberRecord, DensityError> {
    let mut record = FiberRecord {
        t: t.clone(),
        attempts: vec![],
        points: vec![],
    };
    let mut tried: Vec<Point> = vec![];
    let mut queue: Vec<Point> = bases.to_vec();
    let mut extended = false;
    while let Some(p) = (!queue.is_empty()).then(|| queue.remove(0)) {
        if tried.contains(&p) {
            continue;
        }
        tried.push(p.clone());
        let (res, pts) = certify_and_translate(f, m, t, &p, params.k_max, params.torsion_bound)?;
        let verdict = res.verdict.clone();
        record.attempts.push(res);
        match verdict {
            Verdict::NonTorsion => {
                record.points = (0..).zip(pts).collect();
                break;
            }
            Verdict::Skipped(_) => break,
            Verdict::Torsion(_) if queue.is_empty() && !extended => {
                // fall back to the other rational points of the cycle, once each
                extended = true;
                let fiber = Fiber::new(f, t)?;
                let (cycle, _) = trace_on_fiber(f, m, &fiber)?;
                queue.extend(cycle.rational_points().filter(|q| !q.is_infinity()).cloned());
            }
            Verdict::Torsion(_) => {}
        }
    }
    Ok(record)
}

/// Runs [`certify_and_translate`] over every enumerated fiber, in parallel,
/// with the records sorted by fiber parameter.
pub fn densify(f: &FibrationModel, m: &Multisection, params: &DensityParams) -> Result<DensityReport, DensityError> {
    let mut by_fiber: BTreeMap<Rat, Vec<Point>> = BTreeMap::new();
    for (t, p) in enumerate_multisection_points(f, m, params.height_bound)? {
        let entry = by_fiber.entry(t).or_default();
        if !entry.contains(&p) {
            entry.push(p);
        }
    }
    let groups: Vec<(Rat, Vec<Point>)> = by_fiber.into_iter().collect();
    let fibers = groups
        .par_iter()
        .map(|(t, bases)| process_fiber(f, m, t, bases, params))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DensityReport::from_fibers(*params, fibers))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FamilyOutcome {
    Chosen { index: usize, report: DensityReport },
    Exhausted { reports: Vec<DensityReport> },
}

/// Densifies each member in turn and stops at the first that certifies a fiber.
pub fn family_strategy(
    f: &FibrationModel,
    family: &[Multisection],
    params: &DensityParams,
) -> Result<FamilyOutcome, DensityError> {
    if family.is_empty() {
        return Err(DensityError::EmptyFamily);
    }
    let mut reports = Vec::new();
    for (index, m) in family.iter().enumerate() {
        let report = densify(f, m, params)?;
        if report.fibers_certified > 0 {
            return Ok(FamilyOutcome::Chosen { index, report });
        }
        reports.push(report);
    }
    Ok(FamilyOutcome::Exhausted { reports })
}
