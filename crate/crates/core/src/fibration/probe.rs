use num_integer::Integer;
use serde::Serialize;

use super::{trace_on_fiber, Fiber, FibrationError, FibrationModel, Multisection, Section};
use crate::elliptic::TorsionVerdict;
use crate::exactmath::Rat;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ProbeVerdict {
    /// Every sampled pairwise difference is killed by `m`, and `m` is the
    /// least such; evidence, not proof.
    Order { m: u32, fibers: usize },
    /// Some difference is not killed by any `m ≤ m_max`; a proof.
    NoOrderUpTo { m_max: u32, witness: Rat },
}

impl std::fmt::Display for ProbeVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProbeVerdict::Order { m, fibers } => write!(f, "Order({m}) (evidence on {fibers} sampled fibers)"),
            ProbeVerdict::NoOrderUpTo { m_max, witness } => {
                write!(f, "NoOrderUpTo({m_max}) (proof: fiber t = {witness})")
            }
        }
    }
}

/// Smallest `m ≤ m_max` killing every difference of distinct points in each
/// sampled cycle. Singular or pole samples, and samples whose cycle needs a
/// field of degree above 2, are skipped.
pub fn order_probe(
    f: &FibrationModel,
    m: &Multisection,
    samples: &[Rat],
    m_max: u32,
) -> Result<ProbeVerdict, FibrationError> {
    let mut lcm: u32 = 1;
    let mut used = 0;
    for t in samples {
        let fiber = match Fiber::new(f, t) {
            Ok(fb) => fb,
            Err(FibrationError::SingularFiberSkip(_) | FibrationError::PoleAtParameter(_)) => continue,
            Err(e) => return Err(e),
        };
        let cycle = match trace_on_fiber(f, m, &fiber) {
            Ok((c, _)) => c,
            Err(FibrationError::TraceFieldTooLarge { .. }) => continue,
            Err(e) => return Err(e),
        };
        used += 1;
        let pts: Vec<_> = cycle.support.iter().map(|(p, _)| p).collect();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if pts[i] == pts[j] {
                    continue;
                }
                let diff = fiber.sub(pts[i], pts[j])?;
                match fiber.order(&diff, m_max, false)? {
                    TorsionVerdict::Torsion(k) => lcm = lcm.lcm(&k),
                    TorsionVerdict::InfiniteOrder => {
                        return Ok(ProbeVerdict::NoOrderUpTo { m_max, witness: t.clone() });
                    }
                }
                if lcm > m_max {
                    return Ok(ProbeVerdict::NoOrderUpTo { m_max, witness: t.clone() });
                }
            }
        }
    }
    if used == 0 {
        return Err(FibrationError::EmptySampleSet);
    }
    Ok(ProbeVerdict::Order { m: lcm, fibers: used })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DifferenceVerdict {
    /// A specialization of `s1 ⊖ s2` has certified infinite order, or two
    /// smooth specializations have different orders.
    NonTorsion { witness: Rat },
    TorsionEvidence { m: u32, fibers: usize },
}

/// Decides whether `s1 ⊖ s2` looks torsion by specializing at smooth samples.
///
/// Specialization to a smooth fiber is injective on torsion sections, so a
/// change of order between two samples also proves non-torsion.
pub fn section_difference_order(
    f: &FibrationModel,
    s1: &Section,
    s2: &Section,
    samples: &[Rat],
    bound: u32,
) -> Result<DifferenceVerdict, FibrationError> {
    for s in [s1, s2] {
        if !s.lies_on(f) {
            return Err(FibrationError::InvalidMultisection("section does not satisfy the fiber equation"));
        }
    }
    let mut seen: Option<u32> = None;
    let mut used = 0;
    for t in samples {
        let fiber = match Fiber::new(f, t) {
            Ok(fb) => fb,
            Err(FibrationError::SingularFiberSkip(_) | FibrationError::PoleAtParameter(_)) => continue,
            Err(e) => return Err(e),
        };
        used += 1;
        let d = fiber.curve.sub(&s1.eval(t), &s2.eval(t));
        match crate::elliptic::torsion_certify(&fiber.curve, &d, bound)? {
            TorsionVerdict::InfiniteOrder => return Ok(DifferenceVerdict::NonTorsion { witness: t.clone() }),
            TorsionVerdict::Torsion(k) => match seen {
                Some(prev) if prev != k => return Ok(DifferenceVerdict::NonTorsion { witness: t.clone() }),
                _ => seen = Some(k),
            },
        }
    }
    match seen {
        Some(m) => Ok(DifferenceVerdict::TorsionEvidence { m, fibers: used }),
        None => Err(FibrationError::EmptySampleSet),
    }
}
