use serde::Serialize;

use super::{intersection_at_infinity, section_intersection_poly, EnriquesError, RamificationData, SectionConic};
use crate::elliptic::{MarkedPoint, QuarticModel};
use crate::exactmath::{enumerate_rationals, poly_gcd, quadratic_roots, split_low_degree, squarefree_decompose, Poly, Rat};
use crate::fibration::{ParamValue, RamificationKind, UnresolvedBranch};

/// A point of the section over which `D_s` is special: a branch point
/// (odd multiplicity) or a stripped tangency (even multiplicity).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SectionPoint {
    pub t: ParamValue,
    pub multiplicity: usize,
    pub kind: RamificationKind,
    /// The K3 fiber over `t` is smooth.
    pub salient: bool,
}

/// The double cover `D_s: w² = G_s(t)`, normalized as `w = g(t)·v`,
/// `v² = q(t)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SectionMultisection {
    pub section: SectionConic,
    pub g_s: Poly,
    /// Intersection multiplicity with `R` over `t = ∞`.
    pub at_infinity: usize,
    pub square_part: Poly,
    pub odd_part: Poly,
    /// Branch points of `D_s → ℙ¹`, `t = ∞` included.
    pub branch_count: usize,
    /// `None` when `D_s` splits into two sections.
    pub genus: Option<usize>,
    #[serde(skip)]
    pub quartic: Option<QuarticModel>,
    pub points: Vec<SectionPoint>,
    pub unresolved: Vec<UnresolvedBranch>,
}

impl SectionMultisection {
    pub fn is_elliptic(&self) -> bool {
        self.genus == Some(1)
    }
}

/// A rational point of `v² = q(t)` of small height, preferring an
/// infinity branch.
fn find_marked_point(q: &[Rat; 5]) -> Option<MarkedPoint> {
    if let Some(m) = QuarticModel::rational_infinity_branch(q, 1) {
        if !q[4].is_zero() {
            return Some(m);
        }
    }
    let p = Poly::from_rats(q);
    enumerate_rationals(12).into_iter().find_map(|t| {
        p.eval(&t).sqrt_exact().map(|w| MarkedPoint::Finite { z: t, w })
    })
}

pub fn multisection_from_section(fd: &RamificationData, s: &SectionConic) -> Result<SectionMultisection, EnriquesError> {
    let g_s = section_intersection_poly(fd, s);
    if g_s.is_zero() {
        return Err(EnriquesError::ZeroIntersection);
    }
    let at_infinity = intersection_at_infinity(fd, s).expect("nonzero");
    debug_assert_eq!(at_infinity, 8 - g_s.degree().unwrap());

    let mut odd = Poly::constant(g_s.lead().unwrap().clone());
    let mut square = Poly::one();
    let mut points = Vec::new();
    let mut unresolved = Vec::new();
    let disc = fd.discriminant();
    for (fac, m) in squarefree_decompose(&g_s)? {
        let kind = if m % 2 == 1 { RamificationKind::Branch } else { RamificationKind::Tangency };
        if m % 2 == 1 {
            odd = &odd * &fac;
        }
        square = &square * &fac.pow((m / 2) as u32);
        let split = split_low_degree(&fac)?;
        for (r, _) in split.roots {
            let t = ParamValue::Rational(r);
            points.push(SectionPoint {
                salient: fd.smooth_over(&t),
                t,
                multiplicity: m,
                kind,
            });
        }
        for (q, _) in split.quadratics {
            let (a, b) = quadratic_roots(&q).expect("irreducible quadratic");
            for r in [a, b] {
                let t = ParamValue::Quadratic(r);
                points.push(SectionPoint {
                    salient: fd.smooth_over(&t),
                    t,
                    multiplicity: m,
                    kind,
                });
            }
        }
        for (l, _) in split.leftover {
            let common = poly_gcd(&l, disc)?;
            let roots = l.degree().unwrap();
            unresolved.push(UnresolvedBranch {
                factor: l.coeffs().iter().map(|c| c.to_string()).collect(),
                roots,
                salient_roots: roots - common.degree().unwrap(),
                kind,
            });
        }
    }
    if at_infinity > 0 {
        points.push(SectionPoint {
            t: ParamValue::Infinity,
            multiplicity: at_infinity,
            kind: if at_infinity % 2 == 1 { RamificationKind::Branch } else { RamificationKind::Tangency },
            salient: fd.smooth_over(&ParamValue::Infinity),
        });
    }
    let branch_count = odd.degree().unwrap() + at_infinity % 2;
    let genus = (branch_count > 0).then(|| branch_count / 2 - 1);
    let quartic = if genus == Some(1) {
        let q: [Rat; 5] = std::array::from_fn(|k| odd.coeff(k).cloned().unwrap_or_else(Rat::zero));
        Some(QuarticModel::new(q.clone(), find_marked_point(&q)).map_err(crate::fibration::FibrationError::from)?)
    } else {
        None
    };
    Ok(SectionMultisection {
        section: s.clone(),
        g_s,
        at_infinity,
        square_part: square,
        odd_part: odd,
        branch_count,
        genus,
        quartic,
        points,
        unresolved,
    })
}
