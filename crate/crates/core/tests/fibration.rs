use fibdense_core::elliptic::{torsion_certify, Point, TorsionVerdict};
use fibdense_core::exactmath::{enumerate_rationals, Field, Poly, Rat, RatFn};
use fibdense_core::fibration::*;

fn r(n: i64) -> Rat {
    Rat::from_int(n)
}

fn pt(x: Rat, y: Rat) -> Point {
    Point::Affine(x, y)
}

/// y² = x³ + t·x + 1
fn worked() -> FibrationModel {
    FibrationModel::new(RatFn::t(), RatFn::one()).unwrap()
}

fn trisection(f: &FibrationModel) -> Multisection {
    Multisection::two_torsion_trisection(f).unwrap()
}

#[test]
fn worked_model_data() {
    let f = worked();
    // Δ = −16(4t³ + 27): no rational roots
    assert!(f.singular_parameters().is_empty());
    assert_eq!(f.discriminant().numer(), &Poly::from_ints(&[-432, 0, 0, -64]));
    assert!(matches!(f.specialize(&r(2)).unwrap(), Specialization::Smooth(_)));
}

#[test]
fn constant_x_cycles() {
    let f = worked();
    let m = Multisection::ConstantX(r(1));
    let (c, tr) = trace_cycle(&f, &m, &r(2)).unwrap();
    assert_eq!(c.degree, 2);
    let pts: Vec<_> = c.rational_points().cloned().collect();
    assert_eq!(pts, vec![pt(r(1), r(-2)), pt(r(1), r(2))]);
    assert_eq!(tr.value, Point::Infinity);

    let (c, tr) = trace_cycle(&f, &m, &r(-2)).unwrap();
    assert_eq!(c.support, vec![(FiberPoint::Rational(pt(r(1), r(0))), 2)]);
    assert_eq!(tr.value, Point::Infinity);

    // h(3) = 5 is not a square: a conjugate pair over ℚ(√5)
    let (c, tr) = trace_cycle(&f, &m, &r(3)).unwrap();
    assert_eq!(c.support.len(), 2);
    assert!(c.support.iter().all(|(p, _)| p.field().is_some()));
    assert_eq!(tr.value, Point::Infinity);
}

#[test]
fn zero_section_cycle_and_tau() {
    let f = worked();
    let (c, tr) = trace_cycle(&f, &Multisection::ZeroSection, &r(5)).unwrap();
    assert_eq!(c.support, vec![(FiberPoint::Rational(Point::Infinity), 1)]);
    assert_eq!(tr.value, Point::Infinity);
    let p = pt(r(0), r(1));
    assert_eq!(tau_map(&f, &Multisection::ZeroSection, &p, &r(5)).unwrap(), p);
}

#[test]
fn tau_examples() {
    let f = worked();
    let q = tau_map(&f, &Multisection::ConstantX(r(1)), &pt(r(1), r(2)), &r(2)).unwrap();
    assert_eq!(q, pt(Rat::frac(-7, 16), Rat::frac(-13, 64)));
    // b = −2: x³ − 2x + 1 = (x − 1)(x² + x − 1); (1, 0) is 2-torsion and τ fixes it
    let m = trisection(&f);
    assert_eq!(m.degree(), 3);
    let p = pt(r(1), r(0));
    assert_eq!(tau_map(&f, &m, &p, &r(-2)).unwrap(), p);
    let (c, tr) = trace_cycle(&f, &m, &r(-2)).unwrap();
    assert_eq!(c.support.len(), 3);
    assert_eq!(tr.value, Point::Infinity);
    assert_eq!(
        tau_map(&f, &m, &pt(r(1), r(1)), &r(-2)),
        Err(FibrationError::NotOnFiber)
    );
}

#[test]
fn probe_examples() {
    let f = worked();
    let samples: Vec<Rat> = enumerate_rationals(4).into_iter().take(10).collect();
    assert_eq!(
        order_probe(&f, &Multisection::ZeroSection, &samples, 18).unwrap(),
        ProbeVerdict::Order { m: 1, fibers: 10 }
    );
    // trisection sampled on fibers with a rational root: t = −(r³ + 1)/r
    let tri_samples: Vec<Rat> = [(1, 1), (2, 1), (3, 1), (-2, 1), (-3, 1), (1, 2), (2, 3), (3, 2), (-1, 2), (4, 1)]
        .iter()
        .map(|&(n, d)| {
            let k = Rat::frac(n, d);
            -&(&(&k.pow(3) + &r(1)) / &k)
        })
        .collect();
    assert!(matches!(
        order_probe(&f, &trisection(&f), &tri_samples, 4).unwrap(),
        ProbeVerdict::Order { m: 2, .. }
    ));
    let v = order_probe(&f, &Multisection::ConstantX(r(1)), &[r(2), r(7), r(14)], 18).unwrap();
    assert!(matches!(v, ProbeVerdict::NoOrderUpTo { m_max: 18, .. }));
    assert_eq!(
        order_probe(&f, &Multisection::ZeroSection, &[], 5),
        Err(FibrationError::EmptySampleSet)
    );
}

#[test]
fn ramification_examples() {
    let f = worked();
    let rep = ramification_points(&f, &Multisection::ConstantX(r(1))).unwrap();
    let finite: Vec<_> = rep.points.iter().filter(|p| p.t != ParamValue::Infinity).collect();
    assert_eq!(finite.len(), 1);
    assert_eq!(finite[0].t, ParamValue::Rational(r(-2)));
    assert_eq!(finite[0].point, Some(FiberPoint::Rational(pt(r(1), r(0)))));
    assert!(finite[0].salient);
    assert!(ramification_points(&f, &Multisection::ZeroSection).unwrap().points.is_empty());

    let rep = ramification_points(&f, &trisection(&f)).unwrap();
    assert!(!rep.has_salient(), "{rep:?}");
    // s³ = 1/2 has no roots in degree ≤ 2; salience decided by gcd
    assert_eq!(rep.unresolved.len(), 1);
    assert_eq!(rep.unresolved[0].roots, 3);
}

#[test]
fn difference_order_examples() {
    let f = worked();
    let s = Section::Affine {
        x: RatFn::zero(),
        y: RatFn::one(),
    };
    let samples = [r(1), r(2), r(5)];
    assert_eq!(
        section_difference_order(&f, &s, &s, &samples, 12).unwrap(),
        DifferenceVerdict::TorsionEvidence { m: 1, fibers: 3 }
    );
    // oracle: (0, 1) has infinite order on the fiber at t = 2
    let e2 = f.smooth_fiber(&r(2)).unwrap();
    assert_eq!(torsion_certify(&e2, &pt(r(0), r(1)), 12), Ok(TorsionVerdict::InfiniteOrder));
    assert!(matches!(
        section_difference_order(&f, &Section::Zero, &s, &samples, 12).unwrap(),
        DifferenceVerdict::NonTorsion { .. }
    ));

    // y² = x(x − 1)(x − t) in short form: x ↦ x − (1 + t)/3
    let x = RatFn::t();
    let u = RatFn::new(Poly::from_ints(&[1, 1]), Poly::from_ints(&[3])).unwrap();
    let c = |n, d| RatFn::constant(Rat::frac(n, d));
    let a2 = u.times(&c(-3, 1));
    let a4 = x.clone();
    let a = a4.minus(&a2.square().times(&c(1, 3)));
    let b = a2.pow(3).times(&c(2, 27)).minus(&a2.times(&a4).times(&c(1, 3)));
    let g = FibrationModel::new(a, b).unwrap();
    let two_torsion = Section::Affine { x: u.negated(), y: RatFn::zero() };
    assert!(two_torsion.lies_on(&g));
    assert_eq!(
        section_difference_order(&g, &Section::Zero, &two_torsion, &[r(2), r(3), r(5), r(-1)], 12).unwrap(),
        DifferenceVerdict::TorsionEvidence { m: 2, fibers: 4 }
    );
}

#[test]
fn parametrized_validation() {
    let f = worked();
    let bad = Multisection::Parametrized {
        t: RatFn::t(),
        x: RatFn::one(),
        y: RatFn::one(),
    };
    assert!(bad.validate(&f).is_err());
    assert!(trisection(&f).validate(&f).is_ok());
}

#[test]
fn tau_difference_law_on_samples() {
    let f = worked();
    let ms = [Multisection::ZeroSection, Multisection::ConstantX(r(1)), trisection(&f)];
    let mut checked = 0;
    for m in &ms {
        for t in enumerate_rationals(6) {
            let Ok(fiber) = Fiber::new(&f, &t) else { continue };
            let (cycle, trace) = match trace_on_fiber(&f, m, &fiber) {
                Ok(x) => x,
                Err(FibrationError::TraceFieldTooLarge { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            let d = m.degree() as i64;
            let pts: Vec<_> = cycle.support.iter().map(|(p, _)| p.clone()).collect();
            for p in &pts {
                for q in &pts {
                    let lhs = fiber
                        .sub(
                            &tau_with_trace(&fiber, m.degree(), p, &trace.value).unwrap(),
                            &tau_with_trace(&fiber, m.degree(), q, &trace.value).unwrap(),
                        )
                        .unwrap();
                    let rhs = fiber.mul(d, &fiber.sub(p, q).unwrap());
                    assert_eq!(lhs, rhs);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 200, "{checked}");
}

#[test]
fn fiber_type_at_cusp() {
    let f = FibrationModel::new(RatFn::zero(), RatFn::t()).unwrap();
    let ft = f.fiber_type(&r(0)).unwrap();
    assert_eq!(ft.ord_disc, 2);
    assert_eq!(ft.ord_c4, None);
    assert_eq!(ft.label, FiberLabel::II);
}
