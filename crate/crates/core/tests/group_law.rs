use fibdense_core::elliptic::{ec_add, ec_mul, naive_height, EllipticCurve, Point};
use fibdense_core::exactmath::{Field, Rat};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=5).prop_map(|(p, q)| Rat::frac(p, q))
}

/// A curve through two given points, with both points; `None` when the
/// points share an x-coordinate or the curve is singular.
fn curve_through(x1: Rat, y1: Rat, x2: Rat, y2: Rat) -> Option<(EllipticCurve, Point, Point)> {
    if x1 == x2 {
        return None;
    }
    let c1 = &y1.square() - &x1.pow(3);
    let c2 = &y2.square() - &x2.pow(3);
    let a = &(&c1 - &c2) / &(&x1 - &x2);
    let b = &c1 - &(&a * &x1);
    let e = EllipticCurve::new(a, b).ok()?;
    Some((e, Point::Affine(x1, y1), Point::Affine(x2, y2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn abelian_group_axioms(x1 in rat(), y1 in rat(), x2 in rat(), y2 in rat(), m in -3i64..=3, n in -3i64..=3) {
        let Some((e, p, q)) = curve_through(x1, y1, x2, y2) else { return Ok(()) };
        let s = e.add(&e.mul(m, &p), &e.mul(n, &q));
        prop_assert!(e.contains(&s));
        prop_assert_eq!(e.add(&p, &q), e.add(&q, &p));
        prop_assert_eq!(e.add(&e.add(&p, &q), &s), e.add(&p, &e.add(&q, &s)));
        prop_assert_eq!(e.add(&s, &Point::Infinity), s.clone());
        prop_assert!(e.add(&s, &e.neg(&s)).is_infinity());
        prop_assert_eq!(e.double(&p), e.add(&p, &p));
        // [m + n]P = [m]P + [n]P
        prop_assert_eq!(e.mul(m + n, &p), e.add(&e.mul(m, &p), &e.mul(n, &p)));
        prop_assert_eq!(ec_mul(&e, m, &p).unwrap(), e.mul(m, &p));
    }

    #[test]
    fn checked_add_rejects_off_curve(x1 in rat(), y1 in rat(), x2 in rat(), y2 in rat(), dy in rat()) {
        let Some((e, p, _)) = curve_through(x1.clone(), y1.clone(), x2, y2) else { return Ok(()) };
        prop_assume!(!dy.is_zero());
        let off = Point::Affine(x1, &y1 + &dy);
        prop_assume!(!e.contains(&off));
        prop_assert!(ec_add(&e, &p, &off).is_err());
    }
}

#[test]
fn height_of_known_points() {
    let p = Point::Affine(Rat::frac(-7, 16), Rat::frac(-13, 64));
    assert_eq!(naive_height(&p), 16.into());
    assert_eq!(naive_height(&Point::Infinity), 0.into());
}
