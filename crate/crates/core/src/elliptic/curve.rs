use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::EllipticError;
use crate::exactmath::{Field, Rat};

/// `y² = x³ + a·x + b` over the field of `a` and `b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EllipticCurve<F = Rat> {
    a: F,
    b: F,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Point<F = Rat> {
    Infinity,
    Affine(F, F),
}

impl<F: Field> Point<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            Point::Affine(x, _) => Some(x),
            Point::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            Point::Affine(_, y) => Some(y),
            Point::Infinity => None,
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Point<G> {
        match self {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(f(x), f(y)),
        }
    }

    /// The point over ℚ when both coordinates are rational.
    pub fn as_rational(&self) -> Option<Point<Rat>> {
        match self {
            Point::Infinity => Some(Point::Infinity),
            Point::Affine(x, y) => Some(Point::Affine(x.as_rational()?, y.as_rational()?)),
        }
    }
}

impl fmt::Display for Point<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "inf"),
            Point::Affine(x, y) => write!(f, "[{x}, {y}]"),
        }
    }
}

impl<F: Field> EllipticCurve<F> {
    pub fn new(a: F, b: F) -> Result<Self, EllipticError> {
        let e = EllipticCurve { a, b };
        if e.delta_core().is_zero() {
            return Err(EllipticError::SingularCurve);
        }
        Ok(e)
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    // 4a³ + 27b²
    fn delta_core(&self) -> F {
        self.a.pow(3).scale_int(4).plus(&self.b.square().scale_int(27))
    }

    /// `−16(4a³ + 27b²)`.
    pub fn discriminant(&self) -> F {
        self.delta_core().scale_int(-16)
    }

    /// `1728 · 4a³ / (4a³ + 27b²)`.
    pub fn j_invariant(&self) -> F {
        let a3 = self.a.pow(3).scale_int(4);
        a3.scale_int(1728).divided(&self.delta_core()).expect("nonsingular")
    }

    pub fn rhs(&self, x: &F) -> F {
        x.square().plus(&self.a).times(x).plus(&self.b)
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => y.square() == self.rhs(x),
        }
    }

    pub fn check(&self, p: &Point<F>) -> Result<(), EllipticError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(EllipticError::PointNotOnCurve)
        }
    }

    pub fn neg(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), y.negated()),
        }
    }

    /// Group sum without the on-curve check.
    pub fn add(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if y1.plus(y2).is_zero() {
                return Point::Infinity;
            }
            // tangent slope (3x² + a) / 2y
            x1.square().scale_int(3).plus(&self.a).divided(&y1.scale_int(2)).unwrap()
        } else {
            y2.minus(y1).divided(&x2.minus(x1)).unwrap()
        };
        let x3 = lambda.square().minus(x1).minus(x2);
        let y3 = lambda.times(&x1.minus(&x3)).minus(y1);
        Point::Affine(x3, y3)
    }

    pub fn sub(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        self.add(p, &self.neg(q))
    }

    pub fn double(&self, p: &Point<F>) -> Point<F> {
        self.add(p, p)
    }

    /// `n·p` by double-and-add, without the on-curve check.
    pub fn mul(&self, n: i64, p: &Point<F>) -> Point<F> {
        let mut acc = Point::Infinity;
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.double(&base);
            }
        }
        acc
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> EllipticCurve<G> {
        EllipticCurve {
            a: f(&self.a),
            b: f(&self.b),
        }
    }

    /// Sum of a point over an extension with its image under `sigma`.
    pub fn trace_with(&self, p: &Point<F>, sigma: impl Fn(&F) -> F) -> Point<F> {
        self.add(p, &p.map(sigma))
    }
}

impl EllipticCurve<Rat> {
    /// Points with the given x-coordinate, if `x³ + ax + b` is a square.
    pub fn lift_x(&self, x: &Rat) -> Vec<Point<Rat>> {
        let r = self.rhs(x);
        match r.sqrt_exact() {
            None => vec![],
            Some(y) if y.is_zero() => vec![Point::Affine(x.clone(), y)],
            Some(y) => vec![Point::Affine(x.clone(), -&y), Point::Affine(x.clone(), y)],
        }
    }
}

impl fmt::Display for EllipticCurve<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})*x + ({})", self.a, self.b)
    }
}

pub fn ec_add<F: Field>(e: &EllipticCurve<F>, p: &Point<F>, q: &Point<F>) -> Result<Point<F>, EllipticError> {
    e.check(p)?;
    e.check(q)?;
    Ok(e.add(p, q))
}

pub fn ec_mul<F: Field>(e: &EllipticCurve<F>, n: i64, p: &Point<F>) -> Result<Point<F>, EllipticError> {
    e.check(p)?;
    Ok(e.mul(n, p))
}

/// `max(|num x|, den x)`; zero at infinity.
pub fn naive_height(p: &Point<Rat>) -> BigInt {
    match p {
        Point::Infinity => BigInt::zero(),
        Point::Affine(x, _) => x.height(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: i64, b: i64) -> EllipticCurve {
        EllipticCurve::new(Rat::from_int(a), Rat::from_int(b)).unwrap()
    }

    fn pt(x: Rat, y: Rat) -> Point {
        Point::Affine(x, y)
    }

    fn ip(x: i64, y: i64) -> Point {
        pt(Rat::from_int(x), Rat::from_int(y))
    }

    #[test]
    fn two_torsion_sum() {
        let e = curve(-1, 0);
        assert_eq!(ec_add(&e, &ip(0, 0), &ip(1, 0)).unwrap(), ip(-1, 0));
        assert_eq!(ec_add(&e, &ip(1, 0), &ip(1, 0)).unwrap(), Point::Infinity);
        assert_eq!(ec_add(&e, &ip(1, 0), &Point::Infinity).unwrap(), ip(1, 0));
    }

    #[test]
    fn duplication() {
        let e = curve(2, 1);
        let d = ec_mul(&e, 2, &ip(1, 2)).unwrap();
        assert_eq!(d, pt(Rat::frac(-7, 16), Rat::frac(-13, 64)));
        assert_eq!(Rat::frac(-13, 64).pow(2), Rat::frac(169, 4096));
        assert_eq!(e.rhs(&Rat::frac(-7, 16)), Rat::frac(169, 4096));
        assert_eq!(naive_height(&d), BigInt::from(16));
        assert_eq!(ec_mul(&e, 0, &ip(1, 2)).unwrap(), Point::Infinity);
    }

    #[test]
    fn order_six_by_repeated_addition() {
        let e = curve(0, 1);
        let p = ip(2, 3);
        let mut acc = Point::Infinity;
        let mut seen = vec![];
        for _ in 0..6 {
            acc = e.add(&acc, &p);
            seen.push(acc.clone());
        }
        assert_eq!(seen[1], ip(0, 1));
        assert_eq!(seen[2], ip(-1, 0));
        assert_eq!(seen[5], Point::Infinity);
        assert_eq!(ec_mul(&e, 6, &p).unwrap(), Point::Infinity);
        assert_eq!(ec_mul(&e, -5, &p).unwrap(), p);
    }

    #[test]
    fn rejects_off_curve_and_singular() {
        let e = curve(0, 1);
        assert_eq!(ec_add(&e, &ip(1, 1), &Point::Infinity), Err(EllipticError::PointNotOnCurve));
        assert_eq!(
            EllipticCurve::new(Rat::from_int(-3), Rat::from_int(2)),
            Err(EllipticError::SingularCurve)
        );
    }

    #[test]
    fn heights_grow_along_multiples() {
        let e = curve(0, -2);
        let p = ip(3, 5);
        let hs: Vec<BigInt> = (1..=5).map(|n| naive_height(&e.mul(n, &p))).collect();
        assert!(hs.windows(2).all(|w| w[0] < w[1]), "{hs:?}");
    }

    #[test]
    fn j_of_standard_models() {
        assert_eq!(curve(-4, 0).j_invariant(), Rat::from_int(1728));
        assert_eq!(curve(0, 1).j_invariant(), Rat::zero());
    }
}
