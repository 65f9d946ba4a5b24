use super::{EllipticCurve, EllipticError, Point};
use crate::exactmath::{Field, Poly, Rat};

/// A rational point used to pin a Weierstrass model on a quartic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MarkedPoint<F = Rat> {
    Finite { z: F, w: F },
    /// The branch at infinity where `w / z² → root`, with `root² = q4`
    /// (`root = 0` selects the single point at infinity of a cubic).
    InfinityBranch { root: F },
}

/// A point of the smooth model of `w² = Q(z)`; points at infinity are named
/// by the limit of `w / z²`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QuarticPoint<F = Rat> {
    Affine(F, F),
    AtInfinity(F),
}

/// `w² = q4·z⁴ + q3·z³ + q2·z² + q1·z + q0`, coefficients stored ascending.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuarticModel<F = Rat> {
    q: [F; 5],
    marked: Option<MarkedPoint<F>>,
}

impl<F: Field> QuarticModel<F> {
    pub fn new(q: [F; 5], marked: Option<MarkedPoint<F>>) -> Result<Self, EllipticError> {
        let p = Poly::from_coeffs(q.to_vec());
        if p.degree().is_none_or(|d| d < 3) {
            return Err(EllipticError::DegenerateQuartic);
        }
        if p.gcd_euclid(&p.derivative()).degree() != Some(0) {
            return Err(EllipticError::NotSquarefree);
        }
        let model = QuarticModel { q, marked };
        if let Some(m) = &model.marked {
            let on = match m {
                MarkedPoint::Finite { z, w } => model.contains(&QuarticPoint::Affine(z.clone(), w.clone())),
                MarkedPoint::InfinityBranch { root } => model.contains(&QuarticPoint::AtInfinity(root.clone())),
            };
            if !on {
                return Err(EllipticError::PointNotOnCurve);
            }
        }
        Ok(model)
    }

    pub fn coeffs(&self) -> &[F; 5] {
        &self.q
    }

    pub fn marked(&self) -> Option<&MarkedPoint<F>> {
        self.marked.as_ref()
    }

    pub fn poly(&self) -> Poly<F> {
        Poly::from_coeffs(self.q.to_vec())
    }

    pub fn eval(&self, z: &F) -> F {
        self.poly().eval(z)
    }

    pub fn contains(&self, p: &QuarticPoint<F>) -> bool {
        match p {
            QuarticPoint::Affine(z, w) => w.square() == self.eval(z),
            QuarticPoint::AtInfinity(r) => r.square() == self.q[4],
        }
    }

    /// j-invariant from the invariants `I`, `J` of the binary quartic;
    /// independent of any choice of point.
    pub fn j_invariant(&self) -> F {
        let [e, d, c, b, a] = &self.q;
        let i = a.times(e).scale_int(12).minus(&b.times(d).scale_int(3)).plus(&c.square());
        let j = a
            .times(c)
            .times(e)
            .scale_int(72)
            .plus(&b.times(c).times(d).scale_int(9))
            .minus(&a.times(&d.square()).scale_int(27))
            .minus(&e.times(&b.square()).scale_int(27))
            .minus(&c.pow(3).scale_int(2));
        let i3 = i.pow(3).scale_int(4);
        i3.scale_int(1728).divided(&i3.minus(&j.square())).expect("squarefree quartic")
    }
}

impl QuarticModel<Rat> {
    /// The infinity branch `w/z² → sign·√q4` when `q4` is a rational square.
    pub fn rational_infinity_branch(q: &[Rat; 5], sign: i32) -> Option<MarkedPoint<Rat>> {
        let r = q[4].sqrt_exact()?;
        Some(MarkedPoint::InfinityBranch {
            root: if sign < 0 { -r } else { r },
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Core<F> {
    /// `w² = s²z⁴ + …`, marked branch `w/z² → s`.
    Branch { s: F, beta: F, big_a: F, delta: F, q0: F, q1: F, q2: F },
    /// `w² = c3·z³ + c2·z² + c1·z + c0`, marked point at infinity.
    Cubic { c3: F, c2: F },
}

/// A Weierstrass model of a pointed quartic with explicit mutually inverse
/// maps. The marked point goes to infinity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuarticToWeierstrass<F = Rat> {
    model: QuarticModel<F>,
    curve: EllipticCurve<F>,
    /// `Some(z0)`: coordinates were first moved by `z = z0 + 1/z'`, `w = w'/z'²`.
    shift: Option<F>,
    core: Core<F>,
}

pub fn quartic_to_weierstrass<F: Field>(model: &QuarticModel<F>) -> Result<QuarticToWeierstrass<F>, EllipticError> {
    let marked = model.marked.clone().ok_or(EllipticError::NoMarkedPoint)?;
    let (shift, p, root) = match marked {
        MarkedPoint::InfinityBranch { root } => (None, model.q.clone(), root),
        MarkedPoint::Finite { z, w } => {
            let moved = model.poly().compose(&Poly::from_coeffs(vec![z.clone(), z.one_like()]));
            let zero = z.zero_like();
            let c = |k: usize| moved.coeff(k).cloned().unwrap_or_else(|| zero.clone());
            (Some(z), [c(4), c(3), c(2), c(1), c(0)], w)
        }
    };
    let [q0, q1, q2, q3, q4] = p;
    let unit = q0.one_like();
    let k = |n: i64, d: i64| unit.embed(&Rat::frac(n, d));
    let (core, a2, a4, a6) = if q4.is_zero() {
        let (c3, c2, c1, c0) = (q3, q2, q1, q0);
        let a4 = c1.times(&c3);
        let a6 = c0.times(&c3.square());
        (Core::Cubic { c3, c2: c2.clone() }, c2, a4, a6)
    } else {
        let s = root;
        let two_s = s.scale_int(2);
        let beta = q3.divided(&two_s).unwrap();
        let big_a = q2.minus(&beta.square());
        let gamma = big_a.divided(&two_s).unwrap();
        let delta = q1.minus(&beta.times(&gamma).scale_int(2)).divided(&two_s).unwrap();
        let s2 = s.square();
        let a2 = q2.scale_int(4);
        let a4 = q1.times(&q3).scale_int(2).minus(&s2.times(&q0).scale_int(8)).scale_int(8);
        let a6 = s2.times(&q1.square().minus(&big_a.times(&q0).scale_int(4))).scale_int(64);
        let core = Core::Branch { s, beta, big_a, delta, q0, q1, q2 };
        (core, a2, a4, a6)
    };
    // complete the cube: x = X + a2/3
    let a = a4.minus(&a2.square().times(&k(1, 3)));
    let b = a6.minus(&a2.times(&a4).times(&k(1, 3))).plus(&a2.pow(3).times(&k(2, 27)));
    let curve = EllipticCurve::new(a, b)?;
    Ok(QuarticToWeierstrass {
        model: model.clone(),
        curve,
        shift,
        core,
    })
}

impl<F: Field> QuarticToWeierstrass<F> {
    pub fn curve(&self) -> &EllipticCurve<F> {
        &self.curve
    }

    pub fn model(&self) -> &QuarticModel<F> {
        &self.model
    }

    fn k(&self, n: i64, d: i64) -> F {
        self.curve.a().embed(&Rat::frac(n, d))
    }

    fn a2_third(&self) -> F {
        match &self.core {
            Core::Branch { q2, .. } => q2.times(&self.k(4, 3)),
            Core::Cubic { c2, .. } => c2.times(&self.k(1, 3)),
        }
    }

    fn to_core(&self, p: &QuarticPoint<F>) -> QuarticPoint<F> {
        let Some(z0) = &self.shift else {
            return p.clone();
        };
        match p {
            QuarticPoint::AtInfinity(r) => QuarticPoint::Affine(r.zero_like(), r.clone()),
            QuarticPoint::Affine(z, w) => {
                let dz = z.minus(z0);
                match dz.inverse() {
                    None => QuarticPoint::AtInfinity(w.clone()),
                    Some(zp) => {
                        let wp = w.times(&zp.square());
                        QuarticPoint::Affine(zp, wp)
                    }
                }
            }
        }
    }

    fn uncenter(&self, p: QuarticPoint<F>) -> QuarticPoint<F> {
        let Some(z0) = &self.shift else {
            return p;
        };
        match p {
            QuarticPoint::AtInfinity(r) => QuarticPoint::Affine(z0.clone(), r),
            QuarticPoint::Affine(zp, wp) => match zp.inverse() {
                None => QuarticPoint::AtInfinity(wp),
                Some(inv) => QuarticPoint::Affine(z0.plus(&inv), wp.times(&inv.square())),
            },
        }
    }

    /// Image of the second infinity branch of the core model, when there is one.
    pub fn second_branch_image(&self) -> Option<Point<F>> {
        match &self.core {
            Core::Cubic { .. } => None,
            Core::Branch { s, big_a, delta, .. } => {
                let x = big_a.scale_int(-4).plus(&self.a2_third());
                let y = s.square().times(delta).scale_int(-16);
                Some(Point::Affine(x, y))
            }
        }
    }

    /// The quartic points sent to the two special curve points: the marked
    /// point to infinity and, for a quartic core, its partner branch.
    pub fn exceptional_set(&self) -> Vec<(QuarticPoint<F>, Point<F>)> {
        let mut out = vec![(self.inverse(&Point::Infinity), Point::Infinity)];
        if let Some(e2) = self.second_branch_image() {
            out.push((self.inverse(&e2), e2));
        }
        out
    }

    pub fn forward(&self, p: &QuarticPoint<F>) -> Result<Point<F>, EllipticError> {
        if !self.model.contains(p) {
            return Err(EllipticError::PointNotOnCurve);
        }
        let shift_x = self.a2_third();
        Ok(match (&self.core, self.to_core(p)) {
            (Core::Cubic { .. }, QuarticPoint::AtInfinity(_)) => Point::Infinity,
            (Core::Cubic { c3, .. }, QuarticPoint::Affine(z, w)) => Point::Affine(c3.times(&z).plus(&shift_x), c3.times(&w)),
            (Core::Branch { s, .. }, QuarticPoint::AtInfinity(r)) => {
                if &r == s {
                    Point::Infinity
                } else {
                    self.second_branch_image().unwrap()
                }
            }
            (Core::Branch { s, beta, big_a, q1, .. }, QuarticPoint::Affine(z, w)) => {
                let u = w.plus(&s.times(&z.square())).plus(&beta.times(&z));
                let lin = s.times(&u).scale_int(2).plus(big_a);
                let yu = lin.times(&z).scale_int(2).plus(&beta.times(&u).scale_int(2)).plus(q1);
                let eight_s = s.scale_int(8);
                Point::Affine(eight_s.times(&u).plus(&shift_x), eight_s.times(&yu))
            }
        })
    }

    pub fn inverse(&self, p: &Point<F>) -> QuarticPoint<F> {
        let core_pt = match (&self.core, p) {
            (Core::Cubic { .. }, Point::Infinity) => QuarticPoint::AtInfinity(self.curve.a().zero_like()),
            (Core::Cubic { c3, .. }, Point::Affine(x, y)) => {
                let inv = c3.inverse().unwrap();
                QuarticPoint::Affine(x.minus(&self.a2_third()).times(&inv), y.times(&inv))
            }
            (Core::Branch { s, .. }, Point::Infinity) => QuarticPoint::AtInfinity(s.clone()),
            (Core::Branch { s, beta, big_a, q0, q1, .. }, Point::Affine(x, y)) => {
                let inv8s = s.scale_int(8).inverse().unwrap();
                let u = x.minus(&self.a2_third()).times(&inv8s);
                let yu = y.times(&inv8s);
                let lin = s.times(&u).scale_int(2).plus(big_a);
                let bu = beta.times(&u).scale_int(2).plus(q1);
                let z = if !lin.is_zero() {
                    yu.minus(&bu).divided(&lin.scale_int(2)).unwrap()
                } else {
                    let den = yu.plus(&bu);
                    match den.inverse() {
                        Some(inv) => u.square().minus(q0).scale_int(2).times(&inv),
                        None => return self.uncenter(QuarticPoint::AtInfinity(s.negated())),
                    }
                };
                let w = u.minus(&s.times(&z.square())).minus(&beta.times(&z));
                QuarticPoint::Affine(z, w)
            }
        };
        self.uncenter(core_pt)
    }
}
