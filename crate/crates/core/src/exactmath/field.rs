use std::fmt;

use super::Rat;

/// Exact field arithmetic over a value-carried context.
///
/// Elements of a number field carry their defining field, so constants are
/// produced relative to an existing element (`zero_like`, `embed`) rather than
/// from a global context.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// The image of a rational in the field of `self`.
    fn embed(&self, r: &Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    /// Degree of the field over ℚ when it is a number field.
    fn degree_over_q(&self) -> Option<usize>;
    /// `Some(r)` when the element is the image of a rational.
    fn as_rational(&self) -> Option<Rat>;

    fn is_one(&self) -> bool {
        self.minus(&self.one_like()).is_zero()
    }

    fn square(&self) -> Self {
        self.times(self)
    }

    fn scale_int(&self, n: i64) -> Self {
        self.times(&self.embed(&Rat::from_int(n)))
    }

    fn divided(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.times(&inv))
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }
}

impl Field for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn embed(&self, r: &Rat) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.recip()
    }
    fn degree_over_q(&self) -> Option<usize> {
        Some(1)
    }
    fn as_rational(&self) -> Option<Rat> {
        Some(self.clone())
    }
    fn is_one(&self) -> bool {
        Rat::is_one(self)
    }
}
