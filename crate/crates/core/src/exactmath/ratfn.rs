use std::fmt;

use serde::{Deserialize, Serialize};

use super::{poly_gcd, ExactError, Field, Poly, Rat};

/// A reduced quotient of polynomials over ℚ with monic denominator; an
/// element of the function field ℚ(t).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFn::zero());
        }
        let g = poly_gcd(&num, &den)?;
        let num = num.exact_div(&g).unwrap();
        let den = den.exact_div(&g).unwrap();
        let l = den.lead().unwrap().clone();
        let inv = l.recip().unwrap();
        Ok(RatFn {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn zero() -> Self {
        RatFn {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFn::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RatFn::from_poly(Poly::constant(c))
    }

    /// The function `t`.
    pub fn t() -> Self {
        RatFn::from_poly(Poly::t())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn as_polynomial(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn is_constant(&self) -> bool {
        self.is_polynomial() && self.num.is_constant()
    }

    /// Degree as a map ℙ¹ → ℙ¹: `max(deg num, deg den)`.
    pub fn map_degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// `deg num - deg den`; the order of the pole at infinity.
    pub fn degree_at_infinity(&self) -> Option<isize> {
        if self.num.is_zero() {
            return None;
        }
        Some(self.num.deg_i() - self.den.deg_i())
    }

    /// Value at `x`, `None` at a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(x) / &d)
    }

    /// Value at a point of an extension field, `None` at a pole.
    pub fn eval_in<E: Field>(&self, x: &E) -> Option<E> {
        let d = self.den.eval_with(x, |c| x.embed(c));
        let inv = d.inverse()?;
        Some(self.num.eval_with(x, |c| x.embed(c)).times(&inv))
    }

    /// Limit as `t → ∞`, `None` if it is a pole.
    pub fn eval_at_infinity(&self) -> Option<Rat> {
        match self.degree_at_infinity() {
            None => Some(Rat::zero()),
            Some(d) if d > 0 => None,
            Some(d) if d < 0 => Some(Rat::zero()),
            Some(_) => Some(self.num.lead().unwrap() / self.den.lead().unwrap()),
        }
    }

    /// Order of vanishing at `x` (negative at poles); `None` for zero.
    pub fn order_at(&self, x: &Rat) -> Option<isize> {
        if self.num.is_zero() {
            return None;
        }
        Some(self.num.root_multiplicity(x) as isize - self.den.root_multiplicity(x) as isize)
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFn::new(n, &self.den * &self.den).unwrap()
    }

    /// `self(inner(s))`.
    pub fn compose(&self, inner: &RatFn) -> RatFn {
        let n = self.num.eval_with(inner, |c| RatFn::constant(c.clone()));
        let d = self.den.eval_with(inner, |c| RatFn::constant(c.clone()));
        n.times(&d.inverse().expect("composition through a pole of the denominator"))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        RatFn::new(self.num.scale(c), self.den.clone()).unwrap()
    }

    pub fn display<'a>(&'a self, var: &'a str) -> RatFnDisplay<'a> {
        RatFnDisplay { f: self, var }
    }
}

pub struct RatFnDisplay<'a> {
    f: &'a RatFn,
    var: &'a str,
}

impl fmt::Display for RatFnDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f.is_polynomial() {
            write!(f, "{}", self.f.num.display(self.var))
        } else {
            write!(f, "({}) / ({})", self.f.num.display(self.var), self.f.den.display(self.var))
        }
    }
}

impl Field for RatFn {
    fn zero_like(&self) -> Self {
        RatFn::zero()
    }
    fn one_like(&self) -> Self {
        RatFn::one()
    }
    fn embed(&self, r: &Rat) -> Self {
        RatFn::constant(r.clone())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return RatFn::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFn::new(n, &self.den * &rhs.den).unwrap()
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFn::from_poly(&self.num * &rhs.num);
        }
        RatFn::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
    fn negated(&self) -> Self {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
    fn inverse(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(RatFn::new(self.den.clone(), self.num.clone()).unwrap())
    }
    fn degree_over_q(&self) -> Option<usize> {
        None
    }
    fn as_rational(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.num.coeff(0).cloned().unwrap_or_else(Rat::zero))
        } else {
            None
        }
    }
}

/// Wire form `{"num": [...], "den": [...]}` with `den` defaulting to `["1"]`.
#[derive(Serialize, Deserialize)]
struct RatFnWire {
    num: Poly,
    #[serde(default = "Poly::one")]
    den: Poly,
}

impl Serialize for RatFn {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RatFnWire {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatFn {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let w = RatFnWire::deserialize(deserializer)?;
        RatFn::new(w.num, w.den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalizes() {
        // (2t^2 - 2) / (2t - 2) = t + 1
        let f = RatFn::new(Poly::from_ints(&[-2, 0, 2]), Poly::from_ints(&[-2, 2])).unwrap();
        assert_eq!(f, RatFn::from_poly(Poly::from_ints(&[1, 1])));
        let g = RatFn::new(Poly::from_ints(&[1]), Poly::from_ints(&[0, 3])).unwrap();
        assert!(g.denom().is_monic());
        assert_eq!(g.eval(&Rat::from_int(0)), None);
        assert_eq!(g.eval(&Rat::from_int(1)), Some(Rat::frac(1, 3)));
        assert_eq!(g.order_at(&Rat::zero()), Some(-1));
    }

    #[test]
    fn compose_and_derivative() {
        // f(t) = 1/t, f(f(t)) = t
        let f = RatFn::new(Poly::one(), Poly::t()).unwrap();
        assert_eq!(f.compose(&f), RatFn::t());
        // d/dt (t^3 + 1)/t = (2t^3 - 1)/t^2
        let g = RatFn::new(Poly::from_ints(&[1, 0, 0, 1]), Poly::t()).unwrap();
        assert_eq!(
            g.derivative(),
            RatFn::new(Poly::from_ints(&[-1, 0, 0, 2]), Poly::from_ints(&[0, 0, 1])).unwrap()
        );
    }

    #[test]
    fn wire_roundtrip() {
        let f: RatFn = serde_json::from_str(r#"{"num": ["0", "1"]}"#).unwrap();
        assert_eq!(f, RatFn::t());
        assert!(serde_json::from_str::<RatFn>(r#"{"num": ["1"], "den": []}"#).is_err());
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<RatFn>(&s).unwrap(), f);
    }
}
