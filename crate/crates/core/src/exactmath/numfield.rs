use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::factor::small_factors;
use super::{squarefree_part, ExactError, Field, Poly, Rat};

/// A number field ℚ[α]/(m(α)) of degree at most four.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NumField {
    minpoly: Poly,
}

impl NumField {
    pub const MAX_DEGREE: usize = 4;

    /// Builds the field defined by `minpoly` (made monic), checking
    /// irreducibility with the rational-root test and, in degree four, the
    /// quadratic-factor search.
    pub fn new(minpoly: &Poly) -> Result<Arc<Self>, ExactError> {
        let m = minpoly.monic();
        let d = m.degree().ok_or(ExactError::ZeroInput)?;
        if d == 0 || d > Self::MAX_DEGREE {
            return Err(ExactError::FieldDegree(d));
        }
        if d > 1 {
            if squarefree_part(&m)? != m {
                return Err(ExactError::Reducible);
            }
            let sf = small_factors(&m);
            if !sf.linear.is_empty() || (d == 4 && !sf.quadratic.is_empty()) {
                return Err(ExactError::Reducible);
            }
        }
        Ok(Arc::new(NumField { minpoly: m }))
    }

    /// ℚ(√d) for a non-square rational `d`.
    pub fn quadratic(d: &Rat) -> Result<Arc<Self>, ExactError> {
        NumField::new(&Poly::from_rats(&[-d, Rat::zero(), Rat::one()]))
    }

    pub fn minpoly(&self) -> &Poly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }

    pub fn generator(self: &Arc<Self>) -> NfElem {
        NfElem::from_poly(self, Poly::t())
    }

    pub fn from_rat(self: &Arc<Self>, r: &Rat) -> NfElem {
        NfElem::from_poly(self, Poly::constant(r.clone()))
    }
}

impl fmt::Display for NumField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[a]/({})", self.minpoly.display("a"))
    }
}

/// An element of a [`NumField`], stored as its reduced residue polynomial.
#[derive(Clone, Debug)]
pub struct NfElem {
    field: Arc<NumField>,
    value: Poly,
}

impl NfElem {
    pub fn from_poly(field: &Arc<NumField>, p: Poly) -> Self {
        let value = p.rem(&field.minpoly);
        NfElem {
            field: Arc::clone(field),
            value,
        }
    }

    pub fn field(&self) -> &Arc<NumField> {
        &self.field
    }

    /// Coordinates in the power basis `1, α, α², …`, padded to the degree.
    pub fn coordinates(&self) -> Vec<Rat> {
        let mut c = self.value.coeffs().to_vec();
        c.resize(self.field.degree(), Rat::zero());
        c
    }

    pub fn residue(&self) -> &Poly {
        &self.value
    }

    /// Image under α ↦ ᾱ, the other root; quadratic fields only.
    pub fn conjugate(&self) -> Option<Self> {
        if self.field.degree() != 2 {
            return None;
        }
        // ᾱ = -m₁ - α for m = α² + m₁α + m₀
        let m1 = self.field.minpoly.coeff(1).cloned().unwrap_or_else(Rat::zero);
        let alpha_bar = Poly::from_rats(&[-m1, -Rat::one()]);
        Some(NfElem::from_poly(&self.field, self.value.compose(&alpha_bar)))
    }

    pub fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }

    fn check(&self, other: &Self) {
        assert!(self.same_field(other), "mixed number fields");
    }
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.value == other.value
    }
}

impl Eq for NfElem {}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value.display("a"))
    }
}

impl Field for NfElem {
    fn zero_like(&self) -> Self {
        NfElem::from_poly(&self.field, Poly::zero())
    }
    fn one_like(&self) -> Self {
        NfElem::from_poly(&self.field, Poly::one())
    }
    fn embed(&self, r: &Rat) -> Self {
        self.field.from_rat(r)
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.check(rhs);
        NfElem {
            field: Arc::clone(&self.field),
            value: &self.value + &rhs.value,
        }
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.check(rhs);
        NfElem {
            field: Arc::clone(&self.field),
            value: &self.value - &rhs.value,
        }
    }
    fn times(&self, rhs: &Self) -> Self {
        self.check(rhs);
        NfElem::from_poly(&self.field, &self.value * &rhs.value)
    }
    fn negated(&self) -> Self {
        NfElem {
            field: Arc::clone(&self.field),
            value: -&self.value,
        }
    }
    fn inverse(&self) -> Option<Self> {
        if self.value.is_zero() {
            return None;
        }
        let (g, s, _) = self.value.ext_gcd(&self.field.minpoly);
        debug_assert!(g.degree() == Some(0));
        Some(NfElem::from_poly(&self.field, s))
    }
    fn degree_over_q(&self) -> Option<usize> {
        Some(self.field.degree())
    }
    fn as_rational(&self) -> Option<Rat> {
        match self.value.degree() {
            None => Some(Rat::zero()),
            Some(0) => Some(self.value.coeffs()[0].clone()),
            Some(_) => None,
        }
    }
}

/// A square root of a rational: rational, or the element `r·√d` of the
/// field ℚ(√d) with `d` free of small square factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SquareRoot {
    Rational(Rat),
    Quadratic(NfElem),
}

const SQUARE_STRIP_LIMIT: u32 = 10_000;

/// `√v`, choosing a canonical defining polynomial `x² − d` so that equal
/// radicands up to small squares share one field.
pub fn sqrt_rat(v: &Rat) -> SquareRoot {
    if let Some(r) = v.sqrt_exact() {
        return SquareRoot::Rational(r);
    }
    // v = n/m  ⇒  √v = √(n·m)/m
    let mut d = v.numer() * v.denom();
    let mut r = BigInt::one();
    let mut p = 2u32;
    while p < SQUARE_STRIP_LIMIT {
        let pp = BigInt::from(p * p);
        if pp > d.abs() {
            break;
        }
        while (&d % &pp).is_zero() {
            d /= &pp;
            r *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let k = NumField::quadratic(&Rat::from_bigint(d)).expect("non-square radicand");
    let scale = &Rat::from_bigint(r) / &Rat::from_bigint(v.denom().clone());
    SquareRoot::Quadratic(k.generator().times(&k.from_rat(&scale)))
}

/// Both roots of an irreducible monic quadratic `x² + b·x + c`, in a
/// canonical field ℚ(√d); the second is the conjugate of the first.
pub fn quadratic_roots(g: &Poly) -> Option<(NfElem, NfElem)> {
    if g.degree() != Some(2) {
        return None;
    }
    let g = g.monic();
    let b = g.coeffs()[1].clone();
    let c = g.coeffs()[0].clone();
    let disc = &(&b * &b) - &(&Rat::from_int(4) * &c);
    let SquareRoot::Quadratic(root) = sqrt_rat(&disc) else {
        return None;
    };
    let half = Rat::frac(1, 2);
    let k = Arc::clone(root.field());
    let mid = k.from_rat(&(-&(&b * &half)));
    let h = root.times(&k.from_rat(&half));
    Some((mid.plus(&h), mid.minus(&h)))
}
