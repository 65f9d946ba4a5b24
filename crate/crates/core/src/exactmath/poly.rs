use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Rat};

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The zero polynomial has no coefficients; otherwise the last coefficient is
/// nonzero. `Poly` without a parameter is a polynomial over ℚ.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly<F = Rat> {
    coeffs: Vec<F>,
}

impl<F: Field> Default for Poly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Field::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · x^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![c.zero_like(); k];
        coeffs.push(c);
        Poly { coeffs }
    }

    /// The polynomial `x - root`.
    pub fn linear_from_root(root: &F) -> Self {
        Poly {
            coeffs: vec![root.negated(), root.one_like()],
        }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg_i(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.coeffs.get(i)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|x| x.times(c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        match self.coeffs.first() {
            None => Self::zero(),
            Some(c0) => {
                let mut coeffs = vec![c0.zero_like(); k];
                coeffs.extend(self.coeffs.iter().cloned());
                Poly { coeffs }
            }
        }
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.inverse().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(Field::is_one)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale_int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    /// Horner evaluation at a point of another field, lifting coefficients.
    pub fn eval_with<E: Field>(&self, x: &E, lift: impl Fn(&F) -> E) -> E {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(&lift(c));
        }
        acc
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c.clone());
        }
        acc
    }

    /// Euclidean division; `None` when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dl = divisor.lead()?;
        let dinv = dl.inverse()?;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() < divisor.coeffs.len() {
            return Some((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let zero = dl.zero_like();
        let mut quot = vec![zero.clone(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].times(&dinv);
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].minus(&c.times(dc));
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact quotient, `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).expect("nonzero divisor").1
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic gcd by the Euclidean algorithm over the coefficient field.
    pub fn gcd_euclid(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let one = self
            .lead()
            .or(other.lead())
            .map(|c| Self::constant(c.one_like()))
            .unwrap_or_default();
        let (mut s0, mut s1) = (one.clone(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead().and_then(Field::inverse) {
            Some(inv) => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
            None => (r0, s0, t0),
        }
    }

    /// `self / gcd(self, self')`, made monic.
    pub fn squarefree_part_euclid(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd_euclid(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    pub fn pow(&self, exp: u32) -> Self {
        // the zero polynomial has no field context for a constant 1
        let mut acc = match self.coeffs.first() {
            Some(c) => Self::constant(c.one_like()),
            None => return Self::zero(),
        };
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(short.coeffs.iter()) {
            *o = o.plus(c);
        }
        Poly::from_coeffs(out)
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly {
            coeffs: self.coeffs.iter().map(Field::negated).collect(),
        }
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Poly::from_coeffs(out)
    }
}

macro_rules! owned_poly_ops {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                $tr::$m(&self, &rhs)
            }
        }
        impl<F: Field> $tr<&Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: &Poly<F>) -> Poly<F> {
                $tr::$m(&self, rhs)
            }
        }
    };
}

owned_poly_ops!(Add, add);
owned_poly_ops!(Sub, sub);
owned_poly_ops!(Mul, mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| Rat::from_int(x)).collect())
    }

    #[test]
    fn trims_and_degrees() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
        assert_eq!(Poly::<Rat>::zero().degree(), None);
    }

    #[test]
    fn division_identity() {
        let a = p(&[-1, 0, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 2, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, p(&[1, 1]));
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn compose_and_eval() {
        let a = p(&[1, 0, 1]);
        let b = p(&[2, 3]);
        let c = a.compose(&b);
        for x in -3..4 {
            let xr = Rat::from_int(x);
            assert_eq!(c.eval(&xr), a.eval(&b.eval(&xr)));
        }
    }
}
