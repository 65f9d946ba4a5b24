//! Operations specific to polynomials over ℚ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::factor::{primitive_integer, small_factors};
use super::{ExactError, Poly, Rat};

impl Poly<Rat> {
    pub fn from_ints(c: &[i64]) -> Self {
        Poly::from_coeffs(c.iter().map(|&x| Rat::from_int(x)).collect())
    }

    pub fn from_rats(c: &[Rat]) -> Self {
        Poly::from_coeffs(c.to_vec())
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn one() -> Self {
        Poly::from_ints(&[1])
    }

    /// Multiplicity of `root` as a root of a nonzero polynomial.
    pub fn root_multiplicity(&self, root: &Rat) -> usize {
        let lin = Poly::linear_from_root(root);
        let mut q = self.clone();
        let mut m = 0;
        while !q.is_zero() {
            match q.exact_div(&lin) {
                Some(next) => {
                    q = next;
                    m += 1;
                }
                None => break,
            }
        }
        m
    }

    /// `t ↦ 1/t` reversal at formal degree `deg`: `t^deg · p(1/t)`.
    pub fn reversed(&self, deg: usize) -> Self {
        assert!(self.degree().is_none_or(|d| d <= deg), "formal degree too small");
        let mut c = vec![Rat::zero(); deg + 1];
        for (i, x) in self.coeffs().iter().enumerate() {
            c[deg - i] = x.clone();
        }
        Poly::from_coeffs(c)
    }
}

/// Monic greatest common divisor via the subresultant remainder sequence.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly, ExactError> {
    if a.is_zero() && b.is_zero() {
        return Err(ExactError::BothZero);
    }
    if a.is_zero() {
        return Ok(b.monic());
    }
    if b.is_zero() {
        return Ok(a.monic());
    }
    let (x, y) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
    let g = subresultant_gcd(&primitive_integer(x), &primitive_integer(y));
    Ok(int_poly(&g).monic())
}

fn int_poly(c: &[BigInt]) -> Poly {
    Poly::from_coeffs(c.iter().map(|x| Rat::from_bigint(x.clone())).collect())
}

fn int_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn int_content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn int_primitive(v: &[BigInt]) -> Vec<BigInt> {
    let c = int_content(v);
    if c.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b` over ℤ.
fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut steps = (a.len() - db) as u32;
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        r = int_trim(r);
        steps -= 1;
    }
    let factor = num_traits::pow(lb.clone(), steps as usize);
    r.iter().map(|x| x * &factor).collect()
}

fn subresultant_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = int_primitive(a);
    let mut b = int_primitive(b);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = int_trim(int_prem(&a, &b));
        if r.is_empty() {
            return int_primitive(&b);
        }
        if r.len() == 1 {
            return vec![BigInt::one()];
        }
        let divisor = &g * num_traits::pow(h.clone(), delta as usize);
        a = b;
        b = r.iter().map(|x| x / &divisor).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            let num = num_traits::pow(g.clone(), delta as usize);
            let den = num_traits::pow(h.clone(), (delta - 1) as usize);
            num / den
        };
    }
}

/// Resultant `res(p, q)` over ℚ.
pub fn resultant(p: &Poly, q: &Poly) -> Result<Rat, ExactError> {
    if p.is_zero() || q.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    let mut a = p.clone();
    let mut b = q.clone();
    let mut acc = Rat::one();
    loop {
        let m = a.degree().unwrap();
        let n = b.degree().unwrap();
        if n == 0 {
            return Ok(&acc * &b.lead().unwrap().pow(m as u32));
        }
        if m == 0 {
            return Ok(&acc * &a.lead().unwrap().pow(n as u32));
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return Ok(Rat::zero());
        }
        let k = r.degree().unwrap();
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc = &acc * &b.lead().unwrap().pow((m - k) as u32);
        a = b;
        b = r;
    }
}

/// Discriminant `(-1)^(d(d-1)/2) res(p, p') / lc(p)`.
pub fn discriminant(p: &Poly) -> Result<Rat, ExactError> {
    let d = p.degree().ok_or(ExactError::ZeroInput)?;
    if d == 0 {
        return Err(ExactError::ConstantInput);
    }
    let res = resultant(p, &p.derivative())?;
    let sign = if (d * (d - 1) / 2) % 2 == 1 { -Rat::one() } else { Rat::one() };
    Ok(&(&sign * &res) / p.lead().unwrap())
}

/// Yun's squarefree decomposition: `p = lead · ∏ fᵢ^mᵢ` with monic,
/// squarefree, pairwise coprime `fᵢ` and increasing multiplicities.
pub fn squarefree_decompose(p: &Poly) -> Result<Vec<(Poly, usize)>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    let f = p.monic();
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return Ok(out);
    }
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df)?;
    let mut b = f.exact_div(&a0).unwrap();
    let c = df.exact_div(&a0).unwrap();
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = if d.is_zero() { b.clone() } else { poly_gcd(&b, &d)? };
        let nb = b.exact_div(&a).unwrap();
        let nc = d.exact_div(&a).unwrap();
        d = &nc - &nb.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    Ok(out)
}

/// `p / gcd(p, p')`, monic.
pub fn squarefree_part(p: &Poly) -> Result<Poly, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    let g = poly_gcd(p, &p.derivative())?;
    Ok(p.exact_div(&g).unwrap().monic())
}

/// All rational roots with multiplicities, ascending.
pub fn rational_roots(p: &Poly) -> Result<Vec<(Rat, usize)>, ExactError> {
    let parts = squarefree_decompose(p)?;
    let mut roots = Vec::new();
    for (f, m) in parts {
        for lin in small_factors(&f).linear {
            roots.push((-&lin.coeffs()[0], m));
        }
    }
    roots.sort();
    Ok(roots)
}

/// Irreducible quadratic factors over ℚ of `p`, with multiplicities.
pub fn quadratic_factors(p: &Poly) -> Result<Vec<(Poly, usize)>, ExactError> {
    let parts = squarefree_decompose(p)?;
    let mut out = Vec::new();
    for (f, m) in parts {
        for q in small_factors(&f).quadratic {
            out.push((q, m));
        }
    }
    Ok(out)
}

/// Lagrange interpolation through points with distinct abscissae.
pub fn interpolate(points: &[(Rat, Rat)]) -> Poly {
    // Newton divided differences
    let n = points.len();
    let mut coef: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = &points[i].0 - &points[i - j].0;
            coef[i] = &num / &den;
        }
    }
    let mut acc = Poly::zero();
    for i in (0..n).rev() {
        let lin = Poly::linear_from_root(&points[i].0);
        acc = &(&acc * &lin) + &Poly::constant(coef[i].clone());
    }
    acc
}

/// Integer content sign and scale: `p = c · prim` with `prim` primitive in
/// ℤ[t] and positive leading coefficient.
pub fn content_and_primitive(p: &Poly) -> (Rat, Poly) {
    if p.is_zero() {
        return (Rat::zero(), Poly::zero());
    }
    let prim = int_poly(&primitive_integer(p));
    let c = p.lead().unwrap() / prim.lead().unwrap();
    (c, prim)
}

/// Maximum absolute value over the numerators and denominators of the
/// coefficients; a coarse size measure for diagnostics.
pub fn coefficient_height(p: &Poly) -> BigInt {
    p.coeffs()
        .iter()
        .map(Rat::height)
        .max()
        .unwrap_or_else(BigInt::zero)
        .abs()
}

/// Human-readable form in the variable `var`, descending degree.
pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    var: &'a str,
}

impl Poly<Rat> {
    pub fn display<'a>(&'a self, var: &'a str) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, var }
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.poly.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() || i == 0 {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "({a})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "{}{}", if show_coeff { "*" } else { "" }, self.var)?,
                _ => write!(f, "{}{}^{}", if show_coeff { "*" } else { "" }, self.var, i)?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly<Rat> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly<Rat> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Poly::from_coeffs(Vec::<Rat>::deserialize(deserializer)?))
    }
}


/// Factorization of a nonzero polynomial into rational roots, irreducible
/// quadratics and a leftover part with no factor of degree ≤ 2.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LowDegreeSplit {
    pub roots: Vec<(Rat, usize)>,
    pub quadratics: Vec<(Poly, usize)>,
    /// Squarefree monic pieces, each with its multiplicity.
    pub leftover: Vec<(Poly, usize)>,
}

impl LowDegreeSplit {
    pub fn leftover_degree(&self) -> usize {
        self.leftover.iter().map(|(f, m)| f.degree().unwrap_or(0) * m).sum()
    }
}

pub fn split_low_degree(p: &Poly) -> Result<LowDegreeSplit, ExactError> {
    let mut out = LowDegreeSplit::default();
    for (f, m) in squarefree_decompose(p)? {
        let sf = small_factors(&f);
        let mut rest = f.clone();
        for lin in &sf.linear {
            out.roots.push((-&lin.coeffs()[0], m));
            rest = rest.exact_div(lin).unwrap();
        }
        for q in sf.quadratic {
            rest = rest.exact_div(&q).unwrap();
            out.quadratics.push((q, m));
        }
        if rest.degree().unwrap_or(0) > 0 {
            out.leftover.push((rest.monic(), m));
        }
    }
    out.roots.sort();
    Ok(out)
}

#[cfg(test)]
mod split_tests {
    use super::*;

    #[test]
    fn splits_mixed_product() {
        // (t-1)^2 (t-2) (t^2+1) (t^3-2)
        let p = Poly::from_ints(&[-1, 1]).pow(2)
            * Poly::from_ints(&[-2, 1])
            * Poly::from_ints(&[1, 0, 1])
            * Poly::from_ints(&[-2, 0, 0, 1]);
        let s = split_low_degree(&p).unwrap();
        assert_eq!(s.roots, vec![(Rat::one(), 2), (Rat::from_int(2), 1)]);
        assert_eq!(s.quadratics, vec![(Poly::from_ints(&[1, 0, 1]), 1)]);
        assert_eq!(s.leftover, vec![(Poly::from_ints(&[-2, 0, 0, 1]), 1)]);
        assert_eq!(s.leftover_degree(), 3);
        assert!(quadratic_factors(&Poly::from_ints(&[2, -3, 1])).unwrap().is_empty());
    }
}
