use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::EnriquesError;
use crate::exactmath::{discriminant, poly_gcd, quadratic_roots, split_low_degree, BiPoly, Field, NfElem, Poly, Rat};
use crate::fibration::ParamValue;

/// Exponent tuples `(e0, e1, e2, e3)` of degree 4, in descending
/// lexicographic order: `4000, 3100, 3010, 3001, 2200, …, 0004`.
pub fn cone_monomials() -> Vec<[u8; 4]> {
    let mut out = Vec::with_capacity(35);
    for e0 in (0..=4u8).rev() {
        for e1 in (0..=4 - e0).rev() {
            for e2 in (0..=4 - e0 - e1).rev() {
                out.push([e0, e1, e2, 4 - e0 - e1 - e2]);
            }
        }
    }
    out
}

fn monomial_index(e: [u8; 4]) -> Option<usize> {
    cone_monomials().iter().position(|m| *m == e)
}

fn parse_key(key: &str) -> Result<[u8; 4], EnriquesError> {
    let bad = || EnriquesError::BadMonomial(key.to_string());
    let digits: Vec<u8> = key
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as u8))
        .collect::<Option<_>>()
        .ok_or_else(bad)?;
    let e: [u8; 4] = digits.try_into().map_err(|_| bad())?;
    if e.iter().map(|&d| d as u32).sum::<u32>() != 4 {
        return Err(bad());
    }
    Ok(e)
}

/// A quartic form `B(z0, z1, z2, z3)` with dense coefficients in
/// [`cone_monomials`] order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConeQuartic {
    coeffs: Vec<Rat>,
}

impl ConeQuartic {
    pub fn zero() -> Self {
        ConeQuartic {
            coeffs: vec![Rat::zero(); 35],
        }
    }

    pub fn from_dense(coeffs: Vec<Rat>) -> Option<Self> {
        (coeffs.len() == 35).then_some(ConeQuartic { coeffs })
    }

    /// Sums the given terms; keys are `"e0e1e2e3"` strings.
    pub fn from_terms<'a>(terms: impl IntoIterator<Item = (&'a str, Rat)>) -> Result<Self, EnriquesError> {
        let mut q = ConeQuartic::zero();
        for (k, c) in terms {
            let i = monomial_index(parse_key(k)?).unwrap();
            q.coeffs[i] = &q.coeffs[i] + &c;
        }
        Ok(q)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, e: [u8; 4]) -> &Rat {
        &self.coeffs[monomial_index(e).expect("degree-4 exponent")]
    }

    pub fn eval<E: Field>(&self, z: [&E; 4]) -> E {
        let mut acc = z[0].zero_like();
        for (e, c) in cone_monomials().into_iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut term = z[0].embed(c);
            for (v, &k) in z.iter().zip(&e) {
                term = term.times(&v.pow(k as u32));
            }
            acc = acc.plus(&term);
        }
        acc
    }
}

impl Serialize for ConeQuartic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> = cone_monomials()
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e.iter().map(|d| d.to_string()).collect(), c.to_string()))
            .collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConeQuartic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let map = BTreeMap::<String, Rat>::deserialize(d)?;
        ConeQuartic::from_terms(map.iter().map(|(k, v)| (k.as_str(), v.clone()))).map_err(serde::de::Error::custom)
    }
}

/// The curve `R` in the chart `(z0, z1, z2, z3) = (1, t², t, z)` as
/// `F(t, z)`, together with the chart `(s², 1, s, z′)` around `t = ∞`,
/// where `s = 1/t` and `z′ = z/t²`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RamificationData {
    f: BiPoly,
    f_inf: BiPoly,
    c4: Rat,
    disc: Poly,
}

pub fn restrict_quartic_to_cone(b: &ConeQuartic) -> Result<RamificationData, EnriquesError> {
    let c4 = b.coeff([0, 0, 0, 4]).clone();
    if c4.is_zero() {
        return Err(EnriquesError::VertexOnQuartic);
    }
    let mut rows = vec![Poly::zero(); 5];
    let mut rows_inf = vec![Poly::zero(); 5];
    for (e, c) in cone_monomials().into_iter().zip(b.coeffs()) {
        let k = e[3] as usize;
        rows[k] = &rows[k] + &Poly::monomial(c.clone(), 2 * e[1] as usize + e[2] as usize);
        rows_inf[k] = &rows_inf[k] + &Poly::monomial(c.clone(), 2 * e[0] as usize + e[2] as usize);
    }
    let f = BiPoly::from_rows(rows);
    let f_inf = BiPoly::from_rows(rows_inf);
    debug_assert_eq!(f.main_degree(), Some(4));
    // the lead in z is a nonzero constant, so F is squarefree iff disc_z F ≢ 0
    let disc = f.discriminant_main()?;
    if disc.is_zero() {
        return Err(EnriquesError::NonReducedRamification);
    }
    Ok(RamificationData { f, f_inf, c4, disc })
}

impl RamificationData {
    /// Builds the data from `F(t, z)` directly; `deg_t` of the `z^k`
    /// coefficient must be at most `8 − 2k`.
    pub fn from_bipoly(f: &BiPoly) -> Result<Self, EnriquesError> {
        let mut terms = Vec::new();
        for (k, row) in f.rows().iter().enumerate() {
            for (d, c) in row.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if k > 4 || d + 2 * k > 8 {
                    return Err(EnriquesError::BadMonomial(format!("t^{d} z^{k}")));
                }
                // t^d z^k = z0^(4−k−⌈d/2⌉) z1^(⌊d/2⌋) z2^(d mod 2) z3^k on the cone
                let e1 = d / 2;
                let e2 = d % 2;
                let e0 = 4 - k - e1 - e2;
                terms.push((format!("{e0}{e1}{e2}{k}"), c.clone()));
            }
        }
        restrict_quartic_to_cone(&ConeQuartic::from_terms(terms.iter().map(|(k, c)| (k.as_str(), c.clone())))?)
    }

    /// `F(t, z)`: main variable `z`, parameter `t`.
    pub fn f(&self) -> &BiPoly {
        &self.f
    }

    /// `F̃(s, z′) = s⁸·F(1/s, z′/s²)`.
    pub fn f_at_infinity(&self) -> &BiPoly {
        &self.f_inf
    }

    /// The `z⁴` coefficient `B(0, 0, 0, 1)`.
    pub fn c4(&self) -> &Rat {
        &self.c4
    }

    /// `disc_z F` as a polynomial in `t`.
    pub fn discriminant(&self) -> &Poly {
        &self.disc
    }

    /// Whether the fiber `w² = F(t0, z)` is smooth, including `t0 = ∞`.
    pub fn smooth_over(&self, t: &ParamValue) -> bool {
        match t {
            ParamValue::Rational(r) => !self.disc.eval(r).is_zero(),
            ParamValue::Quadratic(v) => !self.disc.eval_with(v, |c| v.embed(c)).is_zero(),
            ParamValue::Infinity => !discriminant(&self.f_inf.eval_param(&Rat::zero())).unwrap().is_zero(),
        }
    }

    pub fn eval(&self, t: &Rat, z: &Rat) -> Rat {
        self.f.eval_param(t).eval(z)
    }
}

/// A point of `R`; over `t = ∞` the `z` coordinate is `z′ = z/t²`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CurvePoint {
    pub t: ParamValue,
    pub z: ParamValue,
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(t, z) = ({}, {})", self.t, self.z)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct SingularLocus {
    pub points: Vec<CurvePoint>,
    /// Factors (in `t`, or in `z` over a fixed `t`) whose roots lie in
    /// fields of degree above 2.
    pub unresolved: Vec<String>,
}

fn gcd_at_rational(f: &BiPoly, t: &Rat) -> Result<Poly, EnriquesError> {
    let g0 = f.eval_param(t);
    let g1 = f.d_main().eval_param(t);
    let g2 = f.d_param().eval_param(t);
    Ok(poly_gcd(&poly_gcd(&g0, &g1)?, &g2)?)
}

fn push_rational_fiber(
    out: &mut SingularLocus,
    f: &BiPoly,
    t: &Rat,
    label: ParamValue,
) -> Result<(), EnriquesError> {
    let g = gcd_at_rational(f, t)?;
    if g.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    let split = split_low_degree(&g)?;
    for (z, _) in split.roots {
        out.points.push(CurvePoint {
            t: label.clone(),
            z: ParamValue::Rational(z),
        });
    }
    for (q, _) in split.quadratics {
        let (a, b) = quadratic_roots(&q).expect("irreducible quadratic");
        for z in [a, b] {
            out.points.push(CurvePoint {
                t: label.clone(),
                z: ParamValue::Quadratic(z),
            });
        }
    }
    for (l, _) in split.leftover {
        out.unresolved.push(format!("z-factor {} over t = {label}", l.display("z")));
    }
    Ok(())
}

fn eval_rows_in(f: &BiPoly, t: &NfElem) -> Poly<NfElem> {
    Poly::from_coeffs(f.rows().iter().map(|r| r.eval_with(t, |c| t.embed(c))).collect())
}

/// Common solutions of `F = F_t = F_z = 0` with coordinates in fields of
/// degree at most 2, in both charts.
pub fn singular_points(fd: &RamificationData) -> Result<SingularLocus, EnriquesError> {
    let f = &fd.f;
    let mut out = SingularLocus::default();
    let r1 = f.resultant_main(&f.d_main())?;
    let ft = f.d_param();
    let h = if ft.is_zero() { Poly::zero() } else { f.resultant_main(&ft)? };
    let common = poly_gcd(&r1, &h)?;
    if common.degree().unwrap_or(0) > 0 {
        let split = split_low_degree(&common)?;
        for (t, _) in &split.roots {
            push_rational_fiber(&mut out, f, t, ParamValue::Rational(t.clone()))?;
        }
        for (q, _) in &split.quadratics {
            let (a, b) = quadratic_roots(q).expect("irreducible quadratic");
            for t in [a, b] {
                let g0 = eval_rows_in(f, &t);
                let g1 = eval_rows_in(&f.d_main(), &t);
                let g2 = eval_rows_in(&ft, &t);
                let g = g0.gcd_euclid(&g1).gcd_euclid(&g2);
                match g.degree() {
                    Some(0) | None => {}
                    Some(1) => {
                        let z = g.coeffs()[0].negated();
                        out.points.push(CurvePoint {
                            t: ParamValue::Quadratic(t.clone()),
                            z: match z.as_rational() {
                                Some(r) => ParamValue::Rational(r),
                                None => ParamValue::Quadratic(z),
                            },
                        });
                    }
                    Some(_) => out.unresolved.push(format!("z-factor of degree > 1 over t = {t} in {}", t.field())),
                }
            }
        }
        for (l, _) in &split.leftover {
            out.unresolved.push(format!("t-factor {}", l.display("t")));
        }
    }
    push_rational_fiber(&mut out, &fd.f_inf, &Rat::zero(), ParamValue::Infinity)?;
    Ok(out)
}
