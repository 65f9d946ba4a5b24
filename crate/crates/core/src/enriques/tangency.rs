use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{CurvePoint, EnriquesError, RamificationData};
use crate::exactmath::{quadratic_roots, rational_roots, split_low_degree, squarefree_part, BiPoly, Field, NfElem, Poly, Rat};
use crate::fibration::ParamValue;

/// The section `z = c0 + c1·t + c2·t²` of the cone over the `t`-line.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SectionConic<F = Rat> {
    pub c0: F,
    pub c1: F,
    pub c2: F,
}

impl<F: Field> SectionConic<F> {
    pub fn new(c0: F, c1: F, c2: F) -> Self {
        SectionConic { c0, c1, c2 }
    }

    pub fn poly(&self) -> Poly<F> {
        Poly::from_coeffs(vec![self.c0.clone(), self.c1.clone(), self.c2.clone()])
    }
}

impl SectionConic {
    pub fn from_ints(c0: i64, c1: i64, c2: i64) -> Self {
        SectionConic::new(Rat::from_int(c0), Rat::from_int(c1), Rat::from_int(c2))
    }
}

/// `G_s(t) = F(t, c0 + c1·t + c2·t²)`, of degree at most 8; the deficit
/// `8 − deg G_s` is the intersection with `R` over `t = ∞`.
pub fn section_intersection_poly(fd: &RamificationData, s: &SectionConic) -> Poly {
    fd.f().substitute_main(&s.poly())
}

/// [`section_intersection_poly`] for a section over a number field.
pub fn section_intersection_poly_in<E: Field>(fd: &RamificationData, s: &SectionConic<E>) -> Poly<E> {
    let p = s.poly();
    let ctx = &s.c0;
    let mut acc = Poly::<E>::zero();
    for r in fd.f().rows().iter().rev() {
        acc = &(&acc * &p) + &r.map(|c| ctx.embed(c));
    }
    acc
}

/// Intersection multiplicity with `R` over `t = ∞`, computed in the chart
/// `s = 1/t` where the section reads `z′ = c2 + c1·s + c0·s²`; `None` if
/// the section lies in `R`.
pub fn intersection_at_infinity(fd: &RamificationData, s: &SectionConic) -> Option<usize> {
    let g = fd.f_at_infinity().substitute_main(&Poly::from_rats(&[s.c2.clone(), s.c1.clone(), s.c0.clone()]));
    (!g.is_zero()).then(|| g.root_multiplicity(&Rat::zero()))
}

/// The line `L_P` of sections tangent to `R` at `P = (t0, z0)`:
/// `base + λ·direction`, with `direction` the section `(t − t0)²`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TangentLine {
    pub t0: Rat,
    pub z0: Rat,
    pub base: SectionConic,
    pub direction: SectionConic,
}

impl TangentLine {
    pub fn at(&self, lambda: &Rat) -> SectionConic {
        self.at_in(lambda)
    }

    pub fn at_in<E: Field>(&self, lambda: &E) -> SectionConic<E> {
        let c = |b: &Rat, d: &Rat| lambda.embed(b).plus(&lambda.times(&lambda.embed(d)));
        SectionConic::new(
            c(&self.base.c0, &self.direction.c0),
            c(&self.base.c1, &self.direction.c1),
            c(&self.base.c2, &self.direction.c2),
        )
    }
}

pub fn tangent_line(fd: &RamificationData, t0: &Rat, z0: &Rat) -> Result<TangentLine, EnriquesError> {
    if !fd.eval(t0, z0).is_zero() {
        return Err(EnriquesError::NotOnR);
    }
    let fz = fd.f().d_main().eval_param(t0).eval(z0);
    if fz.is_zero() {
        return Err(EnriquesError::NotInR0);
    }
    let ft = fd.f().d_param().eval_param(t0).eval(z0);
    // p(t0) = z0 and p′(t0) = −F_t/F_z
    let m = -&(&ft / &fz);
    let base = SectionConic::new(z0 - &(&m * t0), m, Rat::zero());
    let direction = SectionConic::new(t0.square(), t0.scale_int(-2), Rat::one());
    Ok(TangentLine {
        t0: t0.clone(),
        z0: z0.clone(),
        base,
        direction,
    })
}

/// Coefficient fields for tangency candidates.
pub trait CandidateField: Field {
    fn to_param(&self) -> ParamValue;
    /// Roots lying in the field itself.
    fn roots_in_field(p: &Poly<Self>) -> Vec<Self>;
    fn show(p: &Poly<Self>) -> String;
}

impl CandidateField for Rat {
    fn to_param(&self) -> ParamValue {
        ParamValue::Rational(self.clone())
    }
    fn roots_in_field(p: &Poly) -> Vec<Rat> {
        rational_roots(p).map(|v| v.into_iter().map(|(r, _)| r).collect()).unwrap_or_default()
    }
    fn show(p: &Poly) -> String {
        p.display("t").to_string()
    }
}

impl CandidateField for NfElem {
    fn to_param(&self) -> ParamValue {
        ParamValue::from_ext(self.clone())
    }
    fn roots_in_field(p: &Poly<NfElem>) -> Vec<NfElem> {
        match p.degree() {
            Some(1) => vec![p.coeffs()[0].times(&p.coeffs()[1].inverse().unwrap()).negated()],
            _ => vec![],
        }
    }
    fn show(p: &Poly<NfElem>) -> String {
        let c: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
        format!("[{}] in t", c.join(", "))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TangencyPoint {
    Finite { t: ParamValue, z: ParamValue },
    Infinity,
    Unresolved { factor: String },
}

/// Points where a section meets `R` with multiplicity at least 2.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TangencyProfile {
    /// Distinct such points, `t = ∞` included.
    pub double_points: usize,
    pub at_infinity: usize,
    /// The points other than the base parameter.
    pub others: Vec<TangencyPoint>,
}

/// Multiplicity-≥2 intersections of the section with `R`, via
/// `gcd(G, G′)`; `None` if the section lies in `R`.
pub fn tangency_profile<E: CandidateField>(
    fd: &RamificationData,
    s: &SectionConic<E>,
    t0: &Rat,
) -> Option<TangencyProfile> {
    let g = section_intersection_poly_in(fd, s);
    if g.is_zero() {
        return None;
    }
    let at_infinity = 8 - g.degree().unwrap();
    let h = g.gcd_euclid(&g.derivative());
    let mut hs = if h.degree().unwrap_or(0) > 0 {
        h.squarefree_part_euclid()
    } else {
        Poly::constant(s.c0.one_like())
    };
    let double_points = hs.degree().unwrap() + usize::from(at_infinity >= 2);
    let lin = Poly::linear_from_root(&s.c0.embed(t0));
    if let Some(q) = hs.exact_div(&lin) {
        hs = q;
    }
    let mut others = Vec::new();
    let p = s.poly();
    for r in E::roots_in_field(&hs) {
        hs = hs.exact_div(&Poly::linear_from_root(&r)).unwrap();
        others.push(TangencyPoint::Finite {
            t: r.to_param(),
            z: p.eval(&r).to_param(),
        });
    }
    if hs.degree().unwrap_or(0) > 0 {
        others.push(TangencyPoint::Unresolved { factor: E::show(&hs) });
    }
    if at_infinity >= 2 {
        others.push(TangencyPoint::Infinity);
    }
    Some(TangencyProfile {
        double_points,
        at_infinity,
        others,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CandidateSection {
    Rational(SectionConic),
    Quadratic(SectionConic<NfElem>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitangentCandidate {
    pub lambda: ParamValue,
    pub section: CandidateSection,
    pub profile: TangencyProfile,
}

impl BitangentCandidate {
    pub fn second_tangency(&self) -> &[TangencyPoint] {
        &self.profile.others
    }
}

impl Serialize for BitangentCandidate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct MinPoly {
            minpoly: Poly,
        }
        let mut m = s.serialize_map(Some(7))?;
        m.serialize_entry("lambda", &self.lambda.to_string())?;
        match &self.section {
            CandidateSection::Rational(c) => {
                m.serialize_entry("c0", &c.c0)?;
                m.serialize_entry("c1", &c.c1)?;
                m.serialize_entry("c2", &c.c2)?;
                m.serialize_entry("field", "Q")?;
            }
            CandidateSection::Quadratic(c) => {
                m.serialize_entry("c0", &c.c0.to_string())?;
                m.serialize_entry("c1", &c.c1.to_string())?;
                m.serialize_entry("c2", &c.c2.to_string())?;
                m.serialize_entry(
                    "field",
                    &MinPoly {
                        minpoly: c.c0.field().minpoly().clone(),
                    },
                )?;
            }
        }
        m.serialize_entry("second_tangency", &self.profile.others)?;
        m.serialize_entry("double_points", &self.profile.double_points)?;
        m.end()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BitangentSearch {
    pub line: TangentLine,
    /// `disc_t(G_λ/(t − t0)²)` as a polynomial in `λ`.
    pub discriminant: Poly,
    pub candidates: Vec<BitangentCandidate>,
    /// Roots of the discriminant whose sections fail the double-point check
    /// (higher contact at `P` only).
    pub rejected: Vec<ParamValue>,
    /// Number of discriminant roots in fields of degree above 2.
    pub unresolved_roots: usize,
}

fn check<E: CandidateField>(
    fd: &RamificationData,
    line: &TangentLine,
    lambda: &E,
    wrap: impl Fn(SectionConic<E>) -> CandidateSection,
    out: &mut BitangentSearch,
) {
    let sec = line.at_in(lambda);
    match tangency_profile(fd, &sec, &line.t0) {
        Some(profile) if profile.double_points >= 2 => out.candidates.push(BitangentCandidate {
            lambda: lambda.to_param(),
            section: wrap(sec),
            profile,
        }),
        _ => out.rejected.push(lambda.to_param()),
    }
}

/// `G_λ(t)` on `L_P` as a polynomial in `t` with coefficients in `λ`.
fn pencil_intersection(fd: &RamificationData, line: &TangentLine) -> BiPoly {
    let row = |b: &Rat, d: &Rat| Poly::from_rats(&[b.clone(), d.clone()]);
    let z = BiPoly::from_rows(vec![
        row(&line.base.c0, &line.direction.c0),
        row(&line.base.c1, &line.direction.c1),
        row(&line.base.c2, &line.direction.c2),
    ]);
    let mut acc = BiPoly::default();
    for r in fd.f().rows().iter().rev() {
        acc = acc.mul(&z).add(&BiPoly::from_main(r));
    }
    acc
}

fn lift(v: &ParamValue, like: &NfElem) -> NfElem {
    match v {
        ParamValue::Rational(r) => like.embed(r),
        ParamValue::Quadratic(q) => q.clone(),
        ParamValue::Infinity => unreachable!("finite coordinate"),
    }
}

fn through_node(
    fd: &RamificationData,
    line: TangentLine,
    r: &CurvePoint,
) -> Result<BitangentSearch, EnriquesError> {
    let mut out = BitangentSearch {
        line,
        discriminant: Poly::zero(),
        candidates: vec![],
        rejected: vec![],
        unresolved_roots: 0,
    };
    let line = out.line.clone();
    let quad = [&r.t, &r.z].into_iter().find_map(|v| match v {
        ParamValue::Quadratic(q) => Some(q.clone()),
        _ => None,
    });
    if let (ParamValue::Quadratic(a), ParamValue::Quadratic(b)) = (&r.t, &r.z) {
        if !a.same_field(b) {
            return Err(EnriquesError::InvalidNode("coordinates in different quadratic fields"));
        }
    }
    match (&r.t, quad) {
        // over t = ∞ the section passes through z′ iff c2 = z′, and c2 = λ on L_P
        (ParamValue::Infinity, None) => {
            let lam = r.z.as_rational().unwrap().clone();
            check(fd, &line, &lam, CandidateSection::Rational, &mut out);
        }
        (ParamValue::Infinity, Some(q)) => check(fd, &line, &q, CandidateSection::Quadratic, &mut out),
        (ParamValue::Rational(tr), None) => {
            let zr = r.z.as_rational().unwrap();
            let d = line.direction.poly().eval(tr);
            if d.is_zero() {
                return Err(EnriquesError::InvalidNode("node lies over the tangency parameter"));
            }
            let lam = &(zr - &line.base.poly().eval(tr)) / &d;
            check(fd, &line, &lam, CandidateSection::Rational, &mut out);
        }
        (_, Some(q)) => {
            let tr = lift(&r.t, &q);
            let zr = lift(&r.z, &q);
            let d = line.direction.poly().eval_with(&tr, |c| q.embed(c));
            let Some(dinv) = d.inverse() else {
                return Err(EnriquesError::InvalidNode("node lies over the tangency parameter"));
            };
            let lam = zr.minus(&line.base.poly().eval_with(&tr, |c| q.embed(c))).times(&dinv);
            check(fd, &line, &lam, CandidateSection::Quadratic, &mut out);
        }
        (ParamValue::Quadratic(_), None) => unreachable!(),
    }
    Ok(out)
}

/// Sections tangent to `R` at `P = (t0, z0)` and tangent (or passing
/// through a node) elsewhere, from the roots of `disc_t(G_λ/(t − t0)²)` in
/// fields of degree at most 2. With `through`, the single section of `L_P`
/// through that singular point of `R`.
pub fn bitangent_sections(
    fd: &RamificationData,
    t0: &Rat,
    z0: &Rat,
    through: Option<&CurvePoint>,
) -> Result<BitangentSearch, EnriquesError> {
    let line = tangent_line(fd, t0, z0)?;
    if let Some(r) = through {
        return through_node(fd, line, r);
    }
    let g = pencil_intersection(fd, &line);
    let sq = Poly::from_rats(&[t0.square(), t0.scale_int(-2), Rat::one()]);
    let h = g
        .div_main_monic(&sq)
        .ok_or(EnriquesError::Exact(crate::exactmath::ExactError::Internal("(t − t0)² does not divide G_λ")))?;
    if h.main_degree().unwrap_or(0) < 1 {
        return Err(EnriquesError::DegenerateDiscriminant);
    }
    let disc = h.discriminant_main()?;
    if disc.is_zero() {
        return Err(EnriquesError::DegenerateDiscriminant);
    }
    let mut out = BitangentSearch {
        line,
        discriminant: disc.clone(),
        candidates: vec![],
        rejected: vec![],
        unresolved_roots: 0,
    };
    if disc.degree() == Some(0) {
        return Err(EnriquesError::NoCandidates);
    }
    let split = split_low_degree(&squarefree_part(&disc)?)?;
    out.unresolved_roots = split.leftover_degree();
    let line = out.line.clone();
    for (lam, _) in &split.roots {
        check(fd, &line, lam, CandidateSection::Rational, &mut out);
    }
    for (q, _) in &split.quadratics {
        let (a, b) = quadratic_roots(q).expect("irreducible quadratic");
        for lam in [a, b] {
            check(fd, &line, &lam, CandidateSection::Quadratic, &mut out);
        }
    }
    if out.candidates.is_empty() && out.rejected.is_empty() {
        return Err(EnriquesError::NoCandidates);
    }
    Ok(out)
}

/// [`bitangent_sections`] over many base points in parallel, ordered by
/// `(t0, z0)`.
pub fn bitangent_sweep(
    fd: &RamificationData,
    points: &[(Rat, Rat)],
    through: Option<&CurvePoint>,
) -> Vec<((Rat, Rat), Result<BitangentSearch, EnriquesError>)> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    pts.into_par_iter()
        .map(|(t, z)| {
            let res = bitangent_sections(fd, &t, &z, through);
            ((t, z), res)
        })
        .collect()
}
