use super::DensityError;
use crate::elliptic::{quartic_to_weierstrass, Point, QuarticModel, QuarticPoint, QuarticToWeierstrass};
use crate::exactmath::{enumerate_rationals, squarefree_decompose, Field, Poly, Rat, RatFn};
use crate::fibration::{FibrationError, FibrationModel, Multisection};

/// `F(t, p(t)) = g(t)² · q(t)` with `q` of degree 3 or 4, and the pointed
/// model of `v² = q(t)` converted to Weierstrass form.
pub fn elliptic_graph_model(
    f: &FibrationModel,
    p: &Poly,
    marked: &crate::elliptic::MarkedPoint,
) -> Result<(Poly, QuarticToWeierstrass), DensityError> {
    let qf = f
        .quartic_fibers()
        .ok_or(DensityError::UnsupportedRepresentation("fibration has no quartic model"))?;
    let big_g = qf.graph_poly(p);
    if big_g.is_zero() {
        return Err(DensityError::UnsupportedRepresentation("graph lies in the ramification curve"));
    }
    let mut q = Poly::constant(big_g.lead().unwrap().clone());
    let mut g = Poly::one();
    for (fac, m) in squarefree_decompose(&big_g).map_err(FibrationError::from)? {
        if m % 2 == 1 {
            q = &q * &fac;
        }
        g = &g * &fac.pow((m / 2) as u32);
    }
    if !matches!(q.degree(), Some(3 | 4)) {
        return Err(DensityError::UnsupportedRepresentation("graph multisection is not of genus one"));
    }
    let coeffs: [Rat; 5] = std::array::from_fn(|k| q.coeff(k).cloned().unwrap_or_else(Rat::zero));
    let model = QuarticModel::new(coeffs, Some(marked.clone())).map_err(FibrationError::from)?;
    let tr = quartic_to_weierstrass(&model).map_err(FibrationError::from)?;
    Ok((g, tr))
}

/// Rational points of `M` in height order of their parameter, each with its
/// fiber parameter. Elliptic graphs are enumerated as `k·generator` for
/// `|k| ≤ height_bound`.
pub fn enumerate_multisection_points(
    f: &FibrationModel,
    m: &Multisection,
    height_bound: u64,
) -> Result<Vec<(Rat, Point)>, DensityError> {
    let params = || enumerate_rationals(height_bound);
    let mut out = Vec::new();
    match m {
        Multisection::ZeroSection => out.extend(params().into_iter().map(|b| (b, Point::Infinity))),
        Multisection::ConstantX(c) => {
            let cf = RatFn::constant(c.clone());
            let h = cf.pow(3).plus(&f.a().times(&cf)).plus(f.b());
            let lin = h
                .as_polynomial()
                .filter(|p| p.degree() == Some(1))
                .ok_or(DensityError::UnsupportedRepresentation("x = c with h(t) not linear in t"))?;
            let (h0, h1) = (&lin.coeffs()[0], &lin.coeffs()[1]);
            for y in params() {
                let t = &(&(&y * &y) - h0) / h1;
                out.push((t, Point::Affine(c.clone(), y)));
            }
        }
        Multisection::Parametrized { t, x, y } => {
            for s in params() {
                let Some(tv) = t.eval(&s) else { continue };
                let pt = match (x.eval(&s), y.eval(&s)) {
                    (Some(x), Some(y)) => Point::Affine(x, y),
                    _ => Point::Infinity,
                };
                out.push((tv, pt));
            }
        }
        Multisection::SplitList(sections) => {
            for b in params() {
                for s in sections {
                    out.push((b.clone(), s.eval(&b)));
                }
            }
        }
        Multisection::GraphOnQuartic { p, elliptic } => {
            let ep = elliptic.as_ref().ok_or(DensityError::NoGeneratorSupplied)?;
            let qf = f.quartic_fibers().unwrap();
            let (g, tr) = elliptic_graph_model(f, p, &ep.marked)?;
            let gen = tr.forward(&ep.generator).map_err(FibrationError::from)?;
            let e = tr.curve();
            let hb = height_bound as i64;
            let mut ks: Vec<i64> = (-hb..=hb).collect();
            ks.sort_by_key(|k| (k.unsigned_abs(), *k));
            for k in ks {
                let QuarticPoint::Affine(t, v) = tr.inverse(&e.mul(k, &gen)) else { continue };
                let z = p.eval(&t);
                let w = &v * &g.eval(&t);
                match qf.point_at(&t, &z, &w) {
                    Ok(pt) => out.push((t, pt)),
                    // singular fibers are dropped here and never certified
                    Err(_) => continue,
                }
            }
        }
    }
    Ok(out)
}
