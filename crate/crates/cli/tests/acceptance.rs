//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line with its
//! wall time against a pinned limit, and fails on any violated check.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use fibdense_cli::{parse_spec, run_command, Command, Overrides};
use fibdense_core::density::{densify, DensityParams};
use fibdense_core::elliptic::{
    quartic_to_weierstrass, torsion_certify, EllipticCurve, MarkedPoint, Point, QuarticModel, QuarticPoint,
    TorsionVerdict, MAZUR_ORDERS,
};
use fibdense_core::enriques::*;
use fibdense_core::exactmath::{enumerate_rationals, interpolate, poly_gcd, BiPoly, Field, Poly, Rat};
use fibdense_core::fibration::*;
use fibdense_core::RatFn;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn r(n: i64) -> Rat {
    Rat::from_int(n)
}

fn criterion(name: &str, limit_secs: u64, check: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let res = check();
    let took = start.elapsed();
    let limit = Duration::from_secs(limit_secs);
    let verdict = match &res {
        Ok(_) if took <= limit => "PASS",
        _ => "FAIL",
    };
    let detail = match &res {
        Ok(d) | Err(d) => d.clone(),
    };
    println!("{verdict} {name}: {detail} [{:.2} s, limit {limit_secs} s]", took.as_secs_f64());
    assert_eq!(verdict, "PASS", "{name}: {detail}");
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Chord-and-tangent addition written out directly, independent of the
/// library's group law.
fn textbook_add(a: &Rat, p: &Point, q: &Point) -> Point {
    let (x1, y1, x2, y2) = match (p, q) {
        (Point::Infinity, _) => return q.clone(),
        (_, Point::Infinity) => return p.clone(),
        (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
    };
    let lambda = if x1 != x2 {
        &(y2 - y1) / &(x2 - x1)
    } else if y1 == y2 && !y1.is_zero() {
        &(&(&x1.square() * &r(3)) + a) / &(y1 * &r(2))
    } else {
        return Point::Infinity;
    };
    let x3 = &(&lambda.square() - x1) - x2;
    let y3 = &(&lambda * &(x1 - &x3)) - y1;
    Point::Affine(x3, y3)
}

/// A curve through two random points, with a pool of small combinations
/// `mP + nQ`.
fn random_curve(rng: &mut ChaCha8Rng) -> Option<(EllipticCurve, Vec<Point>)> {
    let mut rand_rat = || Rat::frac(rng.gen_range(-9..=9), rng.gen_range(1..=4));
    let (x1, y1, x2, y2) = (rand_rat(), rand_rat(), rand_rat(), rand_rat());
    if x1 == x2 {
        return None;
    }
    let c1 = &y1.square() - &x1.pow(3);
    let c2 = &y2.square() - &x2.pow(3);
    let a = &(&c1 - &c2) / &(&x1 - &x2);
    let b = &c1 - &(&a * &x1);
    let e = EllipticCurve::new(a, b).ok()?;
    let p = Point::Affine(x1, y1);
    let q = Point::Affine(x2, y2);
    let mut pool = Vec::new();
    for m in -2..=2 {
        for n in -2..=2 {
            pool.push(e.add(&e.mul(m, &p), &e.mul(n, &q)));
        }
    }
    Some((e, pool))
}

#[test]
fn acceptance_group_law() {
    criterion("group-law suite", 5, || {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut curves = 0;
        let mut checked = 0;
        while curves < 10 {
            let Some((e, pool)) = random_curve(&mut rng) else { continue };
            curves += 1;
            for _ in 0..300 {
                let p = pool.choose(&mut rng).unwrap();
                let q = pool.choose(&mut rng).unwrap();
                let s = pool.choose(&mut rng).unwrap();
                ensure(e.contains(p), || format!("off-curve point {p:?}"))?;
                let pq = e.add(p, q);
                ensure(pq == textbook_add(e.a(), p, q), || format!("oracle mismatch for {p:?} + {q:?}"))?;
                ensure(pq == e.add(q, p), || "commutativity".into())?;
                ensure(e.add(&pq, s) == e.add(p, &e.add(q, s)), || "associativity".into())?;
                ensure(e.add(p, &Point::Infinity) == *p, || "identity".into())?;
                ensure(e.add(p, &e.neg(p)).is_infinity(), || "inverse".into())?;
                ensure(e.contains(&pq), || "sum off the curve".into())?;
                checked += 1;
            }
        }
        Ok(format!("{curves} curves, {checked} point triples, 0 failures"))
    });
}

#[test]
fn acceptance_torsion() {
    criterion("torsion certification", 1, || {
        let e1 = EllipticCurve::new(r(0), r(1)).unwrap();
        let v = torsion_certify(&e1, &Point::Affine(r(2), r(3)), 12).map_err(|e| e.to_string())?;
        ensure(v == TorsionVerdict::Torsion(6), || format!("(2,3) on y² = x³ + 1: {v:?}"))?;
        let e2 = EllipticCurve::new(r(0), r(-2)).unwrap();
        let v = torsion_certify(&e2, &Point::Affine(r(3), r(5)), 12).map_err(|e| e.to_string())?;
        ensure(v == TorsionVerdict::InfiniteOrder, || format!("(3,5) on y² = x³ − 2: {v:?}"))?;

        // scan small curves and points; compare with repeated textbook addition
        let mut torsion = 0;
        let mut total = 0;
        for a in -4..=4 {
            for b in -4..=4 {
                let Ok(e) = EllipticCurve::new(r(a), r(b)) else { continue };
                for x in enumerate_rationals(4) {
                    for p in e.lift_x(&x) {
                        let v = torsion_certify(&e, &p, 12).map_err(|e| e.to_string())?;
                        let mut acc = p.clone();
                        let mut oracle = None;
                        for m in 1..=12 {
                            if acc.is_infinity() {
                                oracle = Some(m);
                                break;
                            }
                            acc = textbook_add(e.a(), &acc, &p);
                        }
                        let expect = oracle.map_or(TorsionVerdict::InfiniteOrder, TorsionVerdict::Torsion);
                        ensure(v == expect, || format!("{p:?} on ({a}, {b}): {v:?} vs {expect:?}"))?;
                        if let TorsionVerdict::Torsion(m) = v {
                            ensure(MAZUR_ORDERS.contains(&m), || format!("order {m} outside Mazur's set"))?;
                            torsion += 1;
                        }
                        total += 1;
                    }
                }
            }
        }
        Ok(format!("Torsion(6) and InfiniteOrder reproduced; {total} scanned points, {torsion} torsion"))
    });
}

fn worked() -> FibrationModel {
    FibrationModel::new(RatFn::t(), RatFn::one()).unwrap()
}

#[test]
fn acceptance_tau_law() {
    criterion("τ-law suite", 30, || {
        let f = worked();
        let ms = [
            Multisection::ZeroSection,
            Multisection::ConstantX(r(1)),
            Multisection::two_torsion_trisection(&f).unwrap(),
        ];
        let mut pairs = 0;
        let mut per_kind = [0usize; 3];
        'outer: for t in enumerate_rationals(8) {
            for (i, m) in ms.iter().enumerate() {
                let Ok(fiber) = Fiber::new(&f, &t) else { continue };
                let (cycle, trace) = match trace_on_fiber(&f, m, &fiber) {
                    Ok(x) => x,
                    Err(FibrationError::TraceFieldTooLarge { .. }) => continue,
                    Err(e) => return Err(format!("t = {t}: {e}")),
                };
                let d = m.degree() as i64;
                let pts: Vec<_> = cycle.support.iter().map(|(p, _)| p.clone()).collect();
                for p in &pts {
                    for q in &pts {
                        let tp = tau_with_trace(&fiber, m.degree(), p, &trace.value).map_err(|e| e.to_string())?;
                        let tq = tau_with_trace(&fiber, m.degree(), q, &trace.value).map_err(|e| e.to_string())?;
                        let lhs = fiber.sub(&tp, &tq).map_err(|e| e.to_string())?;
                        let rhs = fiber.mul(d, &fiber.sub(p, q).map_err(|e| e.to_string())?);
                        ensure(lhs == rhs, || format!("law fails at t = {t} for {}", m.kind()))?;
                        pairs += 1;
                        per_kind[i] += 1;
                        if pairs >= 200 && per_kind.iter().all(|&c| c > 0) {
                            break 'outer;
                        }
                    }
                }
            }
        }
        ensure(pairs >= 200, || format!("only {pairs} pairs"))?;

        let mut fibers = 0;
        for t in enumerate_rationals(20) {
            if !matches!(f.specialize(&t), Ok(Specialization::Smooth(_))) {
                continue;
            }
            for m in &ms {
                let fiber = Fiber::new(&f, &t).map_err(|e| e.to_string())?;
                let cycle = match trace_on_fiber(&f, m, &fiber) {
                    Ok((c, _)) => c,
                    Err(FibrationError::TraceFieldTooLarge { .. }) => continue,
                    Err(e) => return Err(format!("trace at t = {t}: {e}")),
                };
                for (p, _) in &cycle.support {
                    tau_fiber_point(&f, m, &t, p).map_err(|e| format!("τ at t = {t}: {e}"))?;
                }
                fibers += 1;
            }
        }
        Ok(format!("{pairs} pairs {per_kind:?}; τ regular on {fibers} fiber cycles"))
    });
}

#[test]
fn acceptance_prop_local() {
    criterion("prop-local consistency", 10, || {
        let f = worked();
        let m = Multisection::ConstantX(r(1));
        let rep = ramification_points(&f, &m).map_err(|e| e.to_string())?;
        let target = FiberPoint::Rational(Point::Affine(r(1), r(0)));
        let hit = rep
            .salient_points()
            .any(|p| p.t == ParamValue::Rational(r(-2)) && p.point.as_ref() == Some(&target));
        ensure(hit, || format!("no salient point at (−2, (1,0)): {rep:?}"))?;
        let samples = enumerate_rationals(10);
        let v = order_probe(&f, &m, &samples, 18).map_err(|e| e.to_string())?;
        ensure(matches!(v, ProbeVerdict::NoOrderUpTo { m_max: 18, .. }), || format!("ConstantX(1): {v}"))?;

        let tri = Multisection::two_torsion_trisection(&f).unwrap();
        let v2 = order_probe(&f, &tri, &samples, 18).map_err(|e| e.to_string())?;
        ensure(matches!(v2, ProbeVerdict::Order { m: 2, .. }), || format!("trisection: {v2}"))?;
        let rep = ramification_points(&f, &tri).map_err(|e| e.to_string())?;
        ensure(!rep.has_salient(), || "trisection has salient ramification".into())?;
        Ok(format!("ConstantX(1): {v}; trisection: {v2}, no salient points"))
    });
}

#[test]
fn acceptance_density_regression() {
    criterion("density regression", 60, || {
        let f = worked();
        let m = Multisection::ConstantX(r(1));
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let params = |h| DensityParams {
            height_bound: h,
            k_max: 5,
            torsion_bound: 12,
        };
        let rep = pool.install(|| densify(&f, &m, &params(10))).map_err(|e| e.to_string())?;
        ensure(rep.fibers_certified >= 40, || format!("{} fibers certified", rep.fibers_certified))?;
        let mut distinct = HashSet::new();
        for (t, p, _) in rep.points() {
            let e = f.smooth_fiber(t).map_err(|e| e.to_string())?;
            ensure(e.contains(p), || format!("off-curve point at t = {t}"))?;
            distinct.insert((t.clone(), p.clone()));
        }
        ensure(distinct.len() >= 200, || format!("{} distinct points", distinct.len()))?;
        let mut prev = (0, 0);
        for h in [4, 6, 8] {
            let rh = pool.install(|| densify(&f, &m, &params(h))).map_err(|e| e.to_string())?;
            let cur = (rh.fibers_certified, rh.points_emitted);
            ensure(cur.0 >= prev.0 && cur.1 >= prev.1, || format!("not monotone at height {h}"))?;
            prev = cur;
        }
        ensure(rep.fibers_certified >= prev.0 && rep.points_emitted >= prev.1, || "not monotone at 10".into())?;
        Ok(format!(
            "{} fibers certified, {} distinct on-curve points",
            rep.fibers_certified,
            distinct.len()
        ))
    });
}

fn example_quartic() -> ConeQuartic {
    ConeQuartic::from_terms([("0004", r(1)), ("1120", r(1)), ("4000", r(-2))]).unwrap()
}

/// Distinct roots of gcd(G, G′) plus `t = ∞` when the degree drops by two.
fn double_points(g: &Poly) -> usize {
    let h = poly_gcd(g, &g.derivative()).unwrap();
    let distinct = match h.degree() {
        None | Some(0) => 0,
        Some(d) => d - poly_gcd(&h, &h.derivative()).unwrap().degree().unwrap(),
    };
    distinct + usize::from(8 - g.degree().unwrap() >= 2)
}

/// Genus of `w² = G(t)` from branch points counted by multiplicity parity,
/// using gcds with successive derivatives.
fn brute_force_genus(g: &Poly) -> Option<usize> {
    let distinct = |p: &Poly| match p.degree() {
        None | Some(0) => 0,
        Some(d) => d - poly_gcd(p, &p.derivative()).unwrap().degree().unwrap(),
    };
    let mut at_least = vec![distinct(g)];
    let (mut acc, mut d) = (g.clone(), g.clone());
    for _ in 1..=8 {
        d = d.derivative();
        acc = poly_gcd(&acc, &d).unwrap();
        at_least.push(distinct(&acc));
    }
    let mut k: usize = (1..=8).step_by(2).map(|m| at_least[m - 1] - at_least[m]).sum();
    k += (8 - g.degree().unwrap()) % 2;
    (k > 0).then(|| k / 2 - 1)
}

#[test]
fn acceptance_enriques_pipeline() {
    criterion("enriques pipeline", 60, || {
        let b = example_quartic();
        let fd = restrict_quartic_to_cone(&b).map_err(|e| e.to_string())?;
        let expect_f = BiPoly::from_rows(vec![
            Poly::from_ints(&[-2, 0, 0, 0, 1]),
            Poly::zero(),
            Poly::zero(),
            Poly::zero(),
            Poly::one(),
        ]);
        ensure(fd.f() == &expect_f, || "F ≠ z⁴ + t⁴ − 2".into())?;

        let l = tangent_line(&fd, &r(1), &r(1)).map_err(|e| e.to_string())?;
        for lam in enumerate_rationals(3) {
            let solved = SectionConic::new(&r(2) + &lam, &r(-1) - &lam.scale_int(2), lam.clone());
            ensure(l.at(&lam) == solved, || format!("tangent line differs at λ = {lam}"))?;
        }

        let mut candidates = 0;
        for (t0, z0) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let search = bitangent_sections(&fd, &r(t0), &r(z0), None).map_err(|e| e.to_string())?;
            for c in &search.candidates {
                let CandidateSection::Rational(s) = &c.section else {
                    return Err("unexpected quadratic candidate".into());
                };
                // G from direct evaluation of B on the section, interpolated
                let p = s.poly();
                let pts: Vec<(Rat, Rat)> = (0..9)
                    .map(|i| {
                        let t = r(i - 4);
                        let v = b.eval([&r(1), &t.square(), &t, &p.eval(&t)]);
                        (t, v)
                    })
                    .collect();
                let g = interpolate(&pts);
                ensure(double_points(&g) >= 2, || format!("false positive λ = {}", c.lambda))?;
                candidates += 1;
            }
        }
        ensure(candidates > 0, || "no candidates".into())?;

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut sections = 0;
        while sections < 100 {
            let s = SectionConic::from_ints(rng.gen_range(-5..=5), rng.gen_range(-5..=5), rng.gen_range(-5..=5));
            let Ok(ms) = multisection_from_section(&fd, &s) else { continue };
            let g = section_intersection_poly(&fd, &s);
            ensure(ms.genus == brute_force_genus(&g), || format!("genus mismatch for {s:?}"))?;
            sections += 1;
        }
        Ok(format!("{candidates} bitangent candidates verified, {sections} section genera match"))
    });
}

#[test]
fn acceptance_quartic_weierstrass() {
    criterion("quartic↔weierstrass", 10, || {
        let fd = restrict_quartic_to_cone(&example_quartic()).map_err(|e| e.to_string())?;
        let k3 = k3_weierstrass_model(&fd, false).map_err(|e| e.to_string())?;
        let row_model = |t: &Rat, marked| {
            let row = fd.f().eval_param(t);
            let q: [Rat; 5] = std::array::from_fn(|k| row.coeff(k).cloned().unwrap_or_else(Rat::zero));
            QuarticModel::new(q, marked)
        };
        for t in [2, 3, -5, 7, 11] {
            let t = r(t);
            let e = k3.fibration.smooth_fiber(&t).map_err(|e| e.to_string())?;
            let q = row_model(&t, None).map_err(|e| e.to_string())?;
            ensure(e.j_invariant() == q.j_invariant(), || format!("j differs at t = {t}"))?;
        }

        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut checked = 0;
        let ts = enumerate_rationals(6);
        while checked < 100 {
            let t = ts.choose(&mut rng).unwrap();
            let Ok(model) = row_model(t, Some(MarkedPoint::InfinityBranch { root: r(1) })) else { continue };
            let tr = quartic_to_weierstrass(&model).map_err(|e| e.to_string())?;
            let e = tr.curve();
            let mut seeds: Vec<Point> = tr.second_branch_image().into_iter().collect();
            for z in enumerate_rationals(6) {
                if let Some(w) = model.eval(&z).sqrt_exact() {
                    seeds.push(tr.forward(&QuarticPoint::Affine(z, w)).map_err(|e| e.to_string())?);
                }
            }
            if seeds.is_empty() {
                continue;
            }
            let p = seeds.choose(&mut rng).unwrap();
            let p = e.mul(rng.gen_range(-4..=4), p);
            let q = tr.inverse(&p);
            ensure(model.contains(&q), || format!("inverse image off the quartic at t = {t}"))?;
            ensure(tr.forward(&q).map_err(|e| e.to_string())? == p, || format!("round trip fails at t = {t}"))?;
            checked += 1;
        }
        Ok(format!("j preserved on 5 fibers; {checked} round trips exact"))
    });
}

#[test]
fn acceptance_determinism() {
    criterion("determinism", 120, || {
        let worked = parse_spec(
            r#"{"a": {"num": ["0", "1"]}, "b": {"num": ["1"]},
                "multisection": {"kind": "constant_x", "x": "1"}}"#,
        )
        .map_err(|e| e.to_string())?;
        let cone = parse_spec(
            r#"{"cone_quartic": {"0004": "1", "1120": "1", "4000": "-2"},
                "enriques": {"base_points": [["1", "1"], ["1", "-1"], ["-1", "1"], ["-1", "-1"]]}}"#,
        )
        .map_err(|e| e.to_string())?;
        let go = |n: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
            pool.install(|| {
                (
                    run_command(Command::Densify, &worked, &Overrides::default()).unwrap(),
                    run_command(Command::EnriquesBitangents, &cone, &Overrides::default()).unwrap(),
                )
            })
        };
        let one = go(1);
        let four = go(4);
        for ((name, a), (_, b)) in one.0.files.iter().chain(&one.1.files).zip(four.0.files.iter().chain(&four.1.files)) {
            ensure(a == b, || format!("{name} differs between 1 and 4 threads"))?;
        }
        Ok(format!("{} artifacts byte-identical across 1 and 4 threads", one.0.files.len() + one.1.files.len()))
    });
}
