//! Linear and quadratic factors of integer polynomials.
//!
//! A full factorization is never attempted. For a squarefree primitive
//! `f ∈ ℤ[x]` we pick a prime `p` for which `f mod p` stays squarefree,
//! split off the degree-1 and degree-2 irreducible factors modulo `p`
//! (distinct-degree then equal-degree splitting), Hensel-lift each candidate
//! past a coefficient bound and keep the ones that divide `f` over ℤ.
//! Every reported factor is confirmed by exact division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Poly, Rat};

/// Irreducible factors of degree one and two of a squarefree polynomial,
/// both as monic rational polynomials, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SmallFactors {
    pub linear: Vec<Poly>,
    pub quadratic: Vec<Poly>,
}

impl SmallFactors {
    /// Degree of the part of the input not covered by the reported factors.
    pub fn remaining_degree(&self, input_degree: usize) -> usize {
        input_degree - self.linear.len() - 2 * self.quadratic.len()
    }
}

const PRIME_LIMIT: u64 = 20_000;
const PRIMES_TO_COMPARE: usize = 6;

/// Linear and quadratic factors over ℚ of a squarefree nonzero polynomial.
pub fn small_factors(f: &Poly) -> SmallFactors {
    let ints = primitive_integer(f);
    let n = ints.len().saturating_sub(1);
    let mut out = SmallFactors::default();
    if n == 0 {
        return out;
    }
    if n == 1 {
        out.linear.push(f.monic());
        return out;
    }
    if n == 2 {
        return classify_quadratic(f);
    }

    let Some(setup) = choose_prime(&ints) else {
        // no usable prime below the limit; fall back to nothing rather than guess
        return out;
    };
    let ModSetup { p, roots, quads } = setup;

    let bound = coefficient_bound(&ints);
    let mut k = 1u32;
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }

    let fm = to_mod(&ints, p);
    let mut failed_roots = Vec::new();
    for &r in &roots {
        let g = vec![(p - r) % p, 1];
        match lift_and_test(&ints, &fm, &g, p, k) {
            Some(factor) => out.linear.push(factor),
            None => failed_roots.push(r),
        }
    }
    for (i, &r1) in failed_roots.iter().enumerate() {
        for &r2 in &failed_roots[i + 1..] {
            let g = mod_mul(&[(p - r1) % p, 1], &[(p - r2) % p, 1], p);
            if let Some(factor) = lift_and_test(&ints, &fm, &g, p, k) {
                out.quadratic.push(factor);
            }
        }
    }
    for q in &quads {
        if let Some(factor) = lift_and_test(&ints, &fm, q, p, k) {
            out.quadratic.push(factor);
        }
    }
    out.linear.sort_by(|a, b| a.coeffs()[0].cmp(&b.coeffs()[0]).reverse());
    out.quadratic.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    out.quadratic.dedup();
    out
}

fn classify_quadratic(f: &Poly) -> SmallFactors {
    let c = f.monic();
    let (b, a0) = (&c.coeffs()[1], &c.coeffs()[0]);
    let disc = b * b - Rat::from_int(4) * a0;
    let mut out = SmallFactors::default();
    match disc.sqrt_exact() {
        Some(s) => {
            let half = Rat::frac(1, 2);
            let r1 = &(-b - &s) * &half;
            let r2 = &(-b + &s) * &half;
            out.linear.push(Poly::linear_from_root(&r1));
            if r2 != r1 {
                out.linear.push(Poly::linear_from_root(&r2));
            }
        }
        None => out.quadratic.push(c),
    }
    out
}

/// Primitive integer coefficients with positive leading coefficient.
pub(crate) fn primitive_integer(f: &Poly) -> Vec<BigInt> {
    if f.is_zero() {
        return Vec::new();
    }
    let den = Rat::common_denominator(f.coeffs());
    let mut ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().unwrap().is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let scale = content * sign;
    for c in ints.iter_mut() {
        *c = &*c / &scale;
    }
    ints
}

fn ints_to_poly(c: &[BigInt]) -> Poly {
    Poly::from_coeffs(c.iter().map(|x| Rat::from_bigint(x.clone())).collect())
}

/// Bound on `|lc(f)| · |coefficient|` for any factor of degree ≤ 2, doubled for
/// the symmetric residue range.
fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let lc = f.last().unwrap().abs();
    BigInt::from(8) * lc * norm1 + 1
}

fn lift_and_test(f: &[BigInt], fm: &[u64], g: &[u64], p: u64, k: u32) -> Option<Poly> {
    let lc = f.last().unwrap();
    let lc_inv = mod_inv((lc.mod_floor(&BigInt::from(p))).to_u64()?, p)?;
    let fm_monic = mod_scale(fm, lc_inv, p);
    let (h, r) = mod_divrem(&fm_monic, g, p);
    if !r.is_empty() {
        return None;
    }
    let lifted = hensel_lift(f, g, &h, p, k)?;
    let pk = BigInt::from(p).pow(k);
    let half = &pk >> 1;
    let mut cand: Vec<BigInt> = lifted
        .iter()
        .map(|c| {
            let v = (c * lc).mod_floor(&pk);
            if v > half {
                v - &pk
            } else {
                v
            }
        })
        .collect();
    let content = cand.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return None;
    }
    for c in cand.iter_mut() {
        *c = &*c / &content;
    }
    let cand = ints_to_poly(&cand);
    let fp = ints_to_poly(f);
    let (_, rem) = fp.div_rem(&cand)?;
    if !rem.is_zero() {
        return None;
    }
    let monic = cand.monic();
    if monic.degree() == Some(2) {
        // a quadratic that splits over ℚ is reported through its roots instead
        let split = classify_quadratic(&monic);
        if !split.linear.is_empty() {
            return None;
        }
    }
    Some(monic)
}

/// Lifts `f ≡ lc·g·h (mod p)` with `g`, `h` monic to a factorization modulo
/// `p^k`; returns the lifted `g` with coefficients in `[0, p^k)`.
fn hensel_lift(f: &[BigInt], g0: &[u64], h0: &[u64], p: u64, k: u32) -> Option<Vec<BigInt>> {
    let (gcd, s, t) = mod_ext_gcd(g0, h0, p);
    if gcd != [1] {
        return None;
    }
    let _ = s;
    let pb = BigInt::from(p);
    let pk = pb.pow(k);
    let lc = f.last().unwrap();
    let lc_inv = big_mod_inv(&lc.mod_floor(&pk), &pk)?;
    let fm: Vec<BigInt> = f.iter().map(|c| (c * &lc_inv).mod_floor(&pk)).collect();

    let mut g: Vec<BigInt> = g0.iter().map(|&c| BigInt::from(c)).collect();
    let mut h: Vec<BigInt> = h0.iter().map(|&c| BigInt::from(c)).collect();
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let gh = big_mul(&g, &h);
        let mut e = Vec::with_capacity(fm.len());
        for (i, fi) in fm.iter().enumerate() {
            let d = (fi - gh.get(i).cloned().unwrap_or_default()).mod_floor(&next);
            debug_assert!((&d % &pj).is_zero());
            let q = (d / &pj).mod_floor(&pb);
            e.push(q.to_u64().unwrap());
        }
        let e = mod_trim(e);
        let te = mod_mul(&t, &e, p);
        let (_, tau) = mod_divrem(&te, g0, p);
        let resid = mod_sub(&e, &mod_mul(&tau, h0, p), p);
        let (sigma, r) = mod_divrem(&resid, g0, p);
        debug_assert!(r.is_empty());
        for (i, c) in tau.iter().enumerate() {
            g[i] = (&g[i] + &pj * BigInt::from(*c)).mod_floor(&next);
        }
        for (i, c) in sigma.iter().enumerate() {
            if i < h.len() {
                h[i] = (&h[i] + &pj * BigInt::from(*c)).mod_floor(&next);
            }
        }
        pj = next;
    }
    Some(g)
}

fn big_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn big_mod_inv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

struct ModSetup {
    p: u64,
    roots: Vec<u64>,
    quads: Vec<Vec<u64>>,
}

fn primes_from_three() -> impl Iterator<Item = u64> {
    (3u64..PRIME_LIMIT)
        .step_by(2)
        .filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn choose_prime(f: &[BigInt]) -> Option<ModSetup> {
    let mut best: Option<(usize, ModSetup)> = None;
    let mut seen = 0;
    for p in primes_from_three() {
        let pb = BigInt::from(p);
        if (f.last().unwrap() % &pb).is_zero() {
            continue;
        }
        let fm = to_mod(f, p);
        let df = mod_derivative(&fm, p);
        if mod_gcd(&fm, &df, p).len() != 1 {
            continue;
        }
        let monic = mod_scale(&fm, mod_inv(*fm.last().unwrap(), p)?, p);
        let (lin, quad) = distinct_degree_low(&monic, p);
        let mut rng = SplitRng::new(p);
        let roots: Vec<u64> = equal_degree_split(&lin, 1, p, &mut rng)
            .into_iter()
            .map(|l| (p - l[0]) % p)
            .collect();
        let quads = equal_degree_split(&quad, 2, p, &mut rng);
        let r = roots.len();
        let cost = r + r * r.saturating_sub(1) / 2 + quads.len();
        let setup = ModSetup { p, roots, quads };
        if cost == 0 {
            return Some(setup);
        }
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, setup));
        }
        seen += 1;
        if seen >= PRIMES_TO_COMPARE {
            break;
        }
    }
    best.map(|(_, s)| s)
}

/// Splits a monic squarefree `f` into the product of its linear factors and
/// the product of its irreducible quadratic factors modulo `p`.
fn distinct_degree_low(f: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let x = vec![0, 1];
    let xp = mod_powmod(&x, p as u128, f, p);
    let lin = mod_gcd(f, &mod_sub(&xp, &x, p), p);
    let (rest, _) = mod_divrem(f, &lin, p);
    if rest.len() <= 2 {
        return (lin, vec![1]);
    }
    let xp_r = mod_divrem(&xp, &rest, p).1;
    let xp2 = mod_powmod(&xp_r, p as u128, &rest, p);
    let quad = mod_gcd(&rest, &mod_sub(&xp2, &x, p), p);
    (lin, quad)
}

/// Deterministic generator for the random polynomials of the splitting step.
struct SplitRng(u64);

impl SplitRng {
    fn new(seed: u64) -> Self {
        SplitRng(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1)
    }
    fn next(&mut self, p: u64) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0 % p
    }
}

fn equal_degree_split(f: &[u64], d: usize, p: u64, rng: &mut SplitRng) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.to_vec()];
    }
    let exp = (((p as u128).pow(d as u32)) - 1) / 2;
    loop {
        let r = mod_trim((0..n).map(|_| rng.next(p)).collect());
        if r.len() < 2 {
            continue;
        }
        let b = mod_sub(&mod_powmod(&r, exp, f, p), &[1], p);
        let g = mod_gcd(f, &b, p);
        if g.len() > 1 && g.len() < f.len() {
            let (q, _) = mod_divrem(f, &g, p);
            let mut out = equal_degree_split(&g, d, p, rng);
            out.extend(equal_degree_split(&q, d, p, rng));
            out.sort();
            return out;
        }
    }
}

// ---- arithmetic in F_p[x]; coefficients ascending, no trailing zeros ----

fn mod_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn to_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    mod_trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn mod_inv(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    Some(s0.rem_euclid(p as i128) as u64)
}

fn mod_scale(f: &[u64], c: u64, p: u64) -> Vec<u64> {
    mod_trim(f.iter().map(|&x| x * c % p).collect())
}

fn mod_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    mod_trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn mod_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    mod_trim(out)
}

fn mod_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let inv = mod_inv(b[db], p).expect("unit leading coefficient");
    let mut rem = a.to_vec();
    let mut quot = vec![0u64; a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = rem[i + db] * inv % p;
        quot[i] = c;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - c * y % p) % p;
            }
        }
    }
    rem.truncate(db);
    (mod_trim(quot), mod_trim(rem))
}

fn mod_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let (_, r) = mod_divrem(&a, &b, p);
        a = b;
        b = r;
    }
    match a.last() {
        Some(&l) => mod_scale(&a, mod_inv(l, p).unwrap(), p),
        None => a,
    }
}

fn mod_ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = mod_divrem(&r0, &r1, p);
        let s = mod_sub(&s0, &mod_mul(&q, &s1, p), p);
        let t = mod_sub(&t0, &mod_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = mod_inv(*r0.last().unwrap(), p).unwrap();
    (
        mod_scale(&r0, inv, p),
        mod_scale(&s0, inv, p),
        mod_scale(&t0, inv, p),
    )
}

fn mod_derivative(f: &[u64], p: u64) -> Vec<u64> {
    mod_trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

fn mod_powmod(base: &[u64], mut exp: u128, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = mod_divrem(base, modulus, p).1;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mod_divrem(&mod_mul(&result, &b, p), modulus, p).1;
        }
        b = mod_divrem(&mod_mul(&b, &b, p), modulus, p).1;
        exp >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| Rat::from_int(x)).collect())
    }

    #[test]
    fn finds_linear_and_quadratic() {
        // (2x + 1)(x - 3)(x^2 + 1)(x^2 - 2)(x^3 - 2)
        let f = [p(&[1, 2]), p(&[-3, 1]), p(&[1, 0, 1]), p(&[-2, 0, 1]), p(&[-2, 0, 0, 1])]
            .iter()
            .fold(p(&[1]), |acc, g| &acc * g);
        let sf = small_factors(&f);
        assert_eq!(sf.linear, vec![Poly::linear_from_root(&Rat::frac(-1, 2)), p(&[-3, 1])]);
        assert_eq!(sf.quadratic, vec![p(&[-2, 0, 1]), p(&[1, 0, 1])]);
        assert_eq!(sf.remaining_degree(9), 3);
    }

    #[test]
    fn irreducible_quartic_has_no_small_factors() {
        let sf = small_factors(&p(&[1, 0, 0, 0, 1]));
        assert!(sf.linear.is_empty() && sf.quadratic.is_empty());
    }

    #[test]
    fn large_coefficients() {
        // (1000003 x - 999983)(x^2 + 123456789)(x^3 + x + 1)
        let f = &(&p(&[-999983, 1000003]) * &p(&[123456789, 0, 1])) * &p(&[1, 1, 0, 1]);
        let sf = small_factors(&f);
        assert_eq!(sf.linear, vec![Poly::linear_from_root(&Rat::frac(999983, 1000003))]);
        assert_eq!(sf.quadratic, vec![p(&[123456789, 0, 1])]);
    }
}
