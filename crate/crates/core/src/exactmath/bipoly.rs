//! Polynomials in a main variable whose coefficients are polynomials in a
//! parameter, with elimination by evaluation and interpolation.

use super::{interpolate, ExactError, Field, Poly, Rat};

/// `Σ cᵢ(u) · vⁱ`: main variable `v`, parameter `u`. Rows are indexed by the
/// power of the main variable.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BiPoly {
    rows: Vec<Poly>,
}

impl BiPoly {
    pub fn from_rows(mut rows: Vec<Poly>) -> Self {
        while rows.last().is_some_and(Poly::is_zero) {
            rows.pop();
        }
        BiPoly { rows }
    }

    /// A polynomial in the main variable with constant coefficients.
    pub fn from_main(p: &Poly) -> Self {
        BiPoly::from_rows(p.coeffs().iter().map(|c| Poly::constant(c.clone())).collect())
    }

    /// A polynomial in the parameter alone.
    pub fn from_param(p: Poly) -> Self {
        BiPoly::from_rows(vec![p])
    }

    pub fn rows(&self) -> &[Poly] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn main_degree(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn param_degree(&self) -> usize {
        self.rows.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    pub fn lead_row(&self) -> Option<&Poly> {
        self.rows.last()
    }

    /// Specializes the parameter; the result keeps trailing zero rows out.
    pub fn eval_param(&self, u: &Rat) -> Poly {
        Poly::from_coeffs(self.rows.iter().map(|r| r.eval(u)).collect())
    }

    /// Coefficients at a parameter value, padded to the formal main degree.
    pub fn eval_param_formal(&self, u: &Rat) -> Vec<Rat> {
        self.rows.iter().map(|r| r.eval(u)).collect()
    }

    /// Specializes the main variable to a value.
    pub fn eval_main(&self, v: &Rat) -> Poly {
        let mut acc = Poly::zero();
        for r in self.rows.iter().rev() {
            acc = &acc.scale(v) + r;
        }
        acc
    }

    /// Substitutes a polynomial in the parameter for the main variable.
    pub fn substitute_main(&self, v: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for r in self.rows.iter().rev() {
            acc = &(&acc * v) + r;
        }
        acc
    }

    /// Substitutes a main-variable value from an extension field, with the
    /// parameter also specialized there.
    pub fn eval_both_in<E: Field>(&self, u: &E, v: &E) -> E {
        let mut acc = u.zero_like();
        for r in self.rows.iter().rev() {
            acc = acc.times(v).plus(&r.eval_with(u, |c| u.embed(c)));
        }
        acc
    }

    pub fn d_main(&self) -> Self {
        BiPoly::from_rows(
            self.rows
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, r)| r.scale(&Rat::from_int(i as i64)))
                .collect(),
        )
    }

    pub fn d_param(&self) -> Self {
        BiPoly::from_rows(self.rows.iter().map(Poly::derivative).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.rows.len().max(other.rows.len());
        let zero = Poly::zero();
        BiPoly::from_rows(
            (0..n)
                .map(|i| self.rows.get(i).unwrap_or(&zero) + other.rows.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return BiPoly::default();
        }
        let mut rows = vec![Poly::zero(); self.rows.len() + other.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows.iter().enumerate() {
                rows[i + j] = &rows[i + j] + &(a * b);
            }
        }
        BiPoly::from_rows(rows)
    }

    /// Exact division by a monic polynomial in the main variable with
    /// constant coefficients; `None` if it does not divide.
    pub fn div_main_monic(&self, divisor: &Poly) -> Option<Self> {
        let dd = divisor.degree()?;
        assert!(divisor.is_monic(), "monic divisor required");
        if self.rows.len() <= dd {
            return self.is_zero().then(BiPoly::default);
        }
        let mut rem = self.rows.clone();
        let mut quot = vec![Poly::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone();
            for (j, dc) in divisor.coeffs().iter().enumerate() {
                rem[i + j] = &rem[i + j] - &c.scale(dc);
            }
            quot[i] = c;
        }
        rem[..dd].iter().all(Poly::is_zero).then(|| BiPoly::from_rows(quot))
    }

    /// Resultant in the main variable with formal degrees taken from the row
    /// counts, as a polynomial in the parameter.
    pub fn resultant_main(&self, other: &Self) -> Result<Poly, ExactError> {
        let m = self.main_degree().ok_or(ExactError::ZeroInput)?;
        let n = other.main_degree().ok_or(ExactError::ZeroInput)?;
        let bound = n * self.param_degree() + m * other.param_degree();
        let points: Vec<(Rat, Rat)> = sample_points(bound + 1)
            .map(|u| {
                let f = self.eval_param_formal(&u);
                let g = other.eval_param_formal(&u);
                (u, sylvester_resultant(&f, &g))
            })
            .collect();
        Ok(interpolate(&points))
    }

    /// Discriminant in the main variable at the formal degree.
    pub fn discriminant_main(&self) -> Result<Poly, ExactError> {
        let d = self.main_degree().ok_or(ExactError::ZeroInput)?;
        if d == 0 {
            return Err(ExactError::ConstantInput);
        }
        let res = self.resultant_main(&self.d_main())?;
        let lead = self.lead_row().unwrap();
        let q = res.exact_div(lead).ok_or(ExactError::Internal("leading row does not divide resultant"))?;
        Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
    }
}

/// `0, 1, -1, 2, -2, …`
fn sample_points(n: usize) -> impl Iterator<Item = Rat> {
    (0..n as i64).map(|i| {
        let k = (i + 1) / 2;
        Rat::from_int(if i % 2 == 1 { k } else { -k })
    })
}

/// Determinant of the Sylvester matrix of two coefficient vectors (ascending),
/// using the vector lengths as formal degrees.
pub fn sylvester_resultant(f: &[Rat], g: &[Rat]) -> Rat {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return Rat::one();
    }
    let mut mat = vec![vec![Rat::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    determinant(mat)
}

/// Determinant by Gaussian elimination over ℚ.
pub fn determinant(mut mat: Vec<Vec<Rat>>) -> Rat {
    let n = mat.len();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !mat[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            mat.swap(piv, col);
            det = -det;
        }
        let p = mat[col][col].clone();
        det = &det * &p;
        let inv = p.recip().unwrap();
        for r in col + 1..n {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] * &inv;
            let (top, bottom) = mat.split_at_mut(r);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst = &*dst - &(&factor * src);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{discriminant, resultant};

    #[test]
    fn sylvester_matches_euclid() {
        let f = Poly::from_ints(&[1, -3, 0, 2]);
        let g = Poly::from_ints(&[-5, 1, 4]);
        assert_eq!(sylvester_resultant(f.coeffs(), g.coeffs()), resultant(&f, &g).unwrap());
    }

    #[test]
    fn discriminant_of_depressed_cubic_family() {
        // v^3 + u v + 1 has discriminant -4u^3 - 27
        let f = BiPoly::from_rows(vec![
            Poly::from_ints(&[1]),
            Poly::from_ints(&[0, 1]),
            Poly::zero(),
            Poly::from_ints(&[1]),
        ]);
        assert_eq!(f.discriminant_main().unwrap(), Poly::from_ints(&[-27, 0, 0, -4]));
        let at = f.eval_param(&Rat::from_int(2));
        assert_eq!(discriminant(&at).unwrap(), Rat::from_int(-59));
    }

    #[test]
    fn monic_division() {
        let f = BiPoly::from_rows(vec![Poly::from_ints(&[0, 1]), Poly::from_ints(&[-1]), Poly::from_ints(&[1])]);
        // (v - 1)(v + u)... check a failing division and a succeeding one
        let lin = Poly::from_ints(&[-1, 1]);
        assert!(f.div_main_monic(&lin).is_none());
        let prod = f.mul(&BiPoly::from_main(&lin));
        assert_eq!(prod.div_main_monic(&lin).unwrap(), f);
    }
}
