//! Hilbert series and Hilbert polynomials of graded quotients.
//!
//! The series of `R/I` equals that of `R/in(I)`, so everything is computed
//! from the leading monomials of a Gröbner basis by the pivot recursion
//! `N(M) = N(M + (x^a)) + t^{deg x^a} N(M : x^a)` on monomial ideals.

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::linalg::poly_rank;
use crate::monomial::{binomial, monomials_of_degree, Monomial, MAX_VARS};
use crate::poly::Poly;
use crate::ring::Ring;
use std::sync::Arc;

/// `numerator / prod_i (1 - t^{w_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub weights: Vec<u32>,
}

fn trim(mut a: Vec<i64>) -> Vec<i64> {
    while a.len() > 1 && a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect())
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn one_minus_t_pow(e: u32) -> Vec<i64> {
    let mut v = vec![0i64; e as usize + 1];
    v[0] = 1;
    v[e as usize] -= 1;
    v
}

/// Exact division by a polynomial with leading and trailing coefficient ±1.
fn poly_div_exact(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead = *b.last().unwrap();
    if lead.abs() != 1 {
        return None;
    }
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return if r.iter().all(|&x| x == 0) { Some(vec![0]) } else { None };
    }
    let mut q = vec![0i64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * lead;
        q[k] = c;
        for j in 0..=db {
            r[k + j] -= c * b[j];
        }
    }
    r.iter().all(|&x| x == 0).then(|| trim(q))
}

fn weighted_deg(m: &Monomial, w: &[u32]) -> u32 {
    m.weighted_degree(w)
}

fn minimize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn numerator(gens: Vec<Monomial>, w: &[u32]) -> Vec<i64> {
    let gens = minimize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.contains(&Monomial::ONE) {
        return vec![0];
    }
    // Pairwise coprime generators: the numerator factors.
    let mut seen = 0u32;
    let mut coprime = true;
    for g in &gens {
        let s = g.support();
        if s & seen != 0 {
            coprime = false;
            break;
        }
        seen |= s;
    }
    if coprime {
        return gens
            .iter()
            .fold(vec![1i64], |acc, g| poly_mul(&acc, &one_minus_t_pow(weighted_deg(g, w))));
    }
    // Pivot on the variable occurring in most generators.
    let mut counts = [0usize; MAX_VARS];
    for g in &gens {
        for (i, c) in counts.iter_mut().enumerate().take(w.len()) {
            if g.exp(i) > 0 {
                *c += 1;
            }
        }
    }
    let i = (0..w.len()).max_by_key(|&i| counts[i]).unwrap();
    // Exponents from generators other than the pure power of x_i; the pivot
    // then lies outside the ideal and both branches are smaller.
    let mut exps: Vec<u32> = gens
        .iter()
        .filter(|g| g.exp(i) > 0 && g.exp(i) != g.degree())
        .map(|g| g.exp(i))
        .collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2];
    let pivot = Monomial::var(i).with_exp(i, e);
    let mut plus = gens.clone();
    plus.push(pivot);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| g.with_exp(i, g.exp(i).saturating_sub(e)))
        .collect();
    let a = numerator(plus, w);
    let b = numerator(colon, w);
    let shift = (e * w[i]) as usize;
    let mut bs = vec![0i64; shift];
    bs.extend(b);
    poly_add(&a, &bs)
}

impl HilbertSeries {
    /// Series of `R / (gens)` for a monomial ideal.
    pub fn of_monomial_ideal(gens: &[Monomial], weights: &[u32]) -> Self {
        HilbertSeries { numerator: numerator(gens.to_vec(), weights), weights: weights.to_vec() }
    }

    /// Series of `R / I` from a Gröbner basis of `I` (homogeneous input).
    pub fn of_basis(gb: &GroebnerBasis) -> Self {
        let ring = gb.ring();
        let w: Vec<u32> = (0..ring.nvars()).map(|i| ring.var_weight(i)).collect();
        Self::of_monomial_ideal(&gb.leading_monomials(), &w)
    }

    /// Coefficient of `t^d`.
    pub fn value(&self, d: u32) -> i64 {
        // Expand 1/prod(1 - t^w) up to degree d.
        let d = d as usize;
        let mut series = vec![0i64; d + 1];
        series[0] = 1;
        for &w in &self.weights {
            let w = w as usize;
            for k in w..=d {
                series[k] += series[k - w];
            }
        }
        self.numerator
            .iter()
            .enumerate()
            .filter(|(j, _)| *j <= d)
            .map(|(j, &c)| c * series[d - j])
            .sum()
    }

    /// Rewrites the series as `q(t) / (1 - t)^r` with `q(1) != 0`.
    pub fn reduced(&self) -> Result<(Vec<i64>, usize)> {
        let mut q = trim(self.numerator.clone());
        if q.iter().all(|&c| c == 0) {
            return Ok((vec![0], 0));
        }
        for &w in &self.weights {
            if w > 1 {
                // (1 - t^w) = (1 - t)(1 + ... + t^{w-1})
                let cyc = vec![1i64; w as usize];
                q = poly_div_exact(&q, &cyc).ok_or_else(|| {
                    Error::InvalidArgument("series is not standard graded".into())
                })?;
            }
        }
        let mut r = self.weights.len();
        while r > 0 && q.iter().sum::<i64>() == 0 {
            q = poly_div_exact(&q, &[1, -1]).expect("root at 1");
            r -= 1;
        }
        Ok((q, r))
    }

    /// Hilbert polynomial evaluated at `d`.
    pub fn polynomial_value(&self, d: i64) -> Result<i64> {
        let (q, r) = self.reduced()?;
        if r == 0 {
            return Ok(0);
        }
        Ok(q.iter()
            .enumerate()
            .map(|(j, &c)| c * binomial_poly(d - j as i64, r - 1))
            .sum())
    }

    /// Projective dimension (`-1` for the empty scheme) and degree.
    pub fn dim_degree(&self) -> Result<(i64, i64)> {
        let (q, r) = self.reduced()?;
        Ok((r as i64 - 1, q.iter().sum()))
    }

    /// Arithmetic genus `(-1)^dim (P(0) - 1)`.
    pub fn arithmetic_genus(&self) -> Result<i64> {
        let (dim, _) = self.dim_degree()?;
        let p0 = self.polynomial_value(0)?;
        Ok(if dim % 2 == 0 { p0 - 1 } else { 1 - p0 })
    }

    /// Genus of a general curve section: `1 - chi` of the
    /// `(dim - 1)`-fold difference of the Hilbert polynomial.
    pub fn sectional_genus(&self) -> Result<i64> {
        let (dim, deg) = self.dim_degree()?;
        if dim < 1 {
            return Err(Error::InvalidArgument("sectional genus needs positive dimension".into()));
        }
        // Difference operator applied dim-1 times, evaluated at t.
        let t = 50i64;
        let k = (dim - 1) as usize;
        let mut val = 0i64;
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            val += sign * binomial(k as u64, j as u64) as i64 * self.polynomial_value(t - j as i64)?;
        }
        Ok(1 - (val - deg * t))
    }
}

/// `C(x + k, k)` as a polynomial in `x`, exact for every integer `x`.
fn binomial_poly(x: i64, k: usize) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 1..=k as i128 {
        num *= x as i128 + i;
        den *= i;
    }
    (num / den) as i64
}

/// `dim_F (R/I)_d` from a Gröbner basis.
pub fn hilbert_function(gb: &GroebnerBasis, d: u32) -> i64 {
    HilbertSeries::of_basis(gb).value(d)
}

/// `dim_F (R/I)_d` computed directly by linear algebra on the degree-`d`
/// part of the ideal spanned by monomial multiples of the generators.
pub fn hilbert_function_by_linear_algebra(ring: &Arc<Ring>, gens: &[Poly], d: u32) -> Result<i64> {
    if ring.grading().is_some() {
        return Err(Error::InvalidArgument("standard grading required".into()));
    }
    let n = ring.nvars();
    let mut span = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous("generator".into()));
        }
        let e = g.degree().unwrap();
        if e <= d {
            for m in monomials_of_degree(d - e, n) {
                span.push(g.mul_term(&m, 1));
            }
        }
    }
    let total = binomial((d as usize + n - 1) as u64, (n - 1) as u64) as i64;
    Ok(total - poly_rank(ring, &span)? as i64)
}

/// Hilbert series of `R/I`.
pub fn hilbert_series(gb: &GroebnerBasis) -> HilbertSeries {
    HilbertSeries::of_basis(gb)
}

/// Projective dimension and degree of `V(I)`.
pub fn dim_degree(gb: &GroebnerBasis) -> Result<(i64, i64)> {
    HilbertSeries::of_basis(gb).dim_degree()
}

/// Sectional genus of the projective scheme defined by `I`.
pub fn sectional_genus(gb: &GroebnerBasis) -> Result<i64> {
    HilbertSeries::of_basis(gb).sectional_genus()
}

/// Dimension of `I_d` for a Gröbner basis of `I` in the standard grading.
pub fn ideal_dimension_in_degree(gb: &GroebnerBasis, d: u32) -> i64 {
    let n = gb.ring().nvars();
    binomial((d as usize + n - 1) as u64, (n - 1) as u64) as i64 - hilbert_function(gb, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::groebner::groebner_basis;
    use crate::text::parse_poly;

    fn ring(n: usize) -> Arc<Ring> {
        Ring::new(Fp::new(32003).unwrap(), n).unwrap()
    }

    #[test]
    fn twisted_cubic_invariants() {
        let r = ring(4);
        let g: Vec<Poly> = ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]
            .iter()
            .map(|s| parse_poly(&r, s).unwrap())
            .collect();
        let gb = groebner_basis(&r, &g).unwrap();
        let hs = hilbert_series(&gb);
        assert_eq!(hs.dim_degree().unwrap(), (1, 3));
        assert_eq!(hs.arithmetic_genus().unwrap(), 0);
        for d in 0..8 {
            assert_eq!(hs.value(d), 3 * d as i64 + 1);
            assert_eq!(hilbert_function_by_linear_algebra(&r, &g, d).unwrap(), 3 * d as i64 + 1);
        }
    }

    #[test]
    fn plane_curve_genus() {
        let r = ring(3);
        let g = parse_poly(&r, "x0^4 + x1^4 + x2^4").unwrap();
        let gb = groebner_basis(&r, &[g]).unwrap();
        let hs = hilbert_series(&gb);
        assert_eq!(hs.dim_degree().unwrap(), (1, 4));
        assert_eq!(hs.arithmetic_genus().unwrap(), 3);
        assert_eq!(hs.sectional_genus().unwrap(), 3);
    }

    #[test]
    fn cubic_surface_sections() {
        let r = ring(4);
        let g = parse_poly(&r, "x0^3 + x1^3 + x2^3 + x3^3").unwrap();
        let gb = groebner_basis(&r, &[g]).unwrap();
        let hs = hilbert_series(&gb);
        assert_eq!(hs.dim_degree().unwrap(), (2, 3));
        assert_eq!(hs.sectional_genus().unwrap(), 1);
        assert_eq!(hs.arithmetic_genus().unwrap(), 0);
    }

    #[test]
    fn weighted_series_standardizes() {
        let w = [1, 1, 2];
        // k[x, y, z] / (z) with deg z = 2 has the series of k[x, y].
        let hs = HilbertSeries::of_monomial_ideal(&[Monomial::var(2)], &w);
        assert_eq!(hs.dim_degree().unwrap(), (1, 1));
        assert_eq!(hs.value(5), 6);
    }
}
