//! Zero-dimensional projective schemes: degree, number of distinct points
//! and rational points.

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, GroebnerBasis, LinearChange};
use crate::hilbert::HilbertSeries;
use crate::linalg::Matrix;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::random::random_element;
use crate::ring::Ring;
use crate::univariate::{minimal_polynomial, squarefree_degree};
use rand::Rng;
use rustc_hash::FxHashMap;
use std::sync::Arc;

/// Summary of a zero-dimensional scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCount {
    /// Length of the scheme.
    pub degree: usize,
    /// Number of points over the algebraic closure.
    pub distinct: usize,
}

/// Degree and number of distinct points of the projective scheme defined by
/// a saturated homogeneous ideal of dimension zero (or empty).
pub fn count_points<R: Rng>(gb: &GroebnerBasis, rng: &mut R) -> Result<PointCount> {
    let ring = gb.ring();
    let (dim, deg) = HilbertSeries::of_basis(gb).dim_degree()?;
    if dim < 0 {
        return Ok(PointCount { degree: 0, distinct: 0 });
    }
    if dim > 0 {
        return Err(Error::InvalidArgument(format!("scheme has dimension {dim}")));
    }
    let n = ring.nvars();
    // General coordinates: the last variable vanishes at no point, so the
    // affine chart x_{n-1} = 1 sees the whole scheme.
    let l = random_element(ring, 1, rng);
    let ch = LinearChange::to_last(ring, &l)?;
    let moved = groebner_basis(ring, &ch.apply(gb.polys()))?;
    let aff = Ring::with_order(*ring.field(), n - 1, MonomialOrder::Grevlex, None)?;
    let dehom: Vec<Poly> = moved
        .polys()
        .iter()
        .map(|p| {
            let terms = p.terms().iter().map(|&(m, c)| (m.with_exp(n - 1, 0), c)).collect();
            Poly::from_terms(&aff, terms)
        })
        .collect();
    let agb = groebner_basis(&aff, &dehom)?;
    let std = standard_monomials(&agb)?;
    if std.len() as i64 != deg {
        return Err(Error::Certification(format!(
            "affine chart has {} standard monomials, expected {deg}",
            std.len()
        )));
    }
    let index: FxHashMap<Monomial, usize> = std.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let ell = random_element(&aff, 1, rng);
    let prods: Vec<Poly> = std.iter().map(|m| ell.mul_term(m, 1)).collect();
    let nfs = agb.normal_forms(&prods)?;
    let mut mat = Matrix::zeros(std.len(), std.len());
    for (j, nf) in nfs.iter().enumerate() {
        for (t, c) in nf.terms() {
            let i = *index
                .get(t)
                .ok_or_else(|| Error::Certification("normal form outside the standard basis".into()))?;
            mat.set(i, j, *c);
        }
    }
    let f = *ring.field();
    let mp = minimal_polynomial(&f, &mat, rng)?;
    Ok(PointCount { degree: std.len(), distinct: squarefree_degree(&f, &mp) })
}

/// Standard monomials of a zero-dimensional affine ideal.
pub fn standard_monomials(gb: &GroebnerBasis) -> Result<Vec<Monomial>> {
    let n = gb.ring().nvars();
    let lms = gb.leading_monomials();
    let mut out = vec![];
    let mut frontier = vec![Monomial::ONE];
    let mut seen = rustc_hash::FxHashSet::default();
    if gb.is_unit() {
        return Ok(out);
    }
    while let Some(m) = frontier.pop() {
        if !seen.insert(m) || lms.iter().any(|l| l.divides(&m)) {
            continue;
        }
        out.push(m);
        if out.len() > 1_000_000 {
            return Err(Error::InvalidArgument("ideal is not zero-dimensional".into()));
        }
        for i in 0..n {
            frontier.push(m.mul(&Monomial::var(i)));
        }
    }
    let ring = gb.ring().clone();
    out.sort_by(|a, b| ring.cmp(b, a));
    Ok(out)
}

/// Ideal of points of `P^{n-1}` (each point given by coordinates).
pub fn ideal_of_points(ring: &Arc<Ring>, points: &[Vec<u32>]) -> Result<GroebnerBasis> {
    let f = *ring.field();
    let n = ring.nvars();
    let mut per_point = Vec::new();
    for p in points {
        // Linear forms vanishing at p: x_i p_k - x_k p_i with p_k != 0.
        let k = p.iter().position(|&c| c != 0).ok_or_else(|| Error::InvalidArgument("zero point".into()))?;
        let forms: Vec<Poly> = (0..n)
            .filter(|&i| i != k)
            .map(|i| Poly::var(ring, i).scale(p[k]).add_scaled(&Poly::var(ring, k), f.neg(p[i])))
            .collect();
        per_point.push(forms);
    }
    let mut acc = groebner_basis(ring, &per_point[0])?;
    for forms in &per_point[1..] {
        acc = crate::groebner::intersect(ring, acc.polys(), forms)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::random::seeded;

    #[test]
    fn counts_points_with_multiplicity() {
        let r = Ring::new(Fp::new(32003).unwrap(), 3).unwrap();
        let mut rng = seeded(3);
        let pts = vec![vec![1, 2, 3], vec![4, 5, 6], vec![1, 0, 0], vec![7, 1, 9]];
        let gb = ideal_of_points(&r, &pts).unwrap();
        assert_eq!(count_points(&gb, &mut rng).unwrap(), PointCount { degree: 4, distinct: 4 });
        // A double point: (x0^2, x1) has length 2 at one point.
        let x0 = Poly::var(&r, 0);
        let x1 = Poly::var(&r, 1);
        let gb = groebner_basis(&r, &[x0.mul(&x0), x1]).unwrap();
        assert_eq!(count_points(&gb, &mut rng).unwrap(), PointCount { degree: 2, distinct: 1 });
    }
}
