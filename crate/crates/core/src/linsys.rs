//! Linear systems of forms with prescribed vanishing orders.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::groebner::{groebner_basis_with, GbOptions, GroebnerBasis, LinearChange};
use crate::groebner::ops::{divide_out_var, ideal_power};
use crate::linalg::{poly_echelon, Matrix, MonomialIndex};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Poly;
use crate::random::random_element;
use crate::ring::Ring;
use rand::Rng;
use std::sync::Arc;

/// Monomials of degree `d` with their column positions.
fn degree_index(d: u32, n: usize) -> MonomialIndex {
    MonomialIndex::new(monomials_of_degree(d, n))
}

/// Coefficient of `prod x^{a-b}` in `d^b x^a`: the product of falling
/// factorials `a_i (a_i - 1) ... (a_i - b_i + 1)`.
fn falling(f: &Fp, a: &Monomial, b: &Monomial, n: usize) -> u32 {
    let mut c = 1u32;
    for i in 0..n {
        for k in 0..b.exp(i) {
            c = f.mul(c, (a.exp(i) - k) % f.p());
        }
    }
    c
}

/// Basis of plane curves of degree `d` with multiplicity at least `m_j` at
/// the point `p_j` (given by homogeneous coordinates).
pub fn plane_system(ring: &Arc<Ring>, d: u32, points: &[([u32; 3], u32)]) -> Result<Vec<Poly>> {
    if ring.nvars() != 3 || ring.grading().is_some() {
        return Err(Error::InvalidArgument("plane systems live in a standard ring with 3 variables".into()));
    }
    let f = *ring.field();
    let cols = degree_index(d, 3);
    let mut m = Matrix::zeros(0, cols.len());
    for (pt, mult) in points {
        if *mult == 0 {
            continue;
        }
        if *mult > d + 1 {
            return Ok(Vec::new());
        }
        let pows: Vec<Vec<u32>> = (0..3)
            .map(|i| {
                let mut v = vec![1u32; d as usize + 1];
                for k in 1..=d as usize {
                    v[k] = f.mul(v[k - 1], pt[i] % f.p());
                }
                v
            })
            .collect();
        for b in monomials_of_degree(mult - 1, 3) {
            let row: Vec<u32> = cols
                .monomials
                .iter()
                .map(|a| {
                    if !b.divides(a) {
                        return 0;
                    }
                    let rest = a.div_unchecked(&b);
                    let mut v = falling(&f, a, &b, 3);
                    for (i, pw) in pows.iter().enumerate() {
                        v = f.mul(v, pw[rest.exp(i) as usize]);
                    }
                    v
                })
                .collect();
            m.push_row(&row);
        }
    }
    let k = m.kernel(&f)?;
    let polys: Vec<Poly> = (0..k.rows).map(|i| cols.poly(ring, k.row(i))).collect();
    poly_echelon(ring, &polys)
}

/// Functionals on `R_d` whose common kernel is `I_d`: row `s` of the
/// result reads off the coefficient of the standard monomial `s` in the
/// normal form.
fn ideal_annihilator(gb: &GroebnerBasis, d: u32) -> Result<Matrix> {
    let ring = gb.ring();
    let cols = degree_index(d, ring.nvars());
    let mons: Vec<Poly> = cols.monomials.iter().map(|m| Poly::monomial(ring, *m, 1)).collect();
    let nfs = gb.normal_forms(&mons)?;
    let std_idx = MonomialIndex::of_polys(ring, &nfs);
    let mut m = Matrix::zeros(std_idx.len(), cols.len());
    for (j, nf) in nfs.iter().enumerate() {
        for (t, c) in nf.terms() {
            m.set(std_idx.get(t).unwrap(), j, *c);
        }
    }
    Ok(m)
}

/// Kernel of the stacked conditions `C . d_i` for all variables, where `C`
/// annihilates a subspace of `R_{d-1}`; returned as row vectors in `R_d`.
fn kernel_of_derivative_conditions(f: &Fp, c: &Matrix, d: u32, n: usize) -> Result<Matrix> {
    let lower = degree_index(d - 1, n);
    let upper = degree_index(d, n);
    // Derivative of a vector in R_d as a vector in R_{d-1}.
    let derive = |v: &[u32], i: usize| -> Vec<u32> {
        let mut out = vec![0u32; lower.len()];
        for (j, a) in upper.monomials.iter().enumerate() {
            if v[j] != 0 && a.exp(i) > 0 {
                let k = lower.get(&a.with_exp(i, a.exp(i) - 1)).unwrap();
                out[k] = f.add(out[k], f.mul(v[j], a.exp(i) % f.p()));
            }
        }
        out
    };
    let mut basis = Matrix::identity(upper.len());
    for i in 0..n {
        if basis.rows == 0 {
            break;
        }
        // Images d_i(v) for the current basis vectors, as columns.
        let mut dv = Matrix::zeros(0, lower.len());
        for r in 0..basis.rows {
            dv.push_row(&derive(basis.row(r), i));
        }
        let p = c.mul(f, &dv.transpose());
        let u = p.kernel(f)?;
        basis = u.mul(f, &basis);
        crate::exec::check_budget()?;
    }
    Ok(basis)
}

/// Basis of the forms of degree `d` vanishing to order at least `e` along
/// the scheme of the saturated ideal with Gröbner basis `gb`: all partial
/// derivatives of order `e - 1` must lie in the ideal. Computed one
/// derivative order at a time by linear algebra.
pub fn multiplicity_basis_oracle(gb: &GroebnerBasis, e: u32, d: u32) -> Result<Vec<Poly>> {
    let ring = gb.ring();
    if ring.grading().is_some() {
        return Err(Error::InvalidArgument("standard grading required".into()));
    }
    if e == 0 {
        return Ok(monomials_of_degree(d, ring.nvars()).into_iter().map(|m| Poly::monomial(ring, m, 1)).collect());
    }
    if d + 1 < e {
        return Ok(Vec::new());
    }
    let f = *ring.field();
    let n = ring.nvars();
    let base = d + 1 - e;
    let mut ann = ideal_annihilator(gb, base)?;
    let mut space: Option<Matrix> = None;
    for k in 1..e {
        let deg = base + k;
        let ker = kernel_of_derivative_conditions(&f, &ann, deg, n)?;
        if k + 1 < e {
            ann = ker.kernel(&f)?;
        }
        space = Some(ker);
    }
    let idx = degree_index(d, n);
    let polys: Vec<Poly> = match space {
        Some(s) => (0..s.rows).map(|i| idx.poly(ring, s.row(i))).collect(),
        None => {
            let k = ann.kernel(&f)?;
            (0..k.rows).map(|i| idx.poly(ring, k.row(i))).collect()
        }
    };
    poly_echelon(ring, &polys)
}

/// Basis of `I_d` for a Gröbner basis of `I`.
pub fn ideal_in_degree(gb: &GroebnerBasis, d: u32) -> Result<Vec<Poly>> {
    let ring = gb.ring();
    let f = *ring.field();
    let ann = ideal_annihilator(gb, d)?;
    let k = ann.kernel(&f)?;
    let idx = degree_index(d, ring.nvars());
    let polys: Vec<Poly> = (0..k.rows).map(|i| idx.poly(ring, k.row(i))).collect();
    poly_echelon(ring, &polys)
}

/// Basis of the degree-`d` part of the saturation of `I^e`.
///
/// After a random change of coordinates that makes the last variable
/// general, a degree-truncated Gröbner basis of `I^e` is divided by powers
/// of the last variable. The truncation grows until the dimension of the
/// degree-`d` part is unchanged for two consecutive bounds.
pub fn power_saturation_basis<R: Rng>(
    ring: &Arc<Ring>,
    gens: &[Poly],
    e: u32,
    d: u32,
    rng: &mut R,
) -> Result<Vec<Poly>> {
    let n = ring.nvars();
    let l = random_element(ring, 1, rng);
    let ch = LinearChange::to_last(ring, &l)?;
    let moved = ch.apply(&ideal_power(gens, e));
    let min_gen = moved.iter().filter_map(|g| g.degree()).min().unwrap_or(0);
    let mut limit = d.max(min_gen) + 1;
    let mut last: Option<usize> = None;
    loop {
        crate::exec::check_budget()?;
        let gb = groebner_basis_with(ring, &moved, &GbOptions { degree_limit: Some(limit), ..Default::default() })?;
        let mut span = Vec::new();
        for g in gb.polys() {
            let q = divide_out_var(g, n - 1);
            let dq = q.degree().unwrap();
            if dq <= d {
                for m in monomials_of_degree(d - dq, n) {
                    span.push(q.mul_term(&m, 1));
                }
            }
        }
        let basis = poly_echelon(ring, &span)?;
        if last == Some(basis.len()) {
            return poly_echelon(ring, &ch.undo(&basis));
        }
        last = Some(basis.len());
        limit += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::groebner::groebner_basis;
    use crate::random::seeded;

    #[test]
    fn cubics_through_points() {
        let r = Ring::new(Fp::new(32003).unwrap(), 3).unwrap();
        let pts = [([1, 0, 0], 1), ([0, 1, 0], 1), ([0, 0, 1], 1), ([1, 1, 1], 1)];
        assert_eq!(plane_system(&r, 3, &pts).unwrap().len(), 6);
        // Conics singular at a point: pairs of lines through it.
        assert_eq!(plane_system(&r, 2, &[([1, 2, 3], 2)]).unwrap().len(), 3);
        // Quartics with a triple point and a double point.
        assert_eq!(plane_system(&r, 4, &[([1, 2, 3], 3), ([5, 1, 7], 2)]).unwrap().len(), 15 - 6 - 3);
    }

    #[test]
    fn symbolic_square_of_twisted_cubic() {
        let r = Ring::new(Fp::new(32003).unwrap(), 4).unwrap();
        let g: Vec<Poly> = ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]
            .iter()
            .map(|s| crate::text::parse_poly(&r, s).unwrap())
            .collect();
        let gb = groebner_basis(&r, &g).unwrap();
        let mut rng = seeded(1);
        for d in 3..=5 {
            let a = multiplicity_basis_oracle(&gb, 2, d).unwrap();
            let b = power_saturation_basis(&r, &g, 2, d, &mut rng).unwrap();
            assert_eq!(a, b, "degree {d}");
        }
        // I^2 of the twisted cubic is saturated: 6 quartics.
        assert_eq!(multiplicity_basis_oracle(&gb, 2, 4).unwrap().len(), 6);
        assert_eq!(multiplicity_basis_oracle(&gb, 1, 2).unwrap().len(), 3);
        assert_eq!(ideal_in_degree(&gb, 2).unwrap().len(), 3);
    }
}
