//! Ideal operations built on Gröbner bases: elimination, saturation,
//! quotients, intersections, powers and singular loci.

use super::{groebner_basis, GroebnerBasis};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::random::random_element;
use crate::ring::Ring;
use rand::Rng;
use std::sync::Arc;

/// Ring with one extra trailing variable of the given weight, grevlex.
pub fn extend_ring(ring: &Ring, weight: u32) -> Result<Arc<Ring>> {
    let n = ring.nvars();
    let mut grading: Vec<u32> = (0..n).map(|i| ring.var_weight(i)).collect();
    grading.push(weight);
    Ring::with_order(*ring.field(), n + 1, MonomialOrder::Grevlex, Some(grading))
}

/// Divides `p` by the largest power of `x_i` dividing it.
pub fn divide_out_var(p: &Poly, i: usize) -> Poly {
    let k = p.terms().iter().map(|t| t.0.exp(i)).min().unwrap_or(0);
    if k == 0 {
        return p.clone();
    }
    let d = Monomial::var(i).with_exp(i, k);
    let terms = p.terms().iter().map(|&(m, c)| (m.div_unchecked(&d), c)).collect();
    Poly::from_sorted_terms(p.ring(), terms)
}

/// Elements of a Gröbner basis of `gens` that do not involve the variables
/// in `vars`. The result generates the elimination ideal.
pub fn eliminate(ring: &Arc<Ring>, gens: &[Poly], vars: &[usize]) -> Result<Vec<Poly>> {
    let n = ring.nvars();
    let w: Vec<u32> = (0..n).map(|i| vars.contains(&i) as u32).collect();
    let grading = (0..n).map(|i| ring.var_weight(i)).collect();
    let er = ring.reorder(MonomialOrder::Weighted(w), Some(grading))?;
    let moved: Vec<Poly> = gens.iter().map(|g| g.to_ring(&er)).collect();
    let gb = groebner_basis(&er, &moved)?;
    Ok(gb
        .polys()
        .iter()
        .filter(|p| p.terms().iter().all(|t| vars.iter().all(|&v| t.0.exp(v) == 0)))
        .map(|p| p.to_ring(ring))
        .collect())
}

/// `I : x_i^infinity` for homogeneous `I`, via grevlex with `x_i` moved last.
pub fn saturate_by_variable(ring: &Arc<Ring>, gens: &[Poly], i: usize) -> Result<GroebnerBasis> {
    let n = ring.nvars();
    // Permutation putting x_i last.
    let map: Vec<usize> = (0..n)
        .map(|k| match k.cmp(&i) {
            std::cmp::Ordering::Less => k,
            std::cmp::Ordering::Equal => n - 1,
            std::cmp::Ordering::Greater => k - 1,
        })
        .collect();
    let mut grading = vec![0u32; n];
    for k in 0..n {
        grading[map[k]] = ring.var_weight(k);
    }
    let pr = Ring::with_order(*ring.field(), n, MonomialOrder::Grevlex, Some(grading))?;
    let moved: Vec<Poly> = gens.iter().map(|g| g.map_vars(&pr, &map)).collect();
    let gb = groebner_basis(&pr, &moved)?;
    let mut inv = vec![0usize; n];
    for k in 0..n {
        inv[map[k]] = k;
    }
    let back: Vec<Poly> = gb.polys().iter().map(|p| divide_out_var(p, n - 1).map_vars(ring, &inv)).collect();
    groebner_basis(ring, &back)
}

/// An invertible linear change of coordinates sending a given linear form
/// to the last variable.
pub struct LinearChange {
    /// Images of the old variables in the new coordinates.
    pub forward: Vec<Poly>,
    /// Images of the new variables in the old coordinates.
    pub backward: Vec<Poly>,
}

impl LinearChange {
    pub fn to_last(ring: &Arc<Ring>, l: &Poly) -> Result<LinearChange> {
        let n = ring.nvars();
        let f = *ring.field();
        if !l.is_homogeneous() || l.degree() != Some(1) {
            return Err(Error::InvalidArgument("expected a linear form".into()));
        }
        let c: Vec<u32> = (0..n).map(|i| l.coeff(&Monomial::var(i))).collect();
        let k = (0..n).rev().find(|&i| c[i] != 0).unwrap();
        let others: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        let inv = f.inv(c[k])?;
        let mut forward = vec![Poly::zero(ring); n];
        let mut backward = vec![Poly::zero(ring); n];
        for (slot, &i) in others.iter().enumerate() {
            forward[i] = Poly::var(ring, slot);
            backward[slot] = Poly::var(ring, i);
        }
        // x_k = (y_last - sum_{i != k} c_i y_slot(i)) / c_k
        let mut xk = Poly::var(ring, n - 1);
        for (slot, &i) in others.iter().enumerate() {
            xk = xk.add_scaled(&Poly::var(ring, slot), f.neg(c[i]));
        }
        forward[k] = xk.scale(inv);
        backward[n - 1] = l.clone();
        Ok(LinearChange { forward, backward })
    }

    pub fn apply(&self, gens: &[Poly]) -> Vec<Poly> {
        let mut cache = crate::poly::SubstitutionCache::new(&self.forward);
        gens.iter().map(|g| cache.apply(g)).collect()
    }

    pub fn undo(&self, gens: &[Poly]) -> Vec<Poly> {
        let mut cache = crate::poly::SubstitutionCache::new(&self.backward);
        gens.iter().map(|g| cache.apply(g)).collect()
    }
}

/// `I : l^infinity` for a linear form `l` (standard grading).
pub fn saturate_by_linear_form(ring: &Arc<Ring>, gens: &[Poly], l: &Poly) -> Result<GroebnerBasis> {
    if ring.grading().is_some() || ring.order() != &MonomialOrder::Grevlex {
        return Err(Error::InvalidArgument("linear saturation needs a standard grevlex ring".into()));
    }
    let ch = LinearChange::to_last(ring, l)?;
    let moved = ch.apply(gens);
    let n = ring.nvars();
    let gb = groebner_basis(ring, &moved)?;
    let divided: Vec<Poly> = gb.polys().iter().map(|p| divide_out_var(p, n - 1)).collect();
    groebner_basis(ring, &ch.undo(&divided))
}

/// Saturation of a homogeneous ideal by the irrelevant ideal, computed as
/// the saturation by a random linear form.
pub fn saturate_irrelevant<R: Rng>(ring: &Arc<Ring>, gens: &[Poly], rng: &mut R) -> Result<GroebnerBasis> {
    let l = random_element(ring, 1, rng);
    saturate_by_linear_form(ring, gens, &l)
}

/// The `z`-trick ring: the ideal `I + (z - g)` in a ring with an extra
/// variable `z` of weight `deg g`, placed last in grevlex order.
pub struct FormSaturation {
    pub ext: Arc<Ring>,
    /// Gröbner basis of `(I + (z - g)) : z^k` (`k` = 1 or infinity).
    pub basis: Vec<Poly>,
}

/// `J : z^infinity` (or `J : z` when `once`) with `J = I + (z - g)`.
pub fn form_trick(ring: &Arc<Ring>, gens: &[Poly], g: &Poly, once: bool) -> Result<FormSaturation> {
    if ring.order() != &MonomialOrder::Grevlex {
        return Err(Error::InvalidArgument("form saturation needs a grevlex ring".into()));
    }
    if !g.is_homogeneous() || g.is_zero() {
        return Err(Error::NotHomogeneous("saturating form".into()));
    }
    let e = g.degree().unwrap();
    if e == 0 {
        return Err(Error::InvalidArgument("saturating form is a constant".into()));
    }
    let ext = extend_ring(ring, e)?;
    let n = ring.nvars();
    let mut moved: Vec<Poly> = gens.iter().map(|p| p.to_ring(&ext)).collect();
    moved.push(Poly::var(&ext, n).sub(&g.to_ring(&ext)));
    let gb = groebner_basis(&ext, &moved)?;
    let basis = gb
        .polys()
        .iter()
        .map(|p| {
            if once {
                let z = Monomial::var(n);
                if p.terms().iter().all(|t| z.divides(&t.0)) {
                    let terms = p.terms().iter().map(|&(m, c)| (m.div_unchecked(&z), c)).collect();
                    Poly::from_sorted_terms(&ext, terms)
                } else {
                    p.clone()
                }
            } else {
                divide_out_var(p, n)
            }
        })
        .collect();
    Ok(FormSaturation { ext, basis })
}

impl FormSaturation {
    /// Substitutes `z = g`, giving generators in the original ring.
    pub fn contract(&self, ring: &Arc<Ring>, g: &Poly) -> Vec<Poly> {
        let n = ring.nvars();
        let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(ring, i)).collect();
        images.push(g.clone());
        let mut cache = crate::poly::SubstitutionCache::new(&images);
        self.basis.iter().map(|p| cache.apply(p)).collect()
    }
}

/// `I : g^infinity` for a homogeneous form `g`.
pub fn saturate(ring: &Arc<Ring>, gens: &[Poly], g: &Poly) -> Result<GroebnerBasis> {
    if g.len() == 1 && g.degree() == Some(1) {
        let m = g.lm().unwrap();
        let i = (0..ring.nvars()).find(|&i| m.exp(i) == 1).unwrap();
        return saturate_by_variable(ring, gens, i);
    }
    if g.degree() == Some(1) && ring.grading().is_none() {
        return saturate_by_linear_form(ring, gens, g);
    }
    let fs = form_trick(ring, gens, g, false)?;
    groebner_basis(ring, &fs.contract(ring, g))
}

/// `I : J^infinity` as the intersection of the saturations by the
/// generators of `J`.
pub fn saturate_ideal(ring: &Arc<Ring>, gens: &[Poly], j: &[Poly]) -> Result<GroebnerBasis> {
    let mut acc: Option<GroebnerBasis> = None;
    for g in j.iter().filter(|g| !g.is_zero()) {
        let s = saturate(ring, gens, g)?;
        acc = Some(match acc {
            None => s,
            Some(a) => intersect(ring, a.polys(), s.polys())?,
        });
    }
    acc.ok_or_else(|| Error::InvalidArgument("saturating by the zero ideal".into()))
}

/// `A ∩ B` by eliminating `t` from `tA + (1 - t)B`.
pub fn intersect(ring: &Arc<Ring>, a: &[Poly], b: &[Poly]) -> Result<GroebnerBasis> {
    let n = ring.nvars();
    let grading: Vec<u32> = (0..n).map(|i| ring.var_weight(i)).chain([1]).collect();
    let w: Vec<u32> = (0..=n).map(|i| (i == n) as u32).collect();
    let er = Ring::with_order(*ring.field(), n + 1, MonomialOrder::Weighted(w), Some(grading))?;
    let t = Poly::var(&er, n);
    let one_minus_t = Poly::one(&er).sub(&t);
    let mut gens: Vec<Poly> = a.iter().map(|p| p.to_ring(&er).mul(&t)).collect();
    gens.extend(b.iter().map(|p| p.to_ring(&er).mul(&one_minus_t)));
    let gb = groebner_basis(&er, &gens)?;
    let back: Vec<Poly> = gb
        .polys()
        .iter()
        .filter(|p| p.terms().iter().all(|tm| tm.0.exp(n) == 0))
        .map(|p| Poly::from_terms(ring, p.terms().to_vec()))
        .collect();
    groebner_basis(ring, &back)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientMethod {
    /// `(I ∩ (f)) / f` for each generator `f` of `J`.
    Intersection,
    /// `(I + (z - f)) : z` in a ring with an extra variable.
    ExtraVariable,
}

/// `I : f` for a single homogeneous form.
pub fn quotient_by_form(ring: &Arc<Ring>, gens: &[Poly], f: &Poly, method: QuotientMethod) -> Result<GroebnerBasis> {
    match method {
        QuotientMethod::Intersection => {
            let inter = intersect(ring, gens, std::slice::from_ref(f))?;
            let quotients = inter
                .polys()
                .iter()
                .map(|p| exact_division(p, f))
                .collect::<Result<Vec<_>>>()?;
            groebner_basis(ring, &quotients)
        }
        QuotientMethod::ExtraVariable => {
            let fs = form_trick(ring, gens, f, true)?;
            groebner_basis(ring, &fs.contract(ring, f))
        }
    }
}

/// `I : J` for an ideal `J` given by generators.
pub fn ideal_quotient(ring: &Arc<Ring>, gens: &[Poly], j: &[Poly], method: QuotientMethod) -> Result<GroebnerBasis> {
    let mut acc: Option<GroebnerBasis> = None;
    for f in j.iter().filter(|g| !g.is_zero()) {
        let q = quotient_by_form(ring, gens, f, method)?;
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(ring, a.polys(), q.polys())?,
        });
    }
    match acc {
        Some(a) => Ok(a),
        None => groebner_basis(ring, &[Poly::one(ring)]),
    }
}

/// Exact division `p / f`; fails if `f` does not divide `p`.
pub fn exact_division(p: &Poly, f: &Poly) -> Result<Poly> {
    let ring = p.ring();
    let fp = *ring.field();
    let lm = f.lm().ok_or(Error::DivisionByZero)?;
    let inv = fp.inv(f.lc())?;
    let mut r = p.clone();
    let mut q: Vec<(Monomial, u32)> = Vec::new();
    while let Some(&(m, c)) = r.terms().first() {
        let Some(mult) = m.div(&lm) else {
            return Err(Error::InvalidArgument("inexact division".into()));
        };
        let coef = fp.mul(c, inv);
        q.push((mult, coef));
        r = r.sub(&f.mul_term(&mult, coef));
    }
    Ok(Poly::from_terms(ring, q))
}

/// Generators of `I^e`: all products of `e` generators.
pub fn ideal_power(gens: &[Poly], e: u32) -> Vec<Poly> {
    let gens: Vec<&Poly> = gens.iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Vec::new();
    }
    if e == 0 {
        return vec![Poly::one(gens[0].ring())];
    }
    let mut layer: Vec<(usize, Poly)> = gens.iter().enumerate().map(|(i, g)| (i, (*g).clone())).collect();
    for _ in 1..e {
        let mut next = Vec::new();
        for (i, p) in &layer {
            for (j, g) in gens.iter().enumerate().skip(*i) {
                next.push((j, p.mul(g)));
            }
        }
        layer = next;
    }
    layer.into_iter().map(|x| x.1).collect()
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let ring = m[0][0].ring();
    match n {
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        _ => {
            let mut acc = Poly::zero(ring);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let t = m[0][j].mul(&poly_det(&minor));
                acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `c x c` minors of the Jacobian matrix of `gens`. When there are more
/// than `max_minors` of them, the rows are first replaced by `c + 3` random
/// combinations of the generators.
pub fn jacobian_minors<R: Rng>(ring: &Arc<Ring>, gens: &[Poly], c: usize, max_minors: usize, rng: &mut R) -> Vec<Poly> {
    let n = ring.nvars();
    let f = *ring.field();
    let count = crate::monomial::binomial(gens.len() as u64, c as u64) * crate::monomial::binomial(n as u64, c as u64);
    let rows: Vec<Poly> = if count as usize > max_minors && gens.len() > c + 3 {
        // Random combinations of generators of equal degree keep homogeneity.
        let mut out = Vec::new();
        let mut by_deg: std::collections::BTreeMap<u32, Vec<&Poly>> = Default::default();
        for g in gens {
            by_deg.entry(g.degree().unwrap_or(0)).or_default().push(g);
        }
        let (_, low) = by_deg.iter().next().unwrap();
        let pool: Vec<&Poly> = if low.len() >= c + 3 { low.clone() } else { gens.iter().collect() };
        for _ in 0..c + 3 {
            let mut acc = Poly::zero(ring);
            let d = pool[0].degree();
            for g in &pool {
                if g.degree() == d {
                    acc = acc.add_scaled(g, rng.gen_range(1..f.p()));
                }
            }
            out.push(acc);
        }
        out
    } else {
        gens.to_vec()
    };
    let jac: Vec<Vec<Poly>> = rows.iter().map(|g| (0..n).map(|i| g.partial(i)).collect()).collect();
    let mut minors = Vec::new();
    for rs in combinations(jac.len(), c) {
        for cs in combinations(n, c) {
            let sub: Vec<Vec<Poly>> = rs.iter().map(|&r| cs.iter().map(|&k| jac[r][k].clone()).collect()).collect();
            let d = poly_det(&sub);
            if !d.is_zero() {
                minors.push(d);
            }
        }
    }
    minors
}

/// Saturated ideal of the singular locus of the scheme defined by `gens`,
/// of codimension `codim`.
pub fn singular_locus<R: Rng>(ring: &Arc<Ring>, gens: &[Poly], codim: usize, rng: &mut R) -> Result<GroebnerBasis> {
    let mut all = gens.to_vec();
    all.extend(jacobian_minors(ring, gens, codim, 4000, rng));
    saturate_irrelevant(ring, &all, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::groebner::groebner_basis;
    use crate::text::parse_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(n: usize) -> Arc<Ring> {
        Ring::new(Fp::new(32003).unwrap(), n).unwrap()
    }

    fn polys(r: &Arc<Ring>, s: &[&str]) -> Vec<Poly> {
        s.iter().map(|x| parse_poly(r, x).unwrap()).collect()
    }

    #[test]
    fn saturation_removes_embedded_point() {
        let r = ring(3);
        // The line x0 = 0 with an embedded component at the origin of the chart.
        let i = polys(&r, &["x0^2", "x0*x1"]);
        let s = saturate(&r, &i, &Poly::var(&r, 1)).unwrap();
        assert_eq!(s.polys(), polys(&r, &["x0"]).as_slice());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = polys(&r, &["x0^2", "x0*x1", "x0*x2"]);
        let s = saturate_irrelevant(&r, &m, &mut rng).unwrap();
        assert_eq!(s.polys(), polys(&r, &["x0"]).as_slice());
    }

    #[test]
    fn quotient_methods_agree() {
        let r = ring(4);
        let i = polys(&r, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2", "x0^3"]);
        for f in ["x0", "x1^2 + x2*x3", "x3"] {
            let f = parse_poly(&r, f).unwrap();
            let a = quotient_by_form(&r, &i, &f, QuotientMethod::Intersection).unwrap();
            let b = quotient_by_form(&r, &i, &f, QuotientMethod::ExtraVariable).unwrap();
            assert!(a.same_ideal(&b), "{f}");
        }
    }

    #[test]
    fn elimination_of_parametrization() {
        // (s^2, st, t^2) satisfies x0*x2 = x1^2.
        let r = ring(5);
        let i = polys(&r, &["x0 - x3^2", "x1 - x3*x4", "x2 - x4^2"]);
        let e = eliminate(&r, &i, &[3, 4]).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0], parse_poly(&r, "x1^2 - x0*x2").unwrap().monic());
    }

    #[test]
    fn singular_points_of_nodal_cubic() {
        let r = ring(3);
        let c = polys(&r, &["x1^2*x2 - x0^3 - x0^2*x2"]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = singular_locus(&r, &c, 1, &mut rng).unwrap();
        let expect = groebner_basis(&r, &polys(&r, &["x0", "x1"])).unwrap();
        assert!(s.same_ideal(&expect));
    }

    #[test]
    fn powers_and_intersections() {
        let r = ring(3);
        let i = polys(&r, &["x0", "x1"]);
        assert_eq!(ideal_power(&i, 2).len(), 3);
        let a = intersect(&r, &polys(&r, &["x0"]), &polys(&r, &["x1"])).unwrap();
        assert_eq!(a.polys(), polys(&r, &["x0*x1"]).as_slice());
    }
}
