//! Gröbner bases over `F_p`.
//!
//! The default engine is a matrix-based (F4-style) algorithm: critical
//! pairs of the lowest sugar degree are processed together, their
//! multiples are collected with all needed reducers into one sparse matrix,
//! and the reduced rows supply the new basis elements. A classical
//! Buchberger algorithm with the same pair criteria is kept as an
//! independent implementation for cross-checking.

mod matrix;
pub mod ops;
mod pairs;

use crate::error::{Error, Result};
use crate::exec::check_budget;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::Ring;
use pairs::{select_min_sugar, update, Elem, Pair};
use std::sync::Arc;

pub use ops::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Algorithm {
    #[default]
    F4,
    Buchberger,
}

#[derive(Clone, Debug, Default)]
pub struct GbOptions {
    pub algorithm: Algorithm,
    /// Stop after all pairs of sugar degree at most this value. For
    /// homogeneous input the result is a Gröbner basis up to that degree.
    pub degree_limit: Option<u32>,
}

/// A reduced Gröbner basis, sorted by increasing leading monomial.
#[derive(Clone)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    polys: Vec<Poly>,
    truncated: Option<u32>,
}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.polys).finish()
    }
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn into_polys(self) -> Vec<Poly> {
        self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Degree bound if the computation was truncated.
    pub fn truncated_at(&self) -> Option<u32> {
        self.truncated
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p.lm().unwrap()).collect()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].lm() == Some(Monomial::ONE)
    }

    /// Largest degree of a basis element.
    pub fn max_degree(&self) -> u32 {
        self.polys.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    fn elems(&self) -> Vec<Elem> {
        self.polys.iter().map(|p| Elem::new(p.clone(), 0)).collect()
    }

    /// Normal forms of several polynomials at once.
    pub fn normal_forms(&self, fs: &[Poly]) -> Result<Vec<Poly>> {
        if fs.is_empty() {
            return Ok(Vec::new());
        }
        for f in fs {
            if !Ring::same(f.ring(), &self.ring) {
                return Err(Error::RingMismatch);
            }
        }
        if self.polys.is_empty() {
            return Ok(fs.to_vec());
        }
        matrix::reduce(&self.ring, &self.elems(), &[], fs.to_vec(), false)
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        Ok(self.normal_forms(std::slice::from_ref(f))?.pop().unwrap())
    }

    /// Normal form by repeated division, independent of the matrix code.
    pub fn normal_form_by_division(&self, f: &Poly) -> Poly {
        divide(&self.elems(), f)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_all(&self, fs: &[Poly]) -> Result<bool> {
        Ok(self.normal_forms(fs)?.iter().all(Poly::is_zero))
    }

    /// Whether two bases describe the same ideal (both must be reduced in
    /// the same ring).
    pub fn same_ideal(&self, other: &GroebnerBasis) -> bool {
        Ring::same(&self.ring, &other.ring) && self.polys == other.polys
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring`.
pub fn groebner_basis(ring: &Arc<Ring>, gens: &[Poly]) -> Result<GroebnerBasis> {
    groebner_basis_with(ring, gens, &GbOptions::default())
}

pub fn groebner_basis_with(ring: &Arc<Ring>, gens: &[Poly], opts: &GbOptions) -> Result<GroebnerBasis> {
    for g in gens {
        if !Ring::same(g.ring(), ring) {
            return Err(Error::RingMismatch);
        }
    }
    let gens: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let elems = match opts.algorithm {
        Algorithm::F4 => f4(ring, gens, opts.degree_limit)?,
        Algorithm::Buchberger => buchberger(ring, gens, opts.degree_limit)?,
    };
    let polys = interreduce(ring, elems)?;
    Ok(GroebnerBasis { ring: ring.clone(), polys, truncated: opts.degree_limit })
}

fn unit_basis(ring: &Arc<Ring>) -> Vec<Elem> {
    vec![Elem::new(Poly::one(ring), 0)]
}

fn f4(ring: &Arc<Ring>, gens: Vec<Poly>, limit: Option<u32>) -> Result<Vec<Elem>> {
    let mut pending: Vec<(u32, Poly)> = gens.into_iter().map(|g| (g.degree().unwrap(), g)).collect();
    let mut elems: Vec<Elem> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    loop {
        check_budget()?;
        let dp = pairs.iter().map(|p| p.sugar).min();
        let dg = pending.iter().map(|g| g.0).min();
        let d = match (dp, dg) {
            (None, None) => break,
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
        };
        if limit.is_some_and(|l| d > l) {
            break;
        }
        let selected: Vec<Pair> = if dp == Some(d) {
            let (_, sel) = select_min_sugar(&mut pairs).unwrap();
            sel
        } else {
            Vec::new()
        };
        let (now, later): (Vec<_>, Vec<_>) = pending.into_iter().partition(|g| g.0 == d);
        pending = later;
        let mut fixed = Vec::with_capacity(selected.len());
        let mut rows: Vec<Poly> = now.into_iter().map(|g| g.1).collect();
        let mut seen = rustc_hash::FxHashSet::default();
        for p in &selected {
            let (ei, ej) = (&elems[p.i], &elems[p.j]);
            fixed.push((p.lcm.div_unchecked(&ei.lm), p.i));
            let mj = p.lcm.div_unchecked(&ej.lm);
            if seen.insert((mj, p.j)) {
                rows.push(ej.poly.mul_term(&mj, 1));
            }
        }
        let new = matrix::reduce(ring, &elems, &fixed, rows, true)?;
        for poly in new {
            if poly.lm() == Some(Monomial::ONE) {
                return Ok(unit_basis(ring));
            }
            elems.push(Elem::new(poly, d));
            let h = elems.len() - 1;
            update(ring, &mut elems, &mut pairs, h);
        }
    }
    Ok(elems)
}

/// Full reduction of `f` by repeated division.
fn divide(elems: &[Elem], f: &Poly) -> Poly {
    let ring = f.ring().clone();
    let fp = *ring.field();
    let mut rem: Vec<(Monomial, u32)> = Vec::new();
    let mut p = f.clone();
    while let Some(&(m, c)) = p.terms().first() {
        match matrix::find_reducer(elems, &m) {
            Some(e) => {
                let g = &elems[e].poly;
                let mult = m.div_unchecked(&elems[e].lm);
                let coef = fp.mul(c, fp.inv(g.lc()).unwrap());
                p = p.sub(&g.mul_term(&mult, coef));
            }
            None => {
                rem.push((m, c));
                p = Poly::from_sorted_terms(&ring, p.terms()[1..].to_vec());
            }
        }
    }
    Poly::from_sorted_terms(&ring, rem)
}

fn buchberger(ring: &Arc<Ring>, gens: Vec<Poly>, limit: Option<u32>) -> Result<Vec<Elem>> {
    let mut elems: Vec<Elem> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: Vec<(u32, Poly)> = gens.into_iter().map(|g| (g.degree().unwrap(), g)).collect();
    pending.sort_by_key(|g| std::cmp::Reverse(g.0));
    loop {
        check_budget()?;
        let dp = pairs.iter().map(|p| p.sugar).min();
        let dg = pending.last().map(|g| g.0);
        let (sugar, s) = match (dp, dg) {
            (None, None) => break,
            (Some(a), Some(b)) if b <= a => pending.pop().map(|g| (b, g.1)).unwrap(),
            (None, Some(b)) => pending.pop().map(|g| (b, g.1)).unwrap(),
            (Some(a), _) => {
                let k = pairs.iter().position(|p| p.sugar == a).unwrap();
                let p = pairs.swap_remove(k);
                let (ei, ej) = (&elems[p.i], &elems[p.j]);
                let si = ei.poly.mul_term(&p.lcm.div_unchecked(&ei.lm), 1);
                let sj = ej.poly.mul_term(&p.lcm.div_unchecked(&ej.lm), 1);
                (a, si.sub(&sj))
            }
        };
        if limit.is_some_and(|l| sugar > l) {
            break;
        }
        let r = divide(&elems, &s);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.lm() == Some(Monomial::ONE) {
            return Ok(unit_basis(ring));
        }
        elems.push(Elem::new(r, sugar));
        let h = elems.len() - 1;
        update(ring, &mut elems, &mut pairs, h);
    }
    Ok(elems)
}

/// Minimal basis with fully reduced tails, sorted by increasing leading
/// monomial.
fn interreduce(ring: &Arc<Ring>, elems: Vec<Elem>) -> Result<Vec<Poly>> {
    let lms: Vec<Monomial> = elems.iter().map(|e| e.lm).collect();
    let minimal: Vec<usize> = (0..elems.len())
        .filter(|&i| {
            !lms.iter().enumerate().any(|(j, l)| {
                j != i && l.divides(&lms[i]) && (lms[i] != *l || j < i)
            })
        })
        .collect();
    let tails: Vec<Poly> = minimal
        .iter()
        .map(|&i| Poly::from_sorted_terms(ring, elems[i].poly.terms()[1..].to_vec()))
        .collect();
    let reduced = matrix::reduce(ring, &elems, &[], tails, false)?;
    let fp = *ring.field();
    let mut out: Vec<Poly> = minimal
        .iter()
        .zip(reduced)
        .map(|(&i, tail)| {
            let e = &elems[i];
            let mut terms = vec![(e.lm, e.poly.lc())];
            terms.extend_from_slice(tail.terms());
            let p = Poly::from_sorted_terms(ring, terms);
            let inv = fp.inv(p.lc()).unwrap();
            p.scale(inv)
        })
        .collect();
    out.sort_by(|a, b| ring.cmp(&a.lm().unwrap(), &b.lm().unwrap()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::monomial::MonomialOrder;
    use crate::text::parse_poly;

    fn ring(n: usize, order: MonomialOrder) -> Arc<Ring> {
        Ring::with_order(Fp::new(32003).unwrap(), n, order, None).unwrap()
    }

    fn polys(r: &Arc<Ring>, s: &[&str]) -> Vec<Poly> {
        s.iter().map(|x| parse_poly(r, x).unwrap()).collect()
    }

    #[test]
    fn twisted_cubic() {
        let r = ring(4, MonomialOrder::Grevlex);
        let g = polys(&r, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        let gb = groebner_basis(&r, &g).unwrap();
        assert_eq!(gb.len(), 3);
        let lex = ring(4, MonomialOrder::Lex);
        let g = polys(&lex, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        let gb_lex = groebner_basis(&lex, &g).unwrap();
        let bb = groebner_basis_with(&lex, &g, &GbOptions { algorithm: Algorithm::Buchberger, ..Default::default() }).unwrap();
        assert!(gb_lex.same_ideal(&bb));
        assert!(gb_lex.contains(&parse_poly(&lex, "x1^3 - x0^2*x3").unwrap()).unwrap());
    }

    #[test]
    fn unit_ideal() {
        let r = ring(2, MonomialOrder::Grevlex);
        let g = polys(&r, &["x0^2 + 1", "x0*x1 - 1", "x1"]);
        assert!(groebner_basis(&r, &g).unwrap().is_unit());
    }

    #[test]
    fn inhomogeneous_cyclic3() {
        let r = ring(3, MonomialOrder::Grevlex);
        let g = polys(&r, &["x0 + x1 + x2", "x0*x1 + x1*x2 + x2*x0", "x0*x1*x2 - 1"]);
        let a = groebner_basis(&r, &g).unwrap();
        let b = groebner_basis_with(&r, &g, &GbOptions { algorithm: Algorithm::Buchberger, ..Default::default() }).unwrap();
        assert!(a.same_ideal(&b));
        for p in &g {
            assert!(a.contains(p).unwrap());
        }
    }
}
