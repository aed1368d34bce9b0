//! Sparse multivariate polynomials.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ring::Ring;
use rustc_hash::FxHashMap;
use std::sync::Arc;

/// A polynomial stored as nonzero terms sorted decreasingly in the ring
/// order.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        Ring::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for Poly {}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::text::format_poly(self))
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::text::format_poly(self))
    }
}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Poly {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: u32) -> Poly {
        let c = c % ring.field().p();
        let terms = if c == 0 { Vec::new() } else { vec![(Monomial::ONE, c)] };
        Poly { ring: ring.clone(), terms }
    }

    pub fn one(ring: &Arc<Ring>) -> Poly {
        Poly::constant(ring, 1)
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Poly {
        assert!(i < ring.nvars());
        Poly { ring: ring.clone(), terms: vec![(Monomial::var(i), 1)] }
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: u32) -> Poly {
        Poly::from_terms(ring, vec![(m, c)])
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zeros. Coefficients are reduced modulo `p`.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<(Monomial, u32)>) -> Poly {
        let f = *ring.field();
        terms.sort_unstable_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % f.p();
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = f.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Poly { ring: ring.clone(), terms: out }
    }

    /// Wraps terms already sorted and merged; checked in debug builds.
    pub fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, u32)>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0).is_gt()));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Poly { ring: ring.clone(), terms }
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(ring: &Arc<Ring>, coeffs: &[u32]) -> Poly {
        let terms = coeffs.iter().enumerate().map(|(i, &c)| (Monomial::var(i), c)).collect();
        Poly::from_terms(ring, terms)
    }

    #[inline(always)]
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    #[inline(always)]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    #[inline(always)]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn lc(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    /// Largest degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| self.ring.deg(&t.0)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = self.ring.deg(&t.0);
                self.terms.iter().all(|s| self.ring.deg(&s.0) == d)
            }
        }
    }

    /// Terms of degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        let terms = self.terms.iter().filter(|t| self.ring.deg(&t.0) == d).copied().collect();
        Poly { ring: self.ring.clone(), terms }
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|t| self.ring.cmp(m, &t.0))
            .map_or(0, |i| self.terms[i].1)
    }

    fn check(&self, other: &Poly) {
        assert!(Ring::same(&self.ring, &other.ring), "polynomials live in different rings");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add_scaled(other, self.ring.field().neg(1))
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Poly, c: u32) -> Poly {
        self.check(other);
        let f = *self.ring.field();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.ring.cmp(&a[i].0, &b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let v = f.mul(b[j].1, c);
                    if v != 0 {
                        out.push((b[j].0, v));
                    }
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = f.add(a[i].1, f.mul(b[j].1, c));
                    if v != 0 {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let v = f.mul(t.1, c);
            if v != 0 {
                out.push((t.0, v));
            }
        }
        Poly { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Poly {
        self.scale(self.ring.field().neg(1))
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = *self.ring.field();
        let c = c % f.p();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    /// Multiplies by `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Poly {
        let f = *self.ring.field();
        let c = c % f.p();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        // Multiplying by a monomial preserves the order of terms.
        let terms = self.terms.iter().map(|&(t, a)| (t.mul(m), f.mul(a, c))).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = small.terms[0];
            return big.mul_term(&m, c);
        }
        let f = *self.ring.field();
        let p = f.p() as u64;
        // Accumulate unreduced products; p^2 < 2^62 leaves room for 4 additions.
        let mut acc: FxHashMap<Monomial, u64> = FxHashMap::default();
        acc.reserve(small.len() * big.len() / 2);
        for &(ma, ca) in &small.terms {
            for &(mb, cb) in &big.terms {
                let e = acc.entry(ma.mul(&mb)).or_insert(0);
                *e = (*e + ca as u64 * cb as u64) % (p * p);
            }
        }
        let terms: Vec<(Monomial, u32)> = acc
            .into_iter()
            .filter_map(|(m, v)| {
                let v = f.reduce(v);
                (v != 0).then_some((m, v))
            })
            .collect();
        let mut terms = terms;
        terms.sort_unstable_by(|a, b| self.ring.cmp(&b.0, &a.0));
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides out the leading coefficient.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.ring.field().inv(self.lc()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Evaluates at a point of `F_p^n`.
    pub fn evaluate(&self, point: &[u32]) -> Result<u32> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: point.len() });
        }
        let f = *self.ring.field();
        let maxdeg = self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0) as usize;
        // Power tables per variable.
        let mut pows = vec![vec![1u32; maxdeg + 1]; n];
        for (i, row) in pows.iter_mut().enumerate() {
            for k in 1..=maxdeg {
                row[k] = f.mul(row[k - 1], point[i] % f.p());
            }
        }
        let mut acc = 0u32;
        for &(m, c) in &self.terms {
            let mut v = c;
            for (i, row) in pows.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    v = f.mul(v, row[e]);
                }
            }
            acc = f.add(acc, v);
        }
        Ok(acc)
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Poly {
        let f = *self.ring.field();
        let terms = self
            .terms
            .iter()
            .filter(|t| t.0.exp(i) > 0)
            .map(|&(m, c)| {
                let e = m.exp(i);
                (m.with_exp(i, e - 1), f.mul(c, e % f.p()))
            })
            .filter(|t| t.1 != 0)
            .collect();
        Poly::from_terms(&self.ring, terms)
    }

    /// Re-expresses the polynomial in another ring with at least as many
    /// variables, keeping exponents (variable `i` goes to variable `map[i]`).
    pub fn map_vars(&self, target: &Arc<Ring>, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.ring.nvars());
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let mut e = vec![0u32; target.nvars()];
                for (i, &j) in map.iter().enumerate() {
                    e[j] += m.exp(i);
                }
                (Monomial::from_exponents(&e), c)
            })
            .collect();
        Poly::from_terms(target, terms)
    }

    /// Same exponents in a ring over the same field with a different order
    /// or more trailing variables.
    pub fn to_ring(&self, target: &Arc<Ring>) -> Poly {
        assert!(target.nvars() >= self.ring.nvars());
        let map: Vec<usize> = (0..self.ring.nvars()).collect();
        self.map_vars(target, &map)
    }

    /// Applies the ring map `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let mut cache = SubstitutionCache::new(images);
        cache.apply(self)
    }
}

/// Ring map `x_i -> images[i]` with memoized monomial images, for applying
/// the same substitution to many polynomials.
pub struct SubstitutionCache<'a> {
    images: &'a [Poly],
    target: Arc<Ring>,
    memo: FxHashMap<Monomial, Poly>,
}

impl<'a> SubstitutionCache<'a> {
    pub fn new(images: &'a [Poly]) -> Self {
        assert!(!images.is_empty());
        let target = images[0].ring().clone();
        let mut memo = FxHashMap::default();
        memo.insert(Monomial::ONE, Poly::one(&target));
        SubstitutionCache { images, target, memo }
    }

    pub fn monomial_image(&mut self, m: &Monomial) -> Poly {
        if let Some(p) = self.memo.get(m) {
            return p.clone();
        }
        // Peel off the last variable present.
        let i = (0..self.images.len()).rev().find(|&i| m.exp(i) > 0).expect("non-unit monomial");
        let rest = m.with_exp(i, m.exp(i) - 1);
        let r = self.monomial_image(&rest).mul(&self.images[i]);
        self.memo.insert(*m, r.clone());
        r
    }

    pub fn apply(&mut self, f: &Poly) -> Poly {
        assert_eq!(f.ring().nvars(), self.images.len(), "one image per variable");
        let fp = *self.target.field();
        let p = fp.p() as u64;
        let mut acc: FxHashMap<Monomial, u64> = FxHashMap::default();
        for &(m, c) in f.terms() {
            let img = self.monomial_image(&m);
            for &(t, a) in img.terms() {
                let e = acc.entry(t).or_insert(0);
                *e = (*e + a as u64 * c as u64) % (p * p);
            }
        }
        let terms = acc.into_iter().map(|(m, v)| (m, fp.reduce(v))).collect();
        Poly::from_terms(&self.target, terms)
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

/// Product of two polynomials, as a free function.
pub fn poly_mul(a: &Poly, b: &Poly) -> Result<Poly> {
    if !Ring::same(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    Ok(a.mul(b))
}

/// Value of a polynomial at a point.
pub fn evaluate_at_point(f: &Poly, point: &[u32]) -> Result<u32> {
    f.evaluate(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    fn ring(n: usize) -> Arc<Ring> {
        Ring::new(Fp::new(32003).unwrap(), n).unwrap()
    }

    #[test]
    fn product_of_linear_forms() {
        let r = ring(3);
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let s = &x + &y;
        let d = &x - &y;
        let prod = &s * &d;
        let expect = &x.mul(&x) - &y.mul(&y);
        assert_eq!(prod, expect);
        assert_eq!(s.pow(3).len(), 4);
    }

    #[test]
    fn evaluation_is_a_homomorphism() {
        let r = ring(3);
        let x = Poly::var(&r, 0);
        let z = Poly::var(&r, 2);
        let f = &x.pow(3) + &z.scale(5);
        let g = &x.mul(&z) - &Poly::constant(&r, 7);
        let pt = [3, 11, 1234];
        let fp = r.field();
        assert_eq!(
            f.mul(&g).evaluate(&pt).unwrap(),
            fp.mul(f.evaluate(&pt).unwrap(), g.evaluate(&pt).unwrap())
        );
        assert!(f.evaluate(&[1, 2]).is_err());
    }

    #[test]
    fn partials_and_substitution() {
        let r = ring(2);
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let f = x.pow(3).mul(&y);
        assert_eq!(f.partial(0), x.pow(2).mul(&y).scale(3));
        // x -> x + y, y -> y
        let g = f.substitute(&[&x + &y, y.clone()]);
        assert_eq!(g, (&x + &y).pow(3).mul(&y));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = Poly::var(&ring(2), 0);
        let b = Poly::var(&ring(3), 0);
        assert!(matches!(poly_mul(&a, &b), Err(Error::RingMismatch)));
    }
}
