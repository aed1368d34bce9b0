//! Rational maps `X ⇢ P^m` given by forms of one degree on a projective
//! variety `X ⊂ P^n`.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::groebner::{form_trick, groebner_basis, GroebnerBasis};
use crate::hilbert::HilbertSeries;
use crate::linalg::{poly_echelon, Matrix, MonomialIndex};
use crate::monomial::monomials_of_degree;
use crate::poly::{Poly, SubstitutionCache};
use crate::random::{random_combination, random_combinations, random_vector};
use crate::ring::Ring;
use rand::Rng;
use std::sync::Arc;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A rational map from `V(source_ideal) ⊂ P^{n}` given by forms of equal
/// degree.
#[derive(Clone)]
pub struct RationalMap {
    source: Arc<Ring>,
    ideal: GroebnerBasis,
    forms: Vec<Poly>,
}

impl std::fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RationalMap({} forms of degree {} on {:?})", self.forms.len(), self.degree(), self.source)
    }
}

impl RationalMap {
    /// `source_ideal` generates the (saturated) ideal of the source variety.
    pub fn new(source: &Arc<Ring>, source_ideal: &[Poly], forms: Vec<Poly>) -> Result<RationalMap> {
        if forms.is_empty() {
            return Err(Error::InvalidArgument("a map needs at least one form".into()));
        }
        let d = forms[0].degree();
        for f in &forms {
            if !Ring::same(f.ring(), source) {
                return Err(Error::RingMismatch);
            }
            if !f.is_homogeneous() || f.degree() != d || f.is_zero() {
                return Err(Error::NotHomogeneous("map components must be nonzero forms of one degree".into()));
            }
        }
        let ideal = groebner_basis(source, source_ideal)?;
        Ok(RationalMap { source: source.clone(), ideal, forms })
    }

    pub fn from_basis(ideal: GroebnerBasis, forms: Vec<Poly>) -> Result<RationalMap> {
        let source = ideal.ring().clone();
        let mut m = RationalMap::new(&source, &[], forms)?;
        m.ideal = ideal;
        Ok(m)
    }

    pub fn source(&self) -> &Arc<Ring> {
        &self.source
    }

    pub fn source_ideal(&self) -> &GroebnerBasis {
        &self.ideal
    }

    pub fn forms(&self) -> &[Poly] {
        &self.forms
    }

    pub fn degree(&self) -> u32 {
        self.forms[0].degree().unwrap()
    }

    /// `m` for a map to `P^m`.
    pub fn target_dim(&self) -> usize {
        self.forms.len() - 1
    }

    /// Dimension of the source variety.
    pub fn source_dim(&self) -> Result<i64> {
        Ok(HilbertSeries::of_basis(&self.ideal).dim_degree()?.0)
    }

    pub fn evaluate(&self, point: &[u32]) -> Result<Vec<u32>> {
        self.forms.iter().map(|f| f.evaluate(point)).collect()
    }

    /// Evaluates at many points, in parallel when enabled.
    pub fn evaluate_many(&self, points: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
        #[cfg(feature = "parallel")]
        if crate::exec::parallel() {
            return points.par_iter().map(|p| self.evaluate(p)).collect();
        }
        points.iter().map(|p| self.evaluate(p)).collect()
    }

    /// The same forms on the hypersurface `V(I + (h))`.
    pub fn restrict_to_hypersurface(&self, h: &Poly) -> Result<RationalMap> {
        if self.ideal.contains(h)? {
            return Err(Error::InvalidArgument("the hypersurface contains the source".into()));
        }
        let mut gens = self.ideal.polys().to_vec();
        gens.push(h.clone());
        RationalMap::new(&self.source, &gens, self.forms.clone())
    }

    /// Target ring `P^m` in standard grevlex.
    pub fn target_ring(&self) -> Result<Arc<Ring>> {
        Ring::new(*self.source.field(), self.forms.len())
    }

    /// Basis of the degree-`d` part of the ideal of the image: forms `G`
    /// with `G(F_0, ..., F_m)` in the source ideal.
    pub fn image_in_degree(&self, target: &Arc<Ring>, d: u32) -> Result<Vec<Poly>> {
        let f = *self.source.field();
        let mons = monomials_of_degree(d, target.nvars());
        let mut cache = SubstitutionCache::new(&self.forms);
        let composed: Vec<Poly> = mons.iter().map(|m| cache.monomial_image(m)).collect();
        drop(cache);
        let reduced = if self.ideal.is_empty() { composed } else { self.ideal.normal_forms(&composed)? };
        let idx = MonomialIndex::of_polys(&self.source, &reduced);
        let mat = idx.matrix(&reduced)?;
        let rel = mat.left_kernel(&f)?;
        let tidx = MonomialIndex::new(mons);
        let polys: Vec<Poly> = (0..rel.rows).map(|i| tidx.poly(target, rel.row(i))).collect();
        poly_echelon(target, &polys)
    }

    /// Generators of the image ideal up to degree `max_degree` together with
    /// the dimension and degree of the scheme they define.
    pub fn image(&self, max_degree: u32) -> Result<Image> {
        let target = self.target_ring()?;
        let mut gens: Vec<Poly> = Vec::new();
        let mut counts = Vec::new();
        for d in 1..=max_degree {
            let part = self.image_in_degree(&target, d)?;
            counts.push(part.len());
            // Keep only what the lower-degree generators do not already give.
            let new = if gens.is_empty() {
                part
            } else {
                let gb = groebner_basis(&target, &gens)?;
                let nfs = gb.normal_forms(&part)?;
                let fresh: Vec<Poly> = nfs.into_iter().filter(|p| !p.is_zero()).collect();
                if fresh.is_empty() {
                    Vec::new()
                } else {
                    poly_echelon(&target, &fresh)?
                }
            };
            gens.extend(new);
        }
        let gb = groebner_basis(&target, &gens)?;
        let (dim, degree) = HilbertSeries::of_basis(&gb).dim_degree()?;
        Ok(Image { target, generators: gens, basis: gb, dim, degree, counts })
    }

    /// `d_i`: the degree of the closure of the preimage of a general
    /// codimension-`i` linear space, cut with a general linear space of
    /// codimension `dim X - i` in the source.
    pub fn projective_degree<R: Rng>(&self, i: usize, rng: &mut R) -> Result<u64> {
        let k = self.source_dim()?;
        if k < 0 || i as i64 > k {
            return Err(Error::InvalidArgument(format!("no projective degree {i} for a source of dimension {k}")));
        }
        let f = *self.source.field();
        let n = self.source.nvars();
        let cut = (k as usize) - i;
        let m = n - cut;
        // Random linear embedding P^{m-1} -> P^{n-1}.
        let sub = Ring::new(f, m)?;
        let images: Vec<Poly> = (0..n).map(|_| Poly::linear(&sub, &random_vector(f.p(), m, rng))).collect();
        let mut cache = SubstitutionCache::new(&images);
        let ideal: Vec<Poly> = self.ideal.polys().iter().map(|g| cache.apply(g)).collect();
        let forms: Vec<Poly> = self.forms.iter().map(|g| cache.apply(g)).collect();
        drop(cache);
        let mut gens = ideal;
        gens.extend(random_combinations(&sub, &forms, i, rng));
        let g0 = random_combination(&sub, &forms, rng);
        if g0.is_zero() {
            return Err(Error::Genericity { what: "map vanishes on the slice".into(), attempts: 1 });
        }
        let sat = form_trick(&sub, &gens, &g0, false)?;
        let gb = groebner_basis(&sat.ext, &sat.basis)?;
        let (dim, deg) = HilbertSeries::of_basis(&gb).dim_degree()?;
        match dim {
            -1 => Ok(0),
            0 => Ok(deg as u64),
            _ => Err(Error::Genericity { what: format!("slice for d_{i} has dimension {dim}"), attempts: 1 }),
        }
    }

    /// All projective degrees `d_0, ..., d_{dim X}`, each retried with
    /// fresh randomness when the slice has the wrong dimension.
    pub fn projective_degrees<R: Rng>(&self, rng: &mut R) -> Result<Vec<u64>> {
        let k = self.source_dim()?;
        (0..=k as usize).map(|i| retry(RETRIES, || self.projective_degree(i, rng))).collect()
    }

    /// Saturated ideal of the closure of the fiber through a source point,
    /// away from the base locus.
    pub fn fiber_at<R: Rng>(&self, point: &[u32], rng: &mut R) -> Result<GroebnerBasis> {
        let f = *self.source.field();
        let val = self.evaluate(point)?;
        let k = val
            .iter()
            .position(|&v| v != 0)
            .ok_or_else(|| Error::InvalidArgument("point lies in the base locus".into()))?;
        let mut gens = self.ideal.polys().to_vec();
        for (j, fj) in self.forms.iter().enumerate() {
            if j != k {
                gens.push(fj.scale(val[k]).add_scaled(&self.forms[k], f.neg(val[j])));
            }
        }
        let g0 = random_combination(&self.source, &self.forms, rng);
        let sat = form_trick(&self.source, &gens, &g0, false)?;
        groebner_basis(&self.source, &sat.contract(&self.source, &g0))
    }

    /// A random point of the source variety: any point of projective space,
    /// or a point of a hypersurface found on a random line.
    pub fn random_source_point<R: Rng>(&self, rng: &mut R) -> Result<Vec<u32>> {
        let f = *self.source.field();
        for _ in 0..100 {
            let p = match self.ideal.polys() {
                [] => random_vector(f.p(), self.source.nvars(), rng),
                [h] => random_point_on_hypersurface(h, rng)?,
                _ => {
                    return Err(Error::InvalidArgument(
                        "random points are only available on projective space and hypersurfaces".into(),
                    ))
                }
            };
            if self.evaluate(&p)?.iter().any(|&v| v != 0) {
                return Ok(p);
            }
        }
        Err(Error::Genericity { what: "random points kept landing in the base locus".into(), attempts: 100 })
    }

    /// Birationality onto the image: the top projective degree equals the
    /// degree of the image. As an independent check the fiber through a
    /// random source point is computed and must be that single reduced point.
    pub fn is_birational<R: Rng>(&self, top_degree: u64, image: &Image, rng: &mut R) -> Result<BirationalityCertificate> {
        let k = self.source_dim()?;
        let p = self.random_source_point(rng)?;
        let fib = self.fiber_at(&p, rng)?;
        let fiber = HilbertSeries::of_basis(&fib).dim_degree()?;
        Ok(BirationalityCertificate {
            top_degree,
            image_dim: image.dim,
            image_degree: image.degree,
            fiber,
            birational: image.dim == k && top_degree as i64 == image.degree && fiber == (0, 1),
        })
    }

    /// Inverse of a birational map onto the variety with Gröbner basis
    /// `image`, by forms of the least degree `delta <= max_delta`.
    ///
    /// Two general coordinates `l_0, l_1` of the inverse are found together
    /// from the conditions `a(q) l_1(p) = b(q) l_0(p)` at sample pairs
    /// `q = phi(p)`, working modulo the image ideal; the remaining coordinates
    /// are interpolated from `a`. The result is certified on fresh points.
    pub fn inverse_map<R: Rng>(&self, image: &GroebnerBasis, max_delta: u32, rng: &mut R) -> Result<InverseMap> {
        let f = *self.source.field();
        let n = self.source.nvars();
        let target = image.ring().clone();
        let l0 = random_vector(f.p(), n, rng);
        let l1 = random_vector(f.p(), n, rng);
        let dot = |l: &[u32], p: &[u32]| l.iter().zip(p).fold(0u32, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
        let mut pool: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        for delta in 1..=max_delta {
            crate::exec::check_budget()?;
            let basis = standard_monomials_in_degree(image, delta);
            let nb = basis.len();
            if nb == 0 {
                continue;
            }
            while pool.len() < 2 * nb + 20 {
                let p = self.random_source_point(rng)?;
                let q = self.evaluate(&p)?;
                if dot(&l0, &p) != 0 {
                    pool.push((p, q));
                }
            }
            let samples = &pool[..2 * nb + 20];
            let values: Vec<Vec<u32>> = samples.iter().map(|(_, q)| monomial_values(&f, &basis, q)).collect();
            let mut m = Matrix::zeros(samples.len(), 2 * nb);
            for (r, ((p, _), mv)) in samples.iter().zip(&values).enumerate() {
                let (a0, a1) = (dot(&l0, p), dot(&l1, p));
                let row = m.row_mut(r);
                for j in 0..nb {
                    row[j] = f.mul(mv[j], a1);
                    row[nb + j] = f.neg(f.mul(mv[j], a0));
                }
            }
            let ker = m.kernel(&f)?;
            if ker.rows == 0 {
                continue;
            }
            let a = &ker.row(0)[..nb];
            // psi_j(q) l_0(p) = a(q) p_j at every sample.
            let mut interp = Matrix::zeros(samples.len(), nb);
            for (r, ((p, _), mv)) in samples.iter().zip(&values).enumerate() {
                let s = dot(&l0, p);
                for j in 0..nb {
                    interp.set(r, j, f.mul(mv[j], s));
                }
            }
            let av: Vec<u32> = values.iter().map(|mv| dot(a, mv)).collect();
            let mut forms = Vec::with_capacity(n);
            let mut consistent = true;
            for j in 0..n {
                let rhs: Vec<u32> = samples.iter().zip(&av).map(|((p, _), &v)| f.mul(v, p[j])).collect();
                match interp.solve(&f, &rhs)? {
                    Some(c) => forms.push(basis.poly(&target, &c)),
                    None => {
                        consistent = false;
                        break;
                    }
                }
            }
            if !consistent || forms.iter().all(|g| g.is_zero()) {
                continue;
            }
            // Certify on fresh points.
            let mut checked = 0;
            for _ in 0..3 {
                let p = self.random_source_point(rng)?;
                let q = self.evaluate(&p)?;
                let back: Vec<u32> = forms.iter().map(|g| g.evaluate(&q)).collect::<Result<_>>()?;
                if !proportional(&f, &p, &back) {
                    break;
                }
                checked += 1;
            }
            if checked < 3 {
                continue;
            }
            let map = RationalMap::from_basis_unchecked(image.clone(), forms);
            return Ok(InverseMap { delta, map, certified_points: checked });
        }
        Err(Error::InverseNotFound(max_delta))
    }

    /// Lines through `phi(p)` on the closure of the image of projective
    /// space, for targets of any size.
    ///
    /// The tangent space of the image at `q = phi(p)` is spanned by `q` and
    /// `dphi_p(w)`; a line `s q + t dphi_p(w)` lies on the image when every
    /// image relation `G` of degree up to `max_degree` vanishes on it. The
    /// relations are found over index multisets and substituted directly into
    /// the six-variable parametrization, so the target ring is never built.
    pub fn lines_through_image_point<R: Rng>(&self, p: &[u32], max_degree: u32, rng: &mut R) -> Result<LineDirections> {
        if !self.ideal.is_empty() {
            return Err(Error::InvalidArgument("source must be projective space".into()));
        }
        let f = *self.source.field();
        let n = self.source.nvars();
        let q = self.evaluate(p)?;
        let jac: Vec<Vec<u32>> = self
            .forms
            .iter()
            .map(|g| (0..n).map(|i| g.partial(i).evaluate(p)).collect::<Result<Vec<u32>>>())
            .collect::<Result<_>>()?;
        // Directions w in a hyperplane complementary to p.
        let mut l = random_vector(f.p(), n, rng);
        while p.iter().zip(&l).fold(0u32, |a, (&x, &y)| f.add(a, f.mul(x, y))) == 0 {
            l = random_vector(f.p(), n, rng);
        }
        let w = Matrix::from_rows(vec![l], n).kernel(&f)?;
        let r = w.rows;
        let par = Ring::new(f, r + 1)?;
        let s = r;
        let lines: Vec<Poly> = (0..self.forms.len())
            .map(|a| {
                let mut c: Vec<u32> = (0..r)
                    .map(|j| w.row(j).iter().zip(&jac[a]).fold(0u32, |acc, (&x, &y)| f.add(acc, f.mul(x, y))))
                    .collect();
                c.push(q[a]);
                Poly::linear(&par, &c)
            })
            .collect();
        let dir = Ring::new(f, r)?;
        let mut eqs: Vec<Poly> = Vec::new();
        for d in 2..=max_degree {
            crate::exec::check_budget()?;
            let sets = multisets(self.forms.len(), d as usize);
            let products = multiset_products(&self.forms, &sets);
            let idx = MonomialIndex::of_polys(&self.source, &products);
            let rel = idx.matrix(&products)?.left_kernel(&f)?;
            if rel.rows == 0 {
                continue;
            }
            let along = multiset_products(&lines, &sets);
            for k in 0..rel.rows {
                let mut g = Poly::zero(&par);
                for (c, prod) in rel.row(k).iter().zip(&along) {
                    if *c != 0 {
                        g = g.add_scaled(prod, *c);
                    }
                }
                let mut by_power: Vec<Vec<(crate::monomial::Monomial, u32)>> = vec![Vec::new(); d as usize + 1];
                for (m, c) in g.terms() {
                    by_power[d as usize - m.exp(s) as usize].push((m.with_exp(s, 0), *c));
                }
                for terms in by_power.into_iter().skip(2) {
                    if !terms.is_empty() {
                        eqs.push(Poly::from_terms(&dir, terms));
                    }
                }
            }
        }
        directions_of(&dir, &eqs, rng)
    }

    fn from_basis_unchecked(ideal: GroebnerBasis, forms: Vec<Poly>) -> RationalMap {
        RationalMap { source: ideal.ring().clone(), ideal, forms }
    }
}

/// Number of fresh attempts for randomized steps.
pub const RETRIES: usize = 3;

/// Runs `f` until it succeeds or a non-genericity error occurs, at most
/// `1 + retries` times.
pub fn retry<T>(retries: usize, mut f: impl FnMut() -> Result<T>) -> Result<T> {
    let mut last = None;
    for _ in 0..=retries {
        match f() {
            Err(e @ Error::Genericity { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.unwrap())
}

/// Evidence for birationality onto the image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirationalityCertificate {
    pub top_degree: u64,
    pub image_dim: i64,
    pub image_degree: i64,
    /// (dimension, degree) of the fiber through a random point.
    pub fiber: (i64, i64),
    pub birational: bool,
}

/// A certified inverse.
#[derive(Clone, Debug)]
pub struct InverseMap {
    /// Degree of the inverse forms.
    pub delta: u32,
    pub map: RationalMap,
    /// Number of fresh points at which `inverse(phi(p)) = p` was checked.
    pub certified_points: usize,
}

/// Basis of `(R/I)_d` by standard monomials.
pub fn standard_monomials_in_degree(gb: &GroebnerBasis, d: u32) -> MonomialIndex {
    let lms = gb.leading_monomials();
    let mons = monomials_of_degree(d, gb.ring().nvars())
        .into_iter()
        .filter(|m| !lms.iter().any(|l| l.divides(m)))
        .collect();
    MonomialIndex::new(mons)
}

/// Values of the indexed monomials at a point.
fn monomial_values(f: &Fp, idx: &MonomialIndex, q: &[u32]) -> Vec<u32> {
    idx.monomials
        .iter()
        .map(|m| (0..q.len()).fold(1u32, |acc, i| f.mul(acc, f.pow(q[i], m.exp(i) as u64))))
        .collect()
}

/// Certificate that a fiber is a `(3e-1)`-secant rational curve of degree
/// `e` to a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceCertificate {
    pub e: i64,
    pub secancy: i64,
    pub fiber_dim: i64,
    pub fiber_arith_genus: i64,
    /// Number of distinct points in the intersection with the surface.
    pub distinct_secant_points: usize,
    pub valid: bool,
}

impl CongruenceCertificate {
    pub fn signature(&self) -> (i64, i64, i64, i64) {
        (self.fiber_dim, self.e, self.fiber_arith_genus, self.secancy)
    }
}

/// Measures a fiber `F` against the surface `S`: `dim F = 1`, `deg F = e`,
/// arithmetic genus 0 and `length(F ∩ S) = 3e - 1`.
pub fn certify_congruence_fiber<R: Rng>(
    fiber: &GroebnerBasis,
    surface: &GroebnerBasis,
    e: i64,
    rng: &mut R,
) -> Result<CongruenceCertificate> {
    let ring = fiber.ring();
    let hs = HilbertSeries::of_basis(fiber);
    let (dim, deg) = hs.dim_degree()?;
    let genus = if dim == 1 { hs.arithmetic_genus()? } else { i64::MIN };
    let mut gens = fiber.polys().to_vec();
    gens.extend_from_slice(surface.polys());
    let meet = groebner_basis(ring, &gens)?;
    let (mdim, secancy) = HilbertSeries::of_basis(&meet).dim_degree()?;
    let secancy = if mdim == 0 { secancy } else if mdim < 0 { 0 } else { i64::MAX };
    let distinct = if mdim == 0 {
        let sat = crate::groebner::saturate_irrelevant(ring, meet.polys(), rng)?;
        crate::zerodim::count_points(&sat, rng)?.distinct
    } else {
        0
    };
    Ok(CongruenceCertificate {
        e: deg,
        secancy,
        fiber_dim: dim,
        fiber_arith_genus: genus,
        distinct_secant_points: distinct,
        valid: dim == 1 && deg == e && genus == 0 && secancy == 3 * e - 1 && 3 * e - secancy == 1,
    })
}

/// Lines through a point of a projective variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineDirections {
    /// Dimension of the projective space of directions inside the tangent
    /// space.
    pub ambient: usize,
    pub dim: i64,
    /// Length of the direction scheme (meaningful when `dim == 0`).
    pub degree: i64,
    pub distinct: usize,
}

/// Scheme of directions of lines through `q` contained in `V(gens)`.
///
/// Each generator `G` of degree `d` is expanded as `G(s q + v) = sum s^{d-k}
/// G_k(v)`; the linear parts `G_1` cut out the tangent space, and the
/// higher parts restricted to a complement of `q` in it define the
/// directions.
pub fn lines_through_point<R: Rng>(ring: &Arc<Ring>, gens: &[Poly], q: &[u32], rng: &mut R) -> Result<LineDirections> {
    let f = *ring.field();
    let n = ring.nvars();
    let ext = Ring::new(f, n + 1)?;
    let s = n;
    let images: Vec<Poly> = (0..n)
        .map(|i| Poly::var(&ext, i).add(&Poly::var(&ext, s).scale(q[i] % f.p())))
        .collect();
    let mut cache = SubstitutionCache::new(&images);
    let mut parts: Vec<Poly> = Vec::new();
    let mut linear: Vec<Poly> = Vec::new();
    for g in gens {
        let d = g.degree().unwrap_or(0);
        let h = cache.apply(g);
        let mut by_power: Vec<Vec<(crate::monomial::Monomial, u32)>> = vec![Vec::new(); d as usize + 1];
        for (m, c) in h.terms() {
            let k = d - m.exp(s) as u32;
            by_power[k as usize].push((m.with_exp(s, 0), *c));
        }
        if !by_power[0].is_empty() {
            return Err(Error::InvalidArgument("point does not lie on the variety".into()));
        }
        for (k, terms) in by_power.into_iter().enumerate().skip(1) {
            let p = Poly::from_terms(ring, terms);
            if p.is_zero() {
                continue;
            }
            if k == 1 {
                linear.push(p);
            } else {
                parts.push(p);
            }
        }
    }
    drop(cache);
    // Tangent directions in the hyperplane l(v) = 0, with l(q) != 0.
    let mut l = random_vector(f.p(), n, rng);
    while q.iter().zip(&l).fold(0u32, |a, (&x, &y)| f.add(a, f.mul(x, y))) == 0 {
        l = random_vector(f.p(), n, rng);
    }
    let mut cond = Matrix::zeros(0, n);
    for p in &linear {
        let mut row = vec![0u32; n];
        for (m, c) in p.terms() {
            let i = (0..n).find(|&i| m.exp(i) == 1).unwrap();
            row[i] = *c;
        }
        cond.push_row(&row);
    }
    cond.push_row(&l);
    let tangent = cond.kernel(&f)?;
    let r = tangent.rows;
    if r == 0 {
        return Ok(LineDirections { ambient: 0, dim: -1, degree: 0, distinct: 0 });
    }
    let dir = Ring::new(f, r)?;
    let param: Vec<Poly> = (0..n)
        .map(|i| Poly::linear(&dir, &(0..r).map(|j| tangent.get(j, i)).collect::<Vec<_>>()))
        .collect();
    let mut cache = SubstitutionCache::new(&param);
    let eqs: Vec<Poly> = parts.iter().map(|p| cache.apply(p)).filter(|p| !p.is_zero()).collect();
    drop(cache);
    directions_of(&dir, &eqs, rng)
}

fn directions_of<R: Rng>(dir: &Arc<Ring>, eqs: &[Poly], rng: &mut R) -> Result<LineDirections> {
    let gb = groebner_basis(dir, eqs)?;
    let (dim, degree) = HilbertSeries::of_basis(&gb).dim_degree()?;
    let distinct = if dim == 0 {
        let sat = crate::groebner::saturate_irrelevant(dir, gb.polys(), rng)?;
        crate::zerodim::count_points(&sat, rng)?.distinct
    } else {
        0
    };
    Ok(LineDirections { ambient: dir.nvars() - 1, dim, degree, distinct })
}

/// All multisets of size `d` from `0..m`, as nondecreasing index lists.
fn multisets(m: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(start: usize, m: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i, m, d, cur, out);
            cur.pop();
        }
    }
    rec(0, m, d, &mut cur, &mut out);
    out
}

/// Products `prod_{a in S} polys[a]` for each multiset `S`, sharing
/// prefixes.
fn multiset_products(polys: &[Poly], sets: &[Vec<usize>]) -> Vec<Poly> {
    let mut cache: rustc_hash::FxHashMap<Vec<usize>, Poly> = rustc_hash::FxHashMap::default();
    let mut out = Vec::with_capacity(sets.len());
    for set in sets {
        let mut acc: Option<Poly> = None;
        for k in 1..=set.len() {
            let key = set[..k].to_vec();
            let next = match cache.get(&key) {
                Some(p) => p.clone(),
                None => {
                    let p = match &acc {
                        None => polys[set[0]].clone(),
                        Some(a) => a.mul(&polys[set[k - 1]]),
                    };
                    if k < set.len() {
                        cache.insert(key, p.clone());
                    }
                    p
                }
            };
            acc = Some(next);
        }
        out.push(acc.unwrap());
    }
    out
}

/// Image of a rational map.
#[derive(Clone, Debug)]
pub struct Image {
    pub target: Arc<Ring>,
    /// Generators found degree by degree.
    pub generators: Vec<Poly>,
    pub basis: GroebnerBasis,
    pub dim: i64,
    pub degree: i64,
    /// `h^0` of the image ideal in degrees `1..=max_degree`.
    pub counts: Vec<usize>,
}

/// Random point of the hypersurface `V(h)`: intersect a random line with it
/// and keep a rational root.
pub fn random_point_on_hypersurface<R: Rng>(h: &Poly, rng: &mut R) -> Result<Vec<u32>> {
    let ring = h.ring();
    let f = *ring.field();
    let n = ring.nvars();
    let t = Ring::new(f, 2)?;
    for _ in 0..200 {
        let a = random_vector(f.p(), n, rng);
        let b = random_vector(f.p(), n, rng);
        let line: Vec<Poly> = (0..n).map(|i| Poly::linear(&t, &[a[i], b[i]])).collect();
        let r = h.substitute(&line);
        // Dehomogenize: s = 1, t free.
        let d = r.degree().unwrap_or(0) as usize;
        let mut coeffs = vec![0u32; d + 1];
        for (m, c) in r.terms() {
            coeffs[m.exp(1) as usize] = *c;
        }
        let roots = crate::univariate::roots(&f, &coeffs, rng);
        if let Some(&s) = roots.first() {
            return Ok((0..n).map(|i| f.add(a[i], f.mul(s, b[i]))).collect());
        }
    }
    Err(Error::Genericity { what: "no rational point found on hypersurface".into(), attempts: 200 })
}

/// Whether `u` and `v` are proportional nonzero vectors.
pub fn proportional(f: &Fp, u: &[u32], v: &[u32]) -> bool {
    let Some(k) = u.iter().position(|&x| x != 0) else { return false };
    if v[k] == 0 {
        return false;
    }
    (0..u.len()).all(|i| f.mul(u[i], v[k]) == f.mul(v[i], u[k]))
}

/// Rank of the matrix with the given rows.
pub fn rank_of_rows(f: &Fp, rows: &[Vec<u32>]) -> Result<usize> {
    if rows.is_empty() {
        return Ok(0);
    }
    Matrix::from_rows(rows.to_vec(), rows[0].len()).rank(f)
}
