//! Graded module computations: syzygies, degree-zero homomorphisms into the
//! quotient ring, and top-dimensional components.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::groebner::{form_trick, groebner_basis, GroebnerBasis};
use crate::hilbert::HilbertSeries;
use crate::linalg::{Matrix, MonomialIndex};
use crate::monomial::{monomials_of_degree, Monomial, MonomialOrder};
use crate::poly::{Poly, SubstitutionCache};
use crate::ratmap::standard_monomials_in_degree;
use crate::random::random_vector;
use crate::ring::Ring;
use rand::Rng;
use rustc_hash::FxHashMap;
use std::sync::Arc;

/// A map of graded free modules `⊕ R(-s_j) -> ⊕ R(-t_i)`, stored by columns.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub ring: Arc<Ring>,
    /// Degrees `t_i` of the target generators.
    pub target_degrees: Vec<u32>,
    /// Degrees `s_j` of the source generators.
    pub source_degrees: Vec<u32>,
    /// Column `j` is the image of the `j`-th source generator.
    pub columns: Vec<Vec<Poly>>,
}

impl ModuleMap {
    /// The row `(g_1, ..., g_r)` presenting an ideal.
    pub fn from_generators(ring: &Arc<Ring>, gens: &[Poly]) -> Result<ModuleMap> {
        let mut degrees = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.is_homogeneous() || g.is_zero() {
                return Err(Error::NotHomogeneous("generators must be nonzero forms".into()));
            }
            degrees.push(g.degree().unwrap());
        }
        Ok(ModuleMap {
            ring: ring.clone(),
            target_degrees: vec![0],
            source_degrees: degrees,
            columns: gens.iter().map(|g| vec![g.clone()]).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.target_degrees.len()
    }

    /// `M . v` for a vector over the source.
    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        let mut out = vec![Poly::zero(&self.ring); self.rows()];
        for (col, c) in self.columns.iter().zip(v) {
            if c.is_zero() {
                continue;
            }
            for (o, e) in out.iter_mut().zip(col) {
                *o = o.add(&e.mul(c));
            }
        }
        out
    }

    /// Whether `self . other = 0`.
    pub fn composes_to_zero(&self, other: &ModuleMap) -> bool {
        other.columns.iter().all(|c| self.apply(c).iter().all(|p| p.is_zero()))
    }
}

/// Division of `f` by a Gröbner basis keeping the quotients:
/// `f = sum q_i g_i + r`.
pub fn divide_with_quotients(gb: &GroebnerBasis, f: &Poly) -> (Vec<Poly>, Poly) {
    let ring = gb.ring();
    let fp = *ring.field();
    let gs = gb.polys();
    let mut q: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); gs.len()];
    let mut rem: Vec<(Monomial, u32)> = Vec::new();
    let mut p = f.clone();
    while let Some(lm) = p.lm() {
        let lc = p.lc();
        match gs.iter().position(|g| g.lm().unwrap().divides(&lm)) {
            Some(i) => {
                let g = &gs[i];
                let m = lm.div_unchecked(&g.lm().unwrap());
                let c = fp.mul(lc, fp.inv(g.lc()).unwrap());
                q[i].push((m, c));
                p = p.sub(&g.mul_term(&m, c));
            }
            None => {
                rem.push((lm, lc));
                p = p.sub(&Poly::monomial(ring, lm, lc));
            }
        }
    }
    (
        q.into_iter().map(|t| Poly::from_terms(ring, t)).collect(),
        Poly::from_terms(ring, rem),
    )
}

/// Syzygies of the elements of a Gröbner basis, one for each pair, from the
/// standard representations of the S-polynomials. They generate the whole
/// syzygy module.
pub fn schreyer_syzygies(gb: &GroebnerBasis) -> Result<ModuleMap> {
    let ring = gb.ring();
    let fp = *ring.field();
    let gs = gb.polys();
    let r = gs.len();
    let mut columns = Vec::new();
    let mut degrees = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            crate::exec::check_budget()?;
            let (li, lj) = (gs[i].lm().unwrap(), gs[j].lm().unwrap());
            let l = li.lcm(&lj);
            let mi = l.div_unchecked(&li);
            let mj = l.div_unchecked(&lj);
            let ci = fp.inv(gs[i].lc())?;
            let cj = fp.inv(gs[j].lc())?;
            let s = gs[i].mul_term(&mi, ci).sub(&gs[j].mul_term(&mj, cj));
            let (mut q, rem) = divide_with_quotients(gb, &s);
            if !rem.is_zero() {
                return Err(Error::InvalidArgument("input is not a Gröbner basis".into()));
            }
            for x in q.iter_mut() {
                *x = x.neg();
            }
            q[i] = q[i].add(&Poly::monomial(ring, mi, ci));
            q[j] = q[j].add(&Poly::monomial(ring, mj, fp.neg(cj)));
            degrees.push(ring.deg(&l));
            columns.push(q);
        }
    }
    Ok(ModuleMap {
        ring: ring.clone(),
        target_degrees: gs.iter().map(|g| g.degree().unwrap()).collect(),
        source_degrees: degrees,
        columns,
    })
}

/// Syzygies of `gens` of degree exactly `t`: the kernel of
/// `⊕ R_{t - d_i} -> R_t`.
pub fn syzygies_in_degree(ring: &Arc<Ring>, gens: &[Poly], t: u32) -> Result<Vec<Vec<Poly>>> {
    let f = *ring.field();
    let n = ring.nvars();
    let blocks: Vec<Vec<Monomial>> = gens
        .iter()
        .map(|g| {
            let d = g.degree().unwrap_or(0);
            if d <= t {
                monomials_of_degree(t - d, n)
            } else {
                Vec::new()
            }
        })
        .collect();
    let mut products = Vec::new();
    for (g, b) in gens.iter().zip(&blocks) {
        for m in b {
            products.push(g.mul_term(m, 1));
        }
    }
    let idx = MonomialIndex::new(monomials_of_degree(t, n));
    let mat = idx.matrix(&products)?;
    let rel = mat.left_kernel(&f)?;
    let mut out = Vec::with_capacity(rel.rows);
    for r in 0..rel.rows {
        let row = rel.row(r);
        let mut pos = 0;
        let mut v = Vec::with_capacity(gens.len());
        for b in &blocks {
            let terms: Vec<(Monomial, u32)> =
                b.iter().zip(&row[pos..pos + b.len()]).filter(|(_, &c)| c != 0).map(|(m, &c)| (*m, c)).collect();
            pos += b.len();
            v.push(Poly::from_terms(ring, terms));
        }
        out.push(v);
    }
    Ok(out)
}

/// Generators of the syzygy module of `gens` in degrees up to `max_degree`,
/// keeping in each degree only those not generated by lower-degree ones.
pub fn syzygies(ring: &Arc<Ring>, gens: &[Poly], max_degree: u32) -> Result<ModuleMap> {
    let map = ModuleMap::from_generators(ring, gens)?;
    let f = *ring.field();
    let n = ring.nvars();
    let mut columns: Vec<Vec<Poly>> = Vec::new();
    let mut degrees = Vec::new();
    let min = map.source_degrees.iter().copied().min().unwrap_or(0);
    for t in min + 1..=max_degree {
        crate::exec::check_budget()?;
        let found = syzygies_in_degree(ring, gens, t)?;
        if found.is_empty() {
            continue;
        }
        // Span of the old generators multiplied up to degree t.
        let blocks: Vec<MonomialIndex> = map
            .source_degrees
            .iter()
            .map(|&d| MonomialIndex::new(if d <= t { monomials_of_degree(t - d, n) } else { Vec::new() }))
            .collect();
        let encode = |v: &[Poly]| -> Result<Vec<u32>> {
            let mut out = Vec::new();
            for (p, b) in v.iter().zip(&blocks) {
                if b.is_empty() {
                    continue;
                }
                out.extend(b.vector(p)?);
            }
            Ok(out)
        };
        let width: usize = blocks.iter().map(|b| b.len()).sum();
        let mut old = Matrix::zeros(0, width);
        for (c, &d) in columns.iter().zip(&degrees) {
            for m in monomials_of_degree(t - d, n) {
                let v: Vec<Poly> = c.iter().map(|p| p.mul_term(&m, 1)).collect();
                old.push_row(&encode(&v)?);
            }
        }
        let mut rank = old.rank(&f)?;
        for v in found {
            let row = encode(&v)?;
            old.push_row(&row);
            let r = old.rank(&f)?;
            if r > rank {
                rank = r;
                columns.push(v);
                degrees.push(t);
            }
        }
    }
    Ok(ModuleMap { ring: ring.clone(), target_degrees: map.source_degrees.clone(), source_degrees: degrees, columns })
}

/// Normal forms of all monomials of degree `t` as sparse vectors over the
/// standard monomials of degree `t`.
struct NormalFormTable {
    std: MonomialIndex,
    nf: FxHashMap<Monomial, Vec<(usize, u32)>>,
}

impl NormalFormTable {
    fn new(gb: &GroebnerBasis, t: u32) -> Result<Self> {
        let ring = gb.ring();
        let std = standard_monomials_in_degree(gb, t);
        let mons = monomials_of_degree(t, ring.nvars());
        let polys: Vec<Poly> = mons.iter().map(|m| Poly::monomial(ring, *m, 1)).collect();
        let nfs = gb.normal_forms(&polys)?;
        let mut nf = FxHashMap::default();
        for (m, p) in mons.into_iter().zip(nfs) {
            let v = p
                .terms()
                .iter()
                .map(|(s, c)| (std.get(s).expect("normal form uses standard monomials"), *c))
                .collect();
            nf.insert(m, v);
        }
        Ok(NormalFormTable { std, nf })
    }

    /// Normal form of `p * m` for a form `p`.
    fn image(&self, f: &Fp, p: &Poly, m: &Monomial, out: &mut [u32]) {
        for (t, c) in p.terms() {
            for &(k, v) in &self.nf[&t.mul(m)] {
                out[k] = f.add(out[k], f.mul(*c, v));
            }
        }
    }
}

/// Degree-zero homomorphisms `I -> R/I` as a linear space: unknowns are the
/// images `v_i` of the Gröbner basis elements in `(R/I)_{d_i}`, subject to
/// every Schreyer syzygy and the extra relations given.
fn hom_space(gb: &GroebnerBasis, extra: &[(u32, Vec<Poly>)]) -> Result<usize> {
    let ring = gb.ring();
    let f = *ring.field();
    let gs = gb.polys();
    let syz = schreyer_syzygies(gb)?;
    let unknown_blocks: Vec<MonomialIndex> =
        gs.iter().map(|g| standard_monomials_in_degree(gb, g.degree().unwrap())).collect();
    let width: usize = unknown_blocks.iter().map(|b| b.len()).sum();
    let mut relations: Vec<(u32, Vec<Poly>)> =
        syz.source_degrees.iter().copied().zip(syz.columns.iter().cloned()).collect();
    relations.extend(extra.iter().cloned());
    relations.sort_by_key(|r| r.0);
    let mut tables: FxHashMap<u32, NormalFormTable> = FxHashMap::default();
    let mut basis = Matrix::identity(width);
    for (t, rel) in &relations {
        if basis.rows == 0 {
            break;
        }
        crate::exec::check_budget()?;
        if !tables.contains_key(t) {
            tables.insert(*t, NormalFormTable::new(gb, *t)?);
        }
        let table = &tables[t];
        // Column for each unknown: normal form of rel_i * b.
        let mut cond = Matrix::zeros(table.std.len(), width);
        let mut col = 0;
        for (p, block) in rel.iter().zip(&unknown_blocks) {
            for m in &block.monomials {
                if !p.is_zero() {
                    let mut out = vec![0u32; table.std.len()];
                    table.image(&f, p, m, &mut out);
                    for (k, v) in out.into_iter().enumerate() {
                        if v != 0 {
                            cond.set(k, col, v);
                        }
                    }
                }
                col += 1;
            }
        }
        if table.std.is_empty() {
            continue;
        }
        let restricted = cond.mul(&f, &basis.transpose());
        let k = restricted.kernel(&f)?;
        basis = k.mul(&f, &basis);
    }
    Ok(basis.rows)
}

/// `dim Hom(I, R/I)_0` for a saturated ideal: the number of sections of the
/// normal sheaf counted from a presentation.
pub fn hom_degree_zero(gb: &GroebnerBasis) -> Result<usize> {
    hom_space(gb, &[])
}

/// `dim Hom(I/(F), R/I)_0` for a form `F` in `I`.
pub fn hom_degree_zero_relative(gb: &GroebnerBasis, form: &Poly) -> Result<usize> {
    let (q, rem) = divide_with_quotients(gb, form);
    if !rem.is_zero() {
        return Err(Error::InvalidArgument("the form does not lie in the ideal".into()));
    }
    hom_space(gb, &[(form.degree().unwrap(), q)])
}

/// A random invertible linear change of coordinates: images of the
/// variables under the change and under its inverse.
pub fn random_linear_change<R: Rng>(ring: &Arc<Ring>, rng: &mut R) -> Result<(Vec<Poly>, Vec<Poly>)> {
    let f = *ring.field();
    let n = ring.nvars();
    loop {
        let rows: Vec<Vec<u32>> = (0..n).map(|_| random_vector(f.p(), n, rng)).collect();
        let a = Matrix::from_rows(rows, n);
        if let Some(inv) = a.inverse(&f)? {
            let fwd = (0..n).map(|i| Poly::linear(ring, a.row(i))).collect();
            let bwd = (0..n).map(|i| Poly::linear(ring, inv.row(i))).collect();
            return Ok((fwd, bwd));
        }
    }
}

/// Substitutes the given images for the variables.
pub fn substitute_all(polys: &[Poly], images: &[Poly]) -> Vec<Poly> {
    let mut cache = SubstitutionCache::new(images);
    polys.iter().map(|p| cache.apply(p)).collect()
}

/// Equidimensional hull of a homogeneous ideal: the intersection of its
/// primary components of maximal dimension.
///
/// In general coordinates the last `k + 1` variables `u` are a Noether
/// normalization of every top-dimensional component (`k` the projective
/// dimension). A Gröbner basis for the product order with the other
/// variables first gives leading coefficients in `K[u]`; saturating by them
/// keeps exactly the components on which `u` stays independent. The result
/// is certified to contain `I` with the same dimension and degree.
pub fn top_component<R: Rng>(ring: &Arc<Ring>, gens: &[Poly], rng: &mut R) -> Result<GroebnerBasis> {
    let n = ring.nvars();
    let gb = groebner_basis(ring, gens)?;
    let (dim, degree) = HilbertSeries::of_basis(&gb).dim_degree()?;
    if dim < 0 {
        return Ok(gb);
    }
    let free = dim as usize + 1;
    let bound = n - free;
    for _attempt in 0..=crate::ratmap::RETRIES {
        let (fwd, bwd) = random_linear_change(ring, rng)?;
        let moved = substitute_all(gb.polys(), &fwd);
        let block = ring.reorder(MonomialOrder::Block(bound), None)?;
        let moved_b: Vec<Poly> = moved.iter().map(|p| p.to_ring(&block)).collect();
        let bgb = groebner_basis(&block, &moved_b)?;
        let mut coeffs: Vec<Poly> = Vec::new();
        for g in bgb.polys() {
            let lm = g.lm().unwrap();
            let head: Vec<(Monomial, u32)> = g
                .terms()
                .iter()
                .filter(|(m, _)| (0..bound).all(|i| m.exp(i) == lm.exp(i)))
                .map(|(m, c)| {
                    let mut r = *m;
                    for i in 0..bound {
                        r = r.with_exp(i, 0);
                    }
                    (r, *c)
                })
                .collect();
            let h = Poly::from_terms(ring, head).monic();
            if h.degree().unwrap_or(0) > 0 && !coeffs.contains(&h) {
                coeffs.push(h);
            }
        }
        let mut cur: Vec<Poly> = moved;
        for h in &coeffs {
            crate::exec::check_budget()?;
            let fs = form_trick(ring, &cur, h, false)?;
            cur = groebner_basis(ring, &fs.contract(ring, h))?.into_polys();
        }
        let top = groebner_basis(ring, &substitute_all(&cur, &bwd))?;
        let (tdim, tdeg) = HilbertSeries::of_basis(&top).dim_degree()?;
        if tdim == dim && tdeg == degree && top.contains_all(gb.polys())? {
            return Ok(top);
        }
    }
    Err(Error::Certification("top component failed the dimension and degree checks".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::random::seeded;
    use crate::text::parse_poly;

    fn ring(n: usize) -> Arc<Ring> {
        Ring::new(Fp::new(32003).unwrap(), n).unwrap()
    }

    fn polys(r: &Arc<Ring>, s: &[&str]) -> Vec<Poly> {
        s.iter().map(|x| parse_poly(r, x).unwrap()).collect()
    }

    #[test]
    fn koszul_syzygy() {
        let r = ring(2);
        let g = polys(&r, &["x0", "x1"]);
        let s = syzygies(&r, &g, 3).unwrap();
        assert_eq!(s.columns.len(), 1);
        let c = s.columns[0][1].lc();
        assert_eq!(s.columns[0][0], Poly::var(&r, 1).scale(c).neg());
        assert_eq!(s.columns[0][1], Poly::var(&r, 0).scale(c));
        let m = ModuleMap::from_generators(&r, &g).unwrap();
        assert!(m.composes_to_zero(&s));
    }

    #[test]
    fn twisted_cubic_normal_bundle() {
        let r = ring(4);
        let g = polys(&r, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        let gb = groebner_basis(&r, &g).unwrap();
        let syz = schreyer_syzygies(&gb).unwrap();
        let m = ModuleMap::from_generators(&r, gb.polys()).unwrap();
        assert!(m.composes_to_zero(&syz));
        // Two linear syzygies of the three quadrics.
        let lin = syzygies(&r, &g, 4).unwrap();
        assert_eq!(lin.source_degrees, vec![3, 3]);
        // N = O(5) + O(5) on P^1.
        assert_eq!(hom_degree_zero(&gb).unwrap(), 12);
    }

    #[test]
    fn top_component_drops_embedded_point() {
        let r = ring(4);
        // Twisted cubic together with an isolated point off it.
        let c = polys(&r, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        let pt = polys(&r, &["x0 - x3", "x1 - 2*x3", "x2"]);
        let both = crate::groebner::intersect(&r, &c, &pt).unwrap();
        let mut rng = seeded(5);
        let top = top_component(&r, both.polys(), &mut rng).unwrap();
        assert!(top.same_ideal(&groebner_basis(&r, &c).unwrap()));
    }
}
