//! Rational surfaces in `P^5` and the constructions that produce them.
//!
//! Most surfaces come with a parametrization by a plane linear system,
//! possibly followed by a linear projection; their ideals are read off by
//! interpolation and certified by comparing Hilbert functions. One surface
//! is obtained by linkage inside a cubic fourfold.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::groebner::{form_trick, groebner_basis, GroebnerBasis};
use crate::hilbert::{ideal_dimension_in_degree, HilbertSeries};
use crate::linalg::Matrix;
use crate::linsys::{ideal_in_degree, multiplicity_basis_oracle, plane_system};
use crate::poly::Poly;
use crate::random::{nonzero, random_combination, random_vector};
use crate::ratmap::RationalMap;
use crate::ring::Ring;
use rand::Rng;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// The surfaces this crate knows how to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceTag {
    /// Quintic del Pezzo surface.
    Dp5,
    /// Quartic rational normal scroll.
    Scroll4,
    /// Octic surface: plane quartics through eight points, projected from `P^6`.
    S14,
    /// Septic scroll projected from `P^8` with three nodes.
    FvScroll7,
    /// Plane curves of degree ten with ten triple points.
    S38,
    /// Septic del Pezzo surface projected from a line, one node.
    Dp7Proj,
    /// Octic surface with six nodes, residual to the degree-ten surface.
    OcticScroll8,
}

impl SurfaceTag {
    pub const ALL: [SurfaceTag; 7] = [
        SurfaceTag::Dp5,
        SurfaceTag::Scroll4,
        SurfaceTag::S14,
        SurfaceTag::FvScroll7,
        SurfaceTag::S38,
        SurfaceTag::Dp7Proj,
        SurfaceTag::OcticScroll8,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SurfaceTag::Dp5 => "dP5",
            SurfaceTag::Scroll4 => "scroll4",
            SurfaceTag::S14 => "s14",
            SurfaceTag::FvScroll7 => "fv_scroll7",
            SurfaceTag::S38 => "s38",
            SurfaceTag::Dp7Proj => "dp7_proj",
            SurfaceTag::OcticScroll8 => "octic_scroll8",
        }
    }

    /// Discriminant of the cubic fourfolds containing the surface.
    pub fn discriminant(&self) -> u32 {
        match self {
            SurfaceTag::Dp5 | SurfaceTag::Scroll4 | SurfaceTag::S14 => 14,
            SurfaceTag::FvScroll7 | SurfaceTag::Dp7Proj => 26,
            SurfaceTag::S38 | SurfaceTag::OcticScroll8 => 38,
        }
    }
}

impl fmt::Display for SurfaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SurfaceTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SurfaceTag::ALL
            .iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("unknown surface tag `{s}`")))
    }
}

/// Map from a source variety onto the surface.
#[derive(Clone, Debug)]
pub struct Parametrization {
    pub source: Arc<Ring>,
    pub forms: Vec<Poly>,
}

impl Parametrization {
    /// Image of a random source point (retrying on base points).
    pub fn random_point<R: Rng>(&self, rng: &mut R) -> Result<Vec<u32>> {
        let p = self.source.field().p();
        for _ in 0..100 {
            let u = random_vector(p, self.source.nvars(), rng);
            let v: Vec<u32> = self.forms.iter().map(|f| f.evaluate(&u)).collect::<Result<_>>()?;
            if v.iter().any(|&x| x != 0) {
                return Ok(v);
            }
        }
        Err(Error::Genericity { what: "parametrization vanished at random points".into(), attempts: 100 })
    }
}

/// A surface in `P^5` with its saturated ideal.
#[derive(Clone, Debug)]
pub struct Surface {
    pub tag: SurfaceTag,
    pub ring: Arc<Ring>,
    pub ideal: GroebnerBasis,
    pub param: Option<Parametrization>,
    /// The linear system before projection, for projected surfaces.
    pub model: Option<Parametrization>,
    /// For the linked surface: the threefold and fourfold used.
    pub linkage: Option<Linkage>,
}

/// Data of the linkage construction.
#[derive(Clone, Debug)]
pub struct Linkage {
    /// Ideal of the threefold (the top-dimensional base locus).
    pub threefold: GroebnerBasis,
    /// The cubic fourfold.
    pub cubic: Poly,
}

impl Surface {
    pub fn h0_ideal(&self, d: u32) -> i64 {
        ideal_dimension_in_degree(&self.ideal, d)
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::of_basis(&self.ideal)
    }

    /// Basis of the cubics containing the surface.
    pub fn cubics(&self) -> Result<Vec<Poly>> {
        ideal_in_degree(&self.ideal, 3)
    }

    /// Random point on the surface (needs a parametrization).
    pub fn random_point<R: Rng>(&self, rng: &mut R) -> Result<Vec<u32>> {
        match &self.param {
            Some(p) => p.random_point(rng),
            None => Err(Error::InvalidArgument(format!("{} has no parametrization", self.tag))),
        }
    }
}

/// Random points of `P^2` with no three on a line.
pub fn general_plane_points<R: Rng>(f: &Fp, k: usize, rng: &mut R) -> Vec<[u32; 3]> {
    let mut pts: Vec<[u32; 3]> = Vec::new();
    while pts.len() < k {
        let v = random_vector(f.p(), 3, rng);
        let cand = [v[0], v[1], v[2]];
        if cand == [0, 0, 0] {
            continue;
        }
        let mut ok = true;
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                let m = Matrix::from_rows(vec![pts[a].to_vec(), pts[b].to_vec(), cand.to_vec()], 3);
                if m.rank(f).unwrap_or(0) < 3 {
                    ok = false;
                }
            }
            let m = Matrix::from_rows(vec![pts[a].to_vec(), cand.to_vec()], 3);
            if m.rank(f).unwrap_or(0) < 2 {
                ok = false;
            }
        }
        if ok {
            pts.push(cand);
        }
    }
    pts
}

/// Linear forms on `P^N` vanishing on the span of the given points.
pub fn center_forms(f: &Fp, center: &[Vec<u32>], n1: usize) -> Result<Matrix> {
    let m = Matrix::from_rows(center.to_vec(), n1);
    let k = m.kernel(f)?;
    if k.rows + center.len() != n1 {
        return Err(Error::Genericity { what: "projection center is degenerate".into(), attempts: 1 });
    }
    Ok(k)
}

/// Composes a parametrization with the linear projection from the span of
/// `center`.
pub fn project_from_center(forms: &[Poly], center: &[Vec<u32>]) -> Result<Vec<Poly>> {
    let ring = forms[0].ring();
    let f = *ring.field();
    let k = center_forms(&f, center, forms.len())?;
    Ok((0..k.rows)
        .map(|r| {
            forms
                .iter()
                .zip(k.row(r))
                .fold(Poly::zero(ring), |acc, (g, &c)| acc.add_scaled(g, c))
        })
        .collect())
}

/// A point on the secant line through the images of two random source
/// points.
fn secant_point<R: Rng>(param: &Parametrization, rng: &mut R) -> Result<Vec<u32>> {
    let f = *param.source.field();
    let a = param.random_point(rng)?;
    let b = param.random_point(rng)?;
    let l = nonzero(f.p(), rng);
    Ok(a.iter().zip(&b).map(|(&x, &y)| f.add(x, f.mul(l, y))).collect())
}

/// Saturated ideal of the image of a parametrization, in a ring with one
/// variable per form.
pub fn image_ideal(param: &Parametrization, gen_degree: u32, check_degree: u32) -> Result<GroebnerBasis> {
    let target = Ring::new(*param.source.field(), param.forms.len())?;
    ideal_of_image(param, &target, gen_degree, check_degree)
}

/// Ideal of the image of a parametrization in `P^5`, generated in degrees
/// up to `gen_degree`, and certified against interpolation in degrees up to
/// `check_degree`.
fn ideal_of_image(param: &Parametrization, p5: &Arc<Ring>, gen_degree: u32, check_degree: u32) -> Result<GroebnerBasis> {
    let map = RationalMap::new(&param.source, &[], param.forms.clone())?;
    let mut gens = Vec::new();
    for d in 1..=gen_degree {
        gens.extend(map.image_in_degree(p5, d)?);
    }
    let gb = groebner_basis(p5, &gens)?;
    for d in gen_degree + 1..=check_degree {
        let want = map.image_in_degree(p5, d)?.len() as i64;
        let got = ideal_dimension_in_degree(&gb, d);
        if want != got {
            return Err(Error::Certification(format!(
                "ideal generated in degree <= {gen_degree} has {got} forms of degree {d}, the image has {want}"
            )));
        }
    }
    Ok(gb)
}

fn plane_ring(f: Fp) -> Result<Arc<Ring>> {
    Ring::new(f, 3)
}

fn plane_param(f: Fp, d: u32, points: &[([u32; 3], u32)]) -> Result<Parametrization> {
    let source = plane_ring(f)?;
    let forms = plane_system(&source, d, points)?;
    Ok(Parametrization { source, forms })
}

/// Builds the surface with the given tag over `F_p`.
pub fn build_surface<R: Rng>(tag: SurfaceTag, f: Fp, rng: &mut R) -> Result<Surface> {
    let p5 = Ring::new(f, 6)?;
    let projected = |param: Parametrization, model: Option<Parametrization>, gen_degree: u32, check: u32| -> Result<Surface> {
        let ideal = ideal_of_image(&param, &p5, gen_degree, check)?;
        Ok(Surface { tag, ring: p5.clone(), ideal, param: Some(param), model, linkage: None })
    };
    let simple = |param: Parametrization, gen_degree: u32, check: u32| projected(param, None, gen_degree, check);
    match tag {
        SurfaceTag::Dp5 => {
            let pts = general_plane_points(&f, 4, rng);
            let param = plane_param(f, 3, &pts.iter().map(|p| (*p, 1)).collect::<Vec<_>>())?;
            simple(param, 2, 4)
        }
        SurfaceTag::Scroll4 => {
            // (s, t) -> t_j s^a s^b on P^1 x P^1.
            let source = Ring::new(f, 4)?;
            let s = [Poly::var(&source, 0), Poly::var(&source, 1)];
            let t = [Poly::var(&source, 2), Poly::var(&source, 3)];
            let mut forms = Vec::new();
            for tj in &t {
                forms.push(s[0].mul(&s[0]).mul(tj));
                forms.push(s[0].mul(&s[1]).mul(tj));
                forms.push(s[1].mul(&s[1]).mul(tj));
            }
            simple(Parametrization { source, forms }, 2, 4)
        }
        SurfaceTag::S14 => {
            let pts = general_plane_points(&f, 8, rng);
            let p6 = plane_param(f, 4, &pts.iter().map(|p| (*p, 1)).collect::<Vec<_>>())?;
            let center = vec![random_vector(f.p(), p6.forms.len(), rng)];
            let forms = project_from_center(&p6.forms, &center)?;
            projected(Parametrization { source: p6.source.clone(), forms }, Some(p6), 3, 5)
        }
        SurfaceTag::FvScroll7 => {
            let pt = general_plane_points(&f, 1, rng)[0];
            let p8 = plane_param(f, 4, &[(pt, 3)])?;
            let center: Vec<Vec<u32>> = (0..3).map(|_| secant_point(&p8, rng)).collect::<Result<_>>()?;
            let forms = project_from_center(&p8.forms, &center)?;
            projected(Parametrization { source: p8.source.clone(), forms }, Some(p8), 3, 5)
        }
        SurfaceTag::S38 => {
            let pts = general_plane_points(&f, 10, rng);
            let param = plane_param(f, 10, &pts.iter().map(|p| (*p, 3)).collect::<Vec<_>>())?;
            if param.forms.len() != 6 {
                return Err(Error::Genericity { what: "ten triple points are special".into(), attempts: 1 });
            }
            simple(param, 3, 5)
        }
        SurfaceTag::Dp7Proj => {
            let pts = general_plane_points(&f, 2, rng);
            let p7 = plane_param(f, 3, &pts.iter().map(|p| (*p, 1)).collect::<Vec<_>>())?;
            let a = secant_point(&p7, rng)?;
            let b = random_vector(f.p(), p7.forms.len(), rng);
            let forms = project_from_center(&p7.forms, &[a, b])?;
            projected(Parametrization { source: p7.source.clone(), forms }, Some(p7), 3, 5)
        }
        SurfaceTag::OcticScroll8 => {
            let s38 = build_surface(SurfaceTag::S38, f, rng)?;
            linked_octic(&s38, rng)
        }
    }
}

/// Random cubic fourfold containing the surface.
pub fn random_cubic_through<R: Rng>(s: &Surface, rng: &mut R) -> Result<Poly> {
    let cubics = s.cubics()?;
    if cubics.is_empty() {
        return Err(Error::InvalidArgument("no cubics contain the surface".into()));
    }
    Ok(random_combination(&s.ring, &cubics, rng))
}

/// `(X + I_B) : g^infinity` for a general `g` in the ideal of `S`: the
/// residual of `S` in the intersection of the fourfold `X` with `B`.
pub fn link_residual<R: Rng>(
    ring: &Arc<Ring>,
    cubic: &Poly,
    threefold: &GroebnerBasis,
    surface: &GroebnerBasis,
    rng: &mut R,
) -> Result<GroebnerBasis> {
    let mut gens = threefold.polys().to_vec();
    gens.push(cubic.clone());
    let sat_by = random_combination(ring, &ideal_in_degree(surface, 3)?, rng);
    let fs = form_trick(ring, &gens, &sat_by, false)?;
    groebner_basis(ring, &fs.contract(ring, &sat_by))
}

/// The base ideal of the quintics singular along `s`, saturated by a
/// general cubic through `s`. This removes everything supported on `s`; its
/// top-dimensional part is the base threefold, and lower-dimensional
/// components off the cubic may remain.
pub fn base_threefold<R: Rng>(s: &Surface, rng: &mut R) -> Result<GroebnerBasis> {
    let quintics = multiplicity_basis_oracle(&s.ideal, 2, 5)?;
    let g = random_combination(&s.ring, &s.cubics()?, rng);
    let fs = form_trick(&s.ring, &quintics, &g, false)?;
    groebner_basis(&s.ring, &fs.contract(&s.ring, &g))
}

fn linked_octic<R: Rng>(s38: &Surface, rng: &mut R) -> Result<Surface> {
    let b = base_threefold(s38, rng)?;
    let x = random_cubic_through(s38, rng)?;
    let t = link_residual(&s38.ring, &x, &b, &s38.ideal, rng)?;
    Ok(Surface {
        tag: SurfaceTag::OcticScroll8,
        ring: s38.ring.clone(),
        ideal: t,
        param: None,
        model: None,
        linkage: Some(Linkage { threefold: b, cubic: x }),
    })
}
