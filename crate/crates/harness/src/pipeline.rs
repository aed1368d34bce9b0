//! The per-row pipeline: build the surface, its linear system and the maps,
//! and compare every computed invariant with the data file.

use crate::expected::{Cited, RowExpect};
use crate::numeric::d_invariant;
use crate::report::{Check, RowReport, Status};
use fourfold_core::exec::with_budget;
use fourfold_core::groebner::{
    ideal_quotient, saturate_irrelevant, singular_locus, GroebnerBasis, QuotientMethod,
};
use fourfold_core::hilbert::{ideal_dimension_in_degree, HilbertSeries};
use fourfold_core::homalg::{hom_degree_zero, hom_degree_zero_relative, top_component};
use fourfold_core::linsys::{multiplicity_basis_oracle, power_saturation_basis};
use fourfold_core::random::{random_element, seeded, SeededRng};
use fourfold_core::ratmap::{certify_congruence_fiber, lines_through_point, Image, RationalMap, RETRIES};
use fourfold_core::surfaces::{
    base_threefold, build_surface, image_ideal, link_residual, random_cubic_through, Surface, SurfaceTag,
};
use fourfold_core::zerodim::count_points;
use fourfold_core::{Error, Fp, Poly};
use serde_json::{json, Value};
use std::time::{Duration, Instant};

/// Largest inverse degree tried.
pub const MAX_DELTA: u32 = 9;

/// Run-wide settings.
#[derive(Clone, Debug)]
pub struct Options {
    pub prime: u32,
    pub seed: u64,
    pub with_inverse: bool,
    pub with_normal_bundle: bool,
    pub with_line_counts: bool,
    pub step_budget: Duration,
    pub retries: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            prime: fourfold_core::field::DEFAULT_PRIME,
            seed: 1,
            with_inverse: false,
            with_normal_bundle: false,
            with_line_counts: false,
            step_budget: Duration::from_secs(30 * 60),
            retries: RETRIES,
        }
    }
}

/// A row to run: the surface and what is expected of it.
#[derive(Clone, Debug)]
pub struct RowPlan {
    pub tag: SurfaceTag,
    pub expected: RowExpect,
}

impl RowPlan {
    pub fn new(expected: &RowExpect) -> anyhow::Result<RowPlan> {
        let tag = expected.tag.parse::<SurfaceTag>().map_err(|e| anyhow::anyhow!("{e}"))?;
        Ok(RowPlan { tag, expected: expected.clone() })
    }
}

/// FNV-1a, used to derive a stable seed for each step.
fn fnv(parts: &[&[u8]]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for part in parts {
        for &b in *part {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        h ^= 0xff;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Seed of attempt `attempt` of a step; replaying `(p, seed)` replays every
/// step exactly.
pub fn step_seed(seed: u64, row: &str, step: &str, attempt: usize) -> u64 {
    fnv(&[&seed.to_le_bytes(), row.as_bytes(), step.as_bytes(), &(attempt as u64).to_le_bytes()])
}

#[derive(Clone, Debug)]
struct Failure {
    status: Status,
    message: String,
}

struct Step<T> {
    value: Result<T, Failure>,
    seconds: f64,
}

impl<T> Step<T> {
    fn ok(&self) -> Option<&T> {
        self.value.as_ref().ok()
    }

    fn failure(&self) -> Option<&Failure> {
        self.value.as_ref().err()
    }
}

fn upstream<T>(step: &Step<T>, name: &str) -> Failure {
    let f = step.failure().expect("upstream step failed");
    Failure { status: f.status, message: format!("{name}: {}", f.message) }
}

struct Run<'a> {
    row: &'a str,
    opts: &'a Options,
    checks: Vec<Check>,
    retries: usize,
}

impl<'a> Run<'a> {
    /// Runs a step under the budget, retrying with fresh draws on
    /// genericity and certification failures.
    fn step<T>(&mut self, name: &str, mut f: impl FnMut(&mut SeededRng) -> fourfold_core::Result<T>) -> Step<T> {
        let start = Instant::now();
        let mut attempt = 0;
        let value = loop {
            let mut rng = seeded(step_seed(self.opts.seed, self.row, name, attempt));
            match with_budget(self.opts.step_budget, || f(&mut rng)) {
                Ok(v) => break Ok(v),
                Err(Error::Genericity { .. } | Error::Certification(_)) if attempt < self.opts.retries => {
                    attempt += 1;
                    self.retries += 1;
                }
                Err(Error::Timeout) => {
                    break Err(Failure { status: Status::Timeout, message: format!("{name} exceeded the step budget") })
                }
                Err(e) => {
                    break Err(Failure {
                        status: Status::Error,
                        message: format!("{name} failed after {} attempt(s): {e}", attempt + 1),
                    })
                }
            }
        };
        Step { value, seconds: start.elapsed().as_secs_f64() }
    }

    fn push(&mut self, name: &str, expected: Value, citation: &str, seconds: f64, computed: Result<Value, Failure>) {
        let (computed, status, note) = match computed {
            Ok(v) => {
                let status = if v == expected { Status::Pass } else { Status::Fail };
                (v, status, None)
            }
            Err(f) => (Value::Null, f.status, Some(f.message)),
        };
        self.checks.push(Check { name: name.into(), expected, computed, status, citation: citation.into(), seconds, note });
    }

    fn compare<T, U: serde::Serialize>(
        &mut self,
        name: &str,
        expected: Value,
        citation: &str,
        step: &Step<T>,
        computed: impl FnOnce(&T) -> U,
    ) {
        let value = match &step.value {
            Ok(t) => Ok(json!(computed(t))),
            Err(_) => Err(upstream(step, "depends on")),
        };
        self.push(name, expected, citation, step.seconds, value);
    }

    fn cited<V: serde::Serialize + Clone, T, U: serde::Serialize>(
        &mut self,
        name: &str,
        exp: &Cited<V>,
        step: &Step<T>,
        computed: impl FnOnce(&T) -> U,
    ) {
        self.compare(name, json!(exp.value.clone()), &exp.cite, step, computed)
    }

    fn note(&mut self, name: &str) -> Option<&mut Check> {
        self.checks.iter_mut().rev().find(|c| c.name == name)
    }

    fn skip<V: serde::Serialize>(&mut self, name: &str, expected: V, citation: &str, reason: &str) {
        self.checks.push(Check {
            name: name.into(),
            expected: json!(expected),
            computed: Value::Null,
            status: Status::Skipped,
            citation: citation.into(),
            seconds: 0.0,
            note: Some(reason.into()),
        });
    }
}

/// Distinct points and length of the singular scheme of a surface.
fn singular_points(gb: &GroebnerBasis, codim: usize, rng: &mut SeededRng) -> fourfold_core::Result<(usize, usize)> {
    let sing = singular_locus(gb.ring(), gb.polys(), codim, rng)?;
    let pc = count_points(&sing, rng)?;
    Ok((pc.distinct, pc.degree))
}

fn dim_degree_genus(gb: &GroebnerBasis) -> fourfold_core::Result<(i64, i64, i64)> {
    let hs = HilbertSeries::of_basis(gb);
    let (dim, deg) = hs.dim_degree()?;
    let genus = if dim >= 1 { hs.sectional_genus()? } else { 0 };
    Ok((dim, deg, genus))
}

struct InverseData {
    delta: u32,
    certified_points: usize,
    map: RationalMap,
}

struct BaseLocus {
    dim: i64,
    degree: i64,
    genus: i64,
    reduced_degree: usize,
}

/// Base scheme of the inverse on the image: its saturated ideal gives
/// degree and sectional genus, and two general hyperplane sections count
/// the points of the reduced top-dimensional part.
fn base_locus(inv: &RationalMap, rng: &mut SeededRng) -> fourfold_core::Result<BaseLocus> {
    let ring = inv.source();
    let mut gens = inv.source_ideal().polys().to_vec();
    gens.extend_from_slice(inv.forms());
    let b = saturate_irrelevant(ring, &gens, rng)?;
    let (dim, degree, genus) = dim_degree_genus(&b)?;
    let mut sliced = b.polys().to_vec();
    for _ in 0..dim.max(0) {
        sliced.push(random_element(ring, 1, rng));
    }
    let pts = saturate_irrelevant(ring, &sliced, rng)?;
    let reduced_degree = count_points(&pts, rng)?.distinct;
    Ok(BaseLocus { dim, degree, genus, reduced_degree })
}

fn needs(flag: &str) -> String {
    format!("not requested (run with {flag})")
}

/// Runs one row end to end.
pub fn run_row(plan: &RowPlan, opts: &Options) -> RowReport {
    let ex = &plan.expected;
    let row = plan.tag.as_str();
    let mut run = Run { row, opts, checks: Vec::new(), retries: 0 };
    let field = match Fp::new(opts.prime) {
        Ok(f) => f,
        Err(e) => {
            run.push("prime", json!(opts.prime), "", 0.0, Err(Failure { status: Status::Error, message: e.to_string() }));
            return RowReport { row: row.into(), prime: opts.prime, seed: opts.seed, retries: 0, checks: run.checks };
        }
    };

    // Surface and its Table-1 invariants.
    let surface = run.step("build_surface", |rng| build_surface(plan.tag, field, rng));
    let hs = surface.ok().map(|s| s.hilbert_series());
    run.cited("degree", &ex.degree, &surface, |_| hs.as_ref().and_then(|h| h.dim_degree().ok()).map(|d| d.1));
    if let Some(g) = &ex.sectional_genus {
        run.cited("sectional_genus", g, &surface, |_| hs.as_ref().and_then(|h| h.sectional_genus().ok()));
    }
    if let Some(g) = &ex.model_sectional_genus {
        let model = run.step("model", |_| match surface.ok().and_then(|s| s.model.as_ref()) {
            Some(m) => dim_degree_genus(&image_ideal(m, 3, 5)?),
            None => Err(Error::InvalidArgument("surface has no model before projection".into())),
        });
        run.cited("model_sectional_genus", g, &model, |m| m.2);
    }
    run.cited("h0_cubics", &ex.h0_cubics, &surface, |s: &Surface| s.h0_ideal(3));
    let sing = run.step("singular_points", |rng| match surface.ok() {
        Some(s) => singular_points(&s.ideal, 3, rng),
        None => Err(Error::InvalidArgument("no surface".into())),
    });
    run.cited("nodes", &ex.nodes, &sing, |p| p.0);
    if let Some((_, len)) = sing.ok() {
        let len = *len;
        if let Some(c) = run.note("nodes") {
            c.note = Some(format!("distinct singular points; Jacobian scheme length {len}"));
        }
    }

    let Some(s) = surface.ok() else {
        return finish(run, plan, opts, surface.failure().cloned());
    };
    let ring = s.ring.clone();
    let (e, d) = (ex.system.multiplicity, ex.system.degree);

    // The linear system |I^e(d)|, by two routes.
    let system = run.step("linear_system", |_| multiplicity_basis_oracle(&s.ideal, e, d));
    run.compare("system_dimension", json!(ex.system.dimension), &ex.system.cite, &system, |q| q.len());
    let second = run.step("linear_system_saturation", |rng| power_saturation_basis(&ring, s.ideal.polys(), e, d, rng));
    run.compare("system_dimension_saturation", json!(ex.system.dimension), &ex.system.cite, &second, |q| q.len());

    if let Some(h5) = &ex.h0_quintics {
        run.cited("h0_quintics", h5, &surface, |s: &Surface| s.h0_ideal(5));
    }
    if let Some(diff) = &ex.conormal_difference {
        run.cited("conormal_difference", diff, &system, |q| s.h0_ideal(5) - q.len() as i64);
    }

    let Some(q) = system.ok().cloned() else {
        return finish(run, plan, opts, system.failure().cloned());
    };
    let psi = match RationalMap::new(&ring, &[], q.clone()) {
        Ok(m) => m,
        Err(e) => return finish(run, plan, opts, Some(Failure { status: Status::Error, message: e.to_string() })),
    };

    // Fiber of the unrestricted map through a random point.
    let fiber = run.step("fiber", |rng| {
        let p = psi.random_source_point(rng)?;
        let fib = psi.fiber_at(&p, rng)?;
        let through_p = fib.polys().iter().all(|g| g.evaluate(&p).map(|v| v == 0).unwrap_or(false));
        let cert = certify_congruence_fiber(&fib, &s.ideal, e as i64, rng)?;
        Ok((cert, through_p))
    });
    run.cited("fiber", &ex.fiber, &fiber, |(c, _)| {
        let (a, b, g, k) = c.signature();
        [a, b, g, k]
    });
    if let Some((c, through)) = fiber.ok() {
        let note = format!(
            "valid certificate: {}; contains the point: {}; distinct secant points: {}",
            c.valid, through, c.distinct_secant_points
        );
        let ok = c.valid && *through;
        if let Some(chk) = run.note("fiber") {
            chk.note = Some(note);
            if !ok && chk.status == Status::Pass {
                chk.status = Status::Fail;
            }
        }
    }

    if let Some(md) = &ex.unrestricted_multidegree {
        let degs = run.step("unrestricted_multidegree", |rng| psi.projective_degrees(rng));
        run.cited("unrestricted_multidegree", md, &degs, |v| v.clone());
    }

    // Restriction to a random cubic fourfold through the surface.
    let restricted = run.step("restrict", |rng| {
        let x = random_cubic_through(s, rng)?;
        Ok((psi.restrict_to_hypersurface(&x)?, x))
    });
    let Some((map, x)) = restricted.ok() else {
        return finish(run, plan, opts, restricted.failure().cloned());
    };
    let multideg = run.step("multidegree", |rng| map.projective_degrees(rng));
    run.cited("multidegree", &ex.multidegree, &multideg, |v| v.clone());

    let image = run.step("image", |_| map.image(2));
    let ie = &ex.image;
    run.compare("image", json!([ie.ambient, ie.dim, ie.degree]), &ie.cite, &image, |i: &Image| {
        [i.target.nvars() as i64 - 1, i.dim, i.degree]
    });
    if let Some(nq) = ie.quadrics {
        run.compare("image_quadrics", json!(nq), &ie.cite, &image, |i: &Image| i.counts.get(1).copied().unwrap_or(0));
    }

    let birational = match (multideg.ok(), image.ok()) {
        (Some(md), Some(img)) => {
            let top = *md.last().unwrap_or(&0);
            run.step("birational", |rng| map.is_birational(top, img, rng))
        }
        _ => Step {
            value: Err(Failure { status: Status::Error, message: "multidegree or image unavailable".into() }),
            seconds: 0.0,
        },
    };
    run.compare("birational", json!(true), &ex.multidegree.cite, &birational, |c| c.birational);
    if let Some(c) = birational.ok() {
        let note = format!(
            "top degree {} vs image degree {}; fiber (dim, deg) = {:?}",
            c.top_degree, c.image_degree, c.fiber
        );
        if let Some(chk) = run.note("birational") {
            chk.note = Some(note);
        }
    }

    // Base locus threefold and the linkage it induces.
    if let Some(tf) = &ex.threefold {
        let top = run.step("threefold", |rng| {
            let b = top_component(&ring, &q, rng)?;
            let alt = base_threefold(s, rng)?;
            Ok((b, alt))
        });
        run.compare("threefold", json!([tf.dim, tf.degree, tf.sectional_genus, tf.cubics]), &tf.cite, &top, |(b, _)| {
            let (dim, deg, g) = dim_degree_genus(b).unwrap_or((-1, -1, -1));
            let quadrics = ideal_dimension_in_degree(b, 2);
            let cubics = if quadrics == 0 { ideal_dimension_in_degree(b, 3) } else { -1 };
            [dim, deg, g, cubics]
        });
        run.compare("threefold_cross_check", json!(true), &tf.cite, &top, |(b, alt)| {
            let same_top = dim_degree_genus(b).ok().map(|t| (t.0, t.1)) == dim_degree_genus(alt).ok().map(|t| (t.0, t.1));
            same_top && b.contains_all(alt.polys()).unwrap_or(false)
        });
        if let Some(chk) = run.note("threefold_cross_check") {
            chk.note = Some(
                "the base ideal saturated by a general cubic of I_S lies in the top component with the same dimension and degree"
                    .into(),
            );
        }

        let tsing = match top.ok() {
            Some((b, _)) => run.step("threefold_singular_points", |rng| singular_points(b, 2, rng)),
            None => Step { value: Err(upstream(&top, "depends on")), seconds: 0.0 },
        };
        run.compare("threefold_singular_points", json!(tf.singular_points), &tf.cite, &tsing, |p| p.0);
        if let Some((_, len)) = tsing.ok() {
            let len = *len;
            if let Some(chk) = run.note("threefold_singular_points") {
                chk.note = Some(format!("distinct points; Jacobian scheme length {len}"));
            }
        }

        if let (Some(lk), Some((b, alt))) = (&ex.linked, top.ok()) {
            let linked = run.step("linkage", |rng| {
                let mut gens = b.polys().to_vec();
                gens.push(x.clone());
                let t = ideal_quotient(&ring, &gens, s.ideal.polys(), QuotientMethod::Intersection)?;
                let t2 = ideal_quotient(&ring, &gens, s.ideal.polys(), QuotientMethod::ExtraVariable)?;
                let back = ideal_quotient(&ring, &gens, t.polys(), QuotientMethod::Intersection)?;
                let self_link = back.contains_all(s.ideal.polys())?;
                let t3 = link_residual(&ring, x, alt, &s.ideal, rng)?;
                let (_, deg, _) = dim_degree_genus(&t)?;
                let (pts, len) = singular_points(&t, 3, rng)?;
                Ok((deg, pts, len, t.same_ideal(&t2) && t.same_ideal(&t3), self_link))
            });
            run.compare("linked_surface", json!([lk.degree, lk.singular_points]), &lk.cite, &linked, |l| [l.0, l.1 as i64]);
            run.compare("linkage_cross_check", json!([true, true]), &lk.cite, &linked, |l| [l.3, l.4]);
            if let Some(l) = linked.ok() {
                let len = l.2;
                if let Some(chk) = run.note("linked_surface") {
                    chk.note = Some(format!("singular scheme: distinct points; Jacobian length {len}"));
                }
                if let Some(chk) = run.note("linkage_cross_check") {
                    chk.note = Some("both quotient methods and the residual by saturation agree; (X + I_B) : I_T contains I_S".into());
                }
            }
        }
    }

    // Inverse and its base locus.
    if opts.with_inverse {
        let inverse = match image.ok() {
            Some(img) => run.step("inverse", |rng| {
                let inv = map.inverse_map(&img.basis, MAX_DELTA, rng)?;
                Ok(InverseData { delta: inv.delta, certified_points: inv.certified_points, map: inv.map })
            }),
            None => Step { value: Err(Failure { status: Status::Error, message: "image unavailable".into() }), seconds: 0.0 },
        };
        run.cited("delta", &ex.delta, &inverse, |i| i.delta);
        if let Some(i) = inverse.ok() {
            let pts = i.certified_points;
            if let Some(chk) = run.note("delta") {
                chk.note = Some(format!("inverse checked at {pts} fresh points"));
            }
        }
        if let Some(imd) = &ex.inverse_multidegree {
            let degs = match inverse.ok() {
                Some(i) => run.step("inverse_multidegree", |rng| i.map.projective_degrees(rng)),
                None => Step { value: Err(upstream(&inverse, "depends on")), seconds: 0.0 },
            };
            run.cited("inverse_multidegree", imd, &degs, |v| v.clone());
        }
        let base = match inverse.ok() {
            Some(i) => run.step("base_locus", |rng| base_locus(&i.map, rng)),
            None => Step { value: Err(upstream(&inverse, "depends on")), seconds: 0.0 },
        };
        run.cited("base_degree", &ex.base_degree, &base, |b| b.degree);
        run.cited("base_genus", &ex.base_genus, &base, |b| b.genus);
        if let Some(b) = base.ok() {
            let dim = b.dim;
            if let Some(chk) = run.note("base_genus") {
                chk.note = Some(format!(
                    "sectional arithmetic genus from the Hilbert polynomial of the saturated base ideal (dim {dim})"
                ));
            }
        }
        run.cited("base_degree_red", &ex.base_degree_red, &base, |b| b.reduced_degree);
        if let Some(chk) = run.note("base_degree_red") {
            chk.note = Some("distinct points of two general hyperplane sections".into());
        }
        run.skip(
            "base_genus_red",
            ex.base_genus_red.value,
            &ex.base_genus_red.cite,
            "genus of the reduced base locus needs a radical computation, not implemented",
        );
    } else {
        let reason = needs("--with-inverse");
        run.skip("delta", ex.delta.value, &ex.delta.cite, &reason);
        if let Some(imd) = &ex.inverse_multidegree {
            run.skip("inverse_multidegree", &imd.value, &imd.cite, &reason);
        }
        run.skip("base_degree", ex.base_degree.value, &ex.base_degree.cite, &reason);
        run.skip("base_genus", ex.base_genus.value, &ex.base_genus.cite, &reason);
        run.skip("base_degree_red", ex.base_degree_red.value, &ex.base_degree_red.cite, &reason);
        run.skip("base_genus_red", ex.base_genus_red.value, &ex.base_genus_red.cite, &reason);
    }

    if opts.with_normal_bundle {
        let n = run.step("h0_normal", |_| hom_degree_zero(&s.ideal));
        run.cited("h0_normal", &ex.h0_normal, &n, |v| *v);
        let nx = run.step("h0_normal_rel", |_| hom_degree_zero_relative(&s.ideal, x));
        run.cited("h0_normal_rel", &ex.h0_normal_rel, &nx, |v| *v);
    } else {
        let reason = needs("--with-normal-bundle");
        run.skip("h0_normal", ex.h0_normal.value, &ex.h0_normal.cite, &reason);
        run.skip("h0_normal_rel", ex.h0_normal_rel.value, &ex.h0_normal_rel.cite, &reason);
    }

    if opts.with_line_counts {
        line_counts(&mut run, s, ex);
    } else {
        run.skip("lines", ex.lines.value, &ex.lines.cite, &needs("--with-line-counts"));
    }

    finish(run, plan, opts, None)
}

/// Lines through a general point of the image of `P^5` by the cubics
/// through the surface, by the tangent-space route and, when the target is
/// small enough to carry a ring, by the route through the image ideal.
fn line_counts(run: &mut Run<'_>, s: &Surface, ex: &RowExpect) {
    let lines = run.step("lines", |rng| {
        let phi = RationalMap::new(&s.ring, &[], s.cubics()?)?;
        let p = phi.random_source_point(rng)?;
        let a = phi.lines_through_image_point(&p, 3, rng)?;
        let b = match phi.target_ring() {
            Ok(t) => {
                let mut rel = phi.image_in_degree(&t, 2)?;
                rel.extend(phi.image_in_degree(&t, 3)?);
                Some(lines_through_point(&t, &rel, &phi.evaluate(&p)?, rng)?)
            }
            Err(Error::TooManyVariables(_)) => None,
            Err(e) => return Err(e),
        };
        Ok((a, b))
    });
    run.cited("lines", &ex.lines, &lines, |(a, _)| if a.dim == 0 { a.degree } else { -1 });
    if let Some((a, b)) = lines.ok() {
        let note = match b {
            Some(b) => format!(
                "distinct lines {}; image-ideal route: dim {}, degree {}, distinct {}",
                a.distinct, b.dim, b.degree, b.distinct
            ),
            None => format!("distinct lines {}; image-ideal route skipped, target too large", a.distinct),
        };
        let agree = b.as_ref().map(|b| b.dim == a.dim && b.degree == a.degree).unwrap_or(true);
        if let Some(chk) = run.note("lines") {
            chk.note = Some(note);
            if !agree && chk.status == Status::Pass {
                chk.status = Status::Fail;
            }
        }
    }
}

/// Adds the discriminant check, marks every expected value that was never
/// reached, and assembles the report.
fn finish(mut run: Run<'_>, plan: &RowPlan, opts: &Options, abort: Option<Failure>) -> RowReport {
    let ex = &plan.expected;
    if let Some(si) = &ex.self_intersection {
        let disc = plan.tag.discriminant() as i64;
        let deg = run.checks.iter().find(|c| c.name == "degree").and_then(|c| c.computed.as_i64());
        let value = match deg {
            Some(deg) => Ok(json!(d_invariant(deg, si.value))),
            None => Err(Failure { status: Status::Error, message: "degree unavailable".into() }),
        };
        run.push("discriminant", json!(disc), &si.cite, 0.0, value);
        if let Some(chk) = run.note("discriminant") {
            chk.note = Some(format!("3 S^2 - deg^2 with computed degree and S^2 = {} from the data file", si.value));
        }
        run.skip(
            "self_intersection",
            si.value,
            &si.cite,
            "S^2 needs the canonical class of the normalization; used only through the discriminant",
        );
    }
    if let Some(f) = abort {
        for (name, value, cite) in expected_entries(ex, opts) {
            if !run.checks.iter().any(|c| c.name == name) {
                let msg = format!("not reached: {}", f.message);
                run.checks.push(Check {
                    name,
                    expected: value,
                    computed: Value::Null,
                    status: f.status,
                    citation: cite,
                    seconds: 0.0,
                    note: Some(msg),
                });
            }
        }
    }
    RowReport { row: run.row.into(), prime: opts.prime, seed: opts.seed, retries: run.retries, checks: run.checks }
}

/// Every check a row can produce with its expected value, so that nothing
/// in the data file goes unreported.
pub fn expected_entries(ex: &RowExpect, _opts: &Options) -> Vec<(String, Value, String)> {
    let mut out = Vec::new();
    let mut c = |n: &str, v: Value, cite: &str| out.push((n.to_string(), v, cite.to_string()));
    c("degree", json!(ex.degree.value), &ex.degree.cite);
    if let Some(g) = &ex.sectional_genus {
        c("sectional_genus", json!(g.value), &g.cite);
    }
    if let Some(g) = &ex.model_sectional_genus {
        c("model_sectional_genus", json!(g.value), &g.cite);
    }
    c("h0_cubics", json!(ex.h0_cubics.value), &ex.h0_cubics.cite);
    c("nodes", json!(ex.nodes.value), &ex.nodes.cite);
    c("system_dimension", json!(ex.system.dimension), &ex.system.cite);
    c("system_dimension_saturation", json!(ex.system.dimension), &ex.system.cite);
    if let Some(v) = &ex.h0_quintics {
        c("h0_quintics", json!(v.value), &v.cite);
    }
    if let Some(v) = &ex.conormal_difference {
        c("conormal_difference", json!(v.value), &v.cite);
    }
    c("fiber", json!(ex.fiber.value), &ex.fiber.cite);
    if let Some(v) = &ex.unrestricted_multidegree {
        c("unrestricted_multidegree", json!(v.value), &v.cite);
    }
    c("multidegree", json!(ex.multidegree.value), &ex.multidegree.cite);
    let ie = &ex.image;
    c("image", json!([ie.ambient, ie.dim, ie.degree]), &ie.cite);
    if let Some(nq) = ie.quadrics {
        c("image_quadrics", json!(nq), &ie.cite);
    }
    c("birational", json!(true), &ex.multidegree.cite);
    if let Some(tf) = &ex.threefold {
        c("threefold", json!([tf.dim, tf.degree, tf.sectional_genus, tf.cubics]), &tf.cite);
        c("threefold_cross_check", json!(true), &tf.cite);
        c("threefold_singular_points", json!(tf.singular_points), &tf.cite);
    }
    if let Some(lk) = &ex.linked {
        c("linked_surface", json!([lk.degree, lk.singular_points]), &lk.cite);
        c("linkage_cross_check", json!([true, true]), &lk.cite);
    }
    c("delta", json!(ex.delta.value), &ex.delta.cite);
    if let Some(v) = &ex.inverse_multidegree {
        c("inverse_multidegree", json!(v.value), &v.cite);
    }
    c("base_degree", json!(ex.base_degree.value), &ex.base_degree.cite);
    c("base_genus", json!(ex.base_genus.value), &ex.base_genus.cite);
    c("base_degree_red", json!(ex.base_degree_red.value), &ex.base_degree_red.cite);
    c("base_genus_red", json!(ex.base_genus_red.value), &ex.base_genus_red.cite);
    c("h0_normal", json!(ex.h0_normal.value), &ex.h0_normal.cite);
    c("h0_normal_rel", json!(ex.h0_normal_rel.value), &ex.h0_normal_rel.cite);
    c("lines", json!(ex.lines.value), &ex.lines.cite);
    if let Some(v) = &ex.self_intersection {
        c("self_intersection", json!(v.value), &v.cite);
    }
    out
}

/// Runs the rows on up to `jobs` worker threads; the result is in plan
/// order.
pub fn run_rows(plans: &[RowPlan], opts: &Options, jobs: usize) -> Vec<RowReport> {
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Option<RowReport>>> = plans.iter().map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, plans.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= plans.len() {
                    break;
                }
                let report = run_row(&plans[i], opts);
                *slots[i].lock().unwrap() = Some(report);
            });
        }
    });
    slots.into_iter().map(|s| s.into_inner().unwrap().expect("row finished")).collect()
}

/// Builds the surface of a row, for export.
pub fn build_for_dump(tag: SurfaceTag, opts: &Options) -> fourfold_core::Result<(std::sync::Arc<fourfold_core::Ring>, Vec<Poly>)> {
    let field = Fp::new(opts.prime)?;
    let mut attempt = 0;
    loop {
        let mut rng = seeded(step_seed(opts.seed, tag.as_str(), "build_surface", attempt));
        match build_surface(tag, field, &mut rng) {
            Ok(s) => return Ok((s.ring.clone(), s.ideal.polys().to_vec())),
            Err(Error::Genericity { .. } | Error::Certification(_)) if attempt < opts.retries => attempt += 1,
            Err(e) => return Err(e),
        }
    }
}
