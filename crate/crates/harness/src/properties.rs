//! Randomized invariant suites over the algebra kernels.
//!
//! Each suite draws its inputs with proptest and returns the first
//! counterexample, if any. The test targets call them one by one; the
//! acceptance run calls [`run_all`] and reports the total time.

use fourfold_core::groebner::{groebner_basis, ideal_quotient, saturate, QuotientMethod};
use fourfold_core::hilbert::{hilbert_function, hilbert_function_by_linear_algebra};
use fourfold_core::linsys::{multiplicity_basis_oracle, power_saturation_basis};
use fourfold_core::random::{random_element, random_vector, seeded};
use fourfold_core::surfaces::{build_surface, SurfaceTag};
use fourfold_core::zerodim::ideal_of_points;
use fourfold_core::{Fp, Poly, Ring};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestError, TestRunner};
use std::sync::Arc;
use std::time::{Duration, Instant};

const PRIMES: [u32; 3] = [101, 32003, 10_000_019];

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn report<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn core(e: fourfold_core::Error) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

/// Ring axioms and inverses in `F_p`.
pub fn field_axioms(cases: u32) -> Result<(), String> {
    let strat = (0..PRIMES.len(), any::<u32>(), any::<u32>(), any::<u32>());
    report(runner(cases).run(&strat, |(k, a, b, c)| {
        let f = Fp::new(PRIMES[k]).map_err(core)?;
        let (a, b, c) = (a % f.p(), b % f.p(), c % f.p());
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).map_err(core)?), 1);
        }
        prop_assert_eq!(f.mul(a, b) as u64, (a as u64 * b as u64) % f.p() as u64);
        Ok(())
    }))
}

/// Commutativity, associativity and distributivity of polynomial
/// arithmetic, and evaluation as a ring homomorphism.
pub fn polynomial_axioms(cases: u32) -> Result<(), String> {
    let strat = (0..PRIMES.len(), any::<u64>(), 0u32..4, 0u32..4, 0u32..4);
    report(runner(cases).run(&strat, |(k, seed, da, db, dc)| {
        let ring = Ring::new(Fp::new(PRIMES[k]).map_err(core)?, 3).map_err(core)?;
        let f = *ring.field();
        let mut rng = seeded(seed);
        let a = random_element(&ring, da, &mut rng);
        let b = random_element(&ring, db, &mut rng);
        let c = random_element(&ring, dc, &mut rng);
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        let pt = random_vector(f.p(), 3, &mut rng);
        let ev = |p: &Poly| p.evaluate(&pt).map_err(core);
        prop_assert_eq!(ev(&a.mul(&b))?, f.mul(ev(&a)?, ev(&b)?));
        prop_assert_eq!(ev(&a.add(&b))?, f.add(ev(&a)?, ev(&b)?));
        Ok(())
    }))
}

/// A few random homogeneous forms in four variables.
fn random_ideal(ring: &Arc<Ring>, seed: u64, degrees: &[u32]) -> Vec<Poly> {
    let mut rng = seeded(seed);
    degrees.iter().map(|&d| random_element(ring, d, &mut rng)).collect()
}

/// Ideals that are neither complete intersections nor empty: random forms
/// multiplied by a common factor, plus a random form.
fn structured_ideal(ring: &Arc<Ring>, seed: u64) -> Vec<Poly> {
    let mut rng = seeded(seed ^ 0x5eed);
    let l = random_element(ring, 1, &mut rng);
    let mut gens: Vec<Poly> = random_ideal(ring, seed, &[1, 2]).iter().map(|g| g.mul(&l)).collect();
    gens.push(random_element(ring, 3, &mut rng));
    gens
}

fn p3() -> Arc<Ring> {
    Ring::new(Fp::new(32003).unwrap(), 4).unwrap()
}

/// The Gröbner basis of a Gröbner basis is itself, and it reduces every
/// generator to zero.
pub fn groebner_idempotence(cases: u32) -> Result<(), String> {
    let ring = p3();
    report(runner(cases).run(&(any::<u64>(), 0usize..3), |(seed, shape)| {
        let gens = match shape {
            0 => random_ideal(&ring, seed, &[2, 2, 3]),
            1 => random_ideal(&ring, seed, &[2, 3]),
            _ => structured_ideal(&ring, seed),
        };
        let gb = groebner_basis(&ring, &gens).map_err(core)?;
        let again = groebner_basis(&ring, gb.polys()).map_err(core)?;
        prop_assert!(gb.same_ideal(&again));
        prop_assert!(gb.contains_all(&gens).map_err(core)?);
        Ok(())
    }))
}

/// Saturating twice changes nothing, and the saturation contains the ideal.
pub fn saturation_stability(cases: u32) -> Result<(), String> {
    let ring = p3();
    report(runner(cases).run(&any::<u64>(), |seed| {
        let gens = structured_ideal(&ring, seed);
        let mut rng = seeded(seed.rotate_left(7));
        let g = random_element(&ring, 1, &mut rng);
        let sat = saturate(&ring, &gens, &g).map_err(core)?;
        let twice = saturate(&ring, sat.polys(), &g).map_err(core)?;
        prop_assert!(sat.same_ideal(&twice));
        prop_assert!(sat.contains_all(&gens).map_err(core)?);
        Ok(())
    }))
}

/// `I ⊆ I : J`, `(I : J) J ⊆ I`, and the two quotient methods agree.
pub fn quotient_containment(cases: u32) -> Result<(), String> {
    let ring = p3();
    report(runner(cases).run(&any::<u64>(), |seed| {
        let gens = structured_ideal(&ring, seed);
        let j = random_ideal(&ring, seed.rotate_left(13), &[1, 1]);
        let q1 = ideal_quotient(&ring, &gens, &j, QuotientMethod::Intersection).map_err(core)?;
        let q2 = ideal_quotient(&ring, &gens, &j, QuotientMethod::ExtraVariable).map_err(core)?;
        prop_assert!(q1.same_ideal(&q2));
        prop_assert!(q1.contains_all(&gens).map_err(core)?);
        let i = groebner_basis(&ring, &gens).map_err(core)?;
        for a in q1.polys() {
            for b in &j {
                prop_assert!(i.contains(&a.mul(b)).map_err(core)?);
            }
        }
        Ok(())
    }))
}

/// Forms singular along a set of points: derivative conditions against
/// saturation of the symbolic square.
pub fn linear_system_routes(cases: u32) -> Result<(), String> {
    let ring = p3();
    let f = *ring.field();
    report(runner(cases).run(&(any::<u64>(), 2usize..7, 3u32..5), |(seed, k, d)| {
        let mut rng = seeded(seed);
        let pts: Vec<Vec<u32>> = (0..k).map(|_| random_vector(f.p(), 4, &mut rng)).collect();
        let gb = ideal_of_points(&ring, &pts).map_err(core)?;
        let a = multiplicity_basis_oracle(&gb, 2, d).map_err(core)?;
        let b = power_saturation_basis(&ring, gb.polys(), 2, d, &mut rng).map_err(core)?;
        prop_assert_eq!(a.len(), b.len());
        // Each double point imposes four conditions while they stay independent.
        let total = ((d + 3) * (d + 2) * (d + 1) / 6) as usize;
        if 4 * k <= total && d >= 4 {
            prop_assert_eq!(a.len(), total - 4 * k);
        }
        Ok(())
    }))
}

/// The Hilbert function read from the Gröbner basis agrees with plain
/// linear algebra on the generators.
pub fn hilbert_function_routes(cases: u32) -> Result<(), String> {
    let ring = p3();
    report(runner(cases).run(&(any::<u64>(), 0usize..3, 0u32..7), |(seed, shape, d)| {
        let gens = match shape {
            0 => random_ideal(&ring, seed, &[2, 2]),
            1 => random_ideal(&ring, seed, &[1, 3, 3]),
            _ => structured_ideal(&ring, seed),
        };
        let gb = groebner_basis(&ring, &gens).map_err(core)?;
        let by_la = hilbert_function_by_linear_algebra(&ring, &gens, d).map_err(core)?;
        prop_assert_eq!(hilbert_function(&gb, d), by_la);
        Ok(())
    }))
}

/// The same seed gives the same surface, the same map and the same
/// projective degrees.
pub fn seed_replay(cases: u32) -> Result<(), String> {
    let f = Fp::new(32003).unwrap();
    let strat = (any::<u64>(), prop_oneof![Just(SurfaceTag::Dp5), Just(SurfaceTag::Scroll4)]);
    report(runner(cases).run(&strat, |(seed, tag)| {
        let once = || -> fourfold_core::Result<(Vec<Poly>, Vec<u64>)> {
            let mut rng = seeded(seed);
            let s = build_surface(tag, f, &mut rng)?;
            let q = multiplicity_basis_oracle(&s.ideal, 1, 2)?;
            let map = fourfold_core::ratmap::RationalMap::new(&s.ring, &[], q)?;
            Ok((s.ideal.polys().to_vec(), map.projective_degrees(&mut rng)?))
        };
        let (a, b) = (once().map_err(core)?, once().map_err(core)?);
        prop_assert_eq!(a.0, b.0);
        prop_assert_eq!(a.1, b.1);
        Ok(())
    }))
}

pub type Suite = fn(u32) -> Result<(), String>;

/// Every suite with the number of cases used in CI.
pub const SUITES: [(&str, Suite, u32); 8] = [
    ("field axioms", field_axioms, 512),
    ("polynomial axioms", polynomial_axioms, 128),
    ("groebner idempotence", groebner_idempotence, 48),
    ("saturation stability", saturation_stability, 32),
    ("quotient containment", quotient_containment, 32),
    ("linear system routes", linear_system_routes, 24),
    ("hilbert function routes", hilbert_function_routes, 64),
    ("seed replay", seed_replay, 8),
];

/// Runs every suite; returns per-suite outcomes and the total time.
pub fn run_all() -> (Vec<(&'static str, Result<(), String>)>, Duration) {
    let start = Instant::now();
    let out = SUITES.iter().map(|(name, suite, cases)| (*name, suite(*cases))).collect();
    (out, start.elapsed())
}
