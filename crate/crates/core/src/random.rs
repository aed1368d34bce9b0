//! Seeded random choices: coefficients, forms, combinations and points.

use crate::monomial::{monomials_of_degree, monomials_of_weighted_degree};
use crate::poly::Poly;
use crate::ring::Ring;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// The generator used everywhere a reproducible random choice is needed.
pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn nonzero<R: Rng>(p: u32, rng: &mut R) -> u32 {
    rng.gen_range(1..p)
}

/// Random form of degree `d` (with respect to the ring grading).
pub fn random_element<R: Rng>(ring: &Arc<Ring>, d: u32, rng: &mut R) -> Poly {
    let p = ring.field().p();
    let mons = match ring.grading() {
        None => monomials_of_degree(d, ring.nvars()),
        Some(w) => monomials_of_weighted_degree(d, w),
    };
    let terms = mons.into_iter().map(|m| (m, rng.gen_range(0..p))).collect();
    Poly::from_terms(ring, terms)
}

/// Random linear combination of the given polynomials with nonzero
/// coefficients.
pub fn random_combination<R: Rng>(ring: &Arc<Ring>, polys: &[Poly], rng: &mut R) -> Poly {
    let p = ring.field().p();
    polys
        .iter()
        .fold(Poly::zero(ring), |acc, g| acc.add_scaled(g, nonzero(p, rng)))
}

/// `k` random combinations of the given polynomials.
pub fn random_combinations<R: Rng>(ring: &Arc<Ring>, polys: &[Poly], k: usize, rng: &mut R) -> Vec<Poly> {
    (0..k).map(|_| random_combination(ring, polys, rng)).collect()
}

/// Random vector in `F_p^n`.
pub fn random_vector<R: Rng>(p: u32, n: usize, rng: &mut R) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..p)).collect()
}
