//! Computational algebra over prime fields for studying smooth rational
//! surfaces in `P^5` and the cubic fourfolds that contain them.
//!
//! The crate provides polynomial arithmetic, a Gröbner basis engine with a
//! matrix-based reduction core, Hilbert functions, graded module
//! computations, linear systems with prescribed multiplicities, rational
//! maps, and constructions of the surfaces themselves.

pub mod error;
pub mod exec;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod homalg;
pub mod linalg;
pub mod linsys;
pub mod monomial;
pub mod poly;
pub mod random;
pub mod ratmap;
pub mod ring;
pub mod surfaces;
pub mod text;
pub mod univariate;
pub mod zerodim;

pub use error::{Error, Result};
pub use field::{fp_inv, Fp};
pub use monomial::{monomials_of_degree, Monomial, MonomialOrder};
pub use poly::{evaluate_at_point, poly_mul, Poly};
pub use ring::Ring;
