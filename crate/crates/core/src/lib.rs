//! Heights of algebraic numbers and of elements over the rational function
//! field, through the lens of Mahler measures.
//!
//! The crate provides:
//!
//! - exact polynomial algebra over Z and Q(T) ([`exact`]): contents,
//!   gcds, resultants, factorization into irreducibles, minimal polynomials
//!   of powers;
//! - certified complex root finding ([`roots`]) with error radii backed by
//!   Weierstrass-style a posteriori bounds;
//! - Mahler measures in one to three variables ([`mahler`]), by Jensen's
//!   formula on certified roots and by adaptive torus quadrature;
//! - exact torsion detection ([`cyclotomic`]): cyclotomic-product tests via
//!   coefficient-doubling iterations, orders of roots of unity, and the
//!   two-variable torsion-coset test;
//! - the family of absolute values on Q(T) indexed by closed points of the
//!   affine line, rational primes, and points of the unit circle
//!   ([`adelic`]), with the product-formula check, projective heights, the
//!   height of algebraic elements over Q(T), pair normalization data, and
//!   the associated comparison inequality;
//! - a scanning harness ([`harness`]) for small-measure searches and
//!   degree-normalized lower-bound sweeps, with reproducible reports.
//!
//! The `qth` binary exposes all of it on the command line.

pub mod adelic;
pub mod cyclotomic;
pub mod error;
pub mod exact;
pub mod harness;
pub mod mahler;
pub mod parse;
pub mod quad;
pub mod roots;

pub use error::{Error, Result};
