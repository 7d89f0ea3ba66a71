//! Exact arithmetic: rationals, integer polynomials, factorization, the
//! rational function field Q(T), and small multivariate polynomials.

pub mod bipoly;
pub mod factor;
pub mod intpoly;
pub mod modp;
pub mod ratfunc;
pub mod rational;

pub use bipoly::{BiPoly, MultiPoly};
pub use factor::{factor, is_irreducible, power_minpoly, Factorization};
pub use intpoly::{IntPoly, RatPoly};
pub use modp::gcd_q;
pub use ratfunc::RatFunc;
pub use rational::ExactRational;
