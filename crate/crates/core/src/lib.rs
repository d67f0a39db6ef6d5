//! Prime-characteristic commutative algebra over quotients of polynomial
//! rings `R = F_p[x_1..x_n]/I0`: Frobenius closures of ideals, Frobenius test
//! exponents, filter regular systems of parameters, Frobenius actions on
//! finite-length cyclic modules and their Hartshorne-Speiser-Lyubeznik
//! numbers, together with a brute-force oracle over finite quotients.
//!
//! Everything is computed globally in `S = F_p[x_1..x_n]` through preimages of
//! ideals, with `m = (x_1..x_n)` playing the role of the maximal ideal.

pub mod cli;
pub mod error;
pub mod ffpoly;
pub mod filter_regular;
pub mod frobenius;
pub mod frobmod;
pub mod groebner;
pub mod h0_relative;
pub mod ideal_ops;
pub mod oracle;

pub use error::{Error, Result};
pub use ffpoly::{FieldPrime, Monomial, MonomialOrder, Poly, PolyRing};
pub use groebner::{Ideal, Ring, RingSpec};
