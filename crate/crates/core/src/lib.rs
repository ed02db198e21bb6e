//! Exact symbolic toolkit for quasihomogeneous complete-intersection
//! singularities.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! - [`exactmath`]: big rationals, real quadratic fields, sparse multivariate
//!   polynomials, univariate gcd, Hilbert series coefficients and weighted
//!   lattice-point counting.
//! - [`hilbert`]: normal degree, graded dimensions, L²- and logarithmic
//!   plurigenera, rationality / quotient decisions, Veronese quotients.
//! - [`brieskorn`]: Pham-Brieskorn triples, Fermat hypersurfaces and the
//!   cone surfaces `F_d(x, y) = z^m`.
//! - [`curves`]: the Schwartz identities for Platonic triples and checking of
//!   polynomial solutions of `x^p + y^q + z^r = 0`.
//! - [`quotients`]: cyclic quotient surface singularities.
//! - [`lnd`]: locally nilpotent derivations, their exponential flows and
//!   orbit checks.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod brieskorn;
pub mod curves;
pub mod error;
pub mod exactmath;
pub mod hilbert;
pub mod lnd;
pub mod quotients;

pub use error::Error;
