//! Exact arithmetic foundation.

pub mod gcd;
pub mod lattice;
pub mod poly;
pub mod scalar;
pub mod series;

pub use gcd::{coprime, poly_gcd};
pub use poly::{vars, Monomial, Poly, Vars};
pub use scalar::{Field, Scalar};
pub use series::{series_coeffs, SeriesSpec};
