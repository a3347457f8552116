//! Exact dense linear algebra over the Gaussian rationals.

mod matrix;
mod nilpotency;
mod poly;
mod scalar;

pub use matrix::{rank_one, Matrix};
pub use nilpotency::{is_nilpotent, NilpotencyReport, Witness};
pub use poly::{char_poly, Polynomial};
pub use scalar::GaussianRational;
