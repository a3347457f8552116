//! Exact nilpotency calculus for elementary operators `X ↦ Σ AᵢXBᵢ` on n×n
//! matrices over the Gaussian rationals.
//!
//! * [`linalg`]: scalars, dense matrices, Kronecker products, characteristic
//!   polynomials and nilpotency decisions.
//! * [`elemop`]: elementary operators, their superoperator representation and
//!   executable checkers for the structural nilpotency criteria.
//! * [`lab`]: instance generators, sweeps, converse-failure searches and the
//!   worked examples.

pub mod elemop;
pub mod error;
pub mod lab;
pub mod linalg;

pub use error::{Error, Result};
pub use linalg::{GaussianRational, Matrix, NilpotencyReport};
