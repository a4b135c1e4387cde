//! Finite-frame numerics.
//!
//! * [`linalg`]: dense symmetric eigensolver and functions of symmetric operators.
//! * [`frame`]: frames, analysis/synthesis, the α-family `S^α φᵢ`, duals and
//!   generalized reconstruction.
//! * [`dual_approx`]: Neumann, binomial and logarithmic series approximations
//!   of the dual and Parseval frames, with error bounds and a convergence harness.
//! * [`gabor`]: a tight Weyl-Heisenberg frame checked on sampled signals.
//! * [`worked_examples`]: a self-checking catalogue of reference results.

pub mod dual_approx;
pub mod error;
pub mod frame;
pub mod gabor;
pub mod io;
pub mod linalg;
pub mod sampling;
pub mod worked_examples;

pub use error::{Error, Result};
pub use frame::FrameSpec;
pub use linalg::{RealVector, SymmetricOperator};
