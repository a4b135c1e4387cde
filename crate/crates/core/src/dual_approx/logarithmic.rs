//! Dual approximation through the exponential series of a logarithm of `S`.
//!
//! The spectrum `[A, B]` of `S` is mapped by a logarithm onto `[s, 1]` with
//! `0 < s ≤ 1`, then affinely onto `[-(1-s)/(1+s), (1-s)/(1+s)]`; this is
//! `R_log`. In every regime
//!
//! ```text
//! S⁻¹ = exp(c·R_log) / √(AB)
//! ```
//!
//! and truncating the exponential series gives the approximate dual. The
//! zeroth-order term is `φⱼ/√(AB)`, the geometric mean of the bounds taking
//! the place of the arithmetic mean used by the Neumann scheme.

use super::{bounded_operator, series_apply};
use crate::error::Result;
use crate::frame::FrameSpec;
use crate::linalg::{Matrix, SymmetricOperator};

/// Which logarithm normalizes the spectrum, with its derived constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LogRegime {
    /// `1 < A ≤ B`: base `B`, `alpha = log_B A`.
    BoundsAboveOne { alpha: f64 },
    /// `A ≤ B < 1`: base `A`, `beta = log_A B`.
    BoundsBelowOne { beta: f64 },
    /// `A ≤ 1 ≤ B`: the operator is rescaled by `2/A`, base `b = 2B/A`, `delta = log_b 2`.
    Straddling { b: f64, delta: f64 },
}

/// Regime selection. `A = 1` or `B = 1` is handled as straddling.
pub fn log_regime(a: f64, b: f64) -> LogRegime {
    if a > 1.0 {
        LogRegime::BoundsAboveOne { alpha: a.ln() / b.ln() }
    } else if b < 1.0 {
        LogRegime::BoundsBelowOne { beta: b.ln() / a.ln() }
    } else {
        let base = 2.0 * b / a;
        LogRegime::Straddling { b: base, delta: 2f64.ln() / base.ln() }
    }
}

impl LogRegime {
    /// Lower end `s` of the normalized log-spectrum `[s, 1]`.
    pub fn shape(&self) -> f64 {
        match *self {
            LogRegime::BoundsAboveOne { alpha } => alpha,
            LogRegime::BoundsBelowOne { beta } => beta,
            LogRegime::Straddling { delta, .. } => delta,
        }
    }

    /// `|ln base|`.
    pub fn log_span(&self, a: f64, b: f64) -> f64 {
        match *self {
            LogRegime::BoundsAboveOne { .. } => b.ln(),
            LogRegime::BoundsBelowOne { .. } => a.ln().abs(),
            LogRegime::Straddling { b: base, .. } => base.ln(),
        }
    }

    /// The factor `c` in `exp(c·R_log)`.
    pub fn exponent_scale(&self, a: f64, b: f64) -> f64 {
        let s = self.shape();
        match *self {
            LogRegime::BoundsAboveOne { .. } => b.ln() * (1.0 + s) / 2.0,
            LogRegime::BoundsBelowOne { .. } => a.ln() * (1.0 + s) / 2.0,
            LogRegime::Straddling { b: base, .. } => base.ln() * (1.0 + s) / 2.0,
        }
    }

    /// `‖R_log‖ ≤ (1-s)/(1+s)`.
    pub fn r_norm_bound(&self) -> f64 {
        let s = self.shape();
        (1.0 - s) / (1.0 + s)
    }

    /// Eigenvalue of `R_log` corresponding to eigenvalue `lambda` of `S`.
    fn r_eigenvalue(&self, a: f64, b: f64, lambda: f64) -> f64 {
        let k = 2.0 / (1.0 + self.shape());
        let normalized_log = match *self {
            LogRegime::BoundsAboveOne { .. } => lambda.ln() / b.ln(),
            LogRegime::BoundsBelowOne { .. } => lambda.ln() / a.ln(),
            LogRegime::Straddling { b: base, .. } => (2.0 * lambda / a).ln() / base.ln(),
        };
        1.0 - k * normalized_log
    }
}

/// `R_log`, evaluated on the spectrum of `S`.
pub fn log_r(frame: &FrameSpec, a: f64, b: f64) -> Result<SymmetricOperator> {
    let (_, eig) = bounded_operator(frame, a, b)?;
    let regime = log_regime(a, b);
    eig.apply_function(|lambda| regime.r_eigenvalue(a, b, lambda))
}

/// `exp(c·R_log)/√(AB)`, which equals `S⁻¹`.
pub fn log_exact_inverse(frame: &FrameSpec, a: f64, b: f64) -> Result<SymmetricOperator> {
    let r = log_r(frame, a, b)?;
    let c = log_regime(a, b).exponent_scale(a, b);
    let scale = 1.0 / (a * b).sqrt();
    crate::linalg::spectral_apply(&r, |x| scale * (c * x).exp())
}

/// `φ̃ⱼᴺ = 1/√(AB) Σ_{k=0..N} (c·R_log)ᵏ φⱼ / k!`
pub fn log_dual(frame: &FrameSpec, a: f64, b: f64, n: usize) -> Result<FrameSpec> {
    let r = log_r(frame, a, b)?;
    let c = log_regime(a, b).exponent_scale(a, b);
    Ok(series_apply(frame, &r, 1.0 / (a * b).sqrt(), n, |k| c / k as f64))
}

/// `xᴺ⁺¹/(N+1)!` accumulated as a product to stay finite for large `N`.
fn power_over_factorial(x: f64, n: usize) -> f64 {
    (1..=n + 1).fold(1.0, |acc, k| acc * x / k as f64)
}

/// `‖Z_N‖ ≤ √(B/A)·((1-s)/2·L)ᴺ⁺¹/(N+1)!`
pub fn log_remainder_bound(a: f64, b: f64, n: usize) -> f64 {
    let regime = log_regime(a, b);
    let x = (1.0 - regime.shape()) / 2.0 * regime.log_span(a, b);
    (b / a).sqrt() * power_over_factorial(x, n)
}

/// `‖f - f⁽ᴺ⁾‖/‖f‖ ≤ (B/A)·((1-s)/2·L)ᴺ⁺¹/(N+1)!`
pub fn log_bound(a: f64, b: f64, n: usize) -> f64 {
    (b / a).sqrt() * log_remainder_bound(a, b, n)
}

/// `Z_N = exp(c·R_log) - Σ_{k=0..N} (c·R_log)ᵏ/k!`, the exponential from the
/// spectral calculus and the partial sum from explicit matrix powers.
pub fn log_remainder_operator(frame: &FrameSpec, a: f64, b: f64, n: usize) -> Result<SymmetricOperator> {
    let r = log_r(frame, a, b)?;
    let c = log_regime(a, b).exponent_scale(a, b);
    let exact = crate::linalg::spectral_apply(&r, |x| (c * x).exp())?;
    let cr = r.matrix().scale(c);
    let dim = frame.dim();
    let mut term = Matrix::identity(dim);
    let mut partial = Matrix::identity(dim);
    for k in 1..=n {
        term = term.matmul(&cr).scale(1.0 / k as f64);
        partial = partial.add(&term);
    }
    SymmetricOperator::new(exact.matrix().sub(&partial))
}
