use super::{bounded_operator, series_apply};
use crate::error::Result;
use crate::frame::FrameSpec;
use crate::linalg::SymmetricOperator;

/// `R = I - 2/(A+B)·S`, with `‖R‖ ≤ (B-A)/(B+A)` for valid bounds.
pub fn neumann_r(frame: &FrameSpec, a: f64, b: f64) -> Result<SymmetricOperator> {
    let (s, _) = bounded_operator(frame, a, b)?;
    Ok(s.affine(1.0, -2.0 / (a + b)))
}

/// `φ̃ⱼᴺ = 2/(A+B) Σ_{k=0..N} Rᵏ φⱼ`
pub fn neumann_dual(frame: &FrameSpec, a: f64, b: f64, n: usize) -> Result<FrameSpec> {
    let r = neumann_r(frame, a, b)?;
    Ok(series_apply(frame, &r, 2.0 / (a + b), n, |_| 1.0))
}

/// `((B-A)/(B+A))^(N+1)`
pub fn neumann_bound(a: f64, b: f64, n: usize) -> f64 {
    ((b - a) / (b + a)).powi(n as i32 + 1)
}
