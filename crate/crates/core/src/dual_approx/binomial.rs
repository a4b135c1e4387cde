use super::{bounded_operator, series_apply};
use crate::error::{Error, Result};
use crate::frame::FrameSpec;
use crate::linalg::{Matrix, SymmetricOperator};

/// `C(-½, k)` for `k = 0..=n`, by `C(-½, k) = C(-½, k-1)·(-½ - k + 1)/k`.
pub fn binomial_coefficients(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = 1.0;
    out.push(c);
    for k in 1..=n {
        c *= (-0.5 - k as f64 + 1.0) / k as f64;
        out.push(c);
    }
    out
}

/// Order-`n` approximation of the Parseval frame `S^(-1/2) φᵢ`:
/// `√(2/(A+B)) Σ_{k=0..N} C(-½, k)(-R)ᵏ φᵢ`. Refuses `B ≥ 3A`.
pub fn binomial_tight(frame: &FrameSpec, a: f64, b: f64, n: usize) -> Result<FrameSpec> {
    let (s, _) = bounded_operator(frame, a, b)?;
    if b >= 3.0 * a {
        return Err(Error::BinomialDivergent { a, b });
    }
    // -R = 2/(A+B)·S - I
    let minus_r = s.affine(-1.0, 2.0 / (a + b));
    Ok(series_apply(frame, &minus_r, (2.0 / (a + b)).sqrt(), n, |k| (-0.5 - k as f64 + 1.0) / k as f64))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BinomialBounds {
    /// Bound on `‖T_N‖`, the remainder of the truncated binomial series.
    pub tn_bound: f64,
    /// Bound on `‖f - f⁽ᴺ⁾‖/‖f‖` when both sides of the expansion are truncated.
    pub reconstruction_bound: f64,
    /// `B < 3A`; otherwise the bounds do not decay.
    pub convergent: bool,
}

pub fn binomial_bounds(a: f64, b: f64, n: usize) -> BinomialBounds {
    let ratio = (b - a) / (2.0 * a);
    let x = ratio.powi(n as i32 + 1);
    let root = (b / a).sqrt();
    BinomialBounds {
        tn_bound: x * ((a + b) / (2.0 * a)).sqrt(),
        reconstruction_bound: root * x * (2.0 + root * x),
        convergent: b < 3.0 * a,
    }
}

/// `T_N = (I - R)^(-1/2) - Σ_{k=0..N} C(-½, k)(-R)ᵏ`, the exact part from the
/// spectral calculus and the partial sum from explicit matrix powers.
pub fn binomial_remainder_operator(frame: &FrameSpec, a: f64, b: f64, n: usize) -> Result<SymmetricOperator> {
    let (s, eig) = bounded_operator(frame, a, b)?;
    let c = 2.0 / (a + b);
    // eigenvalues of I - R are c·λ
    let exact = eig.apply_function(|lambda| (c * lambda).powf(-0.5))?;
    let minus_r = s.affine(-1.0, c).matrix().clone();
    let dim = frame.dim();
    let mut power = Matrix::identity(dim);
    let mut partial = Matrix::zeros(dim, dim);
    for (k, coeff) in binomial_coefficients(n).into_iter().enumerate() {
        if k > 0 {
            power = power.matmul(&minus_r);
        }
        partial = partial.add(&power.scale(coeff));
    }
    SymmetricOperator::new(exact.matrix().sub(&partial))
}
