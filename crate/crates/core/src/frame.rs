//! Frames, their analysis/synthesis operators, and the α-family of frames
//! generated by fractional powers of the frame operator.
//!
//! For a frame `{φᵢ}` with frame operator `S = Σ φᵢ φᵢᵀ`, the α-frame is
//! `φᵢ^(α) = S^α φᵢ`. Its dual is the `(-1-α)`-frame, so every α yields a
//! reconstruction formula `f = Σ ⟨φᵢ^(α), f⟩ φᵢ^(-1-α)`. At α = -½ the family
//! is self-dual and Parseval.

use crate::error::{Error, Result};
use crate::linalg::{self, dot, eigh, EigenDecomposition, Matrix, RealVector, SymmetricOperator};
use crate::sampling;

/// Relative threshold on `λ_min / max(1, λ_max)` below which a family is not a frame.
pub const FRAME_TOLERANCE: f64 = 1e-12;
/// Slack for checking declared bounds against the spectrum, relative to `max(1, B)`.
pub const BOUNDS_TOLERANCE: f64 = 1e-9;
/// Relative tolerance for the commutation test in [`commuting_scale`].
pub const COMMUTATION_TOLERANCE: f64 = 1e-9;

/// An indexed family of vectors in `R^dim`, optionally carrying frame bounds `(A, B)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameSpec {
    dim: usize,
    vectors: Vec<RealVector>,
    declared_bounds: Option<(f64, f64)>,
}

impl FrameSpec {
    pub fn new(vectors: Vec<RealVector>) -> Result<Self> {
        let first = vectors.first().ok_or(Error::Empty("frame"))?;
        let dim = first.dim();
        if let Some(bad) = vectors.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        Ok(Self { dim, vectors, declared_bounds: None })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(rows.into_iter().map(RealVector::new).collect::<Result<Vec<_>>>()?)
    }

    /// Attaches bounds after checking `0 < A ≤ B < ∞` and `A·I ≤ S ≤ B·I`.
    pub fn with_bounds(mut self, a: f64, b: f64) -> Result<Self> {
        let eig = eigh(&frame_operator(&self))?;
        check_bounds(&eig, a, b)?;
        self.declared_bounds = Some((a, b));
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[RealVector] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &RealVector {
        &self.vectors[i]
    }

    pub fn declared_bounds(&self) -> Option<(f64, f64)> {
        self.declared_bounds
    }

    /// Matrix of the analysis operator: row `i` is `φᵢ`.
    pub fn analysis_matrix(&self) -> Matrix {
        Matrix::from_fn(self.len(), self.dim, |i, j| self.vectors[i][j])
    }

    /// Applies `op` to every vector. Bounds are dropped.
    pub fn map_vectors(&self, op: &SymmetricOperator) -> Result<FrameSpec> {
        if op.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: op.dim() });
        }
        Ok(Self {
            dim: self.dim,
            vectors: self.vectors.iter().map(|v| RealVector::from_computed(op.apply(v))).collect(),
            declared_bounds: None,
        })
    }

    pub(crate) fn from_computed(dim: usize, vectors: Vec<Vec<f64>>) -> Self {
        Self { dim, vectors: vectors.into_iter().map(RealVector::from_computed).collect(), declared_bounds: None }
    }

    /// Largest Euclidean distance between corresponding vectors.
    pub fn max_vector_distance(&self, other: &FrameSpec) -> f64 {
        assert_eq!(self.len(), other.len());
        self.vectors.iter().zip(&other.vectors).map(|(a, b)| linalg::distance(a, b)).fold(0.0, f64::max)
    }
}

pub fn is_frame_spectrum(lambda_min: f64, lambda_max: f64) -> bool {
    lambda_min > FRAME_TOLERANCE * lambda_max.max(1.0)
}

/// Checks `0 < A ≤ B < ∞` and that the spectrum lies in `[A, B]` up to [`BOUNDS_TOLERANCE`].
pub fn check_bounds(eig: &EigenDecomposition, a: f64, b: f64) -> Result<()> {
    let invalid = |reason: String| Err(Error::InvalidBounds { a, b, reason });
    if !(a.is_finite() && b.is_finite()) || a <= 0.0 || b < a {
        return invalid("need 0 < A <= B < inf".into());
    }
    let slack = BOUNDS_TOLERANCE * b.max(1.0);
    if eig.lambda_min() < a - slack {
        return invalid(format!("lambda_min = {} is below A", eig.lambda_min()));
    }
    if eig.lambda_max() > b + slack {
        return invalid(format!("lambda_max = {} is above B", eig.lambda_max()));
    }
    Ok(())
}

/// Coefficients `⟨φⱼ, f⟩`.
pub fn analysis(frame: &FrameSpec, f: &[f64]) -> Result<Vec<f64>> {
    if f.len() != frame.dim {
        return Err(Error::DimensionMismatch { expected: frame.dim, found: f.len() });
    }
    Ok(frame.vectors.iter().map(|phi| dot(phi, f)).collect())
}

/// `Σ cᵢ φᵢ`.
pub fn synthesis(frame: &FrameSpec, c: &[f64]) -> Result<RealVector> {
    if c.len() != frame.len() {
        return Err(Error::DimensionMismatch { expected: frame.len(), found: c.len() });
    }
    let mut out = vec![0.0; frame.dim];
    for (ci, phi) in c.iter().zip(&frame.vectors) {
        linalg::axpy(*ci, phi, &mut out);
    }
    Ok(RealVector::from_computed(out))
}

/// `S = F*F`, entries `Σᵢ φᵢ[a]·φᵢ[b]`.
pub fn frame_operator(frame: &FrameSpec) -> SymmetricOperator {
    SymmetricOperator::from_upper(frame.dim, |a, b| frame.vectors.iter().map(|phi| phi[a] * phi[b]).sum())
}

/// Spectral summary of the frame operator.
#[derive(Clone, Debug)]
pub struct FrameDiagnostics {
    pub eigenvalues: Vec<f64>,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub is_frame: bool,
    /// In finite dimension `ker F = ker F*F`, so this always agrees with `is_frame`.
    pub kernel_trivial: bool,
    /// `‖(F*F)⁻¹‖`, evaluated from the spectral inverse; `None` for non-frames.
    pub inverse_norm: Option<f64>,
}

impl FrameDiagnostics {
    /// Optimal frame bounds, `(λ_min, λ_max)`, when the family is a frame.
    pub fn optimal_bounds(&self) -> Option<(f64, f64)> {
        self.is_frame.then_some((self.lambda_min, self.lambda_max))
    }

    pub fn is_tight(&self) -> bool {
        self.is_frame && self.lambda_max - self.lambda_min <= BOUNDS_TOLERANCE * self.lambda_max
    }
}

pub fn diagnostics(frame: &FrameSpec) -> Result<FrameDiagnostics> {
    let s = frame_operator(frame);
    let eig = eigh(&s)?;
    let (lambda_min, lambda_max) = (eig.lambda_min(), eig.lambda_max());
    let is_frame = is_frame_spectrum(lambda_min, lambda_max);
    let inverse_norm = if is_frame {
        let inverse = eig.apply_function(|x| 1.0 / x)?;
        Some(linalg::operator_norm(&inverse)?)
    } else {
        None
    };
    Ok(FrameDiagnostics {
        eigenvalues: eig.eigenvalues().to_vec(),
        lambda_min,
        lambda_max,
        is_frame,
        kernel_trivial: is_frame,
        inverse_norm,
    })
}

/// `S^γ` for the frame operator `S`. Negative powers require a frame.
pub fn frame_power(frame: &FrameSpec, gamma: f64) -> Result<SymmetricOperator> {
    frame_power_from(&eigh(&frame_operator(frame))?, gamma)
}

fn frame_power_from(eig: &EigenDecomposition, gamma: f64) -> Result<SymmetricOperator> {
    if gamma == 0.0 {
        return Ok(SymmetricOperator::identity(eig.dim()));
    }
    if gamma < 0.0 {
        if !is_frame_spectrum(eig.lambda_min(), eig.lambda_max()) {
            return Err(Error::NotAFrame { lambda_min: eig.lambda_min() });
        }
        eig.apply_function(|x| x.powf(gamma))
    } else {
        eig.apply_function(|x| x.max(0.0).powf(gamma))
    }
}

/// Frame bounds of the α-frame of an `(A, B)`-frame.
pub fn alpha_frame_bounds(a: f64, b: f64, alpha: f64) -> (f64, f64) {
    let p = 2.0 * alpha + 1.0;
    if alpha > -0.5 {
        (a.powf(p), b.powf(p))
    } else if alpha == -0.5 {
        (1.0, 1.0)
    } else {
        (b.powf(p), a.powf(p))
    }
}

/// The α-frame `{S^α φᵢ}` with bounds stamped from the optimal bounds of `frame`.
pub fn alpha_frame(frame: &FrameSpec, alpha: f64) -> Result<FrameSpec> {
    if !alpha.is_finite() {
        return Err(Error::NonFinite("alpha"));
    }
    let eig = eigh(&frame_operator(frame))?;
    let power = frame_power_from(&eig, alpha)?;
    let mut out = frame.map_vectors(&power)?;
    if is_frame_spectrum(eig.lambda_min(), eig.lambda_max()) {
        out.declared_bounds = Some(alpha_frame_bounds(eig.lambda_min(), eig.lambda_max(), alpha));
    }
    Ok(out)
}

/// Canonical dual `{S⁻¹ φᵢ}`.
pub fn dual_frame(frame: &FrameSpec) -> Result<FrameSpec> {
    alpha_frame(frame, -1.0)
}

/// The pair `(φ^(α), φ^(-1-α))` used by the generalized reconstruction formula.
#[derive(Clone, Debug)]
pub struct ReconstructionPair {
    pub alpha: f64,
    pub analysis: FrameSpec,
    pub synthesis: FrameSpec,
}

impl ReconstructionPair {
    pub fn new(frame: &FrameSpec, alpha: f64) -> Result<Self> {
        let eig = eigh(&frame_operator(frame))?;
        if !is_frame_spectrum(eig.lambda_min(), eig.lambda_max()) {
            return Err(Error::NotAFrame { lambda_min: eig.lambda_min() });
        }
        let analysis = frame.map_vectors(&frame_power_from(&eig, alpha)?)?;
        let synthesis = frame.map_vectors(&frame_power_from(&eig, -1.0 - alpha)?)?;
        Ok(Self { alpha, analysis, synthesis })
    }

    /// `Σ ⟨φᵢ^(α), f⟩ φᵢ^(-1-α)`
    pub fn apply(&self, f: &[f64]) -> Result<RealVector> {
        synthesis(&self.synthesis, &analysis(&self.analysis, f)?)
    }
}

pub fn reconstruct(frame: &FrameSpec, alpha: f64, f: &[f64]) -> Result<RealVector> {
    ReconstructionPair::new(frame, alpha)?.apply(f)
}

/// Outcome of checking the α-frame bounds on sampled vectors.
#[derive(Clone, Debug)]
pub struct BoundsCheckReport {
    pub alpha: f64,
    /// Bounds predicted from the optimal bounds of the generating frame.
    pub lower: f64,
    pub upper: f64,
    /// Extremes of `Σ|⟨φᵢ^(α), f⟩|² / ‖f‖²` over the sample set.
    pub min_ratio: f64,
    pub max_ratio: f64,
    /// Largest `|Σ|⟨φᵢ^(α), f⟩|² - ⟨S^(2α+1) f, f⟩|` over the sample set.
    pub max_identity_residual: f64,
    pub samples_checked: usize,
    pub violations: usize,
}

impl BoundsCheckReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Checks the α-frame inequalities and the identity `Σ|⟨φᵢ^(α), f⟩|² = ⟨S^(2α+1) f, f⟩`
/// on `samples` seeded unit vectors plus the eigenvectors of `S`.
pub fn alpha_bounds_check(frame: &FrameSpec, alpha: f64, samples: usize, seed: u64) -> Result<BoundsCheckReport> {
    let eig = eigh(&frame_operator(frame))?;
    if !is_frame_spectrum(eig.lambda_min(), eig.lambda_max()) {
        return Err(Error::NotAFrame { lambda_min: eig.lambda_min() });
    }
    let (lower, upper) = alpha_frame_bounds(eig.lambda_min(), eig.lambda_max(), alpha);
    let family = frame.map_vectors(&frame_power_from(&eig, alpha)?)?;
    let quadratic = frame_power_from(&eig, 2.0 * alpha + 1.0)?;

    let mut probes: Vec<Vec<f64>> =
        sampling::unit_vectors(frame.dim, samples, seed).into_iter().map(RealVector::into_inner).collect();
    probes.extend((0..eig.dim()).map(|k| eig.eigenvector(k)));

    let slack = BOUNDS_TOLERANCE * upper.max(1.0);
    let mut report = BoundsCheckReport {
        alpha,
        lower,
        upper,
        min_ratio: f64::INFINITY,
        max_ratio: f64::NEG_INFINITY,
        max_identity_residual: 0.0,
        samples_checked: probes.len(),
        violations: 0,
    };
    for f in &probes {
        let norm2 = dot(f, f);
        let energy: f64 = analysis(&family, f)?.iter().map(|c| c * c).sum();
        let ratio = energy / norm2;
        report.min_ratio = report.min_ratio.min(ratio);
        report.max_ratio = report.max_ratio.max(ratio);
        let identity = dot(&quadratic.apply(f), f);
        let residual = (energy - identity).abs();
        report.max_identity_residual = report.max_identity_residual.max(residual);
        if ratio < lower - slack || ratio > upper + slack || residual > BOUNDS_TOLERANCE * energy.max(1.0) {
            report.violations += 1;
        }
    }
    Ok(report)
}

/// `{A^(1/2) φᵢ}` for a positive operator `A` commuting with the frame operator.
/// Such a rescaling leaves the canonical Parseval frame unchanged.
pub fn commuting_scale(frame: &FrameSpec, a_op: &SymmetricOperator) -> Result<FrameSpec> {
    if a_op.dim() != frame.dim {
        return Err(Error::DimensionMismatch { expected: frame.dim, found: a_op.dim() });
    }
    let eig = eigh(a_op)?;
    if !is_frame_spectrum(eig.lambda_min(), eig.lambda_max()) {
        return Err(Error::NotPositive { lambda_min: eig.lambda_min() });
    }
    let s = frame_operator(frame);
    let commutator = a_op.commutator_norm(&s)?;
    let limit = COMMUTATION_TOLERANCE * eig.lambda_max() * linalg::operator_norm(&s)?;
    if commutator > limit {
        return Err(Error::NonCommuting { commutator, limit });
    }
    frame.map_vectors(&eig.apply_function(f64::sqrt)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn example1() -> FrameSpec {
        FrameSpec::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2]]).unwrap()
    }

    fn example2() -> FrameSpec {
        let r = 1.0 / 3f64.sqrt();
        FrameSpec::from_rows(vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0], vec![r, r, r]])
            .unwrap()
    }

    fn assert_vec(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn analysis_examples() {
        assert_vec(&analysis(&example1(), &[1.0, 0.0]).unwrap(), &[1.0, 0.0, FRAC_1_SQRT_2], 1e-15);
        assert_vec(&analysis(&example1(), &[0.0, 0.0]).unwrap(), &[0.0; 3], 0.0);
        assert_vec(&analysis(&example2(), &[1.0, 1.0, 1.0]).unwrap(), &[1.0, 1.0, 1.0, 3f64.sqrt()], 1e-15);
        assert!(matches!(analysis(&example1(), &[1.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn synthesis_examples() {
        assert_vec(&synthesis(&example1(), &[1.0, 0.0, 0.0]).unwrap(), &[1.0, 0.0], 0.0);
        assert_vec(&synthesis(&example1(), &[1.0, 1.0, SQRT_2]).unwrap(), &[2.0, 2.0], 1e-15);
        assert!(synthesis(&example1(), &[1.0, 2.0]).is_err());
    }

    #[test]
    fn frame_operator_examples() {
        let s = frame_operator(&example1());
        assert_vec(&s.matrix().to_rows().concat(), &[1.5, 0.5, 0.5, 1.5], 1e-15);
        let s = frame_operator(&example2());
        let (d, o) = (4.0 / 3.0, 1.0 / 3.0);
        assert_vec(&s.matrix().to_rows().concat(), &[d, o, o, o, d, o, o, o, d], 1e-15);
        let basis = FrameSpec::from_rows(vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap();
        assert_eq!(frame_operator(&basis), SymmetricOperator::identity(3));
    }

    #[test]
    fn diagnostics_examples() {
        let d = diagnostics(&example1()).unwrap();
        assert!((d.lambda_min - 1.0).abs() < 1e-14 && (d.lambda_max - 2.0).abs() < 1e-14);
        assert!(d.is_frame && d.kernel_trivial);
        assert!((d.inverse_norm.unwrap() - 1.0).abs() < 1e-13);

        let degenerate = FrameSpec::from_rows(vec![vec![1.0, 0.0], vec![2.0, 0.0]]).unwrap();
        let d = diagnostics(&degenerate).unwrap();
        assert_eq!(d.lambda_min, 0.0);
        assert!(!d.is_frame && !d.kernel_trivial && d.inverse_norm.is_none());

        let d = diagnostics(&example2()).unwrap();
        assert!((d.lambda_min - 1.0).abs() < 1e-14 && (d.lambda_max - 2.0).abs() < 1e-14);
    }

    #[test]
    fn alpha_frame_minus_one() {
        let dual = alpha_frame(&example1(), -1.0).unwrap();
        assert_vec(dual.vector(0), &[0.75, -0.25], 1e-14);
        assert_vec(dual.vector(1), &[-0.25, 0.75], 1e-14);
        let c = 1.0 / (2.0 * SQRT_2);
        assert_vec(dual.vector(2), &[c, c], 1e-14);
        let (a, b) = dual.declared_bounds().unwrap();
        assert!((a - 0.5).abs() < 1e-14 && (b - 1.0).abs() < 1e-14);
    }

    #[test]
    fn alpha_frame_fractional() {
        let half = alpha_frame(&example1(), -0.5).unwrap();
        let h = FRAC_1_SQRT_2;
        assert_vec(half.vector(0), &[0.5 * (1.0 + h), 0.5 * (-1.0 + h)], 1e-14);
        assert_vec(half.vector(2), &[0.5, 0.5], 1e-14);
        assert_eq!(half.declared_bounds(), Some((1.0, 1.0)));

        let third = alpha_frame(&example1(), -1.0 / 3.0).unwrap();
        let c = 2f64.powf(-5.0 / 6.0);
        assert_vec(third.vector(2), &[c, c], 1e-14);
        let two_thirds = alpha_frame(&example1(), -2.0 / 3.0).unwrap();
        let c = 2f64.powf(-7.0 / 6.0);
        assert_vec(two_thirds.vector(2), &[c, c], 1e-14);

        let ex2 = alpha_frame(&example2(), -0.5).unwrap();
        let c = 1.0 / 6f64.sqrt();
        assert_vec(ex2.vector(3), &[c, c, c], 1e-14);
    }

    #[test]
    fn alpha_zero_is_identity() {
        let same = alpha_frame(&example1(), 0.0).unwrap();
        assert_eq!(same.vectors(), example1().vectors());
    }

    #[test]
    fn negative_power_of_non_frame_is_rejected() {
        let degenerate = FrameSpec::from_rows(vec![vec![1.0, 0.0], vec![2.0, 0.0]]).unwrap();
        assert!(matches!(alpha_frame(&degenerate, -0.5), Err(Error::NotAFrame { .. })));
        let ok = alpha_frame(&degenerate, 0.5).unwrap();
        assert!(ok.declared_bounds().is_none());
        assert!(reconstruct(&degenerate, 0.0, &[1.0, 0.0]).is_err());
    }

    #[test]
    fn dual_of_special_frames() {
        let onb = FrameSpec::from_rows(vec![vec![0.6, 0.8], vec![-0.8, 0.6]]).unwrap();
        assert!(dual_frame(&onb).unwrap().max_vector_distance(&onb) < 1e-14);

        // tight (3,3)-frame: √3·(orthonormal basis)
        let s3 = 3f64.sqrt();
        let tight = FrameSpec::from_rows(vec![vec![s3, 0.0], vec![0.0, s3]]).unwrap();
        let dual = dual_frame(&tight).unwrap();
        assert_vec(dual.vector(0), &[s3 / 3.0, 0.0], 1e-14);

        let back = dual_frame(&dual_frame(&example1()).unwrap()).unwrap();
        assert!(back.max_vector_distance(&example1()) < 1e-13);
    }

    #[test]
    fn reconstruction_examples() {
        let f = [0.3, -1.7];
        for alpha in [0.0, -1.0 / 3.0, -0.5, 2.0] {
            let g = reconstruct(&example1(), alpha, &f).unwrap();
            assert_vec(&g, &f, 1e-13);
        }
        let half = alpha_frame(&example1(), -0.5).unwrap();
        let energy: f64 = analysis(&half, &f).unwrap().iter().map(|c| c * c).sum();
        assert!((energy - dot(&f, &f)).abs() < 1e-13);
    }

    #[test]
    fn alpha_bounds_on_examples() {
        let r = alpha_bounds_check(&example1(), -1.0, 64, 7).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!((r.lower - 0.5).abs() < 1e-14 && (r.upper - 1.0).abs() < 1e-14);
        let r = alpha_bounds_check(&example1(), -1.0 / 3.0, 64, 7).unwrap();
        assert!(r.passed());
        assert!((r.lower - 1.0).abs() < 1e-14 && (r.upper - 2f64.cbrt()).abs() < 1e-14);
        let r = alpha_bounds_check(&example1(), -2.0 / 3.0, 64, 7).unwrap();
        assert!(r.passed());
        assert!((r.lower - 1.0 / 2f64.cbrt()).abs() < 1e-14 && (r.upper - 1.0).abs() < 1e-14);
        let r = alpha_bounds_check(&example2(), -0.5, 64, 7).unwrap();
        assert!(r.passed() && r.lower == 1.0 && r.upper == 1.0);
        assert!((r.max_ratio - 1.0).abs() < 1e-12 && (r.min_ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn declared_bounds_are_verified() {
        assert!(example1().with_bounds(1.0, 2.0).is_ok());
        assert!(example1().with_bounds(0.5, 3.0).is_ok());
        assert!(matches!(example1().with_bounds(1.2, 2.0), Err(Error::InvalidBounds { .. })));
        assert!(matches!(example1().with_bounds(1.0, 1.9), Err(Error::InvalidBounds { .. })));
        assert!(matches!(example1().with_bounds(2.0, 1.0), Err(Error::InvalidBounds { .. })));
        assert!(matches!(example1().with_bounds(0.0, 2.0), Err(Error::InvalidBounds { .. })));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(FrameSpec::new(vec![]), Err(Error::Empty(_))));
        assert!(matches!(
            FrameSpec::from_rows(vec![vec![1.0, 0.0], vec![1.0]]),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn commuting_scale_examples() {
        let frame = example1();
        let canonical = alpha_frame(&frame, -0.5).unwrap();

        let scaled = commuting_scale(&frame, &SymmetricOperator::identity(2).scale(4.0)).unwrap();
        assert_vec(scaled.vector(0), &[2.0, 0.0], 1e-14);
        assert!(alpha_frame(&scaled, -0.5).unwrap().max_vector_distance(&canonical) < 1e-12);

        let by_self = commuting_scale(&frame, &frame_operator(&frame)).unwrap();
        let half_power = alpha_frame(&frame, 0.5).unwrap();
        assert!(by_self.max_vector_distance(&half_power) < 1e-13);
        assert!(alpha_frame(&by_self, -0.5).unwrap().max_vector_distance(&canonical) < 1e-12);

        let unchanged = commuting_scale(&frame, &SymmetricOperator::identity(2)).unwrap();
        assert!(unchanged.max_vector_distance(&frame) < 1e-15);
    }

    #[test]
    fn commuting_scale_rejects_bad_operators() {
        let frame = example1();
        let diag = SymmetricOperator::from_rows(&[vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap();
        assert!(matches!(commuting_scale(&frame, &diag), Err(Error::NonCommuting { .. })));
        let indefinite = SymmetricOperator::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(matches!(commuting_scale(&frame, &indefinite), Err(Error::NotPositive { .. })));
    }
}
