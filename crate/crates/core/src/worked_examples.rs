//! Reference results for three small frames, each recomputed and compared.
//!
//! 1. `{(1,0), (0,1), (1,1)/√2}` in R², with its α-frames at `-1, -½, -⅓, -⅔`.
//! 2. `{e₁, e₂, e₃, (1,1,1)/√3}` in R³, with its Parseval frame.
//! 3. The smooth-window Gabor frame, checked by quadrature.
//!
//! Every claim is deterministic: sampled vectors use fixed seeds.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use serde::Serialize;

use crate::error::Result;
use crate::frame::{self, FrameSpec};
use crate::gabor::{self, GaborParams, SampledSignal};
use crate::linalg::{self, dot, eigh, Matrix};
use crate::sampling;

pub const COMPONENT_TOLERANCE_2D: f64 = 1e-10;
pub const COMPONENT_TOLERANCE_3D: f64 = 1e-9;
pub const SLACK: f64 = 1e-9;
pub const PARTITION_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_GABOR_TOLERANCE: f64 = 0.01;
pub const RANDOM_PROBES: usize = 100;
pub const GABOR_SIGNALS: u64 = 5;
const SEED: u64 = 20_240_501;

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub example: u8,
    pub name: String,
    /// Worst deviation measured for this claim.
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Claim {
    fn deviation(example: u8, name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self { example, name: name.into(), measured, tolerance, passed: measured <= tolerance }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExampleOptions {
    /// Relative tolerance on quadrature-based Gabor tightness ratios.
    pub gabor_tolerance: f64,
}

impl Default for ExampleOptions {
    fn default() -> Self {
        Self { gabor_tolerance: DEFAULT_GABOR_TOLERANCE }
    }
}

pub fn example1_frame() -> FrameSpec {
    FrameSpec::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2]]).expect("finite rows")
}

pub fn example2_frame() -> FrameSpec {
    let c = 1.0 / 3f64.sqrt();
    FrameSpec::from_rows(vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0], vec![c, c, c]])
        .expect("finite rows")
}

/// `{½(1+t, -1+t), ½(-1+t, 1+t), (t/√2)(1,1)}`, the α-frame of example 1 with `t = 2^α`.
pub fn example1_alpha_vectors(alpha: f64) -> Vec<Vec<f64>> {
    let t = 2f64.powf(alpha);
    let third = t * FRAC_1_SQRT_2;
    vec![vec![0.5 * (1.0 + t), 0.5 * (-1.0 + t)], vec![0.5 * (-1.0 + t), 0.5 * (1.0 + t)], vec![third, third]]
}

fn max_matrix_gap(a: &Matrix, rows: &[Vec<f64>]) -> f64 {
    rows.iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (a[(i, j)] - v).abs()))
        .fold(0.0, f64::max)
}

fn max_vector_gap(frame: &FrameSpec, expected: &[Vec<f64>]) -> f64 {
    frame
        .vectors()
        .iter()
        .zip(expected)
        .flat_map(|(v, e)| v.iter().zip(e).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max)
}

/// Distance of a computed eigenpair from the expected one; eigenvectors compared up to sign.
fn eigenpair_gap(value: f64, vector: &[f64], expected_value: f64, expected_vector: &[f64]) -> f64 {
    let overlap = dot(vector, expected_vector).abs();
    (value - expected_value).abs().max((1.0 - overlap).abs())
}

fn probes(frame: &FrameSpec, seed: u64) -> Result<Vec<Vec<f64>>> {
    let eig = eigh(&frame::frame_operator(frame))?;
    let mut out: Vec<Vec<f64>> =
        sampling::unit_vectors(frame.dim(), RANDOM_PROBES, seed).into_iter().map(|v| v.into_inner()).collect();
    out.extend((0..eig.dim()).map(|k| eig.eigenvector(k)));
    Ok(out)
}

/// Amount by which `Σ|⟨ψᵢ, f⟩|²/‖f‖²` leaves `[lower, upper]` over the probes.
fn bounds_excess(family: &FrameSpec, lower: f64, upper: f64, probes: &[Vec<f64>]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for f in probes {
        let energy: f64 = frame::analysis(family, f)?.iter().map(|c| c * c).sum();
        let ratio = energy / dot(f, f);
        worst = worst.max(lower - ratio).max(ratio - upper);
    }
    Ok(worst.max(0.0))
}

fn reconstruction_gap(pair: &frame::ReconstructionPair, probes: &[Vec<f64>]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for f in probes {
        let back = pair.apply(f)?;
        worst = worst.max(linalg::distance(&back, f) / linalg::norm(f));
    }
    Ok(worst)
}

pub fn example1_claims() -> Result<Vec<Claim>> {
    let tol = COMPONENT_TOLERANCE_2D;
    let frame = example1_frame();
    let s = frame::frame_operator(&frame);
    let mut claims = vec![Claim::deviation(
        1,
        "frame operator = ½[[3,1],[1,3]]",
        max_matrix_gap(s.matrix(), &[vec![1.5, 0.5], vec![0.5, 1.5]]),
        tol,
    )];

    let eig = eigh(&s)?;
    let e = eig.eigenvalues();
    claims.push(Claim::deviation(
        1,
        "eigenpair (1, (1,-1)/√2)",
        eigenpair_gap(e[0], &eig.eigenvector(0), 1.0, &[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]),
        tol,
    ));
    claims.push(Claim::deviation(
        1,
        "eigenpair (2, (1,1)/√2)",
        eigenpair_gap(e[1], &eig.eigenvector(1), 2.0, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2]),
        tol,
    ));

    let dual_expected = vec![vec![0.75, -0.25], vec![-0.25, 0.75], vec![0.5 * FRAC_1_SQRT_2, 0.5 * FRAC_1_SQRT_2]];
    let half = FRAC_1_SQRT_2;
    let parseval_expected = vec![
        vec![0.5 * (1.0 + half), 0.5 * (-1.0 + half)],
        vec![0.5 * (-1.0 + half), 0.5 * (1.0 + half)],
        vec![0.5, 0.5],
    ];
    let third_expected = example1_alpha_vectors(-1.0 / 3.0);
    let two_thirds_expected = example1_alpha_vectors(-2.0 / 3.0);
    for (alpha, label, expected) in [
        (-1.0, "φ^(-1) vectors", &dual_expected),
        (-0.5, "φ^(-1/2) vectors", &parseval_expected),
        (-1.0 / 3.0, "φ^(-1/3) vectors", &third_expected),
        (-2.0 / 3.0, "φ^(-2/3) vectors", &two_thirds_expected),
    ] {
        let computed = frame::alpha_frame(&frame, alpha)?;
        claims.push(Claim::deviation(1, label, max_vector_gap(&computed, expected), tol));
    }
    // cross-check the closed forms: ‖φ₃^(-1/3)‖ = 2^(-1/3), ‖φ₃^(-2/3)‖ = 2^(-2/3)
    claims.push(Claim::deviation(
        1,
        "φ₃^(-1/3) = 2^(-5/6)(1,1), φ₃^(-2/3) = 2^(-7/6)(1,1)",
        (third_expected[2][0] - 2f64.powf(-5.0 / 6.0))
            .abs()
            .max((two_thirds_expected[2][0] - 2f64.powf(-7.0 / 6.0)).abs()),
        tol,
    ));

    let probes = probes(&frame, SEED)?;
    for (alpha, label, lower, upper) in [
        (-1.0, "½‖f‖² ≤ Σ|⟨φ^(-1),f⟩|² ≤ ‖f‖²", 0.5, 1.0),
        (-1.0 / 3.0, "‖f‖² ≤ Σ|⟨φ^(-1/3),f⟩|² ≤ 2^(1/3)‖f‖²", 1.0, 2f64.cbrt()),
        (-2.0 / 3.0, "2^(-1/3)‖f‖² ≤ Σ|⟨φ^(-2/3),f⟩|² ≤ ‖f‖²", 1.0 / 2f64.cbrt(), 1.0),
        (-0.5, "Σ|⟨φ^(-1/2),f⟩|² = ‖f‖²", 1.0, 1.0),
    ] {
        let family = frame::alpha_frame(&frame, alpha)?;
        claims.push(Claim::deviation(1, label, bounds_excess(&family, lower, upper, &probes)?, SLACK));
    }
    for (alpha, label) in
        [(-1.0, "f = Σ⟨φ,f⟩φ^(-1) = Σ⟨φ^(-1),f⟩φ"), (-1.0 / 3.0, "f = Σ⟨φ^(-1/3),f⟩φ^(-2/3) = Σ⟨φ^(-2/3),f⟩φ^(-1/3)")]
    {
        let forward = frame::ReconstructionPair::new(&frame, alpha)?;
        let backward = frame::ReconstructionPair::new(&frame, -1.0 - alpha)?;
        let gap = reconstruction_gap(&forward, &probes)?.max(reconstruction_gap(&backward, &probes)?);
        claims.push(Claim::deviation(1, label, gap, SLACK));
    }
    Ok(claims)
}

pub fn example2_claims() -> Result<Vec<Claim>> {
    let tol = COMPONENT_TOLERANCE_3D;
    let frame = example2_frame();
    let s = frame::frame_operator(&frame);
    let third = 1.0 / 3.0;
    let mut claims = vec![Claim::deviation(
        2,
        "frame operator = ⅓[[4,1,1],[1,4,1],[1,1,4]]",
        max_matrix_gap(
            s.matrix(),
            &[vec![4.0 * third, third, third], vec![third, 4.0 * third, third], vec![third, third, 4.0 * third]],
        ),
        tol,
    )];

    let eig = eigh(&s)?;
    let spectrum_gap = eig.eigenvalues().iter().zip([1.0, 1.0, 2.0]).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    claims.push(Claim::deviation(2, "eigenvalues (1, 1, 2)", spectrum_gap, tol));
    let c = 1.0 / 3f64.sqrt();
    claims.push(Claim::deviation(
        2,
        "top eigenvector (1,1,1)/√3",
        eigenpair_gap(eig.lambda_max(), &eig.eigenvector(2), 2.0, &[c, c, c]),
        tol,
    ));

    let r = FRAC_1_SQRT_2;
    let (diag, off) = (third * (2.0 + r), third * (-1.0 + r));
    let corner = 1.0 / 6f64.sqrt();
    let expected = vec![vec![diag, off, off], vec![off, diag, off], vec![off, off, diag], vec![corner, corner, corner]];
    let parseval = frame::alpha_frame(&frame, -0.5)?;
    claims.push(Claim::deviation(
        2,
        "φ^(-1/2) vectors, φ₄^(-1/2) = (1,1,1)/√6",
        max_vector_gap(&parseval, &expected),
        tol,
    ));

    let probes = probes(&frame, SEED + 2)?;
    claims.push(Claim::deviation(2, "Σ|⟨φ^(-1/2),f⟩|² = ‖f‖²", bounds_excess(&parseval, 1.0, 1.0, &probes)?, SLACK));
    let pair = frame::ReconstructionPair::new(&frame, -0.5)?;
    claims.push(Claim::deviation(2, "f = Σ⟨φ^(-1/2),f⟩φ^(-1/2)", reconstruction_gap(&pair, &probes)?, SLACK));
    Ok(claims)
}

pub fn example3_claims(options: &ExampleOptions) -> Result<Vec<Claim>> {
    let params = GaborParams::default();
    let edge = params.support_halfwidth();
    let mut claims = Vec::new();

    // exact zero outside the support, nonzero just inside
    let outside = (0..=1000)
        .map(|i| edge + i as f64 * 0.01)
        .flat_map(|x| [x, -x])
        .map(|x| gabor::window_g(x, &params).abs())
        .fold(0.0, f64::max);
    let inside = gabor::window_g(edge - 1e-2, &params) > 0.0 && gabor::window_g(-edge + 1e-2, &params) > 0.0;
    claims.push(Claim::deviation(3, "supp g = [-π/p0, π/p0]", if inside { outside } else { f64::INFINITY }, 0.0));

    claims.push(Claim::deviation(
        3,
        "Σ_k g(x-kq0)² = 1/q0 (relative, 10⁴ points)",
        gabor::partition_deviation(&params, 10_000),
        PARTITION_TOLERANCE,
    ));

    let window = SampledSignal::window(&params);
    let report = gabor::tightness_check(&window, &params)?;
    claims.push(Claim::deviation(3, "Σ|⟨g_mn,g⟩|² = 2π/(p0q0)‖g‖²", report.relative_error, options.gabor_tolerance));

    let mut worst: f64 = 0.0;
    for seed in 0..GABOR_SIGNALS {
        let f = gabor::random_test_signal(&params, SEED + seed)?;
        worst = worst.max(gabor::tightness_check(&f, &params)?.relative_error);
    }
    claims.push(Claim::deviation(3, "Σ|⟨g_mn,f⟩|² = 2π/(p0q0)‖f‖², 5 seeded signals", worst, options.gabor_tolerance));

    let bump = gabor::bump_signal(&params, 0.7, 2.5)?;
    let scale = params.canonical_scale();
    let scaled = gabor::tightness_check_scaled(&bump, &params, scale)?;
    let factor_gap = (scale * scale * TAU / (params.p0 * params.q0) - 1.0).abs();
    claims.push(Claim::deviation(
        3,
        "√(p0q0/2π)·g_mn is Parseval",
        factor_gap.max(scaled.relative_error),
        options.gabor_tolerance,
    ));
    Ok(claims)
}

pub fn run_all(options: &ExampleOptions) -> Result<Vec<Claim>> {
    let mut claims = example1_claims()?;
    claims.extend(example2_claims()?);
    claims.extend(example3_claims(options)?);
    Ok(claims)
}
