//! Oracles shared by the integration tests. Nothing here calls into the
//! library's eigensolver or spectral calculus.
#![allow(dead_code)]

use framecalc::sampling;
use framecalc::FrameSpec;
use nalgebra::{DMatrix, SymmetricEigen};

pub const R: f64 = std::f64::consts::FRAC_1_SQRT_2;

pub fn example1() -> FrameSpec {
    FrameSpec::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![R, R]]).unwrap()
}

pub fn example2() -> FrameSpec {
    let c = 1.0 / 3f64.sqrt();
    FrameSpec::from_rows(vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0], vec![c, c, c]]).unwrap()
}

pub fn rows(frame: &FrameSpec) -> Vec<Vec<f64>> {
    frame.vectors().iter().map(|v| v.to_vec()).collect()
}

/// `Σᵢ φᵢ φᵢᵀ` by plain loops.
pub fn naive_frame_operator(vectors: &[Vec<f64>]) -> DMatrix<f64> {
    let d = vectors[0].len();
    DMatrix::from_fn(d, d, |a, b| vectors.iter().map(|v| v[a] * v[b]).sum())
}

/// `S^γ` from nalgebra's symmetric eigensolver.
pub fn oracle_power(vectors: &[Vec<f64>], gamma: f64) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(naive_frame_operator(vectors));
    let d = eig.eigenvalues.map(|l| l.powf(gamma));
    &eig.eigenvectors * DMatrix::from_diagonal(&d) * eig.eigenvectors.transpose()
}

pub fn oracle_alpha_frame(vectors: &[Vec<f64>], alpha: f64) -> Vec<Vec<f64>> {
    let p = oracle_power(vectors, alpha);
    vectors.iter().map(|v| (0..v.len()).map(|i| (0..v.len()).map(|j| p[(i, j)] * v[j]).sum()).collect()).collect()
}

pub fn oracle_spectrum(vectors: &[Vec<f64>]) -> (f64, f64) {
    let eig = SymmetricEigen::new(naive_frame_operator(vectors));
    (eig.eigenvalues.min(), eig.eigenvalues.max())
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `Σᵢ |⟨ψᵢ, f⟩|²`
pub fn energy(family: &[Vec<f64>], f: &[f64]) -> f64 {
    family.iter().map(|v| dot(v, f).powi(2)).sum()
}

pub fn max_gap(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn matrix_gap(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).abs().max()
}

/// Random frames of dimension 2..=8 with `dim..=5·dim` vectors and `λ_min > 1e-6`.
pub fn random_suite(count: usize, seed: u64) -> Vec<FrameSpec> {
    use rand::Rng;
    let mut rng = sampling::rng(seed);
    (0..count)
        .map(|_| {
            let dim = rng.random_range(2..=8);
            sampling::random_frame(&mut rng, dim, 5, 1e-6)
        })
        .collect()
}

/// Seeded Gaussian test vectors followed by the eigenvectors of `S`.
pub fn probes(frame: &FrameSpec, count: usize, seed: u64) -> Vec<Vec<f64>> {
    use rand::Rng;
    use rand_distr::StandardNormal;
    let mut rng = sampling::rng(seed ^ 0x5eed);
    let d = frame.dim();
    let mut out: Vec<Vec<f64>> = (0..count).map(|_| (0..d).map(|_| rng.sample(StandardNormal)).collect()).collect();
    let eig = SymmetricEigen::new(naive_frame_operator(&rows(frame)));
    out.extend((0..d).map(|k| eig.eigenvectors.column(k).iter().copied().collect()));
    out
}
