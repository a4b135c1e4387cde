//! Seeded random vectors and frames.
//!
//! All generators are driven by ChaCha8 so that reports and tests are
//! reproducible from a `u64` seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::frame::{alpha_frame, FrameSpec};
use crate::linalg::{dot, norm, Matrix, RealVector, SymmetricOperator};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.sample(StandardNormal)).collect()
}

/// Uniform sample from the unit sphere in `R^dim`.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> RealVector {
    loop {
        let v = gaussian_vector(rng, dim);
        let n = norm(&v);
        if n > 1e-12 {
            return RealVector::from_computed(v.into_iter().map(|x| x / n).collect());
        }
    }
}

pub fn unit_vectors(dim: usize, count: usize, seed: u64) -> Vec<RealVector> {
    let mut rng = rng(seed);
    (0..count).map(|_| unit_vector(&mut rng, dim)).collect()
}

/// `count` vectors with i.i.d. standard normal coordinates.
pub fn gaussian_frame<R: Rng + ?Sized>(rng: &mut R, dim: usize, count: usize) -> FrameSpec {
    FrameSpec::from_computed(dim, (0..count).map(|_| gaussian_vector(rng, dim)).collect())
}

/// Haar-ish random orthogonal matrix by Gram-Schmidt on Gaussian columns.
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(n);
    while columns.len() < n {
        let mut v = gaussian_vector(rng, n);
        for _ in 0..2 {
            for c in &columns {
                let p = dot(c, &v);
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= p * ci;
                }
            }
        }
        let nv = norm(&v);
        if nv > 1e-8 {
            columns.push(v.into_iter().map(|x| x / nv).collect());
        }
    }
    Matrix::from_fn(n, n, |i, j| columns[j][i])
}

/// A frame of `count` vectors whose frame operator has spectrum exactly spanning
/// `[lambda_min, lambda_max]`, with the remaining eigenvalues drawn in between.
pub fn frame_with_spectrum<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    count: usize,
    lambda_min: f64,
    lambda_max: f64,
) -> Result<FrameSpec> {
    if count < dim {
        return Err(Error::DimensionMismatch { expected: dim, found: count });
    }
    if !(lambda_min > 0.0 && lambda_max >= lambda_min) || (dim == 1 && lambda_max != lambda_min) {
        return Err(Error::InvalidBounds { a: lambda_min, b: lambda_max, reason: "unrealizable spectrum".into() });
    }
    let parseval = loop {
        let candidate = gaussian_frame(rng, dim, count);
        if let Ok(p) = alpha_frame(&candidate, -0.5) {
            break p;
        }
    };
    let mut spectrum: Vec<f64> = (0..dim)
        .map(|k| match k {
            0 => lambda_min,
            k if k == dim - 1 => lambda_max,
            _ => lambda_min + rng.random::<f64>() * (lambda_max - lambda_min),
        })
        .collect();
    spectrum.sort_by(f64::total_cmp);
    let q = random_orthogonal(rng, dim);
    let root =
        SymmetricOperator::from_upper(dim, |i, j| (0..dim).map(|k| q[(i, k)] * spectrum[k].sqrt() * q[(j, k)]).sum());
    parseval.map_vectors(&root)
}

/// Gaussian frame of `dim..=max_redundancy·dim` vectors with `λ_min > floor`.
pub fn random_frame<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_redundancy: usize, floor: f64) -> FrameSpec {
    loop {
        let count = rng.random_range(dim..=max_redundancy.max(1) * dim);
        let candidate = gaussian_frame(rng, dim, count);
        let ok = crate::frame::diagnostics(&candidate).map(|d| d.lambda_min > floor).unwrap_or(false);
        if ok {
            return candidate;
        }
    }
}
