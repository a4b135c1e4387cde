//! Dense real linear algebra and the spectral calculus of symmetric operators.
//!
//! Everything here is sized for desk-scale problems (dimension up to a few
//! hundred). Symmetric eigenproblems are solved with cyclic Jacobi rotations,
//! and functions of a symmetric operator are evaluated on its eigenvalues:
//!
//! ```text
//! f(S) = V · diag(f(λ₁), …, f(λₙ)) · Vᵀ
//! ```

use std::fmt;
use std::ops::{Deref, Index, IndexMut};

use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm at which Jacobi stops, relative to ‖S‖_F.
pub const JACOBI_TOLERANCE: f64 = 1e-13;
/// Maximum number of full Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Relative asymmetry accepted (and then averaged away) when building a [`SymmetricOperator`].
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// A finite vector of reals with at least one coordinate.
#[derive(Clone, PartialEq)]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Empty("vector"));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("vector"));
        }
        Ok(Self(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0.0; dim.max(1)])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }

    /// Wraps coordinates produced by internal arithmetic on already-validated data.
    pub(crate) fn from_computed(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty());
        Self(coords)
    }
}

impl Deref for RealVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl fmt::Debug for RealVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl TryFrom<Vec<f64>> for RealVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `y += alpha * x`
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Euclidean distance between two equally sized slices.
pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Dense row-major real matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(Error::Empty("matrix"));
        }
        let ncols = rows[0].len();
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch { expected: ncols, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { rows: nrows, cols: ncols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| c * a).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        norm(&self.data)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest singular value, via the spectrum of `MᵀM`.
    pub fn spectral_norm(&self) -> Result<f64> {
        let gram = SymmetricOperator::new(self.transpose().matmul(self))?;
        let eig = eigh(&gram)?;
        Ok(eig.lambda_max().max(0.0).sqrt())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Dense self-adjoint operator. Entries are exactly symmetric.
#[derive(Clone, PartialEq)]
pub struct SymmetricOperator {
    m: Matrix,
}

impl SymmetricOperator {
    /// Accepts a square finite matrix whose asymmetry is within rounding and
    /// replaces it by its symmetric part.
    pub fn new(m: Matrix) -> Result<Self> {
        if m.rows != m.cols {
            return Err(Error::DimensionMismatch { expected: m.rows, found: m.cols });
        }
        if m.rows == 0 {
            return Err(Error::Empty("operator"));
        }
        if !m.is_finite() {
            return Err(Error::NonFinite("operator"));
        }
        let limit = SYMMETRY_TOLERANCE * m.max_abs().max(1.0);
        let n = m.rows;
        let mut sym = m;
        for i in 0..n {
            for j in i + 1..n {
                let gap = (sym[(i, j)] - sym[(j, i)]).abs();
                if gap > limit {
                    return Err(Error::NotSymmetric { row: i, col: j, gap });
                }
                let avg = 0.5 * (sym[(i, j)] + sym[(j, i)]);
                sym[(i, j)] = avg;
                sym[(j, i)] = avg;
            }
        }
        Ok(Self { m: sym })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        Self { m: Matrix::identity(n) }
    }

    pub fn zeros(n: usize) -> Self {
        Self { m: Matrix::zeros(n, n) }
    }

    /// Builds an operator from the upper triangle produced by `f(i, j)`, `i <= j`.
    pub(crate) fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.rows
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.m[(i, j)]
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.m.mul_vec(x)
    }

    /// General (not necessarily symmetric) product `self · other`.
    pub fn compose(&self, other: &SymmetricOperator) -> Matrix {
        self.m.matmul(&other.m)
    }

    pub fn add(&self, other: &SymmetricOperator) -> SymmetricOperator {
        Self { m: self.m.add(&other.m) }
    }

    pub fn sub(&self, other: &SymmetricOperator) -> SymmetricOperator {
        Self { m: self.m.sub(&other.m) }
    }

    pub fn scale(&self, c: f64) -> SymmetricOperator {
        Self { m: self.m.scale(c) }
    }

    /// `c·I + d·self`
    pub fn affine(&self, c: f64, d: f64) -> SymmetricOperator {
        let mut m = self.m.scale(d);
        for i in 0..self.dim() {
            m[(i, i)] += c;
        }
        Self { m }
    }

    /// Spectral norm of the commutator `[self, other]`.
    pub fn commutator_norm(&self, other: &SymmetricOperator) -> Result<f64> {
        let ab = self.compose(other);
        let ba = other.compose(self);
        ab.sub(&ba).spectral_norm()
    }
}

impl fmt::Debug for SymmetricOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.m.fmt(f)
    }
}

/// Eigenvalues in ascending order with orthonormal eigenvectors stored as columns.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Matrix,
}

impl EigenDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &Matrix {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        self.eigenvectors.column(k)
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn lambda_max(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// `V · diag(f(λ)) · Vᵀ`, rejecting non-finite values of `f`.
    pub fn apply_function(&self, f: impl Fn(f64) -> f64) -> Result<SymmetricOperator> {
        let values = self
            .eigenvalues
            .iter()
            .map(|&lambda| {
                let v = f(lambda);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::Domain { eigenvalue: lambda })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let v = &self.eigenvectors;
        let n = self.dim();
        Ok(SymmetricOperator::from_upper(n, |i, j| (0..n).map(|k| v[(i, k)] * values[k] * v[(j, k)]).sum()))
    }

    pub fn reconstruct(&self) -> SymmetricOperator {
        self.apply_function(|x| x).expect("eigenvalues are finite")
    }
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
pub fn eigh(s: &SymmetricOperator) -> Result<EigenDecomposition> {
    let n = s.dim();
    let mut a = s.m.clone();
    let mut v = Matrix::identity(n);
    let threshold = JACOBI_TOLERANCE * a.frobenius_norm();

    let off_diagonal = |a: &Matrix| {
        let mut sum = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                sum += 2.0 * a[(p, q)] * a[(p, q)];
            }
        }
        sum.sqrt()
    };

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off = off_diagonal(&a);
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - sn * akq;
                    a[(k, q)] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - sn * aqk;
                    a[(q, k)] = sn * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - sn * vkq;
                    v[(k, q)] = sn * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        let off = off_diagonal(&a);
        if off > threshold {
            return Err(Error::NoConvergence { sweeps: JACOBI_MAX_SWEEPS, off_diagonal: off });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let mut eigenvectors = Matrix::zeros(n, n);
    for (k, &src) in order.iter().enumerate() {
        let col = v.column(src);
        // first component of largest magnitude is made non-negative
        let pivot = col.iter().copied().reduce(|best, x| if x.abs() > best.abs() { x } else { best }).unwrap_or(0.0);
        let sign = if pivot < 0.0 { -1.0 } else { 1.0 };
        for (i, x) in col.into_iter().enumerate() {
            eigenvectors[(i, k)] = sign * x;
        }
    }
    Ok(EigenDecomposition { eigenvalues, eigenvectors })
}

/// Evaluates a scalar function on the spectrum of `s`.
pub fn spectral_apply(s: &SymmetricOperator, f: impl Fn(f64) -> f64) -> Result<SymmetricOperator> {
    eigh(s)?.apply_function(f)
}

/// Spectral norm of a symmetric operator: the largest eigenvalue magnitude.
pub fn operator_norm(s: &SymmetricOperator) -> Result<f64> {
    let eig = eigh(s)?;
    Ok(eig.lambda_min().abs().max(eig.lambda_max().abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1_operator() -> SymmetricOperator {
        SymmetricOperator::from_rows(&[vec![1.5, 0.5], vec![0.5, 1.5]]).unwrap()
    }

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn residual(s: &SymmetricOperator, eig: &EigenDecomposition) -> f64 {
        s.matrix().sub(eig.reconstruct().matrix()).frobenius_norm()
    }

    #[test]
    fn eigh_two_by_two() {
        let s = example1_operator();
        let eig = eigh(&s).unwrap();
        assert_close(eig.eigenvalues()[0], 1.0, 1e-14);
        assert_close(eig.eigenvalues()[1], 2.0, 1e-14);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let e1 = eig.eigenvector(0);
        let e2 = eig.eigenvector(1);
        // sign convention picks (1, -1)/√2 over (-1, 1)/√2
        assert_close(e1[0], h, 1e-14);
        assert_close(e1[1], -h, 1e-14);
        assert_close(e2[0], h, 1e-14);
        assert_close(e2[1], h, 1e-14);
    }

    #[test]
    fn eigh_degenerate_three_by_three() {
        let s = SymmetricOperator::from_rows(&[
            vec![4.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
            vec![1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0],
            vec![1.0 / 3.0, 1.0 / 3.0, 4.0 / 3.0],
        ])
        .unwrap();
        let eig = eigh(&s).unwrap();
        for (got, want) in eig.eigenvalues().iter().zip([1.0, 1.0, 2.0]) {
            assert_close(*got, want, 1e-13);
        }
        let top = eig.eigenvector(2);
        let r = 1.0 / 3f64.sqrt();
        for x in top {
            assert_close(x, r, 1e-13);
        }
        assert!(residual(&s, &eig) <= 1e-13);
    }

    #[test]
    fn eigh_identity_and_zero() {
        for n in 1..6 {
            let eig = eigh(&SymmetricOperator::identity(n)).unwrap();
            assert!(eig.eigenvalues().iter().all(|&x| x == 1.0));
            let eig = eigh(&SymmetricOperator::zeros(n)).unwrap();
            assert!(eig.eigenvalues().iter().all(|&x| x == 0.0));
        }
    }

    #[test]
    fn eigh_is_deterministic() {
        let s =
            SymmetricOperator::from_rows(&[vec![2.0, -1.0, 0.3], vec![-1.0, 0.5, 0.7], vec![0.3, 0.7, -1.2]]).unwrap();
        let a = eigh(&s).unwrap();
        let b = eigh(&s).unwrap();
        assert_eq!(a.eigenvalues(), b.eigenvalues());
        assert_eq!(a.eigenvectors(), b.eigenvectors());
    }

    #[test]
    fn spectral_inverse_matches_direct_inverse() {
        // direct 2x2 inverse of ½[[3,1],[1,3]]: det = 2, inverse = ¼[[3,-1],[-1,3]]
        let inv = spectral_apply(&example1_operator(), |x| 1.0 / x).unwrap();
        let want = [[0.75, -0.25], [-0.25, 0.75]];
        for (i, row) in want.iter().enumerate() {
            for (j, w) in row.iter().enumerate() {
                assert_close(inv.entry(i, j), *w, 1e-14);
            }
        }
    }

    #[test]
    fn spectral_inverse_square_root() {
        // E₁ + (1/√2)E₂ with E₁ = ½[[1,-1],[-1,1]], E₂ = ½[[1,1],[1,1]]
        let op = spectral_apply(&example1_operator(), |x| x.powf(-0.5)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_close(op.entry(0, 0), 0.5 * (1.0 + h), 1e-14);
        assert_close(op.entry(0, 1), 0.5 * (-1.0 + h), 1e-14);
        assert_close(op.entry(1, 1), 0.5 * (1.0 + h), 1e-14);
    }

    #[test]
    fn spectral_identity_function() {
        let s = example1_operator();
        let same = spectral_apply(&s, |x| x).unwrap();
        assert!(s.matrix().sub(same.matrix()).max_abs() < 1e-14);
    }

    #[test]
    fn spectral_apply_reports_domain_error() {
        let s = SymmetricOperator::from_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        match spectral_apply(&s, |x| 1.0 / x) {
            Err(Error::Domain { eigenvalue }) => assert_eq!(eigenvalue, 0.0),
            other => panic!("expected domain error, got {other:?}"),
        }
        let neg = SymmetricOperator::from_rows(&[vec![-1.0, 0.0], vec![0.0, 2.0]]).unwrap();
        assert!(matches!(spectral_apply(&neg, f64::sqrt), Err(Error::Domain { .. })));
    }

    #[test]
    fn operator_norm_examples() {
        let r = SymmetricOperator::from_rows(&[vec![0.0, -1.0 / 3.0], vec![-1.0 / 3.0, 0.0]]).unwrap();
        assert_close(operator_norm(&r).unwrap(), 1.0 / 3.0, 1e-15);
        assert_eq!(operator_norm(&SymmetricOperator::zeros(3)).unwrap(), 0.0);
        assert_close(operator_norm(&example1_operator()).unwrap(), 2.0, 1e-14);
    }

    #[test]
    fn rejects_asymmetric_and_non_finite() {
        let bad = Matrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(SymmetricOperator::new(bad), Err(Error::NotSymmetric { .. })));
        let nan = Matrix::from_rows(&[vec![1.0, f64::NAN], vec![f64::NAN, 1.0]]).unwrap();
        assert!(matches!(SymmetricOperator::new(nan), Err(Error::NonFinite(_))));
        assert!(RealVector::new(vec![]).is_err());
        assert!(RealVector::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn spectral_norm_of_general_matrix() {
        let m = Matrix::from_rows(&[vec![3.0, 0.0], vec![4.0, 0.0]]).unwrap();
        assert_close(m.spectral_norm().unwrap(), 5.0, 1e-13);
    }
}
