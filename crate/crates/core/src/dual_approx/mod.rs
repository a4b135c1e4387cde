//! Perturbative approximation of the canonical dual frame and the canonical
//! Parseval frame, with analytical error bounds and an empirical harness that
//! checks the bounds against measured reconstruction errors.
//!
//! Three schemes are provided:
//!
//! * [`SchemeId::Neumann`]: geometric series in `R = I - 2/(A+B)·S`.
//! * [`SchemeId::BinomialHalf`]: binomial series of `(I - R)^(-1/2)`, giving
//!   the Parseval frame `S^(-1/2) φᵢ`.
//! * [`SchemeId::Logarithmic`]: exponential series of a rescaled logarithm of
//!   `S`, whose contraction factor does not degrade as `B/A` grows.

mod binomial;
mod logarithmic;
mod neumann;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

pub use binomial::{
    binomial_bounds, binomial_coefficients, binomial_remainder_operator, binomial_tight, BinomialBounds,
};
pub use logarithmic::{
    log_bound, log_dual, log_exact_inverse, log_r, log_regime, log_remainder_bound, log_remainder_operator, LogRegime,
};
pub use neumann::{neumann_bound, neumann_dual, neumann_r};

use crate::error::{Error, Result};
use crate::frame::{analysis, check_bounds, frame_operator, synthesis, FrameSpec};
use crate::io::format_f64;
use crate::linalg::{distance, eigh, norm, EigenDecomposition, RealVector, SymmetricOperator};
use crate::sampling;

/// Absolute allowance for floating-point rounding when comparing a measured
/// error against an analytical bound that has decayed below machine precision.
pub const ROUNDING_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeId {
    Neumann,
    BinomialHalf,
    Logarithmic,
}

impl SchemeId {
    pub const ALL: [SchemeId; 3] = [SchemeId::Neumann, SchemeId::BinomialHalf, SchemeId::Logarithmic];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::Neumann => "neumann",
            SchemeId::BinomialHalf => "binomial-half",
            SchemeId::Logarithmic => "logarithmic",
        }
    }

    /// Reconstruction error bound after `n` terms for declared bounds `(a, b)`.
    pub fn analytical_bound(self, a: f64, b: f64, n: usize) -> f64 {
        match self {
            SchemeId::Neumann => neumann_bound(a, b, n),
            SchemeId::BinomialHalf => binomial_bounds(a, b, n).reconstruction_bound,
            SchemeId::Logarithmic => log_bound(a, b, n),
        }
    }

    /// Whether the bound is guaranteed to go to zero for these frame bounds.
    pub fn converges(self, a: f64, b: f64) -> bool {
        match self {
            SchemeId::BinomialHalf => b < 3.0 * a,
            _ => true,
        }
    }

    /// Approximate frame of order `n`: the dual for Neumann and Logarithmic,
    /// the Parseval frame for BinomialHalf.
    pub fn approximate(self, frame: &FrameSpec, a: f64, b: f64, n: usize) -> Result<FrameSpec> {
        match self {
            SchemeId::Neumann => neumann_dual(frame, a, b, n),
            SchemeId::BinomialHalf => binomial_tight(frame, a, b, n),
            SchemeId::Logarithmic => log_dual(frame, a, b, n),
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "neumann" => Ok(SchemeId::Neumann),
            "binomial-half" | "binomialhalf" | "binomial" => Ok(SchemeId::BinomialHalf),
            "logarithmic" | "log" => Ok(SchemeId::Logarithmic),
            other => Err(format!("unknown scheme '{other}' (expected neumann, binomial-half or logarithmic)")),
        }
    }
}

/// Smallest `n ≤ max_n` at which the analytical bound drops to `target` or below.
pub fn bound_crossing(scheme: SchemeId, a: f64, b: f64, target: f64, max_n: usize) -> Option<usize> {
    (0..=max_n).find(|&n| scheme.analytical_bound(a, b, n) <= target)
}

/// Frame operator with its spectrum, after checking that `(a, b)` are valid bounds.
pub(crate) fn bounded_operator(frame: &FrameSpec, a: f64, b: f64) -> Result<(SymmetricOperator, EigenDecomposition)> {
    let s = frame_operator(frame);
    let eig = eigh(&s)?;
    check_bounds(&eig, a, b)?;
    Ok((s, eig))
}

/// Applies `Σ_{k=0..n} coeff(k)·Opᵏ φ` to every frame vector by iterated
/// application; `coeff_ratio(k)` gives `coeff(k)/coeff(k-1)`.
pub(crate) fn series_apply(
    frame: &FrameSpec,
    op: &SymmetricOperator,
    scale: f64,
    n: usize,
    coeff_ratio: impl Fn(usize) -> f64,
) -> FrameSpec {
    let vectors = frame
        .vectors()
        .iter()
        .map(|phi| {
            let mut term: Vec<f64> = phi.to_vec();
            let mut acc = term.clone();
            for k in 1..=n {
                let ratio = coeff_ratio(k);
                term = op.apply(&term).into_iter().map(|x| ratio * x).collect();
                for (a, t) in acc.iter_mut().zip(&term) {
                    *a += t;
                }
            }
            acc.into_iter().map(|x| scale * x).collect()
        })
        .collect();
    FrameSpec::from_computed(frame.dim(), vectors)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub measured_error: f64,
    pub analytical_bound: f64,
}

impl ConvergenceRow {
    pub fn within_bound(&self) -> bool {
        self.measured_error <= self.analytical_bound * (1.0 + 1e-9) + ROUNDING_FLOOR
    }
}

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub scheme: SchemeId,
    pub declared_bounds: (f64, f64),
    pub seed: u64,
    pub samples: usize,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn violations(&self) -> impl Iterator<Item = &ConvergenceRow> {
        self.rows.iter().filter(|r| !r.within_bound())
    }

    pub fn all_within_bounds(&self) -> bool {
        self.violations().next().is_none()
    }

    pub const CSV_HEADER: &'static str = "scheme,A,B,N,measured_error,analytical_bound";

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{}", Self::CSV_HEADER)?;
        let (a, b) = self.declared_bounds;
        for row in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                self.scheme,
                format_f64(a),
                format_f64(b),
                row.n,
                format_f64(row.measured_error),
                format_f64(row.analytical_bound)
            )?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV is ASCII")
    }
}

/// Measures the worst relative reconstruction error of `scheme` for every
/// order `0..=n_max` over seeded unit vectors plus the eigenvectors of `S`.
pub fn run_convergence(
    frame: &FrameSpec,
    scheme: SchemeId,
    a: f64,
    b: f64,
    n_max: usize,
    samples: usize,
    seed: u64,
) -> Result<ConvergenceReport> {
    let (_, eig) = bounded_operator(frame, a, b)?;
    if !scheme.converges(a, b) {
        return Err(Error::BinomialDivergent { a, b });
    }
    let mut probes: Vec<Vec<f64>> =
        sampling::unit_vectors(frame.dim(), samples, seed).into_iter().map(RealVector::into_inner).collect();
    probes.extend((0..eig.dim()).map(|k| eig.eigenvector(k)));

    let rows = (0..=n_max)
        .map(|n| {
            let approx = scheme.approximate(frame, a, b, n)?;
            let analysing = match scheme {
                SchemeId::BinomialHalf => &approx,
                _ => frame,
            };
            let mut worst: f64 = 0.0;
            for f in &probes {
                let rebuilt = synthesis(&approx, &analysis(analysing, f)?)?;
                worst = worst.max(distance(f, &rebuilt) / norm(f));
            }
            Ok(ConvergenceRow { n, measured_error: worst, analytical_bound: scheme.analytical_bound(a, b, n) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport { scheme, declared_bounds: (a, b), seed, samples, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn example1() -> FrameSpec {
        FrameSpec::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2]]).unwrap()
    }

    #[test]
    fn neumann_report_on_example1() {
        let report = run_convergence(&example1(), SchemeId::Neumann, 1.0, 2.0, 8, 32, 3).unwrap();
        assert_eq!(report.rows.len(), 9);
        assert!(report.all_within_bounds());
        for row in &report.rows {
            let bound = (1.0f64 / 3.0).powi(row.n as i32 + 1);
            assert!((row.analytical_bound - bound).abs() < 1e-15);
            // eigenvectors of R = [[0,-1/3],[-1/3,0]] saturate the bound
            assert!((row.measured_error - bound).abs() < 1e-12 * bound.max(1e-3));
        }
    }

    #[test]
    fn binomial_report_on_example1() {
        let report = run_convergence(&example1(), SchemeId::BinomialHalf, 1.0, 2.0, 8, 32, 3).unwrap();
        assert!(report.all_within_bounds());
        for row in &report.rows {
            let x = 0.5f64.powi(row.n as i32 + 1);
            let want = 2f64.sqrt() * x * (2.0 + 2f64.sqrt() * x);
            assert!((row.analytical_bound - want).abs() < 1e-14);
        }
    }

    #[test]
    fn binomial_refuses_wide_bounds() {
        let frame = example1();
        assert!(matches!(
            run_convergence(&frame, SchemeId::BinomialHalf, 0.5, 2.0, 4, 4, 0),
            Err(Error::BinomialDivergent { .. })
        ));
    }

    #[test]
    fn tight_frames_are_exact_at_order_zero() {
        let s = 2f64.sqrt();
        let tight = FrameSpec::from_rows(vec![vec![s, 0.0], vec![0.0, s]]).unwrap();
        for scheme in SchemeId::ALL {
            let report = run_convergence(&tight, scheme, 2.0, 2.0, 0, 16, 1).unwrap();
            assert!(report.rows[0].measured_error <= 1e-9, "{scheme}");
        }
    }

    #[test]
    fn invalid_bounds_are_rejected() {
        assert!(matches!(
            run_convergence(&example1(), SchemeId::Neumann, 1.5, 2.0, 3, 4, 0),
            Err(Error::InvalidBounds { .. })
        ));
    }

    #[test]
    fn csv_layout() {
        let report = run_convergence(&example1(), SchemeId::Logarithmic, 1.0, 2.0, 2, 4, 0).unwrap();
        let csv = report.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(ConvergenceReport::CSV_HEADER));
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first[0], "logarithmic");
        assert_eq!(first[3], "0");
        assert_eq!(first[1].parse::<f64>().unwrap(), 1.0);
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn scheme_names_round_trip() {
        for scheme in SchemeId::ALL {
            assert_eq!(scheme.name().parse::<SchemeId>().unwrap(), scheme);
        }
        assert!("chebyshev".parse::<SchemeId>().is_err());
    }

    #[test]
    fn logarithmic_beats_neumann_for_wide_bounds() {
        let neumann = bound_crossing(SchemeId::Neumann, 1.0, 50.0, 1e-6, 10_000).unwrap();
        let log = bound_crossing(SchemeId::Logarithmic, 1.0, 50.0, 1e-6, 10_000).unwrap();
        assert!(log < neumann, "log {log} vs neumann {neumann}");
    }
}
