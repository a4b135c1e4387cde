//! A tight Weyl-Heisenberg (Gabor) frame on sampled signals.
//!
//! The window `g` is supported on `[-π/p0, π/p0]`, flat in the middle, and
//! its squared translates by `q0` sum to the constant `1/q0`. Modulating by
//! `e^(i m p0 x)` and translating by `n q0` then yields a tight frame of
//! `L²(R)` with bound `2π/(p0 q0)`. Here that identity is checked on a
//! uniform grid with trapezoidal inner products and truncated `(m, n)` ranges.
//!
//! The transition width is `λ = 2π/p0 - q0`, which makes the falling edge of
//! `g(x)` coincide with the rising edge of `g(x - q0)`. Valid parameters
//! satisfy `π/p0 ≤ q0 < 2π/p0`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sampling;

/// Tail energy, relative to the total, above which truncation is reported.
pub const TAIL_WARNING_FRACTION: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaborParams {
    pub p0: f64,
    pub q0: f64,
    pub grid_step: f64,
    pub grid_halfwidth: f64,
    /// Modulations `|m| ≤ m_max`.
    pub m_max: usize,
    /// Translations `|n| ≤ n_max`.
    pub n_max: usize,
}

impl GaborParams {
    pub const DEFAULT_P0: f64 = 1.0;
    pub const DEFAULT_Q0: f64 = 4.0;
    pub const DEFAULT_M: usize = 64;

    /// Parameters with the default grid: step `q0/64`, half-width `12·q0`.
    pub fn new(p0: f64, q0: f64) -> Result<Self> {
        let mut params =
            Self { p0, q0, grid_step: q0 / 64.0, grid_halfwidth: 12.0 * q0, m_max: Self::DEFAULT_M, n_max: 0 };
        params.n_max = params.covering_translations();
        params.validate()?;
        Ok(params)
    }

    pub fn with_grid(mut self, grid_step: f64, grid_halfwidth: f64) -> Result<Self> {
        self.grid_step = grid_step;
        self.grid_halfwidth = grid_halfwidth;
        self.n_max = self.covering_translations();
        self.validate()?;
        Ok(self)
    }

    pub fn with_modulations(mut self, m_max: usize) -> Self {
        self.m_max = m_max;
        self
    }

    /// Smallest `n_max` for which translated windows cover the whole grid.
    fn covering_translations(&self) -> usize {
        let reach = (self.grid_halfwidth + PI / self.p0) / self.q0;
        if reach.is_finite() && reach > 0.0 {
            reach.ceil() as usize
        } else {
            0
        }
    }

    pub fn lambda(&self) -> f64 {
        TAU / self.p0 - self.q0
    }

    /// `π/p0`, half the support length of the window.
    pub fn support_halfwidth(&self) -> f64 {
        PI / self.p0
    }

    /// Tight-frame bound `2π/(p0 q0)`.
    pub fn frame_bound(&self) -> f64 {
        TAU / (self.p0 * self.q0)
    }

    /// Scale turning the Gabor system into a Parseval frame: `√(p0 q0/2π)`.
    pub fn canonical_scale(&self) -> f64 {
        (self.p0 * self.q0 / TAU).sqrt()
    }

    /// Number of grid steps in one translation `q0`.
    pub fn shift_steps(&self) -> usize {
        (self.q0 / self.grid_step).round() as usize
    }

    fn half_count(&self) -> usize {
        (self.grid_halfwidth / self.grid_step + 1e-9).floor() as usize
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGabor(msg));
        let all = [self.p0, self.q0, self.grid_step, self.grid_halfwidth];
        if all.iter().any(|x| !x.is_finite() || *x <= 0.0) {
            return bad("p0, q0, grid step and half-width must be positive and finite".into());
        }
        if self.q0 >= TAU / self.p0 {
            return bad(format!("q0 = {} must be below 2π/p0 = {} for a frame to exist", self.q0, TAU / self.p0));
        }
        if self.q0 < PI / self.p0 {
            return bad(format!(
                "q0 = {} must be at least π/p0 = {} so the window has a plateau",
                self.q0,
                PI / self.p0
            ));
        }
        let steps = self.q0 / self.grid_step;
        if (steps - steps.round()).abs() > 1e-9 * steps.max(1.0) || steps.round() < 1.0 {
            return bad(format!("q0 = {} is not an integer multiple of the grid step {}", self.q0, self.grid_step));
        }
        if self.grid_halfwidth <= self.support_halfwidth() {
            return bad("grid half-width must exceed the window support π/p0".into());
        }
        Ok(())
    }
}

impl Default for GaborParams {
    fn default() -> Self {
        Self::new(Self::DEFAULT_P0, Self::DEFAULT_Q0).expect("default parameters are valid")
    }
}

/// Smooth step: 0 for `x ≤ 0`, 1 for `x ≥ 1`, `h(x)/(h(x)+h(1-x))` with `h(t) = e^(-1/t)` between.
pub fn smooth_nu(x: f64) -> f64 {
    let h = |t: f64| if t > 0.0 { (-1.0 / t).exp() } else { 0.0 };
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let (a, b) = (h(x), h(1.0 - x));
        a / (a + b)
    }
}

/// The window: sine rise, plateau, cosine fall, scaled by `q0^(-1/2)`.
pub fn window_g(x: f64, params: &GaborParams) -> f64 {
    let edge = params.support_halfwidth();
    let lambda = params.lambda();
    let amplitude = params.q0.powf(-0.5);
    if x <= -edge || x >= edge {
        0.0
    } else if x <= -edge + lambda {
        amplitude * (FRAC_PI_2 * smooth_nu((edge + x) / lambda)).sin()
    } else if x <= edge - lambda {
        amplitude
    } else {
        amplitude * (FRAC_PI_2 * smooth_nu((x - edge + lambda) / lambda)).cos()
    }
}

/// `Σ_k g(x - k q0)²`, which equals `1/q0` everywhere.
pub fn partition_sum(x: f64, params: &GaborParams) -> f64 {
    let reach = (params.support_halfwidth() / params.q0).ceil() as i64 + 1;
    let center = (x / params.q0).round() as i64;
    (center - reach..=center + reach).map(|k| window_g(x - k as f64 * params.q0, params).powi(2)).sum()
}

/// Complex samples on the grid `x_j = j·h`, `|j| ≤ K`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledSignal {
    step: f64,
    half_count: usize,
    values: Vec<Complex64>,
}

impl SampledSignal {
    pub fn from_fn(params: &GaborParams, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let half_count = params.half_count();
        let step = params.grid_step;
        let values: Vec<Complex64> =
            (0..2 * half_count + 1).map(|j| f((j as f64 - half_count as f64) * step)).collect();
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite("signal"));
        }
        Ok(Self { step, half_count, values })
    }

    /// The window `g` sampled on the grid of `params`.
    pub fn window(params: &GaborParams) -> Self {
        Self::from_fn(params, |x| Complex64::new(window_g(x, params), 0.0)).expect("window is finite")
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn position(&self, j: usize) -> f64 {
        (j as f64 - self.half_count as f64) * self.step
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { values: self.values.iter().map(|v| v * c).collect(), ..self.clone() }
    }

    fn trapezoid_weight(&self, j: usize) -> f64 {
        if j == 0 || j + 1 == self.values.len() {
            0.5 * self.step
        } else {
            self.step
        }
    }

    /// `∫ conj(self)·other dx` by the trapezoidal rule.
    pub fn inner(&self, other: &SampledSignal) -> Complex64 {
        assert_eq!(self.values.len(), other.values.len(), "signals on different grids");
        self.values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(j, (a, b))| a.conj() * b * self.trapezoid_weight(j))
            .sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.inner(self).re
    }
}

/// `e^(i m p0 x) f(x - n q0)`, translating by whole grid steps.
pub fn weyl_heisenberg_apply(f: &SampledSignal, m: i64, n: i64, params: &GaborParams) -> Result<SampledSignal> {
    let steps = params.q0 / f.step;
    if (steps - steps.round()).abs() > 1e-9 * steps.max(1.0) || steps.round() < 1.0 {
        return Err(Error::InvalidGabor(format!(
            "q0 = {} is not an integer multiple of the grid step {}",
            params.q0, f.step
        )));
    }
    let offset = n * steps.round() as i64;
    let len = f.values.len() as i64;
    let values = (0..len)
        .map(|j| {
            let src = j - offset;
            if src < 0 || src >= len {
                return Complex64::new(0.0, 0.0);
            }
            let x = f.position(j as usize);
            let phase = Complex64::from_polar(1.0, m as f64 * params.p0 * x);
            phase * f.values[src as usize]
        })
        .collect();
    Ok(SampledSignal { values, ..f.clone() })
}

#[derive(Clone, Debug, Serialize)]
pub struct TightnessReport {
    pub ratio: f64,
    pub target: f64,
    pub relative_error: f64,
    pub truncation_warning: Option<String>,
    #[serde(skip)]
    pub tail_fraction: f64,
}

/// `Σ_{|m|≤M, |n|≤Nt} |⟨g_mn, f⟩|² / ‖f‖²` against the frame bound `2π/(p0 q0)`.
pub fn tightness_check(f: &SampledSignal, params: &GaborParams) -> Result<TightnessReport> {
    tightness_check_scaled(f, params, 1.0)
}

/// As [`tightness_check`] with the window multiplied by `window_scale`; the
/// target becomes `window_scale²·2π/(p0 q0)`.
pub fn tightness_check_scaled(f: &SampledSignal, params: &GaborParams, window_scale: f64) -> Result<TightnessReport> {
    params.validate()?;
    let window = SampledSignal::window(params).scale(window_scale);
    if window.values.len() != f.values.len() || window.step != f.step {
        return Err(Error::InvalidGabor("signal is not sampled on the parameter grid".into()));
    }
    let norm_sq = f.norm_sq();
    if norm_sq <= 0.0 {
        return Err(Error::InvalidGabor("signal has zero norm".into()));
    }

    let m_max = params.m_max as i64;
    let n_max = params.n_max as i64;
    let mut total = 0.0;
    let mut tail = 0.0;
    for n in -n_max..=n_max {
        let translate = weyl_heisenberg_apply(&window, 0, n, params)?;
        // conj(g_n)·f·w on the support of g_n; modulation applied per m below
        let local: Vec<(f64, Complex64)> = translate
            .values
            .iter()
            .zip(&f.values)
            .enumerate()
            .filter(|(_, (g, _))| g.norm_sqr() > 0.0)
            .map(|(j, (g, v))| (f.position(j), g.conj() * v * f.trapezoid_weight(j)))
            .collect();
        if local.is_empty() {
            continue;
        }
        for m in -m_max..=m_max {
            let freq = m as f64 * params.p0;
            let coefficient: Complex64 = local.iter().map(|&(x, w)| Complex64::from_polar(1.0, -freq * x) * w).sum();
            let energy = coefficient.norm_sqr();
            total += energy;
            if m.abs() == m_max || n.abs() == n_max {
                tail += energy;
            }
        }
    }

    let ratio = total / norm_sq;
    let target = window_scale * window_scale * params.frame_bound();
    let tail_fraction = if total > 0.0 { tail / total } else { 0.0 };
    let truncation_warning = (tail_fraction > TAIL_WARNING_FRACTION).then(|| {
        format!("boundary coefficients carry {tail_fraction:.3e} of the energy; increase M or the grid half-width")
    });
    Ok(TightnessReport {
        ratio,
        target,
        relative_error: (ratio - target).abs() / target,
        truncation_warning,
        tail_fraction,
    })
}

/// Sum of three complex Gaussians with seeded centres, widths and phases,
/// kept well inside the grid.
pub fn random_test_signal(params: &GaborParams, seed: u64) -> Result<SampledSignal> {
    let mut rng = sampling::rng(seed);
    let q0 = params.q0;
    let reach = (params.grid_halfwidth / 3.0).min(4.0 * q0);
    let terms: Vec<(f64, f64, f64, f64, f64)> = (0..3)
        .map(|_| {
            (
                rng.random_range(-reach..reach),
                rng.random_range(0.5 * q0..2.0 * q0),
                rng.random_range(0.2..1.0),
                rng.random_range(0.0..TAU),
                rng.random_range(-0.5..0.5) * params.p0,
            )
        })
        .collect();
    SampledSignal::from_fn(params, |x| {
        terms
            .iter()
            .map(|&(centre, width, amp, phase, freq)| {
                let envelope = amp * (-0.5 * ((x - centre) / width).powi(2)).exp();
                Complex64::from_polar(envelope, phase + freq * x)
            })
            .sum()
    })
}

/// Compactly supported smooth bump `exp(-1/(1 - t²))`, `t = (x - centre)/halfwidth`.
pub fn bump_signal(params: &GaborParams, centre: f64, halfwidth: f64) -> Result<SampledSignal> {
    SampledSignal::from_fn(params, |x| {
        let t = (x - centre) / halfwidth;
        let v = if t.abs() < 1.0 { (-1.0 / (1.0 - t * t)).exp() } else { 0.0 };
        Complex64::new(v, 0.0)
    })
}

/// Largest `|Σ_k g(x - k q0)² - 1/q0|·q0` over `points` equispaced `x` in `[-3q0, 3q0]`.
pub fn partition_deviation(params: &GaborParams, points: usize) -> f64 {
    let span = 3.0 * params.q0;
    let target = 1.0 / params.q0;
    (0..points)
        .map(|i| {
            let x = -span + 2.0 * span * i as f64 / (points.max(2) - 1) as f64;
            (partition_sum(x, params) - target).abs() / target
        })
        .fold(0.0, f64::max)
}
