//! Counting, proximity and characteristic functions, Poisson–Jensen
//! reconstruction, logarithmic differences with branch bookkeeping, and
//! exceptional-set measure.

mod cartan;
mod interval;

pub use cartan::{cartan_disks, Disk};
pub use interval::{IntervalError, IntervalSet};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::funcmodel::{FuncError, FunctionModel};
use crate::numeric::{periodic_mean, principal};

/// Starting node count for circle quadrature.
pub const QUAD_START: usize = 256;
/// Convergence threshold for circle quadrature.
pub const QUAD_TOL: f64 = 1e-7;
/// Node cap for circle quadrature.
pub const QUAD_MAX: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Zeros,
    Poles,
}

fn points(f: &FunctionModel, r: f64, target: Target) -> Result<Vec<Complex64>, FuncError> {
    match target {
        Target::Zeros => f.zeros_within(r),
        Target::Poles => f.poles_within(r),
    }
}

/// `n(r)`: zeros or poles in the closed disk `|w| ≤ r`, with multiplicity.
pub fn counting(f: &FunctionModel, r: f64, target: Target) -> Result<u64, FuncError> {
    Ok(points(f, r, target)?.len() as u64)
}

/// `N(r) = Σ_{0<|a|≤r} log(r/|a|) + n(0) log r`.
pub fn integrated_counting(f: &FunctionModel, r: f64, target: Target) -> Result<f64, FuncError> {
    Ok(points(f, r, target)?
        .iter()
        .map(|a| if a.norm() == 0.0 { r.ln() } else { (r / a.norm()).ln() })
        .sum())
}

/// `log|f(re^{iθ})|`, nudged by half a node spacing off zeros and poles.
fn circle_log_abs(f: &FunctionModel, r: f64, theta: f64, h: f64) -> Result<f64, FuncError> {
    for shift in [0.0, 0.5, 0.25] {
        match f.log_abs(Complex64::from_polar(r, theta + shift * h)) {
            Ok(v) if v.is_finite() => return Ok(v),
            Ok(_) | Err(FuncError::PoleHit { .. }) | Err(FuncError::ZeroHit { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(FuncError::QuadratureNonConvergence)
}

fn circle_mean<F>(mut g: F) -> Result<f64, FuncError>
where
    F: FnMut(f64, f64) -> Result<f64, FuncError>,
{
    periodic_mean(&mut g, QUAD_START, QUAD_TOL, QUAD_MAX, f64::abs)?
        .map(|q| q.value)
        .ok_or(FuncError::QuadratureNonConvergence)
}

/// `m(r, f) = (1/2π) ∫ log⁺|f(re^{iφ})| dφ`.
pub fn proximity(f: &FunctionModel, r: f64) -> Result<f64, FuncError> {
    circle_mean(|t, h| Ok(circle_log_abs(f, r, t, h)?.max(0.0)))
}

/// Mean of `log|f|` over `|w| = r` (no positive part).
pub fn circle_log_mean(f: &FunctionModel, r: f64) -> Result<f64, FuncError> {
    circle_mean(|t, h| circle_log_abs(f, r, t, h))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NevanlinnaSample {
    pub r: f64,
    pub n_poles: u64,
    pub big_n_poles: f64,
    pub m_f: f64,
    pub t_f: f64,
}

/// `T(r, f) = m(r, f) + N(r, f)`.
pub fn characteristic(f: &FunctionModel, r: f64) -> Result<NevanlinnaSample, FuncError> {
    let n_poles = counting(f, r, Target::Poles)?;
    let big_n_poles = integrated_counting(f, r, Target::Poles)?;
    let m_f = proximity(f, r)?;
    Ok(NevanlinnaSample { r, n_poles, big_n_poles, m_f, t_f: m_f + big_n_poles })
}

/// `log|f(z)|` from boundary values on `|w| = R` and the zeros and poles
/// inside: the real part of the Poisson–Jensen formula.
pub fn poisson_jensen(f: &FunctionModel, z: Complex64, big_r: f64) -> Result<f64, FuncError> {
    assert!(z.norm() < big_r, "z must lie inside the disk");
    let kernel_num = big_r * big_r - z.norm_sqr();
    let boundary = circle_mean(|t, h| {
        let w = Complex64::from_polar(big_r, t);
        let v = circle_log_abs(f, big_r, t, h)?;
        Ok(v * kernel_num / (w - z).norm_sqr())
    })?;
    let blaschke = |a: &Complex64| ((big_r * big_r - a.conj() * z) / (big_r * (z - a))).norm().ln();
    let zeros: f64 = f.zeros_within(big_r)?.iter().map(blaschke).sum();
    let poles: f64 = f.poles_within(big_r)?.iter().map(blaschke).sum();
    Ok(boundary - zeros + poles)
}

/// `q = 2πi·n + log(f(z+η)/f(z)) − η f′(z)/f(z)` with the branch integer
/// `n` minimizing `|q|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogDifferenceResult {
    pub q: (f64, f64),
    pub branch_n: i64,
}

impl LogDifferenceResult {
    pub fn q(&self) -> Complex64 {
        Complex64::new(self.q.0, self.q.1)
    }
}

pub fn log_difference_error(f: &FunctionModel, z: Complex64, eta: Complex64) -> Result<LogDifferenceResult, FuncError> {
    let log_ratio = principal(f.log_shift_ratio(z, eta)?);
    let w = log_ratio - eta * f.logarithmic_derivative(z)?;
    // |2πi n + w| is minimized exactly by rounding
    let n = (-w.im / (2.0 * PI)).round();
    let q = w + Complex64::new(0.0, 2.0 * PI * n);
    Ok(LogDifferenceResult { q: (q.re, q.im), branch_n: n as i64 })
}
