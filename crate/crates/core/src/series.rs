//! Power series with on-demand coefficients.
//!
//! Coefficients are exposed as complex logarithms so that series such as
//! `Σ z^n/n!` can be scanned far past the point where `1/n!` underflows.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::numeric::{ln_binomial, ln_gamma, log_sum_exp};

type CoeffFn = dyn Fn(usize) -> Complex64 + Send + Sync;

#[derive(Clone)]
enum Family {
    /// `e^{z^k}`: `a_{km} = 1/m!`.
    Exp { power: u32 },
    /// `cos √z = Σ (-1)^n z^n / (2n)!`.
    CosSqrt,
    /// `Σ z^n / (n!)^p`.
    InvFactorialPower { power: u32 },
    /// Finite coefficient list.
    Coefficients(Arc<[Complex64]>),
    /// Finite list of complex logarithms of coefficients (`None` = zero).
    LogCoefficients(Arc<[Option<Complex64>]>),
    Custom(Arc<CoeffFn>),
}

/// A power series `Σ a_n z^n` about the origin.
#[derive(Clone)]
pub struct PowerSeries {
    family: Family,
    ln_scale: Complex64,
    radius: f64,
    name: String,
}

/// Log-concave coefficient families admit a bisection search for the
/// central index. Nonzero coefficients sit at indices `stride·m`.
pub(crate) struct LogConcave {
    pub stride: usize,
    pub family_id: u8,
    pub power: u32,
}

impl PowerSeries {
    /// Series of `e^{z^k}`, `k >= 1`.
    pub fn exp_power(k: u32) -> Self {
        assert!(k >= 1, "exp_power needs k >= 1");
        let name = if k == 1 { "exp".to_string() } else { format!("exp{k}") };
        Self::from_family(Family::Exp { power: k }, name)
    }

    pub fn cos_sqrt() -> Self {
        Self::from_family(Family::CosSqrt, "cossqrt".into())
    }

    /// `Σ z^n / (n!)^p`, an entire function of order `1/p`.
    pub fn inverse_factorial_power(p: u32) -> Self {
        assert!(p >= 1);
        Self::from_family(Family::InvFactorialPower { power: p }, format!("invfact{p}"))
    }

    /// Polynomial coefficients `a_0, a_1, …`.
    pub fn from_coefficients(coeffs: Vec<Complex64>) -> Self {
        Self::from_family(Family::Coefficients(coeffs.into()), "coefficients".into())
    }

    /// Finite series given by complex logarithms of its coefficients.
    pub fn from_log_coefficients(logs: Vec<Option<Complex64>>) -> Self {
        Self::from_family(Family::LogCoefficients(logs.into()), "log-coefficients".into())
    }

    /// Arbitrary coefficient rule. The closure must be pure.
    pub fn from_fn(radius: f64, coeff: impl Fn(usize) -> Complex64 + Send + Sync + 'static) -> Self {
        let mut s = Self::from_family(Family::Custom(Arc::new(coeff)), "custom".into());
        s.radius = radius;
        s
    }

    /// Looks up one of the named built-in series.
    pub fn named(name: &str) -> Option<Self> {
        match name {
            "exp" | "exp1" => Some(Self::exp_power(1)),
            "cossqrt" => Some(Self::cos_sqrt()),
            "invfact" | "invfact1" => Some(Self::inverse_factorial_power(1)),
            _ => {
                if let Some(k) = name.strip_prefix("invfact").and_then(|s| s.parse().ok()) {
                    return (k >= 1).then(|| Self::inverse_factorial_power(k));
                }
                if let Some(k) = name.strip_prefix("exp").and_then(|s| s.parse().ok()) {
                    return (k >= 1).then(|| Self::exp_power(k));
                }
                None
            }
        }
    }

    fn from_family(family: Family, name: String) -> Self {
        PowerSeries { family, ln_scale: Complex64::new(0.0, 0.0), radius: f64::INFINITY, name }
    }

    /// The same series multiplied by a non-zero constant.
    pub fn scaled(&self, c: Complex64) -> Self {
        assert!(c.norm() > 0.0, "scale must be non-zero");
        let mut s = self.clone();
        s.ln_scale += c.ln();
        s
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn is_entire(&self) -> bool {
        self.radius.is_infinite()
    }

    /// Highest possibly non-zero index for finite series.
    pub fn degree_bound(&self) -> Option<usize> {
        match &self.family {
            Family::Coefficients(c) => Some(c.len().saturating_sub(1)),
            Family::LogCoefficients(c) => Some(c.len().saturating_sub(1)),
            _ => None,
        }
    }

    /// Order of growth when analytically known.
    pub fn known_order(&self) -> Option<f64> {
        match &self.family {
            Family::Exp { power } => Some(*power as f64),
            Family::CosSqrt => Some(0.5),
            Family::InvFactorialPower { power } => Some(1.0 / *power as f64),
            Family::Coefficients(_) => Some(0.0),
            _ => None,
        }
    }

    /// Complex logarithm of `a_n`, or `None` when `a_n = 0`.
    pub fn log_coeff(&self, n: usize) -> Option<Complex64> {
        let raw = match &self.family {
            Family::Exp { power } => {
                let k = *power as usize;
                if !n.is_multiple_of(k) {
                    return None;
                }
                Some(Complex64::new(-ln_gamma((n / k) as f64 + 1.0), 0.0))
            }
            Family::CosSqrt => {
                let phase = if n % 2 == 1 { std::f64::consts::PI } else { 0.0 };
                Some(Complex64::new(-ln_gamma(2.0 * n as f64 + 1.0), phase))
            }
            Family::InvFactorialPower { power } => {
                Some(Complex64::new(-(*power as f64) * ln_gamma(n as f64 + 1.0), 0.0))
            }
            Family::Coefficients(c) => c.get(n).filter(|a| a.norm() > 0.0).map(|a| a.ln()),
            Family::LogCoefficients(c) => c.get(n).copied().flatten(),
            Family::Custom(f) => {
                let a = f(n);
                (a.norm() > 0.0).then(|| a.ln())
            }
        };
        raw.map(|l| l + self.ln_scale)
    }

    /// `a_n` (may underflow to zero for large `n`).
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.log_coeff(n).map(|l| l.exp()).unwrap_or_default()
    }

    pub(crate) fn log_concave(&self) -> Option<LogConcave> {
        match &self.family {
            Family::Exp { power } => Some(LogConcave { stride: *power as usize, family_id: 0, power: 1 }),
            Family::CosSqrt => Some(LogConcave { stride: 1, family_id: 1, power: 1 }),
            Family::InvFactorialPower { power } => Some(LogConcave { stride: 1, family_id: 2, power: *power }),
            _ => None,
        }
    }

    /// `ln |a_{s m} / a_{s(m-1)}|` along the support of a log-concave family.
    pub(crate) fn log_ratio(lc: &LogConcave, m: u64) -> f64 {
        let m = m as f64;
        match lc.family_id {
            0 => -m.ln(),
            1 => -((2.0 * m) * (2.0 * m - 1.0)).ln(),
            _ => -(lc.power as f64) * m.ln(),
        }
    }

    /// Advisory entire-ness check: `|a_n|^{1/n}` should trend to zero along
    /// the first `terms` coefficients.
    pub fn looks_entire(&self, terms: usize) -> bool {
        let roots: Vec<f64> = (1..terms)
            .filter_map(|n| self.log_coeff(n).map(|l| (l.re / n as f64).exp()))
            .collect();
        if roots.len() < 4 {
            return true;
        }
        let q = roots.len() / 4;
        let head: f64 = roots[..q].iter().sum::<f64>() / q as f64;
        let tail: f64 = roots[roots.len() - q..].iter().sum::<f64>() / q as f64;
        tail < head || tail < 1e-3
    }

    /// Complex logarithm of `f(z)`, summed in log space. `None` when the
    /// sum vanishes.
    pub fn ln_evaluate(&self, z: Complex64) -> Option<Complex64> {
        if z.norm() == 0.0 {
            return self.log_coeff(0);
        }
        let lz = z.ln();
        let mut terms = Vec::new();
        let limit = self.degree_bound();
        let mut best = f64::NEG_INFINITY;
        let mut quiet = 0usize;
        let mut prev = f64::INFINITY;
        let mut n = 0usize;
        loop {
            if let Some(d) = limit {
                if n > d {
                    break;
                }
            }
            match self.log_coeff(n) {
                Some(lc) => {
                    let t = lc + lz * n as f64;
                    if t.re > best {
                        best = t.re;
                    }
                    if t.re < best - 50.0 && t.re < prev {
                        quiet += 1;
                    } else {
                        quiet = 0;
                    }
                    prev = t.re;
                    terms.push(t);
                }
                None => quiet += usize::from(n > 0 && best.is_finite()),
            }
            if limit.is_none() && quiet >= 50 {
                break;
            }
            n += 1;
            if n > 10_000_000 {
                break;
            }
        }
        log_sum_exp(&terms)
    }

    /// `f(z)`; overflows to infinity for very large values.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.ln_evaluate(z).map(|l| l.exp()).unwrap_or_default()
    }

    /// Power series of `Δf(z) = f(z+η) − f(z)` truncated to `len` terms:
    /// `b_n = Σ_{m>n} C(m,n) η^{m−n} a_m`.
    pub fn difference_series(&self, eta: Complex64, len: usize) -> PowerSeries {
        let leta = eta.ln();
        let cap = self.degree_bound();
        let logs = (0..len)
            .map(|n| {
                let mut terms = Vec::new();
                let mut best = f64::NEG_INFINITY;
                let mut quiet = 0usize;
                let mut m = n + 1;
                loop {
                    if let Some(d) = cap {
                        if m > d {
                            break;
                        }
                    }
                    if let Some(lc) = self.log_coeff(m) {
                        let t = lc + ln_binomial(m as u64, n as u64) + leta * (m - n) as f64;
                        best = best.max(t.re);
                        if t.re < best - 40.0 {
                            quiet += 1;
                        } else {
                            quiet = 0;
                        }
                        terms.push(t);
                    } else if best.is_finite() {
                        quiet += 1;
                    }
                    if cap.is_none() && quiet >= 50 {
                        break;
                    }
                    m += 1;
                    if m > n + 1_000_000 {
                        break;
                    }
                }
                log_sum_exp(&terms)
            })
            .collect();
        let mut s = PowerSeries::from_log_coefficients(logs);
        s.name = format!("delta[{}]", self.name);
        s
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PowerSeries")
            .field("name", &self.name)
            .field("radius", &self.radius)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_coefficients() {
        let s = PowerSeries::exp_power(1);
        assert!((s.coeff(5).re - 1.0 / 120.0).abs() < 1e-16);
        let s2 = PowerSeries::exp_power(2);
        assert_eq!(s2.coeff(3), Complex64::new(0.0, 0.0));
        assert!((s2.coeff(4).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn cos_sqrt_series_signs() {
        let s = PowerSeries::cos_sqrt();
        assert!((s.coeff(1).re + 0.5).abs() < 1e-15);
        assert!((s.coeff(2).re - 1.0 / 24.0).abs() < 1e-15);
    }

    #[test]
    fn coefficients_are_deterministic() {
        let s = PowerSeries::cos_sqrt();
        for n in 0..50 {
            assert_eq!(s.log_coeff(n), s.log_coeff(n));
        }
    }

    #[test]
    fn evaluate_exp_series() {
        let s = PowerSeries::exp_power(1);
        let z = Complex64::new(3.0, -2.0);
        assert!(((s.evaluate(z) - z.exp()) / z.exp()).norm() < 1e-13);
        let big = s.ln_evaluate(Complex64::new(800.0, 0.0)).unwrap();
        assert!((big.re - 800.0).abs() < 1e-9);
    }

    #[test]
    fn named_lookup() {
        assert!(PowerSeries::named("exp2").is_some());
        assert!(PowerSeries::named("invfact2").is_some());
        assert!(PowerSeries::named("bogus").is_none());
        assert!(PowerSeries::named("exp0").is_none());
    }

    #[test]
    fn difference_series_of_quadratic() {
        // (z+1)^2 - z^2 = 2z + 1
        let s = PowerSeries::from_coefficients(vec![0.0.into(), 0.0.into(), 1.0.into()]);
        let d = s.difference_series(Complex64::new(1.0, 0.0), 3);
        assert!((d.coeff(0).re - 1.0).abs() < 1e-14);
        assert!((d.coeff(1).re - 2.0).abs() < 1e-14);
        assert!(d.coeff(2).norm() < 1e-14);
    }

    #[test]
    fn entire_heuristic() {
        assert!(PowerSeries::exp_power(1).looks_entire(200));
        assert!(!PowerSeries::from_fn(1.0, |_| Complex64::new(1.0, 0.0)).looks_entire(200));
    }
}
