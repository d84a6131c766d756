//! Evaluatable entire and meromorphic function families with closed-form
//! derivatives and controlled truncation of infinite products.

mod canonical;
mod cossqrt;
mod roots;

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::numeric::{binomial, clog1p};
use crate::series::PowerSeries;

pub use canonical::MAX_FACTORS;

/// Relative distance below which a point counts as sitting on a pole.
pub const POLE_TOL: f64 = 1e-12;

/// Largest derivative order served by [`FunctionModel::derivative`].
pub const MAX_DERIVATIVE: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FuncError {
    #[error("point {z} is a pole")]
    PoleHit { z: Complex64 },
    #[error("function vanishes at {z}")]
    ZeroHit { z: Complex64 },
    #[error("infinite product needs {factors} factors, above the cap of {MAX_FACTORS}")]
    TruncationFailure { factors: u64 },
    #[error("contour quadrature did not converge")]
    QuadratureNonConvergence,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

/// Anything that can be evaluated pointwise.
pub trait Evaluate {
    fn evaluate(&self, z: Complex64) -> Result<Complex64, FuncError>;
}

impl<F> Evaluate for F
where
    F: Fn(Complex64) -> Result<Complex64, FuncError>,
{
    fn evaluate(&self, z: Complex64) -> Result<Complex64, FuncError> {
        self(z)
    }
}

#[derive(Debug, Clone)]
pub enum Kind {
    /// Ascending coefficients.
    Polynomial(Vec<Complex64>),
    /// `scale · Π(z − a)/Π(z − b)`, multiplicity by repetition.
    Rational { zeros: Vec<Complex64>, poles: Vec<Complex64>, scale: Complex64 },
    /// `e^{z^k}`.
    ExpPoly(u32),
    /// `Π_{n≥1}(1 − z/n^{1/λ})`.
    CanonicalProduct(f64),
    /// `e^{z^k} Π_{n≥1}(1 − z/n^{1/λ})`.
    ExpPolyProduct { k: u32, lambda: f64 },
    CosSqrt,
    PowerSeries(PowerSeries),
    Product(Vec<FunctionModel>),
    Quotient(Box<FunctionModel>, Box<FunctionModel>),
}

/// A concrete function with known zero/pole structure where available.
#[derive(Debug, Clone)]
pub struct FunctionModel {
    kind: Kind,
}

fn falling(k: u32, m: usize) -> f64 {
    (0..m).map(|i| (k as f64) - i as f64).product()
}

/// Complete Bell polynomials: ratios `f^{(n)}/f` from `g_m = (log f)^{(m)}`,
/// with `g[0]` unused.
fn bell_ratios(g: &[Complex64], kmax: usize) -> Vec<Complex64> {
    let mut y = vec![Complex64::new(1.0, 0.0)];
    for n in 0..kmax {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..=n {
            acc += y[n - i] * g[i + 1] * binomial(n, i);
        }
        y.push(acc);
    }
    y
}

fn check_finite(v: &[Complex64], z: Complex64) -> Result<(), FuncError> {
    if v.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        Ok(())
    } else {
        Err(FuncError::ZeroHit { z })
    }
}

/// `k`-th derivatives, `k = 0..=kmax`, by the trapezoid rule on the circle
/// `|w − z| = radius`, doubling nodes until successive estimates agree to
/// `1e-10`.
pub fn cauchy_derivatives<F>(f: F, z: Complex64, kmax: usize, radius: f64) -> Result<Vec<Complex64>, FuncError>
where
    F: Fn(Complex64) -> Result<Complex64, FuncError>,
{
    let mut n = 16usize.max(2 * kmax + 2);
    let mut samples: Vec<(f64, Complex64)> = Vec::new();
    let node = |theta: f64| -> Result<(f64, Complex64), FuncError> {
        Ok((theta, f(z + Complex64::from_polar(radius, theta))?))
    };
    for j in 0..n {
        samples.push(node(2.0 * std::f64::consts::PI * j as f64 / n as f64)?);
    }
    let coefficients = |samples: &[(f64, Complex64)]| -> Vec<Complex64> {
        let count = samples.len() as f64;
        let mut fact = 1.0;
        (0..=kmax)
            .map(|k| {
                if k > 0 {
                    fact *= k as f64;
                }
                let c: Complex64 = samples
                    .iter()
                    .map(|(t, v)| v * Complex64::from_polar(1.0, -(k as f64) * t))
                    .sum::<Complex64>()
                    / count;
                c * fact / radius.powi(k as i32)
            })
            .collect()
    };
    let mut estimate = coefficients(&samples);
    while n <= 1 << 16 {
        for j in 0..n {
            samples.push(node(2.0 * std::f64::consts::PI * (2 * j + 1) as f64 / (2 * n) as f64)?);
        }
        n *= 2;
        let next = coefficients(&samples);
        let scale = next.iter().map(|c| c.norm()).fold(1.0, f64::max);
        let change = next.iter().zip(&estimate).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        estimate = next;
        if change < 1e-10 * scale {
            return Ok(estimate);
        }
    }
    Err(FuncError::QuadratureNonConvergence)
}

impl FunctionModel {
    fn new(kind: Kind) -> Self {
        FunctionModel { kind }
    }

    /// Polynomial with ascending coefficients; trailing zeros are trimmed.
    pub fn polynomial(coeffs: Vec<Complex64>) -> Self {
        let mut c = coeffs;
        while c.len() > 1 && c.last().is_some_and(|v| v.norm() == 0.0) {
            c.pop();
        }
        if c.is_empty() {
            c.push(Complex64::new(0.0, 0.0));
        }
        Self::new(Kind::Polynomial(c))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::polynomial(vec![c])
    }

    pub fn rational(zeros: Vec<Complex64>, poles: Vec<Complex64>, scale: Complex64) -> Result<Self, FuncError> {
        if scale.norm() == 0.0 {
            return Err(FuncError::InvalidModel("rational scale must be non-zero".into()));
        }
        for a in &zeros {
            if poles.iter().any(|b| (a - b).norm() <= POLE_TOL * a.norm().max(1.0)) {
                return Err(FuncError::InvalidModel(format!("{a} is both a zero and a pole")));
            }
        }
        Ok(Self::new(Kind::Rational { zeros, poles, scale }))
    }

    pub fn exp_poly(k: u32) -> Self {
        Self::new(Kind::ExpPoly(k))
    }

    pub fn canonical_product(lambda: f64) -> Result<Self, FuncError> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(FuncError::InvalidModel(format!("lambda must lie in (0,1), got {lambda}")));
        }
        Ok(Self::new(Kind::CanonicalProduct(lambda)))
    }

    /// `e^{z^k} Π(1 − z/n^{1/λ})`.
    pub fn exp_poly_product(k: u32, lambda: f64) -> Result<Self, FuncError> {
        Self::canonical_product(lambda)?;
        Ok(Self::new(Kind::ExpPolyProduct { k, lambda }))
    }

    pub fn cos_sqrt() -> Self {
        Self::new(Kind::CosSqrt)
    }

    pub fn power_series(series: PowerSeries) -> Result<Self, FuncError> {
        if !series.is_entire() {
            return Err(FuncError::InvalidModel("only entire power series are supported".into()));
        }
        Ok(Self::new(Kind::PowerSeries(series)))
    }

    /// Product of factors. `e^{z^k}` times a canonical product collapses to
    /// [`Kind::ExpPolyProduct`].
    pub fn product(factors: Vec<FunctionModel>) -> Self {
        if let [a, b] = factors.as_slice() {
            match (&a.kind, &b.kind) {
                (Kind::ExpPoly(k), Kind::CanonicalProduct(l)) | (Kind::CanonicalProduct(l), Kind::ExpPoly(k)) => {
                    return Self::new(Kind::ExpPolyProduct { k: *k, lambda: *l });
                }
                _ => {}
            }
        }
        if factors.len() == 1 {
            return factors.into_iter().next().unwrap();
        }
        Self::new(Kind::Product(factors))
    }

    /// `numerator / denominator`; rejects shared zeros (cancellations).
    pub fn quotient(numerator: FunctionModel, denominator: FunctionModel) -> Result<Self, FuncError> {
        const CHECK_RADIUS: f64 = 1e4;
        if let (Ok(a), Ok(b)) = (numerator.zeros_within(CHECK_RADIUS), denominator.zeros_within(CHECK_RADIUS)) {
            for x in &a {
                if b.iter().any(|y| (x - y).norm() <= 1e-9 * x.norm().max(1.0)) {
                    return Err(FuncError::InvalidModel(format!("numerator and denominator share the zero {x}")));
                }
            }
        }
        Ok(Self::new(Kind::Quotient(Box::new(numerator), Box::new(denominator))))
    }

    /// `1/f`.
    pub fn reciprocal(&self) -> Result<Self, FuncError> {
        match &self.kind {
            Kind::Rational { zeros, poles, scale } => Self::rational(poles.clone(), zeros.clone(), 1.0 / scale),
            Kind::Quotient(n, d) => Self::quotient((**d).clone(), (**n).clone()),
            _ => Self::quotient(Self::constant(Complex64::new(1.0, 0.0)), self.clone()),
        }
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    /// Order `σ(f)` when analytically known.
    pub fn known_order(&self) -> Option<f64> {
        match &self.kind {
            Kind::Polynomial(_) | Kind::Rational { .. } => Some(0.0),
            Kind::ExpPoly(k) => Some(*k as f64),
            Kind::CanonicalProduct(l) => Some(*l),
            Kind::ExpPolyProduct { k, lambda } => Some((*k as f64).max(*lambda)),
            Kind::CosSqrt => Some(0.5),
            Kind::PowerSeries(s) => s.known_order(),
            Kind::Product(fs) => fs.iter().map(|f| f.known_order()).try_fold(0.0f64, |a, b| b.map(|b| a.max(b))),
            Kind::Quotient(n, d) => Some(n.known_order()?.max(d.known_order()?)),
        }
    }

    /// Exponents of convergence `(λ′, λ″)` of zeros and poles.
    pub fn known_lambda(&self) -> Option<(f64, f64)> {
        match &self.kind {
            Kind::Polynomial(_) | Kind::Rational { .. } | Kind::ExpPoly(_) => Some((0.0, 0.0)),
            Kind::CanonicalProduct(l) | Kind::ExpPolyProduct { lambda: l, .. } => Some((*l, 0.0)),
            Kind::CosSqrt => Some((0.5, 0.0)),
            Kind::PowerSeries(s) => s.degree_bound().map(|_| (0.0, 0.0)),
            Kind::Product(fs) => fs.iter().map(|f| f.known_lambda()).try_fold((0.0f64, 0.0f64), |a, b| {
                b.map(|b| (a.0.max(b.0), a.1.max(b.1)))
            }),
            Kind::Quotient(n, d) => {
                let (nz, np) = n.known_lambda()?;
                let (dz, dp) = d.known_lambda()?;
                Some((nz.max(dp), np.max(dz)))
            }
        }
    }

    pub fn is_entire(&self) -> bool {
        match &self.kind {
            Kind::Rational { poles, .. } => poles.is_empty(),
            Kind::Product(fs) => fs.iter().all(|f| f.is_entire()),
            Kind::Quotient(n, d) => n.is_entire() && matches!(d.kind, Kind::Polynomial(ref c) if c.len() == 1),
            _ => true,
        }
    }

    /// Power series about the origin, when the kind has one built in.
    pub fn series(&self) -> Option<PowerSeries> {
        match &self.kind {
            Kind::Polynomial(c) => Some(PowerSeries::from_coefficients(c.clone())),
            Kind::ExpPoly(k) if *k >= 1 => Some(PowerSeries::exp_power(*k)),
            Kind::CosSqrt => Some(PowerSeries::cos_sqrt()),
            Kind::PowerSeries(s) => Some(s.clone()),
            _ => None,
        }
    }

    fn check_poles(&self, z: Complex64) -> Result<(), FuncError> {
        match &self.kind {
            Kind::Rational { poles, .. } => {
                if poles.iter().any(|b| (z - b).norm() <= POLE_TOL * b.norm().max(1.0)) {
                    return Err(FuncError::PoleHit { z });
                }
                Ok(())
            }
            Kind::Product(fs) => fs.iter().try_for_each(|f| f.check_poles(z)),
            Kind::Quotient(n, d) => {
                n.check_poles(z)?;
                if d.evaluate(z)?.norm() == 0.0 {
                    return Err(FuncError::PoleHit { z });
                }
                d.check_poles(z)
            }
            _ => Ok(()),
        }
    }

    /// `f(z)`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64, FuncError> {
        match &self.kind {
            Kind::Polynomial(c) => Ok(c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)),
            Kind::Rational { zeros, poles, scale } => {
                self.check_poles(z)?;
                let num: Complex64 = zeros.iter().map(|a| z - a).product();
                let den: Complex64 = poles.iter().map(|b| z - b).product();
                Ok(scale * num / den)
            }
            Kind::ExpPoly(k) => Ok(z.powu(*k).exp()),
            Kind::CanonicalProduct(l) => canonical::Canonical::new(*l).value(z),
            Kind::ExpPolyProduct { k, lambda } => {
                Ok(z.powu(*k).exp() * canonical::Canonical::new(*lambda).value(z)?)
            }
            Kind::CosSqrt => Ok(cossqrt::value(z)),
            Kind::PowerSeries(s) => Ok(s.evaluate(z)),
            Kind::Product(fs) => fs.iter().map(|f| f.evaluate(z)).product(),
            Kind::Quotient(n, d) => {
                let den = d.evaluate(z)?;
                if den.norm() == 0.0 {
                    return Err(FuncError::PoleHit { z });
                }
                Ok(n.evaluate(z)? / den)
            }
        }
    }

    /// A complex logarithm of `f(z)` (branch unspecified), finite where
    /// `f(z)` itself would overflow.
    pub fn ln_value(&self, z: Complex64) -> Result<Complex64, FuncError> {
        match &self.kind {
            Kind::Polynomial(c) => {
                let v = self.evaluate(z)?;
                if v.re.is_finite() && v.im.is_finite() {
                    return Ok(v.ln());
                }
                // factor out z^d
                let d = c.len() - 1;
                let w = 1.0 / z;
                let scaled = c.iter().fold(Complex64::new(0.0, 0.0), |acc, a| acc * w + a);
                Ok(z.ln() * d as f64 + scaled.ln())
            }
            Kind::Rational { zeros, poles, scale } => {
                self.check_poles(z)?;
                Ok(scale.ln() + zeros.iter().map(|a| (z - a).ln()).sum::<Complex64>()
                    - poles.iter().map(|b| (z - b).ln()).sum::<Complex64>())
            }
            Kind::ExpPoly(k) => Ok(z.powu(*k)),
            Kind::CanonicalProduct(l) => canonical::Canonical::new(*l).ln_value(z),
            Kind::ExpPolyProduct { k, lambda } => Ok(z.powu(*k) + canonical::Canonical::new(*lambda).ln_value(z)?),
            Kind::CosSqrt => Ok(cossqrt::ln_value(z)),
            Kind::PowerSeries(s) => Ok(s.ln_evaluate(z).unwrap_or(Complex64::new(f64::NEG_INFINITY, 0.0))),
            Kind::Product(fs) => fs.iter().map(|f| f.ln_value(z)).sum(),
            Kind::Quotient(n, d) => {
                let den = d.ln_value(z)?;
                if den.re == f64::NEG_INFINITY {
                    return Err(FuncError::PoleHit { z });
                }
                Ok(n.ln_value(z)? - den)
            }
        }
    }

    /// `ln |f(z)|`.
    pub fn log_abs(&self, z: Complex64) -> Result<f64, FuncError> {
        Ok(self.ln_value(z)?.re)
    }

    /// A logarithm of `f(z+h)/f(z)`, computed from the factor structure
    /// rather than by dividing large values.
    pub fn log_shift_ratio(&self, z: Complex64, h: Complex64) -> Result<Complex64, FuncError> {
        let v = match &self.kind {
            Kind::Polynomial(_) => {
                let a = self.evaluate(z)?;
                let b = self.evaluate(z + h)?;
                if a.norm() == 0.0 {
                    return Err(FuncError::ZeroHit { z });
                }
                if b.norm() == 0.0 {
                    return Err(FuncError::ZeroHit { z: z + h });
                }
                if a.re.is_finite() && b.re.is_finite() && a.im.is_finite() && b.im.is_finite() {
                    (b / a).ln()
                } else {
                    self.ln_value(z + h)? - self.ln_value(z)?
                }
            }
            Kind::Rational { zeros, poles, .. } => {
                self.check_poles(z)?;
                self.check_poles(z + h)?;
                let mut acc = Complex64::new(0.0, 0.0);
                for a in zeros {
                    if z == *a {
                        return Err(FuncError::ZeroHit { z });
                    }
                    acc += clog1p(h / (z - a));
                }
                for b in poles {
                    acc -= clog1p(h / (z - b));
                }
                acc
            }
            Kind::ExpPoly(k) => (1..=*k as usize)
                .map(|i| z.powu(*k - i as u32) * h.powu(i as u32) * binomial(*k as usize, i))
                .sum(),
            Kind::CanonicalProduct(l) => canonical::Canonical::new(*l).log_shift_ratio(z, h)?,
            Kind::ExpPolyProduct { k, lambda } => {
                Self::exp_poly(*k).log_shift_ratio(z, h)? + canonical::Canonical::new(*lambda).log_shift_ratio(z, h)?
            }
            Kind::CosSqrt => cossqrt::log_shift_ratio(z, h)?,
            Kind::PowerSeries(_) => self.ln_value(z + h)? - self.ln_value(z)?,
            Kind::Product(fs) => fs.iter().map(|f| f.log_shift_ratio(z, h)).sum::<Result<Complex64, _>>()?,
            Kind::Quotient(n, d) => n.log_shift_ratio(z, h)? - d.log_shift_ratio(z, h)?,
        };
        if v.re.is_nan() || v.im.is_nan() || v.re == f64::INFINITY {
            return Err(FuncError::ZeroHit { z });
        }
        if v.re == f64::NEG_INFINITY {
            return Err(FuncError::ZeroHit { z: z + h });
        }
        Ok(v)
    }

    /// `f(z+h)/f(z)`.
    pub fn shift_ratio(&self, z: Complex64, h: Complex64) -> Result<Complex64, FuncError> {
        Ok(self.log_shift_ratio(z, h)?.exp())
    }

    /// `(log f)^{(m)}(z)` for `m = 1..=kmax`, for kinds whose logarithm has
    /// a closed-form expansion. Index 0 is unused.
    fn log_derivatives(&self, z: Complex64, kmax: usize) -> Option<Result<Vec<Complex64>, FuncError>> {
        let mut g = vec![Complex64::new(0.0, 0.0); kmax + 1];
        match &self.kind {
            Kind::ExpPoly(k) => {
                for (m, slot) in g.iter_mut().enumerate().skip(1) {
                    if m <= *k as usize {
                        *slot = z.powu(*k - m as u32) * falling(*k, m);
                    }
                }
                Some(Ok(g))
            }
            Kind::CanonicalProduct(l) => {
                let c = canonical::Canonical::new(*l);
                Some((1..=kmax).try_for_each(|m| {
                    g[m] = c.log_derivative(z, m as u32)?;
                    Ok(())
                }).map(|_| g))
            }
            Kind::Rational { zeros, poles, .. } => {
                if let Err(e) = self.check_poles(z) {
                    return Some(Err(e));
                }
                if zeros.contains(&z) {
                    return Some(Err(FuncError::ZeroHit { z }));
                }
                let mut fact = 1.0;
                for m in 1..=kmax {
                    if m > 1 {
                        fact *= (m - 1) as f64;
                    }
                    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
                    let s: Complex64 = zeros.iter().map(|a| (z - a).powi(-(m as i32))).sum::<Complex64>()
                        - poles.iter().map(|b| (z - b).powi(-(m as i32))).sum::<Complex64>();
                    g[m] = s * sign * fact;
                }
                Some(Ok(g))
            }
            _ => None,
        }
    }

    fn singularity_distance(&self, z: Complex64) -> f64 {
        let reach = z.norm() + 2.0;
        let zs = self.zeros_within(reach).unwrap_or_default();
        let ps = self.poles_within(reach).unwrap_or_default();
        zs.iter()
            .chain(&ps)
            .map(|a| (z - a).norm())
            .filter(|d| *d > 0.0)
            .fold(f64::INFINITY, f64::min)
    }

    fn cauchy_radius(&self, z: Complex64) -> f64 {
        (0.5 * self.singularity_distance(z)).min(1.0)
    }

    /// `[1, f′/f, f″/f, …, f^{(kmax)}/f]` at `z`.
    pub fn derivative_ratios(&self, z: Complex64, kmax: usize) -> Result<Vec<Complex64>, FuncError> {
        if kmax > MAX_DERIVATIVE {
            return Err(FuncError::Unsupported(format!("derivative order {kmax} above {MAX_DERIVATIVE}")));
        }
        let ratios = match &self.kind {
            Kind::Polynomial(c) => {
                let v = self.evaluate(z)?;
                if v.norm() == 0.0 {
                    return Err(FuncError::ZeroHit { z });
                }
                let mut coeffs = c.clone();
                let mut out = vec![Complex64::new(1.0, 0.0)];
                for _ in 0..kmax {
                    coeffs = coeffs.iter().enumerate().skip(1).map(|(i, a)| a * i as f64).collect();
                    let d = coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a);
                    out.push(d / v);
                }
                out
            }
            Kind::CosSqrt => cossqrt::derivative_ratios(z, kmax)?,
            Kind::ExpPolyProduct { k, lambda } => {
                let a = Self::exp_poly(*k).derivative_ratios(z, kmax)?;
                let b = Self::new(Kind::CanonicalProduct(*lambda)).derivative_ratios(z, kmax)?;
                leibniz(&a, &b)
            }
            Kind::PowerSeries(s) => {
                let v = s.evaluate(z);
                if v.norm() == 0.0 {
                    return Err(FuncError::ZeroHit { z });
                }
                let d = cauchy_derivatives(|w| Ok(s.evaluate(w)), z, kmax, 1.0)?;
                d.iter().map(|x| x / v).collect()
            }
            Kind::Product(fs) => {
                let mut acc = vec![Complex64::new(0.0, 0.0); kmax + 1];
                acc[0] = Complex64::new(1.0, 0.0);
                for f in fs {
                    acc = leibniz(&acc, &f.derivative_ratios(z, kmax)?);
                }
                acc
            }
            Kind::Quotient(n, d) => {
                let fr = n.derivative_ratios(z, kmax)?;
                let gr = d.derivative_ratios(z, kmax).map_err(|e| match e {
                    FuncError::ZeroHit { z } => FuncError::PoleHit { z },
                    e => e,
                })?;
                let mut h = vec![Complex64::new(1.0, 0.0)];
                for k in 1..=kmax {
                    let mut v = fr[k];
                    for i in 0..k {
                        v -= h[i] * gr[k - i] * binomial(k, i);
                    }
                    h.push(v);
                }
                h
            }
            _ => {
                let g = self.log_derivatives(z, kmax).expect("closed-form kind")?;
                bell_ratios(&g, kmax)
            }
        };
        check_finite(&ratios, z)?;
        Ok(ratios)
    }

    /// `f′(z)/f(z)`, never formed as a quotient of large values for product
    /// kinds.
    pub fn logarithmic_derivative(&self, z: Complex64) -> Result<Complex64, FuncError> {
        Ok(self.derivative_ratios(z, 1)?[1])
    }

    /// `f^{(k)}(z)`.
    pub fn derivative(&self, k: usize, z: Complex64) -> Result<Complex64, FuncError> {
        if k > MAX_DERIVATIVE {
            return Err(FuncError::Unsupported(format!("derivative order {k} above {MAX_DERIVATIVE}")));
        }
        self.check_poles(z)?;
        match &self.kind {
            Kind::Polynomial(c) => {
                let mut coeffs = c.clone();
                for _ in 0..k {
                    coeffs = coeffs.iter().enumerate().skip(1).map(|(i, a)| a * i as f64).collect();
                }
                Ok(coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a))
            }
            Kind::CosSqrt => Ok(cossqrt::derivative(z, k)),
            Kind::PowerSeries(s) => Ok(cauchy_derivatives(|w| Ok(s.evaluate(w)), z, k, 1.0)?[k]),
            _ => {
                let v = self.evaluate(z)?;
                if v.norm() > 1e-250 {
                    if let Ok(r) = self.derivative_ratios(z, k) {
                        return Ok(v * r[k]);
                    }
                }
                let radius = self.cauchy_radius(z);
                Ok(cauchy_derivatives(|w| self.evaluate(w), z, k, radius)?[k])
            }
        }
    }

    /// Zeros of modulus `≤ r`, with multiplicity.
    pub fn zeros_within(&self, r: f64) -> Result<Vec<Complex64>, FuncError> {
        Ok(match &self.kind {
            Kind::Polynomial(c) => {
                if c.len() == 1 && c[0].norm() == 0.0 {
                    return Err(FuncError::Unsupported("zero polynomial".into()));
                }
                roots::polynomial_roots(c).into_iter().filter(|a| a.norm() <= r).collect()
            }
            Kind::Rational { zeros, .. } => zeros.iter().copied().filter(|a| a.norm() <= r).collect(),
            Kind::ExpPoly(_) => Vec::new(),
            Kind::CanonicalProduct(l) | Kind::ExpPolyProduct { lambda: l, .. } => {
                let c = canonical::Canonical::new(*l);
                (1..=c.count_within(r)).map(|n| Complex64::new(c.zero(n), 0.0)).collect()
            }
            Kind::CosSqrt => (0..cossqrt::count_within(r)).map(|n| Complex64::new(cossqrt::zero(n), 0.0)).collect(),
            Kind::PowerSeries(s) => match s.degree_bound() {
                Some(_) => {
                    let c: Vec<Complex64> = (0..=s.degree_bound().unwrap()).map(|n| s.coeff(n)).collect();
                    return Self::polynomial(c).zeros_within(r);
                }
                None => return Err(FuncError::Unsupported("zeros of a general power series".into())),
            },
            Kind::Product(fs) => {
                let mut out = Vec::new();
                for f in fs {
                    out.extend(f.zeros_within(r)?);
                }
                out
            }
            Kind::Quotient(n, d) => {
                let mut out = n.zeros_within(r)?;
                out.extend(d.poles_within(r)?);
                out
            }
        })
    }

    /// Poles of modulus `≤ r`, with multiplicity.
    pub fn poles_within(&self, r: f64) -> Result<Vec<Complex64>, FuncError> {
        Ok(match &self.kind {
            Kind::Rational { poles, .. } => poles.iter().copied().filter(|b| b.norm() <= r).collect(),
            Kind::Product(fs) => {
                let mut out = Vec::new();
                for f in fs {
                    out.extend(f.poles_within(r)?);
                }
                out
            }
            Kind::Quotient(n, d) => {
                let mut out = n.poles_within(r)?;
                out.extend(d.zeros_within(r)?);
                out
            }
            _ => Vec::new(),
        })
    }
}

/// Leibniz rule on derivative ratios: `(fg)^{(k)}/(fg) = Σ C(k,i) F_i G_{k−i}`.
fn leibniz(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    (0..a.len())
        .map(|k| (0..=k).map(|i| a[i] * b[k - i] * binomial(k, i)).sum())
        .collect()
}

impl Evaluate for FunctionModel {
    fn evaluate(&self, z: Complex64) -> Result<Complex64, FuncError> {
        FunctionModel::evaluate(self, z)
    }
}

fn fmt_complex(c: &Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else if c.im < 0.0 {
        format!("{}-{}i", c.re, -c.im)
    } else {
        format!("{}+{}i", c.re, c.im)
    }
}

fn fmt_list(v: &[Complex64]) -> String {
    v.iter().map(fmt_complex).collect::<Vec<_>>().join(",")
}

impl fmt::Display for FunctionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Polynomial(c) => write!(f, "poly({})", fmt_list(c)),
            Kind::Rational { zeros, poles, scale } => {
                write!(f, "rat(zeros=[{}];poles=[{}]", fmt_list(zeros), fmt_list(poles))?;
                if *scale != Complex64::new(1.0, 0.0) {
                    write!(f, ";scale={}", fmt_complex(scale))?;
                }
                write!(f, ")")
            }
            Kind::ExpPoly(k) => write!(f, "exp(z^{k})"),
            Kind::CanonicalProduct(l) => write!(f, "prod(lambda={l})"),
            Kind::ExpPolyProduct { k, lambda } => write!(f, "exp(z^{k})*prod(lambda={lambda})"),
            Kind::CosSqrt => write!(f, "cossqrt"),
            Kind::PowerSeries(s) => write!(f, "series({})", s.name()),
            Kind::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|g| format!("({g})")).collect();
                write!(f, "{}", parts.join("*"))
            }
            Kind::Quotient(n, d) => write!(f, "({n})/({d})"),
        }
    }
}
