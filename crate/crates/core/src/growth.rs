//! Maximal term, central index, maximum modulus, and order estimation.

use num_complex::Complex64;
use thiserror::Error;

use crate::funcmodel::{FuncError, FunctionModel};
use crate::numeric::least_squares;
use crate::series::PowerSeries;

/// Terms scanned before giving up on a central index.
pub const SCAN_CAP: usize = 10_000_000;

/// Length of the run of small decreasing terms that ends a scan.
const WINDOW: usize = 50;
/// Log-distance below the running maximum that counts as small.
const WINDOW_DROP: f64 = 50.0;

const CIRCLE_NODES: usize = 1024;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GrowthError {
    #[error("central-index search hit the cap of {SCAN_CAP} terms")]
    NonConvergence,
    #[error("order estimation needs at least 10 samples spanning 4 decades ({0})")]
    InsufficientSamples(String),
    #[error("series has no non-zero coefficients")]
    ZeroSeries,
    #[error(transparent)]
    Func(#[from] FuncError),
}

/// `μ(r) = max |a_n| r^n` in log form and the greatest maximizing index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximalTerm {
    pub log_mu: f64,
    pub nu: u64,
}

impl MaximalTerm {
    pub fn mu(&self) -> f64 {
        self.log_mu.exp()
    }
}

fn tie_tol(a: f64, b: f64) -> f64 {
    8.0 * f64::EPSILON * (a.abs() + b.abs()).max(1.0)
}

/// Maximal term and central index of an entire series at radius `r`.
pub fn maximal_term(s: &PowerSeries, r: f64) -> Result<MaximalTerm, GrowthError> {
    assert!(r > 0.0, "radius must be positive");
    let ln_r = r.ln();
    if let Some(lc) = s.log_concave() {
        // Δ(m) = ln|a_{sm}/a_{s(m−1)}| + s ln r is decreasing; the greatest
        // argmax is the last m with Δ(m) ≥ 0 (up to rounding).
        let step = lc.stride as f64 * ln_r;
        let keeps = |m: u64| {
            let lr = PowerSeries::log_ratio(&lc, m);
            lr + step >= -tie_tol(step, lr)
        };
        let mut lo = 0u64;
        let mut hi = 1u64;
        while keeps(hi) {
            lo = hi;
            hi *= 2;
            if hi > 1 << 62 {
                return Err(GrowthError::NonConvergence);
            }
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if keeps(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let n = lo as usize * lc.stride;
        let lc0 = s.log_coeff(n).ok_or(GrowthError::ZeroSeries)?;
        return Ok(MaximalTerm { log_mu: lc0.re + n as f64 * ln_r, nu: n as u64 });
    }
    let bound = s.degree_bound();
    let mut best: Option<(f64, usize)> = None;
    let mut quiet = 0usize;
    let mut prev = f64::INFINITY;
    for n in 0..=SCAN_CAP {
        if bound.is_some_and(|d| n > d) {
            break;
        }
        if let Some(lc) = s.log_coeff(n) {
            let t = lc.re + n as f64 * ln_r;
            match best {
                Some((b, _)) if t < b - tie_tol(t, b) => {}
                Some((b, _)) => best = Some((t.max(b), n)),
                None => best = Some((t, n)),
            }
            let top = best.unwrap().0;
            quiet = if t < top - WINDOW_DROP && t < prev { quiet + 1 } else { 0 };
            prev = t;
        } else if best.is_some() {
            quiet += 1;
        }
        if bound.is_none() && quiet >= WINDOW {
            let (log_mu, nu) = best.unwrap();
            return Ok(MaximalTerm { log_mu, nu: nu as u64 });
        }
    }
    match (best, bound) {
        (Some((log_mu, nu)), Some(_)) => Ok(MaximalTerm { log_mu, nu: nu as u64 }),
        (None, Some(_)) => Err(GrowthError::ZeroSeries),
        _ => Err(GrowthError::NonConvergence),
    }
}

/// `log M(r)` and a point of the circle where it is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxModulus {
    pub log_m: f64,
    pub point: Complex64,
}

/// `log max_{|z|=r} |f(z)|` by 1024-node sampling refined by golden section
/// around the best node.
pub fn log_max_modulus(f: &FunctionModel, r: f64) -> Result<MaxModulus, GrowthError> {
    let g = |theta: f64| -> Result<f64, GrowthError> {
        match f.log_abs(Complex64::from_polar(r, theta)) {
            Ok(v) if v.is_nan() => Ok(f64::NEG_INFINITY),
            Ok(v) => Ok(v),
            Err(FuncError::ZeroHit { .. }) => Ok(f64::NEG_INFINITY),
            Err(e) => Err(e.into()),
        }
    };
    let h = 2.0 * std::f64::consts::PI / CIRCLE_NODES as f64;
    let mut best = (f64::NEG_INFINITY, 0.0);
    for j in 0..CIRCLE_NODES {
        let theta = j as f64 * h;
        let v = g(theta)?;
        if v > best.0 {
            best = (v, theta);
        }
    }
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (best.1 - h, best.1 + h);
    let mut c = b - golden * (b - a);
    let mut d = a + golden * (b - a);
    let (mut gc, mut gd) = (g(c)?, g(d)?);
    while b - a > 1e-12 {
        if gc > gd {
            b = d;
            d = c;
            gd = gc;
            c = b - golden * (b - a);
            gc = g(c)?;
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + golden * (b - a);
            gd = g(d)?;
        }
    }
    for (v, t) in [(gc, c), (gd, d)] {
        if v > best.0 {
            best = (v, t);
        }
    }
    Ok(MaxModulus { log_m: best.0, point: Complex64::from_polar(r, best.1) })
}

/// `M(r, f)`; overflows to infinity where `log M` exceeds about 709.
pub fn max_modulus(f: &FunctionModel, r: f64) -> Result<f64, GrowthError> {
    Ok(log_max_modulus(f, r)?.log_m.exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthSample {
    pub r: f64,
    pub log_mu: f64,
    pub nu: u64,
    pub log_m: f64,
}

impl GrowthSample {
    pub fn mu(&self) -> f64 {
        self.log_mu.exp()
    }
}

/// `points` radii spaced geometrically from `rmin` to `rmax` inclusive.
pub fn geometric_grid(rmin: f64, rmax: f64, points: usize) -> Vec<f64> {
    assert!(rmin > 0.0 && rmax >= rmin && points >= 1);
    if points == 1 {
        return vec![rmin];
    }
    let (a, b) = (rmin.ln(), rmax.ln());
    (0..points)
        .map(|i| {
            if i == 0 {
                rmin
            } else if i + 1 == points {
                rmax
            } else {
                (a + (b - a) * i as f64 / (points - 1) as f64).exp()
            }
        })
        .collect()
}

/// Growth sample of an entire model that carries a power series.
pub fn sample(f: &FunctionModel, r: f64) -> Result<GrowthSample, GrowthError> {
    let s = f
        .series()
        .ok_or_else(|| FuncError::Unsupported(format!("{f} has no built-in power series")))?;
    let t = maximal_term(&s, r)?;
    let m = log_max_modulus(f, r)?;
    Ok(GrowthSample { r, log_mu: t.log_mu, nu: t.nu, log_m: m.log_m })
}

pub fn sample_grid(f: &FunctionModel, grid: &[f64]) -> Result<Vec<GrowthSample>, GrowthError> {
    grid.iter().map(|&r| sample(f, r)).collect()
}

/// Upper-envelope order estimate: least squares through the points
/// `(ln r, ln ν)` that maximize `ln ν − s ln r` for some slope `s`, i.e.
/// the vertices of the upper convex hull.
pub fn estimate_order(samples: &[GrowthSample]) -> Result<f64, GrowthError> {
    if samples.len() < 10 {
        return Err(GrowthError::InsufficientSamples(format!("{} samples", samples.len())));
    }
    let rmin = samples.iter().map(|s| s.r).fold(f64::INFINITY, f64::min);
    let rmax = samples.iter().map(|s| s.r).fold(0.0, f64::max);
    if (rmax / rmin).log10() < 4.0 - 1e-9 {
        return Err(GrowthError::InsufficientSamples(format!("radii span {:.3} decades", (rmax / rmin).log10())));
    }
    let mut pts: Vec<(f64, f64)> =
        samples.iter().filter(|s| s.nu >= 1).map(|s| (s.r.ln(), (s.nu as f64).ln())).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    pts.dedup_by(|b, a| {
        if a.0 == b.0 {
            a.1 = a.1.max(b.1);
            true
        } else {
            false
        }
    });
    if pts.len() < 2 {
        return Ok(0.0);
    }
    let hull = upper_hull(&pts);
    let (xs, ys): (Vec<f64>, Vec<f64>) = hull.into_iter().unzip();
    if ys.iter().all(|y| *y == ys[0]) {
        return Ok(0.0);
    }
    Ok(least_squares(&xs, &ys).0)
}

/// Upper convex hull of points sorted by `x`, collinear points retained.
fn upper_hull(pts: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross > 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}
