//! `cos √z`, entire of order 1/2 with zeros `((n + 1/2)π)²`.

use num_complex::Complex64;

use super::FuncError;
use crate::numeric::{ln_cos, tan_stable};

/// Below this modulus the even power series is used.
const SERIES_RADIUS: f64 = 25.0;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

pub(crate) fn zero(n: u64) -> f64 {
    let w = (n as f64 + 0.5) * std::f64::consts::PI;
    w * w
}

pub(crate) fn count_within(r: f64) -> u64 {
    if r < zero(0) {
        return 0;
    }
    let mut n = (r.sqrt() / std::f64::consts::PI - 0.5).floor().max(0.0) as u64;
    while n > 0 && zero(n) > r {
        n -= 1;
    }
    while zero(n + 1) <= r {
        n += 1;
    }
    n + 1
}

/// `f^{(k)}(z)` from the series `Σ (−1)^{n+k} (n+k)!/(n! (2n+2k)!) z^n`.
fn series_derivative(z: Complex64, k: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut zn = Complex64::new(1.0, 0.0);
    for n in 0..200usize {
        let c = factorial(n + k) / factorial(n) / factorial(2 * n + 2 * k);
        if !c.is_finite() || c == 0.0 {
            break;
        }
        let sign = if (n + k).is_multiple_of(2) { 1.0 } else { -1.0 };
        let term = zn * c * sign;
        acc += term;
        if n > 4 && term.norm() < 1e-18 * acc.norm().max(1e-300) {
            break;
        }
        zn *= z;
    }
    acc
}

pub(crate) fn value(z: Complex64) -> Complex64 {
    if z.norm() < SERIES_RADIUS {
        series_derivative(z, 0)
    } else {
        z.sqrt().cos()
    }
}

pub(crate) fn ln_value(z: Complex64) -> Complex64 {
    if z.norm() < SERIES_RADIUS {
        series_derivative(z, 0).ln()
    } else {
        ln_cos(z.sqrt())
    }
}

/// `log(f(z+h)/f(z))` from `cos(a+δ)/cos a = cos δ − tan a · sin δ` with
/// `a = √z` and `δ = h/(√(z+h) + √z)`, choosing the root of `z+h` closest
/// to `a`.
pub(crate) fn log_shift_ratio(z: Complex64, h: Complex64) -> Result<Complex64, FuncError> {
    let a = z.sqrt();
    let mut b = (z + h).sqrt();
    if (b * a.conj()).re < 0.0 {
        b = -b;
    }
    let delta = h / (a + b);
    if !delta.re.is_finite() || !delta.im.is_finite() {
        // z = 0 and h = 0
        return Ok(Complex64::new(0.0, 0.0));
    }
    if z.norm() < SERIES_RADIUS {
        let f0 = value(z);
        if f0.norm() < 1e-300 {
            return Err(FuncError::ZeroHit { z });
        }
        let f1 = value(z + h);
        if f1.norm() == 0.0 {
            return Err(FuncError::ZeroHit { z: z + h });
        }
        return Ok((f1 / f0).ln());
    }
    let t = tan_stable(a);
    if !t.re.is_finite() || !t.im.is_finite() {
        return Err(FuncError::ZeroHit { z });
    }
    let ratio = delta.cos() - t * delta.sin();
    if ratio.norm() == 0.0 {
        return Err(FuncError::ZeroHit { z: z + h });
    }
    Ok(ratio.ln())
}

/// Laurent polynomial in `u = √z`, as `(power, coefficient)` pairs.
type Laurent = Vec<(i32, f64)>;

fn laurent_eval(p: &Laurent, u: Complex64) -> Complex64 {
    p.iter().map(|(e, c)| u.powi(*e) * *c).sum()
}

fn laurent_diff(p: &Laurent) -> Laurent {
    p.iter().filter(|(e, _)| *e != 0).map(|(e, c)| (e - 1, c * *e as f64)).collect()
}

fn laurent_add(a: &Laurent, b: &Laurent, sign: f64) -> Laurent {
    let mut out: Vec<(i32, f64)> = a.clone();
    for (e, c) in b {
        if let Some(slot) = out.iter_mut().find(|(f, _)| f == e) {
            slot.1 += sign * c;
        } else {
            out.push((*e, sign * c));
        }
    }
    out.retain(|(_, c)| *c != 0.0);
    out
}

fn laurent_shift_half(p: &Laurent) -> Laurent {
    // divide by 2u
    p.iter().map(|(e, c)| (e - 1, c / 2.0)).collect()
}

/// Ratios `f^{(m)}(z)/f(z)` for `m = 0..=kmax`.
pub(crate) fn derivative_ratios(z: Complex64, kmax: usize) -> Result<Vec<Complex64>, FuncError> {
    if z.norm() < SERIES_RADIUS {
        let f0 = series_derivative(z, 0);
        if f0.norm() < 1e-300 {
            return Err(FuncError::ZeroHit { z });
        }
        return Ok((0..=kmax).map(|k| series_derivative(z, k) / f0).collect());
    }
    let u = z.sqrt();
    let t = tan_stable(u);
    if !t.re.is_finite() || !t.im.is_finite() || t.norm() > 1e300 {
        return Err(FuncError::ZeroHit { z });
    }
    Ok(closed_form(kmax).iter().map(|(a, b)| laurent_eval(a, u) + laurent_eval(b, u) * t).collect())
}

/// `f^{(k)} = A_k(u) cos u + B_k(u) sin u`, with
/// `A_{k+1} = (A_k' + B_k)/(2u)` and `B_{k+1} = (B_k' − A_k)/(2u)`.
fn closed_form(kmax: usize) -> Vec<(Laurent, Laurent)> {
    let mut out: Vec<(Laurent, Laurent)> = vec![(vec![(0, 1.0)], vec![])];
    for _ in 0..kmax {
        let (a, b) = out.last().unwrap();
        let na = laurent_shift_half(&laurent_add(&laurent_diff(a), b, 1.0));
        let nb = laurent_shift_half(&laurent_add(&laurent_diff(b), a, -1.0));
        out.push((na, nb));
    }
    out
}

/// `f^{(k)}(z)` without dividing by `f`.
pub(crate) fn derivative(z: Complex64, k: usize) -> Complex64 {
    if z.norm() < SERIES_RADIUS {
        return series_derivative(z, k);
    }
    let u = z.sqrt();
    let (a, b) = &closed_form(k)[k];
    laurent_eval(a, u) * u.cos() + laurent_eval(b, u) * u.sin()
}
