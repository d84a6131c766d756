//! Small numerical kernels shared across modules: accurate complex
//! logarithms near one, log-space summation, log-gamma, and periodic
//! trapezoid quadrature with node doubling.

use num_complex::Complex64;
use std::f64::consts::PI;

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `ln(1 + w)` on the principal branch, accurate when `|w|` is small.
pub fn clog1p(w: Complex64) -> Complex64 {
    let x = w.re;
    let y = w.im;
    let re = 0.5 * (2.0 * x + x * x + y * y).ln_1p();
    let im = y.atan2(1.0 + x);
    Complex64::new(re, im)
}

/// `e^w − 1` without cancellation for small `w`.
pub fn cexpm1(w: Complex64) -> Complex64 {
    let (x, y) = (w.re, w.im);
    let half = (0.5 * y).sin();
    Complex64::new(x.exp_m1() * y.cos() - 2.0 * half * half, x.exp() * y.sin())
}

/// Logarithm of the gamma function for positive arguments.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `ln C(m, n)` for `0 <= n <= m`.
pub fn ln_binomial(m: u64, n: u64) -> f64 {
    debug_assert!(n <= m);
    ln_gamma(m as f64 + 1.0) - ln_gamma(n as f64 + 1.0) - ln_gamma((m - n) as f64 + 1.0)
}

/// Binomial coefficient as a float (exact for the small arguments used by
/// difference stencils).
pub fn binomial(m: usize, n: usize) -> f64 {
    if n > m {
        return 0.0;
    }
    let n = n.min(m - n);
    let mut acc = 1.0;
    for i in 0..n {
        acc = acc * (m - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// Sums `exp(t)` over complex logarithms `t` and returns a complex logarithm
/// of the total, or `None` when the sum vanishes.
pub fn log_sum_exp(terms: &[Complex64]) -> Option<Complex64> {
    let lead = terms
        .iter()
        .map(|t| t.re)
        .filter(|v| v.is_finite())
        .fold(f64::NEG_INFINITY, f64::max);
    if !lead.is_finite() {
        return None;
    }
    let sum: Complex64 = terms
        .iter()
        .filter(|t| t.re.is_finite())
        .map(|t| (t - lead).exp())
        .sum();
    if sum.norm() == 0.0 {
        None
    } else {
        Some(sum.ln() + lead)
    }
}

/// Reduces the imaginary part of a logarithm into `(-pi, pi]`.
pub fn principal(log: Complex64) -> Complex64 {
    let mut im = log.im % (2.0 * PI);
    if im > PI {
        im -= 2.0 * PI;
    } else if im <= -PI {
        im += 2.0 * PI;
    }
    Complex64::new(log.re, im)
}

/// `tan w` that stays finite for large `|Im w|`.
pub fn tan_stable(w: Complex64) -> Complex64 {
    if w.im.abs() < 1.0 {
        return w.tan();
    }
    if w.im > 0.0 {
        let e = (2.0 * I * w).exp();
        -I * (e - 1.0) / (e + 1.0)
    } else {
        let e = (-2.0 * I * w).exp();
        -I * (1.0 - e) / (1.0 + e)
    }
}

/// `ln |cos w|` without overflow for large `|Im w|`.
pub fn ln_abs_cos(w: Complex64) -> f64 {
    if w.im.abs() < 20.0 {
        return w.cos().norm().ln();
    }
    // cos w = e^{∓iw}/2 · (1 + e^{±2iw}) with the exponential of modulus < 1
    let y = w.im.abs();
    let e = if w.im > 0.0 { (2.0 * I * w).exp() } else { (-2.0 * I * w).exp() };
    y - std::f64::consts::LN_2 + (Complex64::new(1.0, 0.0) + e).norm().ln()
}

/// A complex logarithm of `cos w`, finite for large `|Im w|`.
pub fn ln_cos(w: Complex64) -> Complex64 {
    if w.im.abs() < 20.0 {
        return w.cos().ln();
    }
    if w.im > 0.0 {
        // cos w = e^{-iw}/2 · (1 + e^{2iw})
        -I * w - std::f64::consts::LN_2 + (1.0 + (2.0 * I * w).exp()).ln()
    } else {
        I * w - std::f64::consts::LN_2 + (1.0 + (-2.0 * I * w).exp()).ln()
    }
}

/// Outcome of a converged periodic trapezoid rule.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub nodes: usize,
}

/// Mean of a `2π`-periodic integrand, `(1/2π)∫_0^{2π} f(θ) dθ`, by the
/// trapezoid rule starting at `initial` nodes and doubling until two
/// successive estimates differ by less than `tol · max(1, |estimate|)`.
///
/// Returns `None` when `max_nodes` is exceeded. Integrand failures are
/// propagated.
pub fn periodic_mean<T, E, F>(
    mut f: F,
    initial: usize,
    tol: f64,
    max_nodes: usize,
    norm: impl Fn(T) -> f64,
) -> Result<Option<QuadratureResult<T>>, E>
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T>,
    F: FnMut(f64, f64) -> Result<T, E>,
{
    let mut n = initial.max(4);
    let h = 2.0 * PI / n as f64;
    let mut sum = f(0.0, h)?;
    for j in 1..n {
        sum = sum + f(j as f64 * h, h)?;
    }
    let mut estimate = sum * (1.0 / n as f64);
    while 2 * n <= max_nodes {
        let h = 2.0 * PI / (2 * n) as f64;
        for j in 0..n {
            sum = sum + f((2 * j + 1) as f64 * h, h)?;
        }
        n *= 2;
        let next = sum * (1.0 / n as f64);
        let change = norm(next - estimate);
        estimate = next;
        if change < tol * norm(next).max(1.0) {
            return Ok(Some(QuadratureResult { value: estimate, nodes: n }));
        }
    }
    Ok(None)
}

/// Ordinary least squares `y = a + b x`; returns `(slope, intercept,
/// standard error of slope)`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return (0.0, my, f64::INFINITY);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let se = if xs.len() > 2 {
        let rss: f64 = xs
            .iter()
            .zip(ys)
            .map(|(x, y)| {
                let r = y - intercept - slope * x;
                r * r
            })
            .sum();
        (rss / (n - 2.0) / sxx).sqrt()
    } else {
        f64::INFINITY
    };
    (slope, intercept, se)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cexpm1_small_and_large() {
        let w = Complex64::new(1e-12, -3e-13);
        assert!((cexpm1(w) - w).norm() < 1e-24);
        let v = Complex64::new(0.7, 2.1);
        assert!((cexpm1(v) - (v.exp() - 1.0)).norm() < 1e-15);
    }

    #[test]
    fn clog1p_matches_ln_away_from_zero() {
        let w = Complex64::new(0.3, -0.7);
        let d = clog1p(w) - (w + 1.0).ln();
        assert!(d.norm() < 1e-15);
    }

    #[test]
    fn clog1p_small_argument_is_relatively_accurate() {
        let w = Complex64::new(1e-12, 3e-13);
        let v = clog1p(w);
        let series = w - w * w / 2.0;
        assert!((v - series).norm() < 1e-27);
    }

    #[test]
    fn ln_cos_branches_agree() {
        for w in [Complex64::new(1.3, 19.5), Complex64::new(-0.4, -21.0), Complex64::new(2.0, 35.0)] {
            let direct = w.cos().ln();
            let d = principal(ln_cos(w) - direct);
            assert!(d.norm() < 1e-12, "{w}: {d}");
            assert!((ln_abs_cos(w) - w.cos().norm().ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn tan_stable_agrees_with_tan() {
        for w in [Complex64::new(0.3, 2.0), Complex64::new(-1.1, -3.5), Complex64::new(0.7, 0.2)] {
            assert!((tan_stable(w) - w.tan()).norm() < 1e-14);
        }
        assert!(tan_stable(Complex64::new(0.5, 800.0)).is_finite_pair());
    }

    trait FinitePair {
        fn is_finite_pair(&self) -> bool;
    }
    impl FinitePair for Complex64 {
        fn is_finite_pair(&self) -> bool {
            self.re.is_finite() && self.im.is_finite()
        }
    }

    #[test]
    fn periodic_mean_of_cosine_squared() {
        let r: Result<_, ()> = periodic_mean(|t, _| Ok(t.cos().powi(2)), 8, 1e-14, 1 << 12, f64::abs);
        let q = r.unwrap().unwrap();
        assert!((q.value - 0.5).abs() < 1e-14);
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(4, 0), 1.0);
        assert_eq!(binomial(3, 4), 0.0);
        assert!((ln_binomial(10, 3) - 120f64.ln()).abs() < 1e-13);
    }
}
