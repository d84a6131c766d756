//! Polynomial roots by Aberth–Ehrlich iteration.

use num_complex::Complex64;

fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots (with multiplicity) of `Σ c_j z^j`, ascending coefficients
/// with a non-zero leading term.
pub(crate) fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let degree = coeffs.len().saturating_sub(1);
    if degree == 0 {
        return Vec::new();
    }
    // Exact zero roots first.
    let lead_zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let mut roots = vec![Complex64::new(0.0, 0.0); lead_zeros];
    let trimmed = &coeffs[lead_zeros..];
    let d = trimmed.len() - 1;
    if d == 0 {
        return roots;
    }
    let lead = trimmed[d];
    let monic: Vec<Complex64> = trimmed.iter().map(|c| c / lead).collect();
    // Cauchy bound for the initial circle.
    let bound = 1.0 + monic[..d].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let radius = bound.min(1e6).max(1e-3) * 0.5;
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = horner_with_derivative(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    roots.extend(z);
    roots
}
