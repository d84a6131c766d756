use num_complex::Complex64;
use num_rational::BigRational;

use super::poly::Polynomial;
use crate::funcmodel::{Evaluate, FuncError, FunctionModel};
use crate::numeric::{binomial, cexpm1};

fn sign(k: usize, j: usize) -> f64 {
    if (k - j).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `Δ^k f(z) = Σ_{j=0}^{k} (−1)^{k−j} C(k,j) f(z + jη)`.
pub fn delta_k<E: Evaluate + ?Sized>(f: &E, z: Complex64, eta: Complex64, k: usize) -> Result<Complex64, FuncError> {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..=k {
        acc += f.evaluate(z + eta * j as f64)? * (sign(k, j) * binomial(k, j));
    }
    Ok(acc)
}

/// `[Δ^0 f/f, Δ^1 f/f, …, Δ^kmax f/f]` at `z` from shift ratios
/// `f(z + jη)/f(z)`, so nothing overflows when `f` is huge. For `k ≥ 1` the
/// binomial weights sum to zero, so the sum runs over `f(z+jη)/f(z) − 1`
/// computed by `expm1` of the log ratio.
pub fn delta_ratios(f: &FunctionModel, z: Complex64, eta: Complex64, kmax: usize) -> Result<Vec<Complex64>, FuncError> {
    let mut excess = vec![Complex64::new(0.0, 0.0)];
    for j in 1..=kmax {
        let h = eta * j as f64;
        let s = match f.log_shift_ratio(z, h) {
            Ok(l) => cexpm1(l),
            Err(FuncError::ZeroHit { z: w }) if w != z => Complex64::new(-1.0, 0.0),
            Err(e) => return Err(e),
        };
        excess.push(s);
    }
    Ok((0..=kmax)
        .map(|k| {
            if k == 0 {
                return Complex64::new(1.0, 0.0);
            }
            (1..=k).map(|j| excess[j] * (sign(k, j) * binomial(k, j))).sum()
        })
        .collect())
}

/// `Δ^k f(z)/Δ^j f(z)` sharing one stencil.
pub fn delta_quotient(
    f: &FunctionModel,
    z: Complex64,
    eta: Complex64,
    k: usize,
    j: usize,
) -> Result<Complex64, FuncError> {
    let r = delta_ratios(f, z, eta, k.max(j))?;
    if r[j].norm() == 0.0 {
        return Err(FuncError::ZeroHit { z });
    }
    Ok(r[k] / r[j])
}

/// Exact `Δ^k p` with step `η`.
pub fn delta_k_exact(p: &Polynomial, eta: &BigRational, k: usize) -> Polynomial {
    (0..k).fold(p.clone(), |acc, _| acc.difference(eta))
}
