//! `Δ^k = (e^{ηD} − 1)^k = Σ_m c_m η^m D^m` with exact coefficients.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::poly::rat_to_f64;
use crate::funcmodel::{FuncError, FunctionModel};

/// Largest truncation order accepted.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSeries {
    k: usize,
    order: usize,
    /// `c_0..=c_order`.
    coeffs: Vec<BigRational>,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn check(k: usize, order: usize) {
    assert!(k >= 1, "k must be positive");
    assert!(order >= k && order <= MAX_ORDER, "need k <= order <= {MAX_ORDER}");
}

/// Coefficients of `(e^x − 1)^k` up to `x^order` by repeated truncated
/// multiplication of `Σ_{m≥1} x^m/m!`.
pub fn operator_series(k: usize, order: usize) -> OperatorSeries {
    check(k, order);
    let base: Vec<BigRational> = (0..=order)
        .map(|m| if m == 0 { BigRational::zero() } else { BigRational::new(BigInt::one(), factorial(m)) })
        .collect();
    let mut acc = vec![BigRational::zero(); order + 1];
    acc[0] = BigRational::one();
    for _ in 0..k {
        let mut next = vec![BigRational::zero(); order + 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in base.iter().enumerate().take(order + 1 - i).skip(1) {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    OperatorSeries { k, order, coeffs: acc }
}

/// Same coefficients from `c_m = k!·S(m,k)/m!` with Stirling numbers of the
/// second kind.
pub fn operator_series_stirling(k: usize, order: usize) -> OperatorSeries {
    check(k, order);
    // S(m, j) for j ≤ k by the recurrence S(m,j) = j S(m−1,j) + S(m−1,j−1)
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    let mut coeffs = vec![BigRational::zero(); order + 1];
    let kfact = factorial(k);
    for m in 1..=order {
        for j in (1..=k).rev() {
            row[j] = &row[j] * BigInt::from(j) + &row[j - 1];
        }
        row[0] = BigInt::zero();
        coeffs[m] = BigRational::new(&kfact * &row[k], factorial(m));
    }
    if k == 0 {
        coeffs[0] = BigRational::one();
    }
    OperatorSeries { k, order, coeffs }
}

impl OperatorSeries {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &BigRational {
        &self.coeffs[m]
    }
}

impl Serialize for OperatorSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let text: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let mut st = s.serialize_struct("OperatorSeries", 3)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("coefficients", &text)?;
        st.end()
    }
}

/// `Σ_m c_m η^m f^{(m)}(z)`.
pub fn apply_operator_series(
    series: &OperatorSeries,
    f: &FunctionModel,
    z: Complex64,
    eta: Complex64,
) -> Result<Complex64, FuncError> {
    let mut acc = Complex64::new(0.0, 0.0);
    for m in series.k..=series.order {
        let c = &series.coeffs[m];
        if c.is_zero() {
            continue;
        }
        acc += f.derivative(m, z)? * eta.powu(m as u32) * rat_to_f64(c);
    }
    Ok(acc)
}

/// `Σ_m c_m η^m f^{(m)}(z)/f(z)`, from derivative ratios.
pub fn apply_operator_series_ratio(
    series: &OperatorSeries,
    f: &FunctionModel,
    z: Complex64,
    eta: Complex64,
) -> Result<Complex64, FuncError> {
    let r = f.derivative_ratios(z, series.order)?;
    Ok((series.k..=series.order)
        .map(|m| r[m] * eta.powu(m as u32) * rat_to_f64(&series.coeffs[m]))
        .sum())
}
