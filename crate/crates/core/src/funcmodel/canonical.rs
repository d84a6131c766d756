//! Genus-zero canonical product `Π_{n≥1} (1 − z/n^{1/λ})`, `0 < λ < 1`.
//!
//! The first `N` factors are summed directly. The tail is expanded as a
//! power series in `z/a_{N+1}` whose coefficients are normalised Hurwitz
//! tails `Σ_{n>N} ((N+1)/n)^s`, evaluated by Euler–Maclaurin. `N` is the
//! smallest index with `|z| ≤ a_{N+1}/2`, so the expansion converges at
//! least geometrically with ratio 1/2.

use num_complex::Complex64;

use super::FuncError;
use crate::numeric::clog1p;

/// Hard cap on directly summed factors.
pub const MAX_FACTORS: u64 = 100_000_000;

/// Certified bound on the neglected part of the tail series.
const TAIL_TOL: f64 = 1e-15;

/// Bernoulli numbers `B_2, B_4, …, B_16`.
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

#[derive(Debug, Clone, Copy)]
pub(crate) struct Canonical {
    lambda: f64,
    /// Exponent `p = 1/λ > 1` of the zeros `a_n = n^p`.
    p: f64,
}

impl Canonical {
    pub fn new(lambda: f64) -> Self {
        Canonical { lambda, p: 1.0 / lambda }
    }

    pub fn zero(&self, n: u64) -> f64 {
        (n as f64).powf(self.p)
    }

    /// Number of zeros of modulus `≤ r`.
    pub fn count_within(&self, r: f64) -> u64 {
        if r < 1.0 {
            return 0;
        }
        let mut n = r.powf(self.lambda).floor() as u64;
        while n > 0 && self.zero(n) > r {
            n -= 1;
        }
        while self.zero(n + 1) <= r {
            n += 1;
        }
        n
    }

    /// Direct-summation cutoff for a disk of radius `radius`.
    fn cutoff(&self, radius: f64) -> Result<u64, FuncError> {
        let n = (2.0 * radius).powf(self.lambda).ceil().max(8.0);
        if n > MAX_FACTORS as f64 {
            return Err(FuncError::TruncationFailure { factors: n as u64 });
        }
        let mut n = n as u64;
        while self.zero(n + 1) < 2.0 * radius {
            n += 1;
        }
        Ok(n)
    }

    /// `Σ_{n>N} ((N+1)/n)^s` for `s > 1`.
    fn normalized_tail(&self, s: f64, big_n: u64) -> f64 {
        let first = (big_n + 1) as f64;
        let k_terms = BERNOULLI.len();
        let m_start = (big_n + 1).max((2.0 * (s + 2.0 * k_terms as f64)).ceil() as u64).max(16);
        let mut sum = 0.0;
        for n in (big_n + 1)..m_start {
            sum += (first / n as f64).powf(s);
        }
        // Euler–Maclaurin for Σ_{n≥M} n^{-s}, scaled by (N+1)^s.
        let m = m_start as f64;
        let base = (first / m).powf(s);
        sum += base * (m / (s - 1.0) + 0.5);
        let mut rising = s; // s(s+1)…(s+2k−2)
        let mut mpow = 1.0 / m; // M^{-(2k-1)}
        let mut fact = 2.0; // (2k)!
        for (k, b) in BERNOULLI.iter().enumerate() {
            let k = k + 1;
            sum += base * b / fact * rising * mpow;
            rising *= (s + 2.0 * k as f64 - 1.0) * (s + 2.0 * k as f64);
            mpow /= m * m;
            fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
        }
        sum
    }

    /// Number of tail-series terms needed so the remainder stays below
    /// `TAIL_TOL`, given `ρ = |w| ≤ 1/2`.
    fn tail_terms(&self, rho: f64, big_n: u64, base_power: f64) -> usize {
        if rho == 0.0 {
            return 1;
        }
        // Z_N(s) ≤ 1 + (N+1)/(s−1)
        let zmax = 1.0 + (big_n + 1) as f64 / (base_power * self.p - 1.0).max(1e-3);
        let mut j = 1usize;
        while zmax * rho.powi(j as i32 + 1) / (1.0 - rho) * (j as f64 + 1.0).powf(base_power) > TAIL_TOL {
            j += 1;
            if j > 2000 {
                break;
            }
        }
        j
    }

    /// `Σ_{n>N} log(1 − z/a_n)`.
    fn log_tail(&self, z: Complex64, big_n: u64) -> Complex64 {
        let a = self.zero(big_n + 1);
        let w = z / a;
        let terms = self.tail_terms(w.norm(), big_n, 1.0);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut wj = Complex64::new(1.0, 0.0);
        for j in 1..=terms {
            wj *= w;
            acc -= wj / j as f64 * self.normalized_tail(j as f64 * self.p, big_n);
        }
        acc
    }

    fn check_zero(&self, z: Complex64) -> Result<(), FuncError> {
        if z.im.abs() < 1e-9 && z.re >= 0.5 {
            let n = z.re.powf(self.lambda).round().max(1.0) as u64;
            for m in n.saturating_sub(1).max(1)..=n + 1 {
                let a = self.zero(m);
                if (z - a).norm() <= 1e-12 * a {
                    return Err(FuncError::ZeroHit { z });
                }
            }
        }
        Ok(())
    }

    /// A complex logarithm of the product at `z` (may be `−∞` real part at a
    /// zero).
    pub fn ln_value(&self, z: Complex64) -> Result<Complex64, FuncError> {
        let big_n = self.cutoff(z.norm())?;
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 1..=big_n {
            acc += clog1p(-z / self.zero(n));
        }
        Ok(acc + self.log_tail(z, big_n))
    }

    pub fn value(&self, z: Complex64) -> Result<Complex64, FuncError> {
        if self.check_zero(z).is_err() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(self.ln_value(z)?.exp())
    }

    /// `log f(z+h) − log f(z)` as a sum of `log(1 − h/(a_n − z))`.
    pub fn log_shift_ratio(&self, z: Complex64, h: Complex64) -> Result<Complex64, FuncError> {
        self.check_zero(z)?;
        let zh = z + h;
        let big_n = self.cutoff(z.norm().max(zh.norm()))?;
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 1..=big_n {
            acc += clog1p(-h / (self.zero(n) - z));
        }
        Ok(acc + self.log_tail(zh, big_n) - self.log_tail(z, big_n))
    }

    /// `Σ_n (a_n − z)^{−m}` for `m ≥ 1`.
    pub fn inverse_power_sum(&self, z: Complex64, m: u32) -> Result<Complex64, FuncError> {
        self.check_zero(z)?;
        let big_n = self.cutoff(z.norm())?;
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 1..=big_n {
            acc += (self.zero(n) - z).powi(-(m as i32));
        }
        // Σ_{n>N} a_n^{-m}(1 − z/a_n)^{-m} = a_{N+1}^{-m} Σ_j C(m+j−1, j) w^j Z_N((m+j)p)
        let a = self.zero(big_n + 1);
        let w = z / a;
        let terms = self.tail_terms(w.norm(), big_n, m as f64);
        let mut tail = Complex64::new(0.0, 0.0);
        let mut wj = Complex64::new(1.0, 0.0);
        let mut binom = 1.0;
        for j in 0..=terms {
            if j > 0 {
                wj *= w;
                binom *= (m as f64 + j as f64 - 1.0) / j as f64;
            }
            tail += wj * binom * self.normalized_tail((m as usize + j) as f64 * self.p, big_n);
        }
        Ok(acc + tail * a.powi(-(m as i32)))
    }

    /// `(log f)^{(m)}(z) = −(m−1)! Σ_n (a_n − z)^{−m}`.
    pub fn log_derivative(&self, z: Complex64, m: u32) -> Result<Complex64, FuncError> {
        let fact: f64 = (1..m).map(|i| i as f64).product();
        Ok(-self.inverse_power_sum(z, m)? * fact)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_tail_matches_direct_sum() {
        let c = Canonical::new(0.5);
        // Σ_{n>10} (11/n)^2 by long direct summation with integral tail
        let mut direct = 0.0;
        let stop = 2_000_000u64;
        for n in 11..=stop {
            direct += (11.0 / n as f64).powi(2);
        }
        direct += 121.0 / (stop as f64 + 0.5);
        let em = c.normalized_tail(2.0, 10);
        assert!((em - direct).abs() < 1e-10, "{em} vs {direct}");
    }

    #[test]
    fn zero_counting() {
        let c = Canonical::new(0.5);
        assert_eq!(c.count_within(100.0), 10);
        assert_eq!(c.count_within(99.999), 9);
        assert_eq!(c.count_within(0.5), 0);
    }

    #[test]
    fn shift_ratio_consistent_with_values() {
        let c = Canonical::new(0.5);
        let z = Complex64::new(37.2, 4.0);
        let h = Complex64::new(1.0, 0.0);
        let d = c.log_shift_ratio(z, h).unwrap() - (c.ln_value(z + h).unwrap() - c.ln_value(z).unwrap());
        let d = crate::numeric::principal(d);
        assert!(d.norm() < 1e-12, "{d}");
    }
}
