//! Robust log–log slope with exceptional-set masking.

use crate::nevanlinna::IntervalSet;
use crate::numeric::least_squares;

/// Fewest pairs accepted.
pub const MIN_PAIRS: usize = 20;
/// Largest fraction of points that may be masked.
pub const MAX_MASKED_FRACTION: f64 = 0.2;

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// 95% half-width from the slope's standard error.
    pub half_width: f64,
    /// One flag per input pair.
    pub masked: Vec<bool>,
    /// Union of the masked points' cells in `r`.
    pub masked_set: IntervalSet,
    /// Masking stopped at the point cap or budget, not at the threshold.
    pub saturated: bool,
}

impl SlopeFit {
    pub fn masked_log_measure(&self) -> f64 {
        self.masked_set.log_measure()
    }

    pub fn used(&self) -> usize {
        self.masked.iter().filter(|m| !**m).count()
    }
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Cell of each grid point in `log r`: bounded by midpoints to its
/// neighbours, mirrored at the ends. Input must be sorted by `x`.
fn cells(xs: &[f64]) -> Vec<(f64, f64)> {
    let n = xs.len();
    (0..n)
        .map(|i| {
            let lo = if i == 0 { xs[0] - 0.5 * (xs[1] - xs[0]) } else { 0.5 * (xs[i - 1] + xs[i]) };
            let hi = if i + 1 == n { xs[n - 1] + 0.5 * (xs[n - 1] - xs[n - 2]) } else { 0.5 * (xs[i] + xs[i + 1]) };
            (lo, hi)
        })
        .collect()
}

fn cell_measure(cell: (f64, f64)) -> f64 {
    (cell.1.max(0.0) - cell.0.max(0.0)).max(0.0)
}

/// Fit `y = a + b x` to `(ln r, ln value)` pairs after masking the largest
/// positive residuals while they exceed `3·1.4826·MAD` (at least `1e-9`),
/// stopping at 20% of points or `mask_budget` of log measure.
pub fn estimate_slope(pairs: &[(f64, f64)], mask_budget: f64) -> Option<SlopeFit> {
    if pairs.len() < MIN_PAIRS {
        return None;
    }
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by(|&a, &b| pairs[a].0.total_cmp(&pairs[b].0));
    let xs: Vec<f64> = order.iter().map(|&i| pairs[i].0).collect();
    let ys: Vec<f64> = order.iter().map(|&i| pairs[i].1).collect();
    let cell = cells(&xs);
    let n = xs.len();
    let cap = (MAX_MASKED_FRACTION * n as f64).floor() as usize;
    let mut masked = vec![false; n];
    let mut count = 0;
    let mut measure = 0.0;
    let mut saturated = false;
    let fit = |masked: &[bool]| {
        let (x, y): (Vec<f64>, Vec<f64>) = (0..n).filter(|&i| !masked[i]).map(|i| (xs[i], ys[i])).unzip();
        least_squares(&x, &y)
    };
    loop {
        let (b, a, _) = fit(&masked);
        let resid: Vec<(usize, f64)> = (0..n).filter(|&i| !masked[i]).map(|i| (i, ys[i] - a - b * xs[i])).collect();
        let mut abs: Vec<f64> = resid.iter().map(|r| r.1).collect();
        let med = median(&mut abs);
        let mut dev: Vec<f64> = resid.iter().map(|r| (r.1 - med).abs()).collect();
        let mad = median(&mut dev);
        let threshold = (3.0 * 1.4826 * mad).max(1e-9);
        let (worst, value) = resid.iter().copied().fold((usize::MAX, f64::NEG_INFINITY), |acc, r| {
            if r.1 > acc.1 {
                r
            } else {
                acc
            }
        });
        if value <= threshold {
            break;
        }
        if count + 1 > cap || measure + cell_measure(cell[worst]) > mask_budget {
            saturated = true;
            break;
        }
        masked[worst] = true;
        count += 1;
        measure += cell_measure(cell[worst]);
    }
    let (slope, intercept, se) = fit(&masked);
    let masked_set = IntervalSet::new(
        (0..n)
            .filter(|&i| masked[i])
            .map(|i| (cell[i].0.exp(), cell[i].1.exp())),
    )
    .expect("cells are ordered and positive");
    let mut flags = vec![false; n];
    for (k, &i) in order.iter().enumerate() {
        flags[i] = masked[k];
    }
    Some(SlopeFit { slope, intercept, half_width: 1.96 * se, masked: flags, masked_set, saturated })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(n: usize) -> Vec<(f64, f64)> {
        (0..n).map(|i| {
            let x = 1.0 + 0.2 * i as f64;
            (x, 3.0 - x)
        }).collect()
    }

    #[test]
    fn exact_line() {
        let fit = estimate_slope(&line(30), 2.0).unwrap();
        assert!((fit.slope + 1.0).abs() < 1e-9);
        assert!(fit.masked_set.is_empty());
    }

    #[test]
    fn spikes_are_masked() {
        let mut p = line(40);
        for i in [5, 17, 30] {
            p[i].1 += 4.0;
        }
        let fit = estimate_slope(&p, 2.0).unwrap();
        assert!((fit.slope + 1.0).abs() < 0.02);
        for i in [5, 17, 30] {
            assert!(fit.masked[i]);
            assert!(fit.masked_set.contains(p[i].0.exp()));
        }
        assert!(fit.masked_log_measure() <= 2.0);
    }

    #[test]
    fn too_few() {
        assert!(estimate_slope(&line(10), 2.0).is_none());
    }
}
