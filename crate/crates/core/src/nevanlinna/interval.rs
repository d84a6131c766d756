use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("invalid interval [{0}, {1}]: need 0 < a < b")]
pub struct IntervalError(pub f64, pub f64);

/// Finite union of disjoint closed intervals in `(0, ∞)`, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(intervals: impl IntoIterator<Item = (f64, f64)>) -> Result<Self, IntervalError> {
        let mut v = Vec::new();
        for (a, b) in intervals {
            if !(a > 0.0 && b > a && b.is_finite()) {
                return Err(IntervalError(a, b));
            }
            v.push((a, b));
        }
        Ok(Self::normalized(v))
    }

    /// Sort and merge overlapping or touching intervals.
    fn normalized(mut v: Vec<(f64, f64)>) -> Self {
        v.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(v.len());
        for (a, b) in v {
            match out.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => out.push((a, b)),
            }
        }
        IntervalSet { intervals: out }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        Self::normalized(self.intervals.iter().chain(&other.intervals).copied().collect())
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a1, b1) = self.intervals[i];
            let (a2, b2) = other.intervals[j];
            let (a, b) = (a1.max(a2), b1.min(b2));
            if a < b {
                out.push((a, b));
            }
            if b1 < b2 {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet { intervals: out }
    }

    pub fn contains(&self, x: f64) -> bool {
        let idx = self.intervals.partition_point(|iv| iv.1 < x);
        self.intervals.get(idx).is_some_and(|&(a, b)| a <= x && x <= b)
    }

    /// `∫_{E ∩ (1,∞)} dr/r`.
    pub fn log_measure(&self) -> f64 {
        self.intervals
            .iter()
            .filter(|iv| iv.1 > 1.0)
            .map(|&(a, b)| (b / a.max(1.0)).ln())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn measures() {
        assert!((IntervalSet::new([(1.0, E)]).unwrap().log_measure() - 1.0).abs() < 1e-15);
        assert!((IntervalSet::new([(E, E.powi(3))]).unwrap().log_measure() - 2.0).abs() < 1e-15);
        assert!((IntervalSet::new([(0.5, E)]).unwrap().log_measure() - 1.0).abs() < 1e-15);
        assert_eq!(IntervalSet::new([(0.1, 0.9)]).unwrap().log_measure(), 0.0);
    }

    #[test]
    fn merge_and_intersect() {
        let a = IntervalSet::new([(3.0, 4.0), (1.0, 2.0), (1.5, 2.5)]).unwrap();
        assert_eq!(a.intervals(), &[(1.0, 2.5), (3.0, 4.0)]);
        let b = IntervalSet::new([(2.0, 3.5)]).unwrap();
        assert_eq!(a.intersection(&b).intervals(), &[(2.0, 2.5), (3.0, 3.5)]);
        assert_eq!(a.union(&b).intervals(), &[(1.0, 4.0)]);
        assert!(a.contains(2.5) && !a.contains(2.7) && a.contains(3.0));
    }

    #[test]
    fn rejects_bad_intervals() {
        assert!(IntervalSet::new([(2.0, 1.0)]).is_err());
        assert!(IntervalSet::new([(0.0, 1.0)]).is_err());
    }
}
