//! Boutroux–Cartan exclusion disks.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: (f64, f64),
    pub radius: f64,
}

impl Disk {
    pub fn center(&self) -> Complex64 {
        Complex64::new(self.center.0, self.center.1)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center()).norm() <= self.radius
    }
}

/// Closed-disk slack for points sitting on a candidate boundary.
const SLACK: f64 = 1e-12;

/// Best disk of radius `rho` over the remaining points: centers at the
/// points themselves and at pairwise boundary intersections.
fn best_disk(points: &[Complex64], alive: &[bool], rho: f64, need: usize) -> Option<Complex64> {
    let tol = SLACK * rho.max(1.0);
    let idx: Vec<usize> = (0..points.len()).filter(|&i| alive[i]).collect();
    // points with fewer than need−1 neighbours within 2ρ cannot be covered
    let crowded: Vec<usize> = idx
        .iter()
        .copied()
        .filter(|&i| idx.iter().filter(|&&j| (points[i] - points[j]).norm() <= 2.0 * rho + tol).count() >= need)
        .collect();
    if crowded.len() < need {
        return None;
    }
    let covers = |c: Complex64| crowded.iter().filter(|&&j| (points[j] - c).norm() <= rho + tol).count() >= need;
    for &i in &crowded {
        if covers(points[i]) {
            return Some(points[i]);
        }
    }
    for (a, &i) in crowded.iter().enumerate() {
        for &j in &crowded[a + 1..] {
            let d = (points[j] - points[i]).norm();
            if d == 0.0 || d > 2.0 * rho + tol {
                continue;
            }
            let mid = (points[i] + points[j]) / 2.0;
            let h = (rho * rho - d * d / 4.0).max(0.0).sqrt();
            let n = (points[j] - points[i]) / d * Complex64::new(0.0, 1.0);
            for c in [mid + n * h, mid - n * h] {
                if covers(c) {
                    return Some(c);
                }
            }
        }
    }
    None
}

/// Disks with radii summing to `2B` outside of which the sorted distances
/// `d_1 ≤ … ≤ d_p` to the points satisfy `d_l > B·l/p`.
pub fn cartan_disks(points: &[Complex64], b: f64) -> Vec<Disk> {
    assert!(!points.is_empty() && b > 0.0);
    let p = points.len();
    let mut alive = vec![true; p];
    let mut remaining = p;
    let mut disks = Vec::new();
    while remaining > 0 {
        let mut chosen = None;
        for k in (1..=remaining).rev() {
            let rho = k as f64 * b / p as f64;
            if let Some(c) = best_disk(points, &alive, rho, k) {
                chosen = Some((k, c, rho));
                break;
            }
        }
        let (k, c, rho) = chosen.expect("k = 1 always succeeds");
        let tol = SLACK * rho.max(1.0);
        // maximality of k means the disk holds exactly k points
        let mut taken = 0;
        for i in 0..p {
            if alive[i] && (points[i] - c).norm() <= rho + tol && taken < k {
                alive[i] = false;
                taken += 1;
            }
        }
        remaining -= taken;
        disks.push(Disk { center: (c.re, c.im), radius: 2.0 * rho });
    }
    disks
}
