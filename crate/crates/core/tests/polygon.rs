use std::collections::BTreeSet;

use merodiff::diffops::{Form, LinearDifferenceEquation, Polynomial};
use merodiff::parse::parse_equation;
use merodiff::polygon::{build_polygon, order_candidates, realized_on_hull, Gate};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Every `χ` for which some pair `j < k` spans a line `h = h_j − χ(i − j)`
/// lying on or above all points.
fn brute_gradients(points: &[(usize, i64)]) -> BTreeSet<BigRational> {
    let mut out = BTreeSet::new();
    for (a, &(j, hj)) in points.iter().enumerate() {
        for &(k, hk) in &points[a + 1..] {
            let chi = q(hj - hk, (k - j) as i64);
            let supported = points.iter().all(|&(i, hi)| {
                let line = BigRational::from_integer(BigInt::from(hj)) - chi.clone() * q(i as i64 - j as i64, 1);
                BigRational::from_integer(BigInt::from(hi)) <= line
            });
            if supported {
                out.insert(chi);
            }
        }
    }
    out
}

fn equation(form: Form, coeffs: &[&[i64]]) -> LinearDifferenceEquation {
    LinearDifferenceEquation::new(form, coeffs.iter().map(|c| Polynomial::from_integers(c)).collect()).unwrap()
}

#[test]
fn half_order_example() {
    // z Δ²f − f = 0
    let eq = equation(Form::Difference, &[&[-1], &[], &[0, 1]]);
    let oc = order_candidates(&eq).unwrap();
    assert_eq!(oc.gate, Gate::Candidates);
    assert_eq!(oc.candidates_below_one, vec![q(1, 2)]);
    let parsed = parse_equation("(z)*D2 + (-1)*D0", None).unwrap();
    assert_eq!(order_candidates(&parsed).unwrap(), oc);
}

#[test]
fn order_at_least_one_examples() {
    // Δf + (1 − z)f = 0
    let eq = equation(Form::Difference, &[&[1, -1], &[1]]);
    assert_eq!(order_candidates(&eq).unwrap().gate, Gate::OrderAtLeastOne);
    // f(z+1) = z f(z), in shift form, converted automatically
    let gamma = equation(Form::Shift, &[&[0, -1], &[1]]);
    let oc = order_candidates(&gamma).unwrap();
    assert_eq!(oc.gate, Gate::OrderAtLeastOne);
    assert!(oc.candidates_below_one.is_empty());
    let parsed = parse_equation("Q[0] = -z\nQ[1] = 1\n", None).unwrap();
    assert_eq!(parsed, gamma);
}

#[test]
fn degenerate_and_wrong_form() {
    assert!(order_candidates(&equation(Form::Difference, &[&[1, 2]])).is_err());
    assert!(build_polygon(&equation(Form::Shift, &[&[1], &[1]])).is_err());
}

fn random_difference_equation(rng: &mut ChaCha8Rng) -> LinearDifferenceEquation {
    loop {
        let n = rng.gen_range(1..=6);
        let coeffs: Vec<Polynomial> = (0..=n)
            .map(|_| {
                if rng.gen_bool(0.25) {
                    return Polynomial::zero();
                }
                let deg = rng.gen_range(0..=6);
                let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-5..6)).collect();
                c.push(rng.gen_range(1..6));
                Polynomial::from_integers(&c)
            })
            .collect();
        let Ok(eq) = LinearDifferenceEquation::new(Form::Difference, coeffs) else {
            continue;
        };
        if eq.coeffs().iter().filter(|p| !p.is_zero()).count() >= 2 {
            return eq;
        }
    }
}

#[test]
fn gradients_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..300 {
        let eq = random_difference_equation(&mut rng);
        let poly = build_polygon(&eq).unwrap();
        let expected_points: Vec<(usize, i64)> = eq
            .coeffs()
            .iter()
            .enumerate()
            .filter_map(|(j, p)| p.degree().map(|d| (j, d as i64 - j as i64)))
            .collect();
        assert_eq!(poly.points, expected_points);
        let got: BTreeSet<BigRational> = poly.gradients.iter().cloned().collect();
        assert_eq!(got.len(), poly.gradients.len());
        assert!(poly.gradients.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(got, brute_gradients(&poly.points), "{eq}");
        for g in &poly.gradients {
            assert!(realized_on_hull(&poly, g));
        }
        let oc = order_candidates(&eq).unwrap();
        let max_high = eq.coeffs()[1..].iter().filter_map(|p| p.degree()).max();
        let deg0 = eq.coeffs()[0].degree();
        let gate_one = match (max_high, deg0) {
            (Some(h), Some(d)) => h <= d,
            _ => false,
        };
        assert_eq!(oc.gate == Gate::OrderAtLeastOne, gate_one);
        if oc.gate == Gate::Candidates {
            let want: Vec<BigRational> =
                poly.gradients.iter().filter(|g| **g > q(0, 1) && **g < q(1, 1)).cloned().collect();
            assert_eq!(oc.candidates_below_one, want);
        }
    }
}

proptest! {
    #[test]
    fn invariant_under_scaling(seed in 0u64..10_000, num in 1i64..9, den in 1i64..9, m in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eq = random_difference_equation(&mut rng);
        let scaled = eq.scaled(&q(num, den), m);
        let (a, b) = (build_polygon(&eq).unwrap(), build_polygon(&scaled).unwrap());
        prop_assert_eq!(&a.gradients, &b.gradients);
        let shifted: Vec<(usize, i64)> = a.points.iter().map(|&(j, h)| (j, h + m as i64)).collect();
        prop_assert_eq!(shifted, b.points);
        prop_assert_eq!(order_candidates(&eq).unwrap().gate, order_candidates(&eq.scaled(&q(num, den), 0)).unwrap().gate);
    }

    #[test]
    fn invariant_under_form_round_trip(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eq = random_difference_equation(&mut rng);
        let back = eq.to_shift().to_difference();
        prop_assert_eq!(order_candidates(&eq).unwrap(), order_candidates(&back).unwrap());
        prop_assert_eq!(order_candidates(&eq).unwrap(), order_candidates(&eq.to_shift()).unwrap());
    }
}
