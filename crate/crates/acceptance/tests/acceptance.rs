//! Criteria 1–12 at their stated tolerances and time limits. Prints one
//! line per criterion and exits non-zero if any fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use merodiff::diffops::{
    delta_k, delta_k_exact, operator_series, operator_series_stirling, Form, LinearDifferenceEquation, Polynomial,
};
use merodiff::funcmodel::{FuncError, FunctionModel};
use merodiff::growth::{estimate_order, geometric_grid, sample_grid};
use merodiff::harness::{run_experiment, Config, ExperimentId, ExperimentReport};
use merodiff::nevanlinna::{
    cartan_disks, circle_log_mean, integrated_counting, log_difference_error, poisson_jensen, Target,
};
use merodiff::polygon::{order_candidates, Gate};
use merodiff::series::PowerSeries;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn disk_point(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::from_polar(r * rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI))
}

fn random_rational(rng: &mut ChaCha8Rng) -> FunctionModel {
    loop {
        let zeros: Vec<Complex64> = (0..rng.gen_range(0..=3)).map(|_| disk_point(rng, 10.0)).collect();
        let poles: Vec<Complex64> = (0..rng.gen_range(0..=3)).map(|_| disk_point(rng, 10.0)).collect();
        let scale = Complex64::from_polar(rng.gen_range(0.1..10.0), rng.gen_range(-PI..PI));
        if let Ok(f) = FunctionModel::rational(zeros, poles, scale) {
            return f;
        }
    }
}

fn random_builtin(rng: &mut ChaCha8Rng) -> FunctionModel {
    match rng.gen_range(0..7) {
        0 => FunctionModel::cos_sqrt(),
        1 => FunctionModel::exp_poly(rng.gen_range(1..=2)),
        2 => FunctionModel::exp_poly_product(rng.gen_range(0..=2), rng.gen_range(0.2..0.9)).unwrap(),
        3 => FunctionModel::canonical_product(rng.gen_range(0.2..0.9)).unwrap(),
        4 => random_rational(rng),
        5 => FunctionModel::polynomial((0..4).map(|_| disk_point(rng, 3.0)).collect()),
        _ => FunctionModel::power_series(PowerSeries::inverse_factorial_power(2)).unwrap(),
    }
}

fn experiment(id: ExperimentId, cfg: &Config) -> Result<ExperimentReport, String> {
    run_experiment(id, cfg).map_err(|e| format!("{id}: {e}"))
}

fn order_recovery() -> Outcome {
    let grid = geometric_grid(10.0, 1e6, 48);
    let cases = [
        (FunctionModel::exp_poly(1), 1.0, 0.05),
        (FunctionModel::cos_sqrt(), 0.5, 0.05),
        (FunctionModel::exp_poly(2), 2.0, 0.1),
        (FunctionModel::polynomial(vec![c(1.0, 0.0), c(3.0, 0.0), c(0.5, 0.0), c(2.0, 0.0)]), 0.0, 0.0),
    ];
    let mut found = Vec::new();
    for (f, sigma, tol) in cases {
        let samples = sample_grid(&f, &grid).map_err(|e| e.to_string())?;
        let est = estimate_order(&samples).map_err(|e| e.to_string())?;
        ensure((est - sigma).abs() <= tol, || format!("{f}: estimated {est}, want {sigma}±{tol}"))?;
        found.push(format!("{f}={est:.4}"));
    }
    Ok(found.join(" "))
}

fn circle_bound_e2() -> Outcome {
    let r = experiment(ExperimentId::E2, &Config::default())?;
    let slope = r.slope.unwrap();
    ensure(slope <= -0.9, || format!("slope {slope} > -0.9"))?;
    ensure(r.masked_log_measure <= 2.0, || format!("masked log measure {}", r.masked_log_measure))?;
    Ok(format!("slope {slope:.4}, masked {:.3}", r.masked_log_measure))
}

fn real_axis_e3() -> Outcome {
    let r = experiment(ExperimentId::E3, &Config::default().with("nmin", 10).with("nmax", 60))?;
    ensure(r.rows.len() == 51, || format!("{} rows", r.rows.len()))?;
    let worst = r.rows.iter().map(|row| row.value).fold(f64::INFINITY, f64::min);
    ensure(worst >= 0.9, || format!("min 16x|Δf/f − f′/f| = {worst}"))?;
    Ok(format!("min {worst:.4}"))
}

fn higher_differences_e4() -> Outcome {
    let mut found = Vec::new();
    for (k, limit) in [(2, -1.4), (3, -1.9)] {
        let r = experiment(ExperimentId::E4, &Config::default().with("k", k))?;
        let slope = r.slope.unwrap();
        ensure(slope <= limit, || format!("k={k}: slope {slope} > {limit}"))?;
        ensure(r.masked_log_measure <= 2.0, || format!("k={k}: masked log measure {}", r.masked_log_measure))?;
        found.push(format!("k={k} slope {slope:.4}"));
    }
    Ok(found.join(", "))
}

fn central_index_e5() -> Outcome {
    let r = experiment(ExperimentId::E5, &Config::default().with("r", 1e5).with("k", "1,2"))?;
    let last = r.rows.last().unwrap();
    ensure((last.r - 1e5).abs() < 1e-6, || format!("last radius {}", last.r))?;
    let theta = last.extra[3];
    ensure((theta.abs() - PI).abs() < 1e-6, || format!("max-modulus point at angle {theta}, want z = -r"))?;
    let (r1, r2) = (last.extra[0], last.extra[1]);
    ensure(r1 < 0.2 && r2 < 0.2, || format!("ratios {r1}, {r2}"))?;
    Ok(format!("ratio k=1 {r1:.2e}, k=2 {r2:.2e}"))
}

fn log_difference_sign() -> Outcome {
    // f = e^{z^0}·∏(1 − z/n²), midpoints of [n² + n/3, n² + 2n/3]
    let f = FunctionModel::exp_poly_product(0, 0.5).map_err(|e| e.to_string())?;
    let mut min_scaled = f64::INFINITY;
    let mut min_re = f64::INFINITY;
    for n in 10..=50 {
        let nf = n as f64;
        let x = nf * nf + nf / 2.0;
        let q = log_difference_error(&f, c(x, 0.0), c(1.0, 0.0)).map_err(|e| e.to_string())?.q();
        min_re = min_re.min(q.re);
        min_scaled = min_scaled.min(x * q.re);
    }
    ensure(min_re >= 0.0, || {
        format!("Re q < 0 (min Re q = {min_re:.3e}, min x·Re q = {min_scaled:.4}); the magnitude bound holds with negative sign")
    })?;
    ensure(min_scaled > 0.0, || format!("min x·Re q = {min_scaled}"))?;
    Ok(format!("min x·Re q = {min_scaled:.4}"))
}

fn operator_series_checks() -> Outcome {
    for k in 1..=10usize {
        let s = operator_series(k, k + 1);
        ensure(*s.coeff(k + 1) == q(k as i64, 2), || format!("c_{} = {} for k={k}", k + 1, s.coeff(k + 1)))?;
        for order in k..=30 {
            ensure(operator_series(k, order).coeffs() == operator_series_stirling(k, order).coeffs(), || {
                format!("paths differ at k={k}, M={order}")
            })?;
        }
    }
    let s = operator_series(1, 30);
    let mut fact = BigRational::one();
    for m in 1..=30i64 {
        fact *= q(m, 1);
        ensure(*s.coeff(m as usize) == BigRational::one() / fact.clone(), || format!("k=1, m={m}"))?;
    }
    Ok("c_{k+1} = k/2, 1/m!, paths agree".into())
}

fn random_equation(rng: &mut ChaCha8Rng) -> LinearDifferenceEquation {
    loop {
        let coeffs: Vec<Polynomial> = (0..=rng.gen_range(1..=5))
            .map(|_| Polynomial::new((0..=rng.gen_range(0..=4)).map(|_| q(rng.gen_range(-9..10), rng.gen_range(1..4))).collect()))
            .collect();
        if let Ok(eq) = LinearDifferenceEquation::new(Form::Shift, coeffs) {
            return eq;
        }
    }
}

fn polygon_checks() -> Outcome {
    let eq = |form, cs: &[&[i64]]| {
        LinearDifferenceEquation::new(form, cs.iter().map(|c| Polynomial::from_integers(c)).collect()).unwrap()
    };
    let half = order_candidates(&eq(Form::Difference, &[&[-1], &[], &[0, 1]])).map_err(|e| e.to_string())?;
    ensure(half.gate == Gate::Candidates && half.candidates_below_one == vec![q(1, 2)], || {
        format!("z·Δ²f − f = 0 gave {:?} {:?}", half.gate, half.candidate_text())
    })?;
    let first = order_candidates(&eq(Form::Difference, &[&[1, -1], &[1]])).map_err(|e| e.to_string())?;
    ensure(first.gate == Gate::OrderAtLeastOne, || "Δf + (1−z)f = 0 not gated".into())?;
    let gamma = order_candidates(&eq(Form::Shift, &[&[0, -1], &[1]])).map_err(|e| e.to_string())?;
    ensure(gamma.gate == Gate::OrderAtLeastOne, || "f(z+1) = z f(z) not gated".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let e = random_equation(&mut rng);
        let back = e.shift_to_difference().and_then(|d| d.difference_to_shift()).map_err(|x| x.to_string())?;
        ensure(back == e, || format!("round trip changed\n{e}"))?;
    }
    Ok("candidates {1/2}, two gated, 100 round trips".into())
}

fn poisson_jensen_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut done = 0;
    let mut worst: f64 = 0.0;
    while done < 100 {
        let f = random_rational(&mut rng);
        let big_r = rng.gen_range(1.0..20.0);
        let z = disk_point(&mut rng, 0.9 * big_r);
        let mut special = f.zeros_within(1e3).unwrap();
        special.extend(f.poles_within(1e3).unwrap());
        if special.iter().any(|a| (a.norm() - big_r).abs() < 0.1 || (a - z).norm() < 1e-3) {
            continue;
        }
        let want = f.evaluate(z).unwrap().norm().ln();
        let got = poisson_jensen(&f, z, big_r).map_err(|e| e.to_string())?;
        worst = worst.max((got - want).abs());
        ensure((got - want).abs() < 1e-6, || format!("{f} z={z} R={big_r}: {got} vs {want}"))?;
        done += 1;
    }
    // log|f(0)| = mean log|f| − N(R, 0) + N(R, ∞)
    let mut jensen_worst: f64 = 0.0;
    let mut checked = 0;
    while checked < 50 {
        let f = random_rational(&mut rng);
        let big_r = rng.gen_range(1.0..20.0);
        let mut special = f.zeros_within(1e3).unwrap();
        special.extend(f.poles_within(1e3).unwrap());
        if special.iter().any(|a| (a.norm() - big_r).abs() < 0.1 || a.norm() < 1e-3) {
            continue;
        }
        let mean = circle_log_mean(&f, big_r).map_err(|e| e.to_string())?;
        let rhs = mean - integrated_counting(&f, big_r, Target::Zeros).unwrap()
            + integrated_counting(&f, big_r, Target::Poles).unwrap();
        let want = f.evaluate(c(0.0, 0.0)).unwrap().norm().ln();
        jensen_worst = jensen_worst.max((rhs - want).abs());
        ensure((rhs - want).abs() < 1e-6, || format!("Jensen {f} R={big_r}: {rhs} vs {want}"))?;
        checked += 1;
    }
    Ok(format!("max error {worst:.1e}, Jensen {jensen_worst:.1e}"))
}

fn cartan_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for set in 0..100 {
        let p = rng.gen_range(1..=50);
        let spread = rng.gen_range(0.5..20.0);
        let mut points: Vec<Complex64> = Vec::with_capacity(p);
        while points.len() < p {
            if !points.is_empty() && rng.gen_bool(0.3) {
                let base = points[rng.gen_range(0..points.len())];
                points.push(base + disk_point(&mut rng, 1e-3 * spread));
            } else {
                points.push(disk_point(&mut rng, spread));
            }
        }
        let b = rng.gen_range(0.1..5.0);
        let disks = cartan_disks(&points, b);
        let total: f64 = disks.iter().map(|d| d.radius).sum();
        ensure((total - 2.0 * b).abs() <= 1e-9 * b, || format!("set {set}: radii sum {total}, want {}", 2.0 * b))?;
        let reach = points.iter().map(|z| z.norm()).fold(0.0, f64::max) + 3.0 * b;
        let mut dist = vec![0.0; p];
        let mut sampled = 0;
        while sampled < 10_000 {
            let z = c(rng.gen_range(-reach..reach), rng.gen_range(-reach..reach));
            if disks.iter().any(|d| d.contains(z)) {
                continue;
            }
            for (d, a) in dist.iter_mut().zip(&points) {
                *d = (z - a).norm();
            }
            dist.sort_by(f64::total_cmp);
            for (l, &d) in dist.iter().enumerate() {
                ensure(d > b * (l + 1) as f64 / p as f64, || format!("set {set}: z={z} l={} d={d}", l + 1))?;
            }
            sampled += 1;
        }
    }
    Ok("100 sets × 10^4 samples".into())
}

fn delta_oracle_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut compared = 0;
    for _ in 0..200 {
        let f = random_builtin(&mut rng);
        let z = disk_point(&mut rng, 10.0);
        let eta = Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(-PI..PI));
        for k in 1..=4 {
            let wrapper = |w: Complex64| -> Result<Complex64, FuncError> { Ok(f.evaluate(w + eta)? - f.evaluate(w)?) };
            let (Ok(a), Ok(b)) = (delta_k(&f, z, eta, k), delta_k(&wrapper, z, eta, k - 1)) else {
                continue;
            };
            // relative to the result, floored at the rounding level of the stencil values
            let scale = (0..=k).map(|j| f.evaluate(z + eta * j as f64).unwrap().norm()).fold(0.0, f64::max);
            ensure((a - b).norm() <= 1e-10 * a.norm().max(1e-4 * scale), || format!("{f} k={k} z={z}: {a} vs {b}"))?;
            compared += 1;
        }
    }
    for d in 0..10usize {
        let p = Polynomial::new((0..=d).map(|i| q(i as i64 * 7 - 20, 3)).collect());
        ensure(delta_k_exact(&p, &q(3, 2), d + 1).is_zero(), || format!("Δ^{} of degree {d} is non-zero", d + 1))?;
    }
    Ok(format!("{compared} comparisons, exact path vanishes"))
}

fn exp_consistency_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut done = 0;
    let mut tries = 0;
    while done < 500 {
        tries += 1;
        ensure(tries < 2000, || "too many singular draws".into())?;
        let f = random_builtin(&mut rng);
        let z = disk_point(&mut rng, 15.0);
        let eta = Complex64::from_polar(rng.gen_range(0.1..3.0), rng.gen_range(-PI..PI));
        let (Ok(a), Ok(b)) = (f.evaluate(z), f.evaluate(z + eta)) else {
            continue;
        };
        if a.norm() < 1e-200 || b.norm() < 1e-200 {
            continue;
        }
        let Ok(res) = log_difference_error(&f, z, eta) else {
            continue;
        };
        let lhs = (res.q() + eta * f.logarithmic_derivative(z).unwrap()).exp();
        let want = b / a;
        ensure((lhs - want).norm() <= 1e-9 * want.norm(), || format!("{f} z={z} η={eta}: {lhs} vs {want}"))?;
        done += 1;
    }
    let e = FunctionModel::exp_poly(1);
    for _ in 0..100 {
        let z = disk_point(&mut rng, 1e3);
        let eta = Complex64::from_polar(rng.gen_range(0.1..3.0), rng.gen_range(-PI..PI));
        let q = log_difference_error(&e, z, eta).map_err(|x| x.to_string())?.q();
        ensure(q.norm() < 1e-12, || format!("e^z at z={z}: q = {q}"))?;
    }
    Ok("500 draws, e^z gives q = 0".into())
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome, Option<f64>); 12] = [
        (1, "order recovery", order_recovery, Some(30.0)),
        (2, "difference quotient on circles (E2)", circle_bound_e2, Some(60.0)),
        (3, "real-axis lower bound (E3)", real_axis_e3, Some(10.0)),
        (4, "higher differences on circles (E4)", higher_differences_e4, Some(120.0)),
        (5, "central-index asymptotics (E5)", central_index_e5, Some(60.0)),
        (6, "sign of the logarithmic difference error (E1)", log_difference_sign, Some(120.0)),
        (7, "operator series", operator_series_checks, Some(1.0)),
        (8, "Newton polygon", polygon_checks, Some(1.0)),
        (9, "Poisson–Jensen and Jensen", poisson_jensen_checks, Some(30.0)),
        (10, "Cartan disks", cartan_checks, Some(60.0)),
        (11, "difference oracles", delta_oracle_checks, None),
        (12, "logarithmic difference consistency", exp_consistency_checks, None),
    ];
    let mut failed = Vec::new();
    for (n, name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if secs > l => Err(format!("took {secs:.1}s, limit {l}s")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS  {name}: {detail} [{secs:.2}s]"),
            Err(why) => {
                println!("criterion {n}: FAIL  {name}: {why} [{secs:.2}s]");
                failed.push(n);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 12 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
