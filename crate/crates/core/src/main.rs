use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::json;

use merodiff::diffops::{delta_k, delta_ratios, operator_series, Form};
use merodiff::growth::{estimate_order, geometric_grid, sample_grid};
use merodiff::harness::{run_experiment, Config, ExperimentId};
use merodiff::nevanlinna::{characteristic, counting, Target};
use merodiff::parse::{parse_complex, parse_equation, parse_function_spec};
use merodiff::polygon::order_candidates;

#[derive(Parser)]
#[command(name = "merodiff", version, about = "Difference quotients and growth of finite-order meromorphic functions")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Shift,
    Difference,
}

#[derive(Subcommand)]
enum Command {
    /// Maximal term, central index and maximum modulus on a radius grid.
    Growth {
        spec: String,
        #[arg(long, default_value_t = 10.0)]
        rmin: f64,
        #[arg(long, default_value_t = 1e6)]
        rmax: f64,
        #[arg(long, default_value_t = 25)]
        points: usize,
    },
    /// Counting function, proximity and characteristic of the poles at one radius.
    Nevanlinna {
        spec: String,
        #[arg(long)]
        r: f64,
    },
    /// Run verification experiments (E1..E5, or `all`).
    Verify {
        #[arg(required = true)]
        ids: Vec<String>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Newton polygon and order candidates of a linear difference equation.
    Polygon {
        file: PathBuf,
        #[arg(long, value_enum)]
        form: Option<FormArg>,
    },
    /// Coefficients of Δ^k as a series in ηD.
    Opseries {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        order: usize,
    },
    /// Δ^j f(z) and Δ^j f/f against η^j f^(j)/f for j = 1..k.
    Delta {
        spec: String,
        #[arg(long)]
        z: String,
        #[arg(long, default_value = "1")]
        eta: String,
        #[arg(long)]
        k: usize,
    },
}

/// Usage errors exit with 2, computation errors and failed checks with 1.
enum Failure {
    Usage(String),
    Compute(String),
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn compute(e: impl ToString) -> Failure {
    Failure::Compute(e.to_string())
}

fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

fn cjson(z: Complex64) -> serde_json::Value {
    json!([z.re, z.im])
}

/// Rendered output and whether every check passed.
fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let json = matches!(cli.format, Format::Json);
    match &cli.command {
        Command::Growth { spec, rmin, rmax, points } => {
            let f = parse_function_spec(spec).map_err(usage)?;
            if !(*rmin > 0.0 && rmax >= rmin && *points >= 1) {
                return Err(usage("need 0 < rmin <= rmax and points >= 1"));
            }
            let samples = sample_grid(&f, &geometric_grid(*rmin, *rmax, *points)).map_err(compute)?;
            let order = estimate_order(&samples).ok();
            if json {
                let rows: Vec<_> = samples
                    .iter()
                    .map(|s| json!({"r": s.r, "log_mu": s.log_mu, "nu": s.nu, "log_m": s.log_m}))
                    .collect();
                let v = json!({"function": f.to_string(), "samples": rows, "order": order});
                return Ok((serde_json::to_string_pretty(&v).expect("plain data"), true));
            }
            let mut out = String::new();
            if let Some(o) = order {
                let _ = writeln!(out, "# order={o:.6}");
            }
            out.push_str("r,log_mu,nu,log_m\n");
            for s in &samples {
                let _ = writeln!(out, "{},{},{},{}", num(s.r), num(s.log_mu), s.nu, num(s.log_m));
            }
            Ok((out, true))
        }
        Command::Nevanlinna { spec, r } => {
            let f = parse_function_spec(spec).map_err(usage)?;
            if !(*r > 0.0 && r.is_finite()) {
                return Err(usage("r must be positive"));
            }
            let s = characteristic(&f, *r).map_err(compute)?;
            let zeros = counting(&f, *r, Target::Zeros).map_err(compute)?;
            if json {
                let v = json!({"function": f.to_string(), "r": s.r, "n_zeros": zeros, "n_poles": s.n_poles,
                    "N_poles": s.big_n_poles, "m": s.m_f, "T": s.t_f});
                return Ok((serde_json::to_string_pretty(&v).expect("plain data"), true));
            }
            Ok((
                format!(
                    "r,n_zeros,n_poles,N_poles,m,T\n{},{},{},{},{},{}\n",
                    num(s.r),
                    zeros,
                    s.n_poles,
                    num(s.big_n_poles),
                    num(s.m_f),
                    num(s.t_f)
                ),
                true,
            ))
        }
        Command::Verify { ids, config } => {
            let cfg = match config {
                Some(p) => {
                    let text = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
                    Config::parse(&text).map_err(usage)?
                }
                None => Config::default(),
            };
            let mut list = Vec::new();
            for id in ids {
                if id.eq_ignore_ascii_case("all") {
                    list.extend(ExperimentId::ALL);
                } else {
                    list.push(id.parse::<ExperimentId>().map_err(usage)?);
                }
            }
            let mut reports = Vec::new();
            for id in list {
                let report = run_experiment(id, &cfg).map_err(|e| match e {
                    merodiff::harness::HarnessError::Config(_) | merodiff::harness::HarnessError::Parse(_) => usage(e),
                    _ => compute(e),
                })?;
                eprintln!("{}", report.summary());
                reports.push(report);
            }
            let all = reports.iter().all(|r| r.passed());
            let out = if json {
                if reports.len() == 1 {
                    reports[0].to_json()
                } else {
                    serde_json::to_string_pretty(&reports).expect("plain data")
                }
            } else {
                reports.iter().map(|r| r.to_csv()).collect::<Vec<_>>().join("\n")
            };
            Ok((out, all))
        }
        Command::Polygon { file, form } => {
            let text = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let hint = form.map(|f| match f {
                FormArg::Shift => Form::Shift,
                FormArg::Difference => Form::Difference,
            });
            let eq = parse_equation(&text, hint).map_err(usage)?;
            let oc = order_candidates(&eq).map_err(usage)?;
            if json {
                return Ok((oc.to_json(), true));
            }
            let mut out = String::from("kind,value\n");
            for (j, h) in &oc.polygon.points {
                let _ = writeln!(out, "point,{j}:{h}");
            }
            for (j, h) in &oc.polygon.hull {
                let _ = writeln!(out, "hull,{j}:{h}");
            }
            for g in oc.gradient_text() {
                let _ = writeln!(out, "gradient,{g}");
            }
            for c in oc.candidate_text() {
                let _ = writeln!(out, "candidate,{c}");
            }
            let _ = writeln!(out, "gate,{:?}", oc.gate);
            Ok((out, true))
        }
        Command::Opseries { k, order } => {
            if *k == 0 {
                return Err(usage("k must be at least 1"));
            }
            if *order < *k || *order > merodiff::diffops::MAX_ORDER {
                return Err(usage(format!("need k <= order <= {}", merodiff::diffops::MAX_ORDER)));
            }
            let s = operator_series(*k, *order);
            if json {
                return Ok((serde_json::to_string_pretty(&s).expect("plain data"), true));
            }
            let mut out = String::from("m,coefficient,approx\n");
            for (m, c) in s.coeffs().iter().enumerate() {
                let approx = c.to_f64().unwrap_or(f64::NAN);
                let _ = writeln!(out, "{m},{c},{}", num(approx));
            }
            Ok((out, true))
        }
        Command::Delta { spec, z, eta, k } => {
            let f = parse_function_spec(spec).map_err(usage)?;
            let z = parse_complex(z).map_err(usage)?;
            let eta = parse_complex(eta).map_err(usage)?;
            if eta == Complex64::new(0.0, 0.0) {
                return Err(usage("eta must be non-zero"));
            }
            let ratios = delta_ratios(&f, z, eta, *k).map_err(compute)?;
            let derivs = f.derivative_ratios(z, *k).map_err(compute)?;
            let rows: Vec<(usize, Complex64, Complex64, Complex64)> = (1..=*k)
                .map(|j| {
                    let d = delta_k(&f, z, eta, j).map_err(compute)?;
                    Ok((j, d, ratios[j], eta.powu(j as u32) * derivs[j]))
                })
                .collect::<Result<_, Failure>>()?;
            if json {
                let v: Vec<_> = rows
                    .iter()
                    .map(|&(j, d, r, g)| json!({"j": j, "delta": cjson(d), "delta_ratio": cjson(r), "derivative_ratio": cjson(g)}))
                    .collect();
                let v = json!({"function": f.to_string(), "z": cjson(z), "eta": cjson(eta), "rows": v});
                return Ok((serde_json::to_string_pretty(&v).expect("plain data"), true));
            }
            let mut out =
                String::from("j,delta_re,delta_im,delta_ratio_re,delta_ratio_im,derivative_ratio_re,derivative_ratio_im\n");
            for (j, d, r, g) in rows {
                let _ = writeln!(out, "{j},{},{},{},{},{},{}", num(d.re), num(d.im), num(r.re), num(r.im), num(g.re), num(g.im));
            }
            Ok((out, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, passed)) => {
            let text = if text.ends_with('\n') { text } else { text + "\n" };
            match &cli.out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, text) {
                        eprintln!("error: {}: {e}", p.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
