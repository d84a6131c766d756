use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use merodiff::diffops::{self, Form};
use merodiff::funcmodel::{self, FuncError};
use merodiff::growth::{self, GrowthError};
use merodiff::harness::{self, Config, ExperimentId, HarnessError};
use merodiff::nevanlinna;
use merodiff::parse::{parse_equation, parse_function_spec};
use merodiff::polygon;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn func_error(e: FuncError) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn growth_error(e: GrowthError) -> PyErr {
    match e {
        GrowthError::InsufficientSamples(_) => value_error(e),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn harness_error(e: HarnessError) -> PyErr {
    match e {
        HarnessError::Config(_) | HarnessError::Parse(_) | HarnessError::InsufficientSamples(_) => value_error(e),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// A built-in meromorphic function, built from a spec such as
/// `"exp(z^2)*prod(lambda=0.5)"` or `"rat(zeros=[1];poles=[2])"`.
#[pyclass(name = "FunctionModel", module = "pymerodiff", frozen)]
struct PyFunctionModel {
    inner: funcmodel::FunctionModel,
}

#[pymethods]
impl PyFunctionModel {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Self { inner: parse_function_spec(spec).map_err(value_error)? })
    }

    fn evaluate(&self, z: Complex64) -> PyResult<Complex64> {
        self.inner.evaluate(z).map_err(func_error)
    }

    fn log_abs(&self, z: Complex64) -> PyResult<f64> {
        self.inner.log_abs(z).map_err(func_error)
    }

    fn shift_ratio(&self, z: Complex64, eta: Complex64) -> PyResult<Complex64> {
        self.inner.shift_ratio(z, eta).map_err(func_error)
    }

    fn logarithmic_derivative(&self, z: Complex64) -> PyResult<Complex64> {
        self.inner.logarithmic_derivative(z).map_err(func_error)
    }

    /// `[f/f, f′/f, …, f^(kmax)/f]` at `z`.
    fn derivative_ratios(&self, z: Complex64, kmax: usize) -> PyResult<Vec<Complex64>> {
        self.inner.derivative_ratios(z, kmax).map_err(func_error)
    }

    fn known_order(&self) -> Option<f64> {
        self.inner.known_order()
    }

    fn is_entire(&self) -> bool {
        self.inner.is_entire()
    }

    fn zeros_within(&self, r: f64) -> PyResult<Vec<Complex64>> {
        self.inner.zeros_within(r).map_err(func_error)
    }

    fn poles_within(&self, r: f64) -> PyResult<Vec<Complex64>> {
        self.inner.poles_within(r).map_err(func_error)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("FunctionModel('{}')", self.inner)
    }
}

#[pyfunction]
fn delta_k(f: &PyFunctionModel, z: Complex64, eta: Complex64, k: usize) -> PyResult<Complex64> {
    diffops::delta_k(&f.inner, z, eta, k).map_err(func_error)
}

/// `[Δ^0 f/f, …, Δ^kmax f/f]` at `z`, safe when `f` itself overflows.
#[pyfunction]
fn delta_ratios(f: &PyFunctionModel, z: Complex64, eta: Complex64, kmax: usize) -> PyResult<Vec<Complex64>> {
    diffops::delta_ratios(&f.inner, z, eta, kmax).map_err(func_error)
}

/// `(log μ(r), ν(r))` for a function with a built-in power series.
#[pyfunction]
fn maximal_term(f: &PyFunctionModel, r: f64) -> PyResult<(f64, u64)> {
    let s = f.inner.series().ok_or_else(|| value_error(format!("{} has no built-in power series", f.inner)))?;
    let t = growth::maximal_term(&s, r).map_err(growth_error)?;
    Ok((t.log_mu, t.nu))
}

/// `(log M(r), point where it is attained)`.
#[pyfunction]
fn log_max_modulus(f: &PyFunctionModel, r: f64) -> PyResult<(f64, Complex64)> {
    let m = growth::log_max_modulus(&f.inner, r).map_err(growth_error)?;
    Ok((m.log_m, m.point))
}

#[pyfunction]
#[pyo3(signature = (f, rmin = 10.0, rmax = 1e6, points = 48))]
fn estimate_order(f: &PyFunctionModel, rmin: f64, rmax: f64, points: usize) -> PyResult<f64> {
    if !(rmin > 0.0 && rmax >= rmin && points >= 1) {
        return Err(value_error("need 0 < rmin <= rmax and points >= 1"));
    }
    let samples = growth::sample_grid(&f.inner, &growth::geometric_grid(rmin, rmax, points)).map_err(growth_error)?;
    growth::estimate_order(&samples).map_err(growth_error)
}

/// `{"r", "n_poles", "N_poles", "m", "T"}` at radius `r`.
#[pyfunction]
fn characteristic<'py>(py: Python<'py>, f: &PyFunctionModel, r: f64) -> PyResult<Bound<'py, PyAny>> {
    let s = nevanlinna::characteristic(&f.inner, r).map_err(func_error)?;
    let v = serde_json::json!({"r": s.r, "n_poles": s.n_poles, "N_poles": s.big_n_poles, "m": s.m_f, "T": s.t_f});
    json_to_py(py, &v.to_string())
}

#[pyfunction]
fn poisson_jensen(f: &PyFunctionModel, z: Complex64, big_r: f64) -> PyResult<f64> {
    if z.norm() >= big_r {
        return Err(value_error("z must lie inside the disk"));
    }
    nevanlinna::poisson_jensen(&f.inner, z, big_r).map_err(func_error)
}

/// `(q, branch_n)` with `q = 2πi n + log(f(z+η)/f(z)) − η f′(z)/f(z)`.
#[pyfunction]
fn log_difference_error(f: &PyFunctionModel, z: Complex64, eta: Complex64) -> PyResult<(Complex64, i64)> {
    let r = nevanlinna::log_difference_error(&f.inner, z, eta).map_err(func_error)?;
    Ok((r.q(), r.branch_n))
}

/// Exclusion disks as `(center, radius)` pairs.
#[pyfunction]
fn cartan_disks(points: Vec<Complex64>, b: f64) -> PyResult<Vec<(Complex64, f64)>> {
    if points.is_empty() || !(b > 0.0) {
        return Err(value_error("need points and B > 0"));
    }
    Ok(nevanlinna::cartan_disks(&points, b).iter().map(|d| (d.center(), d.radius)).collect())
}

/// Coefficients of `(e^x − 1)^k` up to `x^order`, as exact fraction strings.
#[pyfunction]
fn operator_series(k: usize, order: usize) -> PyResult<Vec<String>> {
    if k == 0 || order < k || order > diffops::MAX_ORDER {
        return Err(value_error(format!("need 1 <= k <= order <= {}", diffops::MAX_ORDER)));
    }
    Ok(diffops::operator_series(k, order).coeffs().iter().map(|c| c.to_string()).collect())
}

/// Newton polygon and order candidates of an equation in the text format.
#[pyfunction]
#[pyo3(signature = (text, form = None))]
fn order_candidates<'py>(py: Python<'py>, text: &str, form: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let hint = match form {
        None => None,
        Some("shift") => Some(Form::Shift),
        Some("difference") => Some(Form::Difference),
        Some(other) => return Err(value_error(format!("unknown form '{other}'"))),
    };
    let eq = parse_equation(text, hint).map_err(value_error)?;
    let oc = polygon::order_candidates(&eq).map_err(value_error)?;
    json_to_py(py, &oc.to_json())
}

/// Runs one of `E1`..`E5`; `config` maps keys to values as in a config file.
#[pyfunction]
#[pyo3(signature = (id, config = None))]
fn run_experiment<'py>(
    py: Python<'py>,
    id: &str,
    config: Option<std::collections::BTreeMap<String, String>>,
) -> PyResult<Bound<'py, PyAny>> {
    let id: ExperimentId = id.parse().map_err(value_error)?;
    let mut cfg = Config::default();
    for (k, v) in config.unwrap_or_default() {
        cfg.set(&k, v).map_err(value_error)?;
    }
    let report = harness::run_experiment(id, &cfg).map_err(harness_error)?;
    json_to_py(py, &report.to_json())
}

#[pymodule]
fn pymerodiff(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFunctionModel>()?;
    m.add_function(wrap_pyfunction!(delta_k, m)?)?;
    m.add_function(wrap_pyfunction!(delta_ratios, m)?)?;
    m.add_function(wrap_pyfunction!(maximal_term, m)?)?;
    m.add_function(wrap_pyfunction!(log_max_modulus, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_order, m)?)?;
    m.add_function(wrap_pyfunction!(characteristic, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_jensen, m)?)?;
    m.add_function(wrap_pyfunction!(log_difference_error, m)?)?;
    m.add_function(wrap_pyfunction!(cartan_disks, m)?)?;
    m.add_function(wrap_pyfunction!(operator_series, m)?)?;
    m.add_function(wrap_pyfunction!(order_candidates, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    Ok(())
}
