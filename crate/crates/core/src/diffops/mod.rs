//! Difference-operator calculus: `Δ^k` evaluation, shift/difference
//! transforms of linear equations, and the formal series `(e^{ηD} − 1)^k`.

mod delta;
mod equation;
mod opseries;
mod poly;

pub use delta::{delta_k, delta_k_exact, delta_quotient, delta_ratios};
pub use equation::{EquationError, Form, LinearDifferenceEquation};
pub use opseries::{
    apply_operator_series, apply_operator_series_ratio, operator_series, operator_series_stirling, OperatorSeries,
    MAX_ORDER,
};
pub use poly::Polynomial;
