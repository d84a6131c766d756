//! Newton–Puiseux diagram of a linear difference equation in difference
//! form, and the order candidates it yields for entire solutions.
//!
//! A term `a_j Δ^j f` contributes `ν^j r^{A_j − j}` near a point where
//! Wiman–Valiron estimates hold, with `A_j = deg a_j`. Two terms balance
//! when `ν ≍ r^χ` with `χ = (h_j − h_k)/(k − j)`, `h_j = A_j − j`, and the
//! balancing pairs that can dominate all others are exactly the edges of
//! the upper convex hull of the points `(j, h_j)`.
//!
//! Existence results of Pólya type for first-order nonlinear equations have
//! no algorithmic content and are not covered here.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::diffops::{Form, LinearDifferenceEquation};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolygonError {
    #[error("equation needs at least two non-zero coefficients")]
    DegenerateEquation,
    #[error("polygon needs an equation in difference form")]
    WrongForm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonPolygon {
    /// `(j, A_j − j)` for every non-zero coefficient.
    pub points: Vec<(usize, i64)>,
    /// Upper hull vertices, left to right, collinear points kept.
    pub hull: Vec<(usize, i64)>,
    /// Distinct `χ`, ascending.
    pub gradients: Vec<BigRational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Gate {
    /// `max_{j≥1} deg P_j ≤ deg P_0`: every meromorphic solution has order
    /// at least one.
    OrderAtLeastOne,
    /// Entire solutions of order below one must have one of the candidate
    /// orders.
    Candidates,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderCandidates {
    pub polygon: NewtonPolygon,
    pub candidates_below_one: Vec<BigRational>,
    pub gate: Gate,
}

fn cross(o: (usize, i64), a: (usize, i64), b: (usize, i64)) -> i128 {
    let (ax, ay) = (a.0 as i128 - o.0 as i128, (a.1 - o.1) as i128);
    let (bx, by) = (b.0 as i128 - o.0 as i128, (b.1 - o.1) as i128);
    ax * by - ay * bx
}

pub fn build_polygon(eq: &LinearDifferenceEquation) -> Result<NewtonPolygon, PolygonError> {
    if eq.form() != Form::Difference {
        return Err(PolygonError::WrongForm);
    }
    let points: Vec<(usize, i64)> = eq
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(j, p)| p.degree().map(|d| (j, d as i64 - j as i64)))
        .collect();
    if points.len() < 2 {
        return Err(PolygonError::DegenerateEquation);
    }
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &p in &points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) > 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let mut gradients: Vec<BigRational> = hull
        .windows(2)
        .map(|w| BigRational::new(BigInt::from(w[0].1 - w[1].1), BigInt::from((w[1].0 - w[0].0) as i64)))
        .collect();
    gradients.sort();
    gradients.dedup();
    Ok(NewtonPolygon { points, hull, gradients })
}

/// Order gate and candidate orders in `(0, 1)`; shift-form equations are
/// converted first.
pub fn order_candidates(eq: &LinearDifferenceEquation) -> Result<OrderCandidates, PolygonError> {
    let eq = eq.to_difference();
    let polygon = build_polygon(&eq)?;
    let deg0 = eq.coeffs()[0].degree();
    let top = eq.coeffs()[1..].iter().filter_map(|p| p.degree()).max();
    let gate_holds = matches!((deg0, top), (Some(d0), Some(t)) if t <= d0);
    if gate_holds {
        return Ok(OrderCandidates { polygon, candidates_below_one: Vec::new(), gate: Gate::OrderAtLeastOne });
    }
    let one = BigRational::one();
    let candidates_below_one =
        polygon.gradients.iter().filter(|g| g.is_positive() && **g < one).cloned().collect();
    Ok(OrderCandidates { polygon, candidates_below_one, gate: Gate::Candidates })
}

fn rat_text(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Serialize for OrderCandidates {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OrderCandidates", 5)?;
        st.serialize_field("points", &self.polygon.points)?;
        st.serialize_field("hull", &self.polygon.hull)?;
        st.serialize_field("gradients", &self.polygon.gradients.iter().map(rat_text).collect::<Vec<_>>())?;
        st.serialize_field(
            "candidates_below_one",
            &self.candidates_below_one.iter().map(rat_text).collect::<Vec<_>>(),
        )?;
        st.serialize_field("gate", &self.gate)?;
        st.end()
    }
}

impl OrderCandidates {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn gradient_text(&self) -> Vec<String> {
        self.polygon.gradients.iter().map(rat_text).collect()
    }

    pub fn candidate_text(&self) -> Vec<String> {
        self.candidates_below_one.iter().map(rat_text).collect()
    }
}

/// Whether `χ = (h_j − h_k)/(k − j)` for some pair of hull points `j < k`.
pub fn realized_on_hull(polygon: &NewtonPolygon, chi: &BigRational) -> bool {
    polygon.hull.iter().enumerate().any(|(a, &(j, hj))| {
        polygon.hull[a + 1..]
            .iter()
            .any(|&(k, hk)| BigRational::new(BigInt::from(hj - hk), BigInt::from((k - j) as i64)) == *chi)
    })
}
