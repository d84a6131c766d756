use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// `Σ Q_j(z) y(z + jη) = 0`.
    Shift,
    /// `Σ P_j(z) Δ^j y(z) = 0`.
    Difference,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Shift => "shift",
            Form::Difference => "difference",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EquationError {
    #[error("equation has no non-zero coefficient")]
    Empty,
    #[error("expected an equation in {expected} form")]
    WrongForm { expected: Form },
}

/// Linear difference equation with polynomial coefficients; index `j` is
/// the shift amount or the difference order.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearDifferenceEquation {
    form: Form,
    coeffs: Vec<Polynomial>,
    step: Complex64,
}

fn binomial_big(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl LinearDifferenceEquation {
    /// Trailing zero coefficients are dropped; the step defaults to 1.
    pub fn new(form: Form, mut coeffs: Vec<Polynomial>) -> Result<Self, EquationError> {
        while coeffs.last().is_some_and(|p| p.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(EquationError::Empty);
        }
        Ok(LinearDifferenceEquation { form, coeffs, step: Complex64::new(1.0, 0.0) })
    }

    pub fn with_step(mut self, step: Complex64) -> Self {
        self.step = step;
        self
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn step(&self) -> Complex64 {
        self.step
    }

    /// Order `n`: index of the top coefficient.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `P_j = Σ_{L≥j} C(L,j) Q_L`, from `y(z+L) = Σ_j C(L,j) Δ^j y(z)`.
    pub fn shift_to_difference(&self) -> Result<Self, EquationError> {
        if self.form != Form::Shift {
            return Err(EquationError::WrongForm { expected: Form::Shift });
        }
        Ok(self.transform(Form::Difference, false))
    }

    /// `Q_L = Σ_{j≥L} (−1)^{j−L} C(j,L) P_j`, from
    /// `Δ^j y(z) = Σ_L (−1)^{j−L} C(j,L) y(z+L)`.
    pub fn difference_to_shift(&self) -> Result<Self, EquationError> {
        if self.form != Form::Difference {
            return Err(EquationError::WrongForm { expected: Form::Difference });
        }
        Ok(self.transform(Form::Shift, true))
    }

    /// Difference form, converting if needed.
    pub fn to_difference(&self) -> Self {
        match self.form {
            Form::Difference => self.clone(),
            Form::Shift => self.transform(Form::Difference, false),
        }
    }

    pub fn to_shift(&self) -> Self {
        match self.form {
            Form::Shift => self.clone(),
            Form::Difference => self.transform(Form::Shift, true),
        }
    }

    fn transform(&self, form: Form, alternate: bool) -> Self {
        let n = self.coeffs.len();
        let coeffs = (0..n)
            .map(|j| {
                (j..n).fold(Polynomial::zero(), |acc, l| {
                    let mut c = binomial_big(l, j);
                    if alternate && (l - j) % 2 == 1 {
                        c = -c;
                    }
                    &acc + &self.coeffs[l].scale(&BigRational::from_integer(c))
                })
            })
            .collect();
        let mut eq = Self::new(form, coeffs).expect("top coefficient is preserved");
        eq.step = self.step;
        eq
    }

    /// Multiply every coefficient by `c z^m`.
    pub fn scaled(&self, c: &BigRational, m: usize) -> Self {
        assert!(!c.is_zero());
        let coeffs = self.coeffs.iter().map(|p| p.scale(c).shift_up(m)).collect();
        LinearDifferenceEquation { form: self.form, coeffs, step: self.step }
    }
}

impl fmt::Display for LinearDifferenceEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.form {
            Form::Shift => 'Q',
            Form::Difference => 'P',
        };
        for (j, p) in self.coeffs.iter().enumerate() {
            writeln!(f, "{letter}[{j}] = {p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_recurrence_to_difference() {
        // y(z+1) − z y(z) = 0
        let eq = LinearDifferenceEquation::new(
            Form::Shift,
            vec![Polynomial::from_integers(&[0, -1]), Polynomial::from_integers(&[1])],
        )
        .unwrap();
        let d = eq.shift_to_difference().unwrap();
        assert_eq!(d.coeffs(), &[Polynomial::from_integers(&[1, -1]), Polynomial::from_integers(&[1])]);
        assert_eq!(d.difference_to_shift().unwrap(), eq);
    }

    #[test]
    fn identity_equation_unchanged() {
        let eq = LinearDifferenceEquation::new(Form::Shift, vec![Polynomial::from_integers(&[1])]).unwrap();
        assert_eq!(eq.shift_to_difference().unwrap().coeffs(), eq.coeffs());
    }

    #[test]
    fn wrong_form_rejected() {
        let eq = LinearDifferenceEquation::new(Form::Difference, vec![Polynomial::from_integers(&[1])]).unwrap();
        assert!(eq.shift_to_difference().is_err());
    }
}
