use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Specialized torus weights `lambda_0 ... lambda_s`, pairwise distinct.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivWeights {
    lambdas: Vec<Rational>,
}

impl EquivWeights {
    pub fn new(lambdas: Vec<Rational>) -> Result<Self> {
        if lambdas.len() < 2 {
            return Err(Error::WeightCollision("need at least two weights".into()));
        }
        for i in 0..lambdas.len() {
            for j in i + 1..lambdas.len() {
                if lambdas[i] == lambdas[j] {
                    return Err(Error::WeightCollision(format!(
                        "lambda_{i} = lambda_{j} = {}",
                        lambdas[i]
                    )));
                }
            }
        }
        Ok(EquivWeights { lambdas })
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| crate::exactnum::int(v)).collect())
    }

    pub fn s(&self) -> usize {
        self.lambdas.len() - 1
    }

    pub fn lambdas(&self) -> &[Rational] {
        &self.lambdas
    }

    pub fn lambda(&self, i: usize) -> &Rational {
        &self.lambdas[i]
    }

    /// `prod_{k != j} (lambda_j - lambda_k)`, the tangent weight at fixed point `j`.
    pub fn tangent_euler(&self, j: usize) -> Rational {
        let lj = &self.lambdas[j];
        self.lambdas
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != j)
            .map(|(_, lk)| lj - lk)
            .product()
    }

    /// Fails on the first form that vanishes at these weights.
    pub fn check_generic(&self, forms: &[LinearForm]) -> Result<()> {
        for form in forms {
            if form.eval(self).is_zero() {
                return Err(Error::WeightCollision(format!("{form} vanishes at {self}")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for EquivWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lambdas.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `sum_i c_i lambda_i`
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearForm {
    coeffs: Vec<Rational>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        LinearForm { coeffs }
    }

    pub fn zero(s: usize) -> Self {
        LinearForm { coeffs: vec![Rational::zero(); s + 1] }
    }

    /// `lambda_i`
    pub fn unit(s: usize, i: usize) -> Self {
        let mut f = Self::zero(s);
        f.coeffs[i] = crate::exactnum::int(1);
        f
    }

    pub fn add_term(mut self, i: usize, c: &Rational) -> Self {
        self.coeffs[i] += c;
        self
    }

    pub fn is_identically_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, w: &EquivWeights) -> Rational {
        self.coeffs.iter().zip(w.lambdas()).map(|(c, l)| c * l).sum()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})l{i}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    #[test]
    fn distinctness() {
        assert!(EquivWeights::from_ints(&[1, 3, 1]).is_err());
        let w = EquivWeights::from_ints(&[1, 3, 7]).unwrap();
        assert_eq!(w.tangent_euler(0), int(12));
        assert_eq!(w.to_string(), "(1, 3, 7)");
    }

    #[test]
    fn genericity() {
        let w = EquivWeights::from_ints(&[1, 3, 5]).unwrap();
        // lambda_0 - 2 lambda_1 + lambda_2 = 0 at (1, 3, 5)
        let bad = LinearForm::unit(2, 0).add_term(1, &int(-2)).add_term(2, &int(1));
        assert!(w.check_generic(&[LinearForm::unit(2, 1), bad]).is_err());
        assert!(w.check_generic(&[LinearForm::unit(2, 1)]).is_ok());
    }
}
