use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{Algebra, Rational};

/// Element of `Q[H]/(H^{s+1})`, stored as the coefficients of `H^0 ... H^s`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CohClass {
    coeffs: Vec<Rational>,
}

impl CohClass {
    /// Powers above `H^s` are dropped.
    pub fn from_coeffs(s: usize, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(s + 1, Rational::zero());
        CohClass { coeffs }
    }

    pub fn zero(s: usize) -> Self {
        CohClass { coeffs: vec![Rational::zero(); s + 1] }
    }

    pub fn scalar(s: usize, c: Rational) -> Self {
        let mut out = Self::zero(s);
        out.coeffs[0] = c;
        out
    }

    pub fn one(s: usize) -> Self {
        Self::scalar(s, Rational::one())
    }

    /// `c H^a`; zero when `a > s`.
    pub fn monomial(s: usize, c: Rational, a: usize) -> Self {
        let mut out = Self::zero(s);
        if a <= s {
            out.coeffs[a] = c;
        }
        out
    }

    /// The hyperplane class.
    pub fn h(s: usize) -> Self {
        Self::monomial(s, Rational::one(), 1)
    }

    pub fn s(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, a: usize) -> Rational {
        self.coeffs.get(a).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lies in the span of `1, H`.
    pub fn is_divisor_like(&self) -> bool {
        self.coeffs.iter().skip(2).all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        CohClass { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.s()), |acc, _| &acc * self)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.s() != rhs.s() {
            return Err(Error::DimensionMismatch { left: self.s(), right: rhs.s() });
        }
        Ok(self * rhs)
    }

    /// Inverse, when the `H^0` coefficient is nonzero.
    pub fn try_inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible(format!("{self} is nilpotent")));
        }
        let inv0 = Rational::one() / c0;
        let s = self.s();
        let mut out = vec![inv0.clone()];
        for a in 1..=s {
            let acc: Rational = (1..=a).map(|k| &self.coeffs[k] * &out[a - k]).sum();
            out.push(-acc * &inv0);
        }
        Ok(CohClass { coeffs: out })
    }
}

pub fn coh_mul(a: &CohClass, b: &CohClass) -> Result<CohClass> {
    a.checked_mul(b)
}

impl fmt::Debug for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CohClass[P^{}]({self})", self.s())
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match a {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})H")?,
                _ => write!(f, "({c})H^{a}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl std::ops::Add for &CohClass {
    type Output = CohClass;
    fn add(self, rhs: &CohClass) -> CohClass {
        assert_eq!(self.s(), rhs.s(), "cohomology classes of different P^s");
        CohClass { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl std::ops::Sub for &CohClass {
    type Output = CohClass;
    fn sub(self, rhs: &CohClass) -> CohClass {
        assert_eq!(self.s(), rhs.s(), "cohomology classes of different P^s");
        CohClass { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl std::ops::Mul for &CohClass {
    type Output = CohClass;
    fn mul(self, rhs: &CohClass) -> CohClass {
        assert_eq!(self.s(), rhs.s(), "cohomology classes of different P^s");
        let s = self.s();
        let mut out = vec![Rational::zero(); s + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(s + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        CohClass { coeffs: out }
    }
}

impl std::ops::Neg for &CohClass {
    type Output = CohClass;
    fn neg(self) -> CohClass {
        CohClass { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Algebra for CohClass {
    fn zero_like(&self) -> Self {
        CohClass::zero(self.s())
    }
    fn one_like(&self) -> Self {
        CohClass::one(self.s())
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, k: &Rational) -> Self {
        CohClass::scale(self, k)
    }
}
