//! Reduced rational functions in one variable over Q.

use std::fmt;

use num_traits::{One, Zero};

use super::{Algebra, Poly, Rational};
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic. Zero is `0 / 1`.
///
/// Because the form is canonical, structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading().unwrap().clone();
        if !lc.is_one() {
            let inv = Rational::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    /// `x^e` for any integer `e`.
    pub fn x_pow(e: i64) -> Self {
        let m = Poly::monomial(Rational::one(), e.unsigned_abs() as usize);
        if e >= 0 {
            Self::from_poly(m)
        } else {
            RatFunc { num: Poly::one(), den: m }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn degree_at_infinity(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    /// Coefficient of `x^e` in the expansion at `x = infinity`, when `e` is the
    /// top possible exponent. Returns an error if the function grows faster.
    pub fn leading_at_infinity(&self, e: i64) -> Result<Rational> {
        match self.degree_at_infinity() {
            None => Ok(Rational::zero()),
            Some(d) if d < e => Ok(Rational::zero()),
            Some(d) if d == e => Ok(self.num.leading().unwrap().clone()),
            Some(d) => Err(Error::Irregular(format!(
                "expected growth at most x^{e}, found x^{d}"
            ))),
        }
    }

    /// Denominator is `x^n` for some `n >= 0`.
    pub fn has_pure_power_denominator(&self) -> bool {
        let n = self.den.degree().unwrap();
        self.den.valuation() == Some(n)
    }

    /// Exact value at `x0`; a vanishing denominator is a [`Error::Pole`].
    pub fn eval(&self, x0: &Rational) -> Result<Rational> {
        let d = self.den.eval(x0);
        if d.is_zero() {
            return Err(Error::Pole { at: x0.clone() });
        }
        Ok(self.num.eval(x0) / d)
    }

    /// `f(-x)`
    pub fn reflect(&self) -> RatFunc {
        RatFunc::new(self.num.reflect(), self.den.reflect()).expect("nonzero denominator")
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn scale(&self, k: &Rational) -> RatFunc {
        if k.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }
}

/// Partial evaluation at a rational point; see [`RatFunc::eval`].
pub fn ratfunc_partial_eval(f: &RatFunc, h0: &Rational) -> Result<Rational> {
    f.eval(h0)
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl std::ops::Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .unwrap()
    }
}

impl std::ops::Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Algebra for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero()
    }
    fn one_like(&self) -> Self {
        RatFunc::one()
    }
    fn vanishes(&self) -> bool {
        RatFunc::is_zero(self)
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
        RatFunc::scale(self, k)
    }
}
