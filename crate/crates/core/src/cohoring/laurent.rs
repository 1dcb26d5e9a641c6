use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;

use num_traits::{One, Zero};

use super::CohClass;
use crate::error::{Error, Result};
use crate::exactnum::{Algebra, Poly, RatFunc, Rational};

/// Name of the formal Laurent variable attached to a [`CohLaurent`].
pub trait Variable: Copy + Eq + Hash + fmt::Debug + Default {
    const NAME: &'static str;
}

/// The descendant variable `hbar`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Hbar;

/// The equivariant parameter `lambda` of the trivial torus action.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Lambda;

impl Variable for Hbar {
    const NAME: &'static str = "hbar";
}

impl Variable for Lambda {
    const NAME: &'static str = "lambda";
}

/// Finite Laurent polynomial in one variable with coefficients in
/// `Q[H]/(H^{s+1})`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CohLaurent<V> {
    s: usize,
    terms: BTreeMap<i64, CohClass>,
    var: PhantomData<V>,
}

/// `H^*(P^s)[hbar, hbar^{-1}]`.
pub type HLaurent = CohLaurent<Hbar>;
/// `H^*(P^s)[lambda, lambda^{-1}]`.
pub type LambdaCohClass = CohLaurent<Lambda>;

impl<V: Variable> CohLaurent<V> {
    pub fn zero(s: usize) -> Self {
        CohLaurent { s, terms: BTreeMap::new(), var: PhantomData }
    }

    pub fn one(s: usize) -> Self {
        Self::from_class(CohClass::one(s))
    }

    pub fn from_class(c: CohClass) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * u^e`
    pub fn monomial(c: CohClass, e: i64) -> Self {
        let mut out = Self::zero(c.s());
        if !c.is_zero() {
            out.terms.insert(e, c);
        }
        out
    }

    /// `a H + b u`
    pub fn linear(s: usize, a: Rational, b: Rational) -> Self {
        &Self::from_class(CohClass::monomial(s, a, 1)) + &Self::monomial(CohClass::scalar(s, b), 1)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &CohClass)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff_class(&self, e: i64) -> CohClass {
        self.terms.get(&e).cloned().unwrap_or_else(|| CohClass::zero(self.s))
    }

    /// Coefficient of `H^a u^e`.
    pub fn coefficient(&self, a: usize, e: i64) -> Rational {
        self.terms.get(&e).map(|c| c.coeff(a)).unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Nonzero cells `(a, e, value)` ordered by `a`, then by `e` descending.
    pub fn cells(&self) -> Vec<(usize, i64, Rational)> {
        let mut out = Vec::new();
        for a in 0..=self.s {
            for (e, c) in self.terms.iter().rev() {
                let v = c.coeff(a);
                if !v.is_zero() {
                    out.push((a, *e, v));
                }
            }
        }
        out
    }

    pub fn from_cells(s: usize, cells: impl IntoIterator<Item = (usize, i64, Rational)>) -> Self {
        cells.into_iter().fold(Self::zero(s), |acc, (a, e, v)| {
            &acc + &Self::monomial(CohClass::monomial(s, v, a), e)
        })
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(self.s);
        }
        CohLaurent {
            s: self.s,
            terms: self.terms.iter().map(|(e, c)| (*e, c.scale(k))).collect(),
            var: PhantomData,
        }
    }

    pub fn mul_class(&self, c: &CohClass) -> Self {
        let mut out = Self::zero(self.s);
        for (e, t) in &self.terms {
            out.insert_add(*e, &(t * c));
        }
        out
    }

    /// Multiply by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        CohLaurent {
            s: self.s,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            var: PhantomData,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.s), |acc, _| &acc * self)
    }

    /// The `H^0` part as a scalar Laurent polynomial.
    pub fn degree_zero_part(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, c.coeff(0))))
    }

    /// Inverse, available exactly when the `H^0` part is a single monomial
    /// `c u^e`: then `x = c u^e (1 + N)` with `N` nilpotent.
    pub fn try_inverse(&self) -> Result<Self> {
        let base = self.degree_zero_part();
        let mut it = base.terms();
        let (e, c) = match (it.next(), it.next()) {
            (Some((e, c)), None) => (e, c.clone()),
            _ => {
                return Err(Error::NotInvertible(format!(
                    "H^0 part of {self} is not a single power of {}",
                    V::NAME
                )))
            }
        };
        let inv_lead = Rational::one() / c;
        let normalized = self.shift(-e).scale(&inv_lead);
        let nil = &normalized - &Self::one(self.s);
        let mut sum = Self::one(self.s);
        let mut term = Self::one(self.s);
        let neg_nil = nil.scale(&-Rational::one());
        for _ in 0..self.s {
            term = &term * &neg_nil;
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
        }
        Ok(sum.shift(-e).scale(&inv_lead))
    }

    /// `∫_{P^s}` applied coefficientwise: the `H^s` coefficient of each power.
    pub fn integrate(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, c.coeff(self.s))))
    }

    /// Coefficients of `H^0 ... H^s` as rational functions of the variable.
    pub fn to_ratfunc_coeffs(&self) -> Vec<RatFunc> {
        (0..=self.s)
            .map(|a| {
                LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, c.coeff(a))))
                    .to_ratfunc()
            })
            .collect()
    }

    fn insert_add(&mut self, e: i64, c: &CohClass) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&e) {
            Some(prev) => prev + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }
}

impl<V: Variable> fmt::Debug for CohLaurent<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CohLaurent[P^{}]({self})", self.s)
    }
}

impl<V: Variable> fmt::Display for CohLaurent<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .cells()
            .into_iter()
            .map(|(a, e, v)| {
                let h = match a {
                    0 => String::new(),
                    1 => "*H".to_string(),
                    _ => format!("*H^{a}"),
                };
                let u = match e {
                    0 => String::new(),
                    _ => format!("*{}^{e}", V::NAME),
                };
                format!("({v}){h}{u}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<V: Variable> std::ops::Add for &CohLaurent<V> {
    type Output = CohLaurent<V>;
    fn add(self, rhs: &CohLaurent<V>) -> CohLaurent<V> {
        assert_eq!(self.s, rhs.s, "classes on different P^s");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, c);
        }
        out
    }
}

impl<V: Variable> std::ops::Sub for &CohLaurent<V> {
    type Output = CohLaurent<V>;
    fn sub(self, rhs: &CohLaurent<V>) -> CohLaurent<V> {
        self + &(-rhs)
    }
}

impl<V: Variable> std::ops::Mul for &CohLaurent<V> {
    type Output = CohLaurent<V>;
    fn mul(self, rhs: &CohLaurent<V>) -> CohLaurent<V> {
        assert_eq!(self.s, rhs.s, "classes on different P^s");
        let mut out = CohLaurent::zero(self.s);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.insert_add(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl<V: Variable> std::ops::Neg for &CohLaurent<V> {
    type Output = CohLaurent<V>;
    fn neg(self) -> CohLaurent<V> {
        self.scale(&-Rational::one())
    }
}

impl<V: Variable> Algebra for CohLaurent<V> {
    fn zero_like(&self) -> Self {
        Self::zero(self.s)
    }
    fn one_like(&self) -> Self {
        Self::one(self.s)
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
        CohLaurent::scale(self, k)
    }
}

/// Scalar Laurent polynomial in one variable.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut out = LaurentPoly::default();
        for (e, c) in terms {
            let sum = out.coeff(e) + c;
            if sum.is_zero() {
                out.terms.remove(&e);
            } else {
                out.terms.insert(e, sum);
            }
        }
        out
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms([(0, c)])
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, u: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            if *e < 0 && u.is_zero() {
                return Err(Error::Pole { at: u.clone() });
            }
            acc += c * u.pow(*e as i32);
        }
        Ok(acc)
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let Some(&low) = self.terms.keys().next() else {
            return RatFunc::zero();
        };
        let shift = (-low).max(0);
        let num = Poly::new({
            let top = self.terms.keys().next_back().unwrap() + shift;
            (0..=top).map(|k| self.coeff(k - shift)).collect()
        });
        RatFunc::new(num, Poly::monomial(Rational::one(), shift as usize)).unwrap()
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.to_ratfunc())
    }
}
