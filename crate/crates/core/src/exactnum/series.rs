//! Truncated power series in `q` with an explicit truncation order.

use num_traits::{One, Zero};

use super::{int, Algebra, Rational};
use crate::error::{Error, Result};

/// `c_0 + c_1 q + ... + c_D q^D + O(q^{D+1})`.
///
/// Binary operations between series of different orders truncate to the
/// smaller order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Algebra> QSeries<C> {
    /// Order is `coeffs.len() - 1`. Panics on an empty vector.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least its constant term");
        QSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        Self::new((0..=order).map(f).collect())
    }

    pub fn constant(c: C, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; order + 1];
        coeffs[0] = c;
        QSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> &C {
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        QSeries { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    pub fn map<D: Algebra>(&self, f: impl FnMut(&C) -> D) -> QSeries<D> {
        QSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        QSeries::from_fn(n, |d| self.coeffs[d].add(&rhs.coeffs[d]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        QSeries::from_fn(n, |d| self.coeffs[d].sub(&rhs.coeffs[d]))
    }

    pub fn neg(&self) -> Self {
        self.map(Algebra::neg)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.map(|c| c.scale(k))
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        QSeries::from_fn(n, |d| {
            let mut acc = self.coeffs[0].mul(&rhs.coeffs[d]);
            for k in 1..=d {
                if self.coeffs[k].vanishes() || rhs.coeffs[d - k].vanishes() {
                    continue;
                }
                acc = acc.add(&self.coeffs[k].mul(&rhs.coeffs[d - k]));
            }
            acc
        })
    }

    /// Coefficientwise product with a fixed element.
    pub fn mul_elem(&self, c: &C) -> Self {
        self.map(|x| x.mul(c))
    }

    /// Multiply by `q`; the order grows by one.
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(self.coeffs[0].zero_like());
        coeffs.extend(self.coeffs.iter().cloned());
        QSeries { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Algebra::vanishes)
    }

    /// `self(g(q))` for a scalar series `g` with `g(0) = 0`.
    pub fn compose(&self, g: &QSeries<Rational>) -> Result<Self> {
        if !g.coeffs[0].vanishes() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order().min(g.order());
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; n + 1];
        out[0] = self.coeffs[0].clone();
        let mut power = QSeries::<Rational>::constant(Rational::one(), n);
        let g = g.truncate(n);
        for k in 1..=n {
            power = power.mul(&g);
            let fk = &self.coeffs[k];
            if fk.vanishes() {
                continue;
            }
            // g^k starts at q^k
            for (slot, c) in out.iter_mut().zip(&power.coeffs).skip(k) {
                if !c.vanishes() {
                    *slot = slot.add(&fk.scale(c));
                }
            }
        }
        Ok(QSeries { coeffs: out })
    }

    /// `sum a^n / n!`, for `a` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].vanishes() {
            return Err(Error::NonzeroConstantTerm);
        }
        let one = self.coeffs[0].one_like();
        let mut out = QSeries::constant(one.clone(), self.order());
        let mut term = out.clone();
        for n in 1..=self.order() {
            term = term.mul(self).scale(&(Rational::one() / int(n as i64)));
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

impl QSeries<Rational> {
    /// The series `q` at the given order (`order >= 1`).
    pub fn variable(order: usize) -> Self {
        QSeries::from_fn(order, |d| if d == 1 { Rational::one() } else { Rational::zero() })
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return QSeries::new(vec![Rational::zero()]);
        }
        QSeries::from_fn(self.order() - 1, |d| &self.coeffs[d + 1] * int(d as i64 + 1))
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn recip(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv0 = Rational::one() / c0;
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for d in 1..=n {
            let s: Rational = (1..=d).map(|k| &self.coeffs[k] * &out[d - k]).sum();
            out.push(-s * &inv0);
        }
        Ok(QSeries { coeffs: out })
    }

    /// Logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::MalformedMirrorMap("log needs constant term 1".into()));
        }
        let n = self.order();
        if n == 0 {
            return Ok(QSeries::new(vec![Rational::zero()]));
        }
        let quotient = self.derivative().mul(&self.truncate(n - 1).recip()?);
        Ok(QSeries::from_fn(n, |d| {
            if d == 0 {
                Rational::zero()
            } else {
                &quotient.coeffs[d - 1] / int(d as i64)
            }
        }))
    }

    /// Compositional inverse by Newton iteration, doubling the precision each
    /// step: `g <- g - (f(g) - Q) / f'(g)`.
    pub fn revert(&self) -> Result<Self> {
        let n = self.order();
        if !self.coeffs[0].is_zero() {
            return Err(Error::MalformedMirrorMap("f(0) != 0".into()));
        }
        if n == 0 {
            return Ok(self.clone());
        }
        if !self.coeffs[1].is_one() {
            return Err(Error::MalformedMirrorMap("f'(0) != 1".into()));
        }
        // f' padded to order n: coefficient n of f' only multiplies terms of
        // order >= 1 in the correction below, so it never contributes.
        let mut fprime = self.derivative().into_coeffs();
        fprime.push(Rational::zero());
        let fprime = QSeries::new(fprime);

        let mut g = QSeries::variable(n);
        let mut prec = 1;
        while prec < n {
            prec = (2 * prec).min(n);
            let g_t = g.truncate(prec);
            let f_t = self.truncate(prec);
            let residual = f_t.compose(&g_t)?.sub(&QSeries::variable(prec));
            let slope = fprime.truncate(prec).compose(&g_t)?;
            let step = residual.mul(&slope.recip()?);
            let mut coeffs = g_t.sub(&step).into_coeffs();
            coeffs.resize(n + 1, Rational::zero());
            g = QSeries::new(coeffs);
        }
        Ok(g)
    }
}

/// Cauchy product; see [`QSeries::mul`].
pub fn series_mul<C: Algebra>(a: &QSeries<C>, b: &QSeries<C>) -> QSeries<C> {
    a.mul(b)
}

pub fn series_exp(a: &QSeries<Rational>) -> Result<QSeries<Rational>> {
    a.exp()
}

pub fn series_revert(f: &QSeries<Rational>) -> Result<QSeries<Rational>> {
    f.revert()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::frac;

    fn s(cs: &[Rational]) -> QSeries<Rational> {
        QSeries::new(cs.to_vec())
    }

    fn si(cs: &[i64]) -> QSeries<Rational> {
        QSeries::new(cs.iter().map(|&c| int(c)).collect())
    }

    /// Brute-force convolution used as an independent oracle.
    fn convolve(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n + 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if i + j <= n {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }

    #[test]
    fn mul_examples() {
        assert_eq!(si(&[1, 1, 0]).mul(&si(&[1, -1, 0])), si(&[1, 0, -1]));
        let a = si(&[3, -1, 4, 1]);
        assert_eq!(a.mul(&QSeries::constant(int(1), 3)), a);
        // mixed orders truncate to the minimum
        assert_eq!(si(&[1, 1, 1, 1]).mul(&si(&[1, 1])).order(), 1);
    }

    #[test]
    fn mul_matches_convolution_after_exp_log() {
        let f = si(&[1, -6, 45, -560, 7700]);
        let g = f.log().unwrap().exp().unwrap();
        assert_eq!(g, f);
        let h = si(&[2, 0, -1, 5, 3]);
        let expect = convolve(f.coeffs(), h.coeffs(), 4);
        assert_eq!(f.mul(&h).into_coeffs(), expect);
    }

    #[test]
    fn exp_examples() {
        assert_eq!(si(&[0, 0, 0]).exp().unwrap(), si(&[1, 0, 0]));
        assert_eq!(
            si(&[0, 1, 0, 0]).exp().unwrap(),
            s(&[int(1), int(1), frac(1, 2), frac(1, 6)])
        );
        assert_eq!(si(&[0, -6, 0]).exp().unwrap(), si(&[1, -6, 18]));
        assert_eq!(si(&[1, 1]).exp(), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn revert_examples() {
        let q = QSeries::variable(5);
        assert_eq!(q.revert().unwrap(), q);
        assert_eq!(si(&[0, 1, 1, 0]).revert().unwrap(), si(&[0, 1, -1, 2]));
        // q e^{-6q}
        let f = si(&[0, -6, 0, 0, 0, 0]).exp().unwrap().shift();
        let g = f.revert().unwrap();
        assert_eq!(f.compose(&g).unwrap(), QSeries::variable(6));
        assert_eq!(g.compose(&f).unwrap(), QSeries::variable(6));
        assert!(si(&[1, 1]).revert().is_err());
        assert!(si(&[0, 2, 1]).revert().is_err());
    }

    #[test]
    fn recip_and_compose() {
        let f = si(&[1, -1]);
        assert_eq!(f.recip().unwrap(), si(&[1, 1]));
        let geo = si(&[1, 1, 1, 1]);
        assert_eq!(geo.mul(&si(&[1, -1, 0, 0])), si(&[1, 0, 0, 0]));
        // (1 + q)∘(2q) = 1 + 2q
        assert_eq!(si(&[1, 1, 0]).compose(&si(&[0, 2, 0])).unwrap(), si(&[1, 2, 0]));
        assert!(si(&[1, 1]).compose(&si(&[1, 1])).is_err());
    }
}
