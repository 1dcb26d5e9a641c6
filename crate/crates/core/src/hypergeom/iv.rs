use num_traits::One;

use super::BundleSpec;
use crate::cohoring::{CohClass, HLaurent};
use crate::exactnum::{int, QSeries, Rational};

/// `(H + m hbar)^{-1} = sum_{a=0}^{s} (-1)^a H^a / (m hbar)^{a+1}` in `H^*(P^s)[hbar^{±1}]`.
pub fn invert_linear(m: u32, s: usize) -> HLaurent {
    assert!(m >= 1, "invert_linear needs m >= 1");
    let m = int(m as i64);
    let mut out = HLaurent::zero(s);
    let mut power = m.clone();
    for a in 0..=s {
        let sign = if a % 2 == 0 { Rational::one() } else { -Rational::one() };
        let c = CohClass::monomial(s, sign / &power, a);
        out = &out + &HLaurent::monomial(c, -(a as i64) - 1);
        power *= &m;
    }
    out
}

/// `a H + b hbar`
fn linear(s: usize, a: i64, b: i64) -> HLaurent {
    HLaurent::linear(s, int(a), int(b))
}

/// Numerator of the degree-`d` term, with the products over negative summands
/// starting at `m = first_negative`.
pub(crate) fn numerator(spec: &BundleSpec, d: u32, first_negative: u32) -> HLaurent {
    let s = spec.s();
    let mut acc = HLaurent::one(s);
    for &k in spec.kdegs() {
        for m in 1..=k * d {
            acc = &acc * &linear(s, k as i64, m as i64);
        }
    }
    for &l in spec.ldegs() {
        for m in first_negative..l * d {
            acc = &acc * &linear(s, -(l as i64), -(m as i64));
        }
    }
    acc
}

/// `prod_{m=1}^{d} (H + m hbar)^{-(s+1)}`
pub(crate) fn inverse_denominator(s: usize, d: u32) -> HLaurent {
    (1..=d).fold(HLaurent::one(s), |acc, m| &acc * &invert_linear(m, s).pow(s as u32 + 1))
}

/// `prod_{m=1}^{d} (H + m hbar)^{s+1}`
pub(crate) fn denominator(s: usize, d: u32) -> HLaurent {
    (1..=d).fold(HLaurent::one(s), |acc, m| &acc * &linear(s, 1, m as i64).pow(s as u32 + 1))
}

/// Coefficient of `q^d` in the reduced hypergeometric series (the
/// `exp((t0 + H t1)/hbar)` prefactor stripped).
pub fn iv_coefficient(spec: &BundleSpec, d: u32) -> HLaurent {
    if d == 0 {
        return HLaurent::one(spec.s());
    }
    &numerator(spec, d, 0) * &inverse_denominator(spec.s(), d)
}

pub fn iv_series(spec: &BundleSpec, order: usize) -> QSeries<HLaurent> {
    QSeries::from_fn(order, |d| iv_coefficient(spec, d as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::frac;

    #[test]
    fn invert_linear_examples() {
        let x = invert_linear(1, 1);
        assert_eq!(x.coefficient(0, -1), int(1));
        assert_eq!(x.coefficient(1, -2), int(-1));
        assert_eq!(x.cells().len(), 2);
        let y = invert_linear(1, 2);
        assert_eq!(y.coefficient(2, -3), int(1));
        assert_eq!(&linear(2, 1, 2) * &invert_linear(2, 2), HLaurent::one(2));
        assert_eq!(invert_linear(2, 2).coefficient(1, -2), frac(-1, 4));
    }

    #[test]
    fn iv_examples() {
        let p2 = BundleSpec::local_p2();
        assert_eq!(iv_coefficient(&p2, 0), HLaurent::one(2));
        let c1 = iv_coefficient(&p2, 1);
        let expected = HLaurent::from_cells(2, [(1, -1, int(-6)), (2, -2, int(-9))]);
        assert_eq!(c1, expected);
        let series = iv_series(&p2, 1);
        assert_eq!(series.coeff(0), &HLaurent::one(2));
        assert_eq!(series.coeff(1), &expected);
        assert_eq!(iv_series(&p2, 0).order(), 0);
    }

    #[test]
    fn two_minus_ones_on_p1_vanish() {
        // (-H)^2 = 0 on P^1 kills every positive-degree coefficient
        let am = BundleSpec::aspinwall_morrison();
        for d in 1..=4 {
            assert!(iv_coefficient(&am, d).is_zero(), "d = {d}");
        }
    }
}
