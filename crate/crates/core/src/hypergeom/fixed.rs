use num_traits::Zero;

use super::BundleSpec;
use crate::cohoring::{interpolate_class, EquivWeights, HLaurent};
use crate::error::{Error, Result};
use crate::exactnum::{int, Poly, QSeries, RatFunc, Rational};

/// Restrictions `S'_i(q, hbar)` of the equivariant reduced series to the
/// fixed points, after specializing the torus weights.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedPointSeries {
    pub weights: EquivWeights,
    pub per_point: Vec<QSeries<RatFunc>>,
}

impl FixedPointSeries {
    pub fn order(&self) -> usize {
        self.per_point[0].order()
    }

    pub fn coeff(&self, i: usize, d: usize) -> &RatFunc {
        self.per_point[i].coeff(d)
    }

    /// Replace one coefficient; used to build corrupted inputs for checks.
    pub fn with_coeff(&self, i: usize, d: usize, value: RatFunc) -> Self {
        let mut out = self.clone();
        let mut coeffs = out.per_point[i].clone().into_coeffs();
        coeffs[d] = value;
        out.per_point[i] = QSeries::new(coeffs);
        out
    }
}

/// `c + b hbar`
fn lin(c: Rational, b: i64) -> Poly {
    Poly::linear(c, int(b))
}

/// `S'_{id}` at fixed point `i`:
/// `prod (k lambda_i + m hbar) prod (-l lambda_i - m hbar) / prod_{m=1}^{d} prod_j (lambda_i - lambda_j + m hbar)`.
pub fn sprime_coefficient(spec: &BundleSpec, w: &EquivWeights, i: usize, d: u32) -> RatFunc {
    if d == 0 {
        return RatFunc::one();
    }
    let li = w.lambda(i);
    let mut num = Poly::one();
    for &k in spec.kdegs() {
        let base = li * int(k as i64);
        for m in 1..=k * d {
            num = &num * &lin(base.clone(), m as i64);
        }
    }
    for &l in spec.ldegs() {
        let base = -(li * int(l as i64));
        for m in 0..l * d {
            num = &num * &lin(base.clone(), -(m as i64));
        }
    }
    let mut den = Poly::one();
    for m in 1..=d {
        for lj in w.lambdas() {
            den = &den * &lin(li - lj, m as i64);
        }
    }
    RatFunc::new(num, den).expect("distinct weights give a nonzero denominator")
}

pub fn sprime_fixed(spec: &BundleSpec, w: &EquivWeights, order: usize) -> Result<FixedPointSeries> {
    if w.s() != spec.s() {
        return Err(Error::DimensionMismatch { left: spec.s(), right: w.s() });
    }
    let per_point = (0..=spec.s())
        .map(|i| QSeries::from_fn(order, |d| sprime_coefficient(spec, w, i, d as u32)))
        .collect();
    Ok(FixedPointSeries { weights: w.clone(), per_point })
}

/// Nonequivariant limit of the degree-`d` class recovered from its
/// fixed-point values.
///
/// The interpolated coefficient of `p^a` is homogeneous of degree
/// `delta - a` in `(lambda, hbar)` with `delta = d (sum k + sum l - s - 1)`,
/// so sending `lambda -> 0` along the specialized ray picks out the
/// `hbar^{delta - a}` term of its expansion at `hbar = infinity`. Faster
/// growth means the limit does not exist.
pub fn fixed_point_limit(spec: &BundleSpec, fps: &FixedPointSeries, d: usize) -> Result<HLaurent> {
    let s = spec.s();
    let values: Vec<RatFunc> = (0..=s).map(|i| fps.coeff(i, d).clone()).collect();
    let coeffs = interpolate_class(&values, &fps.weights);
    let delta = d as i64 * (spec.degree_sum() as i64 - s as i64 - 1);
    let mut cells = Vec::new();
    for (a, c) in coeffs.iter().enumerate() {
        let e = delta - a as i64;
        let v = c
            .leading_at_infinity(e)
            .map_err(|err| Error::Irregular(format!("p^{a} at q^{d}: {err}")))?;
        if !v.is_zero() {
            cells.push((a, e, v));
        }
    }
    Ok(HLaurent::from_cells(s, cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeom::iv_coefficient;

    #[test]
    fn degree_zero_is_one() {
        let spec = BundleSpec::local_p2();
        let w = EquivWeights::from_ints(&[1, 3, 7]).unwrap();
        let fps = sprime_fixed(&spec, &w, 2).unwrap();
        for i in 0..3 {
            assert_eq!(fps.coeff(i, 0), &RatFunc::one());
        }
    }

    #[test]
    fn hand_computed_p1_value() {
        // O(1)+O(-1) on P^1, lambda = (1, 3), i = 0, d = 1:
        // (1 + hbar)(-1) / (hbar (hbar - 2))
        let spec = BundleSpec::new(1, vec![1], vec![1]).unwrap();
        let w = EquivWeights::from_ints(&[1, 3]).unwrap();
        let got = sprime_coefficient(&spec, &w, 0, 1);
        let want = RatFunc::new(
            Poly::new(vec![int(-1), int(-1)]),
            Poly::new(vec![int(0), int(-2), int(1)]),
        )
        .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn empty_positive_part() {
        let spec = BundleSpec::new(1, vec![], vec![1]).unwrap();
        let w = EquivWeights::from_ints(&[2, 5]).unwrap();
        // -lambda_0 / (hbar (lambda_0 - lambda_1 + hbar))
        let want = RatFunc::new(
            Poly::constant(int(-2)),
            Poly::new(vec![int(0), int(-3), int(1)]),
        )
        .unwrap();
        assert_eq!(sprime_coefficient(&spec, &w, 0, 1), want);
    }

    #[test]
    fn limit_matches_nonequivariant_series() {
        let w = EquivWeights::from_ints(&[1, 3, 7]).unwrap();
        for spec in [
            BundleSpec::local_p2(),
            BundleSpec::new(2, vec![1], vec![2]).unwrap(),
            BundleSpec::new(2, vec![], vec![1, 1]).unwrap(),
        ] {
            let fps = sprime_fixed(&spec, &w, 3).unwrap();
            for d in 0..=3 {
                assert_eq!(
                    fixed_point_limit(&spec, &fps, d).unwrap(),
                    iv_coefficient(&spec, d as u32),
                    "{spec} d = {d}"
                );
            }
        }
    }

    #[test]
    fn mismatched_weights() {
        let w = EquivWeights::from_ints(&[1, 3]).unwrap();
        assert!(sprime_fixed(&BundleSpec::local_p2(), &w, 1).is_err());
    }
}
