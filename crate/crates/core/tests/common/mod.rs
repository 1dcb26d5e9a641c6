//! Strategies and property bodies shared by the property tests and the
//! acceptance runner.
#![allow(dead_code)]

use concavex::cohoring::{localization_integral, EquivWeights, HLaurent};
use concavex::exactnum::{int, Poly, QSeries, Rational};
use concavex::hypergeom::invert_linear;
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// `q + a_2 q^2 + ... + a_n q^n`
pub fn invertible_series() -> impl Strategy<Value = QSeries<Rational>> {
    prop::collection::vec(small_rational(), 1..6).prop_map(|tail| {
        let mut coeffs = vec![int(0), int(1)];
        coeffs.extend(tail);
        QSeries::new(coeffs)
    })
}

/// Zero constant term, arbitrary otherwise.
pub fn nilpotent_series() -> impl Strategy<Value = QSeries<Rational>> {
    prop::collection::vec(small_rational(), 1..7).prop_map(|tail| {
        let mut coeffs = vec![int(0)];
        coeffs.extend(tail);
        QSeries::new(coeffs)
    })
}

pub fn distinct_weights(s: usize) -> impl Strategy<Value = EquivWeights> {
    prop::collection::btree_set(-40i64..=40, s + 1)
        .prop_map(|set| set.into_iter().collect::<Vec<i64>>())
        .prop_shuffle()
        .prop_map(|v| EquivWeights::from_ints(&v).unwrap())
}

pub fn reversion_round_trip(f: &QSeries<Rational>) -> Result<(), TestCaseError> {
    let g = f.revert().map_err(|e| TestCaseError::fail(e.to_string()))?;
    let q = QSeries::variable(f.order());
    prop_assert_eq!(&f.compose(&g).unwrap(), &q);
    prop_assert_eq!(&g.compose(f).unwrap(), &q);
    Ok(())
}

pub fn exp_log_inverse(a: &QSeries<Rational>) -> Result<(), TestCaseError> {
    let e = a.exp().unwrap();
    let back = a.neg().exp().unwrap();
    prop_assert_eq!(e.mul(&back), QSeries::constant(int(1), a.order()));
    prop_assert_eq!(&e.log().unwrap(), a);
    Ok(())
}

pub fn invert_linear_identity(m: u32, s: usize) -> Result<(), TestCaseError> {
    let lin = HLaurent::linear(s, int(1), int(m as i64));
    prop_assert_eq!(&invert_linear(m, s) * &lin, HLaurent::one(s));
    Ok(())
}

/// For `deg f <= s` the sum over fixed points is the `p^s` coefficient, for any weights.
pub fn localization_weight_independent(
    coeffs: &[Rational],
    w1: &EquivWeights,
    w2: &EquivWeights,
) -> Result<(), TestCaseError> {
    let s = w1.s();
    let f = Poly::new(coeffs[..=s.min(coeffs.len() - 1)].to_vec());
    let a = localization_integral(&f, w1);
    let b = localization_integral(&f, w2);
    prop_assert_eq!(&a, &b);
    prop_assert_eq!(a, f.coeff(s));
    Ok(())
}

pub fn localization_case() -> impl Strategy<Value = (Vec<Rational>, EquivWeights, EquivWeights)> {
    (1usize..=4).prop_flat_map(|s| {
        (prop::collection::vec(small_rational(), s + 1), distinct_weights(s), distinct_weights(s))
    })
}
