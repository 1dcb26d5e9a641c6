//! The mirror transformation: read off `I_1`, change variables
//! `Q = q e^{I_1(q)}`, and strip `exp(I_1 H / hbar)` to get the reduced
//! J-series in its flat coordinate.

use num_traits::{One, Zero};

use crate::cohoring::{CohClass, HLaurent};
use crate::error::{Error, Result};
use crate::exactnum::{int, QSeries, Rational};
use crate::hypergeom::{iv_series, BundleSpec, Case};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MirrorResult {
    pub spec: BundleSpec,
    pub case: Case,
    /// Mirror map, zero constant term.
    pub i1: QSeries<Rational>,
    /// Reduced `S(Q, hbar)`.
    pub jseries: QSeries<HLaurent>,
    /// The hypergeometric input `S'(q, hbar)`.
    pub sprime: QSeries<HLaurent>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct MirrorOptions {
    /// Recompute `S'` from the output and compare.
    pub check_roundtrip: bool,
}

/// `I_1`: the `H^1 hbar^{-1}` coefficient at every `q^d`, `d >= 1`.
pub fn extract_i1(sprime: &QSeries<HLaurent>) -> Result<QSeries<Rational>> {
    let c0 = sprime.coeff(0);
    if *c0 != HLaurent::one(c0.s()) {
        return Err(Error::MalformedMirrorMap("constant term of S' is not 1".into()));
    }
    Ok(QSeries::from_fn(sprime.order(), |d| {
        if d == 0 {
            Rational::zero()
        } else {
            sprime.coeff(d).coefficient(1, -1)
        }
    }))
}

/// `Q(q) = q e^{I_1(q)}`, one order longer than `i1`.
pub fn mirror_coordinate(i1: &QSeries<Rational>) -> Result<QSeries<Rational>> {
    if !i1.coeff(0).is_zero() {
        return Err(Error::MalformedMirrorMap("I_1 has a constant term".into()));
    }
    Ok(i1.exp()?.shift())
}

/// `q(Q)`, the compositional inverse of [`mirror_coordinate`].
pub fn inverse_mirror_coordinate(i1: &QSeries<Rational>) -> Result<QSeries<Rational>> {
    mirror_coordinate(i1)?.revert()
}

/// `exp(sign * I_1 H / hbar)` as the finite sum over `a <= s`.
pub fn exp_h_over_hbar(i1: &QSeries<Rational>, sign: i64, s: usize) -> QSeries<HLaurent> {
    let order = i1.order();
    let mut out = QSeries::constant(HLaurent::one(s), order);
    let mut power = QSeries::constant(Rational::one(), order);
    let mut fact = Rational::one();
    for a in 1..=s {
        power = power.mul(i1);
        fact *= int(a as i64);
        let k = int(sign).pow(a as i32) / &fact;
        let term = QSeries::from_fn(order, |d| {
            let c = &power.coeff(d).clone() * &k;
            HLaurent::monomial(CohClass::monomial(s, c, a), -(a as i64))
        });
        out = out.add(&term);
    }
    out
}

/// `S(Q) = exp(-I_1 H / hbar) S'(q)` with `q = q(Q)`.
pub fn apply_mirror(sprime: &QSeries<HLaurent>, i1: &QSeries<Rational>) -> Result<QSeries<HLaurent>> {
    let s = sprime.coeff(0).s();
    if i1.is_zero() {
        return Ok(sprime.clone());
    }
    // reversion to order D + 1 so the last coefficient is not starved
    let q_of_big_q = inverse_mirror_coordinate(i1)?;
    let stripped = exp_h_over_hbar(i1, -1, s).mul(sprime);
    stripped.compose(&q_of_big_q)
}

/// Inverse of [`apply_mirror`]: `S'(q) = exp(I_1 H / hbar) S(q e^{I_1})`.
pub fn undo_mirror(jseries: &QSeries<HLaurent>, i1: &QSeries<Rational>) -> Result<QSeries<HLaurent>> {
    let s = jseries.coeff(0).s();
    if i1.is_zero() {
        return Ok(jseries.clone());
    }
    let substituted = jseries.compose(&mirror_coordinate(i1)?)?;
    Ok(exp_h_over_hbar(i1, 1, s).mul(&substituted))
}

pub fn run_mirror(spec: &BundleSpec, order: usize) -> Result<MirrorResult> {
    run_mirror_with(spec, order, MirrorOptions::default())
}

pub fn run_mirror_with(spec: &BundleSpec, order: usize, opts: MirrorOptions) -> Result<MirrorResult> {
    let case = spec.require_in_scope()?;
    let sprime = iv_series(spec, order);
    let i1 = extract_i1(&sprime)?;
    let jseries = match case {
        Case::TrivialMap => {
            if !i1.is_zero() {
                return Err(Error::MalformedMirrorMap(format!(
                    "{spec} should need no mirror map but I_1 = {:?}",
                    i1.coeffs()
                )));
            }
            sprime.clone()
        }
        Case::MapNeeded => apply_mirror(&sprime, &i1)?,
        Case::OutOfScope => unreachable!("rejected by require_in_scope"),
    };
    if opts.check_roundtrip {
        let back = undo_mirror(&jseries, &i1)?;
        if back != sprime {
            return Err(Error::MalformedMirrorMap(
                "forward change of variables does not recover S'".into(),
            ));
        }
        let q = inverse_mirror_coordinate(&i1)?;
        let big_q = mirror_coordinate(&i1)?;
        if big_q.compose(&q)? != QSeries::variable(order + 1)
            || q.compose(&big_q)? != QSeries::variable(order + 1)
        {
            return Err(Error::MalformedMirrorMap("reversion round trip failed".into()));
        }
    }
    Ok(MirrorResult { spec: spec.clone(), case, i1, jseries, sprime })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::factorial;

    #[test]
    fn extract_from_unit_series() {
        let one = QSeries::constant(HLaurent::one(2), 3);
        assert!(extract_i1(&one).unwrap().is_zero());
        let bad = QSeries::constant(HLaurent::zero(2), 3);
        assert!(extract_i1(&bad).is_err());
    }

    #[test]
    fn local_p2_mirror_map() {
        let sprime = iv_series(&BundleSpec::local_p2(), 5);
        let i1 = extract_i1(&sprime).unwrap();
        // 3 (-1)^d (3d-1)! / (d!)^3
        for d in 1..=5u64 {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            let v = Rational::from_integer(
                factorial(3 * d - 1) * 3 * sign,
            ) / Rational::from_integer(factorial(d).pow(3));
            assert_eq!(i1.coeff(d as usize), &v, "d = {d}");
        }
        assert_eq!(i1.coeff(1), &int(-6));
        assert_eq!(i1.coeff(2), &int(45));
        assert_eq!(i1.coeff(3), &int(-560));
    }

    #[test]
    fn two_summand_closed_form() {
        // O(1)+O(-2) on P^2: l (-1)^{ld} (ld-1)! (kd)! / (d!)^{s+1}
        let spec = BundleSpec::new(2, vec![1], vec![2]).unwrap();
        let i1 = extract_i1(&iv_series(&spec, 4)).unwrap();
        for d in 1..=4u64 {
            let v = Rational::from_integer(factorial(2 * d - 1) * factorial(d) * 2)
                / Rational::from_integer(factorial(d).pow(3));
            assert_eq!(i1.coeff(d as usize), &v, "d = {d}");
        }
    }

    #[test]
    fn transformed_series_shape() {
        for spec in [
            BundleSpec::local_p2(),
            BundleSpec::new(2, vec![1], vec![2]).unwrap(),
            BundleSpec::new(3, vec![], vec![4]).unwrap(),
            BundleSpec::new(3, vec![2], vec![2]).unwrap(),
        ] {
            let r = run_mirror(&spec, 4).unwrap();
            assert_eq!(r.jseries.coeff(0), &HLaurent::one(spec.s()));
            for d in 1..=4 {
                let c = r.jseries.coeff(d);
                assert!(c.coefficient(1, -1).is_zero(), "{spec} d = {d}");
                assert!(c.max_exponent().is_none_or(|e| e <= -1), "{spec} d = {d}");
            }
        }
    }

    #[test]
    fn lower_orders_are_stable() {
        let short = run_mirror(&BundleSpec::local_p2(), 3).unwrap();
        let long = run_mirror(&BundleSpec::local_p2(), 6).unwrap();
        assert_eq!(long.jseries.truncate(3), short.jseries);
        assert_eq!(long.i1.truncate(3), short.i1);
        assert_eq!(run_mirror(&BundleSpec::local_p2(), 3).unwrap(), short);
    }

    #[test]
    fn order_one_local_p2() {
        let r = run_mirror(&BundleSpec::local_p2(), 1).unwrap();
        assert_eq!(r.case, Case::MapNeeded);
        assert_eq!(
            r.jseries.coeff(1),
            &HLaurent::from_cells(2, [(2, -2, int(-9))])
        );
    }

    #[test]
    fn trivial_map_passes_through() {
        let r = run_mirror(&BundleSpec::aspinwall_morrison(), 4).unwrap();
        assert_eq!(r.case, Case::TrivialMap);
        assert!(r.i1.is_zero());
        assert_eq!(r.jseries, r.sprime);
        let id = QSeries::constant(HLaurent::one(2), 2);
        assert_eq!(apply_mirror(&id, &QSeries::new(vec![int(0); 3])).unwrap(), id);
    }

    #[test]
    fn out_of_scope_is_rejected() {
        let spec = BundleSpec::new(2, vec![], vec![3, 1]).unwrap();
        assert!(matches!(run_mirror(&spec, 2), Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn roundtrip_recovers_input() {
        let opts = MirrorOptions { check_roundtrip: true };
        let r = run_mirror_with(&BundleSpec::local_p2(), 6, opts).unwrap();
        assert_eq!(undo_mirror(&r.jseries, &r.i1).unwrap(), r.sprime);
        let r = run_mirror_with(&BundleSpec::new(2, vec![1], vec![2]).unwrap(), 5, opts).unwrap();
        assert_eq!(r.case, Case::MapNeeded);
    }
}
