//! Modified pairing `<a, b>_V = ∫ a b E^+/E^-` for the trivial torus action.
//!
//! Each summand `O(m)` carries one copy of the equivariant parameter, so its
//! Euler class is `m H + w lambda` for a rational multiplier `w`. The default
//! multiplier is `-1`, which turns `O(-3)` on `P^2` into `-3p - lambda`.

use num_traits::{One, Zero};

use super::{CohClass, LambdaCohClass, LaurentPoly};
use crate::error::{Error, Result};
use crate::exactnum::{int, RatFunc, Rational};
use crate::hypergeom::BundleSpec;

/// Multipliers of `lambda` in the Euler class of each summand.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorWeights {
    pub plus: Vec<Rational>,
    pub minus: Vec<Rational>,
}

impl FactorWeights {
    /// Every summand gets weight `-lambda`.
    pub fn standard(spec: &BundleSpec) -> Self {
        FactorWeights {
            plus: vec![int(-1); spec.kdegs().len()],
            minus: vec![int(-1); spec.ldegs().len()],
        }
    }

    fn check_shape(&self, spec: &BundleSpec) -> Result<()> {
        if self.plus.len() != spec.kdegs().len() || self.minus.len() != spec.ldegs().len() {
            return Err(Error::InvalidBundle(
                "one weight per line bundle summand is required".into(),
            ));
        }
        Ok(())
    }
}

/// Nonequivariant `(E(V^+), E(V^-)) = (prod k_i H, prod (-l_j H))`.
pub fn euler_classes(spec: &BundleSpec) -> (CohClass, CohClass) {
    let s = spec.s();
    let plus = spec
        .kdegs()
        .iter()
        .fold(CohClass::one(s), |acc, &k| &acc * &CohClass::monomial(s, int(k as i64), 1));
    let minus = spec
        .ldegs()
        .iter()
        .fold(CohClass::one(s), |acc, &l| &acc * &CohClass::monomial(s, int(-(l as i64)), 1));
    (plus, minus)
}

/// `(E^+, E^-)` with `lambda` weights attached.
pub fn equivariant_euler(
    spec: &BundleSpec,
    weights: &FactorWeights,
) -> Result<(LambdaCohClass, LambdaCohClass)> {
    weights.check_shape(spec)?;
    let s = spec.s();
    let plus = spec.kdegs().iter().zip(&weights.plus).fold(LambdaCohClass::one(s), |acc, (&k, w)| {
        &acc * &LambdaCohClass::linear(s, int(k as i64), w.clone())
    });
    let minus = spec.ldegs().iter().zip(&weights.minus).fold(LambdaCohClass::one(s), |acc, (&l, w)| {
        &acc * &LambdaCohClass::linear(s, int(-(l as i64)), w.clone())
    });
    Ok((plus, minus))
}

fn inverse_minus(minus: &LambdaCohClass) -> Result<LambdaCohClass> {
    minus.try_inverse().map_err(|_| {
        Error::NotInvertible("E^- has a summand with zero lambda weight".into())
    })
}

/// `omega_V(a) = ∫ a E^+ / E^-`
pub fn omega_v(a: &LambdaCohClass, spec: &BundleSpec, weights: &FactorWeights) -> Result<LaurentPoly> {
    let (plus, minus) = equivariant_euler(spec, weights)?;
    let twisted = &(a * &plus) * &inverse_minus(&minus)?;
    Ok(twisted.integrate())
}

pub fn modified_pairing(
    a: &LambdaCohClass,
    b: &LambdaCohClass,
    spec: &BundleSpec,
    weights: &FactorWeights,
) -> Result<LaurentPoly> {
    omega_v(&(a * b), spec, weights)
}

/// `p^r`
pub fn monomial_basis(s: usize, r: usize) -> LambdaCohClass {
    LambdaCohClass::from_class(CohClass::monomial(s, Rational::one(), r))
}

/// Closed form `T^t = p^{s-t} E^-/E^+`, dual to `T_r = p^r` under the modified pairing.
pub fn dual_basis(spec: &BundleSpec, weights: &FactorWeights) -> Result<Vec<LambdaCohClass>> {
    let (plus, minus) = equivariant_euler(spec, weights)?;
    inverse_minus(&minus)?;
    let plus_inv = plus.try_inverse().map_err(|_| {
        Error::NotInvertible("E^+ has a summand with zero lambda weight".into())
    })?;
    let ratio = &minus * &plus_inv;
    let s = spec.s();
    Ok((0..=s).map(|t| &monomial_basis(s, s - t) * &ratio).collect())
}

/// `g_{rt} = <p^r, p^t>_V`
pub fn gram_matrix(spec: &BundleSpec, weights: &FactorWeights) -> Result<Vec<Vec<LaurentPoly>>> {
    let s = spec.s();
    (0..=s)
        .map(|r| {
            (0..=s)
                .map(|t| modified_pairing(&monomial_basis(s, r), &monomial_basis(s, t), spec, weights))
                .collect()
        })
        .collect()
}

/// Dual basis through `T^t = sum_j g^{tj} p^j`, inverting the Gram matrix over
/// `Q(lambda)`. Row `t` holds the coefficients of `p^0 ... p^s` in `T^t`.
pub fn dual_basis_by_solve(spec: &BundleSpec, weights: &FactorWeights) -> Result<Vec<Vec<RatFunc>>> {
    let gram: Vec<Vec<RatFunc>> = gram_matrix(spec, weights)?
        .iter()
        .map(|row| row.iter().map(LaurentPoly::to_ratfunc).collect())
        .collect();
    invert_matrix(gram)
}

/// Gauss-Jordan elimination over a field of rational functions.
fn invert_matrix(mut m: Vec<Vec<RatFunc>>) -> Result<Vec<Vec<RatFunc>>> {
    let n = m.len();
    let mut inv: Vec<Vec<RatFunc>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::NotInvertible("singular pairing matrix".into()))?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].recip()?;
        for j in 0..n {
            m[col][j] = &m[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in 0..n {
                let a = &m[r][j] - &(&factor * &m[col][j]);
                m[r][j] = a;
                let b = &inv[r][j] - &(&factor * &inv[col][j]);
                inv[r][j] = b;
            }
        }
    }
    debug_assert!(m.iter().enumerate().all(|(i, row)| row
        .iter()
        .enumerate()
        .all(|(j, x)| if i == j { *x == RatFunc::one() } else { x.is_zero() })));
    Ok(inv)
}

/// Evaluates a Laurent polynomial pairing value at a specific `lambda`.
pub fn pairing_value_at(value: &LaurentPoly, lambda: &Rational) -> Result<Rational> {
    if lambda.is_zero() && value.terms().any(|(e, _)| e < 0) {
        return Err(Error::Pole { at: lambda.clone() });
    }
    value.eval(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn local_p2() -> (BundleSpec, FactorWeights) {
        let spec = BundleSpec::local_p2();
        let w = FactorWeights::standard(&spec);
        (spec, w)
    }

    /// `a p^2 + b p + c lambda` style builder on P^s with lambda-degree per term.
    fn class(s: usize, terms: &[(usize, i64, i64)]) -> LambdaCohClass {
        terms.iter().fold(LambdaCohClass::zero(s), |acc, &(a, e, c)| {
            &acc + &LambdaCohClass::monomial(CohClass::monomial(s, int(c), a), e)
        })
    }

    #[test]
    fn euler_examples() {
        let (plus, minus) = euler_classes(&BundleSpec::local_p2());
        assert_eq!(plus, CohClass::one(2));
        assert_eq!(minus, CohClass::monomial(2, int(-3), 1));
        let (_, minus) = euler_classes(&BundleSpec::aspinwall_morrison());
        assert_eq!(minus, CohClass::zero(1));
        let (plus, _) = euler_classes(&BundleSpec::new(4, vec![5], vec![]).unwrap());
        assert_eq!(plus, CohClass::monomial(4, int(5), 1));
    }

    #[test]
    fn local_p2_pairings() {
        let (spec, w) = local_p2();
        let p = class(2, &[(1, 0, 1)]);
        let t1 = class(2, &[(2, 0, -3), (1, 1, -1)]);
        let t0 = class(2, &[(2, 1, -1)]);
        let one = LambdaCohClass::one(2);
        assert_eq!(modified_pairing(&p, &t1, &spec, &w).unwrap(), LaurentPoly::constant(int(1)));
        assert_eq!(modified_pairing(&one, &t0, &spec, &w).unwrap(), LaurentPoly::constant(int(1)));
        assert!(modified_pairing(&one, &t1, &spec, &w).unwrap().is_zero());
        assert!(modified_pairing(&LambdaCohClass::zero(2), &p, &spec, &w).unwrap().is_zero());
    }

    #[test]
    fn local_p2_dual_basis() {
        let (spec, w) = local_p2();
        let dual = dual_basis(&spec, &w).unwrap();
        assert_eq!(dual[0], class(2, &[(2, 1, -1)]));
        assert_eq!(dual[1], class(2, &[(2, 0, -3), (1, 1, -1)]));
        assert_eq!(dual[2], class(2, &[(1, 0, -3), (0, 1, -1)]));
    }

    #[test]
    fn zero_weight_on_negative_summand() {
        let spec = BundleSpec::local_p2();
        let w = FactorWeights { plus: vec![], minus: vec![int(0)] };
        let one = LambdaCohClass::one(2);
        assert!(matches!(
            modified_pairing(&one, &one, &spec, &w),
            Err(Error::NotInvertible(_))
        ));
        assert!(dual_basis(&spec, &w).is_err());
    }

    #[test]
    fn p1_with_o_minus_one_solve_matches_closed_form() {
        // O(-1) on P^1 with factor (-p - lambda). Pairing <p^r, p^t> = ∫ p^{r+t}/(-p-lambda):
        // 1/(-p-l) = -1/l + p/l^2, so g = [[1/l^2, -1/l], [-1/l, 0]] and
        // g^{-1} = [[0, -l], [-l, -1]]: T^0 = -l p, T^1 = -p - l.
        let spec = BundleSpec::new(1, vec![], vec![1]).unwrap();
        let w = FactorWeights::standard(&spec);
        let solved = dual_basis_by_solve(&spec, &w).unwrap();
        let l = RatFunc::x();
        assert_eq!(solved[0], vec![RatFunc::zero(), -&l]);
        assert_eq!(solved[1], vec![-&l, -&RatFunc::one()]);
        let closed: Vec<Vec<RatFunc>> =
            dual_basis(&spec, &w).unwrap().iter().map(|t| t.to_ratfunc_coeffs()).collect();
        assert_eq!(solved, closed);
    }

    #[test]
    fn pairing_value_rejects_lambda_zero_pole() {
        let v = LaurentPoly::from_terms([(-1, int(2))]);
        assert!(pairing_value_at(&v, &int(0)).is_err());
        assert_eq!(pairing_value_at(&v, &int(2)).unwrap(), int(1));
    }
}
