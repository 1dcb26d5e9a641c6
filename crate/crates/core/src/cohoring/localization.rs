use num_traits::{One, Zero};

use super::{CohClass, EquivWeights};
use crate::exactnum::{Algebra, Poly, Rational};

/// Nonequivariant `∫_{P^s}`: the coefficient of `H^s`.
pub fn integrate_ps(a: &CohClass) -> Rational {
    a.coeff(a.s())
}

/// Atiyah-Bott on `P^s`: `∫ F(p) = sum_j F(lambda_j) / prod_{k != j}(lambda_j - lambda_k)`.
pub fn localization_integral(f: &Poly, w: &EquivWeights) -> Rational {
    (0..=w.s())
        .map(|j| f.eval(w.lambda(j)) / w.tangent_euler(j))
        .sum()
}

/// Values of a polynomial class `sum_a c_a p^a` at the fixed points.
pub fn restrict_class<T: Algebra>(coeffs: &[T], w: &EquivWeights) -> Vec<T> {
    (0..=w.s())
        .map(|j| {
            let lj = w.lambda(j);
            let mut acc = coeffs[0].zero_like();
            let mut power = Rational::one();
            for c in coeffs {
                acc = acc.add(&c.scale(&power));
                power *= lj;
            }
            acc
        })
        .collect()
}

/// The unique polynomial of degree <= s in `p` taking `values[j]` at `p = lambda_j`,
/// as coefficients of `p^0 ... p^s`.
pub fn interpolate_class<T: Algebra>(values: &[T], w: &EquivWeights) -> Vec<T> {
    assert_eq!(values.len(), w.s() + 1, "one value per fixed point");
    let zero = values[0].zero_like();
    let mut out = vec![zero; w.s() + 1];
    for (j, v) in values.iter().enumerate() {
        if v.vanishes() {
            continue;
        }
        // prod_{k != j} (p - lambda_k) / (lambda_j - lambda_k)
        let basis = (0..=w.s())
            .filter(|&k| k != j)
            .fold(Poly::one(), |acc, k| {
                &acc * &Poly::linear(-w.lambda(k), Rational::one())
            })
            .scale(&(Rational::one() / w.tangent_euler(j)));
        for (a, c) in basis.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out[a] = out[a].add(&v.scale(c));
            }
        }
    }
    out
}
