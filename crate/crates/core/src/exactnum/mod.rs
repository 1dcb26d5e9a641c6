//! Exact scalar and series kernel.

mod algebra;
mod poly;
mod ratfunc;
mod rational;
mod series;

pub use algebra::Algebra;
pub use poly::Poly;
pub use ratfunc::{ratfunc_partial_eval, RatFunc};
pub use rational::{
    checked_div, common_denominator, factorial, frac, int, is_negative, pow, rat_arith, ArithOp,
    Rational,
};
pub use series::{series_exp, series_mul, series_revert, QSeries};
