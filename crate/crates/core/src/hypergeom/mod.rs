//! Hypergeometric series attached to a concavex bundle, nonequivariantly and
//! at the torus-fixed points.

mod bundle;
mod fixed;
mod iv;

pub use bundle::{BundleSpec, Case};
pub use fixed::{fixed_point_limit, sprime_coefficient, sprime_fixed, FixedPointSeries};
pub use iv::{invert_linear, iv_coefficient, iv_series};
pub(crate) use iv::{denominator, numerator};
