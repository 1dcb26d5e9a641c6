//! The truncated cohomology ring of `P^s`, its Laurent extensions, fixed-point
//! localization, and the modified pairing.

mod class;
mod laurent;
mod localization;
mod pairing;
mod weights;

pub use class::{coh_mul, CohClass};
pub use laurent::{CohLaurent, HLaurent, Hbar, Lambda, LambdaCohClass, LaurentPoly, Variable};
pub use localization::{integrate_ps, interpolate_class, localization_integral, restrict_class};
pub use pairing::{
    dual_basis, dual_basis_by_solve, equivariant_euler, euler_classes, gram_matrix,
    modified_pairing, monomial_basis, omega_v, pairing_value_at, FactorWeights,
};
pub use weights::{EquivWeights, LinearForm};
