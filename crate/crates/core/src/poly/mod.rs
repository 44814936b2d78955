//! Sparse polynomials in the primal ring `S` and the dual ring `T`.

mod monomial;
mod mpoly;
mod ops;
mod parse;

pub use monomial::{monomial_basis, Monomial, MonomialIndex};
pub use mpoly::{MPoly, RingKind};
pub(crate) use ops::apply_factor;
pub use ops::{
    contract_apply, diff_apply, linear_form, poly_eval, power_of_linear, substitute_linear,
    LinearParam,
};
pub use parse::{parse_named, parse_poly};
