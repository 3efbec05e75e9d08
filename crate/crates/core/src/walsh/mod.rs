//! Rademacher functions, chaos monomials and their finite linear combinations
//! as functions on the sign hypercube.

mod function;
mod index;

pub use function::{
    chaos_monomial, chaos_sum, distribution_exact, distribution_mc, evaluate_dyadic, rademacher, randomize_signs,
    sample_config, DyadicStep, SignFunction, MAX_DYADIC_RESOLUTION, MERGE_TOL,
};
pub use index::{CoefficientMap, IndexSet, MultiIndex};
