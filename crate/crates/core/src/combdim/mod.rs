//! Index-set generation, block densities and combinatorial dimension.

mod blocks;
mod density;
mod dimension;
mod format;
mod generate;

pub use blocks::BlockChoice;
pub use density::{density_certificates, density_count, max_density, BlockDensity, SearchStrategy, EXHAUSTIVE_BUDGET};
pub use dimension::{estimate_dimension, linear_fit, DensityProfile, DensityRow};
pub use format::{format_index_set, parse_index_set, read_index_set, write_index_set};
pub use generate::{binomial, gen_sum_set, gen_triangle, StructuredSet, MATERIALIZE_CAP};
