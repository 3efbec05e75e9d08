//! Exact computation toolkit for fractional Rademacher chaos.
//!
//! The crate is organised bottom-up:
//!
//! * [`walsh`] builds Rademacher functions, chaos monomials and their linear
//!   combinations as functions on the sign hypercube, and extracts their exact
//!   (or seeded Monte Carlo) distributions.
//! * [`symspace`] turns finite distributions into decreasing rearrangements and
//!   norms in concrete symmetric spaces: `L_p`, `L_∞`, Orlicz, Lorentz,
//!   Marcinkiewicz and exponential `ExpL^r`.
//! * [`combdim`] generates index sets, counts and maximises block densities and
//!   estimates combinatorial dimension.
//! * [`chaos`] runs the quantitative checks (Khintchine bounds, moment growth,
//!   random-sign averages, sup-norm concentration, the sum-set normal
//!   approximation) and returns [`report::CertificateReport`]s.
//! * [`cli`] is the command-line surface used by the `chaoslab` binary.
//!
//! ```
//! use chaoslab::walsh::{chaos_sum, distribution_exact, CoefficientMap, MultiIndex};
//! use chaoslab::symspace::{norm, SpaceSpec};
//!
//! let mut coeffs = CoefficientMap::new();
//! coeffs.insert(MultiIndex::new(vec![1]).unwrap(), 1.0).unwrap();
//! coeffs.insert(MultiIndex::new(vec![2]).unwrap(), 1.0).unwrap();
//! let f = chaos_sum(&coeffs).unwrap();
//! let dist = distribution_exact(&f, 24).unwrap();
//! let l4 = norm(&dist, &SpaceSpec::Lp(4.0), 1e-10).unwrap();
//! assert!((l4 - 8f64.powf(0.25)).abs() < 1e-12);
//! ```

pub mod chaos;
pub mod cli;
pub mod combdim;
mod error;
pub mod report;
pub mod symspace;
pub mod walsh;

pub use error::{Error, Result};

/// Default cap on the number of sign coordinates enumerated exactly.
pub const DEFAULT_BITS_CAP: u32 = 24;

/// Default relative tolerance for root finding and scalar maximisation.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Worker pool honouring `CHAOSLAB_THREADS`, built once per process.
pub fn init_thread_pool() {
    if let Some(n) = std::env::var("CHAOSLAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // A pool may already exist when embedded in a larger program.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
