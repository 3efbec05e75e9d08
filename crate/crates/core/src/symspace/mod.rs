//! Rearrangements and norms of finite distributions in symmetric spaces on
//! `[0, 1]`: `L_p`, `L_∞`, Orlicz, Lorentz, Marcinkiewicz and `ExpL^r`.

mod checks;
mod distribution;
mod functions;
mod norm;
pub mod normal;

pub use checks::{coincidence_check, fubini_orlicz_check, integrate_toward_zero, TailIntegral};
pub use distribution::{decreasing_rearrangement, RearrangementStep, StepDistribution, MASS_TOL};
pub use functions::{ConcaveWeight, OrliczFunction};
pub use norm::{fundamental_function, luxemburg_norm, norm, ExpMethod, SpaceSpec};
pub use normal::normal_cdf;
