//! Quantitative checks on Rademacher chaos: Khintchine bounds, moment growth,
//! random-sign averages, sup-norm concentration and the sum-set normal
//! approximation.

mod clt;
mod moments;
mod params;
mod rud;
mod signs;

pub use crate::report::CertificateReport;
pub use clt::{
    clt_criteria, clt_sharp, clt_star, clt_table, kolmogorov_distance, normalized_sum_cdf, CltRow, CltThresholds,
    NormalApprox, StarCount, PAIR_BUDGET,
};
pub use moments::{blei_bound_check, khintchine_check, moment_table, MomentTable, KHINTCHINE_MAX_TERMS};
pub use params::VerificationParams;
pub use rud::{
    averaged_sup_growth, bernstein_tail, lower_bound_check, rud_average, sign_concentration_check, AverageMode,
    RudAverage, BALL_BUDGET, EXACT_PATTERN_TERMS,
};
pub use signs::MAX_TABLE_TERMS;
