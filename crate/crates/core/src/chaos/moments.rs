use std::time::Instant;

use crate::combdim::linear_fit;
use crate::report::CertificateReport;
use crate::symspace::{norm, SpaceSpec, StepDistribution};
use crate::walsh::{chaos_sum, distribution_exact, CoefficientMap, IndexSet, SignFunction};
use crate::{Error, Result};

/// Most coefficients `khintchine_check` enumerates.
pub const KHINTCHINE_MAX_TERMS: usize = 20;

fn check_p(p: f64) -> Result<()> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::invalid(format!("moment exponent must be finite and ≥ 1, got {p}")));
    }
    Ok(())
}

fn lp(dist: &StepDistribution, p: f64) -> Result<f64> {
    norm(dist, &SpaceSpec::Lp(p), crate::DEFAULT_TOL)
}

/// Exact `‖Σ a_j r_j‖_p` against `(1/√2)‖a‖₂` and `√max(p, 2)·‖a‖₂`.
pub fn khintchine_check(a: &[f64], p: f64) -> Result<CertificateReport> {
    let started = Instant::now();
    check_p(p)?;
    if a.len() > KHINTCHINE_MAX_TERMS {
        return Err(Error::limit("Khintchine coefficients", a.len() as u64, KHINTCHINE_MAX_TERMS as u64));
    }
    if a.is_empty() {
        return Err(Error::EmptyInput("coefficient list"));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("coefficients must be finite"));
    }
    let coeffs = CoefficientMap::linear(a);
    let dist = distribution_exact(&chaos_sum(&coeffs)?, KHINTCHINE_MAX_TERMS as u32)?;
    let value = lp(&dist, p)?;
    let l2 = coeffs.l2_norm();
    let mut report = CertificateReport::new("khintchine");
    report.input("k", a.len()).input("p", p);
    report
        .info("norm_p", value)
        .info("l2", l2)
        .ge("lower", value, l2 / 2f64.sqrt())
        .le("upper", value, p.max(2.0).sqrt() * l2);
    report.finish(started);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    /// `(p, ‖f‖_p)` in the order requested.
    pub rows: Vec<(f64, f64)>,
    pub sup_norm: f64,
    /// Least-squares slope of `ln ‖f‖_p` against `ln p`; `None` with fewer
    /// than two distinct `p` or a vanishing function.
    pub theta: Option<f64>,
}

pub fn moment_table(f: &SignFunction, p_list: &[f64], bits_cap: u32) -> Result<MomentTable> {
    if p_list.is_empty() {
        return Err(Error::EmptyInput("moment exponents"));
    }
    for &p in p_list {
        check_p(p)?;
    }
    let dist = distribution_exact(f, bits_cap)?;
    let rows = p_list
        .iter()
        .map(|&p| Ok((p, lp(&dist, p)?)))
        .collect::<Result<Vec<_>>>()?;
    let theta = if rows.iter().all(|r| r.1 > 0.0) {
        let x: Vec<f64> = rows.iter().map(|r| r.0.ln()).collect();
        let y: Vec<f64> = rows.iter().map(|r| r.1.ln()).collect();
        linear_fit(&x, &y).ok().map(|fit| fit.0)
    } else {
        None
    };
    Ok(MomentTable { rows, sup_norm: dist.sup_abs(), theta })
}

/// Ratios `‖S‖_p / (p^{β/2}‖a‖₂)` for `S = Σ_{ȷ∈A} a_ȷ 𝐫_ȷ`.
///
/// No constant is asserted; the report only checks that the largest ratio is
/// finite and records where it occurs.
pub fn blei_bound_check(
    set: &IndexSet,
    coeffs: &CoefficientMap,
    beta: f64,
    p_list: &[f64],
    bits_cap: u32,
) -> Result<CertificateReport> {
    let started = Instant::now();
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::invalid(format!("β must be positive, got {beta}")));
    }
    if let Some(k) = coeffs.keys().find(|k| !set.contains(k)) {
        return Err(Error::invalid(format!("coefficient index ({k}) is not in the set")));
    }
    let table = moment_table(&chaos_sum(coeffs)?, p_list, bits_cap)?;
    let l2 = coeffs.l2_norm();
    let mut report = CertificateReport::new("blei_bound");
    report.input("beta", beta).input("terms", coeffs.len()).input("set_size", set.len());
    let mut best = (f64::NEG_INFINITY, f64::NAN);
    for &(p, v) in &table.rows {
        let ratio = v / (p.powf(beta / 2.0) * l2);
        report.info(format!("ratio[{p}]"), ratio);
        if ratio > best.0 {
            best = (ratio, p);
        }
    }
    report.lt("max_ratio", best.0, f64::INFINITY).info("argmax_p", best.1);
    report.finish(started);
    Ok(report)
}
