use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;

use super::signs::SignTable;
use crate::combdim::{gen_triangle, BlockChoice};
use crate::report::CertificateReport;
use crate::symspace::{fundamental_function, norm, SpaceSpec};
use crate::walsh::{chaos_sum, distribution_exact, randomize_signs, sample_config, CoefficientMap, IndexSet, MultiIndex};
use crate::{Error, Result};

/// Most terms whose sign patterns are enumerated exactly.
pub const EXACT_PATTERN_TERMS: usize = 20;

/// Largest Hamming-ball union enumerated during concentration checks.
pub const BALL_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AverageMode {
    /// All `2^{|A′|}` sign patterns.
    Exact,
    MonteCarlo { samples: u64, seed: u64 },
}

impl fmt::Display for AverageMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AverageMode::Exact => f.write_str("exact"),
            AverageMode::MonteCarlo { samples, seed } => write!(f, "mc(samples={samples}, seed={seed})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RudAverage {
    /// Mean over sign patterns of the randomised sum's norm.
    pub average: f64,
    pub deterministic: f64,
    /// `deterministic / average`.
    pub ratio: f64,
    /// Standard error of `average`; zero in exact mode.
    pub stderr: f64,
    pub patterns: u64,
}

fn pattern_bits(u: &[u64], i: usize) -> bool {
    (u[i / 64] >> (i % 64)) & 1 == 1
}

fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Average norm of `Σ ε_ȷ a_ȷ 𝐫_ȷ` over sign patterns `ε`, against the norm of
/// `Σ a_ȷ 𝐫_ȷ`.
pub fn rud_average(
    coeffs: &CoefficientMap,
    space: &SpaceSpec,
    mode: AverageMode,
    bits_cap: u32,
    tol: f64,
) -> Result<RudAverage> {
    space.validate()?;
    let keys: Vec<MultiIndex> = coeffs.keys().cloned().collect();
    let terms = keys.len();
    let norm_of = |u: &[u64]| -> Result<f64> {
        let flips: BTreeMap<MultiIndex, i8> = keys
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), if pattern_bits(u, i) { -1 } else { 1 }))
            .collect();
        let dist = distribution_exact(&randomize_signs(coeffs, &flips)?, bits_cap)?;
        norm(&dist, space, tol)
    };
    let deterministic = norm(&distribution_exact(&chaos_sum(coeffs)?, bits_cap)?, space, tol)?;
    let (average, stderr, patterns) = match mode {
        AverageMode::Exact => {
            if terms > EXACT_PATTERN_TERMS {
                return Err(Error::limit("exact sign patterns (terms)", terms as u64, EXACT_PATTERN_TERMS as u64));
            }
            // ε and −ε give functions with the same |f|, so half the patterns suffice.
            let half = 1u64 << (terms - 1);
            let values = (0..half)
                .into_par_iter()
                .map(|u| norm_of(&[u]))
                .collect::<Result<Vec<f64>>>()?;
            (values.iter().sum::<f64>() / half as f64, 0.0, 1u64 << terms)
        }
        AverageMode::MonteCarlo { samples, seed } => {
            if samples == 0 {
                return Err(Error::invalid("Monte Carlo needs at least one sample"));
            }
            let values = (0..samples)
                .into_par_iter()
                .map(|s| norm_of(&sample_config(seed, s, terms)))
                .collect::<Result<Vec<f64>>>()?;
            let (m, se) = mean_and_stderr(&values);
            (m, se, samples)
        }
    };
    if average <= 0.0 {
        return Err(Error::NumericFailure("average norm vanishes".into()));
    }
    Ok(RudAverage {
        average,
        deterministic,
        ratio: deterministic / average,
        stderr,
        patterns,
    })
}

/// `(P(|ε_1 + … + ε_m| > λ), 2·exp(−λ²/(2m)))` for independent fair signs.
pub fn bernstein_tail(m: usize, lambda: f64) -> (f64, f64) {
    let mf = m as f64;
    let bound = 2.0 * (-lambda * lambda / (2.0 * mf)).exp();
    let mut log_pmf = -mf * std::f64::consts::LN_2;
    let mut tail = 0.0;
    for h in 0..=m {
        if (mf - 2.0 * h as f64).abs() > lambda {
            tail += log_pmf.exp();
        }
        log_pmf += ((m - h) as f64 / (h + 1) as f64).ln();
    }
    (tail.min(1.0), bound)
}

/// Enumerates every pattern within Hamming distance `h` of a center.
fn ball_union(centers: &[u128], m: usize, h: usize) -> HashSet<u128> {
    let mut out = HashSet::new();
    let mut idx: Vec<usize> = Vec::with_capacity(h);
    for &c in centers {
        out.insert(c);
        for r in 1..=h {
            idx.clear();
            idx.extend(0..r);
            loop {
                out.insert(idx.iter().fold(c, |acc, &i| acc ^ 1 << i));
                let mut i = r;
                while i > 0 && idx[i - 1] == m - (r - i) - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                idx[i - 1] += 1;
                for k in i..r {
                    idx[k] = idx[k - 1] + 1;
                }
            }
        }
    }
    out
}

fn ball_volume(m: usize, h: usize) -> u64 {
    (0..=h).map(|i| crate::combdim::binomial(m as u64, i as u64)).fold(0u64, u64::saturating_add)
}

/// Fraction of sign patterns `u` with `max_t |Σ u_ȷ 𝐫_ȷ(t)| > threshold`.
fn exceedance_fraction(table: &SignTable, threshold: f64) -> Result<(f64, &'static str)> {
    let m = table.m;
    let mf = m as f64;
    if threshold >= mf {
        return Ok((0.0, "threshold above maximum"));
    }
    // |Σ| > T iff u lies within distance h of a row or its complement.
    let h = ((mf - threshold) / 2.0).ceil() as usize - 1;
    let centers = table.extremal_patterns();
    let ball_cost = (centers.len() as u64).saturating_mul(ball_volume(m, h));
    let brute_cost = if m < 64 { (1u64 << m).saturating_mul(table.rows.len() as u64) } else { u64::MAX };
    if ball_cost <= BALL_BUDGET && ball_cost <= brute_cost {
        let hits = ball_union(&centers, m, h).len() as f64;
        return Ok((hits * (-mf).exp2(), "hamming-ball union"));
    }
    if brute_cost <= BALL_BUDGET * 8 {
        let limit = m as u32 - 2 * h as u32;
        let hits: u64 = (0..1u64 << m)
            .into_par_iter()
            .filter(|&u| table.sup_abs(u as u128) >= limit)
            .count() as u64;
        return Ok((hits as f64 * (-mf).exp2(), "pattern enumeration"));
    }
    Err(Error::limit("concentration pattern search", ball_cost.min(brute_cost), BALL_BUDGET))
}

/// Largest `n ≥ d` whose full blocks stay within both enumeration caps.
fn suggested_n(d: usize, bits_cap: u32) -> usize {
    let mut n = d;
    while (d * (n + 1)) as u32 <= bits_cap.min(63)
        && crate::combdim::binomial((n + 1) as u64, d as u64) <= super::signs::MAX_TABLE_TERMS as u64
    {
        n += 1;
    }
    n
}

/// Sup-norm concentration of randomly signed sums over `A ∩ B`.
///
/// With `m = |A ∩ B| = n^δ` and `T = √(2d)·n^{(δ+1)/2}`, checks that the
/// fraction of sign patterns whose sum exceeds `T` in sup-norm is at most
/// `2(e/2)^{-dn}`, and that the tail of `m` fair signs at `λ = T` obeys
/// `2·exp(−λ²/(2m))`.
pub fn sign_concentration_check(set: &IndexSet, blocks: &BlockChoice, bits_cap: u32) -> Result<CertificateReport> {
    let started = Instant::now();
    let d = set.order();
    let n = blocks.size();
    if n < 2 {
        return Err(Error::invalid("block size must be ≥ 2 for δ = log_n |A ∩ B|"));
    }
    let inside = set.intersect_blocks(blocks)?;
    let m = inside.len();
    if m == 0 {
        return Err(Error::EmptyInput("A ∩ B"));
    }
    let table = SignTable::new(&inside, bits_cap).map_err(|e| match e {
        Error::ResourceLimit { what, required, cap } => Error::ResourceLimit {
            what: format!("{what} (try n ≤ {})", suggested_n(d, bits_cap)),
            required,
            cap,
        },
        other => other,
    })?;
    let nf = n as f64;
    let delta = (m as f64).ln() / nf.ln();
    let threshold = (2.0 * d as f64).sqrt() * nf.powf((delta + 1.0) / 2.0);
    let (q, method) = exceedance_fraction(&table, threshold)?;
    let q_bound = 2.0 * (std::f64::consts::E / 2.0).powf(-((d * n) as f64));
    // The law of Σ u_ȷ 𝐫_ȷ(t) over u is that of m fair signs for every t.
    let (tail, tail_bound) = bernstein_tail(m, threshold);
    let mut report = CertificateReport::new("sign_concentration");
    report
        .input("d", d)
        .input("n", n)
        .input("blocks", blocks)
        .input("method", method);
    report
        .info("m", m as f64)
        .info("delta", delta)
        .info("threshold", threshold)
        .info("support_bits", table.support_bits as f64)
        .le("exceedance", q, q_bound)
        .le("tail", tail, tail_bound);
    report.finish(started);
    Ok(report)
}

fn averaged_sup(table: &SignTable, samples: u64, seed: u64, exact: bool) -> (f64, f64) {
    if exact {
        let half = 1u64 << (table.m - 1);
        let total: u64 = (0..half).into_par_iter().map(|u| table.sup_abs(u as u128) as u64).sum();
        (total as f64 / half as f64, 0.0)
    } else {
        let values: Vec<f64> = (0..samples)
            .into_par_iter()
            .map(|s| {
                let w = sample_config(seed, s, table.m);
                let u = w[0] as u128 | (w.get(1).copied().unwrap_or(0) as u128) << 64;
                table.sup_abs(u) as f64
            })
            .collect();
        mean_and_stderr(&values)
    }
}

/// `R(n) = ‖Σ 𝐫_ȷ‖_∞ / E_ε ‖Σ ε_ȷ 𝐫_ȷ‖_∞` over `Δ^d ∩ {1, …, n}^d`.
///
/// The average is exact when `2^{m + n}` fits the enumeration cap and Monte
/// Carlo otherwise. Each consecutive pair must increase, allowing three
/// combined standard errors.
pub fn averaged_sup_growth(
    d: usize,
    n_list: &[usize],
    mc_samples: u64,
    seed: u64,
    bits_cap: u32,
) -> Result<CertificateReport> {
    let started = Instant::now();
    if n_list.len() < 2 {
        return Err(Error::invalid("growth check needs at least two block sizes"));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("block sizes must increase"));
    }
    let mut report = CertificateReport::new("averaged_sup_growth");
    report
        .input("d", d)
        .input("n_list", n_list.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(","))
        .input("mc_samples", mc_samples)
        .input("seed", seed);
    let mut rs: Vec<(f64, f64)> = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let set = gen_triangle(d, n as u32)?;
        let table = SignTable::new(&set, bits_cap)?;
        let exact = table.m + n <= bits_cap as usize;
        if !exact && mc_samples == 0 {
            return Err(Error::limit("exact sign patterns (bits)", (table.m + n) as u64, bits_cap as u64));
        }
        let (avg, se) = averaged_sup(&table, mc_samples, seed, exact);
        let det = table.sup_abs(0) as f64;
        let r = det / avg;
        let r_se = r * se / avg;
        report
            .info(format!("det_sup[{n}]"), det)
            .info(format!("avg_sup[{n}]"), avg)
            .info(format!("R[{n}]"), r)
            .info(format!("R_stderr[{n}]"), r_se);
        rs.push((r, r_se));
    }
    for (w, ns) in rs.windows(2).zip(n_list.windows(2)) {
        let slack = 3.0 * (w[0].1.powi(2) + w[1].1.powi(2)).sqrt();
        report.gt(format!("increase[{}->{}]", ns[0], ns[1]), w[1].0 - w[0].0 + slack, 0.0);
    }
    let (first, last) = (rs[0], rs[rs.len() - 1]);
    report.info("growth", last.0 / first.0).info(
        "growth_stderr",
        last.0 / first.0 * ((first.1 / first.0).powi(2) + (last.1 / last.0).powi(2)).sqrt(),
    );
    report.finish(started);
    Ok(report)
}

/// `‖Σ_{ȷ ∈ A∩B} 𝐫_ȷ‖_X ≥ |A ∩ B|·φ_X(2^{-dn})`.
pub fn lower_bound_check(
    set: &IndexSet,
    blocks: &BlockChoice,
    space: &SpaceSpec,
    bits_cap: u32,
    tol: f64,
) -> Result<CertificateReport> {
    let started = Instant::now();
    let inside = set.intersect_blocks(blocks)?;
    if inside.is_empty() {
        return Err(Error::EmptyInput("A ∩ B"));
    }
    let m = inside.len() as f64;
    let dn = (set.order() * blocks.size()) as i32;
    let f = chaos_sum(&CoefficientMap::unit(&inside))?;
    let lhs = norm(&distribution_exact(&f, bits_cap)?, space, tol)?;
    let phi = fundamental_function(space, 2f64.powi(-dn), tol)?;
    let mut report = CertificateReport::new("lower_bound");
    report.input("space", space).input("blocks", blocks);
    report
        .info("m", m)
        .info("phi", phi)
        .ge("norm", lhs, m * phi - 1e-9);
    report.finish(started);
    Ok(report)
}
