use std::time::Instant;

use super::{luxemburg_norm, ConcaveWeight, OrliczFunction, StepDistribution};
use crate::report::CertificateReport;
use crate::{Error, Result};

/// Dyadic levels `[2^{-(k+1)}, 2^{-k}]` examined before declaring divergence.
pub const MAX_LEVELS: usize = 1000;

/// Smallest `t` on the equivalence grid.
pub const RATIO_GRID_MIN: f64 = 1e-8;

const GL_NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// 8-point Gauss–Legendre of `f(t)` over `[a, b]` in the variable `s = ln t`.
fn level_integral(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (la, lb) = (a.ln(), b.ln());
    let (mid, half) = (0.5 * (la + lb), 0.5 * (lb - la));
    let mut acc = 0.0;
    for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
        for s in [mid - half * x, mid + half * x] {
            let t = s.exp();
            acc += w * f(t) * t;
        }
    }
    acc * half
}

/// Outcome of `∫_0^1 g(t) dt` on a geometric refinement toward 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailIntegral {
    /// `+∞` when the integral diverges.
    pub value: f64,
    pub levels: usize,
    pub finite: bool,
}

/// Integrates a non-negative integrand with a possible singularity at 0.
///
/// The integral is finite once a level contributes less than `tol` (relative
/// to the running total) while contributions are decreasing; the geometric
/// remainder is added. NaN is a numeric failure, `+∞` means divergence.
pub fn integrate_toward_zero(g: impl Fn(f64) -> f64, tol: f64) -> Result<TailIntegral> {
    let mut total = 0.0;
    let mut prev = f64::INFINITY;
    for k in 0..MAX_LEVELS {
        let b = 0.5f64.powi(k as i32);
        let c = level_integral(&g, 0.5 * b, b);
        if c.is_nan() {
            return Err(Error::NumericFailure(format!("integrand is NaN on [{}, {b}]", 0.5 * b)));
        }
        if c == f64::INFINITY {
            break;
        }
        total += c;
        if k >= 4 && c <= prev && c <= tol * total.max(1.0) {
            let rho = if prev > 0.0 { c / prev } else { 0.0 };
            let tail = if rho < 1.0 { c * rho / (1.0 - rho) } else { c };
            return Ok(TailIntegral {
                value: total + tail,
                levels: k + 1,
                finite: true,
            });
        }
        prev = c;
    }
    Ok(TailIntegral {
        value: f64::INFINITY,
        levels: MAX_LEVELS,
        finite: false,
    })
}

/// Checks the two conditions under which `L_M` and the Marcinkiewicz space
/// `M(φ)` coincide: `φ(t) ≍ 1/M^{-1}(1/t)` and `∫_0^1 M(ε/φ(t)) dt < ∞`.
///
/// The first is reported as the range of `φ(t)·M^{-1}(1/t)` over `grid`
/// log-spaced points of `[1e-8, 1]`.
pub fn coincidence_check(
    m: &OrliczFunction,
    phi: &ConcaveWeight,
    eps: f64,
    grid: usize,
    tol: f64,
) -> Result<CertificateReport> {
    let started = Instant::now();
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::invalid(format!("ε must be positive, got {eps}")));
    }
    if grid < 16 {
        return Err(Error::invalid(format!("grid needs at least 16 points, got {grid}")));
    }
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for k in 0..grid {
        let t = RATIO_GRID_MIN.powf(1.0 - k as f64 / (grid - 1) as f64);
        let ratio = phi.eval(t) * m.inverse(1.0 / t);
        if !ratio.is_finite() {
            return Err(Error::NumericFailure(format!("φ(t)·M⁻¹(1/t) is not finite at t = {t}")));
        }
        lo = lo.min(ratio);
        hi = hi.max(ratio);
    }
    let integral = integrate_toward_zero(|t| m.eval(eps / phi.eval(t)), tol)?;

    let mut report = CertificateReport::new("coincidence");
    report
        .input("orlicz", m)
        .input("weight", phi)
        .input("epsilon", eps)
        .input("grid", grid)
        .input("tol", tol);
    report
        .gt("ratio_min", lo, 0.0)
        .lt("ratio_max", hi, f64::INFINITY)
        .info("ratio_spread", hi / lo)
        .lt("integral", integral.value, f64::INFINITY)
        .info("integral_levels", integral.levels as f64);
    report.finish(started);
    Ok(report)
}

fn is_pow2(n: usize) -> bool {
    n > 0 && n & (n - 1) == 0
}

/// Compares `∫ ‖z(u,·)‖_M du` with `2·sup_t ‖z(·,t)‖_M` on a dyadic grid.
///
/// `z[u][t]` is the value on the cell pair `(u, t)`; both dimensions must be
/// powers of two.
pub fn fubini_orlicz_check(z: &[Vec<f64>], m: &OrliczFunction, tol: f64) -> Result<CertificateReport> {
    let started = Instant::now();
    let rows = z.len();
    let cols = z.first().map(Vec::len).unwrap_or(0);
    if rows == 0 || cols == 0 {
        return Err(Error::invalid("matrix is empty"));
    }
    if z.iter().any(|r| r.len() != cols) {
        return Err(Error::invalid("matrix rows have different lengths"));
    }
    if !is_pow2(rows) || !is_pow2(cols) {
        return Err(Error::invalid(format!("grid {rows}×{cols} is not a power-of-two grid")));
    }
    let mut lhs = 0.0;
    for row in z {
        lhs += luxemburg_norm(&StepDistribution::from_samples(row)?, m, tol)?;
    }
    lhs /= rows as f64;
    let mut sup: f64 = 0.0;
    let mut column = vec![0.0; rows];
    for t in 0..cols {
        for (u, row) in z.iter().enumerate() {
            column[u] = row[t];
        }
        sup = sup.max(luxemburg_norm(&StepDistribution::from_samples(&column)?, m, tol)?);
    }
    let rhs = 2.0 * sup;

    let mut report = CertificateReport::new("fubini_orlicz");
    report.input("orlicz", m).input("rows", rows).input("cols", cols);
    report.le("lhs", lhs, rhs).info("rhs", rhs);
    report.finish(started);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coincidence_of_exp_square_and_log_weight() {
        let m = OrliczFunction::exponential(2.0).unwrap();
        let phi = ConcaveWeight::log_power(0.5).unwrap();
        let r = coincidence_check(&m, &phi, 0.5, 64, 1e-12).unwrap();
        assert!(r.passed(), "{r}");
        // ∫_0^1 ((e/t)^{1/4} − 1) dt = (4/3)e^{1/4} − 1
        let exact = 4.0 / 3.0 * 0.25f64.exp() - 1.0;
        assert!((r.get("integral").unwrap() - exact).abs() < 1e-9);
        let spread = r.get("ratio_spread").unwrap();
        assert!(spread < 4.0);
        // min over s = ln(1/t) of √((s + ln(1 + e^{-s}))/(1 + s)) is 0.805245 at s ≈ 0.612
        let lo = r.get("ratio_min").unwrap();
        assert!((0.805245..0.806).contains(&lo), "{lo}");
    }

    #[test]
    fn harmonic_divergence_is_reported() {
        let m = OrliczFunction::power(2.0).unwrap();
        let phi = ConcaveWeight::power(0.5).unwrap();
        let r = coincidence_check(&m, &phi, 1.0, 32, 1e-12).unwrap();
        assert!((r.get("ratio_min").unwrap() - 1.0).abs() < 1e-12);
        assert!((r.get("ratio_max").unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(r.get("integral"), Some(f64::INFINITY));
        assert!(!r.passed());
    }

    #[test]
    fn linear_young_function_with_identity_weight_diverges() {
        // M(ε/φ(t)) = 1/t, which is not integrable at 0.
        let m = OrliczFunction::power(1.0).unwrap();
        let phi = ConcaveWeight::power(1.0).unwrap();
        let r = coincidence_check(&m, &phi, 1.0, 16, 1e-12).unwrap();
        assert_eq!(r.get("integral"), Some(f64::INFINITY));
    }

    #[test]
    fn integrable_power_singularity() {
        let v = integrate_toward_zero(|t: f64| t.powf(-0.5), 1e-13).unwrap();
        assert!(v.finite);
        assert!((v.value - 2.0).abs() < 1e-9, "{v:?}");
        let v = integrate_toward_zero(|_| 1.0, 1e-13).unwrap();
        assert!((v.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coincidence_argument_errors() {
        let m = OrliczFunction::power(2.0).unwrap();
        let phi = ConcaveWeight::power(0.5).unwrap();
        assert!(coincidence_check(&m, &phi, 0.0, 32, 1e-12).is_err());
        assert!(coincidence_check(&m, &phi, 1.0, 8, 1e-12).is_err());
    }

    #[test]
    fn fubini_separable_and_constant() {
        let m = OrliczFunction::power(2.0).unwrap();
        let z = vec![vec![1.0, -1.0], vec![-1.0, 1.0]];
        let r = fubini_orlicz_check(&z, &m, 1e-12).unwrap();
        assert!((r.get("lhs").unwrap() - 1.0).abs() < 1e-10);
        assert!((r.get("rhs").unwrap() - 2.0).abs() < 1e-10);
        assert!(r.passed());
        let ones = vec![vec![1.0; 4]; 4];
        let r = fubini_orlicz_check(&ones, &OrliczFunction::exponential(1.0).unwrap(), 1e-12).unwrap();
        assert!((2.0 * r.get("lhs").unwrap() - r.get("rhs").unwrap()).abs() < 1e-9);
    }

    #[test]
    fn fubini_shape_errors() {
        let m = OrliczFunction::power(2.0).unwrap();
        assert!(fubini_orlicz_check(&[], &m, 1e-10).is_err());
        assert!(fubini_orlicz_check(&vec![vec![1.0; 3]; 2], &m, 1e-10).is_err());
        assert!(fubini_orlicz_check(&[vec![1.0; 2], vec![1.0]], &m, 1e-10).is_err());
    }
}
