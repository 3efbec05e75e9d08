use super::{max_density, BlockChoice, BlockDensity, SearchStrategy};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DensityRow {
    pub n: usize,
    pub best_count: u64,
    pub witness: BlockChoice,
    pub strategy: SearchStrategy,
}

/// Best block counts per tested `n`, with the log-log fit.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub rows: Vec<DensityRow>,
    /// Least-squares slope of `ln best_count` against `ln n`.
    pub alpha_hat: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Standard error of the slope; zero when only the exact-fit case applies.
    pub slope_stderr: f64,
}

/// `(slope, intercept, r², stderr(slope))` of ordinary least squares.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<(f64, f64, f64, f64)> {
    if x.len() != y.len() {
        return Err(Error::invalid("fit needs equally many x and y values"));
    }
    let k = x.len();
    if k < 2 {
        return Err(Error::DegenerateFit(format!("{k} points")));
    }
    let kf = k as f64;
    let mx = x.iter().sum::<f64>() / kf;
    let my = y.iter().sum::<f64>() / kf;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all x values coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - sse / syy };
    let stderr = if k > 2 { (sse / (kf - 2.0) / sxx).sqrt() } else { 0.0 };
    Ok((slope, intercept, r2, stderr))
}

pub fn estimate_dimension<A: BlockDensity>(
    set: &A,
    n_list: &[usize],
    universe: u32,
    strategy: SearchStrategy,
) -> Result<DensityProfile> {
    if n_list.len() < 3 {
        return Err(Error::invalid(format!(
            "dimension fit needs at least 3 block sizes, got {}",
            n_list.len()
        )));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let (best_count, witness) = max_density(set, n, universe, strategy)?;
        if best_count == 0 {
            return Err(Error::DegenerateFit(format!("no elements in blocks of size {n}")));
        }
        rows.push(DensityRow { n, best_count, witness, strategy });
    }
    let x: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let y: Vec<f64> = rows.iter().map(|r| (r.best_count as f64).ln()).collect();
    let (alpha_hat, intercept, r_squared, slope_stderr) = linear_fit(&x, &y)?;
    Ok(DensityProfile { rows, alpha_hat, intercept, r_squared, slope_stderr })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combdim::{gen_sum_set, StructuredSet};

    const NS: [usize; 5] = [64, 128, 256, 512, 1024];

    #[test]
    fn sum_set_slope() {
        let p = estimate_dimension(&StructuredSet::sum_set(2100).unwrap(), &NS, 2100, SearchStrategy::IdentityBlocks).unwrap();
        assert_eq!(p.rows[0].best_count, 63 * 63 / 4);
        assert!((p.alpha_hat - 2.010304).abs() < 1e-5, "{}", p.alpha_hat);
        assert!(p.r_squared > 0.9999);
    }

    #[test]
    fn triangle_slopes() {
        let t1 = StructuredSet::triangle(1, 1100).unwrap();
        let p = estimate_dimension(&t1, &NS, 1100, SearchStrategy::IdentityBlocks).unwrap();
        assert!((p.alpha_hat - 1.0).abs() < 1e-12);
        let t3 = StructuredSet::triangle(3, 1100).unwrap();
        let p = estimate_dimension(&t3, &NS, 1100, SearchStrategy::IdentityBlocks).unwrap();
        assert!((p.alpha_hat - 3.015416).abs() < 1e-5, "{}", p.alpha_hat);
    }

    #[test]
    fn materialised_and_structured_agree() {
        let ns = [8, 16, 32];
        let a = estimate_dimension(&gen_sum_set(64).unwrap(), &ns, 64, SearchStrategy::IdentityBlocks).unwrap();
        let b = estimate_dimension(&StructuredSet::sum_set(64).unwrap(), &ns, 64, SearchStrategy::IdentityBlocks).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn degenerate_inputs() {
        let s = gen_sum_set(40).unwrap();
        assert!(estimate_dimension(&s, &[4, 8], 40, SearchStrategy::IdentityBlocks).is_err());
        let err = estimate_dimension(&s, &[2, 4, 8], 40, SearchStrategy::IdentityBlocks).unwrap_err();
        assert!(matches!(err, Error::DegenerateFit(_)));
    }

    #[test]
    fn fit_on_a_line() {
        let (s, i, r2, se) = linear_fit(&[0.0, 1.0, 2.0, 3.0], &[1.0, 3.0, 5.0, 7.0]).unwrap();
        assert!((s - 2.0).abs() < 1e-15 && (i - 1.0).abs() < 1e-15);
        assert_eq!(r2, 1.0);
        assert!(se < 1e-15);
    }
}
