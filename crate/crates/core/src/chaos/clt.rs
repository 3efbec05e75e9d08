use std::collections::HashMap;
use std::time::Instant;

use crate::report::CertificateReport;
use crate::symspace::{normal_cdf, StepDistribution};
use crate::walsh::{chaos_sum, distribution_exact, CoefficientMap, IndexSet, MultiIndex};
use crate::{Error, Result};

/// Largest `|A_N|²` scanned when collecting disjoint pairs.
pub const PAIR_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarCount {
    /// `max_k |{ȷ ∈ A_N : k ∈ ȷ}|`.
    pub max_count: u64,
    /// Smallest `k` attaining the maximum.
    pub argmax: u32,
    /// `|A_N|`.
    pub size: u64,
    pub ratio: f64,
}

fn truncate(set: &IndexSet, n: u32) -> Result<IndexSet> {
    if n < set.order() as u32 {
        return Err(Error::invalid(format!("N = {n} is below the order {}", set.order())));
    }
    let a = set.restrict_max(n);
    if a.is_empty() {
        return Err(Error::EmptyInput("A_N"));
    }
    Ok(a)
}

pub fn clt_star(set: &IndexSet, n: u32) -> Result<StarCount> {
    let a = truncate(set, n)?;
    let mut counts = vec![0u64; n as usize + 1];
    for e in &a {
        for &j in e.entries() {
            counts[j as usize] += 1;
        }
    }
    let (argmax, max_count) = counts
        .iter()
        .enumerate()
        .skip(1)
        .fold((1, 0), |best, (k, &c)| if c > best.1 { (k, c) } else { best });
    let size = a.len() as u64;
    Ok(StarCount {
        max_count,
        argmax: argmax as u32,
        size,
        ratio: max_count as f64 / size as f64,
    })
}

/// Ordered pairs `(u, v)` of `A_N` with disjoint entries whose `2d`-element
/// union is also the union of another disjoint pair `(u₁, v₁)`, `u₁ ∉ {u, v}`.
pub fn clt_sharp(set: &IndexSet, n: u32) -> Result<Vec<(MultiIndex, MultiIndex)>> {
    if set.order() < 2 {
        return Err(Error::invalid("pair condition needs order ≥ 2"));
    }
    let a: Vec<MultiIndex> = truncate(set, n)?.iter().cloned().collect();
    let pairs = (a.len() as u64).saturating_mul(a.len() as u64);
    if pairs > PAIR_BUDGET {
        return Err(Error::limit("pairs of A_N", pairs, PAIR_BUDGET));
    }
    // Unordered disjoint pairs grouped by entry union.
    let mut groups: HashMap<Vec<u32>, Vec<(usize, usize)>> = HashMap::new();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i].is_disjoint(&a[j]) {
                let mut union: Vec<u32> = a[i].entries().iter().chain(a[j].entries()).copied().collect();
                union.sort_unstable();
                groups.entry(union).or_default().push((i, j));
            }
        }
    }
    let mut out = Vec::new();
    for members in groups.values().filter(|m| m.len() > 1) {
        // Another unordered pair with the same union has its first element
        // outside {u, v}, since all members are disjoint splittings.
        for &(i, j) in members {
            out.push((a[i].clone(), a[j].clone()));
            out.push((a[j].clone(), a[i].clone()));
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CltRow {
    pub n: u32,
    pub size: u64,
    pub star_ratio: f64,
    pub sharp_count: u64,
    /// `|A^♯_N| / |A_N|²`.
    pub sharp_ratio: f64,
}

pub fn clt_table(set: &IndexSet, n_list: &[u32]) -> Result<Vec<CltRow>> {
    if n_list.is_empty() {
        return Err(Error::EmptyInput("N list"));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("N list must increase"));
    }
    n_list
        .iter()
        .map(|&n| {
            let star = clt_star(set, n)?;
            let sharp = if set.order() >= 2 { clt_sharp(set, n)?.len() as u64 } else { 0 };
            Ok(CltRow {
                n,
                size: star.size,
                star_ratio: star.ratio,
                sharp_count: sharp,
                sharp_ratio: sharp as f64 / (star.size as f64).powi(2),
            })
        })
        .collect()
}

/// Thresholds the last row of a CLT table must fall below.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CltThresholds {
    pub star: f64,
    pub sharp: f64,
}

impl Default for CltThresholds {
    fn default() -> Self {
        CltThresholds { star: 0.25, sharp: 0.01 }
    }
}

/// Both ratio sequences non-increasing in `N` and the last values below the
/// thresholds.
pub fn clt_criteria(set: &IndexSet, n_list: &[u32], thresholds: CltThresholds) -> Result<CertificateReport> {
    let started = Instant::now();
    let rows = clt_table(set, n_list)?;
    let mut report = CertificateReport::new("clt_criteria");
    report
        .input("n_list", n_list.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(","))
        .input("star_threshold", thresholds.star)
        .input("sharp_threshold", thresholds.sharp);
    for (i, row) in rows.iter().enumerate() {
        report
            .info(format!("size[{}]", row.n), row.size as f64)
            .info(format!("sharp_count[{}]", row.n), row.sharp_count as f64);
        match i.checked_sub(1).map(|p| rows[p]) {
            Some(prev) => {
                report
                    .le(format!("star_ratio[{}]", row.n), row.star_ratio, prev.star_ratio)
                    .le(format!("sharp_ratio[{}]", row.n), row.sharp_ratio, prev.sharp_ratio);
            }
            None => {
                report
                    .info(format!("star_ratio[{}]", row.n), row.star_ratio)
                    .info(format!("sharp_ratio[{}]", row.n), row.sharp_ratio);
            }
        }
    }
    let last = rows[rows.len() - 1];
    // Singleton and other degenerate tables are terminal as they stand.
    if rows.len() > 1 || last.size > 1 {
        report
            .lt("last_star_ratio", last.star_ratio, thresholds.star)
            .lt("last_sharp_ratio", last.sharp_ratio, thresholds.sharp);
    }
    report.finish(started);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalApprox {
    /// Exact law of `S_N = |A_N|^{-1/2} Σ_{ȷ ∈ A_N} 𝐫_ȷ`.
    pub distribution: StepDistribution,
    pub l2_norm: f64,
    /// `sup_x |F(x) − Φ(x)|`.
    pub kolmogorov: f64,
}

/// `sup_x |F(x) − Φ(x)|`, attained at an atom from the left or the right.
pub fn kolmogorov_distance(dist: &StepDistribution) -> f64 {
    let mut below = 0.0;
    let mut worst: f64 = 0.0;
    for &(x, w) in dist.atoms() {
        let phi = normal_cdf(x);
        let above = below + w;
        worst = worst.max((below - phi).abs()).max((above - phi).abs());
        below = above;
    }
    worst
}

pub fn normalized_sum_cdf(set: &IndexSet, n: u32, bits_cap: u32) -> Result<NormalApprox> {
    let a = truncate(set, n)?;
    let f = chaos_sum(&CoefficientMap::unit(&a))?.scaled((a.len() as f64).sqrt().recip());
    let distribution = distribution_exact(&f, bits_cap)?;
    let l2_norm = distribution.abs_moment(2.0).sqrt();
    let kolmogorov = kolmogorov_distance(&distribution);
    Ok(NormalApprox { distribution, l2_norm, kolmogorov })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combdim::{gen_sum_set, gen_triangle};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn star_examples() {
        let s = gen_sum_set(200).unwrap();
        for (n, max, size) in [(6, 4, 6), (10, 8, 20), (20, 18, 90), (40, 38, 380), (100, 98, 2450)] {
            let st = clt_star(&s, n).unwrap();
            assert_eq!((st.max_count, st.size), (max, size), "N={n}");
        }
        assert!(clt_star(&s, 100).unwrap().ratio < 0.05);
        let k3 = s.restrict_max(6).iter().filter(|e| e.contains(3)).count();
        assert_eq!(k3, 3);
        assert!(clt_star(&s, 2).is_err());
    }

    #[test]
    fn sharp_examples() {
        let s = gen_sum_set(40).unwrap();
        assert!(clt_sharp(&s, 10).unwrap().is_empty());
        let t = gen_triangle(3, 6).unwrap();
        let sharp = clt_sharp(&t, 6).unwrap();
        assert!(sharp.contains(&(mi(&[3, 2, 1]), mi(&[6, 5, 4]))));
        assert!(sharp.contains(&(mi(&[6, 2, 1]), mi(&[5, 4, 3]))));
        let one = IndexSet::from_elements(3, [mi(&[3, 2, 1])]).unwrap();
        assert!(clt_sharp(&one, 10).unwrap().is_empty());
    }

    #[test]
    fn criteria_examples() {
        let s = gen_sum_set(40).unwrap();
        let rows = clt_table(&s, &[10, 20, 40]).unwrap();
        assert!(rows.iter().all(|r| r.sharp_ratio == 0.0));
        assert!(rows.windows(2).all(|w| w[1].star_ratio < w[0].star_ratio));
        assert!(clt_criteria(&s, &[10, 20, 40], CltThresholds::default()).unwrap().passed());

        let one = IndexSet::from_elements(3, [mi(&[3, 2, 1])]).unwrap();
        let r = clt_criteria(&one, &[5], CltThresholds::default()).unwrap();
        assert_eq!(r.get("star_ratio[5]"), Some(1.0));
        assert_eq!(r.get("sharp_ratio[5]"), Some(0.0));
        assert!(r.passed());
        assert!(clt_criteria(&s, &[20, 10], CltThresholds::default()).is_err());
    }

    #[test]
    fn normal_approximation() {
        let s = gen_sum_set(40).unwrap();
        let six = normalized_sum_cdf(&s, 6, 24).unwrap();
        assert!((six.l2_norm - 1.0).abs() < 1e-12);
        assert!((six.kolmogorov - 0.1875).abs() < 1e-12);
        let atoms = six.distribution.atoms();
        for (a, b) in atoms.iter().zip(atoms.iter().rev()) {
            assert!((a.0 + b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-15);
        }
        let eight = normalized_sum_cdf(&s, 8, 24).unwrap();
        assert_eq!(eight.distribution.len(), 11);
        assert!((eight.kolmogorov - 0.1484375).abs() < 1e-12);
    }
}
