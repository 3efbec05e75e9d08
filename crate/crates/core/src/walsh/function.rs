use std::collections::BTreeMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{CoefficientMap, MultiIndex};
use crate::symspace::StepDistribution;
use crate::{Error, Result};

/// Configurations per parallel work unit during exact enumeration.
const CHUNK_BITS: u32 = 14;

/// Largest dyadic resolution that will be materialised.
pub const MAX_DYADIC_RESOLUTION: u32 = 26;

/// Distribution atoms closer than this are merged.
pub const MERGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    /// Walsh expansion: `Σ coeff_i · Π_{p ∈ mask_i} ε_p`, masks over support
    /// positions, `words` u64 words per mask.
    Terms { coeffs: Vec<f64>, masks: Vec<u64>, words: usize },
    /// One value per configuration, bit `p` of the index set meaning `ε_p = −1`.
    Table(Vec<f64>),
}

/// A real function of finitely many Rademacher coordinates.
///
/// A configuration is a bit vector over the positions of `support`: bit `p`
/// set means the sign of `r_{support[p]}` is −1. Each of the `2^k`
/// configurations has probability `2^{-k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignFunction {
    support: Vec<u32>,
    repr: Repr,
}

fn words_for(k: usize) -> usize {
    k.div_ceil(64).max(1)
}

impl SignFunction {
    fn from_terms(terms: &[(f64, &[u32])]) -> SignFunction {
        let mut support: Vec<u32> = terms.iter().flat_map(|(_, e)| e.iter().copied()).collect();
        support.sort_unstable();
        support.dedup();
        let words = words_for(support.len());
        let mut coeffs = Vec::with_capacity(terms.len());
        let mut masks = vec![0u64; terms.len() * words];
        for (t, (a, entries)) in terms.iter().enumerate() {
            coeffs.push(*a);
            for j in entries.iter() {
                let p = support.binary_search(j).expect("entry in support");
                masks[t * words + p / 64] |= 1 << (p % 64);
            }
        }
        SignFunction {
            support,
            repr: Repr::Terms { coeffs, masks, words },
        }
    }

    /// Sorted distinct Rademacher indices the function depends on.
    pub fn support(&self) -> &[u32] {
        &self.support
    }

    /// Number of u64 words in a configuration.
    pub fn config_words(&self) -> usize {
        words_for(self.support.len())
    }

    pub fn is_materialized(&self) -> bool {
        matches!(self.repr, Repr::Table(_))
    }

    /// Value at a configuration given as bit words over support positions.
    pub fn value_at(&self, config: &[u64]) -> f64 {
        match &self.repr {
            Repr::Terms { coeffs, masks, words } => {
                let mut s = 0.0;
                for (t, &a) in coeffs.iter().enumerate() {
                    let m = &masks[t * words..(t + 1) * words];
                    let parity = m.iter().zip(config).fold(0u32, |acc, (x, c)| acc ^ (x & c).count_ones());
                    if parity & 1 == 1 {
                        s -= a;
                    } else {
                        s += a;
                    }
                }
                s + 0.0
            }
            Repr::Table(v) => v[config[0] as usize],
        }
    }

    /// Value when `r_j` takes the sign `signs(j)` (any positive value is +1).
    pub fn eval(&self, signs: impl Fn(u32) -> i8) -> f64 {
        let mut config = vec![0u64; self.config_words()];
        for (p, &j) in self.support.iter().enumerate() {
            if signs(j) < 0 {
                config[p / 64] |= 1 << (p % 64);
            }
        }
        self.value_at(&config)
    }

    /// Replaces the evaluation rule by a table of all `2^k` values.
    pub fn materialize(&self, bits_cap: u32) -> Result<SignFunction> {
        let k = check_cap(self.support.len(), bits_cap)?;
        let table = (0..1u64 << k).into_par_iter().map(|c| self.value_at(&[c])).collect();
        Ok(SignFunction {
            support: self.support.clone(),
            repr: Repr::Table(table),
        })
    }

    /// Pointwise `c·f`.
    pub fn scaled(&self, c: f64) -> SignFunction {
        let repr = match &self.repr {
            Repr::Terms { coeffs, masks, words } => Repr::Terms {
                coeffs: coeffs.iter().map(|a| a * c).collect(),
                masks: masks.clone(),
                words: *words,
            },
            Repr::Table(v) => Repr::Table(v.iter().map(|x| x * c + 0.0).collect()),
        };
        SignFunction {
            support: self.support.clone(),
            repr,
        }
    }
}

fn check_cap(k: usize, bits_cap: u32) -> Result<u32> {
    if k > bits_cap as usize || k > 63 {
        return Err(Error::limit("exact enumeration support bits", k as u64, bits_cap.min(63) as u64));
    }
    Ok(k as u32)
}

/// `r_j`, the `j`-th Rademacher function.
pub fn rademacher(j: i64) -> Result<SignFunction> {
    if j < 1 || j > u32::MAX as i64 {
        return Err(Error::InvalidIndex(format!("Rademacher index must be ≥ 1, got {j}")));
    }
    Ok(SignFunction::from_terms(&[(1.0, &[j as u32])]))
}

/// `𝐫_ȷ = r_{j_1} · … · r_{j_d}`.
pub fn chaos_monomial(index: &MultiIndex) -> SignFunction {
    SignFunction::from_terms(&[(1.0, index.entries())])
}

/// `Σ_ȷ a_ȷ 𝐫_ȷ`.
pub fn chaos_sum(coeffs: &CoefficientMap) -> Result<SignFunction> {
    if coeffs.is_empty() {
        return Err(Error::EmptyInput("coefficient map"));
    }
    let terms: Vec<(f64, &[u32])> = coeffs.iter().map(|(k, a)| (a, k.entries())).collect();
    Ok(SignFunction::from_terms(&terms))
}

/// `Σ_ȷ a_ȷ θ_ȷ 𝐫_ȷ` for a fixed sign pattern `θ`.
pub fn randomize_signs(coeffs: &CoefficientMap, flips: &BTreeMap<MultiIndex, i8>) -> Result<SignFunction> {
    if coeffs.is_empty() {
        return Err(Error::EmptyInput("coefficient map"));
    }
    let mut terms = Vec::with_capacity(coeffs.len());
    for (k, a) in coeffs.iter() {
        let s = match flips.get(k) {
            Some(&s) if s == 1 || s == -1 => s as f64,
            Some(&s) => return Err(Error::invalid(format!("flip for ({k}) must be ±1, got {s}"))),
            None => return Err(Error::invalid(format!("no sign flip given for ({k})"))),
        };
        terms.push((a * s, k.entries()));
    }
    Ok(SignFunction::from_terms(&terms))
}

/// Groups sorted values into `(value, count)` runs of bitwise-equal values.
fn run_lengths(sorted: &[f64]) -> Vec<(f64, u64)> {
    let mut out: Vec<(f64, u64)> = Vec::new();
    for &v in sorted {
        match out.last_mut() {
            Some((last, c)) if *last == v => *c += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Exact-equality runs merged across chunks, then tolerance merge.
fn counts_to_distribution(mut runs: Vec<(f64, u64)>, total: f64) -> StepDistribution {
    runs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut exact: Vec<(f64, u64)> = Vec::with_capacity(runs.len());
    for (v, c) in runs {
        match exact.last_mut() {
            Some((last, lc)) if *last == v => *lc += c,
            _ => exact.push((v, c)),
        }
    }
    // Anchor-based merge: a group spans values within MERGE_TOL of its first
    // member; the most frequent member represents it.
    let mut atoms = Vec::new();
    let mut i = 0;
    while i < exact.len() {
        let anchor = exact[i].0;
        let mut best = exact[i];
        let mut count = 0u64;
        while i < exact.len() && exact[i].0 - anchor <= MERGE_TOL {
            if exact[i].1 > best.1 {
                best = exact[i];
            }
            count += exact[i].1;
            i += 1;
        }
        atoms.push((best.0, count as f64 / total));
    }
    StepDistribution::from_sorted_atoms(atoms)
}

/// Exact law of `f` under the uniform measure on its `2^k` configurations.
///
/// The configuration space is split into fixed chunks; chunk results are
/// merged by value, so the output does not depend on the worker count.
pub fn distribution_exact(f: &SignFunction, bits_cap: u32) -> Result<StepDistribution> {
    let k = check_cap(f.support.len(), bits_cap)?;
    let total = 1u64 << k;
    let chunk = 1u64 << CHUNK_BITS.min(k);
    let runs: Vec<(f64, u64)> = (0..total / chunk)
        .into_par_iter()
        .flat_map_iter(|c| {
            let start = c * chunk;
            let mut vals: Vec<f64> = (start..start + chunk).map(|cfg| f.value_at(&[cfg])).collect();
            vals.sort_by(f64::total_cmp);
            run_lengths(&vals)
        })
        .collect();
    Ok(counts_to_distribution(runs, total as f64))
}

/// Configuration of the `index`-th Monte Carlo sample.
///
/// Each sample reads its own ChaCha stream, so a sample depends only on
/// `(seed, index)` and not on how samples are scheduled.
pub fn sample_config(seed: u64, index: u64, bits: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let words = words_for(bits);
    let mut cfg: Vec<u64> = (0..words).map(|_| rng.next_u64()).collect();
    let rem = bits % 64;
    if rem != 0 {
        cfg[words - 1] &= (1u64 << rem) - 1;
    }
    if bits == 0 {
        cfg[0] = 0;
    }
    cfg
}

/// Empirical law from `samples` seeded uniform configurations.
pub fn distribution_mc(f: &SignFunction, samples: u64, seed: u64) -> Result<StepDistribution> {
    if samples == 0 {
        return Err(Error::invalid("Monte Carlo needs at least one sample"));
    }
    let k = f.support.len();
    let chunk = 1u64 << CHUNK_BITS;
    let runs: Vec<(f64, u64)> = (0..samples.div_ceil(chunk))
        .into_par_iter()
        .flat_map_iter(|c| {
            let end = ((c + 1) * chunk).min(samples);
            let mut vals: Vec<f64> = (c * chunk..end).map(|s| f.value_at(&sample_config(seed, s, k))).collect();
            vals.sort_by(f64::total_cmp);
            run_lengths(&vals)
        })
        .collect();
    Ok(counts_to_distribution(runs, samples as f64))
}

/// Values of a function on the `2^m` dyadic cells `[i·2^{-m}, (i+1)·2^{-m})`.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicStep {
    resolution: u32,
    values: Vec<f64>,
}

impl DyadicStep {
    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value histogram with cell measure `2^{-m}`.
    pub fn histogram(&self) -> StepDistribution {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        counts_to_distribution(run_lengths(&v), v.len() as f64)
    }
}

/// Samples `f` on dyadic cells of resolution `m`.
///
/// On cell `i`, `r_j` equals `(−1)^{⌊2^j (i + 1/2) 2^{-m}⌋}`, i.e. bit `m − j`
/// of `i` decides the sign.
pub fn evaluate_dyadic(f: &SignFunction, m: u32) -> Result<DyadicStep> {
    let required = f.support.last().copied().unwrap_or(0);
    if m < required || m == 0 {
        return Err(Error::Resolution {
            resolution: m,
            required: required.max(1),
        });
    }
    if m > MAX_DYADIC_RESOLUTION {
        return Err(Error::limit("dyadic resolution", m as u64, MAX_DYADIC_RESOLUTION as u64));
    }
    let words = f.config_words();
    let shifts: Vec<u32> = f.support.iter().map(|&j| m - j).collect();
    let values = (0..1u64 << m)
        .into_par_iter()
        .map_init(
            || vec![0u64; words],
            |cfg, i| {
                cfg.iter_mut().for_each(|w| *w = 0);
                for (p, &s) in shifts.iter().enumerate() {
                    if (i >> s) & 1 == 1 {
                        cfg[p / 64] |= 1 << (p % 64);
                    }
                }
                f.value_at(cfg)
            },
        )
        .collect();
    Ok(DyadicStep { resolution: m, values })
}
