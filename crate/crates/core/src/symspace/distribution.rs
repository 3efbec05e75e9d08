use crate::walsh::MERGE_TOL;
use crate::{Error, Result};

/// Tolerance on the total mass of a distribution.
pub const MASS_TOL: f64 = 1e-12;

/// Exact finite law: `(value, weight)` atoms sorted by value.
#[derive(Debug, Clone, PartialEq)]
pub struct StepDistribution {
    atoms: Vec<(f64, f64)>,
}

impl StepDistribution {
    /// Validates, sorts and merges bitwise-equal values.
    pub fn new(mut atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::EmptyInput("distribution atoms"));
        }
        for &(v, w) in &atoms {
            if !v.is_finite() {
                return Err(Error::invalid(format!("atom value {v} is not finite")));
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::invalid(format!("atom weight {w} must be positive")));
            }
        }
        let mass: f64 = atoms.iter().map(|a| a.1).sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(Error::invalid(format!("weights sum to {mass}, expected 1")));
        }
        atoms.iter_mut().for_each(|a| a.0 += 0.0);
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        for (v, w) in atoms {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += w,
                _ => merged.push((v, w)),
            }
        }
        Ok(StepDistribution { atoms: merged })
    }

    pub(crate) fn from_sorted_atoms(atoms: Vec<(f64, f64)>) -> Self {
        debug_assert!(atoms.windows(2).all(|w| w[0].0 < w[1].0));
        StepDistribution { atoms }
    }

    pub fn point_mass(c: f64) -> Self {
        StepDistribution { atoms: vec![(c + 0.0, 1.0)] }
    }

    /// Law of `χ_{(0,t)}`.
    pub fn indicator(t: f64) -> Result<Self> {
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::invalid(format!("indicator measure {t} outside (0, 1]")));
        }
        if t == 1.0 {
            return Ok(Self::point_mass(1.0));
        }
        Ok(StepDistribution {
            atoms: vec![(0.0, 1.0 - t), (1.0, t)],
        })
    }

    /// Uniform law on the given values (one cell each).
    pub fn from_samples(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput("sample values"));
        }
        let w = 1.0 / values.len() as f64;
        let mut sorted = values.to_vec();
        sorted.iter_mut().for_each(|v| *v += 0.0);
        sorted.sort_by(f64::total_cmp);
        if let Some(bad) = sorted.iter().find(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("sample value {bad} is not finite")));
        }
        let mut atoms: Vec<(f64, f64)> = Vec::new();
        for v in sorted {
            match atoms.last_mut() {
                Some(last) if last.0 == v => last.1 += w,
                _ => atoms.push((v, w)),
            }
        }
        Ok(StepDistribution { atoms })
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    /// Law of `c·X`.
    pub fn scaled(&self, c: f64) -> StepDistribution {
        let mut atoms: Vec<(f64, f64)> = self.atoms.iter().map(|&(v, w)| (v * c + 0.0, w)).collect();
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        for (v, w) in atoms {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += w,
                _ => merged.push((v, w)),
            }
        }
        StepDistribution { atoms: merged }
    }

    pub fn sup_abs(&self) -> f64 {
        self.atoms.iter().map(|a| a.0.abs()).fold(0.0, f64::max)
    }

    pub fn mean(&self) -> f64 {
        self.atoms.iter().map(|&(v, w)| v * w).sum()
    }

    /// `E|X|^p`.
    pub fn abs_moment(&self, p: f64) -> f64 {
        self.atoms.iter().map(|&(v, w)| v.abs().powf(p) * w).sum()
    }

    /// `P(X ≤ x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.atoms.iter().take_while(|a| a.0 <= x).map(|a| a.1).sum()
    }

    /// Mean absolute CDF difference over the union of both atom sets.
    pub fn mean_cdf_deviation(&self, other: &StepDistribution) -> f64 {
        let mut xs: Vec<f64> = self.atoms.iter().chain(other.atoms.iter()).map(|a| a.0).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let total: f64 = xs.iter().map(|&x| (self.cdf(x) - other.cdf(x)).abs()).sum();
        total / xs.len() as f64
    }
}

/// Non-increasing step function `x*` on `(0, 1]`.
///
/// `x*(t) = values[i]` for `t ∈ (breakpoints[i], breakpoints[i+1]]`;
/// `breakpoints[0] = 0` and the last breakpoint is exactly 1.
#[derive(Debug, Clone, PartialEq)]
pub struct RearrangementStep {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl RearrangementStep {
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `(t_{i-1}, t_i, v_i)` per plateau.
    pub fn plateaus(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| (self.breakpoints[i], self.breakpoints[i + 1], v))
    }

    pub fn value_at(&self, t: f64) -> f64 {
        self.plateaus()
            .find(|&(_, hi, _)| t <= hi)
            .map(|p| p.2)
            .unwrap_or(0.0)
    }

    /// `∫_0^t x*(s) ds`.
    pub fn integral_to(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for (lo, hi, v) in self.plateaus() {
            if t <= lo {
                break;
            }
            acc += v * (t.min(hi) - lo);
        }
        acc
    }

    /// `μ{x* > τ}`.
    pub fn measure_above(&self, tau: f64) -> f64 {
        self.plateaus().filter(|p| p.2 > tau).map(|p| p.1 - p.0).sum()
    }
}

/// `x*` of a finite law: `|values|` sorted descending with cumulative weights.
pub fn decreasing_rearrangement(dist: &StepDistribution) -> RearrangementStep {
    let mut abs: Vec<(f64, f64)> = dist.atoms().iter().map(|&(v, w)| (v.abs(), w)).collect();
    abs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut plateaus: Vec<(f64, f64)> = Vec::with_capacity(abs.len());
    for (v, w) in abs {
        match plateaus.last_mut() {
            Some(last) if last.0 - v <= MERGE_TOL => last.1 += w,
            _ => plateaus.push((v, w)),
        }
    }
    let mut breakpoints = Vec::with_capacity(plateaus.len() + 1);
    breakpoints.push(0.0);
    let mut acc = 0.0;
    for &(_, w) in &plateaus {
        acc += w;
        breakpoints.push(acc);
    }
    *breakpoints.last_mut().expect("nonempty") = 1.0;
    RearrangementStep {
        breakpoints,
        values: plateaus.into_iter().map(|p| p.0).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rearrangement_of_two_sign_sum() {
        let d = StepDistribution::new(vec![(-2.0, 0.25), (0.0, 0.5), (2.0, 0.25)]).unwrap();
        let r = decreasing_rearrangement(&d);
        assert_eq!(r.values(), &[2.0, 0.0]);
        assert_eq!(r.breakpoints(), &[0.0, 0.5, 1.0]);
        assert_eq!(r.measure_above(1.0), 0.5);
        assert_eq!(r.integral_to(0.75), 1.0);
    }

    #[test]
    fn rearrangement_of_constants() {
        let r = decreasing_rearrangement(&StepDistribution::point_mass(3.5));
        assert_eq!(r.values(), &[3.5]);
        assert_eq!(r.breakpoints(), &[0.0, 1.0]);
        let d = StepDistribution::new(vec![(1.0, 0.3), (-1.0, 0.7)]).unwrap();
        let r = decreasing_rearrangement(&d);
        assert_eq!(r.values(), &[1.0]);
        assert_eq!(r.value_at(0.99), 1.0);
    }

    #[test]
    fn distribution_validation() {
        assert!(StepDistribution::new(vec![]).is_err());
        assert!(StepDistribution::new(vec![(1.0, 0.5)]).is_err());
        assert!(StepDistribution::new(vec![(1.0, 1.5), (2.0, -0.5)]).is_err());
        assert!(StepDistribution::new(vec![(f64::INFINITY, 1.0)]).is_err());
        let d = StepDistribution::new(vec![(1.0, 0.5), (-0.0, 0.25), (0.0, 0.25)]).unwrap();
        assert_eq!(d.atoms(), &[(0.0, 0.5), (1.0, 0.5)]);
        assert!(StepDistribution::indicator(0.0).is_err());
        assert!(StepDistribution::indicator(1.5).is_err());
    }
}
