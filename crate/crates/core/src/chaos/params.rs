use crate::{Error, Result};

/// Exponents tying an index set's density to the chaos estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerificationParams {
    pub d: usize,
    pub alpha: f64,
    pub beta: f64,
    /// Moment-growth exponent `b`.
    pub b: f64,
    /// Realised density exponent `log_n |A ∩ B_n|`.
    pub delta: f64,
    /// Candidate constant for the random-sign average inequality.
    pub big_d: f64,
}

impl VerificationParams {
    pub fn validate(&self) -> Result<()> {
        let d = self.d as f64;
        if self.d == 0 {
            return Err(Error::invalid("order d must be ≥ 1"));
        }
        if !(1.0 <= self.alpha && self.alpha <= self.beta && self.beta <= d) {
            return Err(Error::invalid(format!(
                "need 1 ≤ α ≤ β ≤ d, got α={}, β={}, d={d}",
                self.alpha, self.beta
            )));
        }
        if !(1.0 <= self.b && self.b <= d) {
            return Err(Error::invalid(format!("need 1 ≤ b ≤ d, got b={}", self.b)));
        }
        if !(0.0..=d).contains(&self.delta) {
            return Err(Error::invalid(format!("need δ ∈ [0, d], got δ={}", self.delta)));
        }
        if !(self.big_d > 0.0 && self.big_d.is_finite()) {
            return Err(Error::invalid(format!("constant D must be positive, got {}", self.big_d)));
        }
        Ok(())
    }

    /// `α + b/β > b + 1`.
    pub fn exponent_gap(&self) -> f64 {
        self.alpha + self.b / self.beta - self.b - 1.0
    }

    pub fn separates(&self) -> bool {
        self.exponent_gap() > 0.0
    }
}
