use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// A convex Young function `M` with `M(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum OrliczFunction {
    /// `M(u) = u^p`, `p ≥ 1`.
    Power { p: f64 },
    /// `M(u) = exp(u^r) − 1` for `u ≥ u0`, linear through the origin below.
    ///
    /// For `r ≥ 1` the exponential is already convex and `u0 = 0`. For `r < 1`
    /// `u0` is the point where the line from the origin is tangent to
    /// `exp(u^r) − 1`, which keeps `M` convex.
    Exponential { r: f64, u0: f64 },
}

impl OrliczFunction {
    pub fn power(p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::invalid(format!("power Orlicz function needs p ≥ 1, got {p}")));
        }
        Ok(OrliczFunction::Power { p })
    }

    pub fn exponential(r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::invalid(format!("exponential Orlicz function needs r > 0, got {r}")));
        }
        Ok(OrliczFunction::Exponential {
            r,
            u0: exponential_tangent_point(r),
        })
    }

    /// `M(u)` for `u ≥ 0`.
    pub fn eval(&self, u: f64) -> f64 {
        match *self {
            OrliczFunction::Power { p } => u.powf(p),
            OrliczFunction::Exponential { r, u0 } => {
                if u >= u0 {
                    u.powf(r).exp_m1()
                } else {
                    u * u0.powf(r).exp_m1() / u0
                }
            }
        }
    }

    /// `M^{-1}(v)` for `v ≥ 0`.
    pub fn inverse(&self, v: f64) -> f64 {
        match *self {
            OrliczFunction::Power { p } => v.powf(1.0 / p),
            OrliczFunction::Exponential { r, u0 } => {
                let m0 = u0.powf(r).exp_m1();
                if u0 > 0.0 && v < m0 {
                    v * u0 / m0
                } else {
                    v.ln_1p().powf(1.0 / r)
                }
            }
        }
    }

    /// Secant slopes on `[0, u_max]` are non-decreasing (convexity spot check).
    pub fn is_convex_on_grid(&self, u_max: f64, points: usize) -> bool {
        let h = u_max / points as f64;
        let vals: Vec<f64> = (0..=points).map(|i| self.eval(i as f64 * h)).collect();
        let slopes: Vec<f64> = vals.windows(2).map(|w| (w[1] - w[0]) / h).collect();
        self.eval(0.0) == 0.0 && slopes.windows(2).all(|s| s[1] >= s[0] * (1.0 - 1e-9) - 1e-12)
    }
}

/// Tangent point of the line through the origin to `exp(u^r) − 1`.
///
/// With `s = u^r` the tangency condition is `e^s (1 − r s) = 1`; its positive
/// root lies in `((1 − r)/r, 1/r)`.
fn exponential_tangent_point(r: f64) -> f64 {
    if r >= 1.0 {
        return 0.0;
    }
    let h = |s: f64| s.exp() * (1.0 - r * s) - 1.0;
    let (mut lo, mut hi) = ((1.0 - r) / r, 1.0 / r);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    (0.5 * (lo + hi)).powf(1.0 / r)
}

impl fmt::Display for OrliczFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrliczFunction::Power { p } => write!(f, "power:{p}"),
            OrliczFunction::Exponential { r, .. } => write!(f, "exp:{r}"),
        }
    }
}

/// Weight `φ` of a Lorentz or Marcinkiewicz space.
#[derive(Clone)]
pub enum ConcaveWeight {
    /// `φ(t) = log^{-γ}(e/t)`.
    LogPower { gamma: f64 },
    /// `φ(t) = t^θ`, `0 < θ ≤ 1`.
    Power { theta: f64 },
    Custom {
        name: String,
        phi: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for ConcaveWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConcaveWeight({self})")
    }
}

impl PartialEq for ConcaveWeight {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ConcaveWeight::LogPower { gamma: a }, ConcaveWeight::LogPower { gamma: b }) => a == b,
            (ConcaveWeight::Power { theta: a }, ConcaveWeight::Power { theta: b }) => a == b,
            (ConcaveWeight::Custom { phi: a, .. }, ConcaveWeight::Custom { phi: b, .. }) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

impl fmt::Display for ConcaveWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConcaveWeight::LogPower { gamma } => write!(f, "log:{gamma}"),
            ConcaveWeight::Power { theta } => write!(f, "power:{theta}"),
            ConcaveWeight::Custom { name, .. } => write!(f, "custom:{name}"),
        }
    }
}

impl ConcaveWeight {
    /// Requires `0 ≤ γ ≤ 1`; beyond that `φ(t)/t` increases near `t = 1`.
    pub fn log_power(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::invalid(format!("log-power weight needs 0 ≤ γ ≤ 1, got {gamma}")));
        }
        Ok(ConcaveWeight::LogPower { gamma })
    }

    pub fn power(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta <= 1.0) {
            return Err(Error::invalid(format!("power weight needs 0 < θ ≤ 1, got {theta}")));
        }
        Ok(ConcaveWeight::Power { theta })
    }

    /// A user rule; checked on a grid for monotonicity and quasiconcavity.
    pub fn custom(name: impl Into<String>, phi: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        let w = ConcaveWeight::Custom {
            name: name.into(),
            phi: Arc::new(phi),
        };
        if !w.is_quasiconcave_on_grid(256) {
            return Err(Error::invalid(format!("weight {w} is not increasing with φ(t)/t non-increasing")));
        }
        Ok(w)
    }

    /// `φ(t)`; `φ(0) = 0` by convention.
    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match self {
            ConcaveWeight::LogPower { gamma } => (1.0 - t.ln()).powf(-gamma),
            ConcaveWeight::Power { theta } => t.powf(*theta),
            ConcaveWeight::Custom { phi, .. } => phi(t),
        }
    }

    /// `φ` non-decreasing and `φ(t)/t` non-increasing on a log-spaced grid.
    pub fn is_quasiconcave_on_grid(&self, points: usize) -> bool {
        let ts: Vec<f64> = (0..=points)
            .map(|i| 10f64.powf(-12.0 * (1.0 - i as f64 / points as f64)))
            .collect();
        let vals: Vec<f64> = ts.iter().map(|&t| self.eval(t)).collect();
        vals.iter().all(|v| v.is_finite() && *v >= 0.0)
            && vals.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-12))
            && ts
                .windows(2)
                .zip(vals.windows(2))
                .all(|(t, v)| v[1] / t[1] <= v[0] / t[0] * (1.0 + 1e-12))
    }
}
