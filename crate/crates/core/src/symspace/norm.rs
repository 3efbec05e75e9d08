use std::fmt;
use std::str::FromStr;

use super::{decreasing_rearrangement, ConcaveWeight, OrliczFunction, RearrangementStep, StepDistribution};
use crate::{Error, Result};

/// Maximum doublings (or halvings) while bracketing a Luxemburg norm.
pub const MAX_BRACKET_STEPS: usize = 200;

/// How an `ExpL^r` norm is evaluated.
#[derive(Debug, Clone, PartialEq)]
pub enum ExpMethod {
    /// Luxemburg norm of `N_r`.
    OrliczBisection,
    /// `sup_p ‖x‖_p / p^{1/r}` over the given exponents.
    Extrapolation(Vec<f64>),
}

impl ExpMethod {
    /// Exponents `1, 2, 4, …, 1024`.
    pub fn default_grid() -> Vec<f64> {
        (0..=10).map(|k| (1u32 << k) as f64).collect()
    }

    pub fn extrapolation() -> Self {
        ExpMethod::Extrapolation(Self::default_grid())
    }
}

/// A symmetric space on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceSpec {
    Lp(f64),
    Linf,
    Orlicz(OrliczFunction),
    Lorentz(ConcaveWeight),
    Marcinkiewicz(ConcaveWeight),
    ExpLr { r: f64, method: ExpMethod },
}

impl SpaceSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceSpec::Lp(p) if !(*p >= 1.0 && p.is_finite()) => {
                Err(Error::invalid(format!("L_p needs 1 ≤ p < ∞, got {p}")))
            }
            SpaceSpec::Orlicz(m) => match *m {
                OrliczFunction::Power { p } if !(p >= 1.0 && p.is_finite()) => {
                    Err(Error::invalid(format!("power Orlicz function needs p ≥ 1, got {p}")))
                }
                OrliczFunction::Exponential { r, u0 } if !(r > 0.0 && r.is_finite() && u0 >= 0.0) => {
                    Err(Error::invalid(format!("exponential Orlicz function needs r > 0, got {r}")))
                }
                _ => Ok(()),
            },
            SpaceSpec::Lorentz(w) | SpaceSpec::Marcinkiewicz(w) => match *w {
                ConcaveWeight::LogPower { gamma } if !(0.0..=1.0).contains(&gamma) => {
                    Err(Error::invalid(format!("log-power weight needs 0 ≤ γ ≤ 1, got {gamma}")))
                }
                ConcaveWeight::Power { theta } if !(theta > 0.0 && theta <= 1.0) => {
                    Err(Error::invalid(format!("power weight needs 0 < θ ≤ 1, got {theta}")))
                }
                _ => Ok(()),
            },
            SpaceSpec::ExpLr { r, method } => {
                if !(*r > 0.0 && r.is_finite()) {
                    return Err(Error::invalid(format!("ExpL^r needs r > 0, got {r}")));
                }
                if let ExpMethod::Extrapolation(grid) = method {
                    if grid.is_empty() || grid.iter().any(|p| !(*p >= 1.0 && p.is_finite())) {
                        return Err(Error::invalid("extrapolation grid needs finite exponents p ≥ 1"));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSpec::Lp(p) => write!(f, "lp:{p}"),
            SpaceSpec::Linf => f.write_str("linf"),
            SpaceSpec::Orlicz(OrliczFunction::Power { p }) => write!(f, "orlicz-power:{p}"),
            SpaceSpec::Orlicz(OrliczFunction::Exponential { r, .. }) => write!(f, "orlicz-exp:{r}"),
            SpaceSpec::Lorentz(w) => write!(f, "lorentz-{w}"),
            SpaceSpec::Marcinkiewicz(w) => write!(f, "marcinkiewicz-{w}"),
            SpaceSpec::ExpLr { r, method: ExpMethod::OrliczBisection } => write!(f, "explr:{r}"),
            SpaceSpec::ExpLr { r, method: ExpMethod::Extrapolation(_) } => write!(f, "explr-extrap:{r}"),
        }
    }
}

/// Parses `lp:P`, `linf`, `orlicz-power:P`, `orlicz-exp:R`, `lorentz-log:G`,
/// `lorentz-power:T`, `marcinkiewicz-log:G`, `marcinkiewicz-power:T`,
/// `explr:R` and `explr-extrap:R`.
impl FromStr for SpaceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "linf" || s == "l-inf" {
            return Ok(SpaceSpec::Linf);
        }
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("space `{s}` needs a parameter, e.g. lp:2")))?;
        let x: f64 = arg
            .parse()
            .map_err(|_| Error::invalid(format!("bad space parameter `{arg}`")))?;
        let space = match kind {
            "lp" => SpaceSpec::Lp(x),
            "orlicz-power" => SpaceSpec::Orlicz(OrliczFunction::power(x)?),
            "orlicz-exp" => SpaceSpec::Orlicz(OrliczFunction::exponential(x)?),
            "lorentz-log" => SpaceSpec::Lorentz(ConcaveWeight::log_power(x)?),
            "lorentz-power" => SpaceSpec::Lorentz(ConcaveWeight::power(x)?),
            "marcinkiewicz-log" => SpaceSpec::Marcinkiewicz(ConcaveWeight::log_power(x)?),
            "marcinkiewicz-power" => SpaceSpec::Marcinkiewicz(ConcaveWeight::power(x)?),
            "explr" => SpaceSpec::ExpLr {
                r: x,
                method: ExpMethod::OrliczBisection,
            },
            "explr-extrap" => SpaceSpec::ExpLr {
                r: x,
                method: ExpMethod::extrapolation(),
            },
            _ => return Err(Error::invalid(format!("unknown space kind `{kind}`"))),
        };
        space.validate()?;
        Ok(space)
    }
}

fn lp_norm(dist: &StepDistribution, p: f64) -> f64 {
    let top = dist.sup_abs();
    if top == 0.0 {
        return 0.0;
    }
    let s: f64 = dist.atoms().iter().map(|&(v, w)| (v.abs() / top).powf(p) * w).sum();
    top * s.powf(1.0 / p)
}

/// Luxemburg norm `inf{λ : Σ w_i M(|v_i|/λ) ≤ 1}` by bracketing and bisection.
pub fn luxemburg_norm(dist: &StepDistribution, m: &OrliczFunction, tol: f64) -> Result<f64> {
    let l1: f64 = dist.atoms().iter().map(|&(v, w)| v.abs() * w).sum();
    if l1 == 0.0 {
        return Ok(0.0);
    }
    let modular = |lambda: f64| -> f64 { dist.atoms().iter().map(|&(v, w)| w * m.eval(v.abs() / lambda)).sum() };
    let (mut lo, mut hi);
    if modular(l1) > 1.0 {
        hi = l1;
        let mut steps = 0;
        while modular(hi) > 1.0 {
            hi *= 2.0;
            steps += 1;
            if steps > MAX_BRACKET_STEPS || !hi.is_finite() {
                return Err(Error::NumericFailure(format!(
                    "Orlicz modular of {m} not bracketed within {MAX_BRACKET_STEPS} doublings"
                )));
            }
        }
        lo = hi / 2.0;
    } else {
        lo = l1;
        let mut steps = 0;
        while modular(lo) <= 1.0 {
            lo /= 2.0;
            steps += 1;
            if steps > MAX_BRACKET_STEPS || lo == 0.0 {
                return Err(Error::NumericFailure(format!(
                    "Orlicz modular of {m} not bracketed within {MAX_BRACKET_STEPS} halvings"
                )));
            }
        }
        hi = lo * 2.0;
    }
    while hi - lo > tol * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if modular(mid) <= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn lorentz_norm(x: &RearrangementStep, w: &ConcaveWeight) -> f64 {
    x.plateaus().map(|(lo, hi, v)| v * (w.eval(hi) - w.eval(lo))).sum()
}

/// Golden-section maximiser of `g` on `[a, b]`; returns the best value seen.
fn golden_max(g: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (a, b);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    let width = tol * (b - a).max(f64::MIN_POSITIVE);
    let mut best = gc.max(gd);
    for _ in 0..300 {
        if b - a <= width {
            break;
        }
        if gc >= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d);
        }
        best = best.max(gc).max(gd);
    }
    best
}

/// `sup_t φ(t)/t ∫_0^t x*`, per plateau by golden section plus breakpoints.
fn marcinkiewicz_norm(x: &RearrangementStep, w: &ConcaveWeight, tol: f64) -> f64 {
    let mut best: f64 = 0.0;
    let mut acc = 0.0;
    for (lo, hi, v) in x.plateaus() {
        let base = acc;
        let g = |t: f64| w.eval(t) / t * (base + v * (t - lo));
        best = best.max(g(hi));
        if hi > lo {
            best = best.max(golden_max(g, lo, hi, tol));
        }
        acc += v * (hi - lo);
    }
    best
}

/// Norm of a finite law in `space`.
///
/// `tol` is the relative tolerance of the Luxemburg bisection and of the
/// Marcinkiewicz segment search; closed-form variants ignore it.
pub fn norm(dist: &StepDistribution, space: &SpaceSpec, tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::invalid(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    space.validate()?;
    match space {
        SpaceSpec::Lp(p) => Ok(lp_norm(dist, *p)),
        SpaceSpec::Linf => Ok(dist.sup_abs()),
        SpaceSpec::Orlicz(m) => luxemburg_norm(dist, m, tol),
        SpaceSpec::Lorentz(w) => Ok(lorentz_norm(&decreasing_rearrangement(dist), w)),
        SpaceSpec::Marcinkiewicz(w) => Ok(marcinkiewicz_norm(&decreasing_rearrangement(dist), w, tol)),
        SpaceSpec::ExpLr {
            r,
            method: ExpMethod::OrliczBisection,
        } => luxemburg_norm(dist, &OrliczFunction::exponential(*r)?, tol),
        SpaceSpec::ExpLr {
            r,
            method: ExpMethod::Extrapolation(grid),
        } => Ok(grid
            .iter()
            .map(|&p| lp_norm(dist, p) / p.powf(1.0 / r))
            .fold(0.0, f64::max)),
    }
}

/// `φ_X(t) = ‖χ_{(0,t)}‖_X`.
pub fn fundamental_function(space: &SpaceSpec, t: f64, tol: f64) -> Result<f64> {
    norm(&StepDistribution::indicator(t)?, space, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_signs() -> StepDistribution {
        StepDistribution::new(vec![(-2.0, 0.25), (0.0, 0.5), (2.0, 0.25)]).unwrap()
    }

    #[test]
    fn lp_of_two_sign_sum() {
        assert_eq!(norm(&two_signs(), &SpaceSpec::Lp(1.0), 1e-10).unwrap(), 1.0);
        let l4 = norm(&two_signs(), &SpaceSpec::Lp(4.0), 1e-10).unwrap();
        assert!((l4 - 8f64.powf(0.25)).abs() < 1e-14);
        assert!((l4 - 1.681793).abs() < 1e-6);
        assert_eq!(norm(&two_signs(), &SpaceSpec::Linf, 1e-10).unwrap(), 2.0);
    }

    #[test]
    fn orlicz_square_of_quarter_indicator() {
        let d = StepDistribution::indicator(0.25).unwrap();
        let v = norm(&d, &SpaceSpec::Orlicz(OrliczFunction::power(2.0).unwrap()), 1e-12).unwrap();
        assert!((v - 0.5).abs() < 1e-11);
    }

    #[test]
    fn indicator_in_lorentz_and_marcinkiewicz() {
        for s in [1e-6, 0.01, 0.3, 0.5, 1.0] {
            for w in [
                ConcaveWeight::log_power(0.5).unwrap(),
                ConcaveWeight::log_power(1.0).unwrap(),
                ConcaveWeight::power(0.3).unwrap(),
            ] {
                let d = StepDistribution::indicator(s).unwrap();
                let l = norm(&d, &SpaceSpec::Lorentz(w.clone()), 1e-12).unwrap();
                let m = norm(&d, &SpaceSpec::Marcinkiewicz(w.clone()), 1e-12).unwrap();
                assert!((l - w.eval(s)).abs() < 1e-12);
                assert!((m - w.eval(s)).abs() < 1e-9, "{w} s={s} m={m}");
            }
        }
    }

    #[test]
    fn fundamental_function_values() {
        let v = fundamental_function(&SpaceSpec::Lp(2.0), 1.0 / 16.0, 1e-10).unwrap();
        assert!((v - 0.25).abs() < 1e-15);
        let w = ConcaveWeight::log_power(1.0).unwrap();
        assert!((fundamental_function(&SpaceSpec::Lorentz(w), 1.0, 1e-10).unwrap() - 1.0).abs() < 1e-15);
        assert!(fundamental_function(&SpaceSpec::Linf, 0.0, 1e-10).is_err());
        assert!(fundamental_function(&SpaceSpec::Linf, 1.5, 1e-10).is_err());
    }

    #[test]
    fn exponential_fundamental_function_matches_bisection_oracle() {
        // Independent bisection of t·(exp(1/λ²) − 1) = 1 at t = e^{-3}.
        let t = (-3f64).exp();
        let (mut lo, mut hi) = (1e-6f64, 10.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if t * ((1.0 / mid).powi(2).exp() - 1.0) <= 1.0 {
                hi = mid
            } else {
                lo = mid
            }
        }
        assert!((hi - 0.572_730_983_695_361_4).abs() < 1e-13);
        let space = SpaceSpec::Orlicz(OrliczFunction::exponential(2.0).unwrap());
        let v = fundamental_function(&space, t, 1e-12).unwrap();
        assert!((v - hi).abs() < 1e-10);
    }

    #[test]
    fn invalid_parameters() {
        let d = two_signs();
        assert!(norm(&d, &SpaceSpec::Lp(0.5), 1e-10).is_err());
        assert!(norm(&d, &SpaceSpec::Lp(2.0), 0.0).is_err());
        assert!(norm(
            &d,
            &SpaceSpec::ExpLr {
                r: 1.0,
                method: ExpMethod::Extrapolation(vec![])
            },
            1e-10
        )
        .is_err());
        assert!("lp:0.3".parse::<SpaceSpec>().is_err());
        assert!("nope:1".parse::<SpaceSpec>().is_err());
    }

    #[test]
    fn space_strings_round_trip() {
        for s in [
            "lp:4",
            "linf",
            "orlicz-power:3",
            "orlicz-exp:2",
            "lorentz-log:0.5",
            "marcinkiewicz-power:0.5",
            "explr:2",
            "explr-extrap:1",
        ] {
            let sp: SpaceSpec = s.parse().unwrap();
            assert_eq!(sp.to_string(), s);
        }
    }

    #[test]
    fn zero_distribution_has_zero_norm() {
        let z = StepDistribution::point_mass(0.0);
        for s in ["lp:2", "linf", "orlicz-exp:1", "lorentz-log:1", "marcinkiewicz-log:1", "explr:0.5"] {
            assert_eq!(norm(&z, &s.parse().unwrap(), 1e-10).unwrap(), 0.0);
        }
    }
}
