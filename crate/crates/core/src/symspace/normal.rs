//! Error function and the standard normal CDF to absolute accuracy 1e-12.

use std::f64::consts::PI;

/// `erf(z)` by the positive-term series `2/√π e^{-z²} Σ 2^n z^{2n+1}/(2n+1)!!`,
/// for `|z| ≤ 3`.
fn erf_series(z: f64) -> f64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    let mut n = 0.0;
    while term.abs() > 1e-17 * sum.abs() {
        n += 1.0;
        term *= 2.0 * z2 / (2.0 * n + 1.0);
        sum += term;
    }
    2.0 / PI.sqrt() * (-z2).exp() * sum
}

/// `erfc(z)` for `z > 3` by the Laplace continued fraction (modified Lentz).
fn erfc_continued_fraction(z: f64) -> f64 {
    // erfc(z) = e^{-z²}/√π · 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + …))))
    const TINY: f64 = 1e-300;
    let mut f = z;
    let mut c = z;
    let mut d = 0.0;
    for k in 1..500 {
        let a = k as f64 / 2.0;
        d = z + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = z + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-z * z).exp() / PI.sqrt() / f
}

pub fn erf(z: f64) -> f64 {
    if z.is_nan() {
        return f64::NAN;
    }
    if z.abs() <= 3.0 {
        erf_series(z)
    } else if z > 0.0 {
        1.0 - erfc_continued_fraction(z)
    } else {
        erfc_continued_fraction(-z) - 1.0
    }
}

pub fn erfc(z: f64) -> f64 {
    if z > 3.0 {
        erfc_continued_fraction(z)
    } else if z < -3.0 {
        2.0 - erfc_continued_fraction(-z)
    } else {
        1.0 - erf_series(z)
    }
}

/// `Φ(x) = P(N(0,1) ≤ x)`.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}
