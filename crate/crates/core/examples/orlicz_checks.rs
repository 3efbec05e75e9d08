//! When an Orlicz space coincides with a Marcinkiewicz space, and the
//! Fubini-type inequality for Orlicz norms on a dyadic grid.

use chaoslab::symspace::{coincidence_check, fubini_orlicz_check, ConcaveWeight, OrliczFunction};

fn main() -> chaoslab::Result<()> {
    let m = OrliczFunction::exponential(2.0)?;
    let phi = ConcaveWeight::log_power(0.5)?;
    print!("{}", coincidence_check(&m, &phi, 0.5, 64, 1e-12)?);

    // harmonic divergence: M(u) = u², φ(t) = √t
    let diverging = coincidence_check(&OrliczFunction::power(2.0)?, &ConcaveWeight::power(0.5)?, 1.0, 32, 1e-12)?;
    print!("{diverging}");

    let z: Vec<Vec<f64>> = (0..8)
        .map(|u| (0..8).map(|t| if (u * 3 + t * 5) % 7 < 3 { -1.0 } else { 1.0 }).collect())
        .collect();
    print!("{}", fubini_orlicz_check(&z, &OrliczFunction::power(3.0)?, 1e-12)?);
    Ok(())
}
