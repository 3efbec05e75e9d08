//! Deterministic norm against the average over random sign patterns.

use chaoslab::chaos::{rud_average, AverageMode};
use chaoslab::combdim::gen_triangle;
use chaoslab::symspace::SpaceSpec;
use chaoslab::walsh::CoefficientMap;

fn main() -> chaoslab::Result<()> {
    let linear = CoefficientMap::linear(&[1.0, 2.0, -1.0, 0.5]);
    let chaos = CoefficientMap::unit(&gen_triangle(2, 5)?);
    for space in [SpaceSpec::Lp(2.0), SpaceSpec::Lp(4.0), SpaceSpec::Linf] {
        let a = rud_average(&linear, &space, AverageMode::Exact, 24, 1e-10)?;
        let b = rud_average(&chaos, &space, AverageMode::Exact, 24, 1e-10)?;
        println!("{space:<6} linear ratio {:.6}   order-2 ratio {:.6}", a.ratio, b.ratio);
    }

    let mc = AverageMode::MonteCarlo { samples: 2000, seed: 11 };
    let big = CoefficientMap::unit(&gen_triangle(2, 8)?);
    let r = rud_average(&big, &SpaceSpec::Linf, mc, 24, 1e-10)?;
    println!("Δ² ∩ [1,8]², L_∞: ratio {:.4} ± {:.4}", r.ratio, r.ratio * r.stderr / r.average);
    Ok(())
}
