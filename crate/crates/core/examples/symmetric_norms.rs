//! One distribution measured in every supported space.

use chaoslab::symspace::{decreasing_rearrangement, fundamental_function, norm, SpaceSpec};
use chaoslab::walsh::{chaos_sum, distribution_exact, CoefficientMap};

fn main() -> chaoslab::Result<()> {
    let f = chaos_sum(&CoefficientMap::linear(&[1.0, 0.5, 0.25, 0.125]))?;
    let dist = distribution_exact(&f, 24)?;
    let rearranged = decreasing_rearrangement(&dist);
    println!("x* plateaus:");
    for (from, to, v) in rearranged.plateaus() {
        println!("  ({from:.4}, {to:.4}] -> {v}");
    }

    let spaces = [
        "lp:1", "lp:2", "lp:4", "linf", "orlicz-power:3", "orlicz-exp:2", "orlicz-exp:0.5",
        "lorentz-log:0.5", "marcinkiewicz-log:0.5", "lorentz-power:0.5", "explr:2", "explr-extrap:2",
    ];
    for s in spaces {
        let space: SpaceSpec = s.parse()?;
        println!("{:<24} {:.9}", s, norm(&dist, &space, 1e-12)?);
    }

    let exp2: SpaceSpec = "orlicz-exp:2".parse()?;
    println!("fundamental function of exp L^2 at e^-3: {:.10}", fundamental_function(&exp2, (-3f64).exp(), 1e-12)?);
    Ok(())
}
