//! Sup-norm concentration of random-sign sums and the indicator lower bound.

use chaoslab::chaos::{lower_bound_check, sign_concentration_check};
use chaoslab::combdim::{gen_triangle, BlockChoice};
use chaoslab::symspace::SpaceSpec;

fn main() -> chaoslab::Result<()> {
    for (d, n) in [(2, 4), (2, 10), (3, 6)] {
        let set = gen_triangle(d, n)?;
        let blocks = BlockChoice::identity(d, n)?;
        print!("{}", sign_concentration_check(&set, &blocks, 24)?);
    }

    let set = gen_triangle(2, 4)?;
    let blocks = BlockChoice::identity(2, 4)?;
    for space in [SpaceSpec::Lp(1.0), SpaceSpec::Lp(2.0), SpaceSpec::Linf, "lorentz-log:0.5".parse()?] {
        print!("{}", lower_bound_check(&set, &blocks, &space, 24, 1e-10)?);
    }
    Ok(())
}
