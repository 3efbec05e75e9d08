//! Combinatorial criteria and exact Kolmogorov distances for the normalised
//! sum over the sum set.

use chaoslab::chaos::{clt_criteria, clt_sharp, normalized_sum_cdf, CltThresholds};
use chaoslab::combdim::{gen_sum_set, gen_triangle};

fn main() -> chaoslab::Result<()> {
    let sum = gen_sum_set(40)?;
    print!("{}", clt_criteria(&sum, &[10, 20, 40], CltThresholds::default())?);

    let pairs = clt_sharp(&gen_triangle(3, 6)?, 6)?;
    println!("full triangle at N = 6 has {} exceptional pairs, e.g. {:?}", pairs.len(), pairs.first());

    for n in [6, 8, 10, 12, 14] {
        let s = normalized_sum_cdf(&sum, n, 24)?;
        println!(
            "N = {n:>2}: {:>4} atoms, ‖S_N‖₂ = {:.12}, Kolmogorov distance {:.6}",
            s.distribution.len(),
            s.l2_norm,
            s.kolmogorov
        );
    }
    Ok(())
}
