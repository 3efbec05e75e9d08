//! Exact and sampled laws of small Rademacher sums.

use chaoslab::walsh::{
    chaos_monomial, chaos_sum, distribution_exact, distribution_mc, evaluate_dyadic, CoefficientMap, MultiIndex,
};

fn main() -> chaoslab::Result<()> {
    let f = chaos_sum(&CoefficientMap::linear(&[1.0, 1.0]))?;
    let exact = distribution_exact(&f, 24)?;
    println!("r1 + r2:");
    for (v, w) in exact.atoms() {
        println!("  {v:>5} with probability {w}");
    }

    // the same function sampled on dyadic cells of [0, 1)
    let cells = evaluate_dyadic(&f, 3)?;
    println!("on 8 dyadic cells: {:?}", cells.values());
    assert_eq!(cells.histogram(), exact);

    let g = chaos_monomial(&MultiIndex::new(vec![5, 3, 1])?);
    let mc = distribution_mc(&g, 10_000, 42)?;
    println!("r5·r3·r1 from 10000 samples: {:?}", mc.atoms());
    Ok(())
}
