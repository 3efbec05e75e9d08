//! Density exponents from block counts, without materialising large sets.

use chaoslab::combdim::{density_certificates, estimate_dimension, gen_sum_set, SearchStrategy, StructuredSet};

fn main() -> chaoslab::Result<()> {
    let ns = [64, 128, 256, 512, 1024];
    for (label, set, universe) in [
        ("sum set", StructuredSet::sum_set(2100)?, 2100),
        ("Δ³", StructuredSet::triangle(3, 1100)?, 1100),
        ("Δ¹", StructuredSet::triangle(1, 1100)?, 1100),
    ] {
        let p = estimate_dimension(&set, &ns, universe, SearchStrategy::IdentityBlocks)?;
        println!("{label:<8} alpha_hat = {:.6} ± {:.6} (r² = {:.6})", p.alpha_hat, p.slope_stderr, p.r_squared);
    }

    let ns: Vec<usize> = (4..=12).collect();
    let report = density_certificates(&gen_sum_set(40)?, 2.0, 2.0, &ns, 40, SearchStrategy::IdentityBlocks)?;
    print!("{report}");
    Ok(())
}
