//! Two-sided Khintchine bounds from exact moments.

use chaoslab::chaos::khintchine_check;

fn main() -> chaoslab::Result<()> {
    for (a, p) in [(vec![1.0, 1.0], 4.0), (vec![1.0], 1.0), (vec![3.0, -1.0, 0.5, 2.0, 1.0], 16.0)] {
        let r = khintchine_check(&a, p)?;
        println!(
            "a = {a:?}, p = {p}: ‖Σ a_j r_j‖_p = {:.6} ({})",
            r.get("norm_p").unwrap_or(f64::NAN),
            r.verdict()
        );
    }
    Ok(())
}
