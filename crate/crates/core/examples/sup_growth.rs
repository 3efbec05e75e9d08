//! Deterministic over sign-averaged sup-norms on full triangles.

use chaoslab::chaos::averaged_sup_growth;

fn main() -> chaoslab::Result<()> {
    print!("{}", averaged_sup_growth(2, &[6, 9, 12], 1000, 7, 24)?);
    print!("{}", averaged_sup_growth(1, &[6, 9, 12], 1000, 7, 24)?);
    Ok(())
}
