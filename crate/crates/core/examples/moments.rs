//! Moment growth of chaos sums and the ratio against p^{β/2}‖a‖₂.

use chaoslab::chaos::{blei_bound_check, moment_table};
use chaoslab::combdim::gen_triangle;
use chaoslab::walsh::{chaos_sum, CoefficientMap};

fn main() -> chaoslab::Result<()> {
    let ps = [1.0, 2.0, 4.0, 8.0, 16.0];
    for d in 1..=3 {
        let set = gen_triangle(d, 12)?;
        let f = chaos_sum(&CoefficientMap::unit(&set))?;
        let t = moment_table(&f, &ps, 24)?;
        let row: Vec<String> = t.rows.iter().map(|(p, v)| format!("{p}:{v:.4}")).collect();
        println!("d = {d}: {}  theta = {:.4}", row.join(" "), t.theta.unwrap_or(f64::NAN));
    }

    let set = gen_triangle(2, 6)?;
    print!("{}", blei_bound_check(&set, &CoefficientMap::unit(&set), 2.0, &[2.0, 4.0, 8.0, 16.0], 24)?);
    Ok(())
}
