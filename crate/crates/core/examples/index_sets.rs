//! Generating index sets, storing them, and counting them inside blocks.

use chaoslab::combdim::{
    density_count, gen_sum_set, gen_triangle, max_density, parse_index_set, format_index_set, BlockChoice,
    SearchStrategy,
};

fn main() -> chaoslab::Result<()> {
    let sum = gen_sum_set(6)?;
    let text = format_index_set(&sum);
    print!("sum set up to 6:\n{text}");
    assert_eq!(parse_index_set(&text)?, sum);

    let tri = gen_triangle(2, 4)?;
    let blocks: BlockChoice = "3,4/1,2".parse()?;
    println!("|Δ² ∩ ({blocks})| = {}", density_count(&tri, &blocks)?);

    for strategy in [SearchStrategy::IdentityBlocks, SearchStrategy::GreedySwap, SearchStrategy::Exhaustive] {
        let (count, witness) = max_density(&tri, 2, 4, strategy)?;
        println!("{strategy:<16} best {count} at {witness}");
    }

    let big = gen_sum_set(30)?;
    let (count, witness) = max_density(&big, 3, 8, SearchStrategy::Exhaustive)?;
    println!("sum set, n = 3 inside [1, 8]: {count} at {witness}");
    Ok(())
}
