use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use super::{binomial, BlockChoice, StructuredSet};
use crate::report::CertificateReport;
use crate::walsh::IndexSet;
use crate::{Error, Result};

/// Budget on `C(universe, n)^d` for exhaustive block search.
pub const EXHAUSTIVE_BUDGET: u64 = 1_000_000;

/// Anything that can count its elements inside a block product.
pub trait BlockDensity: Sync {
    fn order(&self) -> usize;

    /// `|A ∩ (B_1 × … × B_d)|`; blocks must have the set's order.
    fn count_in(&self, blocks: &BlockChoice) -> u64;

    /// `A ∩ {1, …, universe}^d`, the part any block search can reach.
    fn within(&self, universe: u32) -> Self
    where
        Self: Sized;
}

impl BlockDensity for IndexSet {
    fn order(&self) -> usize {
        IndexSet::order(self)
    }

    fn count_in(&self, blocks: &BlockChoice) -> u64 {
        self.iter().filter(|e| blocks.contains(e)).count() as u64
    }

    fn within(&self, universe: u32) -> Self {
        self.restrict_max(universe)
    }
}

impl BlockDensity for StructuredSet {
    fn order(&self) -> usize {
        StructuredSet::order(self)
    }

    fn count_in(&self, blocks: &BlockChoice) -> u64 {
        match *self {
            StructuredSet::Triangle { max, .. } => count_decreasing(blocks, max),
            StructuredSet::SumSet { max } => {
                let b = blocks.blocks();
                let top = b[0].last().copied().unwrap_or(0).min(max) as usize;
                let mut in_top = vec![false; top + 1];
                for &s in b[0].iter().filter(|&&s| s as usize <= top) {
                    in_top[s as usize] = true;
                }
                let mut count = 0;
                for &j in &b[1] {
                    for &i in b[2].iter().take_while(|&&i| i < j) {
                        let s = (i + j) as usize;
                        if s <= top && in_top[s] {
                            count += 1;
                        }
                    }
                }
                count
            }
        }
    }

    fn within(&self, universe: u32) -> Self {
        match *self {
            StructuredSet::Triangle { order, max } => StructuredSet::Triangle {
                order,
                max: max.min(universe),
            },
            StructuredSet::SumSet { max } => StructuredSet::SumSet {
                max: max.min(universe),
            },
        }
    }
}

/// Number of `x_1 > … > x_d` with `x_i ∈ B_i ∩ [1, max]`.
fn count_decreasing(blocks: &BlockChoice, max: u32) -> u64 {
    let b = blocks.blocks();
    let d = b.len();
    // ways[k] = number of valid tails x_i > … > x_d with x_i = b[i][k]
    let mut ways: Vec<u64> = b[d - 1].iter().map(|&x| u64::from(x <= max)).collect();
    for i in (0..d - 1).rev() {
        let below = &b[i + 1];
        let mut next = Vec::with_capacity(b[i].len());
        let mut acc = 0u64;
        let mut p = 0;
        for &x in &b[i] {
            while p < below.len() && below[p] < x {
                acc += ways[p];
                p += 1;
            }
            next.push(if x <= max { acc } else { 0 });
        }
        ways = next;
    }
    ways.iter().sum()
}

/// `|A ∩ (B_1 × … × B_d)|`.
pub fn density_count<A: BlockDensity>(set: &A, blocks: &BlockChoice) -> Result<u64> {
    if blocks.order() != set.order() {
        return Err(Error::invalid(format!(
            "block order {} does not match set order {}",
            blocks.order(),
            set.order()
        )));
    }
    Ok(set.count_in(blocks))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStrategy {
    /// True maximum over all block choices inside the universe.
    Exhaustive,
    /// Single-element swaps from the identity blocks until no swap improves.
    GreedySwap,
    /// `B_i = {1, …, n}`.
    IdentityBlocks,
}

impl SearchStrategy {
    pub fn is_exact(self) -> bool {
        self == SearchStrategy::Exhaustive
    }
}

impl fmt::Display for SearchStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchStrategy::Exhaustive => "exhaustive",
            SearchStrategy::GreedySwap => "greedy-swap",
            SearchStrategy::IdentityBlocks => "identity-blocks",
        })
    }
}

impl FromStr for SearchStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(SearchStrategy::Exhaustive),
            "greedy-swap" | "greedy" => Ok(SearchStrategy::GreedySwap),
            "identity-blocks" | "identity" => Ok(SearchStrategy::IdentityBlocks),
            _ => Err(Error::invalid(format!("unknown strategy `{s}`"))),
        }
    }
}

/// Lexicographic `n`-subsets of `{1, …, universe}`.
fn subsets(universe: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (1..=n as u32).collect();
    loop {
        out.push(cur.clone());
        let mut i = n;
        while i > 0 && cur[i - 1] == universe - (n - i) as u32 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for k in i..n {
            cur[k] = cur[k - 1] + 1;
        }
    }
}

fn exhaustive<A: BlockDensity>(set: &A, n: usize, universe: u32) -> Result<(u64, BlockChoice)> {
    let d = set.order();
    let per_block = binomial(universe as u64, n as u64);
    let total = (0..d).try_fold(1u64, |acc, _| acc.checked_mul(per_block)).unwrap_or(u64::MAX);
    if total > EXHAUSTIVE_BUDGET {
        return Err(Error::limit("exhaustive block choices", total, EXHAUSTIVE_BUDGET));
    }
    let subs = subsets(universe, n);
    let m = subs.len();
    // One task per choice of B_1; inside, an odometer over B_2 … B_d in
    // lexicographic order. Only strictly larger counts replace the incumbent,
    // so the lexicographically smallest witness wins ties.
    let best = (0..m)
        .into_par_iter()
        .map(|first| {
            let mut idx = vec![0usize; d];
            idx[0] = first;
            let mut best: Option<(u64, Vec<usize>)> = None;
            loop {
                let blocks = BlockChoice::new(idx.iter().map(|&k| subs[k].clone()).collect()).expect("valid blocks");
                let c = set.count_in(&blocks);
                if best.as_ref().map_or(true, |b| c > b.0) {
                    best = Some((c, idx.clone()));
                }
                let mut pos = d - 1;
                loop {
                    if pos == 0 {
                        return best.expect("at least one choice");
                    }
                    idx[pos] += 1;
                    if idx[pos] < m {
                        break;
                    }
                    idx[pos] = 0;
                    pos -= 1;
                }
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(None::<(u64, Vec<usize>)>, |acc, cand| match acc {
            Some(a) if a.0 >= cand.0 => Some(a),
            _ => Some(cand),
        })
        .expect("nonempty search");
    let witness = BlockChoice::new(best.1.iter().map(|&k| subs[k].clone()).collect())?;
    Ok((best.0, witness))
}

fn greedy_swap<A: BlockDensity>(set: &A, n: usize, universe: u32) -> Result<(u64, BlockChoice)> {
    let mut blocks = BlockChoice::identity(set.order(), n as u32)?;
    let mut count = set.count_in(&blocks);
    loop {
        let mut best: Option<(u64, BlockChoice)> = None;
        for i in 0..blocks.order() {
            for &old in &blocks.blocks()[i] {
                for cand in 1..=universe {
                    if blocks.blocks()[i].binary_search(&cand).is_ok() {
                        continue;
                    }
                    let trial = blocks.swapped(i, old, cand);
                    let c = set.count_in(&trial);
                    if c > best.as_ref().map_or(count, |b| b.0) {
                        best = Some((c, trial));
                    }
                }
            }
        }
        match best {
            Some((c, b)) => {
                count = c;
                blocks = b;
            }
            None => return Ok((count, blocks)),
        }
    }
}

/// Largest `|A ∩ (B_1 × … × B_d)|` over blocks of size `n` inside
/// `{1, …, universe}`, as found by `strategy`.
pub fn max_density<A: BlockDensity>(
    set: &A,
    n: usize,
    universe: u32,
    strategy: SearchStrategy,
) -> Result<(u64, BlockChoice)> {
    if n == 0 || n > universe as usize {
        return Err(Error::invalid(format!("block size {n} must lie in [1, universe = {universe}]")));
    }
    match strategy {
        SearchStrategy::IdentityBlocks => {
            let b = BlockChoice::identity(set.order(), n as u32)?;
            Ok((set.count_in(&b), b))
        }
        SearchStrategy::Exhaustive => exhaustive(&set.within(universe), n, universe),
        SearchStrategy::GreedySwap => greedy_swap(&set.within(universe), n, universe),
    }
}

/// Super-α and sub-β evidence over the tested block sizes.
///
/// `c_A = min_n best(n)/n^α` is a lower-density certificate only when the
/// search is exhaustive; otherwise it is lower-bound evidence.
/// `C_A = max_n best(n)/n^β` is a local certificate under exhaustive search and
/// can only refute the sub-β property under heuristic search.
pub fn density_certificates<A: BlockDensity>(
    set: &A,
    alpha: f64,
    beta: f64,
    n_list: &[usize],
    universe: u32,
    strategy: SearchStrategy,
) -> Result<CertificateReport> {
    let started = Instant::now();
    let d = set.order() as f64;
    if !(1.0 <= alpha && alpha <= beta && beta <= d) {
        return Err(Error::invalid(format!("need 1 ≤ α ≤ β ≤ d, got α={alpha}, β={beta}, d={d}")));
    }
    if n_list.is_empty() {
        return Err(Error::EmptyInput("block sizes"));
    }
    let mut report = CertificateReport::new("density_certificates");
    report
        .input("alpha", alpha)
        .input("beta", beta)
        .input("universe", universe)
        .input("strategy", strategy)
        .input(
            "n_range",
            format!("{}..{}", n_list.iter().min().unwrap(), n_list.iter().max().unwrap()),
        )
        .input("super_side", if strategy.is_exact() { "exact" } else { "lower-bound evidence" })
        .input("sub_side", if strategy.is_exact() { "certificate" } else { "refutation only" });
    let mut c_lower = f64::INFINITY;
    let mut c_upper: f64 = 0.0;
    for &n in n_list {
        let (count, witness) = max_density(set, n, universe, strategy)?;
        let nf = n as f64;
        let sup = count as f64 / nf.powf(alpha);
        let sub = count as f64 / nf.powf(beta);
        report.input(format!("witness[{n}]"), &witness);
        report
            .info(format!("count[{n}]"), count as f64)
            .info(format!("super_ratio[{n}]"), sup)
            .info(format!("sub_ratio[{n}]"), sub);
        c_lower = c_lower.min(sup);
        c_upper = c_upper.max(sub);
    }
    report.gt("c_A", c_lower, 0.0).info("C_A", c_upper);
    report.finish(started);
    Ok(report)
}
