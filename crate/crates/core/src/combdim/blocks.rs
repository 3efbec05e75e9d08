use std::fmt;
use std::str::FromStr;

use crate::walsh::MultiIndex;
use crate::{Error, Result};

/// `d` blocks `B_1, …, B_d` of distinct positive integers, all of size `n`.
///
/// Blocks are stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockChoice {
    blocks: Vec<Vec<u32>>,
}

impl BlockChoice {
    pub fn new(blocks: Vec<Vec<u32>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::invalid("block choice needs at least one block"));
        }
        let n = blocks[0].len();
        let mut sorted = Vec::with_capacity(blocks.len());
        for (i, mut b) in blocks.into_iter().enumerate() {
            if b.len() != n || n == 0 {
                return Err(Error::invalid(format!(
                    "block {} has size {}, expected {n} ≥ 1",
                    i + 1,
                    b.len()
                )));
            }
            if b.contains(&0) {
                return Err(Error::invalid(format!("block {} contains 0", i + 1)));
            }
            b.sort_unstable();
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("block {} has repeated entries", i + 1)));
            }
            sorted.push(b);
        }
        Ok(BlockChoice { blocks: sorted })
    }

    /// `B_i = {1, …, n}` for every `i`.
    pub fn identity(order: usize, n: u32) -> Result<Self> {
        Self::new(vec![(1..=n).collect(); order])
    }

    pub fn order(&self) -> usize {
        self.blocks.len()
    }

    /// Common block size `n`.
    pub fn size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// `ȷ ∈ B_1 × … × B_d`.
    pub fn contains(&self, index: &MultiIndex) -> bool {
        index.order() == self.order()
            && index
                .entries()
                .iter()
                .zip(&self.blocks)
                .all(|(j, b)| b.binary_search(j).is_ok())
    }

    /// Sorted distinct entries over all blocks.
    pub fn entries(&self) -> Vec<u32> {
        let mut all: Vec<u32> = self.blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Replaces `old` by `new` in block `i`, keeping it sorted.
    pub(crate) fn swapped(&self, i: usize, old: u32, new: u32) -> BlockChoice {
        let mut blocks = self.blocks.clone();
        let b = &mut blocks[i];
        let pos = b.binary_search(&old).expect("old entry in block");
        b.remove(pos);
        let ins = b.binary_search(&new).expect_err("new entry not in block");
        b.insert(ins, new);
        BlockChoice { blocks }
    }
}

impl fmt::Display for BlockChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            for (k, j) in b.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{j}")?;
            }
        }
        Ok(())
    }
}

/// Parses `B_1/B_2/…`, each block a comma-separated list, e.g. `3,4/1,2`.
impl FromStr for BlockChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .split('/')
            .map(|b| {
                b.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::invalid(format!("bad block entry `{x}`")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        BlockChoice::new(blocks)
    }
}
