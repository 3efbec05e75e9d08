use crate::walsh::{IndexSet, MultiIndex};
use crate::{Error, Result};

/// Largest index set that will be materialised element by element.
pub const MATERIALIZE_CAP: u64 = 20_000_000;

/// `C(n, k)` saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Index families with closed-form membership, usable without materialising.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructuredSet {
    /// `Δ^d ∩ {1, …, max}^d`.
    Triangle { order: usize, max: u32 },
    /// `{(i+j, j, i) : 1 ≤ i < j, i + j ≤ max}`.
    SumSet { max: u32 },
}

impl StructuredSet {
    pub fn triangle(order: usize, max: u32) -> Result<Self> {
        if order == 0 || (max as usize) < order {
            return Err(Error::invalid(format!(
                "triangle needs max ≥ order ≥ 1, got order {order}, max {max}"
            )));
        }
        Ok(StructuredSet::Triangle { order, max })
    }

    pub fn sum_set(max: u32) -> Result<Self> {
        if max < 3 {
            return Err(Error::invalid(format!("sum set needs max ≥ 3, got {max}")));
        }
        Ok(StructuredSet::SumSet { max })
    }

    pub fn order(&self) -> usize {
        match *self {
            StructuredSet::Triangle { order, .. } => order,
            StructuredSet::SumSet { .. } => 3,
        }
    }

    pub fn max_index(&self) -> u32 {
        match *self {
            StructuredSet::Triangle { max, .. } | StructuredSet::SumSet { max } => max,
        }
    }

    pub fn len(&self) -> u64 {
        match *self {
            StructuredSet::Triangle { order, max } => binomial(max as u64, order as u64),
            StructuredSet::SumSet { max } => {
                let m = (max - 1) as u64;
                m * m / 4
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, e: &MultiIndex) -> bool {
        if e.order() != self.order() || e.max_entry() > self.max_index() {
            return false;
        }
        match self {
            StructuredSet::Triangle { .. } => true,
            StructuredSet::SumSet { .. } => {
                let x = e.entries();
                x[0] == x[1] + x[2]
            }
        }
    }

    pub fn materialize(&self) -> Result<IndexSet> {
        let size = self.len();
        if size > MATERIALIZE_CAP {
            return Err(Error::limit("index set elements", size, MATERIALIZE_CAP));
        }
        match *self {
            StructuredSet::Triangle { order, max } => {
                let mut set = IndexSet::new(order)?;
                let mut current = Vec::with_capacity(order);
                push_decreasing(&mut set, &mut current, order, max)?;
                Ok(set)
            }
            StructuredSet::SumSet { max } => {
                let mut set = IndexSet::new(3)?;
                for j in 2..max {
                    for i in 1..j.min(max - j + 1) {
                        set.insert(MultiIndex::new(vec![i + j, j, i])?)?;
                    }
                }
                Ok(set)
            }
        }
    }
}

fn push_decreasing(set: &mut IndexSet, current: &mut Vec<u32>, remaining: usize, below: u32) -> Result<()> {
    if remaining == 0 {
        set.insert(MultiIndex::new(current.clone())?)?;
        return Ok(());
    }
    for j in (remaining as u32..=below).rev() {
        current.push(j);
        push_decreasing(set, current, remaining - 1, j - 1)?;
        current.pop();
    }
    Ok(())
}

/// All strictly decreasing `d`-tuples with entries in `[1, J]`.
pub fn gen_triangle(order: usize, max: u32) -> Result<IndexSet> {
    StructuredSet::triangle(order, max)?.materialize()
}

/// The sum set `{(i+j, j, i) : 1 ≤ i < j, i + j ≤ N}`, entries stored decreasing.
pub fn gen_sum_set(max: u32) -> Result<IndexSet> {
    StructuredSet::sum_set(max)?.materialize()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_sum_set(n: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                if i + j <= n {
                    out.push(vec![i + j, j, i]);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn triangle_examples() {
        let t = gen_triangle(2, 3).unwrap();
        let got: Vec<Vec<u32>> = t.iter().map(|e| e.entries().to_vec()).collect();
        assert_eq!(got, vec![vec![2, 1], vec![3, 1], vec![3, 2]]);
        assert_eq!(gen_triangle(3, 3).unwrap().len(), 1);
        assert_eq!(gen_triangle(1, 5).unwrap().len(), 5);
        assert!(gen_triangle(3, 2).is_err());
        assert_eq!(gen_triangle(4, 12).unwrap().len() as u64, binomial(12, 4));
    }

    #[test]
    fn sum_set_examples() {
        let s = gen_sum_set(6).unwrap();
        let got: Vec<Vec<u32>> = s.iter().map(|e| e.entries().to_vec()).collect();
        assert_eq!(got, brute_sum_set(6));
        assert_eq!(got.len(), 6);
        assert_eq!(gen_sum_set(5).unwrap().len(), 4);
        assert_eq!(gen_sum_set(200).unwrap().len(), 9900);
        assert!(gen_sum_set(2).is_err());
    }

    #[test]
    fn sum_set_size_matches_brute_force() {
        for n in 3..=60u32 {
            let brute = brute_sum_set(n).len() as u64;
            assert_eq!(brute, ((n - 1) * (n - 1) / 4) as u64, "N={n}");
            assert_eq!(StructuredSet::SumSet { max: n }.len(), brute);
            assert_eq!(gen_sum_set(n).unwrap().len() as u64, brute);
        }
    }

    #[test]
    fn sum_set_is_inside_the_triangle() {
        for n in [3, 7, 20] {
            assert!(gen_sum_set(n).unwrap().is_subset(&gen_triangle(3, n).unwrap()));
        }
    }

    #[test]
    fn huge_triangle_is_not_materialised() {
        assert!(matches!(gen_triangle(3, 1100), Err(Error::ResourceLimit { .. })));
        assert_eq!(StructuredSet::triangle(3, 1100).unwrap().len(), binomial(1100, 3));
    }
}
