use rayon::prelude::*;

use crate::walsh::IndexSet;
use crate::{Error, Result};

/// Most monomials a [`SignTable`] can hold.
pub const MAX_TABLE_TERMS: usize = 128;

/// Sign vectors `(𝐫_ȷ(t))_{ȷ ∈ A}` for every configuration `t` of the support.
///
/// Bit `i` of `rows[t]` is set when the `i`-th element of `A` is −1 at `t`.
/// For a sign pattern `u` encoded the same way,
/// `Σ_ȷ u_ȷ 𝐫_ȷ(t) = m − 2·popcount(u ⊕ rows[t])`.
#[derive(Debug, Clone)]
pub(crate) struct SignTable {
    pub(crate) m: usize,
    pub(crate) support_bits: u32,
    pub(crate) rows: Vec<u128>,
}

impl SignTable {
    pub(crate) fn new(set: &IndexSet, bits_cap: u32) -> Result<SignTable> {
        let m = set.len();
        if m == 0 {
            return Err(Error::EmptyInput("index set"));
        }
        if m > MAX_TABLE_TERMS {
            return Err(Error::limit("sign table monomials", m as u64, MAX_TABLE_TERMS as u64));
        }
        let support = set.support();
        let k = support.len();
        if k > bits_cap.min(63) as usize {
            return Err(Error::limit("exact enumeration support bits", k as u64, bits_cap.min(63) as u64));
        }
        let masks: Vec<u64> = set
            .iter()
            .map(|e| {
                e.entries()
                    .iter()
                    .fold(0u64, |acc, j| acc | 1 << support.binary_search(j).expect("entry in support"))
            })
            .collect();
        let rows = (0..1u64 << k)
            .into_par_iter()
            .map(|t| {
                masks
                    .iter()
                    .enumerate()
                    .fold(0u128, |acc, (i, mk)| acc | (((mk & t).count_ones() & 1) as u128) << i)
            })
            .collect();
        Ok(SignTable { m, support_bits: k as u32, rows })
    }

    /// `max_t |Σ_ȷ u_ȷ 𝐫_ȷ(t)|`.
    pub(crate) fn sup_abs(&self, u: u128) -> u32 {
        let m = self.m as i64;
        self.rows
            .iter()
            .map(|&v| (m - 2 * (u ^ v).count_ones() as i64).unsigned_abs() as u32)
            .max()
            .unwrap_or(0)
    }

    /// Distinct rows and their complements: the sign patterns reaching `±m`.
    pub(crate) fn extremal_patterns(&self) -> Vec<u128> {
        let full = self.full_mask();
        let mut out: Vec<u128> = self.rows.iter().flat_map(|&v| [v, v ^ full]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub(crate) fn full_mask(&self) -> u128 {
        if self.m == 128 {
            u128::MAX
        } else {
            (1u128 << self.m) - 1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combdim::gen_triangle;
    use crate::walsh::{chaos_sum, CoefficientMap};

    #[test]
    fn table_matches_direct_evaluation() {
        let set = gen_triangle(2, 5).unwrap();
        let table = SignTable::new(&set, 24).unwrap();
        assert_eq!(table.rows.len(), 32);
        let u: u128 = 0b1011_0010_11;
        let mut coeffs = CoefficientMap::new();
        for (i, e) in set.iter().enumerate() {
            coeffs.insert(e.clone(), if (u >> i) & 1 == 1 { -1.0 } else { 1.0 }).unwrap();
        }
        let f = chaos_sum(&coeffs).unwrap();
        let direct = (0..32u64).map(|t| f.value_at(&[t]).abs()).fold(0.0, f64::max);
        assert_eq!(table.sup_abs(u) as f64, direct);
        assert_eq!(table.sup_abs(0), 10);
    }
}
