use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::combdim::BlockChoice;
use crate::{Error, Result};

/// A strictly decreasing tuple `(j_1 > j_2 > … > j_d ≥ 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidIndex("multi-index must have order ≥ 1".into()));
        }
        if entries.iter().any(|&j| j == 0) {
            return Err(Error::InvalidIndex(format!(
                "entries must be positive: {entries:?}"
            )));
        }
        if entries.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidIndex(format!(
                "entries must be strictly decreasing: {entries:?}"
            )));
        }
        Ok(MultiIndex(entries))
    }

    /// Sorts and validates arbitrary distinct entries.
    pub fn from_unordered(mut entries: Vec<u32>) -> Result<Self> {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(entries)
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn max_entry(&self) -> u32 {
        self.0[0]
    }

    pub fn contains(&self, j: u32) -> bool {
        self.0.contains(&j)
    }

    pub fn is_disjoint(&self, other: &MultiIndex) -> bool {
        self.0.iter().all(|j| !other.contains(*j))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{j}")?;
        }
        Ok(())
    }
}

/// A finite set of multi-indices of one common order.
///
/// Iteration order is the lexicographic order of the entries; no computation
/// depends on it beyond fixing tie-breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    order: usize,
    elements: BTreeSet<MultiIndex>,
}

impl IndexSet {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("index set order must be ≥ 1"));
        }
        Ok(IndexSet {
            order,
            elements: BTreeSet::new(),
        })
    }

    /// Builds a set, rejecting duplicates and order mismatches.
    pub fn from_elements(order: usize, elements: impl IntoIterator<Item = MultiIndex>) -> Result<Self> {
        let mut set = Self::new(order)?;
        for e in elements {
            let shown = e.to_string();
            if !set.insert(e)? {
                return Err(Error::invalid(format!("duplicate element ({shown})")));
            }
        }
        Ok(set)
    }

    /// Inserts an element; returns `false` when it was already present.
    pub fn insert(&mut self, e: MultiIndex) -> Result<bool> {
        if e.order() != self.order {
            return Err(Error::invalid(format!(
                "element ({e}) has order {}, set has order {}",
                e.order(),
                self.order
            )));
        }
        Ok(self.elements.insert(e))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &MultiIndex) -> bool {
        self.elements.contains(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &MultiIndex> + '_ {
        self.elements.iter()
    }

    /// Largest entry over all elements, 0 for the empty set.
    pub fn max_index(&self) -> u32 {
        self.elements.iter().map(MultiIndex::max_entry).max().unwrap_or(0)
    }

    /// Sorted distinct entries used by the elements.
    pub fn support(&self) -> Vec<u32> {
        let s: BTreeSet<u32> = self.elements.iter().flat_map(|e| e.entries().iter().copied()).collect();
        s.into_iter().collect()
    }

    /// `A ∩ {1,…,n}^d`.
    pub fn restrict_max(&self, n: u32) -> IndexSet {
        IndexSet {
            order: self.order,
            elements: self.elements.iter().filter(|e| e.max_entry() <= n).cloned().collect(),
        }
    }

    /// `A ∩ (B_1 × … × B_d)`.
    pub fn intersect_blocks(&self, blocks: &BlockChoice) -> Result<IndexSet> {
        if blocks.order() != self.order {
            return Err(Error::invalid(format!(
                "block order {} does not match set order {}",
                blocks.order(),
                self.order
            )));
        }
        Ok(IndexSet {
            order: self.order,
            elements: self.elements.iter().filter(|e| blocks.contains(e)).cloned().collect(),
        })
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.order == other.order && self.elements.is_subset(&other.elements)
    }
}

impl<'a> IntoIterator for &'a IndexSet {
    type Item = &'a MultiIndex;
    type IntoIter = std::collections::btree_set::Iter<'a, MultiIndex>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

/// Real coefficients `a_ȷ` keyed by multi-indices of one order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoefficientMap {
    order: Option<usize>,
    coeffs: BTreeMap<MultiIndex, f64>,
}

impl CoefficientMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Unit coefficient on every element of `set`.
    pub fn unit(set: &IndexSet) -> Self {
        CoefficientMap {
            order: Some(set.order()),
            coeffs: set.iter().map(|e| (e.clone(), 1.0)).collect(),
        }
    }

    /// First-order map `a_j` on `r_1, …, r_k`.
    pub fn linear(a: &[f64]) -> Self {
        CoefficientMap {
            order: Some(1),
            coeffs: a
                .iter()
                .enumerate()
                .map(|(i, &v)| (MultiIndex(vec![i as u32 + 1]), v))
                .collect(),
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (MultiIndex, f64)>) -> Result<Self> {
        let mut map = Self::new();
        for (k, v) in pairs {
            map.insert(k, v)?;
        }
        Ok(map)
    }

    /// Inserts or replaces a coefficient; keys must share one order.
    pub fn insert(&mut self, key: MultiIndex, value: f64) -> Result<Option<f64>> {
        if !value.is_finite() {
            return Err(Error::invalid(format!("coefficient for ({key}) is not finite")));
        }
        match self.order {
            Some(d) if d != key.order() => {
                return Err(Error::invalid(format!(
                    "coefficient key ({key}) has order {}, map has order {d}",
                    key.order()
                )))
            }
            _ => self.order = Some(key.order()),
        }
        Ok(self.coeffs.insert(key, value))
    }

    pub fn get(&self, key: &MultiIndex) -> Option<f64> {
        self.coeffs.get(key).copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, f64)> + '_ {
        self.coeffs.iter().map(|(k, &v)| (k, v))
    }

    pub fn keys(&self) -> impl Iterator<Item = &MultiIndex> + '_ {
        self.coeffs.keys()
    }

    /// `(Σ a_ȷ²)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.values().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn key_set(&self) -> Result<IndexSet> {
        let order = self.order.ok_or(Error::EmptyInput("coefficient map"))?;
        IndexSet::from_elements(order, self.coeffs.keys().cloned())
    }
}
