use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::linalg::abs_minor;
use crate::matrix::IntMatrix;

/// A set of absolute maximal subdeterminants, each with one realizing row
/// set (0-based, ascending).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DetSet {
    pub values: BTreeMap<BigInt, Vec<usize>>,
}

impl DetSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `value` unless it is already witnessed. Returns whether it was new.
    pub fn insert(&mut self, value: BigInt, mut rows: Vec<usize>) -> bool {
        if self.values.contains_key(&value) {
            return false;
        }
        rows.sort_unstable();
        self.values.insert(value, rows);
        true
    }

    pub fn contains(&self, v: &BigInt) -> bool {
        self.values.contains_key(v)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value_set(&self) -> BTreeSet<BigInt> {
        self.values.keys().cloned().collect()
    }

    pub fn witness(&self, v: &BigInt) -> Option<&[usize]> {
        self.values.get(v).map(Vec::as_slice)
    }

    /// Every witness has `a.cols()` distinct rows and realizes its key.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        self.values.iter().all(|(v, rows)| {
            rows.len() == a.cols()
                && rows.windows(2).all(|w| w[0] < w[1])
                && rows.iter().all(|&r| r < a.rows())
                && &abs_minor(a, rows) == v
        })
    }

    pub fn scaled(&self, factor: &BigInt) -> DetSet {
        DetSet {
            values: self
                .values
                .iter()
                .map(|(v, r)| (v * factor, r.clone()))
                .collect(),
        }
    }

    /// Re-indexes witness rows through `map`.
    pub fn remap_rows(&self, map: impl Fn(usize) -> usize) -> DetSet {
        let mut out = DetSet::new();
        for (v, rows) in &self.values {
            out.insert(v.clone(), rows.iter().map(|&r| map(r)).collect());
        }
        out
    }
}
