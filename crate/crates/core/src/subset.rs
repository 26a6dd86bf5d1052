use fixedbitset::FixedBitSet;
use std::fmt;

/// A subset of the carrier `0..n` of a finite semigroup.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSubset {
    bits: FixedBitSet,
}

impl ElementSubset {
    pub fn empty(n: usize) -> Self {
        ElementSubset { bits: FixedBitSet::with_capacity(n) }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        ElementSubset { bits }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, items: I) -> Self {
        let mut s = Self::empty(n);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn universe_size(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn last(&self) -> Option<usize> {
        self.bits.maximum()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElementSubset) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union_with(&mut self, other: &ElementSubset) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &ElementSubset) {
        self.bits.intersect_with(&other.bits);
    }
}

impl fmt::Debug for ElementSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Renumber class labels so that classes are numbered in order of their first element.
pub fn normalize_classes(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect()
}

/// Group the elements of a labelled partition into explicit classes.
pub fn classes_of(labels: &[usize]) -> Vec<Vec<usize>> {
    let norm = normalize_classes(labels);
    let count = norm.iter().copied().max().map_or(0, |m| m + 1);
    let mut out = vec![Vec::new(); count];
    for (i, &c) in norm.iter().enumerate() {
        out[c].push(i);
    }
    out
}
