use std::collections::btree_set;
use std::collections::BTreeSet;
use std::fmt;

use crate::perm::Permutation;

/// A deduplicated set of permutations, iterated in lexicographic order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct PermSet(BTreeSet<Permutation>);

impl PermSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: Permutation) -> bool {
        self.0.insert(p)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.0.contains(p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> btree_set::Iter<'_, Permutation> {
        self.0.iter()
    }

    pub fn extend_from(&mut self, other: PermSet) {
        self.0.extend(other.0);
    }

    pub fn is_subset(&self, other: &PermSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Members of `self` missing from `other`.
    pub fn difference(&self, other: &PermSet) -> PermSet {
        self.0.difference(&other.0).cloned().collect()
    }

    /// Members of the given length.
    pub fn of_len(&self, n: usize) -> PermSet {
        self.iter().filter(|p| p.len() == n).cloned().collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.iter().map(Permutation::to_string).collect()
    }
}

impl FromIterator<Permutation> for PermSet {
    fn from_iter<I: IntoIterator<Item = Permutation>>(iter: I) -> Self {
        PermSet(iter.into_iter().collect())
    }
}

impl Extend<Permutation> for PermSet {
    fn extend<I: IntoIterator<Item = Permutation>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl IntoIterator for PermSet {
    type Item = Permutation;
    type IntoIter = btree_set::IntoIter<Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a PermSet {
    type Item = &'a Permutation;
    type IntoIter = btree_set::Iter<'a, Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for PermSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|p| p.to_string())).finish()
    }
}
