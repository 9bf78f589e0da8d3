use std::fmt;

use fixedbitset::FixedBitSet;

/// A set of vertex ids drawn from a fixed universe `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    /// Builds a set from members, growing the universe if a member needs it.
    pub fn from_members(universe: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut set = VertexSet::new(universe);
        for v in members {
            set.insert(v);
        }
        set
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        VertexSet { bits }
    }

    /// Decodes the low `universe` bits of a mask.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        VertexSet::from_members(universe, (0..universe).filter(|&v| mask >> v & 1 == 1))
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    /// Widens the universe to at least `universe`, keeping the members.
    pub fn grow(&mut self, universe: usize) {
        self.bits.grow(universe);
    }

    pub fn insert(&mut self, v: usize) -> bool {
        if v >= self.bits.len() {
            self.bits.grow(v + 1);
        }
        !self.bits.put(v)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.bits.len() {
            return false;
        }
        let was = self.bits[v];
        self.bits.set(v, false);
        was
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
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

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Highest member plus one, i.e. the smallest universe that holds the set.
    pub fn span(&self) -> usize {
        self.iter().last().map_or(0, |v| v + 1)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Same members regardless of universe size.
    pub fn same_members(&self, other: &VertexSet) -> bool {
        self.iter().eq(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_members(0, iter)
    }
}

impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}
