use fixedbitset::FixedBitSet;

/// A subset of an image's points, stored as a bitset over the image's
/// canonical (lexicographic) point order.
///
/// A `PointSet` does not hold a reference to its image; its capacity equals
/// the size of the image it was built for, and iteration yields canonical
/// indices in ascending order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    bits: FixedBitSet,
}

impl PointSet {
    pub fn empty(capacity: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(capacity),
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(capacity);
        bits.insert_range(..);
        Self { bits }
    }

    /// Panics if an index is out of range.
    pub fn from_indices(capacity: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(capacity);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Set built from the low `capacity` bits of a mask.
    pub fn from_mask(capacity: usize, mask: u64) -> Self {
        Self::from_indices(capacity, (0..capacity).filter(|i| mask >> i & 1 == 1))
    }

    pub fn to_mask(&self) -> u64 {
        assert!(self.capacity() <= 64, "mask form needs at most 64 points");
        self.iter().fold(0u64, |m, i| m | 1 << i)
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.bits.contains(index)
    }

    pub fn insert(&mut self, index: usize) -> bool {
        !self.bits.put(index)
    }

    pub fn remove(&mut self, index: usize) -> bool {
        let was = self.bits.contains(index);
        self.bits.set(index, false);
        was
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        PointSet { bits }
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        PointSet { bits }
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        PointSet { bits }
    }

    pub fn complement(&self) -> PointSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        PointSet { bits }
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }
}

impl std::fmt::Debug for PointSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = PointSet::from_indices(6, [0, 2, 4]);
        let b = PointSet::from_indices(6, [2, 3]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 2, 3, 4]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 4]);
        assert_eq!(a.complement().to_vec(), vec![1, 3, 5]);
        assert!(PointSet::from_indices(6, [2]).is_subset(&a));
        assert!(!b.is_subset(&a));
        assert_eq!(PointSet::full(3).len(), 3);
    }

    #[test]
    fn insert_reports_novelty() {
        let mut s = PointSet::empty(4);
        assert!(s.insert(1));
        assert!(!s.insert(1));
        assert!(s.remove(1));
        assert!(!s.remove(1));
        assert!(s.is_empty());
    }

    #[test]
    fn mask_round_trip() {
        let s = PointSet::from_mask(10, 0b10_0110_0001);
        assert_eq!(s.to_vec(), vec![0, 5, 6, 9]);
        assert_eq!(s.to_mask(), 0b10_0110_0001);
    }
}
