//! Fixed-width sets of atom (or arrow) ids.

use std::fmt;

use fixedbitset::FixedBitSet;

/// A subset of `0..width`, one bit per atom.
///
/// Elements of an atomic quantale are exactly such subsets, and so are the
/// composition sets of a hypergroupoid.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomSet(FixedBitSet);

impl AtomSet {
    pub fn empty(width: usize) -> Self {
        AtomSet(FixedBitSet::with_capacity(width))
    }

    pub fn full(width: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(width);
        bits.insert_range(..);
        AtomSet(bits)
    }

    pub fn singleton(width: usize, atom: usize) -> Self {
        let mut s = Self::empty(width);
        s.insert(atom);
        s
    }

    pub fn from_atoms<I: IntoIterator<Item = usize>>(width: usize, atoms: I) -> Self {
        let mut s = Self::empty(width);
        for a in atoms {
            s.insert(a);
        }
        s
    }

    /// Builds the set whose bit `i` is bit `i` of `mask`.
    pub fn from_mask(width: usize, mask: u64) -> Self {
        Self::from_atoms(width, (0..width.min(64)).filter(|i| mask >> i & 1 == 1))
    }

    /// Inverse of [`AtomSet::from_mask`]; `None` if an atom id is 64 or above.
    pub fn to_mask(&self) -> Option<u64> {
        let mut m = 0u64;
        for a in self.atoms() {
            if a >= 64 {
                return None;
            }
            m |= 1 << a;
        }
        Some(m)
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, atom: usize) {
        self.0.insert(atom);
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.0.contains(atom)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn atoms(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    /// The single atom of a singleton set.
    pub fn only(&self) -> Option<usize> {
        let mut it = self.atoms();
        match (it.next(), it.next()) {
            (Some(a), None) => Some(a),
            _ => None,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.0.union_with(&other.0);
        out
    }

    pub fn union_with(&mut self, other: &Self) {
        self.0.union_with(&other.0);
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.0.intersect_with(&other.0);
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.0.difference_with(&other.0);
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.atoms().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_round_trip() {
        let s = AtomSet::from_mask(5, 0b10110);
        assert_eq!(s.atoms().collect::<Vec<_>>(), vec![1, 2, 4]);
        assert_eq!(s.to_mask(), Some(0b10110));
        assert_eq!(s.to_string(), "{1,2,4}");
    }

    #[test]
    fn only_requires_exactly_one() {
        assert_eq!(AtomSet::singleton(4, 3).only(), Some(3));
        assert_eq!(AtomSet::empty(4).only(), None);
        assert_eq!(AtomSet::full(4).only(), None);
    }
}
