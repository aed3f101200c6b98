//! Subsets of a finite carrier stored as a 128-bit mask.

use std::fmt;

/// Largest carrier size an [`ElementSet`] can address.
pub const MAX_CARRIER: usize = 128;

/// Index of an element in the carrier of some structure.
pub type Element = usize;

/// A subset of a carrier of at most [`MAX_CARRIER`] elements.
///
/// Membership is order-free; iteration always yields members by ascending
/// index, which is also the serialized order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u128);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u128) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn singleton(x: Element) -> Self {
        debug_assert!(x < MAX_CARRIER);
        ElementSet(1u128 << x)
    }

    /// The whole carrier `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_CARRIER);
        if n == MAX_CARRIER {
            ElementSet(u128::MAX)
        } else {
            ElementSet((1u128 << n) - 1)
        }
    }

    pub fn contains(self, x: Element) -> bool {
        x < MAX_CARRIER && self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: Element) {
        self.0 |= 1u128 << x;
    }

    pub fn remove(&mut self, x: Element) {
        self.0 &= !(1u128 << x);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Least member, if any.
    pub fn first(self) -> Option<Element> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// The only member of a singleton.
    pub fn single(self) -> Option<Element> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as usize)
    }

    /// Every member is `< n`.
    pub fn within(self, n: usize) -> bool {
        self.is_subset(ElementSet::full(n))
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<Element> {
        self.iter().collect()
    }
}

/// Ascending-index iterator over an [`ElementSet`].
#[derive(Clone)]
pub struct Iter(u128);

impl Iterator for Iter {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for ElementSet {
    type Item = Element;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<Element> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl<'a> FromIterator<&'a Element> for ElementSet {
    fn from_iter<I: IntoIterator<Item = &'a Element>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the ascending member lists.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl std::ops::BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl std::ops::BitOrAssign for ElementSet {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl std::ops::BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_singletons() {
        assert_eq!(ElementSet::full(0), ElementSet::EMPTY);
        assert_eq!(ElementSet::full(3).to_vec(), vec![0, 1, 2]);
        assert_eq!(ElementSet::full(128).len(), 128);
        assert_eq!(ElementSet::singleton(127).first(), Some(127));
        assert_eq!(ElementSet::singleton(5).single(), Some(5));
        assert_eq!(ElementSet::full(2).single(), None);
    }

    #[test]
    fn ordering_is_lexicographic_on_members() {
        let a: ElementSet = [0, 5].iter().collect();
        let b: ElementSet = [1].iter().collect();
        let c: ElementSet = [0].iter().collect();
        assert!(a < b);
        assert!(c < a);
    }

    proptest! {
        #[test]
        fn iteration_is_ascending_and_roundtrips(bits in any::<u128>()) {
            let s = ElementSet::from_bits(bits);
            let v = s.to_vec();
            prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(v.len(), s.len());
            prop_assert_eq!(v.iter().collect::<ElementSet>(), s);
        }
    }
}
