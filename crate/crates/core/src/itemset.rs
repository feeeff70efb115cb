//! Canonical itemsets over dense item ids.
//!
//! The derived `Ord` is the lexicographic order on the ascending word of the
//! set (a proper prefix sorts first). This is the order used to pick class
//! representatives and to sort generators within a support level.

use alloc::vec::Vec;
use core::fmt;

/// A strictly ascending, duplicate-free sequence of dense item ids.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Itemset(Vec<u32>);

impl Itemset {
    pub fn empty() -> Self {
        Itemset(Vec::new())
    }

    /// Builds an itemset from arbitrary ids, sorting and removing duplicates.
    pub fn new(mut items: Vec<u32>) -> Self {
        items.sort_unstable();
        items.dedup();
        Itemset(items)
    }

    /// Wraps an already strictly ascending vector.
    pub fn from_sorted(items: Vec<u32>) -> Self {
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]), "itemset not canonical");
        Itemset(items)
    }

    pub fn singleton(item: u32) -> Self {
        Itemset(alloc::vec![item])
    }

    pub fn items(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, item: u32) -> bool {
        self.0.binary_search(&item).is_ok()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn is_subset(&self, other: &Itemset) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut rest = other.0.iter();
        'outer: for &x in &self.0 {
            for &y in rest.by_ref() {
                if y == x {
                    continue 'outer;
                }
                if y > x {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_proper_subset(&self, other: &Itemset) -> bool {
        self.len() < other.len() && self.is_subset(other)
    }

    pub fn union(&self, other: &Itemset) -> Itemset {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Itemset(out)
    }

    pub fn difference(&self, other: &Itemset) -> Itemset {
        Itemset(self.0.iter().copied().filter(|&x| !other.contains(x)).collect())
    }

    /// The set with one more item appended at the end; `item` must exceed
    /// every current member.
    pub fn extended(&self, item: u32) -> Itemset {
        debug_assert!(self.last().is_none_or(|l| l < item));
        let mut v = Vec::with_capacity(self.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(item);
        Itemset(v)
    }

    /// The set without the element at `pos`.
    pub fn without_index(&self, pos: usize) -> Itemset {
        let mut v = self.0.clone();
        v.remove(pos);
        Itemset(v)
    }

    /// Immediate subsets (size `len - 1`) in ascending lexicographic order.
    pub fn immediate_subsets(&self) -> impl Iterator<Item = Itemset> + '_ {
        // Dropping the last element yields the smallest subset, dropping the
        // first the largest.
        (0..self.len()).rev().map(move |pos| self.without_index(pos))
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Debug for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl From<&[u32]> for Itemset {
    fn from(items: &[u32]) -> Self {
        Itemset::new(items.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for Itemset {
    fn from(items: [u32; N]) -> Self {
        Itemset::new(items.to_vec())
    }
}

impl FromIterator<u32> for Itemset {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        Itemset::new(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn canonicalizes() {
        assert_eq!(Itemset::new(vec![3, 1, 3, 2]).items(), &[1, 2, 3]);
        assert!(Itemset::new(vec![]).is_empty());
    }

    #[test]
    fn lexicographic_order_puts_prefix_first() {
        let a = Itemset::from([0]);
        let ab = Itemset::from([0, 1]);
        let b = Itemset::from([1]);
        let bc = Itemset::from([1, 2]);
        assert!(Itemset::empty() < a);
        assert!(a < ab);
        assert!(ab < b);
        assert!(b < bc);
    }

    #[test]
    fn subset_and_algebra() {
        let bce = Itemset::from([1, 2, 4]);
        assert!(Itemset::from([1, 4]).is_subset(&bce));
        assert!(!Itemset::from([0, 1]).is_subset(&bce));
        assert!(Itemset::empty().is_subset(&bce));
        assert!(!bce.is_proper_subset(&bce));
        assert_eq!(Itemset::from([1, 2]).union(&Itemset::from([2, 4])), bce);
        assert_eq!(bce.difference(&Itemset::from([2])), Itemset::from([1, 4]));
    }

    #[test]
    fn immediate_subsets_are_sorted() {
        let subs: Vec<_> = Itemset::from([0, 1, 2]).immediate_subsets().collect();
        assert_eq!(
            subs,
            vec![Itemset::from([0, 1]), Itemset::from([0, 2]), Itemset::from([1, 2])]
        );
        assert_eq!(
            Itemset::from([5]).immediate_subsets().collect::<Vec<_>>(),
            vec![Itemset::empty()]
        );
    }
}
