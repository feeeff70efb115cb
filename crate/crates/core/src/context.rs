//! Binary extraction contexts and the Galois operators over them.
//!
//! Items carry external integer labels; internally they are renumbered
//! `0..n` by ascending label, and that numbering fixes the lexicographic
//! order used everywhere downstream. Objects are indexed `0..m` in input
//! order (their external id is the 1-based position).

use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::itemset::Itemset;
use crate::ratio::Ratio;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransactionContext {
    labels: Vec<u32>,
    rows: Vec<FixedBitSet>,
    columns: Vec<FixedBitSet>,
}

impl TransactionContext {
    /// Builds a context from one label list per object. Duplicate labels
    /// within an object collapse.
    pub fn from_transactions<T, I>(transactions: T) -> Self
    where
        T: IntoIterator<Item = I>,
        I: IntoIterator<Item = u32>,
    {
        let objects: Vec<Vec<u32>> = transactions
            .into_iter()
            .map(|t| {
                let mut v: Vec<u32> = t.into_iter().collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        let mut labels: Vec<u32> = objects.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();

        let n_items = labels.len();
        let n_objects = objects.len();
        let mut rows = Vec::with_capacity(n_objects);
        let mut columns = alloc::vec![FixedBitSet::with_capacity(n_objects); n_items];
        for (o, obj) in objects.iter().enumerate() {
            let mut row = FixedBitSet::with_capacity(n_items);
            for label in obj {
                let id = labels.binary_search(label).expect("label collected above");
                row.insert(id);
                columns[id].insert(o);
            }
            rows.push(row);
        }
        TransactionContext { labels, rows, columns }
    }

    /// The context with `n` items and `n + 1` objects in which object `k`
    /// (1-based, `k <= n`) lacks exactly item `k` and the last object holds
    /// every item. Every itemset is closed in it, so the number of closed
    /// itemsets reaches `2^n`. Labels are `1..=n`.
    pub fn worst_case(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyWorstCase);
        }
        let mut objects: Vec<Vec<u32>> = (1..=n).map(|k| (1..=n).filter(|&i| i != k).collect()).collect();
        objects.push((1..=n).collect());
        Ok(Self::from_transactions(objects))
    }

    pub fn num_objects(&self) -> usize {
        self.rows.len()
    }

    pub fn num_items(&self) -> usize {
        self.labels.len()
    }

    /// External labels indexed by dense id.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, id: u32) -> Option<u32> {
        self.labels.get(id as usize).copied()
    }

    pub fn id_of(&self, label: u32) -> Option<u32> {
        self.labels.binary_search(&label).ok().map(|i| i as u32)
    }

    /// Translates labels to a dense-id itemset; unknown labels are an error.
    pub fn itemset_from_labels(&self, labels: &[u32]) -> Result<Itemset> {
        labels
            .iter()
            .map(|&l| self.id_of(l).ok_or(Error::UnknownItem(l)))
            .collect::<Result<Vec<_>>>()
            .map(Itemset::new)
    }

    pub fn labels_of(&self, s: &Itemset) -> Vec<u32> {
        s.iter().map(|i| self.labels[i as usize]).collect()
    }

    /// Items of object `o` (0-based) as a bitmap over dense ids.
    pub fn row(&self, o: usize) -> Option<&FixedBitSet> {
        self.rows.get(o)
    }

    /// Objects containing item `id`.
    pub fn column(&self, id: u32) -> Option<&FixedBitSet> {
        self.columns.get(id as usize)
    }

    pub fn object_items(&self, o: usize) -> Option<Itemset> {
        self.rows
            .get(o)
            .map(|r| Itemset::from_sorted(r.ones().map(|i| i as u32).collect()))
    }

    fn check(&self, s: &Itemset) -> Result<()> {
        match s.iter().find(|&i| i as usize >= self.labels.len()) {
            Some(bad) => Err(Error::UnknownItem(bad)),
            None => Ok(()),
        }
    }

    /// Absolute support: the number of objects containing every item of `s`.
    pub fn support(&self, s: &Itemset) -> Result<u32> {
        self.check(s)?;
        Ok(self.support_unchecked(s))
    }

    pub(crate) fn support_unchecked(&self, s: &Itemset) -> u32 {
        match s.items() {
            [] => self.rows.len() as u32,
            [a] => self.columns[*a as usize].count_ones(..) as u32,
            [a, b] => self.columns[*a as usize].intersection_count(&self.columns[*b as usize]) as u32,
            [a, rest @ .., last] => {
                let mut acc = self.columns[*a as usize].clone();
                for &i in rest {
                    acc.intersect_with(&self.columns[i as usize]);
                }
                acc.intersection_count(&self.columns[*last as usize]) as u32
            }
        }
    }

    /// Ψ: the objects containing every item of `s`.
    pub fn galois_psi(&self, s: &Itemset) -> Result<FixedBitSet> {
        self.check(s)?;
        let mut acc = full(self.rows.len());
        for i in s.iter() {
            acc.intersect_with(&self.columns[i as usize]);
        }
        Ok(acc)
    }

    /// Φ: the items shared by every listed object (every item for no object).
    pub fn galois_phi<I: IntoIterator<Item = usize>>(&self, objects: I) -> Result<Itemset> {
        let mut acc = full(self.labels.len());
        for o in objects {
            let row = self.rows.get(o).ok_or(Error::UnknownObject(o))?;
            acc.intersect_with(row);
        }
        Ok(Itemset::from_sorted(acc.ones().map(|i| i as u32).collect()))
    }

    /// γ = Φ ∘ Ψ.
    pub fn closure(&self, s: &Itemset) -> Result<Itemset> {
        let extent = self.galois_psi(s)?;
        self.galois_phi(extent.ones())
    }
}

fn full(len: usize) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(len);
    b.insert_range(..);
    b
}

/// Thresholds for one mining run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MiningParams {
    minsupp: u32,
    minconf: Ratio,
}

impl MiningParams {
    /// `minsupp` is an absolute object count (at least 1). A threshold above
    /// the object count is accepted: only the bottom class survives.
    pub fn new(minsupp: u32, minconf: Ratio) -> Result<Self> {
        if minsupp == 0 {
            return Err(Error::ZeroMinsupp);
        }
        if minconf > Ratio::ONE {
            return Err(Error::InvalidMinconf {
                num: minconf.num(),
                den: minconf.den(),
            });
        }
        Ok(MiningParams { minsupp, minconf })
    }

    /// Absolute threshold from a percentage given as `num/den` percent,
    /// rounded up: `ceil(p / 100 * objects)`, never below 1.
    pub fn absolute_from_percent(percent: Ratio, objects: usize) -> u32 {
        let num = percent.num() as u128 * objects as u128;
        let den = percent.den() as u128 * 100;
        (num.div_ceil(den) as u32).max(1)
    }

    pub fn minsupp(&self) -> u32 {
        self.minsupp
    }

    pub fn minconf(&self) -> Ratio {
        self.minconf
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    // A=1 B=2 C=3 D=4 E=5
    fn running_example() -> TransactionContext {
        TransactionContext::from_transactions(vec![
            vec![1, 3, 4],
            vec![2, 3, 5],
            vec![1, 2, 3, 5],
            vec![2, 5],
            vec![1, 2, 3, 5],
        ])
    }

    fn set(ctx: &TransactionContext, labels: &[u32]) -> Itemset {
        ctx.itemset_from_labels(labels).unwrap()
    }

    #[test]
    fn supports_on_running_example() {
        let ctx = running_example();
        assert_eq!(ctx.num_objects(), 5);
        assert_eq!(ctx.num_items(), 5);
        assert_eq!(ctx.support(&set(&ctx, &[2, 5])), Ok(4));
        assert_eq!(ctx.support(&Itemset::empty()), Ok(5));
        assert_eq!(ctx.support(&set(&ctx, &[1, 2, 3])), Ok(2));
        assert_eq!(ctx.support(&set(&ctx, &[4])), Ok(1));
        assert_eq!(ctx.support(&Itemset::from([9])), Err(Error::UnknownItem(9)));
    }

    #[test]
    fn closures_on_running_example() {
        let ctx = running_example();
        assert_eq!(ctx.closure(&set(&ctx, &[2, 3])).unwrap(), set(&ctx, &[2, 3, 5]));
        assert_eq!(ctx.closure(&Itemset::empty()).unwrap(), Itemset::empty());
        assert_eq!(ctx.closure(&set(&ctx, &[1])).unwrap(), set(&ctx, &[1, 3]));
        let psi = ctx.galois_psi(&set(&ctx, &[1])).unwrap();
        assert_eq!(psi.ones().collect::<Vec<_>>(), vec![0, 2, 4]);
        assert_eq!(ctx.galois_phi([]).unwrap().len(), 5);
        assert_eq!(ctx.galois_phi([7]), Err(Error::UnknownObject(7)));
    }

    #[test]
    fn duplicate_labels_collapse() {
        let ctx = TransactionContext::from_transactions(vec![vec![7, 7, 7]]);
        assert_eq!(ctx.num_objects(), 1);
        assert_eq!(ctx.labels(), &[7]);
        assert_eq!(ctx.support(&Itemset::from([0])), Ok(1));
    }

    #[test]
    fn empty_context() {
        let ctx = TransactionContext::from_transactions(Vec::<Vec<u32>>::new());
        assert_eq!((ctx.num_objects(), ctx.num_items()), (0, 0));
        assert_eq!(ctx.support(&Itemset::empty()), Ok(0));
    }

    #[test]
    fn worst_case_shape() {
        let ctx = TransactionContext::worst_case(4).unwrap();
        assert_eq!((ctx.num_objects(), ctx.num_items()), (5, 4));
        assert_eq!(ctx.object_items(0).unwrap(), Itemset::from([1, 2, 3]));
        assert_eq!(ctx.object_items(3).unwrap(), Itemset::from([0, 1, 2]));
        assert_eq!(ctx.object_items(4).unwrap(), Itemset::from([0, 1, 2, 3]));
        assert_eq!(ctx.support(&Itemset::from([0, 1])), Ok(3));

        let one = TransactionContext::worst_case(1).unwrap();
        assert_eq!(one.object_items(0).unwrap(), Itemset::empty());
        assert_eq!(one.object_items(1).unwrap(), Itemset::from([0]));
        assert_eq!(TransactionContext::worst_case(0), Err(Error::EmptyWorstCase));
    }

    #[test]
    fn params_validation_and_percent() {
        assert_eq!(MiningParams::new(0, Ratio::ONE), Err(Error::ZeroMinsupp));
        assert!(MiningParams::new(1, Ratio::new(3, 2)).is_err());
        assert!(MiningParams::new(6, Ratio::new(1, 2)).is_ok());
        // 0.10 % of 8124 objects = 8.124 -> 9
        assert_eq!(MiningParams::absolute_from_percent(Ratio::new(1, 10), 8124), 9);
        assert_eq!(MiningParams::absolute_from_percent(Ratio::new(40, 1), 5), 2);
        assert_eq!(MiningParams::absolute_from_percent(Ratio::ZERO, 5), 1);
    }
}
