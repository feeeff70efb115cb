//! Stage 2: the lattice of minimal generators.
//!
//! Generators are inserted by decreasing support, then lexicographically.
//! Each generator `g` is compared against the successor lists of the
//! representatives of its immediate subsets. Two generators are related
//! through the support of their union, which the stage-1 trie answers:
//!
//! * same class iff `supp(x) = supp(y) = supp(x ∪ y)`;
//! * `[x]` succeeds `[y]` iff `supp(x) < supp(y)` and `supp(x) = supp(x ∪ y)`;
//! * incomparable otherwise.
//!
//! Only class representatives (the first, hence lexicographically smallest,
//! generator of each class) ever appear in successor lists. Predecessors found
//! before `g` meets its representative are buffered and attached to the
//! representative once it is known; the list where it was met and the
//! remaining subset lists are then scanned on behalf of the representative,
//! skipping lists it has already been compared against. A generator that
//! meets no representative through its subsets is finally compared with the
//! earlier representatives of equal support.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::genminers::{GenId, GeneratorRecord, InferredSupport, MinerOutput};
use crate::itemset::Itemset;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId(pub u32);

impl ClassId {
    pub const BOTTOM: ClassId = ClassId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

/// Relation between the classes of two generators `x`, `y` with
/// `supp(x) <= supp(y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    SameClass,
    XSuccessorOfY,
    Incomparable,
}

/// Compares the classes of `x` and `y` (requires `x.support <= y.support`)
/// without computing any closure.
pub fn compare_classes(miner: &MinerOutput, x: &GeneratorRecord, y: &GeneratorRecord) -> Relation {
    debug_assert!(x.support <= y.support);
    compare_raw(miner, &x.itemset, x.support, &y.itemset, y.support)
}

fn compare_raw(miner: &MinerOutput, x: &Itemset, sx: u32, y: &Itemset, sy: u32) -> Relation {
    let union = x.union(y);
    // A stored generator union is answered directly; for u ≠ x, y its support
    // is below both and the classes are incomparable.
    let su = match miner.trie.lookup(&union) {
        Some(id) => miner.support_of(id),
        None => match miner.infer_support(&union, Some(sx.min(sy))) {
            InferredSupport::Frequent(s) => s,
            InferredSupport::Infrequent | InferredSupport::BelowThreshold => return Relation::Incomparable,
        },
    };
    if sx == sy && su == sx {
        Relation::SameClass
    } else if sx < sy && su == sx {
        Relation::XSuccessorOfY
    } else {
        Relation::Incomparable
    }
}

/// A node of the lattice: one γ-equivalence class of frequent generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClass {
    /// Lexicographically smallest member.
    pub representative: GenId,
    /// All members, ascending.
    pub members: Vec<GenId>,
    pub support: u32,
    /// Immediate successor classes, ascending id.
    pub upper_covers: Vec<ClassId>,
    /// Immediate predecessor classes, ascending id.
    pub lower_covers: Vec<ClassId>,
    /// The closed itemset, set by stage 3.
    pub closure: Option<Itemset>,
}

/// Counters gathered while building the lattice.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LatticeStats {
    /// Successor lists scanned on behalf of a generator or representative.
    pub list_scans: usize,
    /// Scans avoided because the representative had already covered the list.
    pub skipped_scans: usize,
    /// Scans of a list by a comparer that had already scanned it. Always 0.
    pub repeated_scans: usize,
    /// Support comparisons between two generators.
    pub comparisons: usize,
    /// Generators placed through the closed-prefix shortcut.
    pub shortcut_generators: usize,
    /// Generators whose representative was not reachable from their subset
    /// lists and was found among the representatives of equal support.
    pub fallback_joins: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GenOrdreOptions {
    /// Generators shorter than [`MinerOutput::closed_below`] are known to be
    /// closed; connect them straight to their immediate subsets instead of
    /// scanning successor lists.
    pub closed_prefix_shortcut: bool,
}

#[derive(Clone, Debug)]
pub struct GeneratorLattice {
    /// Sorted by (support desc, representative); index 0 is the class of ∅.
    pub classes: Vec<EquivalenceClass>,
    /// Class of each generator, indexed by [`GenId`].
    pub class_of: Vec<ClassId>,
    pub stats: LatticeStats,
}

impl GeneratorLattice {
    pub fn bottom(&self) -> ClassId {
        ClassId::BOTTOM
    }

    pub fn class(&self, id: ClassId) -> &EquivalenceClass {
        &self.classes[id.index()]
    }

    pub fn class_mut(&mut self, id: ClassId) -> &mut EquivalenceClass {
        &mut self.classes[id.index()]
    }

    pub fn num_arcs(&self) -> usize {
        self.classes.iter().map(|c| c.upper_covers.len()).sum()
    }

    /// ρ(g): the representative of `g`'s class.
    pub fn find_representative(&self, g: GenId) -> Result<GenId> {
        self.class_of
            .get(g.index())
            .map(|c| self.classes[c.index()].representative)
            .ok_or(Error::UnprocessedGenerator(g.index()))
    }

    /// All cover arcs as (lower, upper) pairs.
    pub fn arcs(&self) -> Vec<(ClassId, ClassId)> {
        self.classes
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.upper_covers.iter().map(move |&u| (ClassId(i as u32), u)))
            .collect()
    }
}

/// Builds the lattice of minimal generators from stage-1 output.
pub fn gen_ordre(miner: &MinerOutput, options: GenOrdreOptions) -> GeneratorLattice {
    let mut b = Builder::new(miner, options);
    for i in 1..miner.generators.len() {
        b.insert(GenId(i as u32));
    }
    b.finish()
}

struct Builder<'a> {
    miner: &'a MinerOutput,
    options: GenOrdreOptions,
    rep: Vec<Option<GenId>>,
    succs: Vec<Vec<GenId>>,
    members: Vec<Vec<GenId>>,
    /// Per comparer: representatives whose successor list it has scanned.
    scanned: Vec<BTreeSet<GenId>>,
    /// Representatives with lists scanning still open, by support.
    reps_by_support: BTreeMap<u32, Vec<GenId>>,
    stats: LatticeStats,
}

/// Per-generator scratch state shared by all list scans of one insertion.
struct Scan {
    comparer: GenId,
    relation: BTreeMap<GenId, Relation>,
    /// Fully explored nodes: whether some successor of the node precedes `g`.
    explored: BTreeMap<GenId, bool>,
    preds: BTreeSet<GenId>,
}

enum Mode {
    /// Representative of `g` still unknown.
    Search,
    /// Representative known. A node already linked to it is covered, but
    /// its remaining siblings still have to be examined.
    Known(GenId),
}

enum Explore {
    Hit(bool),
    FoundRep(GenId),
}

impl<'a> Builder<'a> {
    fn new(miner: &'a MinerOutput, options: GenOrdreOptions) -> Self {
        let n = miner.generators.len();
        let mut rep = alloc::vec![None; n];
        let mut members = alloc::vec![Vec::new(); n];
        rep[0] = Some(GenId::EMPTY);
        members[0].push(GenId::EMPTY);
        Builder {
            miner,
            options,
            rep,
            succs: alloc::vec![Vec::new(); n],
            members,
            scanned: alloc::vec![BTreeSet::new(); n],
            reps_by_support: BTreeMap::new(),
            stats: LatticeStats::default(),
        }
    }

    fn support(&self, g: GenId) -> u32 {
        self.miner.support_of(g)
    }

    fn rep_of(&self, g: GenId) -> GenId {
        self.rep[g.index()].expect("subsets are inserted before supersets")
    }

    fn add_arc(&mut self, lower: GenId, upper: GenId) {
        debug_assert_eq!(self.rep[lower.index()], Some(lower));
        debug_assert_eq!(self.rep[upper.index()], Some(upper));
        let list = &mut self.succs[lower.index()];
        if !list.contains(&upper) {
            list.push(upper);
        }
    }

    fn insert(&mut self, g: GenId) {
        let miner = self.miner;
        let record = miner.generator(g);
        let n = record.support;
        let subsets = &record.immediate_subsets;

        if self.options.closed_prefix_shortcut && (record.itemset.len() as u32) < miner.closed_below {
            self.stats.shortcut_generators += 1;
            self.rep[g.index()] = Some(g);
            self.members[g.index()].push(g);
            for &s in subsets {
                let lower = self.rep_of(s);
                self.add_arc(lower, g);
            }
            return;
        }

        let mut scan = Scan {
            comparer: g,
            relation: BTreeMap::new(),
            explored: BTreeMap::new(),
            preds: BTreeSet::new(),
        };

        // Scan subset lists until g meets its representative.
        let mut found = None;
        let mut resume = subsets.len();
        for (idx, &s) in subsets.iter().enumerate() {
            let owner = self.rep_of(s);
            if !self.begin_scan(g, owner) {
                continue;
            }
            match self.scan_list(&mut scan, owner, n, &Mode::Search) {
                Explore::FoundRep(r) => {
                    // The rest of this list may still hold predecessors, so
                    // it is rescanned for r below.
                    found = Some(r);
                    resume = idx;
                    break;
                }
                Explore::Hit(_) => {}
            }
        }

        // Two generators of one class need not share a path through their
        // subsets' lists (e.g. {0,1,3} and {0,2,4} with every subset in a
        // distinct class), so an unmatched g is also checked against the
        // earlier representatives of its support.
        if found.is_none() {
            let peers = self.reps_by_support.get(&n).cloned().unwrap_or_default();
            found = peers
                .into_iter()
                .find(|&z| self.relation(&mut scan, z) == Relation::SameClass);
            if let Some(r) = found {
                // Every list of g was scanned to the end on r's behalf.
                self.stats.fallback_joins += 1;
                let seen = core::mem::take(&mut self.scanned[g.index()]);
                self.scanned[r.index()].extend(seen);
            }
        }

        let r = match found {
            Some(r) => {
                self.members[r.index()].push(g);
                r
            }
            None => {
                self.members[g.index()].push(g);
                self.reps_by_support.entry(n).or_default().push(g);
                g
            }
        };
        self.rep[g.index()] = Some(r);
        for p in core::mem::take(&mut scan.preds) {
            self.add_arc(p, r);
        }

        // Remaining subset lists, on behalf of the representative.
        scan.comparer = r;
        for &s in &subsets[resume..] {
            let owner = self.rep_of(s);
            if self.scanned[r.index()].contains(&owner) {
                self.stats.skipped_scans += 1;
                continue;
            }
            self.begin_scan(r, owner);
            self.scan_list(&mut scan, owner, n, &Mode::Known(r));
            for p in core::mem::take(&mut scan.preds) {
                self.add_arc(p, r);
            }
        }
    }

    /// Records that `comparer` scans `owner`'s list; false if it already did.
    fn begin_scan(&mut self, comparer: GenId, owner: GenId) -> bool {
        if self.scanned[comparer.index()].insert(owner) {
            self.stats.list_scans += 1;
            true
        } else {
            self.stats.repeated_scans += 1;
            false
        }
    }

    /// Collects into `scan.preds` the members of φ reachable from `owner`:
    /// `owner` itself or any of its transitive successors that `g` succeeds
    /// with no successor of theirs also preceding `g`.
    fn scan_list(&mut self, scan: &mut Scan, owner: GenId, n: u32, mode: &Mode) -> Explore {
        match self.explore(scan, owner, n, mode) {
            Explore::Hit(false) => {
                scan.preds.insert(owner);
                Explore::Hit(false)
            }
            other => other,
        }
    }

    fn explore(&mut self, scan: &mut Scan, node: GenId, n: u32, mode: &Mode) -> Explore {
        if let Some(&hit) = scan.explored.get(&node) {
            return Explore::Hit(hit);
        }
        let mut hit = false;
        let mut i = 0;
        while i < self.succs[node.index()].len() {
            let h = self.succs[node.index()][i];
            i += 1;
            let sh = self.support(h);
            if sh > n {
                if self.relation(scan, h) != Relation::XSuccessorOfY {
                    continue;
                }
                hit = true;
                match self.explore(scan, h, n, mode) {
                    Explore::Hit(true) => {}
                    Explore::Hit(false) => {
                        scan.preds.insert(h);
                    }
                    stop => return stop,
                }
            } else if sh == n {
                match *mode {
                    Mode::Search => {
                        if self.relation(scan, h) == Relation::SameClass {
                            return Explore::FoundRep(h);
                        }
                    }
                    Mode::Known(r) => {
                        if h == r {
                            hit = true;
                        }
                    }
                }
            }
        }
        scan.explored.insert(node, hit);
        Explore::Hit(hit)
    }

    fn relation(&mut self, scan: &mut Scan, h: GenId) -> Relation {
        if let Some(&rel) = scan.relation.get(&h) {
            return rel;
        }
        self.stats.comparisons += 1;
        let x = self.miner.generator(scan.comparer);
        let y = self.miner.generator(h);
        let rel = compare_raw(self.miner, &x.itemset, x.support, &y.itemset, y.support);
        scan.relation.insert(h, rel);
        rel
    }

    fn finish(self) -> GeneratorLattice {
        let n = self.rep.len();
        // Representatives in GenId order are already sorted by
        // (support desc, lexicographic).
        let mut class_index = alloc::vec![None; n];
        let mut reps = Vec::new();
        for (g, slot) in class_index.iter_mut().enumerate() {
            if self.rep[g] == Some(GenId(g as u32)) {
                *slot = Some(ClassId(reps.len() as u32));
                reps.push(GenId(g as u32));
            }
        }
        let class_of: Vec<ClassId> = self
            .rep
            .iter()
            .map(|r| class_index[r.expect("every generator inserted").index()].expect("rep is a class"))
            .collect();

        let mut classes: Vec<EquivalenceClass> = reps
            .iter()
            .map(|&r| {
                let mut members = self.members[r.index()].clone();
                members.sort();
                let mut upper: Vec<ClassId> = self.succs[r.index()]
                    .iter()
                    .map(|s| class_index[s.index()].expect("lists hold representatives"))
                    .collect();
                upper.sort();
                upper.dedup();
                EquivalenceClass {
                    representative: r,
                    members,
                    support: self.miner.support_of(r),
                    upper_covers: upper,
                    lower_covers: Vec::new(),
                    closure: None,
                }
            })
            .collect();
        for i in 0..classes.len() {
            for u in classes[i].upper_covers.clone() {
                classes[u.index()].lower_covers.push(ClassId(i as u32));
            }
        }
        for c in &mut classes {
            c.lower_covers.sort();
        }
        GeneratorLattice {
            classes,
            class_of,
            stats: self.stats,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::{MiningParams, TransactionContext};
    use crate::genminers::gen_gms;
    use crate::ratio::Ratio;
    use alloc::vec;

    const A: u32 = 0;
    const B: u32 = 1;
    const C: u32 = 2;
    const E: u32 = 4;

    fn running_example() -> MinerOutput {
        let ctx = TransactionContext::from_transactions(vec![
            vec![1, 3, 4],
            vec![2, 3, 5],
            vec![1, 2, 3, 5],
            vec![2, 5],
            vec![1, 2, 3, 5],
        ]);
        gen_gms(&ctx, &MiningParams::new(2, Ratio::new(1, 2)).unwrap())
    }

    fn rec<'a>(m: &'a MinerOutput, items: &[u32]) -> &'a GeneratorRecord {
        m.generator(m.trie.lookup(&Itemset::from(items)).unwrap())
    }

    #[test]
    fn compare_on_running_example() {
        let m = running_example();
        assert_eq!(compare_classes(&m, rec(&m, &[E]), rec(&m, &[B])), Relation::SameClass);
        assert_eq!(
            compare_classes(&m, rec(&m, &[A]), rec(&m, &[C])),
            Relation::XSuccessorOfY
        );
        assert_eq!(
            compare_classes(&m, rec(&m, &[C, E]), rec(&m, &[A])),
            Relation::Incomparable
        );
        assert_eq!(
            compare_classes(&m, rec(&m, &[C]), rec(&m, &[B])),
            Relation::Incomparable
        );
    }

    #[test]
    fn running_example_lattice() {
        let m = running_example();
        let lat = gen_ordre(&m, GenOrdreOptions::default());
        let names: Vec<Vec<Itemset>> = lat
            .classes
            .iter()
            .map(|c| c.members.iter().map(|&g| m.generator(g).itemset.clone()).collect())
            .collect();
        assert_eq!(
            names,
            vec![
                vec![Itemset::empty()],
                vec![Itemset::from([B]), Itemset::from([E])],
                vec![Itemset::from([C])],
                vec![Itemset::from([A])],
                vec![Itemset::from([B, C]), Itemset::from([C, E])],
                vec![Itemset::from([A, B]), Itemset::from([A, E])],
            ]
        );
        let arcs: Vec<(u32, u32)> = lat.arcs().iter().map(|(a, b)| (a.0, b.0)).collect();
        // ∅→B, ∅→C, B→BC, C→A, C→BC, A→AB, BC→AB
        assert_eq!(arcs, vec![(0, 1), (0, 2), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)]);
        assert_eq!(lat.stats.repeated_scans, 0);

        let e = m.trie.lookup(&Itemset::from([E])).unwrap();
        let ce = m.trie.lookup(&Itemset::from([C, E])).unwrap();
        let bc = m.trie.lookup(&Itemset::from([B, C])).unwrap();
        assert_eq!(
            m.generator(lat.find_representative(e).unwrap()).itemset,
            Itemset::from([B])
        );
        assert_eq!(lat.find_representative(ce), Ok(bc));
        assert_eq!(lat.find_representative(GenId::EMPTY), Ok(GenId::EMPTY));
        assert_eq!(lat.find_representative(GenId(99)), Err(Error::UnprocessedGenerator(99)));
    }

    #[test]
    fn single_item_lattice() {
        let ctx = TransactionContext::from_transactions(vec![vec![1], vec![]]);
        let m = gen_gms(&ctx, &MiningParams::new(1, Ratio::ONE).unwrap());
        let lat = gen_ordre(&m, GenOrdreOptions::default());
        assert_eq!(lat.classes.len(), 2);
        assert_eq!(lat.arcs(), vec![(ClassId(0), ClassId(1))]);
    }

    #[test]
    fn worst_case_is_boolean_lattice() {
        let ctx = TransactionContext::worst_case(4).unwrap();
        let m = gen_gms(&ctx, &MiningParams::new(1, Ratio::ZERO).unwrap());
        for options in [
            GenOrdreOptions::default(),
            GenOrdreOptions {
                closed_prefix_shortcut: true,
            },
        ] {
            let lat = gen_ordre(&m, options);
            assert_eq!(lat.classes.len(), 16);
            assert!(lat.classes.iter().all(|c| c.members.len() == 1));
            assert_eq!(lat.num_arcs(), 32);
        }
    }

    fn lattice_of(rows: vec::Vec<vec::Vec<u32>>) -> (MinerOutput, GeneratorLattice) {
        let ctx = TransactionContext::from_transactions(rows);
        let m = gen_gms(&ctx, &MiningParams::new(1, Ratio::ONE).unwrap());
        let lat = gen_ordre(&m, GenOrdreOptions::default());
        (m, lat)
    }

    #[test]
    fn class_member_unreachable_from_its_subsets() {
        // {0,1,3} and {0,2,4} share the closure {0,1,2,3,4} but no subset
        // list of the latter leads to the former.
        let (m, lat) = lattice_of(vec![
            vec![2, 4],
            vec![0, 1],
            vec![0, 2],
            vec![1, 3],
            vec![0, 4],
            vec![],
            vec![0, 3],
            vec![1],
            vec![2, 4],
            vec![0, 1, 2, 3, 4],
            vec![0, 2],
        ]);
        let a = m.trie.lookup(&Itemset::from([0, 1, 3])).unwrap();
        let b = m.trie.lookup(&Itemset::from([0, 2, 4])).unwrap();
        assert_eq!(lat.class_of[a.index()], lat.class_of[b.index()]);
        assert_eq!(lat.stats.fallback_joins, 1);
        assert_eq!(lat.classes.len(), 13);
        assert_eq!(lat.num_arcs(), 23);
    }

    #[test]
    fn predecessor_after_representative_in_list() {
        // {1,2} precedes the class of {0,4,5} but sits behind a node that
        // leads to that class in both lists scanned for {1,5} and {2,4}.
        let (m, lat) = lattice_of(vec![
            vec![0, 1, 2, 4, 5],
            vec![5],
            vec![0, 2, 5],
            vec![0, 1, 3, 4],
            vec![0, 1, 2],
            vec![0, 2],
            vec![3, 4, 5],
            vec![5],
        ]);
        let lower = lat.class_of[m.trie.lookup(&Itemset::from([1, 2])).unwrap().index()];
        let upper = lat.class_of[m.trie.lookup(&Itemset::from([0, 4, 5])).unwrap().index()];
        assert!(lat.class(lower).upper_covers.contains(&upper));
        assert_eq!(lat.num_arcs(), 22);
    }
}
