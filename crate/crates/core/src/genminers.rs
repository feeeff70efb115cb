//! Stage 1: level-wise extraction of the frequent minimal generators.
//!
//! Candidates of size `k + 1` are prefix joins of two size-`k` generators.
//! A candidate survives only if every immediate subset is a stored frequent
//! generator (the frequent minimal generators form an order ideal) and if
//! its real support is strictly below the minimum support of those subsets.
//! Surviving infrequent candidates form the negative border, which together
//! with the frequent generators answers any support query without touching
//! the context again.

use alloc::vec::Vec;
use core::fmt;

use crate::context::{MiningParams, TransactionContext};
use crate::itemset::Itemset;

/// Index of a frequent generator in [`MinerOutput::generators`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub u32);

impl GenId {
    pub const EMPTY: GenId = GenId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

/// A frequent minimal generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRecord {
    pub itemset: Itemset,
    pub support: u32,
    /// Links to the `k - 1` sized subsets, in ascending lexicographic order.
    pub immediate_subsets: Vec<GenId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Frequent { id: GenId, support: u32 },
    Border { support: u32 },
}

#[derive(Clone, Debug, Default)]
struct Node {
    children: Vec<(u32, u32)>,
    slot: Option<Slot>,
}

/// Lexicographic prefix tree holding the frequent generators and the
/// negative border.
///
/// Because the frequent generators are downward closed, every node on the
/// path to a stored itemset is itself a stored frequent generator.
#[derive(Clone, Debug)]
pub struct GeneratorTrie {
    nodes: Vec<Node>,
}

/// Answer to a support query against the trie.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InferredSupport {
    /// Some border itemset is contained in the query.
    Infrequent,
    Frequent(u32),
    /// A contained generator has support below the requested threshold;
    /// the query's support (if frequent) is lower still.
    BelowThreshold,
}

impl GeneratorTrie {
    fn new(empty_support: u32) -> Self {
        GeneratorTrie {
            nodes: alloc::vec![Node {
                children: Vec::new(),
                slot: Some(Slot::Frequent {
                    id: GenId::EMPTY,
                    support: empty_support,
                }),
            }],
        }
    }

    fn child(&self, node: u32, item: u32) -> Option<u32> {
        let ch = &self.nodes[node as usize].children;
        ch.binary_search_by_key(&item, |&(i, _)| i).ok().map(|p| ch[p].1)
    }

    fn insert(&mut self, s: &Itemset, slot: Slot) {
        let mut node = 0u32;
        for item in s.iter() {
            node = match self.child(node, item) {
                Some(c) => c,
                None => {
                    let fresh = self.nodes.len() as u32;
                    self.nodes.push(Node::default());
                    let ch = &mut self.nodes[node as usize].children;
                    let pos = ch.partition_point(|&(i, _)| i < item);
                    ch.insert(pos, (item, fresh));
                    fresh
                }
            };
        }
        self.nodes[node as usize].slot = Some(slot);
    }

    fn find(&self, s: &Itemset) -> Option<Slot> {
        let mut node = 0u32;
        for item in s.iter() {
            node = self.child(node, item)?;
        }
        self.nodes[node as usize].slot
    }

    /// The id of `s` if it is a stored frequent generator.
    pub fn lookup(&self, s: &Itemset) -> Option<GenId> {
        match self.find(s) {
            Some(Slot::Frequent { id, .. }) => Some(id),
            _ => None,
        }
    }

    /// Support of `s` if it is stored, frequent or border.
    pub fn stored_support(&self, s: &Itemset) -> Option<u32> {
        match self.find(s)? {
            Slot::Frequent { support, .. } | Slot::Border { support } => Some(support),
        }
    }

    pub fn is_border(&self, s: &Itemset) -> bool {
        matches!(self.find(s), Some(Slot::Border { .. }))
    }

    /// Every stored itemset with its support and whether it is frequent, in
    /// depth-first (lexicographic) order.
    pub fn entries(&self) -> Vec<(Itemset, u32, bool)> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect(0, &mut path, &mut out);
        out
    }

    fn collect(&self, node: u32, path: &mut Vec<u32>, out: &mut Vec<(Itemset, u32, bool)>) {
        let n = &self.nodes[node as usize];
        match n.slot {
            Some(Slot::Frequent { support, .. }) => out.push((Itemset::from_sorted(path.clone()), support, true)),
            Some(Slot::Border { support }) => out.push((Itemset::from_sorted(path.clone()), support, false)),
            None => {}
        }
        for &(item, child) in &n.children {
            path.push(item);
            self.collect(child, path, out);
            path.pop();
        }
    }

    /// Support of `s` derived from the stored generators: infrequent iff a
    /// border itemset is a subset of `s`, otherwise the minimum support over
    /// the generator subsets of `s`.
    ///
    /// Items of `s` that appear nowhere in the trie (full-support items) are
    /// skipped. With `threshold`, the walk stops as soon as a contained
    /// generator below it is seen.
    pub fn infer_support(&self, s: &Itemset, threshold: Option<u32>) -> InferredSupport {
        let mut min = match self.nodes[0].slot {
            Some(Slot::Frequent { support, .. }) => support,
            _ => unreachable!("root always holds the empty generator"),
        };
        match self.walk(0, s.items(), threshold, &mut min) {
            Walk::Done => InferredSupport::Frequent(min),
            Walk::Infrequent => InferredSupport::Infrequent,
            Walk::Below => InferredSupport::BelowThreshold,
        }
    }

    fn walk(&self, node: u32, items: &[u32], threshold: Option<u32>, min: &mut u32) -> Walk {
        for (j, &item) in items.iter().enumerate() {
            let Some(child) = self.child(node, item) else {
                continue;
            };
            match self.nodes[child as usize].slot {
                Some(Slot::Border { .. }) => return Walk::Infrequent,
                Some(Slot::Frequent { support, .. }) => {
                    *min = (*min).min(support);
                    if threshold.is_some_and(|t| support < t) {
                        return Walk::Below;
                    }
                }
                None => {}
            }
            match self.walk(child, &items[j + 1..], threshold, min) {
                Walk::Done => {}
                stop => return stop,
            }
        }
        Walk::Done
    }

    fn remap(&mut self, map: &[GenId]) {
        for n in &mut self.nodes {
            if let Some(Slot::Frequent { id, .. }) = &mut n.slot {
                *id = map[id.index()];
            }
        }
    }
}

enum Walk {
    Done,
    Infrequent,
    Below,
}

/// Result of stage 1.
#[derive(Clone, Debug)]
pub struct MinerOutput {
    /// Frequent minimal generators sorted by support descending, then
    /// lexicographically. `GenId(i)` indexes this vector; index 0 is ∅.
    pub generators: Vec<GeneratorRecord>,
    /// Infrequent minimal generators (negative border), lexicographic.
    pub border: Vec<(Itemset, u32)>,
    /// γ(∅): the items present in every object.
    pub empty_closure: Itemset,
    pub trie: GeneratorTrie,
    pub num_objects: u32,
    /// Every frequent generator with fewer items than this is closed.
    /// `u32::MAX` when no generator was seen to be non-closed.
    pub closed_below: u32,
}

impl MinerOutput {
    pub fn gmf_sorted(&self) -> &[GeneratorRecord] {
        &self.generators
    }

    pub fn generator(&self, id: GenId) -> &GeneratorRecord {
        &self.generators[id.index()]
    }

    pub fn support_of(&self, id: GenId) -> u32 {
        self.generators[id.index()].support
    }

    /// Support inference with full-support items ignored.
    pub fn infer_support(&self, s: &Itemset, threshold: Option<u32>) -> InferredSupport {
        self.trie.infer_support(s, threshold)
    }
}

/// One size-`k` generator fed to [`candidate_step`].
#[derive(Clone, Debug)]
pub struct LevelEntry {
    pub itemset: Itemset,
    pub support: u32,
    pub id: GenId,
}

/// A size-`k + 1` candidate that survived pruning and is a minimal generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub itemset: Itemset,
    pub support: u32,
    pub immediate_subsets: Vec<GenId>,
}

#[derive(Clone, Debug, Default)]
pub struct StepOutput {
    pub frequent: Vec<Candidate>,
    pub border: Vec<(Itemset, u32)>,
    /// Candidates whose real support equalled their estimated support.
    pub non_minimal: Vec<Itemset>,
    /// Candidates dropped because an immediate subset is not a frequent
    /// generator.
    pub pruned: usize,
}

/// Builds and counts the size-`k + 1` candidates from the size-`k`
/// generators in `level` (lexicographically sorted, all already in `trie`).
pub fn candidate_step(
    ctx: &TransactionContext,
    trie: &GeneratorTrie,
    level: &[LevelEntry],
    minsupp: u32,
) -> StepOutput {
    let mut out = StepOutput::default();
    let Some(first) = level.first() else {
        return out;
    };
    let k = first.itemset.len();
    debug_assert!(level.windows(2).all(|w| w[0].itemset < w[1].itemset));

    let mut start = 0;
    while start < level.len() {
        let prefix = &level[start].itemset.items()[..k - 1];
        let mut end = start + 1;
        while end < level.len() && &level[end].itemset.items()[..k - 1] == prefix {
            end += 1;
        }
        for a in start..end {
            for b in a + 1..end {
                let last = level[b].itemset.last().expect("k >= 1");
                let cand = level[a].itemset.extended(last);
                // Order-ideal check and estimated support in one pass.
                let mut estimated = ctx.num_objects() as u32;
                let mut subsets = Vec::with_capacity(k + 1);
                let mut ideal = true;
                for sub in cand.immediate_subsets() {
                    match trie.find(&sub) {
                        Some(Slot::Frequent { id, support }) => {
                            estimated = estimated.min(support);
                            subsets.push(id);
                        }
                        _ => {
                            ideal = false;
                            break;
                        }
                    }
                }
                if !ideal {
                    out.pruned += 1;
                    continue;
                }
                let support = ctx.support_unchecked(&cand);
                if support == estimated {
                    out.non_minimal.push(cand);
                } else if support >= minsupp {
                    out.frequent.push(Candidate {
                        itemset: cand,
                        support,
                        immediate_subsets: subsets,
                    });
                } else {
                    out.border.push((cand, support));
                }
            }
        }
        start = end;
    }
    out
}

/// Extracts the frequent minimal generators, the negative border and γ(∅).
pub fn gen_gms(ctx: &TransactionContext, params: &MiningParams) -> MinerOutput {
    let n_obj = ctx.num_objects() as u32;
    let minsupp = params.minsupp();
    let mut trie = GeneratorTrie::new(n_obj);
    // Provisional ids in discovery order; remapped to sorted order at the end.
    let mut records = alloc::vec![GeneratorRecord {
        itemset: Itemset::empty(),
        support: n_obj,
        immediate_subsets: Vec::new(),
    }];
    let mut border = Vec::new();
    let mut empty_closure = Vec::new();
    let mut closed_below = u32::MAX;

    let mut level = Vec::new();
    for item in 0..ctx.num_items() as u32 {
        let s = Itemset::singleton(item);
        let support = ctx.support_unchecked(&s);
        if support == n_obj {
            empty_closure.push(item);
        } else if support >= minsupp {
            let id = GenId(records.len() as u32);
            trie.insert(&s, Slot::Frequent { id, support });
            records.push(GeneratorRecord {
                itemset: s.clone(),
                support,
                immediate_subsets: alloc::vec![GenId::EMPTY],
            });
            level.push(LevelEntry {
                itemset: s,
                support,
                id,
            });
        } else {
            trie.insert(&s, Slot::Border { support });
            border.push((s, support));
        }
    }
    if !empty_closure.is_empty() {
        closed_below = 0;
    }

    let mut k = 1;
    while !level.is_empty() {
        let step = candidate_step(ctx, &trie, &level, minsupp);
        if !step.non_minimal.is_empty() {
            closed_below = closed_below.min(k);
        }
        for (s, support) in step.border {
            trie.insert(&s, Slot::Border { support });
            border.push((s, support));
        }
        let mut next = Vec::with_capacity(step.frequent.len());
        for c in step.frequent {
            let id = GenId(records.len() as u32);
            trie.insert(&c.itemset, Slot::Frequent { id, support: c.support });
            next.push(LevelEntry {
                itemset: c.itemset.clone(),
                support: c.support,
                id,
            });
            records.push(GeneratorRecord {
                itemset: c.itemset,
                support: c.support,
                immediate_subsets: c.immediate_subsets,
            });
        }
        level = next;
        k += 1;
    }

    // Sort by (support desc, itemset asc) and renumber.
    let mut order: Vec<u32> = (0..records.len() as u32).collect();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (&records[a as usize], &records[b as usize]);
        rb.support.cmp(&ra.support).then_with(|| ra.itemset.cmp(&rb.itemset))
    });
    let mut map = alloc::vec![GenId(0); records.len()];
    for (new, &old) in order.iter().enumerate() {
        map[old as usize] = GenId(new as u32);
    }
    let mut slots: Vec<Option<GeneratorRecord>> = records.into_iter().map(Some).collect();
    let generators: Vec<GeneratorRecord> = order
        .iter()
        .map(|&old| {
            let mut r = slots[old as usize].take().expect("each record moved once");
            for s in &mut r.immediate_subsets {
                *s = map[s.index()];
            }
            r
        })
        .collect();
    trie.remap(&map);
    border.sort();

    MinerOutput {
        generators,
        border,
        empty_closure: Itemset::from_sorted(empty_closure),
        trie,
        num_objects: n_obj,
        closed_below,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::Ratio;
    use alloc::vec;

    fn running_example() -> TransactionContext {
        TransactionContext::from_transactions(vec![
            vec![1, 3, 4],
            vec![2, 3, 5],
            vec![1, 2, 3, 5],
            vec![2, 5],
            vec![1, 2, 3, 5],
        ])
    }

    // Dense ids: A=0 B=1 C=2 D=3 E=4.
    const A: u32 = 0;
    const B: u32 = 1;
    const C: u32 = 2;
    const D: u32 = 3;
    const E: u32 = 4;

    fn params(minsupp: u32) -> MiningParams {
        MiningParams::new(minsupp, Ratio::new(1, 2)).unwrap()
    }

    #[test]
    fn running_example_generators() {
        let out = gen_gms(&running_example(), &params(2));
        let got: Vec<(Itemset, u32)> = out.generators.iter().map(|g| (g.itemset.clone(), g.support)).collect();
        let want = vec![
            (Itemset::empty(), 5),
            (Itemset::from([B]), 4),
            (Itemset::from([C]), 4),
            (Itemset::from([E]), 4),
            (Itemset::from([A]), 3),
            (Itemset::from([B, C]), 3),
            (Itemset::from([C, E]), 3),
            (Itemset::from([A, B]), 2),
            (Itemset::from([A, E]), 2),
        ];
        assert_eq!(got, want);
        assert_eq!(out.border, vec![(Itemset::from([D]), 1)]);
        assert!(out.empty_closure.is_empty());
        // AB links to A and B.
        let ab = out.trie.lookup(&Itemset::from([A, B])).unwrap();
        let subs: Vec<_> = out
            .generator(ab)
            .immediate_subsets
            .iter()
            .map(|&s| out.generator(s).itemset.clone())
            .collect();
        assert_eq!(subs, vec![Itemset::from([A]), Itemset::from([B])]);
    }

    #[test]
    fn full_support_items_go_to_empty_closure() {
        let ctx = TransactionContext::from_transactions(vec![vec![1, 9], vec![2, 9], vec![9]]);
        let out = gen_gms(&ctx, &params(1));
        let x = ctx.id_of(9).unwrap();
        assert_eq!(out.empty_closure, Itemset::singleton(x));
        assert!(out.generators.iter().all(|g| !g.itemset.contains(x)));
        assert_eq!(out.closed_below, 0);
    }

    #[test]
    fn candidate_step_on_singletons() {
        let ctx = running_example();
        let out = gen_gms(&ctx, &params(2));
        let level: Vec<LevelEntry> = [A, B, C, E]
            .iter()
            .map(|&i| {
                let s = Itemset::singleton(i);
                LevelEntry {
                    id: out.trie.lookup(&s).unwrap(),
                    support: ctx.support(&s).unwrap(),
                    itemset: s,
                }
            })
            .collect();
        let step = candidate_step(&ctx, &out.trie, &level, 2);
        assert!(step.non_minimal.contains(&Itemset::from([B, E])));
        assert!(step.non_minimal.contains(&Itemset::from([A, C])));
        let freq: Vec<_> = step.frequent.iter().map(|c| (c.itemset.clone(), c.support)).collect();
        assert!(freq.contains(&(Itemset::from([A, B]), 2)));
        assert!(freq.contains(&(Itemset::from([A, E]), 2)));
        assert_eq!(freq.len(), 4);

        let single = [LevelEntry {
            itemset: Itemset::singleton(A),
            support: 3,
            id: GenId(4),
        }];
        let step = candidate_step(&ctx, &out.trie, &single, 2);
        assert!(step.frequent.is_empty() && step.border.is_empty() && step.non_minimal.is_empty());
    }

    #[test]
    fn infer_support_on_running_example() {
        let out = gen_gms(&running_example(), &params(2));
        assert_eq!(
            out.infer_support(&Itemset::from([B, E]), None),
            InferredSupport::Frequent(4)
        );
        assert_eq!(
            out.infer_support(&Itemset::from([A, C, D]), None),
            InferredSupport::Infrequent
        );
        assert_eq!(
            out.infer_support(&Itemset::from([A, B, C]), None),
            InferredSupport::Frequent(2)
        );
        assert_eq!(out.infer_support(&Itemset::empty(), None), InferredSupport::Frequent(5));
        assert_eq!(
            out.infer_support(&Itemset::from([A, C, E]), Some(3)),
            InferredSupport::BelowThreshold
        );
    }

    #[test]
    fn worst_case_all_generators() {
        let ctx = TransactionContext::worst_case(4).unwrap();
        let out = gen_gms(&ctx, &params(1));
        assert_eq!(out.generators.len(), 16);
        assert!(out.border.is_empty());
        assert_eq!(out.closed_below, u32::MAX);
        for g in &out.generators {
            assert_eq!(g.support, 5 - g.itemset.len() as u32);
        }
    }

    #[test]
    fn threshold_above_object_count_keeps_only_empty() {
        let out = gen_gms(&running_example(), &params(6));
        assert_eq!(out.generators.len(), 1);
        assert_eq!(out.border.len(), 5);
    }
}
