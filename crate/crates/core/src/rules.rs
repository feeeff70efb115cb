//! Stage 3: closed itemsets and the generic rule bases.
//!
//! The lattice is walked breadth-first from the bottom class. The closure of
//! a class is the union of its generators with the closure of any immediate
//! predecessor, so each closure is derived exactly once, from whichever
//! predecessor reaches it first. Exact rules `g ⇒ γ(g) \ g` go to the exact
//! base; for every cover pair `(lower, upper)` with enough confidence, each
//! generator `t` of the lower class yields `t ⇒ γ(upper) \ t`.

use alloc::vec::Vec;

use crate::context::{MiningParams, TransactionContext};
use crate::genminers::MinerOutput;
use crate::itemset::Itemset;
use crate::lattice::{ClassId, GeneratorLattice};
use crate::ratio::Ratio;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    Exact,
    Approximate,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenericRule {
    pub premise: Itemset,
    pub conclusion: Itemset,
    /// Absolute support of premise ∪ conclusion.
    pub support: u32,
    pub confidence: Ratio,
    pub kind: RuleKind,
}

impl GenericRule {
    /// Sort key: kind, support descending, premise, conclusion.
    pub fn sort_key(&self) -> (RuleKind, core::cmp::Reverse<u32>, &Itemset, &Itemset) {
        (
            self.kind,
            core::cmp::Reverse(self.support),
            &self.premise,
            &self.conclusion,
        )
    }
}

/// Sorts rules into the canonical output order.
pub fn sort_rules(rules: &mut [GenericRule]) {
    rules.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleBases {
    /// Exact base BG.
    pub bg: Vec<GenericRule>,
    /// Transitive reduction RI of the approximate informative base.
    pub ri: Vec<GenericRule>,
    /// Closures actually computed (one per class when the walk completes).
    pub closures_derived: usize,
}

/// Sets and returns the closure of `class` from the closure of one of its
/// immediate predecessors. A class whose closure is already known is left
/// untouched and its stored closure returned.
pub fn derive_closure(
    lattice: &mut GeneratorLattice,
    miner: &MinerOutput,
    class: ClassId,
    predecessor_closure: &Itemset,
) -> (Itemset, bool) {
    let c = lattice.class_mut(class);
    if let Some(existing) = &c.closure {
        return (existing.clone(), false);
    }
    let closure = c.members.iter().fold(predecessor_closure.clone(), |acc, &g| {
        acc.union(&miner.generator(g).itemset)
    });
    c.closure = Some(closure.clone());
    (closure, true)
}

/// Derives every closed itemset and emits the two rule bases.
pub fn gen_bgrs(lattice: &mut GeneratorLattice, miner: &MinerOutput, params: &MiningParams) -> RuleBases {
    let mut out = RuleBases::default();
    let bottom = lattice.bottom();
    lattice.class_mut(bottom).closure = Some(miner.empty_closure.clone());
    out.closures_derived = 1;

    let mut current = alloc::vec![bottom];
    while !current.is_empty() {
        let mut next = Vec::new();
        for &cid in &current {
            let class = lattice.class(cid).clone();
            let closure = class.closure.clone().expect("queued classes have closures");
            if closure != miner.generator(class.representative).itemset {
                for &t in &class.members {
                    let t = &miner.generator(t).itemset;
                    out.bg.push(GenericRule {
                        premise: t.clone(),
                        conclusion: closure.difference(t),
                        support: class.support,
                        confidence: Ratio::ONE,
                        kind: RuleKind::Exact,
                    });
                }
            }
            for &up in &class.upper_covers {
                let (up_closure, fresh) = derive_closure(lattice, miner, up, &closure);
                if fresh {
                    out.closures_derived += 1;
                    next.push(up);
                }
                let up_support = lattice.class(up).support;
                let conf = Ratio::new(up_support as u64, class.support as u64);
                if conf >= params.minconf() {
                    for &t in &class.members {
                        let t = &miner.generator(t).itemset;
                        out.ri.push(GenericRule {
                            premise: t.clone(),
                            conclusion: up_closure.difference(t),
                            support: up_support,
                            confidence: conf,
                            kind: RuleKind::Approximate,
                        });
                    }
                }
            }
        }
        current = next;
    }
    sort_rules(&mut out.bg);
    sort_rules(&mut out.ri);
    out
}

/// Checks a rule's support and confidence against direct counts.
pub fn validate_rule(rule: &GenericRule, ctx: &TransactionContext) -> bool {
    let whole = rule.premise.union(&rule.conclusion);
    let (Ok(s_whole), Ok(s_premise)) = (ctx.support(&whole), ctx.support(&rule.premise)) else {
        return false;
    };
    s_whole == rule.support && s_premise != 0 && Ratio::new(s_whole as u64, s_premise as u64) == rule.confidence
}
