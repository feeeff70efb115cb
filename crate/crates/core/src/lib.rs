//! Level-wise mining of frequent minimal generators, the Iceberg lattice of
//! frequent closed itemsets, and the generic association-rule bases.
//!
//! The pipeline runs in three stages:
//!
//! 1. [`genminers::gen_gms`] extracts every frequent minimal generator, the
//!    infrequent negative border and the closure of the empty set, storing
//!    them in a single lexicographic trie.
//! 2. [`lattice::gen_ordre`] arranges the generators into equivalence classes
//!    and computes the cover relation between classes, using only support
//!    comparisons answered from the trie (no closure is ever computed).
//! 3. [`rules::gen_bgrs`] walks the lattice bottom-up, derives each closed
//!    itemset exactly once and emits the exact base and the transitive
//!    reduction of the approximate base.
//!
//! [`oracle`] is an exhaustive reference used to cross-check all three
//! stages on small contexts.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod context;
pub mod error;
pub mod genminers;
pub mod itemset;
pub mod lattice;
pub mod oracle;
pub mod ratio;
pub mod rules;

pub use context::{MiningParams, TransactionContext};
pub use error::{Error, Result};
pub use fixedbitset::FixedBitSet;
pub use genminers::{gen_gms, GenId, GeneratorRecord, GeneratorTrie, InferredSupport, MinerOutput};
pub use itemset::Itemset;
pub use lattice::{gen_ordre, ClassId, EquivalenceClass, GenOrdreOptions, GeneratorLattice, Relation};
pub use oracle::{oracle_mine, OracleResult};
pub use ratio::Ratio;
pub use rules::{gen_bgrs, GenericRule, RuleBases, RuleKind};

/// Output of a full three-stage run.
#[derive(Debug, Clone)]
pub struct Mined {
    pub miner: MinerOutput,
    pub lattice: GeneratorLattice,
    pub rules: RuleBases,
}

/// Runs all three stages with default lattice options.
pub fn mine(ctx: &TransactionContext, params: &MiningParams) -> Mined {
    let miner = gen_gms(ctx, params);
    let mut lattice = gen_ordre(&miner, GenOrdreOptions::default());
    let rules = gen_bgrs(&mut lattice, &miner, params);
    Mined { miner, lattice, rules }
}
