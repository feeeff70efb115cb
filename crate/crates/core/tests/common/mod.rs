#![allow(dead_code)]

use prince_core::oracle::OracleClass;
use prince_core::{
    gen_bgrs, gen_gms, gen_ordre, GenOrdreOptions, GeneratorLattice, Itemset, MinerOutput, MiningParams, Ratio,
    RuleBases, TransactionContext,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_context(seed: u64, max_items: u32, max_objects: usize) -> TransactionContext {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items = rng.random_range(1..=max_items);
    let objects = rng.random_range(1..=max_objects);
    let density: f64 = rng.random_range(0.2..0.85);
    let rows: Vec<Vec<u32>> = (0..objects)
        .map(|_| (1..=items).filter(|_| rng.random_bool(density)).collect())
        .collect();
    TransactionContext::from_transactions(rows)
}

pub fn run(
    ctx: &TransactionContext,
    params: &MiningParams,
    shortcut: bool,
) -> (MinerOutput, GeneratorLattice, RuleBases) {
    let miner = gen_gms(ctx, params);
    let mut lattice = gen_ordre(
        &miner,
        GenOrdreOptions {
            closed_prefix_shortcut: shortcut,
        },
    );
    let rules = gen_bgrs(&mut lattice, &miner, params);
    (miner, lattice, rules)
}

/// Pipeline classes in the oracle's shape.
pub fn classes_of(miner: &MinerOutput, lattice: &GeneratorLattice) -> Vec<OracleClass> {
    lattice
        .classes
        .iter()
        .map(|c| {
            let mut generators: Vec<Itemset> = c.members.iter().map(|&g| miner.generator(g).itemset.clone()).collect();
            generators.sort();
            OracleClass {
                closure: c.closure.clone().expect("closure derived"),
                support: c.support,
                generators,
            }
        })
        .collect()
}

pub fn hasse_of(lattice: &GeneratorLattice) -> Vec<(usize, usize)> {
    let mut arcs: Vec<(usize, usize)> = lattice
        .arcs()
        .into_iter()
        .map(|(a, b)| (a.index(), b.index()))
        .collect();
    arcs.sort_unstable();
    arcs
}

pub fn confidences() -> [Ratio; 3] {
    [Ratio::ZERO, Ratio::new(1, 2), Ratio::ONE]
}
