//! Per-stage wall-clock timings.

use std::time::Instant;

use prince_core::{gen_bgrs, gen_gms, gen_ordre, GenOrdreOptions, MiningParams, TransactionContext};

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub minsupp: u32,
    pub stage1_ms: f64,
    pub stage2_ms: f64,
    pub stage3_ms: f64,
    pub generators: usize,
    pub classes: usize,
}

pub const CSV_HEADER: &str = "minsupp,stage1_ms,stage2_ms,stage3_ms,generators,classes";

impl BenchRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{:.6},{:.6},{:.6},{},{}",
            self.minsupp, self.stage1_ms, self.stage2_ms, self.stage3_ms, self.generators, self.classes
        )
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn run(ctx: &TransactionContext, params: &MiningParams, options: GenOrdreOptions) -> BenchRow {
    let t = Instant::now();
    let miner = gen_gms(ctx, params);
    let stage1_ms = ms(t);
    let t = Instant::now();
    let mut lattice = gen_ordre(&miner, options);
    let stage2_ms = ms(t);
    let t = Instant::now();
    gen_bgrs(&mut lattice, &miner, params);
    let stage3_ms = ms(t);
    BenchRow {
        minsupp: params.minsupp(),
        stage1_ms,
        stage2_ms,
        stage3_ms,
        generators: miner.generators.len(),
        classes: lattice.classes.len(),
    }
}
