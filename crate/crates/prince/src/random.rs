//! Seeded random contexts.

use prince_core::TransactionContext;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `objects` rows over labels `1..=items`; each cell is set independently
/// with probability `density`. Equal seeds give equal contexts.
pub fn random_context(items: u32, objects: usize, density: f64, seed: u64) -> TransactionContext {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = density.clamp(0.0, 1.0);
    let rows: Vec<Vec<u32>> = (0..objects)
        .map(|_| (1..=items).filter(|_| rng.random_bool(density)).collect())
        .collect();
    TransactionContext::from_transactions(rows)
}
