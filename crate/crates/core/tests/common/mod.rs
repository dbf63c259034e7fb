#![allow(dead_code)]

use std::sync::Arc;

use fincat::catalog;
use fincat::FinCategory;
use proptest::test_runner::Config;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed for randomized drivers, overridable through `FINCAT_SEED`.
pub fn seed() -> u64 {
    std::env::var("FINCAT_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20_240_611)
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    }
}

/// The fixed catalog followed by `random` seeded random categories.
pub fn catalog(random: usize) -> Vec<Arc<FinCategory>> {
    catalog::fixed()
        .into_iter()
        .chain(catalog::random_categories(seed(), random))
        .map(Arc::new)
        .collect()
}

pub fn small_shapes() -> Vec<Arc<FinCategory>> {
    [catalog::one(), catalog::pair(), catalog::arr(), catalog::par_pair()]
        .into_iter()
        .map(Arc::new)
        .collect()
}
