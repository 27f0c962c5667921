//! Shared fixtures for the benchmarks.

use apcover_core::below::TuscInstance;
use apcover_core::generate::{no3ap, union_of_aps};
use apcover_core::Instance;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `k` disjoint planted progressions with `n / k` terms each.
pub fn planted(n: usize, k: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    union_of_aps(&mut rng, k, n / k, 1_000_000, true)
        .expect("plant fits")
        .0
}

pub fn progression_free(n: usize, seed: u64) -> Instance {
    no3ap(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.3)
}

/// `m` random explicit sets of size `width` over `n` elements.
pub fn random_tusc(n: usize, t: usize, m: usize, width: usize, seed: u64) -> TuscInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets = (0..m)
        .map(|_| rand::seq::index::sample(&mut rng, n, width).into_vec())
        .collect();
    TuscInstance::new(n, t, sets).expect("valid instance")
}
