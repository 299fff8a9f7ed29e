use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(crate) fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A reproducible seed for the `k`-th retry derived from a base seed.
pub(crate) fn derive_seed(base: u64, k: u64) -> u64 {
    if k == 0 {
        return base;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(base ^ 0x9e37_79b9_7f4a_7c15);
    let mut s = base;
    for _ in 0..k {
        s = rng.random();
    }
    s
}

pub(crate) fn coefficient(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    rng.random_range(-bound..=bound)
}
