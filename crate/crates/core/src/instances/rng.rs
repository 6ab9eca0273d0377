//! Fixed, named deterministic PRNG with explicit 64-bit seeding.
//!
//! All randomized generators use ChaCha8 seeded from a u64; the identifier
//! below is recorded in instance provenance so outputs are reproducible
//! across platforms. Batch workloads derive per-task seeds with
//! [`split_seed`], a SplitMix64 step over master-seed and lane index, so
//! concurrent cells stay independent and deterministic.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator algorithm identifier recorded in provenance blocks.
pub const PRNG_ID: &str = "chacha8-seed64";

pub type Prng = ChaCha8Rng;

pub fn prng(seed: u64) -> Prng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives the seed for lane `lane` of a batch keyed by `master`.
pub fn split_seed(master: u64, lane: u64) -> u64 {
    // SplitMix64 finalizer over master + (lane+1) * golden gamma.
    let mut z = master
        .wrapping_add(lane.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
