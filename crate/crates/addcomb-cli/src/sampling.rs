//! Seeded instance generators for the sweeps.
//!
//! One fixed, documented generator: ChaCha8 keyed by the 64-bit run seed,
//! with the trial index selecting the stream. Trials are therefore
//! independent, reproducible, and safe to evaluate in any order.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The per-trial generator: stream `trial` of the seeded ChaCha8 cipher.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `count` distinct residues mod `p`, as a sorted set.
pub fn distinct_residues(rng: &mut ChaCha8Rng, p: u64, count: usize) -> Vec<BigInt> {
    assert!(count as u64 <= p, "cannot draw {count} distinct residues mod {p}");
    let mut pool: Vec<u64> = (0..p).collect();
    pool.shuffle(rng);
    let mut chosen: Vec<u64> = pool.into_iter().take(count).collect();
    chosen.sort_unstable();
    chosen.into_iter().map(BigInt::from).collect()
}

/// A random square integer matrix with entries in `[lo, hi]`.
pub fn int_matrix(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(lo..=hi))).collect())
        .collect()
}

/// A random monic polynomial of the given degree over `Z/pZ`, coefficients
/// low to high.
pub fn monic_poly(rng: &mut ChaCha8Rng, p: u64, degree: u32) -> Vec<BigInt> {
    let mut coeffs: Vec<BigInt> = (0..degree)
        .map(|_| BigInt::from(rng.gen_range(0..p)))
        .collect();
    coeffs.push(BigInt::from(1));
    coeffs
}
