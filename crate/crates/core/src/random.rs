//! Seeded random q-assignments.
//!
//! Components are `±a/b` with `a ∈ 1..=9` and `b ∈ 10..=19`, so every value
//! is nonzero with absolute value below 1. Any product `q_H^+ q_H^- ⋯` then
//! has absolute value below 1, which keeps every factor `1 - b_F` nonzero.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::rational::rat;
use crate::algebra::{QAssignment, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let numer: i64 = rng.gen_range(1..=9);
    let denom: i64 = rng.gen_range(10..=19);
    if rng.gen_bool(0.5) {
        rat(-numer, denom)
    } else {
        rat(numer, denom)
    }
}

pub fn random_q(m: usize, rng: &mut impl Rng) -> QAssignment {
    QAssignment::new(
        (0..m)
            .map(|_| (random_rational(rng), random_rational(rng)))
            .collect(),
    )
}

/// `count` assignments drawn from one stream seeded by `seed`.
pub fn q_sequence(m: usize, seed: u64, count: usize) -> Vec<QAssignment> {
    let mut r = rng(seed);
    (0..count).map(|_| random_q(m, &mut r)).collect()
}
