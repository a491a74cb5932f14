//! The fixed-seed corpus of random arrangements used for identity checks.
//!
//! Seeds live in `corpus/seeds.txt`, one per line. Each seed drives a
//! ChaCha8 stream that picks the dimension, the number of hyperplanes and
//! their integer coefficients, so the corpus is identical on every machine.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{Arrangement, Hyperplane};

const SEEDS: &str = include_str!("../corpus/seeds.txt");

pub const MAX_DIM: usize = 4;
pub const MAX_HYPERPLANES: usize = 6;
pub const NORMAL_RANGE: i64 = 3;
pub const OFFSET_RANGE: i64 = 2;
const MAX_DRAWS: usize = 200;

pub fn seeds() -> Vec<u64> {
    SEEDS
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.parse().expect("seed file holds integers"))
        .collect()
}

/// Normals in `[−3, 3]`, offsets in `[−2, 2]`, `1 ≤ n ≤ 4`, `0 ≤ m ≤ 6`.
/// Zero normals and hyperplanes equal to an earlier one are redrawn.
pub fn arrangement_from_seed(seed: u64) -> Arrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=MAX_DIM);
    let m = rng.gen_range(0..=MAX_HYPERPLANES);
    let mut hyperplanes: Vec<Hyperplane> = Vec::with_capacity(m);
    for _ in 0..MAX_DRAWS {
        if hyperplanes.len() == m {
            break;
        }
        let normal: Vec<i64> = (0..n).map(|_| rng.gen_range(-NORMAL_RANGE..=NORMAL_RANGE)).collect();
        let offset = rng.gen_range(-OFFSET_RANGE..=OFFSET_RANGE);
        if let Some(h) = Hyperplane::from_i64(&normal, offset) {
            if !hyperplanes.contains(&h) {
                hyperplanes.push(h);
            }
        }
    }
    Arrangement::new(n, hyperplanes).expect("distinct hyperplanes of matching dimension")
}

/// `(seed, arrangement)` for every published seed, in file order.
pub fn corpus() -> Vec<(u64, Arrangement)> {
    seeds().into_iter().map(|s| (s, arrangement_from_seed(s))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_large_and_within_bounds() {
        let c = corpus();
        assert!(c.len() >= 200);
        for (_, a) in &c {
            assert!((1..=MAX_DIM).contains(&a.ambient_dim()));
            assert!(a.len() <= MAX_HYPERPLANES);
        }
        assert!(c.iter().any(|(_, a)| a.ambient_dim() == 4 && a.len() == 6));
        assert!(c.iter().any(|(_, a)| a.is_empty()));
    }

    #[test]
    fn deterministic() {
        assert_eq!(arrangement_from_seed(42), arrangement_from_seed(42));
    }
}
