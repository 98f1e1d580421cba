//! Shared fixtures for the criterion benchmarks.

use modsearch::instance::{random_positions, random_text};
use modsearch::{Pattern, ScoreModel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A reproducible exact-membership instance over `0..sigma`.
pub fn exact_instance(
    n: usize,
    m: usize,
    sigma: u32,
    seed: u64,
) -> (Vec<u32>, Pattern, ScoreModel) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let text = random_text(&mut rng, n, sigma);
    let positions = random_positions(&mut rng, m, sigma, 3, None);
    let pattern = Pattern::new(positions, None).expect("m >= 1");
    (text, pattern, ScoreModel::exact())
}

/// A truncated-L1 instance with private bounds on some positions.
pub fn truncated_instance(
    n: usize,
    m: usize,
    sigma: u32,
    seed: u64,
) -> (Vec<u32>, Pattern, ScoreModel) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let text = random_text(&mut rng, n, sigma);
    let positions = random_positions(&mut rng, m, sigma, 3, Some(4));
    let pattern = Pattern::new(positions, Some(2)).expect("m >= 1");
    (
        text,
        pattern,
        ScoreModel::truncated_l1(Some(2), (m / 2) as u32),
    )
}
