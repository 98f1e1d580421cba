//! Random search instances for verification, benchmarks and file generation.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::error::Result;
use crate::scoring::{AssignmentTable, ModelKind, ScoreModel};
use crate::types::{CharacterClass, Pattern, PatternPosition};

/// Pattern lengths exercised by the randomized equivalence suites.
pub const SUITE_PATTERN_LENGTHS: [usize; 9] = [1, 2, 3, 4, 7, 8, 16, 33, 64];

#[derive(Debug, Clone)]
pub struct InstanceParams {
    /// Text length is drawn from `m..=n_max` (or is exactly `n_max` when
    /// smaller than `m`).
    pub n_max: usize,
    pub m: usize,
    /// Text symbols and class members are drawn from `0..sigma`.
    pub sigma: u32,
    pub max_class: usize,
    pub max_tau: u32,
    pub max_b: u32,
    /// Give some pattern positions a private local bound.
    pub private_bounds: bool,
}

impl Default for InstanceParams {
    fn default() -> Self {
        InstanceParams {
            n_max: 512,
            m: 8,
            sigma: 16,
            max_class: 5,
            max_tau: 4,
            max_b: 32,
            private_bounds: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub text: Vec<u32>,
    pub positions: Vec<PatternPosition>,
    pub model: ScoreModel,
}

impl Instance {
    pub fn pattern(&self) -> Result<Pattern> {
        Pattern::new(self.positions.clone(), self.model.global_tau())
    }
}

pub fn random_text<R: Rng + ?Sized>(rng: &mut R, n: usize, sigma: u32) -> Vec<u32> {
    (0..n).map(|_| rng.random_range(0..sigma.max(1))).collect()
}

pub fn random_class<R: Rng + ?Sized>(rng: &mut R, sigma: u32, max_class: usize) -> CharacterClass {
    let sigma = sigma.max(1);
    let size = rng.random_range(1..=max_class.max(1)).min(sigma as usize);
    let symbols: Vec<u32> = (0..sigma).collect();
    CharacterClass::new(symbols.choose_multiple(rng, size).copied())
        .expect("class size is at least one")
}

/// Positions with classes over `0..sigma`; when `max_tau` is given, about a
/// third of the positions receive a private bound in `0..=max_tau`.
pub fn random_positions<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    sigma: u32,
    max_class: usize,
    max_tau: Option<u32>,
) -> Vec<PatternPosition> {
    (0..m)
        .map(|_| {
            let class = random_class(rng, sigma, max_class);
            let bound = max_tau
                .filter(|_| rng.random_bool(1.0 / 3.0))
                .map(|t| rng.random_range(0..=t));
            PatternPosition::new(class, bound)
        })
        .collect()
}

pub fn random_instance<R: Rng + ?Sized>(
    rng: &mut R,
    kind: ModelKind,
    params: &InstanceParams,
) -> Instance {
    let n = if params.n_max < params.m {
        params.n_max
    } else {
        rng.random_range(params.m..=params.n_max)
    };
    let sigma = rng.random_range(1..=params.sigma.max(1));
    let text = random_text(rng, n, sigma);
    let private = params.private_bounds.then_some(params.max_tau);
    let positions = random_positions(rng, params.m, sigma, params.max_class, private);
    let b = rng.random_range(0..=params.max_b);
    let all_bounded = positions.iter().all(|p| p.local_bound.is_some());
    let tau = if all_bounded && rng.random_bool(0.5) {
        None
    } else {
        Some(rng.random_range(0..=params.max_tau))
    };
    let model = match kind {
        ModelKind::Exact => ScoreModel::exact(),
        ModelKind::TruncatedL1 => ScoreModel::truncated_l1(tau, b),
        ModelKind::BoundedL1 => ScoreModel::bounded_l1(tau, b),
        ModelKind::Table => {
            let omega = Pattern::new(positions.clone(), None)
                .expect("m >= 1")
                .omega()
                .len();
            let mut table = AssignmentTable::new();
            for c in 0..sigma {
                for s in 0..omega {
                    if rng.random_bool(0.5) {
                        table
                            .insert(c, s, rng.random_range(-8..=8))
                            .expect("each pair is visited once");
                    }
                }
            }
            ScoreModel::table(table, b)
        }
    };
    Instance {
        text,
        positions,
        model,
    }
}
