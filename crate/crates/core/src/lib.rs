//! Modulated string searching.
//!
//! A pattern is a sequence of character classes over a numeric alphabet,
//! each optionally carrying a private local bound. A pluggable score model
//! assigns an integer to every (text symbol, pattern class) pair; an
//! alignment fits when the sum of its local scores passes the model's
//! threshold.
//!
//! Alignment scores are computed by a Karatsuba-style multiplication of
//! vector-coefficient polynomials ([`engine`]), with a direct evaluation
//! ([`oracle`]) kept as ground truth.
//!
//! ```
//! use modsearch::{search, CharacterClass, Pattern, PatternPosition, ScoreModel, SearchOptions};
//!
//! let pattern = Pattern::new(
//!     vec![
//!         PatternPosition::from(CharacterClass::new([0, 1]).unwrap()),
//!         PatternPosition::from(CharacterClass::singleton(2)),
//!     ],
//!     None,
//! )
//! .unwrap();
//! let out = search(&[0, 2, 1, 2], &pattern, &ScoreModel::exact(), &SearchOptions::default()).unwrap();
//! assert_eq!(out.scores, vec![2, 0, 2]);
//! assert_eq!(out.reports.iter().map(|r| r.position).collect::<Vec<_>>(), vec![1, 3]);
//! ```

pub mod engine;
pub mod error;
pub mod instance;
pub mod oracle;
pub mod scoring;
pub mod types;

pub use engine::{
    convolve_scores, kam_multiply, kam_multiply_with, leaf_product, pad_to_power_of_two,
    pattern_polynomial, search, EngineConfig, EngineKind, EngineStats, LeafKernel, SearchOptions,
    SearchOutcome, Side, VectorPolynomial,
};
pub use error::{Error, Result};
pub use oracle::{naive_scores, naive_search, schoolbook_multiply};
pub use scoring::{
    build_class_distance_index, build_score_table, cumulative_distance, psi_bounded, psi_exact,
    psi_table, psi_truncated, psi_truncated_ball, AssignmentTable, ClassDistanceIndex, ModelKind,
    ScoreModel, ScoreTable, VerdictMode,
};
pub use types::{
    build_alphabet, char_vector, mismatches_from_score, omega_vector, Alphabet, CharacterClass,
    MatchReport, OmegaSymbol, Pattern, PatternPosition, ScoreVector, Text,
};
