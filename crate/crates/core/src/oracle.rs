//! Brute-force baselines used as ground truth.
//!
//! The naive search evaluates the local score function directly at every
//! (alignment, position) pair and never touches a [`ScoreTable`], so a bug
//! in table construction cannot hide an engine bug.

use crate::engine::{leaf_product, reports_from_scores, VectorPolynomial};
use crate::error::{Error, Result};
use crate::scoring::{ScoreModel, ScoreTable};
use crate::types::{build_alphabet, MatchReport, Pattern, Text};

/// Alignment scores by direct evaluation, `O(n·m)` local scores.
pub fn naive_scores(text: &Text, pattern: &Pattern, model: &ScoreModel) -> Vec<i64> {
    let (n, m) = (text.n(), pattern.m());
    if n < m {
        return Vec::new();
    }
    let chars = text.chars();
    let omega = pattern.omega();
    (0..=n - m)
        .map(|j| {
            (0..m)
                .map(|i| {
                    let s = pattern.omega_index(i);
                    model.local_score(chars[j + i], s, &omega[s])
                })
                .sum()
        })
        .collect()
}

/// Scores of every alignment plus the reports of those that fit.
pub fn naive_search(
    text: &[u32],
    pattern: &Pattern,
    model: &ScoreModel,
) -> Result<(Vec<i64>, Vec<MatchReport>)> {
    model.validate(pattern)?;
    let alphabet = build_alphabet(text, pattern.positions());
    let text = Text::new(text.to_vec(), &alphabet)?;
    let scores = naive_scores(&text, pattern, model);
    let reports = reports_from_scores(&scores, pattern.m(), model, false);
    Ok((scores, reports))
}

/// Cross-product multiplication through [`leaf_product`]; any lengths.
pub fn schoolbook_multiply(
    a: &VectorPolynomial,
    b: &VectorPolynomial,
    t: &ScoreTable,
) -> Result<Vec<i64>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for i in 0..a.len() {
        let u = a.vector(i);
        for j in 0..b.len() {
            let x = leaf_product(&u, &b.vector(j), t)?;
            out[i + j] = out[i + j]
                .checked_add(x)
                .ok_or_else(|| Error::Overflow("schoolbook accumulation".into()))?;
        }
    }
    Ok(out)
}
