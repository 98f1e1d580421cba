//! Pairwise score models, their materialized score tables, and the
//! cumulative-distance index.
//!
//! A score model supplies the local score of one text symbol against one
//! pattern symbol (a class with its resolved bound). The aggregate over an
//! alignment is always the sum of local scores; the verdict is either
//! "sum equals m" (exact membership) or "sum at most b" (every other kind).

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::types::{Alphabet, CharacterClass, OmegaSymbol, Pattern};

/// Scores must stay below this magnitude so that every engine intermediate
/// fits in a signed 64-bit accumulator.
pub const SCORE_BUDGET: i64 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Exact,
    TruncatedL1,
    BoundedL1,
    Table,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::Exact,
        ModelKind::TruncatedL1,
        ModelKind::BoundedL1,
        ModelKind::Table,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Exact => "exact",
            ModelKind::TruncatedL1 => "trunc-l1",
            ModelKind::BoundedL1 => "bounded-l1",
            ModelKind::Table => "table",
        }
    }

    pub fn verdict_mode(self) -> VerdictMode {
        match self {
            ModelKind::Exact => VerdictMode::EqualsM,
            _ => VerdictMode::AtMostB,
        }
    }

    pub fn uses_tau(self) -> bool {
        matches!(self, ModelKind::TruncatedL1 | ModelKind::BoundedL1)
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown model `{s}`"))
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictMode {
    /// The alignment fits iff its score is exactly `m`.
    EqualsM,
    /// The alignment fits iff its score is at most `b`.
    AtMostB,
}

/// Explicit scores for (text symbol, omega index) pairs. Unlisted pairs
/// score 0.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AssignmentTable {
    entries: HashMap<(u32, usize), i64>,
}

impl AssignmentTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an entry; a second entry for the same pair is rejected.
    pub fn insert(&mut self, c: u32, class_index: usize, score: i64) -> Result<()> {
        match self.entries.entry((c, class_index)) {
            Entry::Occupied(_) => Err(Error::InputFormat {
                line: 0,
                message: format!("duplicate entry for ({c}, {class_index})"),
            }),
            Entry::Vacant(v) => {
                v.insert(score);
                Ok(())
            }
        }
    }

    pub fn get(&self, c: u32, class_index: usize) -> i64 {
        self.entries.get(&(c, class_index)).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_class_index(&self) -> Option<usize> {
        self.entries.keys().map(|&(_, s)| s).max()
    }

    /// Entries sorted by (symbol, class index).
    pub fn entries(&self) -> Vec<(u32, usize, i64)> {
        let mut v: Vec<_> = self.entries.iter().map(|(&(c, s), &x)| (c, s, x)).collect();
        v.sort_unstable();
        v
    }

    /// Parses the `char,class_index,score` line format. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(src: &str) -> Result<Self> {
        let mut table = AssignmentTable::new();
        for (idx, raw) in src.lines().enumerate() {
            let line = idx + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let bad = |message: String| Error::InputFormat { line, message };
            let fields: Vec<&str> = body.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(bad(format!(
                    "expected `char,class_index,score`, found `{body}`"
                )));
            }
            let c: u32 = fields[0]
                .parse()
                .map_err(|_| bad(format!("invalid character `{}`", fields[0])))?;
            let s: usize = fields[1]
                .parse()
                .map_err(|_| bad(format!("invalid class index `{}`", fields[1])))?;
            let x: i64 = fields[2]
                .parse()
                .map_err(|_| bad(format!("invalid integer score `{}`", fields[2])))?;
            table
                .insert(c, s, x)
                .map_err(|_| bad(format!("duplicate entry for character {c}, class {s}")))?;
        }
        Ok(table)
    }

    /// Renders the table in the format accepted by [`AssignmentTable::parse`].
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for (c, s, x) in self.entries() {
            out.push_str(&format!("{c},{s},{x}\n"));
        }
        out
    }
}

/// A local score function together with the aggregate threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreModel {
    kind: ModelKind,
    global_tau: Option<u32>,
    b: Option<u32>,
    table: Option<AssignmentTable>,
}

impl ScoreModel {
    pub fn new(
        kind: ModelKind,
        global_tau: Option<u32>,
        b: Option<u32>,
        table: Option<AssignmentTable>,
    ) -> Self {
        ScoreModel {
            kind,
            global_tau,
            b,
            table,
        }
    }

    pub fn exact() -> Self {
        Self::new(ModelKind::Exact, None, None, None)
    }

    pub fn truncated_l1(tau: Option<u32>, b: u32) -> Self {
        Self::new(ModelKind::TruncatedL1, tau, Some(b), None)
    }

    pub fn bounded_l1(tau: Option<u32>, b: u32) -> Self {
        Self::new(ModelKind::BoundedL1, tau, Some(b), None)
    }

    pub fn table(table: AssignmentTable, b: u32) -> Self {
        Self::new(ModelKind::Table, None, Some(b), Some(table))
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn global_tau(&self) -> Option<u32> {
        self.global_tau
    }

    pub fn b(&self) -> Option<u32> {
        self.b
    }

    pub fn assignment(&self) -> Option<&AssignmentTable> {
        self.table.as_ref()
    }

    pub fn verdict_mode(&self) -> VerdictMode {
        self.kind.verdict_mode()
    }

    /// Checks the parameters this model needs against `pattern`.
    pub fn validate(&self, pattern: &Pattern) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidModel(msg));
        if pattern.global_tau() != self.global_tau {
            return invalid(format!(
                "pattern resolved with global tau {:?}, model uses {:?}",
                pattern.global_tau(),
                self.global_tau
            ));
        }
        if self.kind.uses_tau() && self.global_tau.is_none() && !pattern.all_positions_bounded() {
            return invalid(format!(
                "model {} needs a global tau unless every position has a private bound",
                self.kind
            ));
        }
        if self.verdict_mode() == VerdictMode::AtMostB && self.b.is_none() {
            return invalid(format!("model {} needs a score bound b", self.kind));
        }
        if let Some(b) = self.b {
            if i64::from(b) + 1 >= SCORE_BUDGET {
                return invalid(format!("b = {b} is too large"));
            }
        }
        if self.kind == ModelKind::Table {
            let Some(table) = &self.table else {
                return invalid("table model needs an assignment table".into());
            };
            if let Some(s) = table.max_class_index() {
                if s >= pattern.omega().len() {
                    return invalid(format!(
                        "assignment table refers to class index {s}, pattern has {} distinct classes",
                        pattern.omega().len()
                    ));
                }
            }
        }
        Ok(())
    }

    /// Local score of text symbol `c` against the omega symbol at
    /// `omega_index`. The model must have been validated against the
    /// pattern owning `symbol`.
    pub fn local_score(&self, c: u32, omega_index: usize, symbol: &OmegaSymbol) -> i64 {
        let tau = || {
            symbol
                .bound
                .expect("validated model resolves a bound for every position")
        };
        match self.kind {
            ModelKind::Exact => psi_exact(c, &symbol.class),
            ModelKind::TruncatedL1 => psi_truncated(c, &symbol.class, tau()),
            ModelKind::BoundedL1 => psi_bounded(c, &symbol.class, tau(), self.b.unwrap_or(0)),
            ModelKind::Table => psi_table(c, omega_index, self),
        }
    }

    /// Applies the aggregate threshold to an alignment score.
    pub fn verdict(&self, score: i64, m: usize) -> bool {
        match self.verdict_mode() {
            VerdictMode::EqualsM => score == m as i64,
            VerdictMode::AtMostB => score <= i64::from(self.b.unwrap_or(0)),
        }
    }
}

/// 1 if `c` belongs to the class, else 0.
pub fn psi_exact(c: u32, class: &CharacterClass) -> i64 {
    i64::from(class.contains(c))
}

/// Nearest-member distance truncated at `tau`, via binary search in the
/// sorted class.
pub fn psi_truncated(c: u32, class: &CharacterClass, tau: u32) -> i64 {
    i64::from(class.nearest_distance(c).min(tau))
}

/// Same value as [`psi_truncated`], found by scanning the closed `tau`-ball
/// around `c` outward for the first class member.
pub fn psi_truncated_ball(c: u32, class: &CharacterClass, tau: u32) -> i64 {
    for delta in 0..=tau {
        let below = c.checked_sub(delta).is_some_and(|x| class.contains(x));
        let above = c.checked_add(delta).is_some_and(|x| class.contains(x));
        if below || above {
            return i64::from(delta);
        }
    }
    i64::from(tau)
}

/// Nearest-member distance if it is at most `tau`, otherwise the sentinel
/// `b + 1`, which alone exceeds any admissible sum.
pub fn psi_bounded(c: u32, class: &CharacterClass, tau: u32, b: u32) -> i64 {
    let d = class.nearest_distance(c);
    if d <= tau {
        i64::from(d)
    } else {
        i64::from(b) + 1
    }
}

/// Table lookup; missing pairs and models without a table score 0.
pub fn psi_table(c: u32, omega_index: usize, model: &ScoreModel) -> i64 {
    model.assignment().map_or(0, |t| t.get(c, omega_index))
}

/// Local scores of every (symbol rank, omega index) pair, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreTable {
    scores: Vec<i64>,
    sigma_dim: usize,
    omega_dim: usize,
}

impl ScoreTable {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let sigma_dim = rows.len();
        let omega_dim = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != omega_dim {
                return Err(Error::DimensionMismatch {
                    expected: omega_dim,
                    found: row.len(),
                });
            }
        }
        Ok(ScoreTable {
            scores: rows.into_iter().flatten().collect(),
            sigma_dim,
            omega_dim,
        })
    }

    pub fn sigma_dim(&self) -> usize {
        self.sigma_dim
    }

    pub fn omega_dim(&self) -> usize {
        self.omega_dim
    }

    pub fn get(&self, rank: usize, omega_index: usize) -> i64 {
        self.scores[rank * self.omega_dim + omega_index]
    }

    pub fn row(&self, rank: usize) -> &[i64] {
        &self.scores[rank * self.omega_dim..(rank + 1) * self.omega_dim]
    }

    pub fn max_abs(&self) -> i64 {
        self.scores.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// Writes `table · w` (dimension `|Σ|`) into `out`.
    pub fn project(&self, w: &[i64], out: &mut [i64]) {
        debug_assert_eq!(w.len(), self.omega_dim);
        debug_assert_eq!(out.len(), self.sigma_dim);
        for (r, o) in out.iter_mut().enumerate() {
            *o = self.row(r).iter().zip(w).map(|(t, x)| t * x).sum();
        }
    }
}

/// Evaluates the model on every (symbol, omega symbol) pair.
pub fn build_score_table(
    model: &ScoreModel,
    alphabet: &Alphabet,
    pattern: &Pattern,
) -> Result<ScoreTable> {
    model.validate(pattern)?;
    let omega = pattern.omega();
    let mut scores = Vec::with_capacity(alphabet.len() * omega.len());
    for &c in alphabet.symbols() {
        for (s, symbol) in omega.iter().enumerate() {
            scores.push(model.local_score(c, s, symbol));
        }
    }
    let table = ScoreTable {
        scores,
        sigma_dim: alphabet.len(),
        omega_dim: omega.len(),
    };
    let max = table.max_abs();
    if max >= SCORE_BUDGET || (max as i128) * (pattern.m() as i128) >= SCORE_BUDGET as i128 {
        return Err(Error::Overflow(format!(
            "m = {} times max |score| = {max} exceeds 2^62",
            pattern.m()
        )));
    }
    Ok(table)
}

/// Sorted distinct values with multiplicities, answering
/// `Σ |ℓ − value| · multiplicity` in logarithmic time.
///
/// `suffix_sums[j] = Σ_{i>j} (values[i] − values[j]) · freqs[i]` and
/// `suffix_counts[j] = Σ_{i≥j} freqs[i]`; the prefix arrays mirror them for
/// the values below a query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDistanceIndex {
    values: Vec<i64>,
    freqs: Vec<u64>,
    suffix_counts: Vec<u64>,
    suffix_sums: Vec<i64>,
    prefix_counts: Vec<u64>,
    prefix_sums: Vec<i64>,
}

impl ClassDistanceIndex {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn freqs(&self) -> &[u64] {
        &self.freqs
    }

    pub fn suffix_counts(&self) -> &[u64] {
        &self.suffix_counts
    }

    pub fn suffix_sums(&self) -> &[i64] {
        &self.suffix_sums
    }

    pub fn prefix_counts(&self) -> &[u64] {
        &self.prefix_counts
    }

    pub fn prefix_sums(&self) -> &[i64] {
        &self.prefix_sums
    }

    pub fn total(&self) -> u64 {
        self.suffix_counts[0]
    }
}

pub fn build_class_distance_index(values: &[i64]) -> Result<ClassDistanceIndex> {
    if values.is_empty() {
        return Err(Error::EmptyClass);
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let mut distinct: Vec<i64> = Vec::new();
    let mut freqs: Vec<u64> = Vec::new();
    for v in sorted {
        if distinct.last() == Some(&v) {
            *freqs.last_mut().unwrap() += 1;
        } else {
            distinct.push(v);
            freqs.push(1);
        }
    }
    let r = distinct.len();

    let mut suffix_counts = vec![0u64; r];
    let mut suffix_sums = vec![0i64; r];
    suffix_counts[r - 1] = freqs[r - 1];
    for j in (1..r).rev() {
        suffix_counts[j - 1] = suffix_counts[j] + freqs[j - 1];
        suffix_sums[j - 1] =
            suffix_sums[j] + (distinct[j] - distinct[j - 1]) * suffix_counts[j] as i64;
    }

    let mut prefix_counts = vec![0u64; r];
    let mut prefix_sums = vec![0i64; r];
    prefix_counts[0] = freqs[0];
    for j in 1..r {
        prefix_counts[j] = prefix_counts[j - 1] + freqs[j];
        prefix_sums[j] =
            prefix_sums[j - 1] + (distinct[j] - distinct[j - 1]) * prefix_counts[j - 1] as i64;
    }

    Ok(ClassDistanceIndex {
        values: distinct,
        freqs,
        suffix_counts,
        suffix_sums,
        prefix_counts,
        prefix_sums,
    })
}

/// `Σ |ℓ − values[j]| · freqs[j]`. Values above `ℓ` are charged through the
/// suffix arrays at the first rank above `ℓ`; values at or below `ℓ`
/// through the prefix arrays at the last rank not above it.
pub fn cumulative_distance(idx: &ClassDistanceIndex, ell: i64) -> i64 {
    let j = idx.values.partition_point(|&v| v <= ell);
    let above = if j < idx.values.len() {
        idx.suffix_sums[j] + (idx.values[j] - ell) * idx.suffix_counts[j] as i64
    } else {
        0
    };
    let below = if j > 0 {
        let i = j - 1;
        idx.prefix_sums[i] + (ell - idx.values[i]) * idx.prefix_counts[i] as i64
    } else {
        0
    };
    above + below
}
