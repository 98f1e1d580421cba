//! Domain types shared by the scoring models, the engine and the oracle.
//!
//! Symbols are non-negative integers. Every vector and table is indexed by
//! the *rank* of a symbol in the [`Alphabet`], never by its raw value, so
//! dimensions stay at `|Σ|` regardless of numeric magnitude.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// The sorted set of symbols occurring in a text or in any pattern class.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<u32>,
}

impl Alphabet {
    /// Builds an alphabet from arbitrary symbols; duplicates are removed.
    pub fn from_symbols(symbols: impl IntoIterator<Item = u32>) -> Self {
        let mut symbols: Vec<u32> = symbols.into_iter().collect();
        symbols.sort_unstable();
        symbols.dedup();
        Alphabet { symbols }
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// 0-based rank of `c`, if it belongs to the alphabet.
    pub fn rank(&self, c: u32) -> Option<usize> {
        self.symbols.binary_search(&c).ok()
    }

    pub fn symbol(&self, rank: usize) -> u32 {
        self.symbols[rank]
    }
}

/// Union of all text characters and all class members of `positions`.
pub fn build_alphabet(text: &[u32], positions: &[PatternPosition]) -> Alphabet {
    let members = positions
        .iter()
        .flat_map(|p| p.class.members().iter().copied());
    Alphabet::from_symbols(text.iter().copied().chain(members))
}

/// A nonempty set of symbols occupying one pattern position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterClass {
    members: Vec<u32>,
}

impl CharacterClass {
    /// Sorts and deduplicates `members`.
    pub fn new(members: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut members: Vec<u32> = members.into_iter().collect();
        if members.is_empty() {
            return Err(Error::EmptyClass);
        }
        members.sort_unstable();
        members.dedup();
        Ok(CharacterClass { members })
    }

    pub fn singleton(c: u32) -> Self {
        CharacterClass { members: vec![c] }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, c: u32) -> bool {
        self.members.binary_search(&c).is_ok()
    }

    /// Distance from `c` to the closest member, found by binary search
    /// around the insertion point.
    pub fn nearest_distance(&self, c: u32) -> u32 {
        let at = self.members.partition_point(|&x| x < c);
        let above = self.members.get(at).map(|&x| x - c);
        let below = at.checked_sub(1).map(|i| c - self.members[i]);
        match (below, above) {
            (Some(lo), Some(hi)) => lo.min(hi),
            (Some(d), None) | (None, Some(d)) => d,
            (None, None) => unreachable!("character classes are nonempty"),
        }
    }
}

/// One pattern position: a class plus an optional private local bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternPosition {
    pub class: CharacterClass,
    pub local_bound: Option<u32>,
}

impl PatternPosition {
    pub fn new(class: CharacterClass, local_bound: Option<u32>) -> Self {
        PatternPosition { class, local_bound }
    }

    /// The private bound if present, otherwise `global_tau`.
    pub fn effective_bound(&self, global_tau: Option<u32>) -> Option<u32> {
        self.local_bound.or(global_tau)
    }
}

impl From<CharacterClass> for PatternPosition {
    fn from(class: CharacterClass) -> Self {
        PatternPosition::new(class, None)
    }
}

/// A distinct (class, effective bound) pair of a pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OmegaSymbol {
    pub class: CharacterClass,
    pub bound: Option<u32>,
}

/// A pattern with its distinct symbols enumerated in order of first
/// occurrence. Private bounds are resolved against the global bound before
/// enumeration, so two positions share a symbol iff their classes and
/// effective bounds agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    positions: Vec<PatternPosition>,
    global_tau: Option<u32>,
    omega: Vec<OmegaSymbol>,
    omega_of: Vec<usize>,
}

impl Pattern {
    pub fn new(positions: Vec<PatternPosition>, global_tau: Option<u32>) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let mut omega = Vec::new();
        let mut seen: HashMap<OmegaSymbol, usize> = HashMap::new();
        let omega_of = positions
            .iter()
            .map(|p| {
                let symbol = OmegaSymbol {
                    class: p.class.clone(),
                    bound: p.effective_bound(global_tau),
                };
                *seen.entry(symbol.clone()).or_insert_with(|| {
                    omega.push(symbol);
                    omega.len() - 1
                })
            })
            .collect();
        Ok(Pattern {
            positions,
            global_tau,
            omega,
            omega_of,
        })
    }

    pub fn m(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[PatternPosition] {
        &self.positions
    }

    pub fn global_tau(&self) -> Option<u32> {
        self.global_tau
    }

    pub fn omega(&self) -> &[OmegaSymbol] {
        &self.omega
    }

    /// Omega index of the 0-based position `i`.
    pub fn omega_index(&self, i: usize) -> usize {
        self.omega_of[i]
    }

    pub fn omega_indices(&self) -> &[usize] {
        &self.omega_of
    }

    pub fn all_positions_bounded(&self) -> bool {
        self.positions.iter().all(|p| p.local_bound.is_some())
    }
}

/// A text over an alphabet, stored both as raw symbols and as ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    chars: Vec<u32>,
    ranks: Vec<u32>,
}

impl Text {
    pub fn new(chars: Vec<u32>, alphabet: &Alphabet) -> Result<Self> {
        let ranks = chars
            .iter()
            .map(|&c| {
                alphabet
                    .rank(c)
                    .map(|r| r as u32)
                    .ok_or(Error::NotInAlphabet(c))
            })
            .collect::<Result<_>>()?;
        Ok(Text { chars, ranks })
    }

    pub fn chars(&self) -> &[u32] {
        &self.chars
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn n(&self) -> usize {
        self.chars.len()
    }
}

/// Integer coefficients of a free-ring element over `Σ` (text side) or
/// `Ω` (pattern side).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScoreVector(pub Vec<i64>);

impl ScoreVector {
    pub fn zeros(dim: usize) -> Self {
        ScoreVector(vec![0; dim])
    }

    pub fn unit(dim: usize, at: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[at] = 1;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl std::ops::Add<&ScoreVector> for &ScoreVector {
    type Output = ScoreVector;

    fn add(self, rhs: &ScoreVector) -> ScoreVector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimensions differ");
        ScoreVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

/// The characteristic vector of text symbol `c`.
pub fn char_vector(c: u32, alphabet: &Alphabet) -> Result<ScoreVector> {
    let rank = alphabet.rank(c).ok_or(Error::NotInAlphabet(c))?;
    Ok(ScoreVector::unit(alphabet.len(), rank))
}

/// The characteristic vector over `Ω` of the 1-based pattern position `i`.
pub fn omega_vector(i: usize, pattern: &Pattern) -> Result<ScoreVector> {
    if i == 0 || i > pattern.m() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: pattern.m(),
        });
    }
    Ok(ScoreVector::unit(
        pattern.omega().len(),
        pattern.omega_index(i - 1),
    ))
}

/// Under exact class membership an alignment scoring `v` has `m - v`
/// mismatching positions.
pub fn mismatches_from_score(v: i64, m: usize) -> Result<i64> {
    if v < 0 || v > m as i64 {
        return Err(Error::ScoreOutOfRange { score: v, m });
    }
    Ok(m as i64 - v)
}

/// Outcome of one alignment. `position` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatchReport {
    #[serde(rename = "pos")]
    pub position: usize,
    pub score: i64,
    pub verdict: bool,
}
