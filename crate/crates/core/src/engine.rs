//! Generalized Karatsuba convolution.
//!
//! Polynomial coefficients are integer vectors: text-side coefficients live
//! over `Σ`, pattern-side coefficients over `Ω`. The recursion only ever adds
//! and subtracts coefficients, so formal linear combinations are stored as
//! plain integer vectors. Multiplication happens only at the leaves, where a
//! bilinear map sends a (text vector, pattern vector) pair to an integer
//! through the [`ScoreTable`].
//!
//! Text is processed in segments of the pattern length; each segment product
//! is overlap-added into the alignment scores at its place value.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle;
use crate::scoring::{build_score_table, ScoreModel, ScoreTable, SCORE_BUDGET};
use crate::types::{build_alphabet, MatchReport, Pattern, ScoreVector, Text};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Coefficients over the alphabet.
    Text,
    /// Coefficients over the distinct pattern symbols.
    Pattern,
}

/// A polynomial whose coefficients are equal-dimension integer vectors,
/// stored flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorPolynomial {
    side: Side,
    dim: usize,
    coeffs: Vec<i64>,
}

impl VectorPolynomial {
    pub fn new(side: Side, dim: usize) -> Self {
        VectorPolynomial {
            side,
            dim,
            coeffs: Vec::new(),
        }
    }

    pub fn from_vectors(side: Side, dim: usize, vectors: &[ScoreVector]) -> Result<Self> {
        let mut p = Self::new(side, dim);
        for v in vectors {
            p.push(v)?;
        }
        Ok(p)
    }

    pub fn push(&mut self, v: &ScoreVector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        self.coeffs.extend_from_slice(v.entries());
        Ok(())
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coeffs.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> &[i64] {
        &self.coeffs[i * self.dim..(i + 1) * self.dim]
    }

    pub fn vector(&self, i: usize) -> ScoreVector {
        ScoreVector(self.coeff(i).to_vec())
    }

    /// Sum of the absolute values of all entries.
    fn l1_total(&self) -> i128 {
        self.coeffs.iter().map(|&x| i128::from(x).abs()).sum()
    }
}

/// Appends zero vectors up to the next power of two.
pub fn pad_to_power_of_two(p: &VectorPolynomial) -> VectorPolynomial {
    let k = p.len().max(1).next_power_of_two();
    let mut out = p.clone();
    out.coeffs.resize(k * p.dim, 0);
    out
}

/// The pattern polynomial with positions in reverse order, so that the
/// coefficient of degree `j + m - 1` in the product with an ascending text
/// segment collects exactly the pairs of alignment `j`.
pub fn pattern_polynomial(pattern: &Pattern) -> VectorPolynomial {
    let dim = pattern.omega().len();
    let mut p = VectorPolynomial::new(Side::Pattern, dim);
    p.coeffs = vec![0; pattern.m() * dim];
    for y in 0..pattern.m() {
        let s = pattern.omega_index(pattern.m() - 1 - y);
        p.coeffs[y * dim + s] = 1;
    }
    p
}

/// Operation counters. Counts are per run and are merged across segments.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineStats {
    /// Leaf evaluations of the bilinear score map.
    pub leaf_products: u64,
    /// Coefficient-vector additions performed before recursing.
    pub vector_additions: u64,
    /// Integer additions and subtractions while recombining products.
    pub scalar_additions: u64,
    /// Number of text segments multiplied against the pattern.
    pub segments: u64,
}

impl std::ops::AddAssign for EngineStats {
    fn add_assign(&mut self, o: EngineStats) {
        self.leaf_products += o.leaf_products;
        self.vector_additions += o.vector_additions;
        self.scalar_additions += o.scalar_additions;
        self.segments += o.segments;
    }
}

/// `Σ_r Σ_s u[r]·w[s]·t[r][s]`, iterating only over non-zero entries of `u`.
pub fn leaf_product(u: &ScoreVector, w: &ScoreVector, t: &ScoreTable) -> Result<i64> {
    check_dim(t.sigma_dim(), u.dim())?;
    check_dim(t.omega_dim(), w.dim())?;
    let overflow = || Error::Overflow("leaf product accumulation".into());
    let mut acc: i64 = 0;
    for (r, &ur) in u.entries().iter().enumerate() {
        if ur == 0 {
            continue;
        }
        for (s, &ws) in w.entries().iter().enumerate() {
            if ws == 0 {
                continue;
            }
            let term = ur
                .checked_mul(ws)
                .and_then(|x| x.checked_mul(t.get(r, s)))
                .ok_or_else(overflow)?;
            acc = acc.checked_add(term).ok_or_else(overflow)?;
        }
    }
    Ok(acc)
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// How leaves evaluate the score map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafKernel {
    /// Evaluate `uᵀ·T·w` at every leaf, with `w` over `Ω`.
    Table,
    /// Map every pattern coefficient through the table once (`w ↦ T·w`)
    /// before recursing; leaves are then dot products over `Σ`. Linearity of
    /// the map makes both kernels agree on every coefficient.
    Projected,
}

/// Tuning knobs for the convolution engine. None of them change results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Products of length at most `cutoff` are computed by cross products.
    /// `1` gives pure Karatsuba down to single coefficients.
    pub cutoff: usize,
    pub kernel: LeafKernel,
    /// Worker threads for independent segment products.
    pub threads: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            cutoff: 4,
            kernel: LeafKernel::Projected,
            threads: 1,
        }
    }
}

impl EngineConfig {
    /// Pure recursion to `k = 1` with the table kernel.
    pub fn pure() -> Self {
        EngineConfig {
            cutoff: 1,
            kernel: LeafKernel::Table,
            threads: 1,
        }
    }
}

trait Leaf: Sync {
    fn eval(&self, u: &[i64], w: &[i64]) -> i64;
}

struct TableLeaf<'a>(&'a ScoreTable);

impl Leaf for TableLeaf<'_> {
    fn eval(&self, u: &[i64], w: &[i64]) -> i64 {
        let mut acc = 0;
        for (r, &ur) in u.iter().enumerate() {
            if ur != 0 {
                let row: i64 = self.0.row(r).iter().zip(w).map(|(t, x)| t * x).sum();
                acc += ur * row;
            }
        }
        acc
    }
}

struct DotLeaf;

impl Leaf for DotLeaf {
    #[inline]
    fn eval(&self, u: &[i64], w: &[i64]) -> i64 {
        u.iter().zip(w).map(|(a, b)| a * b).sum()
    }
}

struct Kam<'a, L> {
    da: usize,
    db: usize,
    cutoff: usize,
    leaf: &'a L,
    text_limit: i64,
    stats: EngineStats,
}

impl<L: Leaf> Kam<'_, L> {
    fn scratch_len(&self, k: usize) -> usize {
        k * (self.da + self.db) + 2 * k
    }

    /// Writes the `2k - 1` product coefficients of `a` and `b` (each `k`
    /// coefficients long) into `out`.
    fn mul(&mut self, a: &[i64], b: &[i64], k: usize, out: &mut [i64], scratch: &mut [i64]) {
        debug_assert_eq!(a.len(), k * self.da);
        debug_assert_eq!(b.len(), k * self.db);
        debug_assert_eq!(out.len(), 2 * k - 1);

        if k <= self.cutoff {
            self.cross(a, b, k, out);
            return;
        }

        let h = k / 2;
        let (a_lo, a_hi) = a.split_at(h * self.da);
        let (b_lo, b_hi) = b.split_at(h * self.db);
        let (r1, rest) = scratch.split_at_mut(h * self.da);
        let (r2, rest) = rest.split_at_mut(h * self.db);
        let (t3, rest) = rest.split_at_mut(2 * h - 1);

        {
            let (low, high) = out.split_at_mut(2 * h - 1);
            self.mul(a_lo, b_lo, h, low, rest);
            high[0] = 0;
            self.mul(a_hi, b_hi, h, &mut high[1..], rest);
        }

        for ((r, &x), &y) in r1.iter_mut().zip(a_lo).zip(a_hi) {
            *r = x + y;
            debug_assert!(r.abs() <= self.text_limit);
        }
        for ((r, &x), &y) in r2.iter_mut().zip(b_lo).zip(b_hi) {
            *r = x + y;
        }
        self.stats.vector_additions += 2 * h as u64;
        self.mul(r1, r2, h, t3, rest);

        // t3 - t1 - t2, then shift by h and add into the outer terms.
        for (d, m) in t3.iter_mut().enumerate() {
            *m -= out[d] + out[2 * h + d];
        }
        for (d, &m) in t3.iter().enumerate() {
            out[h + d] += m;
        }
        self.stats.scalar_additions += (2 * (2 * h - 1) + 2 * (h - 1)) as u64;
    }

    fn cross(&mut self, a: &[i64], b: &[i64], k: usize, out: &mut [i64]) {
        out.fill(0);
        for (x, u) in a.chunks_exact(self.da).enumerate() {
            for (y, w) in b.chunks_exact(self.db).enumerate() {
                out[x + y] += self.leaf.eval(u, w);
            }
        }
        let k = k as u64;
        self.stats.leaf_products += k * k;
        self.stats.scalar_additions += k * k - (2 * k - 1);
    }
}

/// Multiplies two equal-length power-of-two vector polynomials (text side
/// times pattern side) with pure Karatsuba recursion and the table kernel.
/// Coefficient `d` of the result is `Σ_{i+i'=d} Ψ(A_i, B_i')`.
pub fn kam_multiply(
    a: &VectorPolynomial,
    b: &VectorPolynomial,
    t: &ScoreTable,
    stats: &mut EngineStats,
) -> Result<Vec<i64>> {
    kam_multiply_with(a, b, t, &EngineConfig::pure(), stats)
}

/// [`kam_multiply`] with an explicit cutoff and leaf kernel.
pub fn kam_multiply_with(
    a: &VectorPolynomial,
    b: &VectorPolynomial,
    t: &ScoreTable,
    config: &EngineConfig,
    stats: &mut EngineStats,
) -> Result<Vec<i64>> {
    if a.side != Side::Text || b.side != Side::Pattern {
        return Err(Error::InvalidModel(
            "expected a text-side and a pattern-side polynomial".into(),
        ));
    }
    check_dim(t.sigma_dim(), a.dim)?;
    check_dim(t.omega_dim(), b.dim)?;
    check_dim(a.len(), b.len())?;
    let k = a.len();
    if !k.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(k));
    }
    let bound = a.l1_total() * b.l1_total() * i128::from(t.max_abs().max(1));
    if bound >= i128::from(SCORE_BUDGET) {
        return Err(Error::Overflow(format!(
            "operand magnitudes allow intermediates up to {bound}"
        )));
    }
    let text_limit = a.l1_total() as i64;
    match config.kernel {
        LeafKernel::Table => Ok(run(
            &a.coeffs,
            &b.coeffs,
            k,
            a.dim,
            b.dim,
            config.cutoff,
            &TableLeaf(t),
            text_limit,
            stats,
        )),
        LeafKernel::Projected => {
            let projected = project(&b.coeffs, k, t);
            Ok(run(
                &a.coeffs,
                &projected,
                k,
                a.dim,
                a.dim,
                config.cutoff,
                &DotLeaf,
                text_limit,
                stats,
            ))
        }
    }
}

fn project(b: &[i64], k: usize, t: &ScoreTable) -> Vec<i64> {
    let mut out = vec![0; k * t.sigma_dim()];
    if t.omega_dim() == 0 {
        return out;
    }
    for (w, o) in b
        .chunks_exact(t.omega_dim())
        .zip(out.chunks_exact_mut(t.sigma_dim().max(1)))
    {
        t.project(w, o);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn run<L: Leaf>(
    a: &[i64],
    b: &[i64],
    k: usize,
    da: usize,
    db: usize,
    cutoff: usize,
    leaf: &L,
    text_limit: i64,
    stats: &mut EngineStats,
) -> Vec<i64> {
    let mut kam = Kam {
        da,
        db,
        cutoff: cutoff.max(1),
        leaf,
        text_limit,
        stats: EngineStats::default(),
    };
    let mut out = vec![0; 2 * k - 1];
    let mut scratch = vec![0; kam.scratch_len(k)];
    kam.mul(a, b, k, &mut out, &mut scratch);
    *stats += kam.stats;
    out
}

/// Scores of every alignment: `v[j] = Σ_i ψ(T[j + i], P[i])` for
/// `0 ≤ j ≤ n - m` (0-based here; reports are 1-based). Empty when the
/// pattern is longer than the text.
pub fn convolve_scores(
    text: &Text,
    pattern: &Pattern,
    t: &ScoreTable,
    config: &EngineConfig,
    stats: &mut EngineStats,
) -> Result<Vec<i64>> {
    let (n, m) = (text.n(), pattern.m());
    if n < m {
        return Ok(Vec::new());
    }
    check_dim(pattern.omega().len(), t.omega_dim())?;
    let sigma = t.sigma_dim();
    let bound = (m as i128) * (m as i128) * i128::from(t.max_abs().max(1));
    if bound >= i128::from(SCORE_BUDGET) {
        return Err(Error::Overflow(format!(
            "m^2 * max |score| = {bound} reaches 2^62"
        )));
    }

    let k = m.next_power_of_two();
    let q = n.div_ceil(m);
    let pat = pad_to_power_of_two(&pattern_polynomial(pattern));
    let (b, db) = match config.kernel {
        LeafKernel::Table => (pat.coeffs.clone(), pat.dim),
        LeafKernel::Projected => (project(&pat.coeffs, k, t), sigma),
    };
    let segment = |i: usize| -> (Vec<i64>, EngineStats) {
        let mut a = vec![0i64; k * sigma];
        let start = i * m;
        let end = (start + m).min(n);
        for (x, &r) in text.ranks()[start..end].iter().enumerate() {
            a[x * sigma + r as usize] = 1;
        }
        let mut s = EngineStats::default();
        let c = match config.kernel {
            LeafKernel::Table => run(
                &a,
                &b,
                k,
                sigma,
                db,
                config.cutoff,
                &TableLeaf(t),
                m as i64,
                &mut s,
            ),
            LeafKernel::Projected => run(
                &a,
                &b,
                k,
                sigma,
                db,
                config.cutoff,
                &DotLeaf,
                m as i64,
                &mut s,
            ),
        };
        (c, s)
    };

    let mut full = vec![0i64; q * m + m - 1];
    let mut add_segment = |i: usize, c: &[i64]| {
        for (slot, &x) in full[i * m..].iter_mut().zip(&c[..2 * m - 1]) {
            *slot += x;
        }
    };
    let mut run_stats = EngineStats::default();
    if config.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::Overflow(format!("cannot start worker threads: {e}")))?;
        let products: Vec<(Vec<i64>, EngineStats)> =
            pool.install(|| (0..q).into_par_iter().map(segment).collect());
        for (i, (c, s)) in products.iter().enumerate() {
            add_segment(i, c);
            run_stats += *s;
        }
    } else {
        for i in 0..q {
            let (c, s) = segment(i);
            add_segment(i, &c);
            run_stats += s;
        }
    }
    run_stats.segments = q as u64;
    *stats += run_stats;

    Ok(full[m - 1..n].to_vec())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EngineKind {
    #[default]
    Kam,
    Naive,
}

impl std::str::FromStr for EngineKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "kam" => Ok(EngineKind::Kam),
            "naive" => Ok(EngineKind::Naive),
            _ => Err(format!("unknown engine `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchOptions {
    pub engine: EngineKind,
    /// Report every alignment, not only the fitting ones.
    pub all_scores: bool,
    pub config: EngineConfig,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Score of every alignment, index `j - 1` for 1-based position `j`.
    pub scores: Vec<i64>,
    pub reports: Vec<MatchReport>,
    /// Present for the Karatsuba engine.
    pub stats: Option<EngineStats>,
}

/// Finds the alignments where `pattern` fits `text` under `model`.
pub fn search(
    text: &[u32],
    pattern: &Pattern,
    model: &ScoreModel,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    model.validate(pattern)?;
    let alphabet = build_alphabet(text, pattern.positions());
    let text = Text::new(text.to_vec(), &alphabet)?;
    let (scores, stats) = match opts.engine {
        EngineKind::Naive => (oracle::naive_scores(&text, pattern, model), None),
        EngineKind::Kam => {
            let table = build_score_table(model, &alphabet, pattern)?;
            let mut stats = EngineStats::default();
            let scores = convolve_scores(&text, pattern, &table, &opts.config, &mut stats)?;
            (scores, Some(stats))
        }
    };
    let reports = reports_from_scores(&scores, pattern.m(), model, opts.all_scores);
    Ok(SearchOutcome {
        scores,
        reports,
        stats,
    })
}

pub(crate) fn reports_from_scores(
    scores: &[i64],
    m: usize,
    model: &ScoreModel,
    all: bool,
) -> Vec<MatchReport> {
    scores
        .iter()
        .enumerate()
        .map(|(j, &score)| MatchReport {
            position: j + 1,
            score,
            verdict: model.verdict(score, m),
        })
        .filter(|r| all || r.verdict)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scoring::AssignmentTable;
    use crate::types::{Alphabet, CharacterClass, PatternPosition};

    fn pos(m: &[u32]) -> PatternPosition {
        PatternPosition::new(CharacterClass::new(m.iter().copied()).unwrap(), None)
    }

    fn table(rows: &[&[i64]]) -> ScoreTable {
        ScoreTable::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn poly(side: Side, dim: usize, vs: &[&[i64]]) -> VectorPolynomial {
        let vs: Vec<ScoreVector> = vs.iter().map(|v| ScoreVector(v.to_vec())).collect();
        VectorPolynomial::from_vectors(side, dim, &vs).unwrap()
    }

    #[test]
    fn leaf_product_basics() {
        let t = table(&[&[1, 2], &[3, 4]]);
        let unit = |i| ScoreVector::unit(2, i);
        assert_eq!(leaf_product(&unit(1), &unit(0), &t), Ok(3));
        assert_eq!(
            leaf_product(&ScoreVector(vec![1, 1]), &ScoreVector(vec![1, 0]), &t),
            Ok(1 + 3)
        );
        assert_eq!(leaf_product(&ScoreVector::zeros(2), &unit(1), &t), Ok(0));
        assert!(leaf_product(&ScoreVector::zeros(3), &unit(1), &t).is_err());
    }

    #[test]
    fn leaf_product_overflow() {
        let t = table(&[&[i64::MAX / 2]]);
        assert!(matches!(
            leaf_product(&ScoreVector(vec![3]), &ScoreVector(vec![1]), &t),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn padding() {
        let p = poly(Side::Text, 1, &[&[1], &[2], &[3], &[4], &[5]]);
        let q = pad_to_power_of_two(&p);
        assert_eq!(q.len(), 8);
        assert!((5..8).all(|i| q.coeff(i) == [0]));
        let p8 = pad_to_power_of_two(&q);
        assert_eq!(p8, q);
        let one = poly(Side::Text, 1, &[&[7]]);
        assert_eq!(pad_to_power_of_two(&one), one);
    }

    #[test]
    fn kam_base_case() {
        let t = table(&[&[5, 6]]);
        let a = poly(Side::Text, 1, &[&[2]]);
        let b = poly(Side::Pattern, 2, &[&[1, 1]]);
        let mut s = EngineStats::default();
        assert_eq!(kam_multiply(&a, &b, &t, &mut s).unwrap(), vec![22]);
        assert_eq!(s.leaf_products, 1);
    }

    #[test]
    fn kam_rejects_bad_lengths() {
        let t = table(&[&[1]]);
        let a = poly(Side::Text, 1, &[&[1], &[1], &[1]]);
        let b = poly(Side::Pattern, 1, &[&[1], &[1], &[1]]);
        let mut s = EngineStats::default();
        assert_eq!(
            kam_multiply(&a, &b, &t, &mut s),
            Err(Error::NotPowerOfTwo(3))
        );
        let b = poly(Side::Pattern, 1, &[&[1], &[1]]);
        assert!(kam_multiply(&a, &b, &t, &mut s).is_err());
        // Sides swapped.
        let a2 = poly(Side::Pattern, 1, &[&[1]]);
        let b2 = poly(Side::Text, 1, &[&[1]]);
        assert!(kam_multiply(&a2, &b2, &t, &mut s).is_err());
    }

    #[test]
    fn kam_rejects_capacity() {
        let t = table(&[&[1 << 40]]);
        let a = poly(Side::Text, 1, &[&[1 << 11], &[0]]);
        let b = poly(Side::Pattern, 1, &[&[1 << 11], &[0]]);
        let mut s = EngineStats::default();
        assert!(matches!(
            kam_multiply(&a, &b, &t, &mut s),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn leaf_count_for_k8() {
        let t = table(&[&[1]]);
        let a = poly(Side::Text, 1, &[&[1i64][..]; 8]);
        let b = poly(Side::Pattern, 1, &[&[1i64][..]; 8]);
        let mut s = EngineStats::default();
        let c = kam_multiply(&a, &b, &t, &mut s).unwrap();
        assert_eq!(s.leaf_products, 27);
        assert_eq!(c, vec![1, 2, 3, 4, 5, 6, 7, 8, 7, 6, 5, 4, 3, 2, 1]);
    }

    fn fixture() -> (Vec<u32>, Pattern) {
        (
            vec![0, 2, 1, 2],
            Pattern::new(vec![pos(&[0, 1]), pos(&[2])], None).unwrap(),
        )
    }

    #[test]
    fn exact_fixture_scores() {
        let (text, p) = fixture();
        let a = Alphabet::from_symbols([0, 1, 2]);
        let t = build_score_table(&ScoreModel::exact(), &a, &p).unwrap();
        let text = Text::new(text, &a).unwrap();
        for config in [EngineConfig::default(), EngineConfig::pure()] {
            let mut s = EngineStats::default();
            let v = convolve_scores(&text, &p, &t, &config, &mut s).unwrap();
            assert_eq!(v, vec![2, 0, 2]);
            assert_eq!(s.segments, 2);
        }
    }

    #[test]
    fn exact_fixture_search() {
        let (text, p) = fixture();
        let out = search(&text, &p, &ScoreModel::exact(), &SearchOptions::default()).unwrap();
        let positions: Vec<usize> = out.reports.iter().map(|r| r.position).collect();
        assert_eq!(positions, vec![1, 3]);
        assert_eq!(out.scores, vec![2, 0, 2]);

        let all = SearchOptions {
            all_scores: true,
            ..Default::default()
        };
        let out = search(&text, &p, &ScoreModel::exact(), &all).unwrap();
        assert_eq!(out.reports.len(), 3);
        assert!(!out.reports[1].verdict);
    }

    #[test]
    fn single_window() {
        let p = Pattern::new(vec![pos(&[1]), pos(&[2, 3]), pos(&[0])], None).unwrap();
        let out = search(
            &[1, 3, 2],
            &p,
            &ScoreModel::exact(),
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(out.scores, vec![2]);
    }

    #[test]
    fn pattern_longer_than_text() {
        let p = Pattern::new(vec![pos(&[1]), pos(&[1])], None).unwrap();
        let out = search(&[1], &p, &ScoreModel::exact(), &SearchOptions::default()).unwrap();
        assert!(out.scores.is_empty() && out.reports.is_empty());
        let out = search(&[], &p, &ScoreModel::exact(), &SearchOptions::default()).unwrap();
        assert!(out.scores.is_empty());
    }

    #[test]
    fn truncated_with_b_at_max_reports_everything() {
        let tau = 2;
        let positions = vec![pos(&[0]), pos(&[9]), pos(&[4, 5])];
        let p = Pattern::new(positions, Some(tau)).unwrap();
        let text = [0, 3, 7, 9, 1, 1, 2, 8];
        let model = ScoreModel::truncated_l1(Some(tau), 3 * tau);
        let out = search(&text, &p, &model, &SearchOptions::default()).unwrap();
        assert_eq!(out.reports.len(), text.len() - 2);
    }

    #[test]
    fn table_model_with_negative_scores() {
        let p = Pattern::new(vec![pos(&[0]), pos(&[1])], None).unwrap();
        let tab = AssignmentTable::parse("0,0,-2\n1,1,-3\n1,0,4").unwrap();
        let model = ScoreModel::table(tab, 0);
        let text = [0, 1, 1, 0];
        let out = search(&text, &p, &model, &SearchOptions::default()).unwrap();
        assert_eq!(out.scores, vec![-5, 1, 4]);
        assert_eq!(out.reports.len(), 1);
    }

    #[test]
    fn threads_do_not_change_scores() {
        let p = Pattern::new(vec![pos(&[0, 2]), pos(&[1]), pos(&[2])], None).unwrap();
        let text: Vec<u32> = (0..200).map(|i| (i * 7 % 3) as u32).collect();
        let one = search(&text, &p, &ScoreModel::exact(), &SearchOptions::default()).unwrap();
        let mut opts = SearchOptions::default();
        opts.config.threads = 4;
        let four = search(&text, &p, &ScoreModel::exact(), &opts).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn stats_serialize_with_fixed_keys() {
        let s = EngineStats {
            leaf_products: 1,
            vector_additions: 2,
            scalar_additions: 3,
            segments: 4,
        };
        let json = serde_json::to_value(s).unwrap();
        let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 4, "unexpected keys: {keys:?}");
        for k in [
            "leaf_products",
            "vector_additions",
            "scalar_additions",
            "segments",
        ] {
            assert!(json.get(k).is_some(), "{k}");
        }
    }
}
