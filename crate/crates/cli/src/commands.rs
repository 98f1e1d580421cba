use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use modsearch::instance::{
    random_instance, random_positions, random_text, InstanceParams, SUITE_PATTERN_LENGTHS,
};
use modsearch::{
    naive_search, search, AssignmentTable, EngineConfig, EngineKind, Error, LeafKernel, ModelKind,
    Pattern, ScoreModel, SearchOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::args::{BenchArgs, Cli, Command, GenArgs, ModelArgs, SearchArgs, VerifyArgs};
use crate::formats::{parse_pattern, parse_text, write_pattern, write_text};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("input: {0}")]
    Input(String),
    #[error("capacity: {0}")]
    Capacity(String),
    #[error("verification failed: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Mismatch(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Overflow(_) => CliError::Capacity(e.to_string()),
            Error::InvalidModel(_) => CliError::Usage(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// Runs one command and returns what it prints on stdout.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Search(a) => cmd_search(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Bench(a) => cmd_bench(&a),
        Command::Gen(a) => cmd_gen(&a),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path) -> impl Fn(Error) -> CliError + '_ {
    move |e| match e {
        Error::InputFormat { .. } => CliError::Input(format!("{}: {e}", path.display())),
        other => other.into(),
    }
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Flag checks that need no file contents.
fn check_model_flags(args: &ModelArgs) -> Result<(), CliError> {
    let kind = args.model;
    if kind != ModelKind::Exact && args.b.is_none() {
        return Err(CliError::Usage(format!(
            "--b is required for --model {kind}"
        )));
    }
    if kind == ModelKind::Table && args.table.is_none() {
        return Err(CliError::Usage(
            "--table is required for --model table".into(),
        ));
    }
    if kind != ModelKind::Table && args.table.is_some() {
        return Err(CliError::Usage(
            "--table only applies to --model table".into(),
        ));
    }
    Ok(())
}

fn load_model(args: &ModelArgs) -> Result<ScoreModel, CliError> {
    let table = match &args.table {
        Some(path) => Some(AssignmentTable::parse(&read(path)?).map_err(in_file(path))?),
        None => None,
    };
    Ok(ScoreModel::new(args.model, args.tau, args.b, table))
}

fn engine_config(threads: usize, cutoff: usize) -> Result<EngineConfig, CliError> {
    if threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    if cutoff == 0 {
        return Err(CliError::Usage("--cutoff must be at least 1".into()));
    }
    Ok(EngineConfig {
        cutoff,
        kernel: LeafKernel::Projected,
        threads,
    })
}

pub fn cmd_search(args: &SearchArgs) -> Result<String, CliError> {
    check_model_flags(&args.model)?;
    let config = engine_config(args.engine.threads, args.engine.cutoff)?;
    let model = load_model(&args.model)?;
    let positions = parse_pattern(&read(&args.pattern)?).map_err(in_file(&args.pattern))?;
    let text = parse_text(&read(&args.text)?).map_err(in_file(&args.text))?;
    let pattern = Pattern::new(positions, model.global_tau())?;

    let opts = SearchOptions {
        engine: args.engine.engine,
        all_scores: args.all_scores,
        config,
    };
    let outcome = search(&text, &pattern, &model, &opts)?;

    let mut out = String::new();
    if args.json {
        out.push_str(&serde_json::to_string(&outcome.reports).expect("reports serialize"));
        out.push('\n');
        if args.stats {
            let stats = serde_json::json!({ "stats": outcome.stats });
            out.push_str(&stats.to_string());
            out.push('\n');
        }
    } else {
        for r in &outcome.reports {
            if args.all_scores {
                writeln!(out, "{} {} {}", r.position, r.score, r.verdict).unwrap();
            } else {
                writeln!(out, "{} {}", r.position, r.score).unwrap();
            }
        }
        if args.stats {
            match outcome.stats {
                Some(s) => writeln!(
                    out,
                    "# stats leaf_products={} vector_additions={} scalar_additions={} segments={}",
                    s.leaf_products, s.vector_additions, s.scalar_additions, s.segments
                )
                .unwrap(),
                None => out.push_str("# stats unavailable for the naive engine\n"),
            }
        }
    }
    Ok(out)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<String, CliError> {
    let config = engine_config(args.threads, args.cutoff)?;
    if args.cases == 0 {
        return Ok("0 cases: nothing to verify\n".into());
    }
    let mut master = ChaCha8Rng::seed_from_u64(args.seed);
    let mut total = 0usize;
    for kind in ModelKind::ALL {
        for case in 0..args.cases {
            let case_seed: u64 = master.random();
            let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
            let m = SUITE_PATTERN_LENGTHS[rng.random_range(0..SUITE_PATTERN_LENGTHS.len())];
            let params = InstanceParams {
                n_max: args.n_max,
                m,
                sigma: args.sigma,
                ..Default::default()
            };
            let inst = random_instance(&mut rng, kind, &params);
            let pattern = inst.pattern()?;
            let (expected, _) = naive_search(&inst.text, &pattern, &inst.model)?;
            let opts = SearchOptions {
                config,
                ..Default::default()
            };
            let mut got = search(&inst.text, &pattern, &inst.model, &opts)?.scores;
            if args.inject_fault {
                if let Some(last) = got.last_mut() {
                    *last += 1;
                }
            }
            if got != expected {
                let at = got
                    .iter()
                    .zip(&expected)
                    .position(|(a, b)| a != b)
                    .unwrap_or(0);
                let mut msg = format!(
                    "model {kind}, case {case}, seed {}, case seed {case_seed}: position {} engine {} oracle {}\n",
                    args.seed,
                    at + 1,
                    got.get(at).copied().unwrap_or_default(),
                    expected.get(at).copied().unwrap_or_default(),
                );
                writeln!(
                    msg,
                    "tau={:?} b={:?}",
                    inst.model.global_tau(),
                    inst.model.b()
                )
                .unwrap();
                msg.push_str("text:\n");
                msg.push_str(&write_text(&inst.text));
                msg.push_str("pattern:\n");
                msg.push_str(&write_pattern(&inst.positions));
                if let Some(t) = inst.model.assignment() {
                    msg.push_str("table:\n");
                    msg.push_str(&t.to_file_string());
                }
                return Err(CliError::Mismatch(msg));
            }
            total += 1;
        }
    }
    Ok(format!(
        "{total} cases ({} per model, seed {}): engine matches oracle\n",
        args.cases, args.seed
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub segments: u64,
    pub leaf_products: u64,
    pub vector_additions: u64,
    pub scalar_additions: u64,
    pub leaf_per_segment: u64,
    /// Leaves per segment relative to the previous row.
    pub leaf_ratio: Option<f64>,
    pub kam_ms: f64,
    pub naive_ms: Option<f64>,
}

pub fn bench_rows(args: &BenchArgs) -> Result<Vec<BenchRow>, CliError> {
    check_model_flags(&args.model)?;
    let config = engine_config(args.threads, args.cutoff)?;
    if args.m.contains(&0) || args.sigma == 0 || args.max_class == 0 {
        return Err(CliError::Usage(
            "m, sigma and max-class must be positive".into(),
        ));
    }
    let table = match &args.model.table {
        Some(path) => Some(AssignmentTable::parse(&read(path)?).map_err(in_file(path))?),
        None => None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut rows: Vec<BenchRow> = Vec::new();
    for &m in &args.m {
        let n = args.n.unwrap_or(args.segments * m);
        let text = random_text(&mut rng, n, args.sigma);
        let positions = random_positions(&mut rng, m, args.sigma, args.max_class, None);
        let model = ScoreModel::new(
            args.model.model,
            args.model.tau,
            args.model.b,
            table.clone(),
        );
        let pattern = Pattern::new(positions, model.global_tau())?;

        let opts = SearchOptions {
            config,
            ..Default::default()
        };
        let start = Instant::now();
        let outcome = search(&text, &pattern, &model, &opts)?;
        let kam_ms = start.elapsed().as_secs_f64() * 1e3;
        let naive_ms = if args.skip_naive {
            None
        } else {
            let opts = SearchOptions {
                engine: EngineKind::Naive,
                ..Default::default()
            };
            let start = Instant::now();
            let naive = search(&text, &pattern, &model, &opts)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            if naive.scores != outcome.scores {
                return Err(CliError::Mismatch(format!(
                    "engines disagree at n={n}, m={m}"
                )));
            }
            Some(ms)
        };
        let stats = outcome.stats.unwrap_or_default();
        let leaf_per_segment = stats.leaf_products.checked_div(stats.segments).unwrap_or(0);
        let leaf_ratio = rows
            .last()
            .filter(|p| p.leaf_per_segment > 0)
            .map(|p| leaf_per_segment as f64 / p.leaf_per_segment as f64);
        rows.push(BenchRow {
            n,
            m,
            segments: stats.segments,
            leaf_products: stats.leaf_products,
            vector_additions: stats.vector_additions,
            scalar_additions: stats.scalar_additions,
            leaf_per_segment,
            leaf_ratio,
            kam_ms,
            naive_ms,
        });
    }
    Ok(rows)
}

pub fn cmd_bench(args: &BenchArgs) -> Result<String, CliError> {
    let rows = bench_rows(args)?;
    if args.json {
        return Ok(serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n");
    }
    let mut out = format!(
        "{:>9} {:>6} {:>9} {:>14} {:>12} {:>7} {:>14} {:>14} {:>11} {:>11}\n",
        "n",
        "m",
        "segments",
        "leaf_products",
        "leaf/seg",
        "ratio",
        "vector_adds",
        "scalar_adds",
        "kam_ms",
        "naive_ms"
    );
    for r in &rows {
        let ratio = r.leaf_ratio.map_or("-".to_string(), |x| format!("{x:.3}"));
        let naive = r.naive_ms.map_or("-".to_string(), |x| format!("{x:.1}"));
        writeln!(
            out,
            "{:>9} {:>6} {:>9} {:>14} {:>12} {:>7} {:>14} {:>14} {:>11.1} {:>11}",
            r.n,
            r.m,
            r.segments,
            r.leaf_products,
            r.leaf_per_segment,
            ratio,
            r.vector_additions,
            r.scalar_additions,
            r.kam_ms,
            naive
        )
        .unwrap();
    }
    Ok(out)
}

pub fn cmd_gen(args: &GenArgs) -> Result<String, CliError> {
    if args.m == 0 || args.sigma == 0 || args.max_class == 0 {
        return Err(CliError::Usage(
            "m, sigma and max-class must be positive".into(),
        ));
    }
    if args.table.is_some() && args.model != ModelKind::Table {
        return Err(CliError::Usage(
            "--table only applies to --model table".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let text = random_text(&mut rng, args.n, args.sigma);
    let positions = random_positions(
        &mut rng,
        args.m,
        args.sigma,
        args.max_class,
        args.private_bounds,
    );
    write(&args.text, &write_text(&text))?;
    write(&args.pattern, &write_pattern(&positions))?;
    let mut msg = format!(
        "wrote {} symbols to {} and {} positions to {}\n",
        text.len(),
        args.text.display(),
        positions.len(),
        args.pattern.display()
    );
    if let Some(path) = &args.table {
        // Class indices follow the pattern's distinct classes; private
        // bounds are resolved without a global bound.
        let omega = Pattern::new(positions, None)?.omega().len();
        let mut table = AssignmentTable::new();
        for c in 0..args.sigma {
            for s in 0..omega {
                if rng.random_bool(0.5) {
                    table.insert(c, s, rng.random_range(-8..=8))?;
                }
            }
        }
        write(path, &table.to_file_string())?;
        writeln!(
            msg,
            "wrote {} table entries to {}",
            table.len(),
            path.display()
        )
        .unwrap();
    }
    Ok(msg)
}
