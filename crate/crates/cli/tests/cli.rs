use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use modsearch::{CharacterClass, PatternPosition};
use modsearch_cli::formats::{parse_pattern, parse_text};
use tempfile::TempDir;

fn modsearch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modsearch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new(text: &str, pattern: &str) -> Self {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("text"), text).unwrap();
        fs::write(dir.path().join("pattern"), pattern).unwrap();
        Fixture { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.path(name);
        fs::write(&p, contents).unwrap();
        p
    }

    fn search(&self, extra: &[&str]) -> Output {
        let text = self.path("text");
        let pattern = self.path("pattern");
        let mut args = vec![
            "search",
            "--text",
            text.to_str().unwrap(),
            "--pattern",
            pattern.to_str().unwrap(),
        ];
        args.extend_from_slice(extra);
        modsearch(&args)
    }
}

fn exact_fixture() -> Fixture {
    Fixture::new("0 2 1 2\n", "# classes\n0,1\n2\n")
}

#[test]
fn search_exact_fixture() {
    let f = exact_fixture();
    let out = f.search(&[]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "1 2\n3 2\n");
}

#[test]
fn engines_produce_identical_bytes() {
    let f = exact_fixture();
    let kam = f.search(&["--engine", "kam", "--all-scores"]);
    let naive = f.search(&["--engine", "naive", "--all-scores"]);
    assert_eq!(kam.stdout, naive.stdout);
    assert_eq!(stdout(&kam), "1 2 true\n2 0 false\n3 2 true\n");
}

#[test]
fn json_output() {
    let f = exact_fixture();
    let out = f.search(&["--json", "--stats"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    let reports: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(
        reports,
        serde_json::json!([
            {"pos": 1, "score": 2, "verdict": true},
            {"pos": 3, "score": 2, "verdict": true}
        ])
    );
    let stats: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(stats["stats"]["segments"], 2);
    for key in ["leaf_products", "vector_additions", "scalar_additions"] {
        assert!(stats["stats"][key].is_u64(), "{key}");
    }
}

#[test]
fn zero_matches_exit_zero() {
    let f = Fixture::new("5 5 5", "6\n");
    let out = f.search(&[]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "");
}

#[test]
fn malformed_pattern_is_input_error() {
    let f = Fixture::new("1 2 3", "1\n3,,5\n");
    let out = f.search(&[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn malformed_text_is_input_error() {
    let f = Fixture::new("1 2 three", "1\n");
    assert_eq!(f.search(&[]).status.code(), Some(2));
}

#[test]
fn missing_file_is_input_error() {
    let out = modsearch(&[
        "search",
        "--text",
        "/nonexistent/t",
        "--pattern",
        "/nonexistent/p",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    let f = exact_fixture();
    // Missing b for an at-most-b model is caught before reading files.
    let out = modsearch(&[
        "search",
        "--text",
        "/nonexistent",
        "--pattern",
        "/nonexistent",
        "--model",
        "trunc-l1",
        "--tau",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    // Missing tau when some position has no private bound.
    assert_eq!(
        f.search(&["--model", "bounded-l1", "--b", "3"])
            .status
            .code(),
        Some(1)
    );
    // Table model without a table.
    assert_eq!(
        f.search(&["--model", "table", "--b", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(f.search(&["--model", "nope"]).status.code(), Some(1));
    assert_eq!(modsearch(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(f.search(&["--threads", "0"]).status.code(), Some(1));
}

#[test]
fn private_bounds_replace_global_tau() {
    let f = Fixture::new("5 9 4 5", "5@1\n5@0\n");
    let out = f.search(&["--model", "bounded-l1", "--b", "1", "--all-scores"]);
    assert!(out.status.success(), "{}", stderr(&out));
    // 5|9: 0 + sentinel 2; 9|4: sentinel + sentinel; 4|5: 1 + 0.
    assert_eq!(stdout(&out), "1 2 false\n2 4 false\n3 1 true\n");
}

#[test]
fn truncated_model() {
    let f = Fixture::new("0 7 3 8", "3,8\n");
    let out = f.search(&[
        "--model",
        "trunc-l1",
        "--tau",
        "2",
        "--b",
        "1",
        "--all-scores",
    ]);
    assert_eq!(stdout(&out), "1 2 false\n2 1 true\n3 0 true\n4 0 true\n");
}

#[test]
fn table_model_and_table_errors() {
    let f = exact_fixture();
    let table = f.write("table", "# char,class,score\n0,0,3\n2,1,-1\n");
    let t = table.to_str().unwrap();
    let out = f.search(&["--model", "table", "--b", "2", "--table", t, "--all-scores"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "1 2 true\n2 0 true\n3 -1 true\n");

    let dup = f.write("dup", "0,0,3\n0,0,4\n");
    let out = f.search(&[
        "--model",
        "table",
        "--b",
        "2",
        "--table",
        dup.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"));

    let frac = f.write("frac", "0,0,1.5\n");
    let out = f.search(&[
        "--model",
        "table",
        "--b",
        "2",
        "--table",
        frac.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn capacity_rejection_exit_code() {
    let f = Fixture::new("0 0 0 0", "0\n0\n0\n0\n");
    let table = f.write("table", "0,0,2305843009213693952\n");
    let out = f.search(&[
        "--model",
        "table",
        "--b",
        "0",
        "--table",
        table.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn verify_default_passes() {
    let out = modsearch(&["verify"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("800 cases"));
}

#[test]
fn verify_detects_injected_fault() {
    let out = modsearch(&["verify", "--cases", "3", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(4));
    let err = stderr(&out);
    assert!(err.contains("case seed"), "{err}");
    assert!(err.contains("pattern:"), "{err}");
}

#[test]
fn verify_zero_cases() {
    let out = modsearch(&["verify", "--cases", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 cases"));
}

fn gen(dir: &Path, tag: &str, extra: &[&str]) -> (String, String) {
    let text = dir.join(format!("{tag}.txt"));
    let pattern = dir.join(format!("{tag}.pat"));
    let mut args = vec![
        "gen",
        "--text",
        text.to_str().unwrap(),
        "--pattern",
        pattern.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    let out = modsearch(&args);
    assert!(out.status.success(), "{}", stderr(&out));
    (
        fs::read_to_string(text).unwrap(),
        fs::read_to_string(pattern).unwrap(),
    )
}

#[test]
fn gen_is_deterministic_and_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--seed",
        "7",
        "--n",
        "100",
        "--m",
        "9",
        "--sigma",
        "16",
        "--private-bounds",
        "3",
    ];
    let a = gen(dir.path(), "a", &args);
    let b = gen(dir.path(), "b", &args);
    assert_eq!(a, b);
    let text = parse_text(&a.0).unwrap();
    assert_eq!(text.len(), 100);
    assert!(text.iter().all(|&c| c < 16));
    let pattern = parse_pattern(&a.1).unwrap();
    assert_eq!(pattern.len(), 9);
    assert_eq!(modsearch_cli::formats::write_pattern(&pattern), a.1);
}

#[test]
fn gen_singleton_classes() {
    let dir = tempfile::tempdir().unwrap();
    let (_, pat) = gen(
        dir.path(),
        "s",
        &["--n", "20", "--m", "6", "--max-class", "1"],
    );
    let pattern = parse_pattern(&pat).unwrap();
    assert!(pattern
        .iter()
        .all(|p| p.class.len() == 1 && p.local_bound.is_none()));
}

#[test]
fn gen_table_then_search() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t.tab");
    let (_, _) = gen(
        dir.path(),
        "g",
        &[
            "--n",
            "300",
            "--m",
            "7",
            "--model",
            "table",
            "--table",
            table.to_str().unwrap(),
        ],
    );
    let text = dir.path().join("g.txt");
    let pat = dir.path().join("g.pat");
    let run = |engine: &str| {
        modsearch(&[
            "search",
            "--text",
            text.to_str().unwrap(),
            "--pattern",
            pat.to_str().unwrap(),
            "--model",
            "table",
            "--b",
            "0",
            "--table",
            table.to_str().unwrap(),
            "--engine",
            engine,
            "--all-scores",
        ])
    };
    let (kam, naive) = (run("kam"), run("naive"));
    assert!(kam.status.success(), "{}", stderr(&kam));
    assert_eq!(kam.stdout, naive.stdout);
}

#[test]
fn gen_rejects_invalid_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t");
    let p = dir.path().join("p");
    let out = modsearch(&[
        "gen",
        "--n",
        "5",
        "--m",
        "0",
        "--text",
        t.to_str().unwrap(),
        "--pattern",
        p.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bench_leaf_ratio_and_base_case() {
    let out = modsearch(&[
        "bench",
        "--m",
        "16,32",
        "--segments",
        "3",
        "--cutoff",
        "1",
        "--json",
        "--skip-naive",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows[0]["leaf_per_segment"], 81);
    assert_eq!(rows[1]["leaf_ratio"], 3.0);
    assert_eq!(rows[1]["segments"], 3);

    let out = modsearch(&["bench", "--m", "1", "--n", "50", "--json"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows[0]["leaf_products"], 50);
    assert_eq!(rows[0]["segments"], 50);
    assert!(rows[0]["naive_ms"].is_f64());
}

#[test]
fn bench_table_output() {
    let out = modsearch(&["bench", "--m", "8,16", "--segments", "4"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.lines().next().unwrap().contains("leaf_products"));
    assert!(text.contains("3.000"), "{text}");
}

#[test]
fn roundtrip_in_memory_structures() {
    let positions = vec![
        PatternPosition::new(CharacterClass::new([4, 1]).unwrap(), Some(2)),
        PatternPosition::from(CharacterClass::singleton(0)),
    ];
    let src = modsearch_cli::formats::write_pattern(&positions);
    assert_eq!(src, "1,4@2\n0\n");
    assert_eq!(parse_pattern(&src).unwrap(), positions);
}
