use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use incdfs::static_dfs;
use incdfs_cli::format;
use tempfile::TempDir;

fn incdfs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_incdfs")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(TempDir::new().unwrap())
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    /// Runs a generator into `prefix.graph` and `prefix.updates`.
    fn generate(&self, prefix: &str, args: &[&str]) -> (PathBuf, PathBuf) {
        let (g, u) = (self.path(&format!("{prefix}.graph")), self.path(&format!("{prefix}.updates")));
        let mut all = vec!["gen", "--graph-out", s(&g), "--updates-out", s(&u)];
        all.extend_from_slice(args);
        let o = incdfs(&all);
        assert!(o.status.success(), "{}", stderr(&o));
        (g, u)
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn batch_closes_triangle() {
    let d = Dir::new();
    let g = d.file("g", "3 2\n0 1\n1 2\n");
    let u = d.file("u", "E 0 2\n");
    let o = incdfs(&["batch", "--graph", s(&g), "--updates", s(&u)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0 -1\n1 0\n2 1\n");
}

#[test]
fn empty_batch_is_static_tree() {
    let d = Dir::new();
    let (g, _) = d.generate("r", &["--gen", "random", "--n", "40", "--seed", "3"]);
    let u = d.file("u", "");
    let o = incdfs(&["batch", "--graph", s(&g), "--updates", s(&u), "--engine", "range"]);
    let graph = format::parse_graph(&g, &fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(stdout(&o), format::write_tree(&static_dfs(&graph)));
}

#[test]
fn engines_emit_same_hash() {
    let d = Dir::new();
    for seed in 0..5 {
        let (g, u) = d.generate("r", &["--gen", "random", "--n", "60", "--seed", &seed.to_string(), "--p", "0.08"]);
        let hashes: Vec<_> = ["brute", "dense", "range", "hybrid"]
            .iter()
            .map(|e| stdout(&incdfs(&["batch", "--graph", s(&g), "--updates", s(&u), "--engine", e, "--emit", "hash"])))
            .collect();
        assert_eq!(hashes[0].trim().len(), 16);
        assert!(hashes.windows(2).all(|w| w[0] == w[1]), "seed {seed}: {hashes:?}");
    }
}

#[test]
fn parse_errors_exit_2_with_line() {
    let d = Dir::new();
    let g = d.file("g", "3 2\n0 1\n1 x\n");
    let u = d.file("u", "");
    let o = incdfs(&["batch", "--graph", s(&g), "--updates", s(&u)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":3:"), "{}", stderr(&o));
}

#[test]
fn invalid_update_exits_3() {
    let d = Dir::new();
    let g = d.file("g", "3 1\n0 1\n");
    for text in ["E 0 3\n", "E 2 2\n", "E 0 1\nE 3 0\nV\n"] {
        let u = d.file("u", text);
        for cmd in ["batch", "stream"] {
            let o = incdfs(&[cmd, "--graph", s(&g), "--updates", s(&u)]);
            assert_eq!(o.status.code(), Some(3), "{cmd} {text:?}");
        }
    }
    let u = d.file("u", "V\nE 0 3\n");
    assert!(incdfs(&["batch", "--graph", s(&g), "--updates", s(&u)]).status.success());
}

#[test]
fn stream_prints_one_digest_per_update() {
    let d = Dir::new();
    let g = d.file("g", "3 0\n");
    let u = d.file("u", "E 0 1\nE 1 2\nE 0 2\n");
    let m = d.path("m.csv");
    let o = incdfs(&["stream", "--graph", s(&g), "--updates", s(&u), "--check", "--metrics", s(&m)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let lines: Vec<_> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 3);
    let batch = incdfs(&["batch", "--graph", s(&g), "--updates", s(&u), "--emit", "hash"]);
    assert_eq!(stdout(&batch).trim(), lines[2]);
    let csv = fs::read_to_string(&m).unwrap();
    let mut rows = csv.lines();
    assert_eq!(rows.next().unwrap(), incdfs_cli::METRICS_HEADER.join(","));
    assert_eq!(rows.count(), 3);
}

fn metric_column(csv: &str, name: &str) -> Vec<u64> {
    let mut rows = csv.lines();
    let header: Vec<_> = rows.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == name).unwrap();
    rows.map(|r| r.split(',').nth(col).unwrap().parse().unwrap()).collect()
}

#[test]
fn chain_stream_skips_range_queries() {
    let d = Dir::new();
    let (g, u) = d.generate("c", &["--gen", "chain", "--n", "2048"]);
    let m = d.path("m.csv");
    let o = incdfs(&["stream", "--graph", s(&g), "--updates", s(&u), "--engine", "hybrid", "--check", "--metrics", s(&m)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(&m).unwrap();
    assert!(metric_column(&csv, "queries_3b").iter().all(|&q| q == 0));
}

#[test]
fn broom_stream_work_is_linear() {
    let d = Dir::new();
    let n = 2048u64;
    let (g, u) = d.generate("b", &["--gen", "broom", "--n", &n.to_string()]);
    let m = d.path("m.csv");
    let o = incdfs(&["stream", "--graph", s(&g), "--updates", s(&u), "--engine", "hybrid", "--metrics", s(&m)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(&m).unwrap();
    assert!(metric_column(&csv, "report_work").iter().all(|&w| w <= 32 * n));
}

#[test]
fn gen_chain_five() {
    let o = incdfs(&["gen", "--gen", "chain", "--n", "5"]);
    assert_eq!(stdout(&o), "5 4\n0 1\n1 2\n2 3\n3 4\n# updates\nE 0 4\n");
}

#[test]
fn gen_broom_eight() {
    let d = Dir::new();
    let (g, u) = d.generate("b", &["--gen", "broom", "--n", "8"]);
    let text = fs::read_to_string(g).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("8 11"));
    let edges: Vec<_> = lines.collect();
    for leaf in 4..8 {
        assert!(edges.contains(&format!("3 {leaf}").as_str()));
        assert!(edges.contains(&format!("0 {leaf}").as_str()));
    }
    assert_eq!(fs::read_to_string(u).unwrap(), "E 0 3\n");
}

#[test]
fn gen_random_is_deterministic() {
    let args = ["gen", "--gen", "random", "--n", "64", "--seed", "7"];
    let (a, b) = (incdfs(&args), incdfs(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, incdfs(&["gen", "--gen", "random", "--n", "64", "--seed", "8"]).stdout);
}

#[test]
fn gen_rejects_bad_parameters() {
    for args in [&["gen", "--gen", "chain", "--n", "1"][..], &["gen", "--gen", "random", "--n", "9", "--p", "2"], &["gen", "--gen", "spiral", "--n", "9"]] {
        assert_eq!(incdfs(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn check_accepts_static_and_rejects_cross_edge() {
    let d = Dir::new();
    let (g, _) = d.generate("r", &["--gen", "random", "--n", "50", "--seed", "1"]);
    let graph = format::parse_graph(&g, &fs::read_to_string(&g).unwrap()).unwrap();
    let t = d.file("t", &format::write_tree(&static_dfs(&graph)));
    assert!(incdfs(&["check", "--graph", s(&g), "--tree", s(&t)]).status.success());

    let g = d.file("g", "3 2\n0 1\n0 2\n");
    let t = d.file("t", "0 -1\n1 0\n2 1\n");
    let o = incdfs(&["check", "--graph", s(&g), "--tree", s(&t)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("(1, 2)") || stderr(&o).contains("(2, 1)"), "{}", stderr(&o));
}

#[test]
fn cross_edge_is_named() {
    let d = Dir::new();
    let g = d.file("g", "3 2\n0 1\n1 2\n");
    let t = d.file("t", "0 -1\n1 0\n2 -1\n");
    let o = incdfs(&["check", "--graph", s(&g), "--tree", s(&t)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("edge (1, 2)"), "{}", stderr(&o));
}

#[test]
fn batch_output_round_trips_through_check() {
    let d = Dir::new();
    for (i, gen) in ["chain", "broom", "random"].iter().enumerate() {
        let (g, u) = d.generate(&format!("x{i}"), &["--gen", gen, "--n", "120", "--seed", "4"]);
        for engine in ["dense", "range", "hybrid"] {
            let o = incdfs(&["batch", "--graph", s(&g), "--updates", s(&u), "--engine", engine]);
            let t = d.file("t", &stdout(&o));
            let c = incdfs(&["check", "--graph", s(&g), "--tree", s(&t), "--updates", s(&u)]);
            assert!(c.status.success(), "{gen} {engine}: {}", stderr(&c));
        }
    }
}
