//! Line-oriented text formats.
//!
//! Blank lines and lines starting with `#` are ignored everywhere.

use std::fmt::Write as _;
use std::path::Path;

use incdfs::{DfsTree, Graph, Update, VertexId};

use crate::CliError;

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn bad(path: &Path, line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse { path: path.display().to_string(), line, msg: msg.into() }
}

fn numbers<const K: usize>(path: &Path, line: usize, fields: &[&str]) -> Result<[usize; K], CliError> {
    if fields.len() != K {
        return Err(bad(path, line, format!("expected {K} fields, found {}", fields.len())));
    }
    let mut out = [0; K];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f.parse().map_err(|_| bad(path, line, format!("`{f}` is not a vertex count or id")))?;
    }
    Ok(out)
}

/// Header `n m`, then `m` lines `u v`.
pub fn parse_graph(path: &Path, text: &str) -> Result<Graph, CliError> {
    let mut it = lines(text);
    let (line, header) = it.next().ok_or_else(|| bad(path, 1, "missing `n m` header"))?;
    let fields: Vec<_> = header.split_whitespace().collect();
    let [n, m] = numbers(path, line, &fields)?;
    let mut g = Graph::new(n);
    let mut seen = 0;
    for (line, body) in it {
        let fields: Vec<_> = body.split_whitespace().collect();
        let [u, v] = numbers(path, line, &fields)?;
        if seen == m {
            return Err(bad(path, line, format!("more than the {m} declared edges")));
        }
        g.add_edge(u, v).map_err(|e| bad(path, line, e.to_string()))?;
        seen += 1;
    }
    if seen != m {
        return Err(bad(path, text.lines().count().max(1), format!("declared {m} edges, found {seen}")));
    }
    Ok(g)
}

/// An update together with the line it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub update: Update,
}

/// One `E u v` or `V` per line. Ids are checked later, against the stream.
pub fn parse_updates(path: &Path, text: &str) -> Result<Vec<Entry>, CliError> {
    let mut out = Vec::new();
    for (line, body) in lines(text) {
        let fields: Vec<_> = body.split_whitespace().collect();
        let update = match fields[0] {
            "V" if fields.len() == 1 => Update::Vertex,
            "E" => {
                let [u, v] = numbers(path, line, &fields[1..])?;
                Update::Edge(u, v)
            }
            _ => return Err(bad(path, line, format!("unknown update `{body}`"))),
        };
        out.push(Entry { line, update });
    }
    Ok(out)
}

/// Lines `v p`, one per vertex, with `p = -1` under the super root.
pub fn parse_tree(path: &Path, text: &str) -> Result<Vec<Option<VertexId>>, CliError> {
    let mut parents: Vec<Option<Option<VertexId>>> = Vec::new();
    for (line, body) in lines(text) {
        let fields: Vec<_> = body.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(bad(path, line, format!("expected 2 fields, found {}", fields.len())));
        }
        let v: usize = fields[0].parse().map_err(|_| bad(path, line, format!("`{}` is not a vertex id", fields[0])))?;
        let p = match fields[1] {
            "-1" => None,
            f => Some(f.parse().map_err(|_| bad(path, line, format!("`{f}` is not a parent id")))?),
        };
        if v >= parents.len() {
            parents.resize(v + 1, None);
        }
        if parents[v].replace(p).is_some() {
            return Err(bad(path, line, format!("vertex {v} listed twice")));
        }
    }
    parents
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| bad(path, text.lines().count().max(1), format!("vertex {v} has no line"))))
        .collect()
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

pub fn write_updates(updates: &[Update]) -> String {
    let mut s = String::new();
    for u in updates {
        match u {
            Update::Edge(a, b) => writeln!(s, "E {a} {b}").unwrap(),
            Update::Vertex => s.push_str("V\n"),
        }
    }
    s
}

pub fn write_tree(t: &DfsTree) -> String {
    let mut s = String::new();
    for (v, p) in t.parents().into_iter().enumerate() {
        match p {
            Some(p) => writeln!(s, "{v} {p}").unwrap(),
            None => writeln!(s, "{v} -1").unwrap(),
        }
    }
    s
}

pub fn write_digest(t: &DfsTree) -> String {
    format!("{:016x}\n", t.digest())
}
