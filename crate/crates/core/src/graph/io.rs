use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Graph, Vertex, Weight};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    /// `u v w` per line, `#` comments, 0-based ids.
    EdgeList,
    /// `p sp n m` header and `a u v w` arcs, 1-based ids, `c` comments.
    DimacsGr,
}

impl FromStr for GraphFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" | "el" => Ok(GraphFormat::EdgeList),
            "dimacs-gr" | "dimacs" | "gr" => Ok(GraphFormat::DimacsGr),
            other => Err(Error::domain(format!("unknown graph format '{other}'"))),
        }
    }
}

pub fn load_graph(path: impl AsRef<Path>, format: GraphFormat, directed: bool) -> Result<Graph> {
    let text = fs::read_to_string(path)?;
    parse_graph(&text, format, directed)
}

pub fn parse_graph(text: &str, format: GraphFormat, directed: bool) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text, directed),
        GraphFormat::DimacsGr => parse_dimacs(text, directed),
    }
}

/// Writes the canonical edge-list form. Output is byte-identical for equal graphs.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!(
        "# graph n={} directed={} m={}\n",
        g.n(),
        g.is_directed(),
        g.m()
    );
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.u, e.v, e.w);
    }
    out
}

fn parse_edge_list(text: &str, directed: bool) -> Result<Graph> {
    let mut declared_n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<Vertex> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(n) = header_n(comment) {
                declared_n = Some(n);
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(line_no, format!("expected 'u v w', got '{line}'")));
        }
        let u = parse_field::<Vertex>(fields[0], line_no, "vertex")?;
        let v = parse_field::<Vertex>(fields[1], line_no, "vertex")?;
        let w = parse_weight(fields[2], line_no)?;
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v, w));
    }
    let inferred = max_id.map_or(0, |m| m + 1);
    let n = match declared_n {
        Some(n) if n < inferred => {
            return Err(Error::domain(format!(
                "header declares n={n} but vertex {} appears",
                inferred - 1
            )))
        }
        Some(n) => n,
        None => inferred,
    };
    if n == 0 {
        return Err(Error::domain("graph has no vertices"));
    }
    Graph::new(n, directed, edges)
}

fn header_n(comment: &str) -> Option<usize> {
    let mut words = comment.split_whitespace();
    if words.next()? != "graph" {
        return None;
    }
    words
        .find_map(|w| w.strip_prefix("n="))
        .and_then(|n| n.parse().ok())
}

fn parse_dimacs(text: &str, directed: bool) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if fields.len() != 4 || fields[1] != "sp" {
                    return Err(parse_err(line_no, "expected 'p sp n m'"));
                }
                if n.is_some() {
                    return Err(parse_err(line_no, "duplicate problem line"));
                }
                n = Some(parse_field(fields[2], line_no, "vertex count")?);
                parse_field::<usize>(fields[3], line_no, "arc count")?;
            }
            "a" => {
                let count = n.ok_or_else(|| parse_err(line_no, "arc before 'p sp' line"))?;
                if fields.len() != 4 {
                    return Err(parse_err(line_no, "expected 'a u v w'"));
                }
                let u: usize = parse_field(fields[1], line_no, "vertex")?;
                let v: usize = parse_field(fields[2], line_no, "vertex")?;
                if u == 0 || v == 0 || u > count || v > count {
                    return Err(parse_err(line_no, format!("vertex out of range 1..={count}")));
                }
                let w = parse_weight(fields[3], line_no)?;
                edges.push((u - 1, v - 1, w));
            }
            other => return Err(parse_err(line_no, format!("unknown line type '{other}'"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing 'p sp n m' line"))?;
    if n == 0 {
        return Err(Error::domain("graph has no vertices"));
    }
    Graph::new(n, directed, edges)
}

fn parse_field<T: FromStr>(s: &str, line: usize, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} '{s}'")))
}

fn parse_weight(s: &str, line: usize) -> Result<Weight> {
    let w: i128 = parse_field(s, line, "weight")?;
    if w < 0 {
        return Err(Error::domain(format!("negative weight {w} at line {line}")));
    }
    Weight::try_from(w).map_err(|_| parse_err(line, format!("weight {w} too large")))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
