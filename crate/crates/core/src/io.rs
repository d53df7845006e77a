//! Text formats.
//!
//! Edge list:
//!
//! ```text
//! # optional comment lines
//! n 4
//! 0 1
//! 1 2
//! ```
//!
//! Weight function: a `k <k>` header followed by one value per vertex line.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::weights::WeightFunction;

pub const MAX_VERTICES: usize = 100_000;
pub const MAX_K: u32 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing header line `{0} <value>`")]
    MissingHeader(&'static str),
    #[error("line {line}: malformed header, expected `{expected} <value>`")]
    MalformedHeader { line: usize, expected: &'static str },
    #[error("line {line}: expected two vertex indices")]
    MalformedEdge { line: usize },
    #[error("line {line}: vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: Vertex },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: Vertex, v: Vertex },
    #[error("line {line}: malformed value")]
    MalformedValue { line: usize },
    #[error("line {line}: value {value} exceeds k = {k}")]
    ValueAboveK { line: usize, value: u64, k: u32 },
    #[error("{what} {value} exceeds the cap {cap}")]
    TooLarge {
        what: &'static str,
        value: u64,
        cap: u64,
    },
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(line: usize, text: &str, key: &'static str) -> Result<u64, ParseError> {
    let mut parts = text.split_whitespace();
    match (parts.next(), parts.next().map(str::parse::<u64>), parts.next()) {
        (Some(k), Some(Ok(value)), None) if k == key => Ok(value),
        _ => Err(ParseError::MalformedHeader {
            line,
            expected: key,
        }),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(ParseError::MissingHeader("n"))?;
    let n = parse_header(line, header, "n")?;
    if n > MAX_VERTICES as u64 {
        return Err(ParseError::TooLarge {
            what: "vertex count",
            value: n,
            cap: MAX_VERTICES as u64,
        });
    }
    let n = n as usize;
    let mut seen: Vec<FixedBitSet> = Vec::new();
    let mut edges = Vec::new();
    for (line, text) in lines {
        let mut parts = text.split_whitespace().map(str::parse::<usize>);
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => (u, v),
            _ => return Err(ParseError::MalformedEdge { line }),
        };
        for w in [u, v] {
            if w >= n {
                return Err(ParseError::VertexOutOfRange {
                    line,
                    vertex: w,
                    vertex_count: n,
                });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        if seen.is_empty() {
            seen = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        }
        if seen[u].contains(v) {
            return Err(ParseError::DuplicateEdge {
                line,
                u: u.min(v),
                v: u.max(v),
            });
        }
        seen[u].insert(v);
        seen[v].insert(u);
        edges.push((u, v));
    }
    Ok(Graph::from_edges(n, edges).expect("edges validated while parsing"))
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_weights(text: &str) -> Result<WeightFunction, ParseError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(ParseError::MissingHeader("k"))?;
    let k = parse_header(line, header, "k")?;
    if k == 0 {
        return Err(ParseError::MalformedHeader {
            line,
            expected: "k",
        });
    }
    if k > MAX_K as u64 {
        return Err(ParseError::TooLarge {
            what: "k",
            value: k,
            cap: MAX_K as u64,
        });
    }
    let k = k as u32;
    let mut values = Vec::new();
    for (line, text) in lines {
        let value: u64 = text
            .parse()
            .map_err(|_| ParseError::MalformedValue { line })?;
        if value > k as u64 {
            return Err(ParseError::ValueAboveK { line, value, k });
        }
        values.push(value as u32);
        if values.len() > MAX_VERTICES {
            return Err(ParseError::TooLarge {
                what: "vertex count",
                value: values.len() as u64,
                cap: MAX_VERTICES as u64,
            });
        }
    }
    Ok(WeightFunction::new(values, k).expect("values checked against k"))
}

pub fn serialize_weights(f: &WeightFunction) -> String {
    let mut out = format!("k {}\n", f.k());
    for v in f.values() {
        let _ = writeln!(out, "{v}");
    }
    out
}
