//! Plain-text edge lists.
//!
//! ```text
//! # optional comments
//! n m
//! u v      (m lines, 0 <= u < v < n)
//! ```
//!
//! Blank lines and lines starting with `#` are skipped. Files that use a
//! different header or 1-based ids can be read through [`EdgeListOptions`].

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

/// How the first data line of an edge list is interpreted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Header {
    /// `n m`; the edge count is checked.
    #[default]
    VertexAndEdgeCount,
    /// `n` only.
    VertexCount,
    /// No header; `n` is one more than the largest id seen.
    None,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EdgeListOptions {
    pub header: Header,
    /// Vertex ids in the file start at 1.
    pub one_based: bool,
    /// Store `v u` lines with `u < v` instead of rejecting them.
    pub allow_unordered: bool,
}

impl EdgeListOptions {
    /// Lenient settings for third-party instance files.
    pub fn lenient() -> Self {
        Self {
            header: Header::VertexAndEdgeCount,
            one_based: false,
            allow_unordered: true,
        }
    }
}

pub fn read_edge_list(text: &str) -> Result<Graph> {
    read_edge_list_with(text, EdgeListOptions::default())
}

pub fn read_edge_list_with(text: &str, opts: EdgeListOptions) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (declared_n, declared_m) = match opts.header {
        Header::None => (None, None),
        Header::VertexCount | Header::VertexAndEdgeCount => {
            let Some((line, l)) = lines.next() else {
                return Err(parse_err(1, "missing header"));
            };
            let fields = parse_fields(line, l)?;
            match (opts.header, fields.as_slice()) {
                (Header::VertexCount, [n]) => (Some(*n), None),
                (Header::VertexAndEdgeCount, [n, m]) => (Some(*n), Some(*m)),
                _ => return Err(parse_err(line, "malformed header")),
            }
        }
    };

    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut max_id = None;
    for (line, l) in lines {
        let fields = parse_fields(line, l)?;
        let [mut u, mut v] = fields.as_slice() else {
            return Err(parse_err(line, "expected two vertex ids"));
        };
        if opts.one_based {
            if u == 0 || v == 0 {
                return Err(parse_err(line, "vertex index out of range"));
            }
            u -= 1;
            v -= 1;
        }
        if u == v {
            return Err(parse_err(line, "self-loop"));
        }
        if u > v {
            if !opts.allow_unordered {
                return Err(parse_err(line, "edge endpoints must satisfy u < v"));
            }
            std::mem::swap(&mut u, &mut v);
        }
        if let Some(n) = declared_n {
            if v >= n {
                return Err(parse_err(line, "vertex index out of range"));
            }
        }
        if !seen.insert((u, v)) {
            return Err(parse_err(line, "duplicate edge"));
        }
        max_id = Some(max_id.map_or(v, |m: usize| m.max(v)));
        edges.push((u, v));
    }

    if let Some(m) = declared_m {
        if m != edges.len() {
            return Err(parse_err(
                0,
                &format!("header declares {m} edges but {} were read", edges.len()),
            ));
        }
    }
    let n = declared_n.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    Graph::from_edges(n, edges)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

fn parse_fields(line: usize, l: &str) -> Result<Vec<usize>> {
    l.split_whitespace()
        .map(|tok| tok.parse::<usize>().map_err(|_| parse_err(line, &format!("malformed token '{tok}'"))))
        .collect()
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}
