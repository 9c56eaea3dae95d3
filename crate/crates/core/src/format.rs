//! Plain-text graph format.
//!
//! ```text
//! # optional comments
//! n m
//! u v c      (m lines, 0-based vertices, non-negative colors)
//! ```
//!
//! Writing always emits normalized (`u < v`), lexicographically sorted edges,
//! so a write/read/write cycle is byte-identical.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, ParseError, Result};
use crate::graph::{Color, EdgeColoredGraph};

pub fn parse_graph(text: &str) -> Result<EdgeColoredGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing `n m` header"))?;
    let [n, m] = parse_fields::<2>(header_line, header)?;

    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    for _ in 0..m {
        let (line, body) = lines.next().ok_or_else(|| {
            ParseError::new(
                text.lines().count() + 1,
                format!("expected {m} edge lines, found {}", edges.len()),
            )
        })?;
        let [u, v, c] = parse_fields::<3>(line, body)?;
        if u >= n || v >= n {
            return Err(ParseError::new(line, format!("vertex out of range (n = {n})")).into());
        }
        if u == v {
            return Err(ParseError::new(line, format!("self-loop at vertex {u}")).into());
        }
        let color = u32::try_from(c)
            .map_err(|_| ParseError::new(line, format!("color {c} does not fit in 32 bits")))?;
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::new(line, format!("duplicate edge {{{u},{v}}}")).into());
        }
        edges.push((u, v, Color(color)));
    }
    if let Some((line, _)) = lines.next() {
        return Err(ParseError::new(line, format!("trailing content after {m} edges")).into());
    }
    EdgeColoredGraph::new(n, edges)
}

fn parse_fields<const K: usize>(line: usize, body: &str) -> Result<[usize; K], ParseError> {
    let mut out = [0usize; K];
    let mut parts = body.split_whitespace();
    for slot in out.iter_mut() {
        let tok = parts
            .next()
            .ok_or_else(|| ParseError::new(line, format!("expected {K} fields")))?;
        *slot = tok
            .parse()
            .map_err(|_| ParseError::new(line, format!("not a non-negative integer: {tok:?}")))?;
    }
    if parts.next().is_some() {
        return Err(ParseError::new(line, format!("expected {K} fields")));
    }
    Ok(out)
}

pub fn write_graph(graph: &EdgeColoredGraph) -> String {
    let mut out = String::with_capacity(16 + graph.m() * 12);
    writeln!(out, "{} {}", graph.n(), graph.m()).unwrap();
    for e in graph.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.color).unwrap();
    }
    out
}

pub fn read_graph_file(path: impl AsRef<Path>) -> Result<EdgeColoredGraph> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}
