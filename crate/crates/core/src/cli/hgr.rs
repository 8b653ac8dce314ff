//! The `.hgr` text format.
//!
//! ```text
//! # comment
//! uniform 3 7
//! 1 2 3
//! 3 4 5
//! ```
//!
//! The header gives the uniformity `m` and vertex count `n`; every following
//! data line is one edge of `m` 1-based vertex labels. Repeated labels make a
//! hyperloop and repeated lines a multi-edge. Blank lines and `#` comments are
//! skipped anywhere.

use std::fmt::Write as _;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_error(line, format!("{what} `{token}` is not a nonnegative integer")))
}

pub fn parse_hgr(text: &str) -> Result<Hypergraph> {
    let mut data = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = data
        .next()
        .ok_or_else(|| parse_error(1, "missing `uniform <m> <n>` header"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let [keyword, m, n] = tokens[..] else {
        return Err(parse_error(header_line, "header must be `uniform <m> <n>`"));
    };
    if keyword != "uniform" {
        return Err(parse_error(header_line, "header must be `uniform <m> <n>`"));
    }
    let m = parse_usize(m, header_line, "uniformity")?;
    let n = parse_usize(n, header_line, "vertex count")?;
    if m < 2 {
        return Err(parse_error(header_line, "uniformity must be at least 2"));
    }
    if n == 0 {
        return Err(parse_error(header_line, "vertex count must be at least 1"));
    }

    let mut edges = Vec::new();
    for (line, content) in data {
        let labels = content
            .split_whitespace()
            .map(|t| parse_usize(t, line, "vertex"))
            .collect::<Result<Vec<_>>>()?;
        if labels.len() != m {
            return Err(parse_error(
                line,
                format!("edge has {} vertices, expected {m}", labels.len()),
            ));
        }
        if let Some(&v) = labels.iter().find(|&&v| v == 0 || v > n) {
            return Err(parse_error(line, format!("vertex {v} out of range 1..={n}")));
        }
        edges.push(labels);
    }
    Hypergraph::build(n, m, edges)
}

/// Inverse of [`parse_hgr`]; edges keep their order, labels are sorted.
pub fn render_hgr(h: &Hypergraph) -> String {
    let mut out = format!("uniform {} {}\n", h.order(), h.vertex_count());
    for edge in h.edges() {
        let _ = writeln!(out, "{}", edge.labels().iter().join(" "));
    }
    out
}
