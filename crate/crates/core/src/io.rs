//! Text formats: graph6 (one graph per line) and a plain edge list.

use crate::graph::{Graph, GraphError, MAX_VERTICES};

const OFFSET: u8 = 63;
const HEADER: &str = ">>graph6<<";

fn g6_err(offset: usize, reason: impl Into<String>) -> GraphError {
    GraphError::Graph6 {
        offset,
        reason: reason.into(),
    }
}

fn push_size(out: &mut String, n: usize) {
    if n <= 62 {
        out.push((n as u8 + OFFSET) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + OFFSET) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + OFFSET) as char);
        }
    }
}

/// Encodes `g` as a graph6 line (no trailing newline).
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    push_size(&mut out, n);
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((chunk + OFFSET) as char);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((chunk << (6 - filled)) + OFFSET) as char);
    }
    out
}

fn sextet(bytes: &[u8], pos: usize) -> Result<u8, GraphError> {
    match bytes.get(pos) {
        None => Err(g6_err(pos, "unexpected end of input")),
        Some(&b) if (OFFSET..=OFFSET + 63).contains(&b) => Ok(b - OFFSET),
        Some(&b) => Err(g6_err(pos, format!("byte 0x{b:02x} outside the printable range 63..=126"))),
    }
}

/// Parses one graph6 line. An optional `>>graph6<<` header and trailing
/// whitespace are accepted.
pub fn parse_graph6(line: &str) -> Result<Graph, GraphError> {
    let trimmed = line.trim_end();
    let start = if trimmed.starts_with(HEADER) { HEADER.len() } else { 0 };
    let bytes = trimmed.as_bytes();
    let mut pos = start;

    let first = sextet(bytes, pos)?;
    let n = if first < 63 {
        pos += 1;
        first as usize
    } else if bytes.get(pos + 1) == Some(&b'~') {
        pos += 2;
        let mut n = 0usize;
        for _ in 0..6 {
            n = (n << 6) | sextet(bytes, pos)? as usize;
            pos += 1;
        }
        n
    } else {
        pos += 1;
        let mut n = 0usize;
        for _ in 0..3 {
            n = (n << 6) | sextet(bytes, pos)? as usize;
            pos += 1;
        }
        n
    };
    if n > MAX_VERTICES {
        return Err(g6_err(start, format!("{n} vertices exceeds the supported maximum of {MAX_VERTICES}")));
    }

    let bits = n * n.saturating_sub(1) / 2;
    let data_len = bits.div_ceil(6);
    let mut pairs = Vec::new();
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = sextet(bytes, pos + k / 6)
                .map_err(|_| g6_err(pos + k / 6, format!("truncated: expected {data_len} data bytes")))?;
            if byte & (0x20 >> (k % 6)) != 0 {
                pairs.push((i, j));
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    if bytes.len() > pos + data_len {
        return Err(g6_err(pos + data_len, "trailing data after the adjacency bits"));
    }
    Graph::from_edges(n, pairs)
}

/// Parses a graph6 file: one graph per non-empty line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>, (usize, GraphError)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6(l).map_err(|e| (i + 1, e)))
        .collect()
}

/// Parses the edge-list format: one whitespace-separated `u v` pair per line,
/// 0-based, `#` starts a comment. The vertex count is one more than the
/// largest endpoint, or the value of an optional leading `n <count>` line.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut declared: Option<usize> = None;
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |reason: String| GraphError::EdgeList { line: line_no, reason };
        if fields.len() != 2 {
            return Err(bad(format!("expected two fields, found {}", fields.len())));
        }
        if fields[0] == "n" {
            if declared.is_some() || !pairs.is_empty() {
                return Err(bad("vertex-count line must come first".into()));
            }
            declared = Some(fields[1].parse().map_err(|e| bad(format!("{e}")))?);
            continue;
        }
        let u: usize = fields[0].parse().map_err(|e| bad(format!("{e}")))?;
        let v: usize = fields[1].parse().map_err(|e| bad(format!("{e}")))?;
        pairs.push((u, v));
    }
    let n = declared.unwrap_or_else(|| pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::from_edges(n, pairs)
}
