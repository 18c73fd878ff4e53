//! Graph serialization: graph6 and a plain edge-list text format.
//!
//! graph6 follows the standard header-less encoding: a size field N(n)
//! followed by the upper triangle of the adjacency matrix in column order
//! (0,1), (0,2), (1,2), (0,3), ..., packed 6 bits per printable byte
//! (offset 63, most significant bit first, zero padded).
//!
//! The edge-list format is a `"n m"` header line followed by one `"u v"`
//! line per edge, 0-indexed, LF-terminated.

use crate::error::{Error, Result};
use crate::graph::Graph;

const G6_MAX_SMALL: usize = 62;
const G6_MAX_MEDIUM: usize = 258_047;
const G6_MAX_LARGE: u64 = (1 << 36) - 1;

/// Encodes a graph as a single-line graph6 string (no trailing newline).
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.vertex_count();
    let mut bytes = Vec::new();
    if n <= G6_MAX_SMALL {
        bytes.push(n as u8 + 63);
    } else if n <= G6_MAX_MEDIUM {
        bytes.push(126);
        for shift in [12, 6, 0] {
            bytes.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else if n as u64 <= G6_MAX_LARGE {
        bytes.push(126);
        bytes.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            bytes.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        return Err(Error::Parse(format!("graph6 cannot encode n = {n}")));
    }

    let mut group = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            group <<= 1;
            if g.has_edge(u, v) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                bytes.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        group <<= 6 - filled;
        bytes.push(group + 63);
    }
    Ok(String::from_utf8(bytes).expect("graph6 bytes are printable ASCII"))
}

/// Decodes a graph6 string (one graph; surrounding whitespace ignored).
pub fn from_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim().as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 input".into()));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse(format!(
                "invalid graph6 byte {b:#04x} at offset {i}"
            )));
        }
    }

    let (n, mut pos) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Error::Parse("truncated graph6 size field".into()));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            n = n << 6 | (b - 63) as usize;
        }
        (n, 4)
    } else {
        if bytes.len() < 8 {
            return Err(Error::Parse("truncated graph6 size field".into()));
        }
        let mut n = 0usize;
        for &b in &bytes[2..8] {
            n = n << 6 | (b - 63) as usize;
        }
        (n, 8)
    };

    let tri_bits = n * n.saturating_sub(1) / 2;
    let needed = tri_bits.div_ceil(6);
    if bytes.len() - pos < needed {
        return Err(Error::Parse(format!(
            "graph6 body too short: {} bytes, need {needed}",
            bytes.len() - pos
        )));
    }

    let mut g = Graph::empty(n);
    let mut seen = 0usize;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = bytes[pos + seen / 6] - 63;
            let bit = byte >> (5 - seen % 6) & 1;
            if bit == 1 {
                g.set_edge(u, v);
            }
            seen += 1;
            if seen == tri_bits {
                break 'outer;
            }
        }
    }
    pos += needed;
    if pos != bytes.len() {
        return Err(Error::Parse(format!(
            "trailing bytes after graph6 body ({} extra)",
            bytes.len() - pos
        )));
    }
    Ok(g)
}

/// Renders the `"n m"` + `"u v"` edge-list text, LF-terminated.
pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.vertex_count(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses the edge-list text format.
pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty edge-list input".into()))?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse("bad edge-list header".into()))?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse("bad edge-list header".into()))?;
    let mut edges = Vec::with_capacity(m);
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let parse = |t: Option<&str>| -> Result<usize> {
            t.and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad edge on line {}", i + 2)))
        };
        let u = parse(it.next())?;
        let v = parse(it.next())?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "edge-list header promises {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::from_edges(n, &edges)
}

/// Reads a graph file, choosing the format by extension: `.g6` is graph6,
/// anything else is edge-list.
pub fn read_graph_file(path: &std::path::Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "g6") {
        from_graph6(&text)
    } else {
        from_edge_list(&text)
    }
}
