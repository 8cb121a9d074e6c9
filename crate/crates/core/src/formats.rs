//! graph6 and JSON edge-list ingestion.

use crate::graph::{GraphError, Multigraph};

/// Largest vertex count accepted from graph6 input.
pub const GRAPH6_MAX_N: usize = 1 << 18;

const BIAS: u8 = 63;

fn malformed(offset: usize, message: impl Into<String>) -> GraphError {
    GraphError::Graph6 {
        offset,
        message: message.into(),
    }
}

/// Decode one graph6 line. Edge ids follow row-major upper-triangle order,
/// i.e. `(i, j)` with `i < j` sorted lexicographically.
pub fn parse_graph6(text: &str) -> Result<Multigraph, GraphError> {
    let line = text.trim_end_matches(['\n', '\r']);
    let bytes = line.as_bytes();
    if let Some(offset) = bytes.iter().position(|b| !(BIAS..=126).contains(b)) {
        return Err(malformed(offset, format!("byte {:#04x} outside graph6 range", bytes[offset])));
    }
    let (n, header_len) = match bytes {
        [] => return Err(malformed(0, "empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(malformed(bytes.len(), "truncated 36-bit vertex count"));
            }
            let n = rest[..6]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
            (n, 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(malformed(bytes.len(), "truncated 18-bit vertex count"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
            (n, 4)
        }
        [first, ..] => ((first - BIAS) as usize, 1),
    };
    if n > GRAPH6_MAX_N {
        return Err(malformed(0, format!("vertex count {n} exceeds {GRAPH6_MAX_N}")));
    }
    let bit_count = n * n.saturating_sub(1) / 2;
    let payload = &bytes[header_len..];
    let expected = bit_count.div_ceil(6);
    if payload.len() != expected {
        return Err(malformed(
            header_len + payload.len().min(expected),
            format!(
                "payload has {} bytes, {n} vertices need {expected}",
                payload.len()
            ),
        ));
    }
    let bit = |k: usize| (payload[k / 6] - BIAS) >> (5 - k % 6) & 1 == 1;
    if let Some(k) = (bit_count..expected * 6).find(|&k| bit(k)) {
        return Err(malformed(header_len + k / 6, "nonzero padding bit"));
    }

    // Payload bits run over columns j, rows i < j.
    let mut pairs = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                pairs.push((i, j));
            }
            k += 1;
        }
    }
    pairs.sort_unstable();
    Multigraph::new(n, pairs)
}

/// Encode a simple graph as one graph6 line (no trailing newline).
pub fn to_graph6(g: &Multigraph) -> Result<String, GraphError> {
    if !g.is_simple() {
        return Err(GraphError::NotSimple);
    }
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(GraphError::TooLarge {
            n,
            max: GRAPH6_MAX_N,
            what: "graph6",
        });
    }
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + BIAS);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + BIAS));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + BIAS));
    }
    let mut adj = vec![false; n * n];
    for e in g.edges() {
        adj[e.u * n + e.v] = true;
        adj[e.v * n + e.u] = true;
    }
    let mut word = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            word = (word << 1) | adj[i * n + j] as u8;
            filled += 1;
            if filled == 6 {
                out.push(word + BIAS);
                word = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((word << (6 - filled)) + BIAS);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Parse `{"n": int, "edges": [[u, v], ...]}`; duplicate pairs become
/// parallel edges in listed order.
pub fn parse_edge_list(text: &str) -> Result<Multigraph, GraphError> {
    let doc: crate::graph::EdgeListDoc = serde_json::from_str(text)?;
    Multigraph::try_from(doc)
}
