//! The graph6 line format.
//!
//! Only the single-byte size prefix is supported, which covers `n <= 62`, the
//! same bound as [`Graph`] itself. The upper triangle is packed column by
//! column, `(0,1), (0,2), (1,2), (0,3), ...`, six bits per byte, most
//! significant bit first, each byte offset by 63.

use crate::graph::{Graph, GraphError, MAX_VERTICES};

pub const HEADER: &str = ">>graph6<<";

fn err(offset: usize, reason: impl Into<String>) -> GraphError {
    GraphError::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Decodes one graph6 line. A leading `>>graph6<<` header and trailing
/// whitespace are ignored.
///
/// ```
/// let k4 = comstruct::parse_graph6("C~").unwrap();
/// assert_eq!(k4.n(), 4);
/// assert_eq!(k4.edge_count(), 6);
/// ```
pub fn parse_graph6(line: &str) -> Result<Graph, GraphError> {
    let (skip, body) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, line),
    };
    let bytes = body.trim_end().as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(skip + i, format!("byte {b:#04x} outside 63..=126")));
        }
    }
    let (&first, data) = bytes
        .split_first()
        .ok_or_else(|| err(skip, "empty graph6 string"))?;
    if first == 126 {
        return Err(err(
            skip,
            format!("multi-byte size prefix (n > 62) is unsupported; max is {MAX_VERTICES}"),
        ));
    }
    let n = (first - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if data.len() != expected {
        return Err(err(
            skip + 1 + data.len().min(expected),
            format!(
                "expected {expected} data bytes for n = {n}, found {}",
                data.len()
            ),
        ));
    }
    let mut adj = vec![0u64; n];
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            k += 1;
        }
    }
    Graph::from_adjacency(adj)
}

/// Encodes a graph as a graph6 line without header or newline.
///
/// ```
/// let g = comstruct::Graph::path(2).unwrap();
/// assert_eq!(comstruct::emit_graph6(&g).unwrap(), "A_");
/// ```
pub fn emit_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices {
            n,
            max: MAX_VERTICES,
        });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut data = vec![0u8; bits.div_ceil(6)];
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if g.has_edge(u, v) {
                data[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(1 + data.len());
    out.push((n as u8 + 63) as char);
    out.extend(data.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}
