//! Graph file formats: graph6 (read/write, bit-exact), whitespace edge
//! lists (read/write), and DIMACS .col (read).

use std::fmt;
use std::fs;
use std::path::Path;

use chromabound_core::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormatError {
    Empty,
    BadChar { pos: usize, byte: u8 },
    Truncated { expected: usize, got: usize },
    TrailingData { extra: usize },
    BadHeader(String),
    BadEdge { line: usize },
    TooLarge { n: usize },
    Graph(String),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Empty => write!(f, "empty input"),
            FormatError::BadChar { pos, byte } => {
                write!(f, "invalid graph6 byte {byte:#x} at position {pos}")
            }
            FormatError::Truncated { expected, got } => {
                write!(f, "truncated record: expected {expected} bytes, got {got}")
            }
            FormatError::TrailingData { extra } => write!(f, "{extra} unexpected trailing bytes"),
            FormatError::BadHeader(s) => write!(f, "malformed header: {s}"),
            FormatError::BadEdge { line } => write!(f, "malformed edge on line {line}"),
            FormatError::TooLarge { n } => write!(f, "graph order {n} exceeds the writable range"),
            FormatError::Graph(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for FormatError {}

/// Encodes one graph as a graph6 line (no trailing newline, no header).
pub fn graph6_encode(g: &Graph) -> Result<String, FormatError> {
    let n = g.n();
    let mut bytes: Vec<u8> = Vec::new();
    if n <= 62 {
        bytes.push(63 + n as u8);
    } else if n <= 258_047 {
        bytes.push(126);
        bytes.push(63 + ((n >> 12) & 63) as u8);
        bytes.push(63 + ((n >> 6) & 63) as u8);
        bytes.push(63 + (n & 63) as u8);
    } else {
        return Err(FormatError::TooLarge { n });
    }
    // upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
    let mut group = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            group <<= 1;
            if g.has_edge(i, j) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                bytes.push(63 + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        group <<= 6 - filled;
        bytes.push(63 + group);
    }
    Ok(String::from_utf8(bytes).expect("graph6 bytes are ASCII"))
}

/// Decodes one graph6 line; tolerates the optional `>>graph6<<` header.
pub fn graph6_decode(line: &str) -> Result<Graph, FormatError> {
    let mut s = line.trim();
    if let Some(rest) = s.strip_prefix(">>graph6<<") {
        s = rest;
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(FormatError::BadChar { pos, byte: b });
        }
    }
    let (n, mut idx) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            if bytes.len() < 8 {
                return Err(FormatError::Truncated { expected: 8, got: bytes.len() });
            }
            let mut n = 0usize;
            for &b in &bytes[2..8] {
                n = (n << 6) | (b - 63) as usize;
            }
            (n, 8)
        } else {
            if bytes.len() < 4 {
                return Err(FormatError::Truncated { expected: 4, got: bytes.len() });
            }
            let mut n = 0usize;
            for &b in &bytes[1..4] {
                n = (n << 6) | (b - 63) as usize;
            }
            (n, 4)
        }
    } else {
        ((bytes[0] - 63) as usize, 1)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let groups = bits.div_ceil(6);
    if bytes.len() < idx + groups {
        return Err(FormatError::Truncated { expected: idx + groups, got: bytes.len() });
    }
    if bytes.len() > idx + groups {
        return Err(FormatError::TrailingData { extra: bytes.len() - idx - groups });
    }
    let mut edges = Vec::new();
    let mut group = 0u8;
    let mut left = 0u8;
    for j in 1..n {
        for i in 0..j {
            if left == 0 {
                group = bytes[idx] - 63;
                idx += 1;
                left = 6;
            }
            if group & 0b10_0000 != 0 {
                edges.push((i, j));
            }
            group <<= 1;
            left -= 1;
        }
    }
    Graph::from_edge_list(n, &edges).map_err(|e| FormatError::Graph(e.to_string()))
}

/// Writes the edge-list text format: `n m`, then one `u v` line per edge.
pub fn edge_list_encode(g: &Graph) -> String {
    let edges = g.to_edge_list();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Reads the edge-list text format (0-indexed).
pub fn edge_list_decode(text: &str) -> Result<Graph, FormatError> {
    let mut tokens = text.split_whitespace();
    let n: usize = tokens
        .next()
        .ok_or(FormatError::Empty)?
        .parse()
        .map_err(|_| FormatError::BadHeader("vertex count".into()))?;
    let m: usize = tokens
        .next()
        .ok_or(FormatError::BadHeader("edge count missing".into()))?
        .parse()
        .map_err(|_| FormatError::BadHeader("edge count".into()))?;
    let mut edges = Vec::with_capacity(m);
    for k in 0..m {
        let u: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(FormatError::BadEdge { line: k + 2 })?;
        let v: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(FormatError::BadEdge { line: k + 2 })?;
        edges.push((u, v));
    }
    Graph::from_edge_list(n, &edges).map_err(|e| FormatError::Graph(e.to_string()))
}

/// Reads DIMACS `.col`: `c` comments, `p edge n m`, `e u v` (1-indexed).
pub fn dimacs_decode(text: &str) -> Result<Graph, FormatError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("p") => {
                let kind = parts.next().unwrap_or("");
                if kind != "edge" && kind != "col" {
                    return Err(FormatError::BadHeader(format!("problem kind {kind:?}")));
                }
                n = Some(
                    parts
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| FormatError::BadHeader("vertex count".into()))?,
                );
            }
            Some("e") => {
                let u: usize = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(FormatError::BadEdge { line: lineno + 1 })?;
                let v: usize = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(FormatError::BadEdge { line: lineno + 1 })?;
                if u == 0 || v == 0 {
                    return Err(FormatError::BadEdge { line: lineno + 1 });
                }
                edges.push((u - 1, v - 1));
            }
            _ => return Err(FormatError::BadHeader(format!("line {}", lineno + 1))),
        }
    }
    let n = n.ok_or(FormatError::Empty)?;
    Graph::from_edge_list(n, &edges).map_err(|e| FormatError::Graph(e.to_string()))
}

/// Reads every graph in a file, dispatching on the extension: `.g6`
/// (one graph per line), `.el`, `.col`.
pub fn read_graphs(path: &Path) -> Result<Vec<Graph>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    match ext {
        "g6" => text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| graph6_decode(l).map_err(|e| format!("{}: {e}", path.display())))
            .collect(),
        "el" => Ok(vec![
            edge_list_decode(&text).map_err(|e| format!("{}: {e}", path.display()))?
        ]),
        "col" => Ok(vec![
            dimacs_decode(&text).map_err(|e| format!("{}: {e}", path.display()))?
        ]),
        other => Err(format!(
            "{}: unknown extension {other:?} (expected g6, el, col)",
            path.display()
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_known_encodings() {
        // published reference values: K4 = "C~", C5 = "Dhc", K1 = "@"
        assert_eq!(graph6_encode(&Graph::complete(4)).unwrap(), "C~");
        assert_eq!(graph6_encode(&Graph::cycle(5)).unwrap(), "Dhc");
        assert_eq!(graph6_encode(&Graph::complete(1)).unwrap(), "@");
        assert_eq!(graph6_encode(&Graph::empty(0)).unwrap(), "?");
        // P4 (path on 4 vertices)
        assert_eq!(graph6_encode(&Graph::path(4)).unwrap(), "Ch");
    }

    #[test]
    fn graph6_decodes_reference_values() {
        assert_eq!(graph6_decode("C~").unwrap(), Graph::complete(4));
        assert_eq!(graph6_decode("Dhc").unwrap(), Graph::cycle(5));
        assert_eq!(graph6_decode(">>graph6<<Dhc").unwrap(), Graph::cycle(5));
    }

    #[test]
    fn graph6_rejects_malformed_input() {
        assert!(matches!(graph6_decode(""), Err(FormatError::Empty)));
        assert!(matches!(graph6_decode("D"), Err(FormatError::Truncated { .. })));
        assert!(matches!(graph6_decode("Dhcc"), Err(FormatError::TrailingData { .. })));
        assert!(matches!(graph6_decode("D\x1fc"), Err(FormatError::BadChar { .. })));
    }

    #[test]
    fn graph6_long_form_order() {
        // n = 63 uses the three-byte order form
        let g = Graph::empty(63);
        let s = graph6_encode(&g).unwrap();
        assert!(s.starts_with('~'));
        assert_eq!(graph6_decode(&s).unwrap().n(), 63);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edge_list(6, &[(0, 3), (1, 2), (4, 5)]).unwrap();
        let text = edge_list_encode(&g);
        assert_eq!(edge_list_decode(&text).unwrap(), g);
        assert!(text.starts_with("6 3\n"));
    }

    #[test]
    fn dimacs_reads_one_indexed_edges() {
        let text = "c a triangle plus an isolated vertex\np edge 4 3\ne 1 2\ne 2 3\ne 3 1\n";
        let g = dimacs_decode(text).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && g.has_edge(0, 2));
        assert!(dimacs_decode("p edge 2 1\ne 0 1\n").is_err());
    }

    proptest::proptest! {
        #[test]
        fn graph6_round_trip(n in 0usize..20, seed in proptest::prelude::any::<u64>()) {
            let mut edges = Vec::new();
            let mut state = seed;
            for u in 0..n {
                for v in (u + 1)..n {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if state >> 63 == 1 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edge_list(n, &edges).unwrap();
            let encoded = graph6_encode(&g).unwrap();
            proptest::prop_assert_eq!(graph6_decode(&encoded).unwrap(), g);
        }
    }
}
