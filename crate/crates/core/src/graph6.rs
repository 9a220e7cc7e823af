//! graph6 encoding and decoding.
//!
//! Standard format: a size header (`n + 63` for `n <= 62`, otherwise `126`
//! followed by three 6-bit groups), then the upper triangle of the adjacency
//! matrix in column-major order (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed
//! big-endian into 6-bit groups offset by 63 and zero padded.

use thiserror::Error;

use crate::graph::{Adjacency, Graph, GraphError, SparseGraph};

const HEADER: &str = ">>graph6<<";
const MAX_ORDER: usize = 258_047;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid graph6 byte 0x{byte:02x} at position {position}")]
    InvalidByte { position: usize, byte: u8 },
    #[error("graph6 string truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("unexpected trailing data at position {position}")]
    TrailingData { position: usize },
    #[error("non-zero padding bits in final byte at position {position}")]
    Padding { position: usize },
    #[error("graph with {0} vertices is beyond the supported graph6 range")]
    Unsupported(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn encode<A: Adjacency>(g: &A) -> String {
    let n = g.order();
    assert!(n <= MAX_ORDER, "graph6 order limit exceeded");
    let mut out = Vec::with_capacity(size_len(n) + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn size_len(n: usize) -> usize {
    if n <= 62 {
        1
    } else {
        4
    }
}

pub fn decode(s: &str) -> Result<SparseGraph, Graph6Error> {
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let offset = if s.len() < bytes.len() { HEADER.len() } else { 0 };
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let value = |pos: usize| -> Result<usize, Graph6Error> {
        let b = bytes[pos];
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::InvalidByte {
                position: pos + offset,
                byte: b,
            });
        }
        Ok((b - 63) as usize)
    };
    let (n, start) = if bytes[0] == 126 {
        if bytes.len() > 1 && bytes[1] == 126 {
            return Err(Graph6Error::Unsupported(usize::MAX));
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::Truncated {
                expected: 4,
                found: bytes.len(),
            });
        }
        let mut n = 0;
        for pos in 1..4 {
            n = (n << 6) | value(pos)?;
        }
        (n, 4)
    } else {
        (value(0)?, 1)
    };
    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = start + bit_count.div_ceil(6);
    if bytes.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: bytes.len(),
        });
    }
    if bytes.len() > expected {
        return Err(Graph6Error::TrailingData {
            position: expected + offset,
        });
    }
    let mut g = SparseGraph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let pos = start + k / 6;
            let chunk = value(pos)?;
            if chunk >> (5 - k % 6) & 1 == 1 {
                g.insert_edge(i, j)?;
            }
            k += 1;
        }
    }
    if bit_count % 6 != 0 {
        let pos = expected - 1;
        let pad = 6 - bit_count % 6;
        if value(pos)? & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::Padding {
                position: pos + offset,
            });
        }
    }
    Ok(g)
}

/// Decode straight into the bit-set representation.
pub fn decode_graph(s: &str) -> Result<Graph, Graph6Error> {
    Ok(decode(s)?.to_graph()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_strings() {
        assert_eq!(encode(&Graph::complete(4).unwrap()), "C~");
        assert_eq!(encode(&Graph::complete(5).unwrap()), "D~{");
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        // petersen graph, as printed by nauty's geng/showg
        let petersen = Graph::from_edges(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        )
        .unwrap();
        assert_eq!(encode(&petersen), "IheA@GUAo");
        assert_eq!(decode_graph("IheA@GUAo").unwrap(), petersen);
    }

    #[test]
    fn long_header() {
        let g = SparseGraph::from_edges(70, &[(0, 69), (3, 4)]).unwrap();
        let s = encode(&g);
        assert!(s.starts_with("~?@E"));
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn malformed_input() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert_eq!(
            decode("C}\u{1}"),
            Err(Graph6Error::TrailingData { position: 2 })
        );
        assert_eq!(
            decode("D~ "),
            Err(Graph6Error::InvalidByte {
                position: 2,
                byte: b' '
            })
        );
        assert_eq!(
            decode("D~"),
            Err(Graph6Error::Truncated {
                expected: 3,
                found: 2
            })
        );
        assert_eq!(decode("C\u{7f}"), Err(Graph6Error::InvalidByte { position: 1, byte: 0x7f }));
        assert_eq!(decode("D~~"), Err(Graph6Error::Padding { position: 2 }));
        assert_eq!(decode(">>graph6<<C~").unwrap().size(), 6);
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..20, seed in any::<u64>()) {
            let mut edges = Vec::new();
            let mut x = seed | 1;
            for j in 1..n {
                for i in 0..j {
                    x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                    if x & 1 == 1 { edges.push((i, j)); }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let s = encode(&g);
            prop_assert_eq!(decode_graph(&s).unwrap(), g);
        }
    }
}
