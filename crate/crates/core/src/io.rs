//! Plain edge-list and graph6 readers and writers.
//!
//! Edge lists are `n m` on the first line followed by `m` lines `u v`.
//! graph6 follows the format used by nauty: a size prefix, then the upper
//! triangle of the adjacency matrix column by column, packed six bits per
//! printable byte with an offset of 63.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Graph6,
}

pub fn write_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header line".into(),
    })?;
    let (n, m) = parse_pair(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let (u, v) = parse_pair(line, l)?;
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                msg: format!("endpoint out of range for n = {n}"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                msg: format!("self-loop at {u}"),
            });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, &edges)
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize)> {
    let mut it = l.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse {
                line,
                msg: "expected two integers".into(),
            })?
            .parse()
            .map_err(|e| Error::Parse {
                line,
                msg: format!("{e}"),
            })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line,
            msg: "trailing tokens".into(),
        });
    }
    Ok((a, b))
}

const HEADER: &str = ">>graph6<<";

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push(126 as char);
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    } else {
        out.push(126 as char);
        out.push(126 as char);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(((acc << (6 - bits)) + 63) as char);
    }
    out
}

pub fn read_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let bad = |msg: &str| Error::Parse {
        line: 1,
        msg: msg.to_string(),
    };
    if let Some(b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(bad(&format!("byte {b} outside the graph6 alphabet")));
    }
    let (n, body) = match bytes {
        [] => return Err(bad("empty graph6 string")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(bad("truncated size field"));
            }
            let n = rest[..6]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(bad("truncated size field"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    if body.len() != pairs.div_ceil(6) {
        return Err(bad(&format!(
            "expected {} data bytes for n = {n}, found {}",
            pairs.div_ceil(6),
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn write_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::EdgeList => write_edge_list(g),
        Format::Graph6 => {
            let mut s = write_graph6(g);
            s.push('\n');
            s
        }
    }
}

pub fn read_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::EdgeList => read_edge_list(text),
        Format::Graph6 => read_graph6(text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn graph6_known_vector() {
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(write_graph6(&g), "DQc");
        assert_eq!(read_graph6("DQc").unwrap(), g);
        assert_eq!(read_graph6(">>graph6<<DQc\n").unwrap(), g);
    }

    #[test]
    fn graph6_small_cases() {
        assert_eq!(write_graph6(&Graph::empty(0)), "?");
        assert_eq!(write_graph6(&Graph::empty(1)), "@");
        assert_eq!(write_graph6(&Graph::complete(2)), "A_");
        // C4 on 0-1-2-3
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(write_graph6(&c4), "Cl");
    }

    #[test]
    fn graph6_large_size_prefix() {
        let g = Graph::empty(63);
        let s = write_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 63, 126]);
        assert_eq!(read_graph6(&s).unwrap().n(), 63);
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(read_graph6("").is_err());
        assert!(read_graph6("D").is_err());
        assert!(read_graph6("D\x01c").is_err());
    }

    #[test]
    fn edge_list_parse_and_errors() {
        let g = read_edge_list("4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(read_edge_list("3 1\n0 3\n").is_err());
        assert!(read_edge_list("3 2\n0 1\n").is_err());
        assert!(read_edge_list("3 1\n1 1\n").is_err());
        assert!(read_edge_list("x\n").is_err());
        assert!(read_edge_list("").is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..80).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut k = 0;
                Graph::from_fn(n, |_, _| {
                    k += 1;
                    bits[k - 1]
                })
            })
        })
    }

    proptest! {
        #[test]
        fn round_trips_are_identity(g in arb_graph()) {
            prop_assert_eq!(&read_edge_list(&write_edge_list(&g)).unwrap(), &g);
            prop_assert_eq!(&read_graph6(&write_graph6(&g)).unwrap(), &g);
        }
    }
}
