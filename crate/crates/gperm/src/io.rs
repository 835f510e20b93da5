//! Text formats for graphs.
//!
//! Edge lists are the native format and carry multigraphs: a header line
//! `n m`, then one `u v` line per edge, kept in file order.  graph6 covers
//! simple graphs up to 62 vertices; decoded edges are sorted
//! lexicographically so the edge indexing is reproducible.

use crate::error::{Error, Result};
use crate::graphs::Multigraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Edgelist,
    Graph6,
}

pub fn parse_graph(text: &str, format: Format) -> Result<Multigraph> {
    match format {
        Format::Edgelist => parse_edgelist(text),
        Format::Graph6 => parse_graph6(text),
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_edgelist(text: &str) -> Result<Multigraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty input, expected a header line `n m`"))?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .ok_or_else(|| parse_err(header_line, "missing vertex count"))?
        .parse()
        .map_err(|_| parse_err(header_line, "vertex count is not a number"))?;
    let m: usize = it
        .next()
        .ok_or_else(|| parse_err(header_line, "missing edge count"))?
        .parse()
        .map_err(|_| parse_err(header_line, "edge count is not a number"))?;
    if it.next().is_some() {
        return Err(parse_err(header_line, "trailing tokens after `n m` header"));
    }
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line_no, line) = lines.next().ok_or_else(|| {
            parse_err(0, format!("expected {m} edge lines, found {}", edges.len()))
        })?;
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .ok_or_else(|| parse_err(line_no, "missing edge endpoint"))?
            .parse()
            .map_err(|_| parse_err(line_no, "edge endpoint is not a number"))?;
        let v: usize = it
            .next()
            .ok_or_else(|| parse_err(line_no, "edge needs two endpoints"))?
            .parse()
            .map_err(|_| parse_err(line_no, "edge endpoint is not a number"))?;
        if it.next().is_some() {
            return Err(parse_err(line_no, "trailing tokens after edge endpoints"));
        }
        edges.push((u, v));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(parse_err(line_no, "unexpected content after the last edge"));
    }
    Multigraph::new(n, edges)
}

pub fn write_edgelist(g: &Multigraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_graph6(text: &str) -> Result<Multigraph> {
    let line = text.trim();
    if line.is_empty() {
        return Err(parse_err(1, "empty graph6 input"));
    }
    let bytes = line.as_bytes();
    let first = bytes[0];
    if first == 126 {
        return Err(parse_err(
            1,
            "long-form graph6 (>62 vertices) is not supported",
        ));
    }
    if !(63..=125).contains(&first) {
        return Err(parse_err(1, format!("invalid graph6 size byte {first}")));
    }
    let n = (first - 63) as usize;
    let bit_count = n * n.saturating_sub(1) / 2;
    let byte_count = bit_count.div_ceil(6);
    let body = &bytes[1..];
    if body.len() != byte_count {
        return Err(parse_err(
            1,
            format!(
                "graph6 body has {} bytes, expected {byte_count}",
                body.len()
            ),
        ));
    }
    let mut bits = Vec::with_capacity(byte_count * 6);
    for &b in body {
        if !(63..=126).contains(&b) {
            return Err(parse_err(1, format!("invalid graph6 body byte {b}")));
        }
        let x = b - 63;
        for shift in (0..6).rev() {
            bits.push((x >> shift) & 1 == 1);
        }
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[idx] {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    if bits[idx..].iter().any(|&b| b) {
        return Err(parse_err(1, "nonzero padding bits in graph6 body"));
    }
    edges.sort();
    Multigraph::new(n, edges)
}

pub fn encode_graph6(g: &Multigraph) -> Result<String> {
    let n = g.vertex_count();
    if n > 62 {
        return Err(Error::invalid(format!(
            "graph6 short form holds at most 62 vertices, got {n}"
        )));
    }
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    let mut adj = vec![false; n * n];
    for &(u, v) in g.edges() {
        adj[u * n + v] = true;
        adj[v * n + u] = true;
    }
    let mut bits = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(adj[i * n + j]);
        }
    }
    while bits.len() % 6 != 0 {
        bits.push(false);
    }
    let mut out = String::new();
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let mut x = 0u8;
        for (pos, &b) in chunk.iter().enumerate() {
            if b {
                x |= 1 << (5 - pos);
            }
        }
        out.push((x + 63) as char);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgelist_round_trip() {
        let text = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
        let g = parse_edgelist(text).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(write_edgelist(&g), text);
    }

    #[test]
    fn edgelist_accepts_comments_and_blank_lines() {
        let g = parse_edgelist("# a digon\n\n2 2\n0 1\n\n0 1\n").unwrap();
        assert_eq!(g.multiplicity(0, 1), 2);
    }

    #[test]
    fn edgelist_rejects_malformed_input() {
        for bad in [
            "",
            "3\n",
            "2 1\n0\n",
            "2 1\n0 1 7\n",
            "2 2\n0 1\n",
            "2 1\n0 1\n0 1\n",
            "2 x\n",
        ] {
            assert!(
                matches!(parse_edgelist(bad), Err(Error::Parse { .. })),
                "accepted {bad:?}"
            );
        }
        assert!(matches!(
            parse_edgelist("2 1\n1 1\n"),
            Err(Error::SelfLoop { .. })
        ));
        assert!(matches!(
            parse_edgelist("2 1\n0 2\n"),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn graph6_decodes_k5() {
        let g = parse_graph6("D~{").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 10);
        for u in 0..5 {
            for v in (u + 1)..5 {
                assert_eq!(g.multiplicity(u, v), 1, "missing edge {u}-{v}");
            }
        }
        assert_eq!(encode_graph6(&g).unwrap(), "D~{");
    }

    #[test]
    fn graph6_round_trips_small_graphs() {
        // path, star, empty graph, C6
        for text in [
            "4 3\n0 1\n1 2\n2 3\n",
            "5 4\n0 1\n0 2\n0 3\n0 4\n",
            "3 0\n",
            "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n",
        ] {
            let g = parse_edgelist(text).unwrap();
            let code = encode_graph6(&g).unwrap();
            let back = parse_graph6(&code).unwrap();
            assert_eq!(back.vertex_count(), g.vertex_count());
            let mut want: Vec<_> = g
                .edges()
                .iter()
                .map(|&(u, v)| (u.min(v), u.max(v)))
                .collect();
            want.sort();
            assert_eq!(back.edges(), &want[..]);
        }
    }

    #[test]
    fn graph6_rejects_bad_bytes_and_multigraphs() {
        assert!(matches!(parse_graph6(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph6("~??"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph6("D~"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph6("D~{{"), Err(Error::Parse { .. })));
        let digon = parse_edgelist("2 2\n0 1\n0 1\n").unwrap();
        assert!(matches!(encode_graph6(&digon), Err(Error::NotSimple)));
    }
}
