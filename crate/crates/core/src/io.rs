//! Text formats: the plain edge list, graph6, and labelled assignments.
//!
//! Edge list: a header `n m` followed by `m` pairs `u v` of 0-based vertex
//! ids. Tokens may be separated by any whitespace, so a whole graph may also
//! sit on a single line.
//!
//! graph6: the byte encoding used by nauty and friends. Only undirected simple
//! graphs, no `>>graph6<<` header.

use crate::{Assignment, Error, Graph, Result};

fn tokens(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
}

fn number(token: Option<&str>, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::Parse(format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what} {token:?}")))
}

/// Parses `n m` followed by `m` edges.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut toks = tokens(text);
    let n = number(toks.next(), "vertex count")?;
    let m = number(toks.next(), "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let u = number(toks.next(), &format!("endpoint of edge {i}"))?;
        let v = number(toks.next(), &format!("endpoint of edge {i}"))?;
        edges.push((u, v));
    }
    if let Some(extra) = toks.next() {
        return Err(Error::Parse(format!("trailing token {extra:?}")));
    }
    Graph::new(n, edges).map_err(|e| match e {
        Error::EmptyGraph => Error::Parse("graph has no vertices".into()),
        other => other,
    })
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// The edge list squeezed onto one line: `n m u₁ v₁ u₂ v₂ …`.
pub fn write_edge_list_line(g: &Graph) -> String {
    let mut out = format!("{} {}", g.order(), g.size());
    for (u, v) in g.edges() {
        out.push_str(&format!(" {u} {v}"));
    }
    out
}

const BIAS: u8 = 63;

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    encode_order(n, &mut out);
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = group << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(group + BIAS);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("graph6: invalid byte {b:#x}")));
    }
    let short = || Error::Parse("graph6: truncated input".into());
    let value = |chunk: &[u8]| chunk.iter().fold(0usize, |acc, &b| acc << 6 | (b - BIAS) as usize);
    let (n, body) = match bytes {
        [] => return Err(short()),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(short());
            }
            (value(&rest[..6]), &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(short());
            }
            (value(&rest[..3]), &rest[3..])
        }
        [b, rest @ ..] => ((b - BIAS) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(Error::Parse(format!(
            "graph6: expected {} data bytes for n={n}, found {}",
            bits.div_ceil(6),
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - BIAS) >> (5 - k % 6) & 1 == 1;
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
    if (k..body.len() * 6).any(bit) {
        return Err(Error::Parse("graph6: nonzero padding".into()));
    }
    Graph::new(n, edges).map_err(|e| match e {
        Error::EmptyGraph => Error::Parse("graph6: zero vertices".into()),
        other => other,
    })
}

/// Parses `n` followed by `n` labels from `{0, 1, 2}`.
pub fn parse_assignment(text: &str) -> Result<Assignment> {
    let mut toks = tokens(text);
    let n = number(toks.next(), "vertex count")?;
    let mut labels = Vec::with_capacity(n);
    for v in 0..n {
        let label = number(toks.next(), &format!("label of vertex {v}"))?;
        labels.push(u8::try_from(label).unwrap_or(u8::MAX));
    }
    if let Some(extra) = toks.next() {
        return Err(Error::Parse(format!("trailing token {extra:?}")));
    }
    Assignment::new(labels)
}

pub fn write_assignment(f: &Assignment) -> String {
    let labels: Vec<String> = f.labels().iter().map(u8::to_string).collect();
    format!("{}\n{}\n", f.len(), labels.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Tree;

    #[test]
    fn graph6_reference_vector() {
        // 5 vertices with edges 0-2, 0-4, 1-3, 3-4.
        let g = Graph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc\n").unwrap(), g);
    }

    #[test]
    fn graph6_small_orders() {
        assert_eq!(to_graph6(&Graph::new(1, []).unwrap()), "@");
        assert_eq!(to_graph6(&Tree::path(2)), "A_");
        // P4: bits 1 01 001 -> 101001 = 41
        assert_eq!(to_graph6(&Tree::path(4)), "Ch");
    }

    #[test]
    fn graph6_long_header() {
        let t = Tree::path(70);
        let code = to_graph6(&t);
        assert_eq!(&code.as_bytes()[..4], &[126, 63, 64, 69]);
        assert_eq!(parse_graph6(&code).unwrap(), *t.as_graph());
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("D Q").is_err());
        assert!(parse_graph6("DQ").is_err());
        assert!(parse_graph6("DQcc").is_err());
        // P3 is "Bg"; "Bh" sets a padding bit
        assert_eq!(parse_graph6("Bg").unwrap(), *Tree::path(3).as_graph());
        assert!(parse_graph6("Bh").is_err());
        assert!(parse_graph6("?").is_err());
    }

    #[test]
    fn edge_list_formats() {
        let g = parse_edge_list("4 3\n0 1\n1 2\n2 3\n").unwrap();
        assert_eq!(g, *Tree::path(4).as_graph());
        assert_eq!(write_edge_list(&g), "4 3\n0 1\n1 2\n2 3\n");
        assert_eq!(write_edge_list_line(&g), "4 3 0 1 1 2 2 3");
        assert_eq!(parse_edge_list(&write_edge_list_line(&g)).unwrap(), g);
        assert!(matches!(parse_edge_list("3 2\n0 1\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_edge_list("x"), Err(Error::Parse(_))));
        assert!(matches!(parse_edge_list("2 1 0 1 7"), Err(Error::Parse(_))));
        assert!(matches!(parse_edge_list("0 0"), Err(Error::Parse(_))));
        assert!(parse_edge_list("# comment\n2 1\n0 1 # edge\n").is_ok());
    }

    #[test]
    fn assignment_format() {
        let f = parse_assignment("4\n2 0 0 2\n").unwrap();
        assert_eq!(f.labels(), &[2, 0, 0, 2]);
        assert_eq!(write_assignment(&f), "4\n2 0 0 2\n");
        assert!(matches!(parse_assignment("2\n0 3"), Err(Error::InvalidLabel { vertex: 1, label: 3 })));
        assert!(parse_assignment("3\n0 1").is_err());
    }
}
