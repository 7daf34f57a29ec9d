//! Line-oriented instance files:
//!
//! ```text
//! c comment
//! p bgvd <n> <m>          or   p wfvs <n> <m> <k>
//! e <u> <v>               (1-indexed; repeated lines add multiplicity)
//! w <v> <num>/<den>       (optional, default weight 1)
//! ```

use std::fmt::Write as _;

use blockdel::graph::weight_int;
use blockdel::{MultiGraph, VertexId, Weight, WeightedGraph};
use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Bgvd,
    Wfvs { k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub kind: Kind,
    pub graph: WeightedGraph,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, FormatError> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| err(line, format!("invalid {what} '{tok}'")))
}

pub fn parse_weight(s: &str, line: usize) -> Result<Weight, FormatError> {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num: BigInt = num.parse().map_err(|_| err(line, format!("invalid numerator '{num}'")))?;
    let den: BigInt = den.parse().map_err(|_| err(line, format!("invalid denominator '{den}'")))?;
    if den <= BigInt::from(0) {
        return Err(err(line, "denominator must be positive"));
    }
    Ok(Weight::new(num, den))
}

pub fn parse(text: &str) -> Result<Instance, FormatError> {
    let mut header: Option<(Kind, usize, usize)> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut weights: Vec<(u32, Weight)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        let Some(tag) = toks.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(err(line, "duplicate header"));
                }
                let kind = match toks.next() {
                    Some("bgvd") => Kind::Bgvd,
                    Some("wfvs") => Kind::Wfvs { k: 0 },
                    other => return Err(err(line, format!("unknown problem {:?}", other.unwrap_or("")))),
                };
                let n: usize = number(toks.next(), line, "vertex count")?;
                let m: usize = number(toks.next(), line, "edge count")?;
                let kind = match kind {
                    Kind::Wfvs { .. } => Kind::Wfvs { k: number(toks.next(), line, "budget")? },
                    k => k,
                };
                header = Some((kind, n, m));
            }
            "e" | "w" => {
                let Some((_, n, _)) = header else { return Err(err(line, "data before header")) };
                let vertex = |tok: Option<&str>| -> Result<u32, FormatError> {
                    let v: usize = number(tok, line, "vertex")?;
                    if v == 0 || v > n {
                        return Err(err(line, format!("vertex {v} outside 1..={n}")));
                    }
                    Ok(v as u32 - 1)
                };
                if tag == "e" {
                    let u = vertex(toks.next())?;
                    let v = vertex(toks.next())?;
                    edges.push((u, v));
                } else {
                    let v = vertex(toks.next())?;
                    let w = toks.next().ok_or_else(|| err(line, "missing weight"))?;
                    weights.push((v, parse_weight(w, line)?));
                }
            }
            other => return Err(err(line, format!("unknown line type '{other}'"))),
        }
        if toks.next().is_some() {
            return Err(err(line, "trailing tokens"));
        }
    }
    let (kind, n, m) = header.ok_or_else(|| err(0, "missing header"))?;
    if edges.len() != m {
        return Err(err(0, format!("header declares {m} edges, found {}", edges.len())));
    }
    let mut g = MultiGraph::with_vertices(n);
    for (u, v) in edges {
        g.add_edge(VertexId(u), VertexId(v)).unwrap();
    }
    let mut graph = WeightedGraph::unit(g);
    for (v, w) in weights {
        graph.set_weight(VertexId(v), w);
    }
    Ok(Instance { kind, graph })
}

/// Inverse of `parse` for graphs on vertices `0..n`.
pub fn serialize(inst: &Instance) -> String {
    let g = &inst.graph.graph;
    let n = g.vertex_count();
    debug_assert!(g.vertices().enumerate().all(|(i, v)| v.0 as usize == i));
    let mut lines: Vec<String> = Vec::new();
    for (u, v, m) in g.edges() {
        for _ in 0..m {
            lines.push(format!("e {} {}", u.0 + 1, v.0 + 1));
        }
    }
    let mut out = String::new();
    match inst.kind {
        Kind::Bgvd => writeln!(out, "p bgvd {n} {}", lines.len()).unwrap(),
        Kind::Wfvs { k } => writeln!(out, "p wfvs {n} {} {k}", lines.len()).unwrap(),
    }
    for l in lines {
        writeln!(out, "{l}").unwrap();
    }
    for v in g.vertices() {
        let w = inst.graph.weight(v);
        if *w != weight_int(1) {
            let den = if w.denom().is_one() { String::new() } else { format!("/{}", w.denom()) };
            writeln!(out, "w {} {}{}", v.0 + 1, w.numer(), den).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_triangle_with_weights() {
        let inst = parse("c tri\np wfvs 3 3 1\ne 1 2\ne 2 3\ne 3 1\nw 2 5\nw 3 10/2\n").unwrap();
        assert_eq!(inst.kind, Kind::Wfvs { k: 1 });
        assert_eq!(inst.graph.weight(VertexId(1)), &weight_int(5));
        assert_eq!(inst.graph.weight(VertexId(2)), &weight_int(5));
        assert_eq!(inst.graph.graph.edge_count(), 3);
    }

    #[test]
    fn diagnostics() {
        assert_eq!(parse("p bgvd 2 1\ne 1 3\n").unwrap_err().line, 2);
        assert_eq!(parse("e 1 2\n").unwrap_err().line, 1);
        assert_eq!(parse("p bgvd 2 2\ne 1 2\n").unwrap_err().line, 0);
        assert_eq!(parse("p wfvs 2 0 1\nw 1 3/0\n").unwrap_err().line, 2);
        assert!(parse("p bgvd 2 0\nx\n").is_err());
    }

    #[test]
    fn repeated_lines_add_multiplicity() {
        let inst = parse("p wfvs 2 3 0\ne 1 2\ne 2 1\ne 1 1\n").unwrap();
        assert_eq!(inst.graph.graph.multiplicity(VertexId(0), VertexId(1)), 2);
        assert_eq!(inst.graph.graph.loops(VertexId(0)), 1);
    }

    proptest! {
        #[test]
        fn round_trip(
            n in 1usize..10,
            edges in proptest::collection::vec((0u32..10, 0u32..10), 0..20),
            weights in proptest::collection::vec((0i64..20, 1i64..5), 10),
            k in 0usize..5,
            wfvs in any::<bool>(),
        ) {
            let mut g = MultiGraph::with_vertices(n);
            for (a, b) in edges {
                g.add_edge(VertexId(a % n as u32), VertexId(b % n as u32)).unwrap();
            }
            let mut graph = WeightedGraph::unit(g);
            for (i, (a, b)) in weights.into_iter().take(n).enumerate() {
                graph.set_weight(VertexId(i as u32), Weight::new(a.into(), b.into()));
            }
            let kind = if wfvs { Kind::Wfvs { k } } else { Kind::Bgvd };
            let inst = Instance { kind, graph };
            prop_assert_eq!(parse(&serialize(&inst)).unwrap(), inst);
        }
    }
}
