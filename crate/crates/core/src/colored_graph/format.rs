//! Line-oriented graph files.
//!
//! ```text
//! # comments run to the end of the line
//! gamma 3
//! vertices 1
//! e 0 0 0 0 1
//! ```

use std::fmt::Write;

use super::ColoredGraph;
use crate::error::ParseError;
use crate::groups::{GroupContext, GroupElement};

fn parse_int<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T, ParseError> {
    field.parse().map_err(|_| ParseError::new(line, format!("bad {what} `{field}`")))
}

pub fn parse_graph(text: &str) -> Result<ColoredGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, header) = lines.next().ok_or_else(|| ParseError::new(1, "missing `gamma <k>` header"))?;
    let k: i64 = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["gamma", k] => parse_int(line, k, "group order")?,
        _ => return Err(ParseError::new(line, "expected `gamma <k>`")),
    };
    let context = GroupContext::new(k).map_err(|_| ParseError::new(line, format!("k must be 2,3,4,6 (got {k})")))?;

    let (line, header) = lines.next().ok_or_else(|| ParseError::new(line + 1, "missing `vertices <n>` header"))?;
    let n: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["vertices", n] => parse_int(line, n, "vertex count")?,
        _ => return Err(ParseError::new(line, "expected `vertices <n>`")),
    };

    let mut graph = ColoredGraph::new(context, n);
    for (line, body) in lines {
        let fields: Vec<&str> = body.split_whitespace().collect();
        let ["e", tail, head, m1, m2, s] = fields.as_slice() else {
            return Err(ParseError::new(line, "expected `e <tail> <head> <m1> <m2> <s>`"));
        };
        let tail: usize = parse_int(line, tail, "vertex")?;
        let head: usize = parse_int(line, head, "vertex")?;
        for v in [tail, head] {
            if v >= n {
                return Err(ParseError::new(line, format!("vertex {v} out of range (n = {n})")));
            }
        }
        let m1: i64 = parse_int(line, m1, "translation")?;
        let m2: i64 = parse_int(line, m2, "translation")?;
        let s: i64 = parse_int(line, s, "rotation class")?;
        if !(0..k).contains(&s) {
            return Err(ParseError::new(line, format!("rotation class {s} not in [0, {k})")));
        }
        graph.add_edge(tail, head, GroupElement::new([m1, m2], s as u8));
    }
    Ok(graph)
}

pub fn serialize_graph(g: &ColoredGraph) -> String {
    let mut out = String::new();
    writeln!(out, "gamma {}", g.k()).unwrap();
    writeln!(out, "vertices {}", g.n).unwrap();
    for e in &g.edges {
        writeln!(out, "e {} {} {}", e.tail, e.head, e.color).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_loop() {
        let g = parse_graph("gamma 3\nvertices 1\ne 0 0 0 0 1\n").unwrap();
        assert_eq!(g.n, 1);
        assert_eq!(g.m(), 1);
        assert_eq!(g.edges[0].color, g.context.r());
        assert!(g.edges[0].is_loop());
    }

    #[test]
    fn rejects_bad_order() {
        let err = parse_graph("gamma 5\nvertices 1\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("k must be 2,3,4,6"));
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_graph("# header\ngamma 4\nvertices 2\n\ne 0 2 0 0 0\n").unwrap_err();
        assert_eq!(err.line, 5);
        let err = parse_graph("gamma 4\nvertices 2\ne 0 1 0 0 4\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_graph("gamma 4\nedges 2\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(parse_graph("").is_err());
        assert!(parse_graph("gamma 2\nvertices 1\ne 0 0 1 x 0").is_err());
    }

    #[test]
    fn comments_and_round_trip() {
        let text = "gamma 6 # hexagonal\nvertices 2\ne 0 1 -1 2 5 # an edge\n# done\n";
        let g = parse_graph(text).unwrap();
        let canonical = serialize_graph(&g);
        assert_eq!(canonical, "gamma 6\nvertices 2\ne 0 1 -1 2 5\n");
        assert_eq!(serialize_graph(&parse_graph(&canonical).unwrap()), canonical);
    }
}
