//! DIMACS-style edge lists: `p edge <n> <m>` followed by `m` lines
//! `e <u> <v>` with 1-indexed vertices. Lines starting with `c` are comments.

use std::fmt::Write;

use super::{Graph, GraphError};

fn syntax(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Syntax {
        line,
        message: message.into(),
    }
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(syntax(line, "duplicate problem line"));
                }
                if toks.next() != Some("edge") {
                    return Err(syntax(line, "expected `p edge <n> <m>`"));
                }
                let n = number(toks.next(), line, "vertex count")?;
                let m = number(toks.next(), line, "edge count")?;
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| syntax(line, "edge before problem line"))?;
                let u = number(toks.next(), line, "vertex")?;
                let v = number(toks.next(), line, "vertex")?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(syntax(line, format!("vertex {x} outside 1..={n}")));
                    }
                }
                if u == v {
                    return Err(syntax(line, format!("loop at vertex {u}")));
                }
                edges.push(((u - 1, v - 1), line));
            }
            Some(other) => return Err(syntax(line, format!("unknown line type `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
    }
    let (n, m) =
        header.ok_or_else(|| syntax(text.lines().count().max(1), "missing problem line"))?;
    if edges.len() != m {
        return Err(GraphError::HeaderMismatch {
            declared: m,
            found: edges.len(),
        });
    }
    let pairs: Vec<_> = edges.iter().map(|&(e, _)| e).collect();
    Graph::new(n, &pairs).map_err(|err| match err {
        GraphError::DuplicateEdge(a, b) => {
            let line = edges
                .iter()
                .filter(|&&((u, v), _)| (u.min(v), u.max(v)) == (a, b))
                .nth(1)
                .map(|&(_, l)| l)
                .unwrap_or(0);
            syntax(line, format!("duplicate edge {} {}", a + 1, b + 1))
        }
        other => other,
    })
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{generate, Family};
    use super::*;

    #[test]
    fn parses_single_edge() {
        let g = parse_graph("p edge 2 1\ne 1 2\n").unwrap();
        assert_eq!(g, generate(Family::Path, &[2]).unwrap());
    }

    #[test]
    fn canonicalizes_on_write() {
        let g = parse_graph("c a triangle\np edge 3 3\ne 2 1\n\ne 2 3\ne 3 1\n").unwrap();
        assert_eq!(write_graph(&g), "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let loop_err = parse_graph("p edge 2 1\ne 1 1\n").unwrap_err();
        assert!(matches!(loop_err, GraphError::Syntax { line: 2, .. }));
        let dup = parse_graph("p edge 3 2\ne 1 2\ne 2 1\n").unwrap_err();
        assert!(matches!(dup, GraphError::Syntax { line: 3, .. }));
        assert_eq!(
            parse_graph("p edge 3 2\ne 1 2\n"),
            Err(GraphError::HeaderMismatch {
                declared: 2,
                found: 1
            })
        );
        assert!(matches!(
            parse_graph("e 1 2\n"),
            Err(GraphError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("p edge 2 1\ne 1 x\n"),
            Err(GraphError::Syntax { line: 2, .. })
        ));
    }
}
