//! The edge-list file format and the input digest.
//!
//! A file holds one header line `n <N> m_edges <M>` followed by exactly
//! `M` lines `u v` with `0 <= u, v < N` and `u != v`, no duplicates.
//! `#` starts a comment (whole line or suffix) and blank lines are
//! ignored. Generator provenance travels as a `# genspec {json}` comment
//! that round-trips into reports.

use mfas_core::digraph::Digraph;
use mfas_core::gen::GenSpec;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at line {}: {}", self.line, self.message)
    }
}

pub struct ParsedInput {
    pub graph: Digraph,
    pub genspec: Option<GenSpec>,
}

pub fn parse_edge_list(text: &str) -> Result<ParsedInput, ParseError> {
    let mut genspec = None;
    let mut header: Option<(usize, u64)> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        if let Some(comment) = raw.trim_start().strip_prefix('#') {
            if let Some(json) = comment.trim_start().strip_prefix("genspec ") {
                let spec: GenSpec =
                    serde_json::from_str(json).map_err(|e| ParseError {
                        line: line_no,
                        message: format!("bad genspec comment: {e}"),
                    })?;
                genspec = Some(spec);
            }
            continue;
        }
        let significant = match raw.split('#').next() {
            Some(s) => s.trim(),
            None => "",
        };
        if significant.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = significant.split_whitespace().collect();
        match &mut header {
            None => {
                if tokens.len() != 4 || tokens[0] != "n" || tokens[2] != "m_edges" {
                    return Err(ParseError {
                        line: line_no,
                        message: "expected header `n <N> m_edges <M>`".into(),
                    });
                }
                let n: usize = tokens[1].parse().map_err(|_| ParseError {
                    line: line_no,
                    message: format!("bad vertex count `{}`", tokens[1]),
                })?;
                let m: u64 = tokens[3].parse().map_err(|_| ParseError {
                    line: line_no,
                    message: format!("bad edge count `{}`", tokens[3]),
                })?;
                header = Some((n, m));
            }
            Some((_, m)) => {
                if edges.len() as u64 == *m {
                    return Err(ParseError {
                        line: line_no,
                        message: format!("more than the declared {m} edges"),
                    });
                }
                if tokens.len() != 2 {
                    return Err(ParseError {
                        line: line_no,
                        message: "expected an edge line `u v`".into(),
                    });
                }
                let parse = |t: &str| -> Result<u32, ParseError> {
                    t.parse().map_err(|_| ParseError {
                        line: line_no,
                        message: format!("bad vertex id `{t}`"),
                    })
                };
                edges.push((parse(tokens[0])?, parse(tokens[1])?));
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(ParseError {
            line: text.lines().count() + 1,
            message: "missing header `n <N> m_edges <M>`".into(),
        });
    };
    if edges.len() as u64 != m {
        return Err(ParseError {
            line: text.lines().count() + 1,
            message: format!("declared {m} edges but found {}", edges.len()),
        });
    }
    let graph = Digraph::build(n, &edges).map_err(|e| ParseError {
        line: 0,
        message: e.to_string(),
    })?;
    Ok(ParsedInput { graph, genspec })
}

/// Canonical rendering: header, then edges in lexicographic order.
pub fn render_edge_list(g: &Digraph, genspec: Option<&GenSpec>) -> String {
    let mut out = String::new();
    if let Some(spec) = genspec {
        out.push_str("# genspec ");
        out.push_str(&serde_json::to_string(spec).expect("genspec serializes"));
        out.push('\n');
    }
    out.push_str(&format!("n {} m_edges {}\n", g.vertex_count(), g.edge_count()));
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// FNV-1a 64 over the canonical rendering (comments excluded), so the
/// digest identifies the graph itself. Not cryptographic.
pub fn input_digest(g: &Digraph) -> String {
    let canonical = render_edge_list(g, None);
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in canonical.bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("fnv1a64:{hash:016x}")
}
