//! Line-oriented text format for hypergraphs.
//!
//! ```text
//! # comments run to the end of the line
//! hypergraph undirected            # or: hypergraph oriented
//! vertices v1 v2 v3 v4             # optional; fixes the vertex order
//! edge e1 v1 v2 v4                 # undirected hyperedge
//! edge e2 v1 v2
//! ```
//!
//! Oriented files use `in:`/`out:` sides with comma-separated members;
//! either side may be omitted, but not both:
//!
//! ```text
//! hypergraph oriented
//! edge e1 in:v1,v4 out:v2
//! edge e2 in:v2 out:v1
//! ```
//!
//! Tokens are whitespace-separated. Syntax problems report line and column;
//! structural problems (singleton hyperedges, duplicate members, isolated
//! vertices, ...) use the dedicated error variants of [`crate::Error`].

use crate::error::{Error, Result};
use crate::hypergraph::{AnyHypergraph, Hypergraph, OrientedHypergraph};

/// Parse either hypergraph flavour, as declared by the header line.
pub fn parse(text: &str) -> Result<AnyHypergraph> {
    Parser::new(text).run()
}

/// Parse and insist on the undirected flavour.
pub fn parse_undirected(text: &str) -> Result<Hypergraph> {
    match parse(text)? {
        AnyHypergraph::Undirected(h) => Ok(h),
        AnyHypergraph::Oriented(_) => Err(Error::InvalidParameter {
            name: "input",
            message: "expected an undirected hypergraph, found an oriented one".into(),
        }),
    }
}

/// Parse and insist on the oriented flavour.
pub fn parse_oriented(text: &str) -> Result<OrientedHypergraph> {
    match parse(text)? {
        AnyHypergraph::Oriented(h) => Ok(h),
        AnyHypergraph::Undirected(_) => Err(Error::InvalidParameter {
            name: "input",
            message: "expected an oriented hypergraph, found an undirected one".into(),
        }),
    }
}

/// A token with its 1-based column, for error reporting.
struct Token<'a> {
    column: usize,
    text: &'a str,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut chars = line.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let mut end = start;
        while let Some(&(i, c)) = chars.peek() {
            if c.is_whitespace() {
                break;
            }
            end = i + c.len_utf8();
            chars.next();
        }
        tokens.push(Token {
            column: start + 1,
            text: &line[start..end],
        });
    }
    tokens
}

struct Parser<'a> {
    text: &'a str,
}

enum Flavour {
    Undirected,
    Oriented,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text }
    }

    fn run(self) -> Result<AnyHypergraph> {
        let mut flavour: Option<Flavour> = None;
        let mut vertices: Vec<String> = Vec::new();
        let mut plain_edges: Vec<(String, Vec<String>)> = Vec::new();
        let mut oriented_edges: Vec<(String, Vec<String>, Vec<String>)> = Vec::new();
        let mut saw_vertices = false;

        for (lineno, raw) in self.text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens = tokenize(content);
            if tokens.is_empty() {
                continue;
            }
            let head = &tokens[0];
            match (head.text, &flavour) {
                ("hypergraph", None) => {
                    let kind = tokens.get(1).ok_or_else(|| {
                        syntax(line, head.column, "expected `undirected` or `oriented`")
                    })?;
                    flavour = Some(match kind.text {
                        "undirected" => Flavour::Undirected,
                        "oriented" => Flavour::Oriented,
                        other => {
                            return Err(syntax(
                                line,
                                kind.column,
                                format!("unknown hypergraph kind {other:?}"),
                            ))
                        }
                    });
                    if let Some(extra) = tokens.get(2) {
                        return Err(syntax(
                            line,
                            extra.column,
                            format!("unexpected token {:?} after header", extra.text),
                        ));
                    }
                }
                ("hypergraph", Some(_)) => {
                    return Err(syntax(line, head.column, "duplicate header line"));
                }
                (_, None) => {
                    return Err(syntax(
                        line,
                        head.column,
                        "expected `hypergraph undirected` or `hypergraph oriented` first",
                    ));
                }
                ("vertices", Some(_)) => {
                    if saw_vertices {
                        return Err(syntax(line, head.column, "duplicate vertices line"));
                    }
                    if !plain_edges.is_empty() || !oriented_edges.is_empty() {
                        return Err(syntax(
                            line,
                            head.column,
                            "vertices line must precede edge lines",
                        ));
                    }
                    if tokens.len() == 1 {
                        return Err(syntax(line, head.column, "empty vertices line"));
                    }
                    vertices = tokens[1..].iter().map(|t| t.text.to_owned()).collect();
                    saw_vertices = true;
                }
                ("edge", Some(Flavour::Undirected)) => {
                    let (name, rest) = edge_name(line, &tokens)?;
                    let mut members = Vec::new();
                    for t in rest {
                        if t.text.starts_with("in:") || t.text.starts_with("out:") {
                            return Err(syntax(
                                line,
                                t.column,
                                "oriented side in an undirected hypergraph",
                            ));
                        }
                        members.push(t.text.to_owned());
                    }
                    plain_edges.push((name, members));
                }
                ("edge", Some(Flavour::Oriented)) => {
                    let (name, rest) = edge_name(line, &tokens)?;
                    let mut inputs: Option<Vec<String>> = None;
                    let mut outputs: Option<Vec<String>> = None;
                    for t in rest {
                        if let Some(list) = t.text.strip_prefix("in:") {
                            if inputs.is_some() {
                                return Err(syntax(line, t.column, "duplicate in: side"));
                            }
                            inputs = Some(split_side(line, t.column, list)?);
                        } else if let Some(list) = t.text.strip_prefix("out:") {
                            if outputs.is_some() {
                                return Err(syntax(line, t.column, "duplicate out: side"));
                            }
                            outputs = Some(split_side(line, t.column, list)?);
                        } else {
                            return Err(syntax(
                                line,
                                t.column,
                                format!(
                                    "expected `in:...` or `out:...`, found {:?}",
                                    t.text
                                ),
                            ));
                        }
                    }
                    if inputs.is_none() && outputs.is_none() {
                        return Err(syntax(
                            line,
                            head.column,
                            "oriented hyperedge needs an in: or out: side",
                        ));
                    }
                    oriented_edges.push((
                        name,
                        inputs.unwrap_or_default(),
                        outputs.unwrap_or_default(),
                    ));
                }
                (other, Some(_)) => {
                    return Err(syntax(
                        line,
                        head.column,
                        format!("unknown directive {other:?}"),
                    ));
                }
            }
        }

        match flavour {
            None => Err(syntax(1, 1, "empty input; expected a hypergraph header")),
            Some(Flavour::Undirected) => {
                Hypergraph::new(vertices, plain_edges).map(AnyHypergraph::Undirected)
            }
            Some(Flavour::Oriented) => {
                OrientedHypergraph::new(vertices, oriented_edges).map(AnyHypergraph::Oriented)
            }
        }
    }
}

fn edge_name<'a, 'b>(
    line: usize,
    tokens: &'b [Token<'a>],
) -> Result<(String, &'b [Token<'a>])> {
    let name = tokens
        .get(1)
        .ok_or_else(|| syntax(line, tokens[0].column, "edge line without a name"))?;
    Ok((name.text.to_owned(), &tokens[2..]))
}

fn split_side(line: usize, column: usize, list: &str) -> Result<Vec<String>> {
    if list.is_empty() {
        return Err(syntax(line, column, "empty member list after in:/out:"));
    }
    let mut out = Vec::new();
    for part in list.split(',') {
        if part.is_empty() {
            return Err(syntax(line, column, "empty member name in list"));
        }
        out.push(part.to_owned());
    }
    Ok(out)
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}
