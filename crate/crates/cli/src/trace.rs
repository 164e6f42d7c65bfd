//! Text trace format. One operation per line after a `n <count>` header;
//! `#` starts a comment. Mutations and queries share the vertex-id space of
//! the header.

use std::fmt;
use std::str::FromStr;

use arbor_core::Vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceOp {
    Insert(Vertex, Vertex),
    Delete(Vertex, Vertex),
    AdjacencyQuery(Vertex, Vertex),
    MatchingSize,
    SetWeight(Vertex, Vertex, i64),
    SetX(Vertex, i64),
    CoordinateQuery(Vertex),
}

impl TraceOp {
    /// One-character tag used in stats rows.
    pub fn kind(&self) -> char {
        match self {
            TraceOp::Insert(..) => '+',
            TraceOp::Delete(..) => '-',
            TraceOp::AdjacencyQuery(..) => 'a',
            TraceOp::MatchingSize => 'm',
            TraceOp::SetWeight(..) => 'w',
            TraceOp::SetX(..) => 'x',
            TraceOp::CoordinateQuery(..) => 'y',
        }
    }
}

impl fmt::Display for TraceOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TraceOp::Insert(u, v) => write!(f, "+ {u} {v}"),
            TraceOp::Delete(u, v) => write!(f, "- {u} {v}"),
            TraceOp::AdjacencyQuery(u, v) => write!(f, "a {u} {v}"),
            TraceOp::MatchingSize => write!(f, "m"),
            TraceOp::SetWeight(i, j, w) => write!(f, "w {i} {j} {w}"),
            TraceOp::SetX(j, val) => write!(f, "x {j} {val}"),
            TraceOp::CoordinateQuery(i) => write!(f, "y {i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub n: usize,
    pub ops: Vec<TraceOp>,
}

/// Syntactic or static-semantic defect, with its 1-based line number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceError {
    pub line: usize,
    pub detail: String,
}

impl fmt::Display for TraceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.detail)
    }
}

impl std::error::Error for TraceError {}

fn fail<T>(line: usize, detail: impl Into<String>) -> Result<T, TraceError> {
    Err(TraceError { line, detail: detail.into() })
}

fn parse_token<T: FromStr>(line: usize, token: Option<&str>, role: &str) -> Result<T, TraceError> {
    match token {
        None => fail(line, format!("missing {role}")),
        Some(raw) => match raw.parse() {
            Ok(value) => Ok(value),
            Err(_) => fail(line, format!("bad {role} `{raw}`")),
        },
    }
}

impl Trace {
    /// Parses a trace document. Checks grammar, vertex ranges, and self
    /// loops; edge presence is dynamic and is enforced during replay.
    pub fn parse(text: &str) -> Result<Trace, TraceError> {
        let mut n: Option<usize> = None;
        let mut ops = Vec::new();

        for (index, raw_line) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw_line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut tokens = content.split_whitespace();
            let tag = tokens.next().expect("non-empty line has a first token");

            if n.is_none() {
                if tag != "n" {
                    return fail(line, format!("expected `n <count>` header, found `{tag}`"));
                }
                let count: usize = parse_token(line, tokens.next(), "vertex count")?;
                if count == 0 {
                    return fail(line, "vertex count must be positive");
                }
                if let Some(extra) = tokens.next() {
                    return fail(line, format!("trailing token `{extra}`"));
                }
                n = Some(count);
                continue;
            }
            let n = n.expect("header parsed");

            let vertex = |line: usize, token: Option<&str>, role: &str| -> Result<Vertex, TraceError> {
                let id: Vertex = parse_token(line, token, role)?;
                if (id as usize) < n {
                    Ok(id)
                } else {
                    fail(line, format!("{role} {id} out of range for n = {n}"))
                }
            };

            let op = match tag {
                "+" | "-" | "a" => {
                    let u = vertex(line, tokens.next(), "vertex")?;
                    let v = vertex(line, tokens.next(), "vertex")?;
                    if u == v && tag != "a" {
                        return fail(line, format!("self loop at vertex {u}"));
                    }
                    match tag {
                        "+" => TraceOp::Insert(u, v),
                        "-" => TraceOp::Delete(u, v),
                        _ => TraceOp::AdjacencyQuery(u, v),
                    }
                }
                "m" => TraceOp::MatchingSize,
                "w" => {
                    let i = vertex(line, tokens.next(), "row")?;
                    let j = vertex(line, tokens.next(), "column")?;
                    let w: i64 = parse_token(line, tokens.next(), "weight")?;
                    TraceOp::SetWeight(i, j, w)
                }
                "x" => {
                    let j = vertex(line, tokens.next(), "coordinate")?;
                    let val: i64 = parse_token(line, tokens.next(), "value")?;
                    TraceOp::SetX(j, val)
                }
                "y" => TraceOp::CoordinateQuery(vertex(line, tokens.next(), "coordinate")?),
                other => return fail(line, format!("unknown op `{other}`")),
            };
            if let Some(extra) = tokens.next() {
                return fail(line, format!("trailing token `{extra}`"));
            }
            ops.push(op);
        }

        match n {
            Some(n) => Ok(Trace { n, ops }),
            None => fail(1, "empty trace: missing `n <count>` header"),
        }
    }

    /// Renders the document `parse` reads back.
    pub fn render(&self) -> String {
        let mut out = String::with_capacity(16 + self.ops.len() * 10);
        out.push_str(&format!("n {}\n", self.n));
        for op in &self.ops {
            out.push_str(&format!("{op}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let text = "# demo\nn 4\n+ 0 1\nw 1 2 -3\nx 3 7\ny 2\na 0 1 # inline\nm\n- 0 1\n";
        let trace = Trace::parse(text).unwrap();
        assert_eq!(trace.n, 4);
        assert_eq!(trace.ops.len(), 7);
        assert_eq!(Trace::parse(&trace.render()).unwrap(), trace);
    }

    #[test]
    fn rejects_defects() {
        for (text, needle) in [
            ("", "missing `n <count>` header"),
            ("n 0\n", "must be positive"),
            ("+ 0 1\n", "expected `n <count>` header"),
            ("n 3\n+ 0 3\n", "out of range"),
            ("n 3\n+ 1 1\n", "self loop"),
            ("n 3\nq 0 1\n", "unknown op"),
            ("n 3\n+ 0\n", "missing vertex"),
            ("n 3\n+ 0 1 2\n", "trailing token"),
            ("n 3\nw 0 1 abc\n", "bad weight"),
        ] {
            let err = Trace::parse(text).unwrap_err();
            assert!(err.detail.contains(needle), "{text:?} -> {err}");
        }
    }

    #[test]
    fn self_adjacency_query_is_legal() {
        let trace = Trace::parse("n 2\na 1 1\n").unwrap();
        assert_eq!(trace.ops, vec![TraceOp::AdjacencyQuery(1, 1)]);
    }
}
