//! Text encodings: the canonical edge-list format, graph6 for simple graphs,
//! and a small JSON object form.
//!
//! Edge list: `n; u v [mult [num/den]]; ...`. Clauses are separated by `;`,
//! `#` starts a comment running to end of line.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Edge, Multigraph, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Graph6,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge_list" | "edges" | "el" => Ok(Format::EdgeList),
            "graph6" | "g6" => Ok(Format::Graph6),
            "json" => Ok(Format::Json),
            other => Err(Error::Param(format!("unknown graph format `{other}`"))),
        }
    }
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::EdgeList => "edge_list",
            Format::Graph6 => "graph6",
            Format::Json => "json",
        }
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Multigraph> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Graph6 => parse_graph6(text),
        Format::Json => parse_json(text),
    }
}

pub fn serialize_graph(g: &Multigraph, format: Format) -> Result<String> {
    match format {
        Format::EdgeList => Ok(to_edge_list(g)),
        Format::Graph6 => to_graph6(g),
        Format::Json => Ok(to_json(g).to_string()),
    }
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

/// Splits on a delimiter predicate, returning `(byte offset, token)` pairs.
fn tokens_with_offsets<'a>(
    text: &'a str,
    base: usize,
    is_sep: impl Fn(char) -> bool + 'a,
) -> impl Iterator<Item = (usize, &'a str)> + 'a {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if is_sep(c) {
            if let Some(s) = start.take() {
                out.push((base + s, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((base + s, &text[s..]));
    }
    out.into_iter()
}

fn parse_rational(tok: &str, pos: usize) -> Result<Rational> {
    let parse_int = |s: &str| {
        s.parse::<BigInt>()
            .map_err(|_| syntax(pos, format!("invalid weight `{tok}`")))
    };
    match tok.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d == BigInt::from(0) {
                return Err(syntax(pos, "zero denominator"));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(tok)?)),
    }
}

fn parse_edge_list(text: &str) -> Result<Multigraph> {
    // Blank out comments so byte offsets stay meaningful.
    let mut cleaned = String::with_capacity(text.len());
    let mut in_comment = false;
    for c in text.chars() {
        if c == '#' {
            in_comment = true;
        } else if c == '\n' {
            in_comment = false;
        }
        if in_comment {
            cleaned.extend(std::iter::repeat_n(' ', c.len_utf8()));
        } else {
            cleaned.push(c);
        }
    }

    let mut clauses = tokens_with_offsets(&cleaned, 0, |c| c == ';' || c == '\n')
        .filter(|(_, s)| !s.trim().is_empty())
        .peekable();
    let (pos, head) = clauses
        .next()
        .ok_or_else(|| syntax(0, "missing vertex count"))?;
    let head_tokens: Vec<_> = tokens_with_offsets(head, pos, char::is_whitespace).collect();
    if head_tokens.len() != 1 {
        return Err(syntax(pos, "first clause must be the vertex count alone"));
    }
    let (npos, ntok) = head_tokens[0];
    let n: usize = ntok
        .parse()
        .map_err(|_| syntax(npos, format!("invalid vertex count `{ntok}`")))?;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }

    let mut edges = Vec::new();
    for (cpos, clause) in clauses {
        let toks: Vec<_> = tokens_with_offsets(clause, cpos, char::is_whitespace).collect();
        if !(2..=4).contains(&toks.len()) {
            return Err(syntax(
                toks.first().map_or(cpos, |t| t.0),
                format!(
                    "expected `u v [mult [weight]]`, found {} tokens",
                    toks.len()
                ),
            ));
        }
        let vertex = |(p, t): (usize, &str)| -> Result<usize> {
            let x: usize = t
                .parse()
                .map_err(|_| syntax(p, format!("invalid vertex `{t}`")))?;
            if x >= n {
                return Err(syntax(p, format!("vertex {x} out of range 0..{n}")));
            }
            Ok(x)
        };
        let u = vertex(toks[0])?;
        let v = vertex(toks[1])?;
        if u == v {
            return Err(Error::LoopInInput(u));
        }
        let mult = match toks.get(2) {
            Some(&(p, t)) => match t.parse::<u32>() {
                Ok(m) if m > 0 => m,
                _ => return Err(syntax(p, format!("invalid multiplicity `{t}`"))),
            },
            None => 1,
        };
        let weight = match toks.get(3) {
            Some(&(p, t)) => {
                let w = parse_rational(t, p)?;
                if w <= Rational::from_integer(0.into()) {
                    return Err(syntax(p, "weights must be positive"));
                }
                w
            }
            None => Rational::one(),
        };
        edges.push(Edge::new(u, v, mult, weight));
    }
    Multigraph::new(n, edges)
}

/// Canonical edge-list text: edge classes in sorted order, multiplicity and
/// weight written only when they differ from 1.
pub fn to_edge_list(g: &Multigraph) -> String {
    let mut out = g.n().to_string();
    for e in g.edges() {
        out.push_str(&format!("; {} {}", e.u, e.v));
        if e.mult != 1 || !e.weight.is_one() {
            out.push_str(&format!(" {}", e.mult));
        }
        if !e.weight.is_one() {
            out.push_str(&format!(" {}", e.weight));
        }
    }
    out
}

fn parse_graph6(text: &str) -> Result<Multigraph> {
    let mut s = text.trim_end_matches(['\n', '\r']).as_bytes();
    let mut offset = 0;
    if s.starts_with(b">>graph6<<") {
        s = &s[10..];
        offset = 10;
    }
    for (i, &b) in s.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(syntax(offset + i, format!("byte {b} outside graph6 range")));
        }
    }
    let (n, header) = match s {
        [] => return Err(syntax(offset, "empty graph6 string")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(syntax(offset + 2, "truncated graph6 size"));
            }
            let n = rest[..6]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(syntax(offset + 1, "truncated graph6 size"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    let body = &s[header..];
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if body.len() != bytes_needed {
        return Err(syntax(
            offset + header,
            format!(
                "expected {bytes_needed} adjacency bytes for {n} vertices, found {}",
                body.len()
            ),
        ));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut pairs = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                pairs.push((i, j));
            }
            k += 1;
        }
    }
    Multigraph::from_pairs(n, &pairs)
}

fn to_graph6(g: &Multigraph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::UnsupportedFormat {
            format: "graph6",
            reason: "parallel edges".into(),
        });
    }
    if !g.is_unweighted() {
        return Err(Error::UnsupportedFormat {
            format: "graph6",
            reason: "edge weights".into(),
        });
    }
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for s in [12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for s in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    }
    let adj = g.multiplicity_matrix();
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | (adj[i][j] > 0) as u8;
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
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

fn parse_json(text: &str) -> Result<Multigraph> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        let pos = text
            .lines()
            .take(e.line().saturating_sub(1))
            .map(|l| l.len() + 1)
            .sum::<usize>()
            + e.column().saturating_sub(1);
        syntax(pos, e.to_string())
    })?;
    graph_from_json(&value)
}

/// Builds a graph from the JSON object form `{"n": .., "edges": [[u,v,mult,weight], ..]}`.
pub fn graph_from_json(value: &Value) -> Result<Multigraph> {
    let bad = |m: &str| syntax(0, m.to_string());
    let n = value
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing integer field `n`"))? as usize;
    let edges_json = value
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing array field `edges`"))?;
    let mut edges = Vec::new();
    for (i, e) in edges_json.iter().enumerate() {
        let arr = e
            .as_array()
            .filter(|a| (2..=4).contains(&a.len()))
            .ok_or_else(|| bad(&format!("edge {i} must be [u, v, mult?, weight?]")))?;
        let idx = |j: usize| {
            arr[j]
                .as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| bad(&format!("edge {i}: endpoint must be an integer")))
        };
        let (u, v) = (idx(0)?, idx(1)?);
        if u == v {
            return Err(Error::LoopInInput(u));
        }
        let mult = match arr.get(2) {
            Some(m) => m
                .as_u64()
                .filter(|&m| m > 0 && m <= u32::MAX as u64)
                .ok_or_else(|| bad(&format!("edge {i}: invalid multiplicity")))?
                as u32,
            None => 1,
        };
        let weight = match arr.get(3) {
            Some(Value::String(s)) => parse_rational(s, 0)?,
            Some(Value::Number(x)) if x.is_i64() => {
                Rational::from_integer(x.as_i64().unwrap().into())
            }
            Some(_) => {
                return Err(bad(&format!(
                    "edge {i}: weight must be an integer or \"p/q\""
                )))
            }
            None => Rational::one(),
        };
        edges.push(Edge::new(u, v, mult, weight));
    }
    let g = Multigraph::new(n, edges)?;
    match value.get("labels").and_then(Value::as_array) {
        Some(labels) => g.with_labels(
            labels
                .iter()
                .map(|l| l.as_str().unwrap_or_default().to_string())
                .collect(),
        ),
        None => Ok(g),
    }
}

pub fn to_json(g: &Multigraph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!([e.u, e.v, e.mult, e.weight.to_string()]))
        .collect();
    let mut obj = json!({ "n": g.n(), "edges": edges });
    if let Some(labels) = g.labels() {
        obj["labels"] = json!(labels);
    }
    obj
}
