//! Plain-text digraph format.
//!
//! ```text
//! digraph <n> <m>
//! bipartition <k>      # optional: vertices 0..k-1 form side X
//! <tail> <head>        # m lines
//! ```
//!
//! `#` starts a comment; blank lines are ignored.

use crate::{Digraph, Error, Result, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedDigraph {
    pub digraph: Digraph,
    pub bipartition: Option<VertexSet>,
}

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_digraph(text: &str) -> Result<ParsedDigraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `digraph <n> <m>` header"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("digraph") {
        return Err(parse_err(hline, "expected `digraph <n> <m>`"));
    }
    let n = parse_count(toks.next(), hline, "vertex count")?;
    let m = parse_count(toks.next(), hline, "arc count")?;
    if toks.next().is_some() {
        return Err(parse_err(hline, "trailing tokens after header"));
    }

    let mut bipartition = None;
    let mut arcs = Vec::with_capacity(m);
    let mut arc_lines = Vec::with_capacity(m);
    for (line, body) in lines {
        let mut toks = body.split_whitespace();
        let first = toks.next().unwrap_or("");
        if first == "bipartition" {
            if bipartition.is_some() || !arcs.is_empty() {
                return Err(parse_err(line, "`bipartition` must directly follow the header"));
            }
            let k = parse_count(toks.next(), line, "bipartition size")?;
            if k > n {
                return Err(parse_err(line, format!("bipartition {k} exceeds order {n}")));
            }
            if toks.next().is_some() {
                return Err(parse_err(line, "trailing tokens after bipartition"));
            }
            bipartition = Some(k);
            continue;
        }
        let tail = parse_count(Some(first), line, "tail")?;
        let head = parse_count(toks.next(), line, "head")?;
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens after arc"));
        }
        arcs.push((tail, head));
        arc_lines.push(line);
    }
    if arcs.len() != m {
        return Err(parse_err(
            arc_lines.last().copied().unwrap_or(hline),
            format!("header declares {m} arcs, found {}", arcs.len()),
        ));
    }

    let digraph = Digraph::new(n, arcs).map_err(|e| {
        let index = match e {
            Error::LoopArc { index, .. }
            | Error::ParallelArc { index, .. }
            | Error::VertexOutOfRange { index, .. } => index,
            _ => 0,
        };
        Error::AtLine {
            line: arc_lines[index],
            source: Box::new(e),
        }
    })?;
    let bipartition = bipartition.map(|k| {
        VertexSet::from_slice(n, &(0..k).collect::<Vec<_>>()).expect("k <= n checked above")
    });
    Ok(ParsedDigraph {
        digraph,
        bipartition,
    })
}

/// Inverse of [`parse_digraph`]; arc order is preserved.
pub fn write_digraph(d: &Digraph, bipartition: Option<usize>) -> String {
    let mut out = format!("digraph {} {}\n", d.order(), d.size());
    if let Some(k) = bipartition {
        out.push_str(&format!("bipartition {k}\n"));
    }
    for a in d.arcs() {
        out.push_str(&format!("{} {}\n", a.tail, a.head));
    }
    out
}
