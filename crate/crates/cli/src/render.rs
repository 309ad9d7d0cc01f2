//! Text and DOT emission.

use std::collections::HashSet;
use std::fmt::Write;

use p3decomp::{Certificate, Digraph, FractionalReport, LineGraph, P3Decomposition, P3Policy};

pub fn decision_text(
    decomposition: Option<&P3Decomposition>,
    certificate: Option<&Certificate>,
    policy: P3Policy,
) -> String {
    let mut s = String::new();
    match decomposition {
        Some(dec) => {
            writeln!(s, "decomposable ({policy}): {} paths", dec.len()).unwrap();
            for t in &dec.triples {
                writeln!(s, "{} -> {} -> {}", t.u, t.v, t.w).unwrap();
            }
        }
        None => {
            writeln!(s, "not decomposable ({policy})").unwrap();
            if let Some(c) = certificate {
                writeln!(s, "certificate: {}", serde_json::to_string(c).unwrap()).unwrap();
            }
        }
    }
    s
}

pub fn fractional_text(r: &FractionalReport) -> String {
    match &r.certificate {
        _ if r.exists => "fractional perfect matching exists".to_string(),
        Some(c) => format!("no fractional perfect matching\ncertificate: {}", serde_json::to_string(c).unwrap()),
        None => "no fractional perfect matching".to_string(),
    }
}

/// Arcs of the same path share a colour index; unmatched arcs stay black.
pub fn decomposition_dot(d: &Digraph, decomposition: Option<&P3Decomposition>) -> String {
    let mut path_of = vec![None; d.size()];
    if let Some(dec) = decomposition {
        for (i, t) in dec.triples.iter().enumerate() {
            for (a, b) in [(t.u, t.v), (t.v, t.w)] {
                if let Some(id) = d.arc_id(a, b) {
                    path_of[id] = Some(i);
                }
            }
        }
    }
    let mut s = String::from("digraph D {\n");
    for v in 0..d.order() {
        writeln!(s, "  {v};").unwrap();
    }
    for (id, a) in d.arcs().iter().enumerate() {
        match path_of[id] {
            Some(i) => writeln!(s, "  {} -> {} [label=\"p{i}\", colorscheme=set19, color={}];", a.tail, a.head, i % 9 + 1).unwrap(),
            None => writeln!(s, "  {} -> {};", a.tail, a.head).unwrap(),
        }
    }
    s.push_str("}\n");
    s
}

/// `highlight` is a cyclic sequence of line-graph vertices whose consecutive
/// edges are drawn bold.
pub fn line_graph_dot(d: &Digraph, l: &LineGraph, highlight: &[usize]) -> String {
    let mut bold = HashSet::new();
    for (i, &a) in highlight.iter().enumerate() {
        let b = highlight[(i + 1) % highlight.len()];
        bold.insert((a.min(b), a.max(b)));
    }
    let mut s = String::from("graph L {\n");
    for (id, a) in d.arcs().iter().enumerate() {
        writeln!(s, "  {id} [label=\"{id}: {}->{}\"];", a.tail, a.head).unwrap();
    }
    for &(a, b) in l.edges() {
        if bold.contains(&(a, b)) {
            writeln!(s, "  {a} -- {b} [color=red, penwidth=2];").unwrap();
        } else {
            writeln!(s, "  {a} -- {b};").unwrap();
        }
    }
    s.push_str("}\n");
    s
}

pub fn line_graph_text(l: &LineGraph) -> String {
    let mut s = format!("{} vertices, {} edges ({})\n", l.vertex_count(), l.edges().len(), l.policy());
    for &(a, b) in l.edges() {
        writeln!(s, "{a} {b}").unwrap();
    }
    s
}
