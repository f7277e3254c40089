//! Graphviz rendering.

use std::fmt::Write;

use super::Multigraph;

/// Deterministic DOT text: vertices by id, edges by endpoints then label.
/// Vertex `i` is drawn as `p<i> [+]` or `p<i> [-]`, edges carry their label.
pub fn to_dot(g: &Multigraph) -> String {
    if g.vertices.is_empty() && g.edges.is_empty() {
        return "graph G { }\n".to_string();
    }
    let mut vertices = g.vertices.clone();
    vertices.sort_by_key(|v| v.id);
    let mut edges: Vec<_> = g
        .edges
        .iter()
        .map(|e| (e.u.min(e.v), e.u.max(e.v), e.label))
        .collect();
    edges.sort();

    let mut out = String::from("graph G {\n");
    for v in &vertices {
        writeln!(
            out,
            "  p{id} [label=\"p{id} [{s}]\"];",
            id = v.id,
            s = v.sign
        )
        .unwrap();
    }
    for (u, v, label) in edges {
        writeln!(out, "  p{u} -- p{v} [label=\"{label}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}
