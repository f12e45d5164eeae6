//! Graphviz output for face-Reeb graphs.

use std::fmt::Write;

use crate::reeb::ReebGraph;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Vertices are named `v<level>_<component>` and carry their height; edges are
/// labelled by their face. The top edge ends at a node named `inf`.
pub fn reeb_to_dot(r: &ReebGraph) -> String {
    let mut out = String::from("digraph reeb {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n");
    for (i, t) in r.criticals().iter().enumerate() {
        for v in 0..r.vertex_count(i) {
            writeln!(out, "  v{i}_{v} [label=\"{t}\", height_value=\"{t}\"];").unwrap();
        }
    }
    out.push_str("  inf [shape=point];\n");
    for i in 0..r.level_count() {
        for (e, face) in r.edges(i).iter().enumerate() {
            let label = escape(&r.taxa().display(*face));
            let from = format!("v{i}_{}", r.down(i, e));
            let to = match r.up(i, e) {
                Some(u) => format!("v{}_{u}", i + 1),
                None => "inf".into(),
            };
            writeln!(out, "  {from} -> {to} [label=\"{label}\"];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}
