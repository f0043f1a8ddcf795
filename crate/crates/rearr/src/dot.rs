//! Graphviz output for systems, expansion graphs and diagrams.

use std::fmt::Write as _;

use rearr_core::{DirectedGraph, ExpansionGraph, GraphPairDiagram, ReplacementSystem, VertexId};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn vertex_name(sys: &ReplacementSystem, v: &VertexId) -> String {
    match v {
        VertexId::Base(i) => sys.base().vertices[*i].clone(),
        VertexId::Inner(a, w) => {
            format!("{}/{}", a.display(sys), sys.rule(a.color(sys)).graph.vertices[*w])
        }
    }
}

fn plain_graph(out: &mut String, sys: &ReplacementSystem, prefix: &str, g: &DirectedGraph) {
    for v in &g.vertices {
        let _ = writeln!(out, "    {} [label={}];", quote(&format!("{prefix}{v}")), quote(v));
    }
    for e in &g.edges {
        let _ = writeln!(
            out,
            "    {} -> {} [label={}, color={}];",
            quote(&format!("{prefix}{}", g.vertices[e.src])),
            quote(&format!("{prefix}{}", g.vertices[e.dst])),
            quote(&e.id),
            quote(sys.color_name(e.color)),
        );
    }
}

/// The base graph and every replacement graph as clusters.
pub fn system_dot(sys: &ReplacementSystem) -> String {
    let mut out = format!("digraph {} {{\n", quote(sys.name()));
    out.push_str("  subgraph cluster_base {\n    label=\"base\";\n");
    plain_graph(&mut out, sys, "base:", sys.base());
    out.push_str("  }\n");
    for (i, (c, rule)) in sys.rules().enumerate() {
        let name = sys.color_name(c);
        let _ = writeln!(out, "  subgraph cluster_rule{i} {{\n    label={};", quote(&format!("replacement {name}")));
        let prefix = format!("{name}:");
        plain_graph(&mut out, sys, &prefix, &rule.graph);
        for (v, shape) in [(rule.init, "init"), (rule.term, "term")] {
            let _ = writeln!(
                out,
                "    {} [xlabel={}];",
                quote(&format!("{prefix}{}", rule.graph.vertices[v])),
                quote(shape)
            );
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

/// Each leaf is drawn through a midpoint node `<prefix>e<i>`, so that
/// diagrams can attach sigma to it.
fn expansion_body(out: &mut String, sys: &ReplacementSystem, prefix: &str, g: &ExpansionGraph) {
    for v in &g.vertices {
        let name = vertex_name(sys, v);
        let _ = writeln!(out, "    {} [label={}];", quote(&format!("{prefix}{name}")), quote(&name));
    }
    for (i, e) in g.edges.iter().enumerate() {
        let mid = quote(&format!("{prefix}e{i}"));
        let color = quote(sys.color_name(e.color));
        let _ = writeln!(out, "    {mid} [shape=plaintext, label={}];", quote(&e.address.display(sys).to_string()));
        let _ = writeln!(
            out,
            "    {} -> {mid} [arrowhead=none, color={color}];",
            quote(&format!("{prefix}{}", vertex_name(sys, &g.vertices[e.src])))
        );
        let _ = writeln!(
            out,
            "    {mid} -> {} [color={color}];",
            quote(&format!("{prefix}{}", vertex_name(sys, &g.vertices[e.dst])))
        );
    }
}

pub fn expansion_dot(sys: &ReplacementSystem, g: &ExpansionGraph) -> String {
    let mut out = String::from("digraph expansion {\n  subgraph cluster_e {\n");
    expansion_body(&mut out, sys, "", g);
    out.push_str("  }\n}\n");
    out
}

/// Domain and range graphs side by side, sigma as dashed cross-edges.
pub fn diagram_dot(sys: &ReplacementSystem, d: &GraphPairDiagram) -> String {
    let dg = d.domain.graph(sys);
    let rg = d.range.graph(sys);
    let mut out = String::from("digraph diagram {\n");
    for (name, prefix, g) in [("domain", "D:", &dg), ("range", "R:", &rg)] {
        let _ = writeln!(out, "  subgraph cluster_{name} {{\n    label={};", quote(name));
        expansion_body(&mut out, sys, prefix, g);
        out.push_str("  }\n");
    }
    for (a, b) in &d.sigma {
        let i = dg.edges.iter().position(|e| &e.address == a).expect("domain leaf");
        let j = rg.edges.iter().position(|e| &e.address == b).expect("range leaf");
        let _ = writeln!(out, "  \"D:e{i}\" -> \"R:e{j}\" [style=dashed, constraint=false];");
    }
    out.push_str("}\n");
    out
}
