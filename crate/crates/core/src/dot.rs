//! DOT rendering of resource orders. Output is the Hasse diagram of the
//! order's quotient poset — equivalence classes as nodes, cover relations as
//! edges — with nodes and edges emitted in label order so the bytes are
//! deterministic.

use crate::preorder::FinitePreorder;

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders the quotient Hasse diagram of a preorder. Classes of mutually
/// convertible resources become one node labelled with the member labels
/// joined by `~`; an edge a -> b means a strictly covers b.
pub fn order_to_dot(pre: &FinitePreorder) -> String {
    let (_, quotient) = pre.quotient();
    let mut nodes: Vec<(usize, &str)> = quotient
        .labels()
        .iter()
        .map(|s| s.as_str())
        .enumerate()
        .collect();
    nodes.sort_by_key(|&(_, label)| label);

    let mut edges: Vec<(&str, &str)> = quotient
        .covers()
        .into_iter()
        .map(|(a, b)| (quotient.label(a), quotient.label(b)))
        .collect();
    edges.sort();

    let mut out = String::from("digraph order {\n");
    for (_, label) in &nodes {
        out.push_str(&format!("  \"{}\";\n", escape(label)));
    }
    for (a, b) in &edges {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", escape(a), escape(b)));
    }
    out.push_str("}\n");
    out
}
