//! Text renderings of a [`LatticeDocument`].

use std::fmt::Write as _;

use crate::document::{Kind, LatticeDocument};

/// `{1,2,3}`; the empty set is `{}`.
pub fn label_set(labels: &[u32]) -> String {
    let inner: Vec<String> = labels.iter().map(u32::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

/// Graphviz digraph, one node per class and one edge per cover arc, edges
/// pointing from the larger-support class to its successor.
pub fn to_dot(doc: &LatticeDocument) -> String {
    let mut out = String::from("digraph lattice {\n    rankdir=BT;\n    node [shape=box];\n");
    for c in &doc.classes {
        let gens: Vec<String> = c.generators.iter().map(|g| label_set(g)).collect();
        let _ = writeln!(
            out,
            "    c{} [label=\"{} ({}) | {}\"];",
            c.id,
            label_set(&c.closure),
            c.support,
            gens.join(" ")
        );
    }
    for c in &doc.classes {
        for up in &c.upper_covers {
            let _ = writeln!(out, "    c{} -> c{};", c.id, up);
        }
    }
    out.push_str("}\n");
    out
}

/// One rule per line, exact rules first:
/// `premise => conclusion (supp=s, conf=p/q)`.
pub fn rules_text(doc: &LatticeDocument) -> String {
    let mut out = String::new();
    for (kind, title) in [(Kind::Exact, "# exact"), (Kind::Approximate, "# approximate")] {
        let _ = writeln!(out, "{title} ({})", doc.count_rules(kind));
        for r in doc.rules.iter().filter(|r| r.kind == kind) {
            let _ = writeln!(out, "{r}");
        }
    }
    out
}
