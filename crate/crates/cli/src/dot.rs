//! Graphviz export of the network instance.

use std::fmt::Write;

use wpos_core::generators::{EdgeKind, NetworkLBInstance};
use wpos_core::Latency;

use crate::numfmt::fmt_num;

fn latency_label(l: &Latency, digits: usize) -> String {
    match l {
        Latency::Exponential { scale } => format!("{} e^x", fmt_num(*scale, digits)),
        Latency::Polynomial(c) => {
            let terms: Vec<String> = c
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0.0)
                .map(|(j, &a)| match j {
                    0 => fmt_num(a, digits),
                    1 => format!("{} x", fmt_num(a, digits)),
                    _ => format!("{} x^{j}", fmt_num(a, digits)),
                })
                .collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join(" + ")
            }
        }
    }
}

/// Gadget connectors are dashed, latency edges carry their function as label.
pub fn network_dot(net: &NetworkLBInstance, digits: usize) -> String {
    let mut s = String::from("digraph network {\n  rankdir=LR;\n  node [shape=circle];\n");
    for node in &net.nodes {
        let _ = writeln!(s, "  {};", node.label());
    }
    for e in &net.edges {
        let (a, b) = (net.nodes[e.from].label(), net.nodes[e.to].label());
        let attrs = match e.kind {
            EdgeKind::Gadget(_) => "style=dashed".to_string(),
            EdgeKind::Sink => "color=gray".to_string(),
            EdgeKind::Facility(j) => {
                format!("label=\"{j}: {}\"", latency_label(&e.latency, digits))
            }
        };
        let _ = writeln!(s, "  {a} -> {b} [{attrs}];");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use wpos_core::generators::gen_network_lb;

    #[test]
    fn dashed_gadgets() {
        let net = gen_network_lb(9, 2).unwrap();
        let dot = network_dot(&net, 6);
        let dashed = dot.lines().filter(|l| l.contains("style=dashed")).count();
        let gadgets = (0..net.edges.len()).filter(|&k| net.is_gadget_edge(k)).count();
        assert_eq!(dashed, gadgets);
        assert!(gadgets > 0);
        assert!(dot.starts_with("digraph network {"));
    }

    #[test]
    fn polynomial_labels() {
        assert_eq!(latency_label(&Latency::polynomial([1.5, 0.0, 2.0]), 6), "1.5 + 2 x^2");
        assert_eq!(latency_label(&Latency::zero(), 6), "0");
    }
}
