//! Graphviz rendering of pair concurrences.

use std::fmt::Write;

use crate::molecule::Pair;

pub const MIN_PENWIDTH: f64 = 0.5;
pub const MAX_PENWIDTH: f64 = 4.0;

/// Pen width linear in concurrence, from 0.5 at `C = 0` to 4.0 at `C = 1`.
pub fn penwidth(concurrence: f64) -> f64 {
    MIN_PENWIDTH + (MAX_PENWIDTH - MIN_PENWIDTH) * concurrence.clamp(0.0, 1.0)
}

/// Undirected graph with nodes `A1..AN` and one edge per pair whose concurrence exceeds
/// `tol`. Nodes and edges are emitted in index/lexicographic order.
pub fn render_dot(name: &str, n_qubits: usize, pairs: &[(Pair, f64)], tol: f64) -> String {
    let mut sorted: Vec<(Pair, f64)> = pairs.to_vec();
    sorted.sort_by_key(|e| e.0);
    let escaped = name.replace('\\', "\\\\").replace('"', "\\\"");
    let mut out = String::new();
    writeln!(out, "graph \"{escaped}\" {{").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for q in 1..=n_qubits {
        writeln!(out, "  A{q};").unwrap();
    }
    for ((k, l), c) in sorted {
        if c > tol {
            writeln!(out, "  A{k} -- A{l} [penwidth={:.4}, label=\"{c:.4}\"];", penwidth(c)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths_are_linear() {
        assert_eq!(penwidth(0.0), 0.5);
        assert_eq!(penwidth(1.0), 4.0);
        assert_eq!(penwidth(0.5), 2.25);
    }

    #[test]
    fn nodes_only_when_nothing_is_entangled() {
        let dot = render_dot("ghz3", 3, &[((1, 2), 0.0), ((1, 3), 0.0), ((2, 3), 0.0)], 1e-9);
        assert!(!dot.contains("--"));
        assert!(dot.contains("A3;"));
    }

    #[test]
    fn edges_sorted_and_labelled() {
        let dot = render_dot("x", 3, &[((2, 3), 0.25), ((1, 2), 0.5)], 1e-9);
        let first = dot.find("A1 -- A2").unwrap();
        let second = dot.find("A2 -- A3").unwrap();
        assert!(first < second);
        assert!(dot.contains("label=\"0.2500\""));
    }
}
