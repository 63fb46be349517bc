//! DOT export. Essential vertices become nodes; circle components are
//! rendered as a dashed self-loop on a synthetic point node.

use super::{SimplicialGraph, TopologicalGraph};
use std::fmt::Write;

pub fn simplicial_to_dot(g: &SimplicialGraph, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph {name} {{").unwrap();
    for v in &g.vertices {
        writeln!(out, "  v{v};").unwrap();
    }
    for (a, b) in &g.edges {
        writeln!(out, "  v{a} -- v{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn topological_to_dot(g: &TopologicalGraph, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph {name} {{").unwrap();
    for v in &g.vertices {
        writeln!(out, "  v{v} [shape=circle];").unwrap();
    }
    for (i, e) in g.edges.iter().enumerate() {
        match e.ends {
            [Some(a), Some(b)] => {
                writeln!(out, "  v{a} -- v{b} [label=\"e{i}({})\"];", e.subdiv).unwrap()
            }
            [None, None] => {
                writeln!(out, "  c{i} [shape=point];").unwrap();
                writeln!(
                    out,
                    "  c{i} -- c{i} [style=dashed, label=\"e{i}({})\"];",
                    e.subdiv
                )
                .unwrap();
            }
            _ => {}
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circle, theta};

    #[test]
    fn deterministic_output() {
        let a = topological_to_dot(&theta(3), "t");
        let b = topological_to_dot(&theta(3), "t");
        assert_eq!(a, b);
        assert!(a.contains("v0 -- v1"));
        let c = topological_to_dot(&circle(), "c");
        assert!(c.contains("style=dashed"));
    }
}
