//! Symbolic classification of reflection trees by block structure.
//!
//! The reflection tree of a disconnected or separable graph is the dense
//! amalgam of the reflection trees of its blocks, deduplicated by
//! homeomorphism type, with totally disconnected summands absorbed. We
//! record the result as a formula rather than constructing any space.

use super::{blocks, graph_iso, NaturalSubgraph, TopologicalGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AmalgamFormula {
    /// Reflection tree of a singleton: the empty space.
    Empty,
    /// Reflection tree of a doubleton: a doubleton.
    Doubleton,
    /// No blocks (a tree or disjoint union of trees): the Cantor set.
    Cantor,
    /// Connected non-separable circle: the circle.
    Circle,
    /// Connected non-separable non-circle: the reflection tree of the graph
    /// itself, irreducible by splitting.
    Connected(TopologicalGraph),
    /// Dense amalgam of the reflection trees of the listed pairwise
    /// non-homeomorphic nontrivial blocks.
    Amalgam(Vec<TopologicalGraph>),
}

impl AmalgamFormula {
    pub fn describe(&self) -> String {
        match self {
            AmalgamFormula::Empty => "Empty".into(),
            AmalgamFormula::Doubleton => "Doubleton".into(),
            AmalgamFormula::Cantor => "Cantor".into(),
            AmalgamFormula::Circle => "Circle".into(),
            AmalgamFormula::Connected(g) => format!(
                "Connected({} vertices, {} edges)",
                g.vertices.len(),
                g.edges.len()
            ),
            AmalgamFormula::Amalgam(bs) => {
                let parts: Vec<String> = bs
                    .iter()
                    .map(|g| {
                        if g.is_circle() {
                            "circle".into()
                        } else {
                            format!("({}v,{}e)", g.vertices.len(), g.edges.len())
                        }
                    })
                    .collect();
                format!("Amalgam([{}])", parts.join(", "))
            }
        }
    }
}

/// Classify the reflection tree of `x` symbolically.
pub fn amalgam_classify(x: &TopologicalGraph) -> AmalgamFormula {
    if x.is_singleton() {
        return AmalgamFormula::Empty;
    }
    if x.edges.is_empty() && x.vertices.len() == 2 {
        return AmalgamFormula::Doubleton;
    }
    let bs = blocks(x);
    if bs.is_empty() {
        return AmalgamFormula::Cantor;
    }
    if x.is_connected() && NaturalSubgraph::full(x).is_non_separable(x) {
        return if x.is_circle() {
            AmalgamFormula::Circle
        } else {
            AmalgamFormula::Connected(x.clone())
        };
    }
    // deduplicate block homeomorphism types, keeping the first-seen
    // representative of each type
    let mut types: Vec<TopologicalGraph> = Vec::new();
    for b in &bs {
        let g = b.as_own_graph(x);
        if !types.iter().any(|t| graph_iso(t, &g).is_some()) {
            types.push(g);
        }
    }
    AmalgamFormula::Amalgam(types)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        circle, essentialize, figure_eight, path_graph, segment, theta, TopEdge, TopologicalGraph,
    };

    #[test]
    fn base_cases() {
        let singleton = TopologicalGraph {
            vertices: vec![0],
            edges: vec![],
        };
        assert_eq!(amalgam_classify(&singleton), AmalgamFormula::Empty);
        let doubleton = TopologicalGraph {
            vertices: vec![0, 1],
            edges: vec![],
        };
        assert_eq!(amalgam_classify(&doubleton), AmalgamFormula::Doubleton);
        assert_eq!(amalgam_classify(&segment()), AmalgamFormula::Cantor);
        assert_eq!(amalgam_classify(&circle()), AmalgamFormula::Circle);
        assert_eq!(
            amalgam_classify(&essentialize(&path_graph(5))),
            AmalgamFormula::Cantor
        );
    }

    #[test]
    fn theta_is_connected_formula() {
        match amalgam_classify(&theta(3)) {
            AmalgamFormula::Connected(g) => assert_eq!(g.edges.len(), 3),
            other => panic!("expected Connected, got {other:?}"),
        }
    }

    #[test]
    fn figure_eight_amalgam_of_one_circle_type() {
        match amalgam_classify(&figure_eight()) {
            AmalgamFormula::Amalgam(types) => {
                assert_eq!(types.len(), 1);
                assert!(types[0].is_circle());
            }
            other => panic!("expected Amalgam, got {other:?}"),
        }
    }

    #[test]
    fn two_thetas_wedged_amalgam_of_theta() {
        // two theta graphs joined at a vertex
        let x = TopologicalGraph {
            vertices: vec![0, 1, 2],
            edges: vec![
                TopEdge { ends: [Some(0), Some(1)], subdiv: 1 },
                TopEdge { ends: [Some(0), Some(1)], subdiv: 1 },
                TopEdge { ends: [Some(0), Some(1)], subdiv: 1 },
                TopEdge { ends: [Some(1), Some(2)], subdiv: 1 },
                TopEdge { ends: [Some(1), Some(2)], subdiv: 1 },
                TopEdge { ends: [Some(1), Some(2)], subdiv: 1 },
            ],
        };
        match amalgam_classify(&x) {
            AmalgamFormula::Amalgam(types) => {
                assert_eq!(types.len(), 1);
                assert!(graph_iso(&types[0], &theta(3)).is_some());
            }
            other => panic!("expected Amalgam([theta]), got {other:?}"),
        }
    }

    #[test]
    fn subdivision_invariance() {
        for x in [theta(3), figure_eight(), segment()] {
            let subdivided = essentialize(&x.to_simplicial(4));
            let a = amalgam_classify(&x);
            let b = amalgam_classify(&subdivided);
            // compare up to homeomorphism of the recorded graphs
            match (&a, &b) {
                (AmalgamFormula::Connected(g), AmalgamFormula::Connected(h)) => {
                    assert!(graph_iso(g, h).is_some())
                }
                (AmalgamFormula::Amalgam(gs), AmalgamFormula::Amalgam(hs)) => {
                    assert_eq!(gs.len(), hs.len());
                    for (g, h) in gs.iter().zip(hs) {
                        assert!(graph_iso(g, h).is_some());
                    }
                }
                _ => assert_eq!(a, b),
            }
        }
    }
}
