//! Splittings, terminal split decompositions and blocks.
//!
//! A splitting of a connected graph is a pair of connected natural
//! subgraphs, neither a singleton, whose union is the graph and whose
//! intersection is a single essential vertex. Iterating splittings until
//! every factor is non-separable yields the terminal split decomposition;
//! its nontrivial factors are the blocks.

use super::{re_essentialize, EdgeId, TopEdge, TopologicalGraph, UnionFind, VertexId};
use std::collections::{BTreeMap, BTreeSet};

/// A subgraph of a fixed parent graph for the parent's natural cell
/// structure: a set of closed essential edges plus essential vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NaturalSubgraph {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
}

impl NaturalSubgraph {
    /// Closure of an edge set: the edges plus all their endpoints.
    pub fn from_edges(parent: &TopologicalGraph, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let edges: BTreeSet<EdgeId> = edges.into_iter().collect();
        let mut vertices = BTreeSet::new();
        for &e in &edges {
            for v in parent.edges[e as usize].ends.iter().flatten() {
                vertices.insert(*v);
            }
        }
        NaturalSubgraph { vertices, edges }
    }

    pub fn full(parent: &TopologicalGraph) -> Self {
        NaturalSubgraph {
            vertices: parent.vertices.iter().copied().collect(),
            edges: (0..parent.edges.len() as EdgeId).collect(),
        }
    }

    pub fn is_singleton(&self) -> bool {
        self.edges.is_empty() && self.vertices.len() == 1
    }

    /// Degree of `v` inside the subgraph (loops count twice).
    pub fn degree(&self, parent: &TopologicalGraph, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|&e| parent.edges[e as usize].ends_at(v).len())
            .sum()
    }

    /// Essential vertices of the subgraph's own natural structure. These
    /// are always essential vertices of the parent.
    pub fn own_essential_vertices(&self, parent: &TopologicalGraph) -> Vec<VertexId> {
        self.vertices
            .iter()
            .copied()
            .filter(|&v| self.degree(parent, v) != 2)
            .collect()
    }

    pub fn is_connected(&self, parent: &TopologicalGraph) -> bool {
        self.component_count_without(parent, None) <= 1
    }

    /// Connected components of the subgraph with the point `cut` removed
    /// (if given). Each component is reported as (vertices, edges); an edge
    /// incident to `cut` still belongs to the component reachable through
    /// its other points.
    pub fn components_without(
        &self,
        parent: &TopologicalGraph,
        cut: Option<VertexId>,
    ) -> Vec<NaturalSubgraph> {
        let verts: Vec<VertexId> = self
            .vertices
            .iter()
            .copied()
            .filter(|&v| Some(v) != cut)
            .collect();
        let edges: Vec<EdgeId> = self.edges.iter().copied().collect();
        let vidx: BTreeMap<VertexId, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(verts.len() + edges.len());
        for (j, &e) in edges.iter().enumerate() {
            for w in parent.edges[e as usize].ends.iter().flatten() {
                if Some(*w) != cut {
                    uf.union(verts.len() + j, vidx[w]);
                }
            }
        }
        let mut comps: BTreeMap<usize, NaturalSubgraph> = BTreeMap::new();
        for (i, &v) in verts.iter().enumerate() {
            comps
                .entry(uf.find(i))
                .or_insert_with(|| NaturalSubgraph {
                    vertices: BTreeSet::new(),
                    edges: BTreeSet::new(),
                })
                .vertices
                .insert(v);
        }
        for (j, &e) in edges.iter().enumerate() {
            comps
                .entry(uf.find(verts.len() + j))
                .or_insert_with(|| NaturalSubgraph {
                    vertices: BTreeSet::new(),
                    edges: BTreeSet::new(),
                })
                .edges
                .insert(e);
        }
        comps.into_values().collect()
    }

    fn component_count_without(&self, parent: &TopologicalGraph, cut: Option<VertexId>) -> usize {
        self.components_without(parent, cut).len()
    }

    /// A connected subgraph is non-separable iff no essential vertex of its
    /// own structure disconnects it.
    pub fn is_non_separable(&self, parent: &TopologicalGraph) -> bool {
        if !self.is_connected(parent) {
            return false;
        }
        self.separating_vertices(parent).is_empty()
    }

    pub fn separating_vertices(&self, parent: &TopologicalGraph) -> Vec<VertexId> {
        self.own_essential_vertices(parent)
            .into_iter()
            .filter(|&v| self.component_count_without(parent, Some(v)) >= 2)
            .collect()
    }

    /// The subgraph as a topological graph in its own natural cell
    /// structure (chains through degree-2 parent vertices are merged).
    pub fn as_own_graph(&self, parent: &TopologicalGraph) -> TopologicalGraph {
        let verts: Vec<VertexId> = self.vertices.iter().copied().collect();
        let edges: Vec<TopEdge> = self
            .edges
            .iter()
            .map(|&e| parent.edges[e as usize].clone())
            .collect();
        let intermediate = TopologicalGraph {
            vertices: verts,
            edges,
        };
        re_essentialize(&intermediate)
    }

    /// Trivial factor: a singleton or (homeomorphic to) a segment.
    pub fn is_trivial_factor(&self, parent: &TopologicalGraph) -> bool {
        if self.is_singleton() {
            return true;
        }
        self.as_own_graph(parent).is_segment()
    }
}

#[derive(Debug, Clone)]
pub struct Splitting {
    pub vertex: VertexId,
    pub parts: [NaturalSubgraph; 2],
}

#[derive(Debug, Clone)]
pub struct SplitDecomposition {
    pub splittings: Vec<Splitting>,
    pub factors: Vec<NaturalSubgraph>,
}

/// Terminal split decomposition of a connected subgraph: split at the
/// least available separating vertex until every factor is non-separable.
pub fn terminal_split_decomposition(
    parent: &TopologicalGraph,
    start: NaturalSubgraph,
) -> SplitDecomposition {
    debug_assert!(start.is_connected(parent));
    let mut splittings = Vec::new();
    let mut factors = Vec::new();
    let mut queue = vec![start];
    while let Some(sub) = queue.pop() {
        let seps = sub.separating_vertices(parent);
        let Some(&v) = seps.first() else {
            factors.push(sub);
            continue;
        };
        let comps = sub.components_without(parent, Some(v));
        debug_assert!(comps.len() >= 2);
        // first part: the component containing the least edge (components
        // of a connected graph minus a point always contain an edge)
        let mut comps = comps;
        comps.sort_by_key(|c| (c.edges.iter().next().copied(), c.vertices.iter().next().copied()));
        let first = comps.remove(0);
        let mut part1 = first;
        part1.vertices.insert(v);
        let mut part2 = NaturalSubgraph {
            vertices: BTreeSet::new(),
            edges: BTreeSet::new(),
        };
        for c in comps {
            part2.vertices.extend(c.vertices);
            part2.edges.extend(c.edges);
        }
        part2.vertices.insert(v);
        debug_assert!(!part1.is_singleton() && !part2.is_singleton());
        splittings.push(Splitting {
            vertex: v,
            parts: [part1.clone(), part2.clone()],
        });
        queue.push(part2);
        queue.push(part1);
    }
    SplitDecomposition {
        splittings,
        factors,
    }
}

/// Blocks of a topological graph: the nontrivial factors of terminal split
/// decompositions of all connected components, as natural subgraphs.
pub fn blocks(x: &TopologicalGraph) -> Vec<NaturalSubgraph> {
    let mut out = Vec::new();
    for (vs, es) in x.connected_components() {
        let sub = NaturalSubgraph {
            vertices: vs,
            edges: es,
        };
        let dec = terminal_split_decomposition(x, sub);
        for f in dec.factors {
            if !f.is_trivial_factor(x) {
                out.push(f);
            }
        }
    }
    out.sort();
    out
}

/// Brute-force reference: maximal non-separable natural subgraphs that are
/// not segments or singletons, found by exhaustive search over edge
/// subsets. Independent of the splitting machinery above; used as the
/// oracle in tests and the verification suite.
pub fn brute_force_blocks(x: &TopologicalGraph) -> Vec<NaturalSubgraph> {
    let ne = x.edges.len();
    assert!(ne <= 20, "brute force limited to 20 edges");
    let mut nonsep: Vec<NaturalSubgraph> = Vec::new();
    for mask in 1u32..(1 << ne) {
        let edges = (0..ne as EdgeId).filter(|&e| mask & (1 << e) != 0);
        let sub = NaturalSubgraph::from_edges(x, edges);
        if sub.is_connected(x) && sub.is_non_separable(x) {
            nonsep.push(sub);
        }
    }
    // maximal elements (edge-ful subgraphs are determined by their edges)
    let mut maximal: Vec<NaturalSubgraph> = Vec::new();
    'outer: for s in &nonsep {
        for t in &nonsep {
            if s.edges != t.edges && s.edges.is_subset(&t.edges) {
                continue 'outer;
            }
        }
        maximal.push(s.clone());
    }
    let mut out: Vec<NaturalSubgraph> = maximal
        .into_iter()
        .filter(|s| !s.is_trivial_factor(x))
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circle, essentialize, figure_eight, k4, path_graph, segment, theta};

    #[test]
    fn theta_has_trivial_decomposition() {
        let x = theta(3);
        let dec = terminal_split_decomposition(&x, NaturalSubgraph::full(&x));
        assert!(dec.splittings.is_empty());
        assert_eq!(dec.factors.len(), 1);
        assert_eq!(dec.factors[0], NaturalSubgraph::full(&x));
    }

    #[test]
    fn figure_eight_splits_into_two_circles() {
        let x = figure_eight();
        let dec = terminal_split_decomposition(&x, NaturalSubgraph::full(&x));
        assert_eq!(dec.splittings.len(), 1);
        assert_eq!(dec.splittings[0].vertex, 0);
        assert_eq!(dec.factors.len(), 2);
        for f in &dec.factors {
            assert!(f.as_own_graph(&x).is_circle());
        }
    }

    #[test]
    fn segment_is_one_trivial_factor() {
        let x = segment();
        let dec = terminal_split_decomposition(&x, NaturalSubgraph::full(&x));
        assert!(dec.splittings.is_empty());
        assert_eq!(dec.factors.len(), 1);
        assert!(dec.factors[0].is_trivial_factor(&x));
    }

    #[test]
    fn splitting_parts_cover_and_meet_in_vertex() {
        let x = essentialize(&{
            // two 4-cycles sharing a vertex plus a pendant path
            let mut g = path_graph(2);
            for (a, b) in [(0, 20), (20, 21), (21, 22), (22, 0), (0, 30), (30, 31), (31, 32), (32, 0)] {
                g.vertices.insert(a);
                g.vertices.insert(b);
                g.edges.insert((a.min(b), a.max(b)));
            }
            g
        });
        let dec = terminal_split_decomposition(&x, NaturalSubgraph::full(&x));
        for s in &dec.splittings {
            let [p1, p2] = &s.parts;
            let inter: Vec<_> = p1.vertices.intersection(&p2.vertices).collect();
            assert_eq!(inter, vec![&s.vertex]);
            assert!(p1.edges.is_disjoint(&p2.edges));
        }
    }

    #[test]
    fn blocks_of_tree_empty() {
        let x = essentialize(&path_graph(4));
        assert!(blocks(&x).is_empty());
        assert!(brute_force_blocks(&x).is_empty());
    }

    #[test]
    fn blocks_of_figure_eight() {
        let x = figure_eight();
        let b = blocks(&x);
        assert_eq!(b.len(), 2);
        assert_eq!(b, brute_force_blocks(&x));
    }

    #[test]
    fn blocks_of_theta_is_itself() {
        let x = theta(3);
        let b = blocks(&x);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0], NaturalSubgraph::full(&x));
        assert_eq!(b, brute_force_blocks(&x));
    }

    #[test]
    fn blocks_oracle_on_k4_and_circle() {
        for x in [k4(), circle()] {
            assert_eq!(blocks(&x), brute_force_blocks(&x));
            assert_eq!(blocks(&x).len(), 1);
        }
    }
}
