//! Topological graphs in their natural cell structure.
//!
//! A `SimplicialGraph` is a plain simple graph; its geometric realization is
//! a `TopologicalGraph`: essential vertices are the points of local degree
//! different from 2, essential edges the closures of the complementary
//! components. Loops, multiple edges and vertex-free circle components all
//! occur and are represented explicitly.

mod split;
mod iso;
mod amalgam;
mod dot;

pub use split::{
    blocks, brute_force_blocks, terminal_split_decomposition, NaturalSubgraph,
    SplitDecomposition, Splitting,
};
pub use iso::{graph_iso, graph_iso_labeled};
pub use amalgam::{amalgam_classify, AmalgamFormula};
pub use dot::{simplicial_to_dot, topological_to_dot};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

pub type VertexId = u32;
pub type EdgeId = u32;

/// A finite simple graph: no loops, no multiple edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialGraph {
    pub vertices: BTreeSet<VertexId>,
    /// Normalized pairs `(u, v)` with `u < v`.
    pub edges: BTreeSet<(VertexId, VertexId)>,
}

impl SimplicialGraph {
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let vertices: BTreeSet<_> = vertices.into_iter().collect();
        let mut es = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop edge at {a}")));
            }
            if !vertices.contains(&a) || !vertices.contains(&b) {
                return Err(Error::InvalidGraph(format!("edge ({a},{b}) off vertex set")));
            }
            let e = (a.min(b), a.max(b));
            if !es.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({a},{b})")));
            }
        }
        Ok(SimplicialGraph { vertices, edges: es })
    }

    pub fn adjacency(&self) -> BTreeMap<VertexId, BTreeSet<VertexId>> {
        let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> =
            self.vertices.iter().map(|&v| (v, BTreeSet::new())).collect();
        for &(a, b) in &self.edges {
            adj.get_mut(&a).unwrap().insert(b);
            adj.get_mut(&b).unwrap().insert(a);
        }
        adj
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// True iff the graph contains no 3-cycle, i.e. is flag as a
    /// simplicial complex.
    pub fn is_flag(&self) -> bool {
        let adj = self.adjacency();
        for &(a, b) in &self.edges {
            if adj[&a].intersection(&adj[&b]).next().is_some() {
                return false;
            }
        }
        true
    }

    /// True iff the graph contains no induced 4-cycle.
    pub fn no_empty_square(&self) -> bool {
        let adj = self.adjacency();
        let vs: Vec<_> = self.vertices.iter().copied().collect();
        for (i, &u) in vs.iter().enumerate() {
            for &v in vs.iter().skip(i + 1) {
                if self.has_edge(u, v) {
                    continue;
                }
                let common: Vec<_> = adj[&u].intersection(&adj[&v]).copied().collect();
                for (k, &x) in common.iter().enumerate() {
                    for &y in common.iter().skip(k + 1) {
                        if !self.has_edge(x, y) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// One essential edge of the natural cell structure.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TopEdge {
    /// `[Some(a), Some(b)]` with `a != b` for an ordinary edge, `[Some(v),
    /// Some(v)]` for a loop at `v`, `[None, None]` for a vertex-free circle
    /// component.
    pub ends: [Option<VertexId>; 2],
    /// Number of underlying simplicial edges (1 for abstract edges);
    /// metadata only, ignored by homeomorphism-type comparisons.
    pub subdiv: u32,
}

impl TopEdge {
    pub fn is_circle(&self) -> bool {
        self.ends == [None, None]
    }

    pub fn is_loop(&self) -> bool {
        match self.ends {
            [Some(a), Some(b)] => a == b,
            [None, None] => true,
            _ => false,
        }
    }

    /// Ends of this edge at vertex `v`: 0 for the low end, 1 for the high
    /// end. A loop at `v` contributes both.
    pub fn ends_at(&self, v: VertexId) -> Vec<u8> {
        let mut out = Vec::new();
        if self.ends[0] == Some(v) {
            out.push(0);
        }
        if self.ends[1] == Some(v) {
            out.push(1);
        }
        out
    }
}

/// A topological graph with its natural cell structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologicalGraph {
    /// Sorted essential vertex ids.
    pub vertices: Vec<VertexId>,
    /// Essential edges; the edge id is the index into this vector.
    pub edges: Vec<TopEdge>,
}

impl TopologicalGraph {
    pub fn new(vertices: Vec<VertexId>, edges: Vec<TopEdge>) -> Result<Self> {
        let mut vs = vertices;
        vs.sort_unstable();
        vs.dedup();
        let g = TopologicalGraph { vertices: vs, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let vset: BTreeSet<_> = self.vertices.iter().copied().collect();
        for (i, e) in self.edges.iter().enumerate() {
            if e.subdiv == 0 {
                return Err(Error::InvalidGraph(format!("edge {i} has subdiv 0")));
            }
            match e.ends {
                [Some(a), Some(b)] => {
                    if !vset.contains(&a) || !vset.contains(&b) {
                        return Err(Error::InvalidGraph(format!("edge {i} off vertex set")));
                    }
                }
                [None, None] => {}
                _ => {
                    return Err(Error::InvalidGraph(format!(
                        "edge {i} has exactly one endpoint"
                    )))
                }
            }
        }
        for &v in &self.vertices {
            if self.degree(v) == 2 {
                return Err(Error::InvalidGraph(format!(
                    "vertex {v} has degree 2 and cannot be essential"
                )));
            }
        }
        Ok(())
    }

    /// Degree of an essential vertex; a loop contributes 2.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().map(|e| e.ends_at(v).len()).sum()
    }

    pub fn incident_edges(&self, v: VertexId) -> Vec<EdgeId> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.ends_at(v).is_empty())
            .map(|(i, _)| i as EdgeId)
            .collect()
    }

    /// Edge-ends at `v` as `(edge, end)` pairs in canonical order.
    pub fn edge_ends_at(&self, v: VertexId) -> Vec<(EdgeId, u8)> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            for end in e.ends_at(v) {
                out.push((i as EdgeId, end));
            }
        }
        out
    }

    pub fn connected_components(&self) -> Vec<(BTreeSet<VertexId>, BTreeSet<EdgeId>)> {
        // union-find over vertices and edges
        let nv = self.vertices.len();
        let ne = self.edges.len();
        let mut uf = UnionFind::new(nv + ne);
        let vindex: BTreeMap<VertexId, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        for (i, e) in self.edges.iter().enumerate() {
            for end in e.ends.iter().flatten() {
                uf.union(nv + i, vindex[end]);
            }
        }
        let mut comps: BTreeMap<usize, (BTreeSet<VertexId>, BTreeSet<EdgeId>)> = BTreeMap::new();
        for (i, &v) in self.vertices.iter().enumerate() {
            comps.entry(uf.find(i)).or_default().0.insert(v);
        }
        for i in 0..ne {
            comps
                .entry(uf.find(nv + i))
                .or_default()
                .1
                .insert(i as EdgeId);
        }
        comps.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// A circle: a single vertex-free circle edge and nothing else.
    pub fn is_circle(&self) -> bool {
        self.vertices.is_empty() && self.edges.len() == 1 && self.edges[0].is_circle()
    }

    /// A segment: one non-loop edge joining two degree-1 vertices.
    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2 && self.edges.len() == 1 && !self.edges[0].is_loop()
    }

    pub fn is_singleton(&self) -> bool {
        self.vertices.len() == 1 && self.edges.is_empty()
    }

    /// Euler characteristic of the underlying space.
    pub fn euler_characteristic(&self) -> i64 {
        // each essential edge contributes (subdiv-1) interior vertices and
        // subdiv simplicial edges, netting -1 (0 for circles which add one
        // extra vertex-free cycle: chi = 0).
        let mut chi = self.vertices.len() as i64;
        for e in &self.edges {
            if e.is_circle() {
                // cycle: chi contribution 0
            } else {
                chi -= 1;
            }
        }
        chi
    }

    /// Subdivide into a simplicial graph. Each edge becomes a path of
    /// simplicial edges; the number of pieces respects simplicity (loops
    /// and circles need at least 3, multiple edges at least 2).
    pub fn to_simplicial(&self, pieces_per_edge: u32) -> SimplicialGraph {
        let mut next: VertexId = self.vertices.iter().copied().max().map_or(0, |m| m + 1);
        let mut vertices: BTreeSet<VertexId> = self.vertices.iter().copied().collect();
        let mut edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        let mut multi: BTreeMap<(Option<VertexId>, Option<VertexId>), u32> = BTreeMap::new();
        for e in &self.edges {
            let mut key = [e.ends[0], e.ends[1]];
            key.sort();
            *multi.entry((key[0], key[1])).or_default() += 1;
        }
        for e in &self.edges {
            let min_pieces = if e.is_circle() || e.is_loop() {
                3
            } else {
                let mut key = [e.ends[0], e.ends[1]];
                key.sort();
                if multi[&(key[0], key[1])] > 1 {
                    2
                } else {
                    1
                }
            };
            let k = pieces_per_edge.max(min_pieces);
            match e.ends {
                [Some(a), Some(b)] => {
                    let mut prev = a;
                    for _ in 1..k {
                        let w = next;
                        next += 1;
                        vertices.insert(w);
                        edges.insert((prev.min(w), prev.max(w)));
                        prev = w;
                    }
                    edges.insert((prev.min(b), prev.max(b)));
                }
                [None, None] => {
                    let first = next;
                    let mut prev = first;
                    vertices.insert(first);
                    next += 1;
                    for _ in 1..k {
                        let w = next;
                        next += 1;
                        vertices.insert(w);
                        edges.insert((prev.min(w), prev.max(w)));
                        prev = w;
                    }
                    edges.insert((prev.min(first), prev.max(first)));
                }
                _ => unreachable!(),
            }
        }
        SimplicialGraph { vertices, edges }
    }
}

/// Compute the natural cell structure of a simplicial graph.
pub fn essentialize(g: &SimplicialGraph) -> TopologicalGraph {
    let adj = g.adjacency();
    let deg = |v: VertexId| adj[&v].len();
    let essential: BTreeSet<VertexId> = g
        .vertices
        .iter()
        .copied()
        .filter(|&v| deg(v) != 2)
        .collect();

    let mut used: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let norm = |a: VertexId, b: VertexId| (a.min(b), a.max(b));
    // raw edges before deterministic ordering: (ends, interior walk, subdiv)
    let mut raw: Vec<([Option<VertexId>; 2], Vec<VertexId>, u32)> = Vec::new();

    for &v in &essential {
        let mut nbrs: Vec<VertexId> = adj[&v].iter().copied().collect();
        nbrs.sort_unstable();
        for u in nbrs {
            if used.contains(&norm(v, u)) {
                continue;
            }
            // walk the chain of degree-2 vertices
            let mut interior = Vec::new();
            let mut prev = v;
            let mut cur = u;
            used.insert(norm(prev, cur));
            let mut count = 1u32;
            while !essential.contains(&cur) {
                interior.push(cur);
                let nexts: Vec<VertexId> =
                    adj[&cur].iter().copied().filter(|&w| w != prev).collect();
                debug_assert_eq!(nexts.len(), 1);
                let nx = nexts[0];
                used.insert(norm(cur, nx));
                prev = cur;
                cur = nx;
                count += 1;
            }
            let w = cur;
            // canonical orientation: low vertex first; loops oriented so the
            // interior walk starts at its smaller end
            let (ends, interior) = if v < w {
                ([Some(v), Some(w)], interior)
            } else if v > w {
                let mut r = interior;
                r.reverse();
                ([Some(w), Some(v)], r)
            } else {
                let flip =
                    !interior.is_empty() && interior[0] > *interior.last().unwrap();
                let mut it = interior;
                if flip {
                    it.reverse();
                }
                ([Some(v), Some(v)], it)
            };
            raw.push((ends, interior, count));
        }
    }

    // circle components: cycles of degree-2 vertices whose edges were not
    // consumed by any chain walk
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    for &v in &g.vertices {
        if essential.contains(&v) || seen.contains(&v) || deg(v) == 0 {
            continue;
        }
        let first_nbr = *adj[&v].iter().next().unwrap();
        if used.contains(&norm(v, first_nbr)) {
            continue;
        }
        // trace the cycle starting at its minimum vertex
        let mut cyc = vec![v];
        seen.insert(v);
        let mut prev = v;
        let mut nbrs: Vec<VertexId> = adj[&v].iter().copied().collect();
        nbrs.sort_unstable();
        let mut cur = nbrs[0];
        while cur != v {
            cyc.push(cur);
            seen.insert(cur);
            let nx = adj[&cur].iter().copied().find(|&w| w != prev).unwrap();
            prev = cur;
            cur = nx;
        }
        let start = cyc.iter().copied().min().unwrap();
        raw.push(([None, None], vec![start], cyc.len() as u32));
    }

    raw.sort();
    let edges = raw
        .into_iter()
        .map(|(ends, _, subdiv)| TopEdge { ends, subdiv })
        .collect();
    TopologicalGraph {
        vertices: essential.into_iter().collect(),
        edges,
    }
}

/// Re-essentialize a topological graph: merge chains through degree-2
/// vertices, turn vertex-free cycles into circle edges. The result is the
/// natural cell structure of the same underlying space.
pub fn re_essentialize(x: &TopologicalGraph) -> TopologicalGraph {
    let keep: BTreeSet<VertexId> = x
        .vertices
        .iter()
        .copied()
        .filter(|&v| x.degree(v) != 2)
        .collect();

    let mut used: BTreeSet<(EdgeId, u8)> = BTreeSet::new();
    let mut raw: Vec<([Option<VertexId>; 2], Vec<EdgeId>, u32)> = Vec::new();

    // walk from each kept vertex along each edge-end
    for &v in &keep {
        for (e, end) in x.edge_ends_at(v) {
            if used.contains(&(e, end)) {
                continue;
            }
            let mut chain = vec![e];
            used.insert((e, end));
            let mut subdiv = x.edges[e as usize].subdiv;
            // far end of current edge
            let mut cur_edge = e;
            let mut cur_far = 1 - end;
            loop {
                used.insert((cur_edge, cur_far));
                let w = x.edges[cur_edge as usize].ends[cur_far as usize].unwrap();
                if keep.contains(&w) {
                    // canonical orientation by ends then chain
                    let a = Some(v);
                    let b = Some(w);
                    let (ends, chain) = if a <= b {
                        ([a, b], chain)
                    } else {
                        let mut r = chain;
                        r.reverse();
                        ([b, a], r)
                    };
                    raw.push((ends, chain, subdiv));
                    break;
                }
                // w has degree 2: continue along the other end
                let ee = x.edge_ends_at(w);
                debug_assert_eq!(ee.len(), 2);
                let (ne, nend) = ee.into_iter().find(|&p| p != (cur_edge, cur_far)).unwrap();
                used.insert((ne, nend));
                chain.push(ne);
                subdiv += x.edges[ne as usize].subdiv;
                cur_edge = ne;
                cur_far = 1 - nend;
            }
        }
    }

    // leftover cycles through degree-2 vertices, plus existing circles
    for (i, e) in x.edges.iter().enumerate() {
        let i = i as EdgeId;
        if e.is_circle() {
            raw.push(([None, None], vec![i], e.subdiv));
            continue;
        }
        if used.contains(&(i, 0)) || used.contains(&(i, 1)) {
            continue;
        }
        // trace cycle of degree-2 vertices
        let mut chain = vec![i];
        let mut subdiv = e.subdiv;
        used.insert((i, 0));
        used.insert((i, 1));
        let mut cur_edge = i;
        let mut cur_far = 1u8;
        loop {
            let w = x.edges[cur_edge as usize].ends[cur_far as usize].unwrap();
            let ee = x.edge_ends_at(w);
            let (ne, nend) = ee
                .into_iter()
                .find(|&p| p != (cur_edge, cur_far))
                .unwrap();
            if ne == i && nend == 0 {
                break;
            }
            used.insert((ne, 0));
            used.insert((ne, 1));
            chain.push(ne);
            subdiv += x.edges[ne as usize].subdiv;
            cur_edge = ne;
            cur_far = 1 - nend;
        }
        let m = chain.iter().copied().min().unwrap();
        raw.push(([None, None], vec![m], subdiv));
    }

    raw.sort();
    let edges = raw
        .into_iter()
        .map(|(ends, _, subdiv)| TopEdge { ends, subdiv })
        .collect();
    TopologicalGraph {
        vertices: keep.into_iter().collect(),
        edges,
    }
}

// ---------------------------------------------------------------------------
// common builders

/// Theta graph: two vertices joined by `k` parallel edges (k >= 3).
pub fn theta(parallel: u32) -> TopologicalGraph {
    TopologicalGraph {
        vertices: vec![0, 1],
        edges: (0..parallel)
            .map(|_| TopEdge {
                ends: [Some(0), Some(1)],
                subdiv: 1,
            })
            .collect(),
    }
}

/// Circle: one vertex-free circle edge.
pub fn circle() -> TopologicalGraph {
    TopologicalGraph {
        vertices: vec![],
        edges: vec![TopEdge {
            ends: [None, None],
            subdiv: 1,
        }],
    }
}

/// Segment: a single edge with two degree-1 endpoints.
pub fn segment() -> TopologicalGraph {
    TopologicalGraph {
        vertices: vec![0, 1],
        edges: vec![TopEdge {
            ends: [Some(0), Some(1)],
            subdiv: 1,
        }],
    }
}

/// Complete graph K4 as a topological graph.
pub fn k4() -> TopologicalGraph {
    let mut edges = Vec::new();
    for a in 0..4u32 {
        for b in (a + 1)..4 {
            edges.push(TopEdge {
                ends: [Some(a), Some(b)],
                subdiv: 1,
            });
        }
    }
    TopologicalGraph {
        vertices: vec![0, 1, 2, 3],
        edges,
    }
}

/// Figure eight: two loops at one vertex.
pub fn figure_eight() -> TopologicalGraph {
    TopologicalGraph {
        vertices: vec![0],
        edges: vec![
            TopEdge {
                ends: [Some(0), Some(0)],
                subdiv: 3,
            },
            TopEdge {
                ends: [Some(0), Some(0)],
                subdiv: 3,
            },
        ],
    }
}

/// Simplicial theta graph with three paths of the given length between
/// vertices 0 and 1.
pub fn simplicial_theta(path_len: u32) -> SimplicialGraph {
    let mut vertices: BTreeSet<VertexId> = [0, 1].into_iter().collect();
    let mut edges = BTreeSet::new();
    let mut next = 2u32;
    for _ in 0..3 {
        let mut prev = 0u32;
        for _ in 1..path_len {
            let w = next;
            next += 1;
            vertices.insert(w);
            edges.insert((prev.min(w), prev.max(w)));
            prev = w;
        }
        edges.insert((prev.min(1), prev.max(1)));
    }
    SimplicialGraph { vertices, edges }
}

pub fn cycle_graph(n: u32) -> SimplicialGraph {
    let vertices: BTreeSet<VertexId> = (0..n).collect();
    let edges: BTreeSet<(VertexId, VertexId)> = (0..n)
        .map(|i| {
            let a = i;
            let b = (i + 1) % n;
            (a.min(b), a.max(b))
        })
        .collect();
    SimplicialGraph { vertices, edges }
}

pub fn path_graph(edges_count: u32) -> SimplicialGraph {
    let vertices: BTreeSet<VertexId> = (0..=edges_count).collect();
    let edges: BTreeSet<(VertexId, VertexId)> = (0..edges_count).map(|i| (i, i + 1)).collect();
    SimplicialGraph { vertices, edges }
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, a: usize) -> usize {
        if self.parent[a] != a {
            let r = self.find(self.parent[a]);
            self.parent[a] = r;
        }
        self.parent[a]
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: exhaustive triangle search over vertex triples.
    fn has_triangle_brute(g: &SimplicialGraph) -> bool {
        let vs: Vec<_> = g.vertices.iter().copied().collect();
        for i in 0..vs.len() {
            for j in (i + 1)..vs.len() {
                for k in (j + 1)..vs.len() {
                    if g.has_edge(vs[i], vs[j])
                        && g.has_edge(vs[j], vs[k])
                        && g.has_edge(vs[i], vs[k])
                    {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Independent oracle: exhaustive induced-4-cycle search over 4-subsets.
    fn has_induced_square_brute(g: &SimplicialGraph) -> bool {
        let vs: Vec<_> = g.vertices.iter().copied().collect();
        let n = vs.len();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    for d in (c + 1)..n {
                        let q = [vs[a], vs[b], vs[c], vs[d]];
                        // check all 3 cyclic orders
                        let orders = [
                            [q[0], q[1], q[2], q[3]],
                            [q[0], q[1], q[3], q[2]],
                            [q[0], q[2], q[1], q[3]],
                        ];
                        for o in orders {
                            let cyc = g.has_edge(o[0], o[1])
                                && g.has_edge(o[1], o[2])
                                && g.has_edge(o[2], o[3])
                                && g.has_edge(o[3], o[0]);
                            let chords = g.has_edge(o[0], o[2]) || g.has_edge(o[1], o[3]);
                            if cyc && !chords {
                                return true;
                            }
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn flag_examples() {
        let tri = cycle_graph(3);
        assert!(!tri.is_flag());
        assert!(has_triangle_brute(&tri));
        let oct = cycle_graph(8);
        assert!(oct.is_flag());
        assert!(!has_triangle_brute(&oct));
        let th = simplicial_theta(3);
        // frozen from the exhaustive triangle search
        assert!(!has_triangle_brute(&th));
        assert!(th.is_flag());
    }

    #[test]
    fn empty_square_examples() {
        assert!(!cycle_graph(4).no_empty_square());
        assert!(cycle_graph(5).no_empty_square());
        // theta with length-3 paths has girth 6: the brute-force
        // induced-4-cycle enumerator finds none.
        let th3 = simplicial_theta(3);
        assert!(!has_induced_square_brute(&th3));
        assert!(th3.no_empty_square());
        // with length-2 paths the two degree-3 vertices plus one interior
        // vertex from each of two paths form an induced square.
        let th2 = simplicial_theta(2);
        assert!(has_induced_square_brute(&th2));
        assert!(!th2.no_empty_square());
    }

    #[test]
    fn empty_square_matches_brute_on_samples() {
        for g in [
            cycle_graph(4),
            cycle_graph(5),
            cycle_graph(6),
            simplicial_theta(2),
            simplicial_theta(3),
            simplicial_theta(4),
            path_graph(5),
        ] {
            assert_eq!(g.no_empty_square(), !has_induced_square_brute(&g));
        }
    }

    #[test]
    fn essentialize_path() {
        let p = path_graph(3);
        let t = essentialize(&p);
        assert_eq!(t.vertices, vec![0, 3]);
        assert_eq!(t.edges.len(), 1);
        assert_eq!(t.edges[0].subdiv, 3);
        assert!(!t.edges[0].is_loop());
    }

    #[test]
    fn essentialize_cycle_is_circle() {
        let c = cycle_graph(5);
        let t = essentialize(&c);
        assert!(t.vertices.is_empty());
        assert_eq!(t.edges.len(), 1);
        assert!(t.edges[0].is_circle());
        assert_eq!(t.edges[0].subdiv, 5);
    }

    #[test]
    fn essentialize_theta() {
        let th = simplicial_theta(3);
        let t = essentialize(&th);
        assert_eq!(t.vertices, vec![0, 1]);
        assert_eq!(t.edges.len(), 3);
        for e in &t.edges {
            assert_eq!(e.ends, [Some(0), Some(1)]);
            assert_eq!(e.subdiv, 3);
        }
    }

    #[test]
    fn essentialize_lollipop() {
        // a 4-cycle with a pendant path of length 2 at vertex 0
        let mut g = cycle_graph(4);
        g.vertices.insert(10);
        g.vertices.insert(11);
        g.edges.insert((0, 10));
        g.edges.insert((10, 11));
        let t = essentialize(&g);
        // vertex 0 (deg 3) and 11 (deg 1) are essential
        assert_eq!(t.vertices, vec![0, 11]);
        assert_eq!(t.edges.len(), 2);
        let loop_edge = t.edges.iter().find(|e| e.is_loop()).unwrap();
        assert_eq!(loop_edge.ends, [Some(0), Some(0)]);
        assert_eq!(loop_edge.subdiv, 4);
    }

    #[test]
    fn re_essentialize_round_trip() {
        for x in [theta(3), circle(), segment(), k4(), figure_eight()] {
            let s = x.to_simplicial(3);
            let t = essentialize(&s);
            assert!(graph_iso(&x, &t).is_some(), "round trip failed for {x:?}");
        }
    }

    #[test]
    fn degree_counts_loops_twice() {
        let f8 = figure_eight();
        assert_eq!(f8.degree(0), 4);
    }
}
