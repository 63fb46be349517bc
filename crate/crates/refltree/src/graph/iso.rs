//! Multigraph isomorphism on natural cell structures.
//!
//! Subdivision counts are metadata and are ignored: two topological graphs
//! are homeomorphic iff their natural multigraphs (with loops and circle
//! components) are isomorphic. A labeled variant supports X-graph
//! comparisons.

use super::{EdgeId, TopologicalGraph, VertexId};
use std::collections::BTreeMap;

type Key = u64;

struct Shape {
    n: usize,
    ids: Vec<VertexId>,
    vkeys: Vec<Key>,
    /// per vertex: loop label -> count
    loops: Vec<BTreeMap<Key, usize>>,
    /// unordered vertex pair (u <= v indices, u != v): label -> multiplicity
    adj: BTreeMap<(usize, usize), BTreeMap<Key, usize>>,
    /// circle components: label -> count
    circles: BTreeMap<Key, usize>,
    /// per vertex: sorted multiset of incident labels (loops twice)
    sig: Vec<Vec<Key>>,
}

fn shape(
    g: &TopologicalGraph,
    vlab: &dyn Fn(VertexId) -> Key,
    elab: &dyn Fn(EdgeId) -> Key,
) -> Shape {
    let ids: Vec<VertexId> = g.vertices.clone();
    let idx: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = ids.len();
    let mut loops = vec![BTreeMap::new(); n];
    let mut adj: BTreeMap<(usize, usize), BTreeMap<Key, usize>> = BTreeMap::new();
    let mut circles = BTreeMap::new();
    let mut sig = vec![Vec::new(); n];
    for (e, edge) in g.edges.iter().enumerate() {
        let k = elab(e as EdgeId);
        match edge.ends {
            [None, None] => *circles.entry(k).or_default() += 1,
            [Some(a), Some(b)] if a == b => {
                let i = idx[&a];
                *loops[i].entry(k).or_default() += 1;
                sig[i].push(k);
                sig[i].push(k);
            }
            [Some(a), Some(b)] => {
                let (i, j) = (idx[&a], idx[&b]);
                let key = (i.min(j), i.max(j));
                *adj.entry(key).or_default().entry(k).or_default() += 1;
                sig[i].push(k);
                sig[j].push(k);
            }
            _ => unreachable!("validated graph"),
        }
    }
    for s in &mut sig {
        s.sort_unstable();
    }
    let vkeys = ids.iter().map(|&v| vlab(v)).collect();
    Shape {
        n,
        ids,
        vkeys,
        loops,
        adj,
        circles,
        sig,
    }
}

fn adj_of<'s>(s: &'s Shape, i: usize, j: usize) -> Option<&'s BTreeMap<Key, usize>> {
    s.adj.get(&(i.min(j), i.max(j)))
}

fn search(a: &Shape, b: &Shape, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
    let i = map.len();
    if i == a.n {
        return true;
    }
    for j in 0..b.n {
        if used[j]
            || a.vkeys[i] != b.vkeys[j]
            || a.sig[i] != b.sig[j]
            || a.loops[i] != b.loops[j]
        {
            continue;
        }
        let mut ok = true;
        for (k, &mk) in map.iter().enumerate() {
            if adj_of(a, i, k) != adj_of(b, j, mk) {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        map.push(j);
        used[j] = true;
        if search(a, b, map, used) {
            return true;
        }
        map.pop();
        used[j] = false;
    }
    false
}

fn iso_impl(a: &Shape, b: &Shape) -> Option<Vec<(VertexId, VertexId)>> {
    if a.n != b.n || a.circles != b.circles {
        return None;
    }
    {
        let mut sa: Vec<_> = a.sig.iter().zip(&a.vkeys).collect();
        let mut sb: Vec<_> = b.sig.iter().zip(&b.vkeys).collect();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
    }
    let mut map = Vec::with_capacity(a.n);
    let mut used = vec![false; b.n];
    if search(a, b, &mut map, &mut used) {
        Some(
            map.iter()
                .enumerate()
                .map(|(i, &j)| (a.ids[i], b.ids[j]))
                .collect(),
        )
    } else {
        None
    }
}

/// Homeomorphism-type test: multigraph isomorphism ignoring subdivision.
/// Returns a vertex correspondence when the graphs are isomorphic.
pub fn graph_iso(a: &TopologicalGraph, b: &TopologicalGraph) -> Option<Vec<(VertexId, VertexId)>> {
    iso_impl(
        &shape(a, &|_| 0, &|_| 0),
        &shape(b, &|_| 0, &|_| 0),
    )
}

/// Label-respecting isomorphism (used for X-graph comparisons).
pub fn graph_iso_labeled(
    a: &TopologicalGraph,
    a_vlab: &dyn Fn(VertexId) -> u64,
    a_elab: &dyn Fn(EdgeId) -> u64,
    b: &TopologicalGraph,
    b_vlab: &dyn Fn(VertexId) -> u64,
    b_elab: &dyn Fn(EdgeId) -> u64,
) -> Option<Vec<(VertexId, VertexId)>> {
    iso_impl(&shape(a, a_vlab, a_elab), &shape(b, b_vlab, b_elab))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circle, figure_eight, k4, segment, theta, TopEdge};

    #[test]
    fn theta_iso_ignores_subdivision() {
        let a = theta(3);
        let mut b = theta(3);
        for e in &mut b.edges {
            e.subdiv = 7;
        }
        assert!(graph_iso(&a, &b).is_some());
    }

    #[test]
    fn circle_vs_segment() {
        assert!(graph_iso(&circle(), &segment()).is_none());
    }

    #[test]
    fn k4_vs_theta() {
        assert!(graph_iso(&k4(), &theta(3)).is_none());
    }

    #[test]
    fn loops_matter() {
        let f8 = figure_eight();
        let one_loop = TopologicalGraph {
            vertices: vec![0],
            edges: vec![
                TopEdge {
                    ends: [Some(0), Some(0)],
                    subdiv: 3,
                },
            ],
        };
        assert!(graph_iso(&f8, &one_loop).is_none());
    }

    #[test]
    fn relabeled_vertices_match() {
        let a = k4();
        let b = TopologicalGraph {
            vertices: vec![10, 20, 30, 40],
            edges: {
                let vs = [10u32, 20, 30, 40];
                let mut es = Vec::new();
                for i in 0..4 {
                    for j in (i + 1)..4 {
                        es.push(TopEdge {
                            ends: [Some(vs[i]), Some(vs[j])],
                            subdiv: 2,
                        });
                    }
                }
                es
            },
        };
        let m = graph_iso(&a, &b).unwrap();
        assert_eq!(m.len(), 4);
    }

    #[test]
    fn labels_obstruct() {
        let a = theta(3);
        let b = theta(3);
        // same shape, incompatible vertex labels
        let m = graph_iso_labeled(&a, &|v| v as u64, &|_| 0, &b, &|v| (v + 1) as u64, &|_| 0);
        assert!(m.is_none());
    }
}
