//! Finite stage spaces `X_F` (standard) and `Z_F` (violated).
//!
//! A stage is the disjoint union of one blown-up copy of the base graph
//! per tree node, glued along the blow-up loci of the tree edges. Copies
//! are cut exactly at the labels of their incident tree edges; the gluing
//! across an edge identifies the two port sets by the identity (standard)
//! or by the system's transposition data (violated).

use super::{DensePoint, LabeledSubtree, NodeName};
use crate::error::{Error, Result};
use crate::graph::{re_essentialize, EdgeId, TopEdge, TopologicalGraph, VertexId};
use crate::num::Q;
use crate::pw::{Img, MGraph, Piece, Pt, PwMap};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Gluing data of a violated reflection inverse system: for each tree
/// edge, whether the doubleton port set of an interior label is glued by
/// the transposition. Edges labeled by essential vertices always glue by
/// the identity.
#[derive(Debug, Clone)]
pub enum ViolatedSpec {
    Identity,
    /// Deterministic pseudorandom choice per edge, keyed by the child
    /// node's name.
    Seeded(u64),
    /// Explicit map from child node name to "transposes".
    Explicit(BTreeMap<NodeName, bool>),
}

impl ViolatedSpec {
    pub fn transposes(&self, child: &NodeName, label: &DensePoint) -> Result<bool> {
        let raw = match self {
            ViolatedSpec::Identity => false,
            ViolatedSpec::Seeded(seed) => {
                let mut h: u64 = 0xcbf29ce484222325 ^ *seed;
                for limb in child {
                    for b in limb.to_le_bytes() {
                        h = (h ^ b as u64).wrapping_mul(0x100000001b3);
                    }
                }
                h & 1 == 1
            }
            ViolatedSpec::Explicit(map) => map.get(child).copied().unwrap_or(false),
        };
        match label {
            DensePoint::Vertex(_) => {
                if matches!(self, ViolatedSpec::Explicit(_)) && raw {
                    return Err(Error::TranspositionAtVertexLabel);
                }
                Ok(false)
            }
            DensePoint::Interior(..) => Ok(raw),
        }
    }
}

/// Identity of a pre-gluing stage node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum NodeKey {
    /// Unblown essential vertex of a copy.
    Vertex(NodeName, VertexId),
    /// Blow-up port: point and local branch index.
    Port(NodeName, DensePoint, u8),
    /// Synthetic degree-2 basepoint of an uncut circle copy.
    Anchor(NodeName, EdgeId),
}

impl NodeKey {
    pub fn copy(&self) -> &NodeName {
        match self {
            NodeKey::Vertex(c, _) | NodeKey::Port(c, _, _) | NodeKey::Anchor(c, _) => c,
        }
    }

    pub fn is_anchor(&self) -> bool {
        matches!(self, NodeKey::Anchor(..))
    }
}

/// Provenance of a stage segment: a parameter interval of one essential
/// edge of one copy. On circle edges `start + len` may exceed 1 (the
/// interval wraps through parameter 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegInfo {
    pub copy: NodeName,
    pub edge: EdgeId,
    pub start: Q,
    pub len: Q,
}

#[derive(Debug, Clone)]
pub struct StageSpace {
    pub x: TopologicalGraph,
    pub tree: LabeledSubtree,
    pub mg: MGraph,
    /// Node classes after gluing; members sorted, `members[0]` canonical.
    pub node_classes: Vec<Vec<NodeKey>>,
    pub segs: Vec<SegInfo>,
    node_lookup: BTreeMap<NodeKey, usize>,
    /// per (copy, edge): division into segments, sorted by start.
    divisions: BTreeMap<(NodeName, EdgeId), Vec<(Q, Q, usize)>>,
}

/// Local branches at a dense point: the directions a blow-up separates.
pub fn branches(x: &TopologicalGraph, p: &DensePoint) -> Vec<(EdgeId, u8)> {
    match p {
        DensePoint::Vertex(v) => x.edge_ends_at(*v),
        DensePoint::Interior(e, _) => vec![(*e, 0), (*e, 1)],
    }
}

fn branch_index(x: &TopologicalGraph, p: &DensePoint, edge: EdgeId, end: u8) -> u8 {
    branches(x, p)
        .iter()
        .position(|&b| b == (edge, end))
        .expect("branch present") as u8
}

/// Build a stage of the standard system.
pub fn build_stage(x: &TopologicalGraph, tree: &LabeledSubtree) -> Result<StageSpace> {
    build(x, tree, &ViolatedSpec::Identity, &BTreeMap::new())
}

/// Build a stage of a violated system.
pub fn build_violated_stage(
    x: &TopologicalGraph,
    tree: &LabeledSubtree,
    spec: &ViolatedSpec,
) -> Result<StageSpace> {
    build(x, tree, spec, &BTreeMap::new())
}

pub(crate) fn build(
    x: &TopologicalGraph,
    tree: &LabeledSubtree,
    spec: &ViolatedSpec,
    extra_cuts: &BTreeMap<NodeName, Vec<DensePoint>>,
) -> Result<StageSpace> {
    x.validate()?;
    tree.validate(x)?;
    let copies = tree.nodes();

    // per copy: blown vertices and interior cut parameters per edge
    struct CopyCuts {
        blown: BTreeSet<VertexId>,
        cuts: BTreeMap<EdgeId, Vec<Q>>,
    }
    let mut cuts_of: BTreeMap<NodeName, CopyCuts> = BTreeMap::new();
    for c in &copies {
        let mut blown = BTreeSet::new();
        let mut cuts: BTreeMap<EdgeId, Vec<Q>> = BTreeMap::new();
        let mut points = tree.incident_labels(c);
        if let Some(extra) = extra_cuts.get(c) {
            points.extend(extra.iter().cloned());
        }
        {
            let mut sorted = points.clone();
            sorted.sort();
            let n = sorted.len();
            sorted.dedup();
            if sorted.len() != n {
                return Err(Error::InvalidSubtree(format!(
                    "repeated blow-up point at copy {c:?}"
                )));
            }
        }
        for p in points {
            match p {
                DensePoint::Vertex(v) => {
                    if !x.vertices.contains(&v) {
                        return Err(Error::PointNotInSpace(format!("vertex {v}")));
                    }
                    blown.insert(v);
                }
                DensePoint::Interior(e, t) => {
                    if (e as usize) >= x.edges.len() || t <= Q::zero() || t >= Q::one() {
                        return Err(Error::PointNotInSpace(format!(
                            "interior point e{e}@{}",
                            crate::num::fmt_q(t)
                        )));
                    }
                    cuts.entry(e).or_default().push(t);
                }
            }
        }
        for v in cuts.values_mut() {
            v.sort();
        }
        cuts_of.insert(c.clone(), CopyCuts { blown, cuts });
    }

    // collect pre-gluing node keys
    let mut keys: BTreeSet<NodeKey> = BTreeSet::new();
    for c in &copies {
        let cc = &cuts_of[c];
        for &v in &x.vertices {
            if !cc.blown.contains(&v) {
                keys.insert(NodeKey::Vertex(c.clone(), v));
            }
        }
        for &v in &cc.blown {
            let p = DensePoint::Vertex(v);
            for b in 0..branches(x, &p).len() {
                keys.insert(NodeKey::Port(c.clone(), p.clone(), b as u8));
            }
        }
        for (&e, ts) in &cc.cuts {
            for &t in ts {
                keys.insert(NodeKey::Port(c.clone(), DensePoint::Interior(e, t), 0));
                keys.insert(NodeKey::Port(c.clone(), DensePoint::Interior(e, t), 1));
            }
        }
        for (i, edge) in x.edges.iter().enumerate() {
            if edge.is_circle() && !cc.cuts.contains_key(&(i as EdgeId)) {
                keys.insert(NodeKey::Anchor(c.clone(), i as EdgeId));
            }
        }
    }

    // gluing: union-find over keys
    let key_list: Vec<NodeKey> = keys.iter().cloned().collect();
    let key_idx: BTreeMap<NodeKey, usize> = key_list
        .iter()
        .enumerate()
        .map(|(i, k)| (k.clone(), i))
        .collect();
    let mut uf = crate::graph::UnionFind::new(key_list.len());
    for (child, label) in tree.edges() {
        let parent: NodeName = child[..child.len() - 1].to_vec();
        let transpose = spec.transposes(child, label)?;
        let nb = branches(x, label).len();
        for b in 0..nb as u8 {
            let b2 = if transpose {
                debug_assert!(nb == 2);
                1 - b
            } else {
                b
            };
            let ka = key_idx[&NodeKey::Port(parent.clone(), label.clone(), b)];
            let kb = key_idx[&NodeKey::Port(child.clone(), label.clone(), b2)];
            uf.union(ka, kb);
        }
    }
    // classes
    let mut class_members: BTreeMap<usize, Vec<NodeKey>> = BTreeMap::new();
    for (i, k) in key_list.iter().enumerate() {
        class_members.entry(uf.find(i)).or_default().push(k.clone());
    }
    let mut node_classes: Vec<Vec<NodeKey>> = class_members.into_values().collect();
    for m in &mut node_classes {
        m.sort();
    }
    node_classes.sort();
    let mut node_lookup: BTreeMap<NodeKey, usize> = BTreeMap::new();
    for (i, cl) in node_classes.iter().enumerate() {
        for k in cl {
            node_lookup.insert(k.clone(), i);
        }
    }

    // segments
    let mut segs: Vec<SegInfo> = Vec::new();
    let mut mg_segs: Vec<crate::pw::Seg> = Vec::new();
    let mut divisions: BTreeMap<(NodeName, EdgeId), Vec<(Q, Q, usize)>> = BTreeMap::new();
    for c in &copies {
        let cc = &cuts_of[c];
        for (ei, edge) in x.edges.iter().enumerate() {
            let e = ei as EdgeId;
            let cuts = cc.cuts.get(&e).cloned().unwrap_or_default();
            let mut div: Vec<(Q, Q, usize)> = Vec::new();
            let end_node = |param_end: u8| -> usize {
                match edge.ends[param_end as usize] {
                    Some(v) => {
                        if cc.blown.contains(&v) {
                            let b = branch_index(x, &DensePoint::Vertex(v), e, param_end);
                            node_lookup[&NodeKey::Port(c.clone(), DensePoint::Vertex(v), b)]
                        } else {
                            node_lookup[&NodeKey::Vertex(c.clone(), v)]
                        }
                    }
                    None => unreachable!("circle handled separately"),
                }
            };
            let port = |t: Q, side: u8| -> usize {
                node_lookup[&NodeKey::Port(c.clone(), DensePoint::Interior(e, t), side)]
            };
            if edge.is_circle() {
                if cuts.is_empty() {
                    let a = node_lookup[&NodeKey::Anchor(c.clone(), e)];
                    let idx = mg_segs.len();
                    mg_segs.push(crate::pw::Seg {
                        a,
                        b: a,
                        len: Q::one(),
                    });
                    segs.push(SegInfo {
                        copy: c.clone(),
                        edge: e,
                        start: Q::zero(),
                        len: Q::one(),
                    });
                    div.push((Q::zero(), Q::one(), idx));
                } else {
                    for (i, &t) in cuts.iter().enumerate() {
                        let next = if i + 1 < cuts.len() {
                            cuts[i + 1]
                        } else {
                            cuts[0] + Q::one()
                        };
                        let idx = mg_segs.len();
                        mg_segs.push(crate::pw::Seg {
                            a: port(t, 1),
                            b: port(if i + 1 < cuts.len() { cuts[i + 1] } else { cuts[0] }, 0),
                            len: next - t,
                        });
                        segs.push(SegInfo {
                            copy: c.clone(),
                            edge: e,
                            start: t,
                            len: next - t,
                        });
                        div.push((t, next - t, idx));
                    }
                }
            } else {
                // division points 0 = d0 < c1 < ... < cm < 1
                let mut pts: Vec<Q> = vec![Q::zero()];
                pts.extend(cuts.iter().copied());
                pts.push(Q::one());
                for w in pts.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    let na = if a == Q::zero() {
                        end_node(0)
                    } else {
                        port(a, 1)
                    };
                    let nb = if b == Q::one() {
                        end_node(1)
                    } else {
                        port(b, 0)
                    };
                    let idx = mg_segs.len();
                    mg_segs.push(crate::pw::Seg {
                        a: na,
                        b: nb,
                        len: b - a,
                    });
                    segs.push(SegInfo {
                        copy: c.clone(),
                        edge: e,
                        start: a,
                        len: b - a,
                    });
                    div.push((a, b - a, idx));
                }
            }
            divisions.insert((c.clone(), e), div);
        }
    }

    Ok(StageSpace {
        x: x.clone(),
        tree: tree.clone(),
        mg: MGraph {
            node_count: node_classes.len(),
            segs: mg_segs,
        },
        node_classes,
        segs,
        node_lookup,
        divisions,
    })
}

impl StageSpace {
    pub fn node_index(&self, key: &NodeKey) -> Option<usize> {
        self.node_lookup.get(key).copied()
    }

    pub fn division(&self, copy: &NodeName, edge: EdgeId) -> &[(Q, Q, usize)] {
        self.divisions
            .get(&(copy.clone(), edge))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    /// Resolve a non-cut parameter of `(copy, edge)` to a point. Fails on
    /// cut parameters, whose two ports must be chosen with `port_at`.
    pub fn place(&self, copy: &NodeName, edge: EdgeId, param: Q) -> Result<Pt> {
        let div = self.division(copy, edge);
        let is_circle = self.x.edges[edge as usize].is_circle();
        // endpoint parameters on non-circle edges resolve to end nodes
        if !is_circle && (param == Q::zero() || param == Q::one()) {
            let (s0, _, seg) = if param == Q::zero() {
                div[0]
            } else {
                *div.last().unwrap()
            };
            let _ = s0;
            let seg_ref = &self.mg.segs[seg];
            return Ok(Pt::Node(if param == Q::zero() {
                seg_ref.a
            } else {
                seg_ref.b
            }));
        }
        for &(s0, len, seg) in div {
            for shift in [-Q::one(), Q::zero(), Q::one()] {
                let lo = s0 + shift;
                let hi = lo + len;
                if param > lo && param < hi {
                    return Ok(Pt::In(seg, param - lo));
                }
                if param == lo || param == hi {
                    // a division endpoint: a cut port or the anchor
                    if is_circle && self.division(copy, edge).len() == 1 && len == Q::one() {
                        // anchor node at parameter 0
                        return Ok(Pt::Node(self.mg.segs[seg].a));
                    }
                    return Err(Error::PointNotInSpace(format!(
                        "parameter {} is a cut point of e{edge}",
                        crate::num::fmt_q(param)
                    )));
                }
            }
        }
        Err(Error::PointNotInSpace(format!(
            "parameter {} not on e{edge}",
            crate::num::fmt_q(param)
        )))
    }

    /// The port node at a cut parameter, on the requested side (0: lower
    /// parameters, 1: higher).
    pub fn port_at(&self, copy: &NodeName, edge: EdgeId, t: Q, side: u8) -> Option<usize> {
        self.node_index(&NodeKey::Port(
            copy.clone(),
            DensePoint::Interior(edge, t),
            side,
        ))
    }

    /// Place of a dense point of a copy (the point itself, not its ports).
    pub fn place_dense(&self, copy: &NodeName, p: &DensePoint) -> Result<Pt> {
        match p {
            DensePoint::Vertex(v) => self
                .node_index(&NodeKey::Vertex(copy.clone(), *v))
                .map(Pt::Node)
                .ok_or_else(|| {
                    Error::PointNotInSpace(format!("vertex {v} blown in copy {copy:?}"))
                }),
            DensePoint::Interior(e, t) => self.place(copy, *e, *t),
        }
    }

    /// Pieces of `(copy, edge)` covering the parameter range `[u, v]`
    /// (with `v` possibly exceeding 1 on circle edges): returns
    /// `(param_a, param_b, seg, offset_a, offset_b)` tuples.
    pub fn pieces_for_range(
        &self,
        copy: &NodeName,
        edge: EdgeId,
        u: Q,
        v: Q,
    ) -> Vec<(Q, Q, usize, Q, Q)> {
        let mut out = Vec::new();
        for &(s0, len, seg) in self.division(copy, edge) {
            for shift in [-Q::one(), Q::zero(), Q::one()] {
                let lo = s0 + shift;
                let hi = lo + len;
                let a = u.max(lo);
                let b = v.min(hi);
                if a < b {
                    out.push((a, b, seg, a - lo, b - lo));
                }
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    pub fn component_count(&self) -> usize {
        self.mg.component_count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.mg.node_count as i64 - self.mg.segs.len() as i64
    }

    /// All node degrees equal 2, connected, Euler characteristic 0: the
    /// stage is a combinatorial circle.
    pub fn is_combinatorial_circle(&self) -> bool {
        self.component_count() == 1
            && self.euler_characteristic() == 0
            && (0..self.mg.node_count).all(|n| self.mg.node_degree(n) == 2)
    }

    /// A degree-2 glued port whose two segment germs come from different
    /// copies: removing it disconnects a small connected neighbourhood.
    pub fn local_cut_witness(&self) -> Option<usize> {
        for (i, cl) in self.node_classes.iter().enumerate() {
            if cl.len() < 2 || !cl.iter().all(|k| matches!(k, NodeKey::Port(..))) {
                continue;
            }
            if self.mg.node_degree(i) != 2 {
                continue;
            }
            let copies: BTreeSet<&NodeName> = cl.iter().map(|k| k.copy()).collect();
            if copies.len() >= 2 {
                return Some(i);
            }
        }
        None
    }

    /// View the stage as a topological graph (ports and anchors become
    /// ordinary points; degree-2 nodes are erased by re-essentialization).
    pub fn to_topological(&self) -> TopologicalGraph {
        // nodes become vertices 0..n, segments edges; then re-essentialize
        let vertices: Vec<VertexId> = (0..self.mg.node_count as VertexId).collect();
        let edges: Vec<TopEdge> = self
            .mg
            .segs
            .iter()
            .map(|s| TopEdge {
                ends: [Some(s.a as VertexId), Some(s.b as VertexId)],
                subdiv: 1,
            })
            .collect();
        re_essentialize(&TopologicalGraph { vertices, edges })
    }
}

/// Blow up a graph at one dense point: returns the blown stage (a
/// single-copy stage with an extra cut), the blow-down map onto the plain
/// single-copy stage, and the port set `P_p`.
pub fn blow_up_at(
    x: &TopologicalGraph,
    p: &DensePoint,
) -> Result<(StageSpace, PwMap, Vec<usize>)> {
    let tree = LabeledSubtree::root_only();
    let root: NodeName = Vec::new();
    let mut extra = BTreeMap::new();
    extra.insert(root.clone(), vec![p.clone()]);
    let blown = build(x, &tree, &ViolatedSpec::Identity, &extra)?;
    let plain = build_stage(x, &tree)?;
    let ports: Vec<usize> = (0..branches(x, p).len())
        .map(|b| {
            blown
                .node_index(&NodeKey::Port(root.clone(), p.clone(), b as u8))
                .expect("port exists")
        })
        .collect();

    // blow-down: identity on everything away from p; ports map to p
    let mut node_img: Vec<Pt> = Vec::with_capacity(blown.mg.node_count);
    for cl in &blown.node_classes {
        let img = match &cl[0] {
            NodeKey::Vertex(c, v) => plain.place_dense(c, &DensePoint::Vertex(*v))?,
            NodeKey::Anchor(c, e) => {
                let div = plain.division(c, *e);
                Pt::Node(plain.mg.segs[div[0].2].a)
            }
            NodeKey::Port(c, q, _) => plain.place_dense(c, q)?,
        };
        node_img.push(img);
    }
    let mut seg_img: Vec<Vec<Piece>> = Vec::with_capacity(blown.segs.len());
    for info in &blown.segs {
        let pieces = plain.pieces_for_range(&info.copy, info.edge, info.start, info.start + info.len);
        let mut out = Vec::new();
        for (a, b, seg, oa, ob) in pieces {
            out.push(Piece {
                lo: a - info.start,
                hi: b - info.start,
                img: Img::Affine {
                    seg,
                    from: oa,
                    to: ob,
                },
            });
        }
        seg_img.push(out);
    }
    let map = PwMap { node_img, seg_img };
    debug_assert!(map.validate(&blown.mg, &plain.mg));
    Ok((blown, map, ports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circle, figure_eight, segment, theta};
    use crate::num::q;
    use crate::reflection::enumerate_subtrees;

    fn one_edge_tree(x: &TopologicalGraph, label: DensePoint) -> LabeledSubtree {
        let mut t = LabeledSubtree::root_only();
        t.push_child_by_label(x, &vec![], &label).unwrap();
        t
    }

    #[test]
    fn blow_up_circle_interior() {
        let x = circle();
        let (blown, down, ports) =
            blow_up_at(&x, &DensePoint::Interior(0, q(1, 2))).unwrap();
        assert_eq!(ports.len(), 2);
        // an arc: two degree-1 ports joined by one segment
        assert_eq!(blown.mg.segs.len(), 1);
        assert_eq!(blown.mg.node_count, 2);
        assert!(down.is_surjective(&blown.mg, &{
            let plain = build_stage(&x, &LabeledSubtree::root_only()).unwrap();
            plain.mg
        }));
    }

    #[test]
    fn blow_up_theta_vertex() {
        let x = theta(3);
        let (_, _, ports) = blow_up_at(&x, &DensePoint::Vertex(0)).unwrap();
        assert_eq!(ports.len(), 3);
    }

    #[test]
    fn blow_up_segment_interior_disconnects() {
        let x = segment();
        let (blown, _, ports) = blow_up_at(&x, &DensePoint::Interior(0, q(1, 3))).unwrap();
        assert_eq!(ports.len(), 2);
        assert_eq!(blown.component_count(), 2);
    }

    #[test]
    fn blow_up_missing_point() {
        let x = segment();
        assert!(blow_up_at(&x, &DensePoint::Vertex(9)).is_err());
        assert!(blow_up_at(&x, &DensePoint::Interior(3, q(1, 2))).is_err());
    }

    #[test]
    fn circle_stage_is_circle() {
        let x = circle();
        let tree = one_edge_tree(&x, DensePoint::Interior(0, q(1, 2)));
        let stage = build_stage(&x, &tree).unwrap();
        assert!(stage.is_combinatorial_circle());
        // two copies' port pairs glued: 2 nodes, 2 segments
        assert_eq!(stage.mg.node_count, 2);
        assert_eq!(stage.mg.segs.len(), 2);
    }

    #[test]
    fn circle_stages_all_circles_small() {
        let x = circle();
        for tree in enumerate_subtrees(&x, 4, 3).unwrap() {
            let stage = build_stage(&x, &tree).unwrap();
            assert!(
                stage.is_combinatorial_circle(),
                "stage of {tree:?} not a circle"
            );
        }
    }

    #[test]
    fn theta_stage_at_vertex() {
        let x = theta(3);
        let tree = one_edge_tree(&x, DensePoint::Vertex(0));
        let stage = build_stage(&x, &tree).unwrap();
        assert_eq!(stage.component_count(), 1);
        // hand gluing: two copies of theta blown at v0, port triples glued:
        // nodes = 2 copies of v1 + 3 glued ports; segments = 6
        assert_eq!(stage.mg.node_count, 5);
        assert_eq!(stage.mg.segs.len(), 6);
        // Euler characteristic matches independent bookkeeping: two copies
        // of chi(theta)+2 (blow-up adds 2) glued along 3 points
        assert_eq!(stage.euler_characteristic(), -1);
    }

    #[test]
    fn disconnected_base_gives_disconnected_stage() {
        // two disjoint circles
        let x = TopologicalGraph {
            vertices: vec![],
            edges: vec![
                TopEdge {
                    ends: [None, None],
                    subdiv: 1,
                },
                TopEdge {
                    ends: [None, None],
                    subdiv: 1,
                },
            ],
        };
        let stage = build_stage(&x, &LabeledSubtree::root_only()).unwrap();
        assert_eq!(stage.component_count(), 2);
    }

    #[test]
    fn violated_identity_equals_standard() {
        let x = theta(3);
        let tree = one_edge_tree(&x, DensePoint::Interior(1, q(1, 2)));
        let a = build_stage(&x, &tree).unwrap();
        let b = build_violated_stage(&x, &tree, &ViolatedSpec::Identity).unwrap();
        assert_eq!(a.node_classes, b.node_classes);
        assert_eq!(a.segs, b.segs);
    }

    #[test]
    fn violated_transposition_on_circle_still_circle() {
        let x = circle();
        let tree = one_edge_tree(&x, DensePoint::Interior(0, q(1, 2)));
        let mut map = BTreeMap::new();
        for (child, _) in tree.edges() {
            map.insert(child.clone(), true);
        }
        let stage = build_violated_stage(&x, &tree, &ViolatedSpec::Explicit(map)).unwrap();
        assert!(stage.is_combinatorial_circle());
        assert_eq!(stage.component_count(), 1);
    }

    #[test]
    fn transposition_at_vertex_label_rejected() {
        let x = theta(3);
        let tree = one_edge_tree(&x, DensePoint::Vertex(0));
        let mut map = BTreeMap::new();
        for (child, _) in tree.edges() {
            map.insert(child.clone(), true);
        }
        assert!(matches!(
            build_violated_stage(&x, &tree, &ViolatedSpec::Explicit(map)),
            Err(Error::TranspositionAtVertexLabel)
        ));
    }

    #[test]
    fn local_cut_point_witness() {
        let x = theta(3);
        let tree = one_edge_tree(&x, DensePoint::Interior(0, q(1, 2)));
        let stage = build_stage(&x, &tree).unwrap();
        assert!(stage.local_cut_witness().is_some());
    }

    #[test]
    fn figure_eight_stage_disconnects_at_junction() {
        let x = figure_eight();
        let tree = one_edge_tree(&x, DensePoint::Vertex(0));
        let stage = build_stage(&x, &tree).unwrap();
        // blowing the separating vertex disconnects the double
        assert!(stage.component_count() >= 2);
    }
}
