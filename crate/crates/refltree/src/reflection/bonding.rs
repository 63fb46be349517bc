//! Bonding maps between stages: blow-down on shared copies, collapse of
//! hanging subtrees to the label of their first outgoing edge.

use super::stage::{NodeKey, StageSpace};
use super::{DensePoint, NodeName};
use crate::error::{Error, Result};
use crate::pw::{Img, Piece, Pt, PwMap, SubSet};

/// The bonding map of a pair `F ⊆ F'`: from the stage of `F'` (`src`)
/// onto the stage of `F` (`dst`). Works identically for standard and
/// violated stages (built with the same spec).
pub fn bonding(src: &StageSpace, dst: &StageSpace) -> Result<PwMap> {
    if !dst.tree.is_subtree_of(&src.tree) {
        return Err(Error::InvalidSubtree(
            "bonding target tree is not a subtree of the source tree".into(),
        ));
    }

    // collapse point for a copy outside dst: the label of the first edge
    // on the path from its deepest dst-ancestor, placed in that ancestor
    let collapse_point = |copy: &NodeName| -> Result<Pt> {
        let (anc, first_out) = dst.tree.deepest_ancestor_in(copy);
        let child = first_out.expect("copy outside dst has an outgoing step");
        let label = src
            .tree
            .parent_edge_label(&child)
            .expect("edge of src tree");
        dst.place_dense(&anc, label)
    };

    let mut node_img: Vec<Pt> = Vec::with_capacity(src.mg.node_count);
    for cl in &src.node_classes {
        // prefer a member whose copy survives in dst
        let member = cl
            .iter()
            .find(|k| dst.tree.contains(k.copy()))
            .unwrap_or(&cl[0]);
        let img = if !dst.tree.contains(member.copy()) {
            collapse_point(member.copy())?
        } else {
            match member {
                NodeKey::Vertex(c, v) => dst.place_dense(c, &DensePoint::Vertex(*v))?,
                NodeKey::Anchor(c, e) => {
                    let div = dst.division(c, *e);
                    Pt::Node(dst.mg.segs[div[0].2].a)
                }
                NodeKey::Port(c, p, b) => {
                    // the port survives iff dst also cuts at p in this copy
                    let key = NodeKey::Port(c.clone(), p.clone(), *b);
                    match dst.node_index(&key) {
                        Some(n) => Pt::Node(n),
                        None => dst.place_dense(c, p)?,
                    }
                }
            }
        };
        node_img.push(img);
    }

    let mut seg_img: Vec<Vec<Piece>> = Vec::with_capacity(src.segs.len());
    for info in &src.segs {
        if !dst.tree.contains(&info.copy) {
            let p = collapse_point(&info.copy)?;
            seg_img.push(vec![Piece {
                lo: crate::num::qi(0),
                hi: info.len,
                img: Img::Point(p),
            }]);
            continue;
        }
        let mut pieces = Vec::new();
        for (a, b, seg, oa, ob) in
            dst.pieces_for_range(&info.copy, info.edge, info.start, info.start + info.len)
        {
            pieces.push(Piece {
                lo: a - info.start,
                hi: b - info.start,
                img: Img::Affine {
                    seg,
                    from: oa,
                    to: ob,
                },
            });
        }
        seg_img.push(pieces);
    }

    let map = PwMap { node_img, seg_img };
    debug_assert!(map.validate(&src.mg, &dst.mg));
    Ok(map)
}

/// Connectivity of the fiber of the bonding map over a target point.
/// The fiber is taken as the union of all source nodes and whole source
/// segments mapping to the point (interior preimage points of isometric
/// pieces are singletons and connect nothing).
pub fn fiber_is_connected(src: &StageSpace, map: &PwMap, target: &Pt) -> bool {
    let mut nodes: Vec<usize> = Vec::new();
    for (n, img) in map.node_img.iter().enumerate() {
        if img == target {
            nodes.push(n);
        }
    }
    let mut segs: Vec<usize> = Vec::new();
    for (s, pieces) in map.seg_img.iter().enumerate() {
        for pc in pieces {
            if let Img::Point(p) = &pc.img {
                if p == target {
                    segs.push(s);
                    break;
                }
            }
        }
    }
    if nodes.len() + segs.len() <= 1 {
        return true;
    }
    // union-find over the fiber atoms
    let mut uf = crate::graph::UnionFind::new(nodes.len() + segs.len());
    let node_pos = |n: usize| nodes.iter().position(|&m| m == n);
    for (j, &s) in segs.iter().enumerate() {
        let seg = &src.mg.segs[s];
        for end in [seg.a, seg.b] {
            if let Some(i) = node_pos(end) {
                uf.union(i, nodes.len() + j);
            }
        }
    }
    // all atoms in one class?
    let root = uf.find(0);
    (1..nodes.len() + segs.len()).all(|i| uf.find(i) == root)
}

/// Every point of the target either has a singleton fiber or its fiber is
/// connected; check over all target nodes and all collapse loci.
pub fn all_fibers_connected(src: &StageSpace, dst: &StageSpace, map: &PwMap) -> bool {
    let mut targets: Vec<Pt> = (0..dst.mg.node_count).map(Pt::Node).collect();
    // interior collapse targets (points hit by Point-pieces)
    for pieces in &map.seg_img {
        for pc in pieces {
            if let Img::Point(p) = &pc.img {
                if !targets.contains(p) {
                    targets.push(p.clone());
                }
            }
        }
    }
    targets.iter().all(|t| fiber_is_connected(src, map, t))
}

/// Image of a whole source copy (used in tests).
pub fn copy_subset(stage: &StageSpace, copy: &NodeName) -> SubSet {
    let mut sub = SubSet::empty();
    for (i, cl) in stage.node_classes.iter().enumerate() {
        if cl.iter().any(|k| k.copy() == copy) {
            sub.nodes.insert(i);
        }
    }
    for (s, info) in stage.segs.iter().enumerate() {
        if &info.copy == copy {
            sub.add_interval(&stage.mg, s, crate::num::qi(0), info.len);
        }
    }
    sub
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circle, theta};
    use crate::num::q;
    use crate::reflection::{build_stage, LabeledSubtree};

    #[test]
    fn bonding_to_self_is_identity() {
        let x = theta(3);
        let mut tree = LabeledSubtree::root_only();
        tree.push_child_by_index(&x, &vec![], 0).unwrap();
        let stage = build_stage(&x, &tree).unwrap();
        let map = bonding(&stage, &stage).unwrap();
        let id = PwMap::identity(&stage.mg);
        assert!(map.same_map(&id, &stage.mg, &stage.mg));
    }

    #[test]
    fn circle_bonding_collapses_far_copy() {
        let x = circle();
        let root = LabeledSubtree::root_only();
        let mut tree = root.clone();
        tree.push_child_by_index(&x, &vec![], 0).unwrap();
        let big = build_stage(&x, &tree).unwrap();
        let small = build_stage(&x, &root).unwrap();
        let map = bonding(&big, &small).unwrap();
        assert!(map.is_surjective(&big.mg, &small.mg));
        // the far copy maps onto the blown point e0@1/2
        let far = copy_subset(&big, &vec![0]);
        let img = map.image_of(&small.mg, &far);
        assert!(img.contains_pt(&small.place(&vec![], 0, q(1, 2)).unwrap()));
        assert!(all_fibers_connected(&big, &small, &map));
    }

    #[test]
    fn composition_law_three_level_chain() {
        let x = theta(3);
        let mut t0 = LabeledSubtree::root_only();
        let c0 = t0.push_child_by_index(&x, &vec![], 2).unwrap(); // interior label
        let mut t1 = t0.clone();
        t1.push_child_by_index(&x, &c0, 0).unwrap();
        let root = LabeledSubtree::root_only();
        let s_root = build_stage(&x, &root).unwrap();
        let s0 = build_stage(&x, &t0).unwrap();
        let s1 = build_stage(&x, &t1).unwrap();
        let b10 = bonding(&s1, &s0).unwrap();
        let b0r = bonding(&s0, &s_root).unwrap();
        let b1r = bonding(&s1, &s_root).unwrap();
        let comp = b0r.after(&b10, &s0.mg, &s_root.mg);
        assert!(comp.same_map(&b1r, &s1.mg, &s_root.mg));
        assert!(b10.is_surjective(&s1.mg, &s0.mg));
        assert!(b0r.is_surjective(&s0.mg, &s_root.mg));
        assert!(all_fibers_connected(&s1, &s_root, &b1r));
        assert!(all_fibers_connected(&s1, &s0, &b10));
    }
}
