//! Finite stages of reflection inverse systems.
//!
//! The countable dense subset `D` of a topological graph is realized
//! canonically: essential vertices first (by id), then interior points
//! `(edge, t)` with `t` running over the Calkin-Wilf enumeration of the
//! rationals in `(0,1)`, interleaved across edges. Labeled subtrees of the
//! index tree `T` carry one `D`-point per edge; at every node the child
//! edges enumerate `D` minus the parent edge's label, in enumeration order.

mod stage;
mod bonding;
mod prop41;

pub use stage::{blow_up_at, build_stage, build_violated_stage, StageSpace, ViolatedSpec};
pub use bonding::{all_fibers_connected, bonding, copy_subset, fiber_is_connected};
pub use prop41::{prop41_isomorphism, verify_prop41, Prop41Step};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, TopologicalGraph, VertexId};
use crate::num::Q;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A point of the canonical dense subset `D`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DensePoint {
    Vertex(VertexId),
    /// Interior point of an essential edge at parameter `t` in `(0,1)`,
    /// measured along the edge's fixed orientation.
    Interior(EdgeId, Q),
}

impl DensePoint {
    pub fn describe(&self) -> String {
        match self {
            DensePoint::Vertex(v) => format!("v{v}"),
            DensePoint::Interior(e, t) => format!("e{e}@{}", crate::num::fmt_q(*t)),
        }
    }
}

/// `n`-th value of the Calkin-Wilf sequence (1-based), via the binary path
/// from the root of the Calkin-Wilf tree.
fn calkin_wilf(n: u128) -> Q {
    debug_assert!(n >= 1);
    let bits = 128 - n.leading_zeros();
    let mut r = Q::one();
    for i in (0..bits.saturating_sub(1)).rev() {
        let bit = (n >> i) & 1;
        if bit == 0 {
            // left child: r / (r + 1)
            r = r / (r + Q::one());
        } else {
            r = r + Q::one();
        }
    }
    r
}

/// `i`-th rational of `(0,1)` in Calkin-Wilf order (0-based). The values
/// below 1 sit at the even positions of the full sequence, and the one at
/// position `2m` is `c/(c+d)` where `c/d` is the value at position `m`.
pub fn calkin_wilf_01(i: u128) -> Q {
    let r = calkin_wilf(i + 1);
    let (c, d) = (*r.numer(), *r.denom());
    Q::new(c, c + d)
}

/// Position of `t` in the `(0,1)` Calkin-Wilf enumeration (0-based).
pub fn calkin_wilf_01_index(t: Q) -> Result<u128> {
    if t <= Q::zero() || t >= Q::one() {
        return Err(Error::EnumerationOverflow(format!(
            "{} outside (0,1)",
            crate::num::fmt_q(t)
        )));
    }
    // walk up the tree collecting the path, then replay it downward
    let mut cur = t;
    let mut bits: Vec<u8> = Vec::new();
    let mut steps = 0usize;
    while cur != Q::one() {
        steps += 1;
        if steps > 200 {
            return Err(Error::EnumerationOverflow(format!(
                "continued fraction of {} too deep",
                crate::num::fmt_q(t)
            )));
        }
        if cur < Q::one() {
            bits.push(0);
            cur = cur / (Q::one() - cur);
        } else {
            bits.push(1);
            cur = cur - Q::one();
        }
    }
    let mut pos: u128 = 1;
    for &b in bits.iter().rev() {
        pos = pos
            .checked_mul(2)
            .and_then(|p| p.checked_add(b as u128))
            .ok_or_else(|| {
                Error::EnumerationOverflow(format!(
                    "Calkin-Wilf position of {} exceeds u128",
                    crate::num::fmt_q(t)
                ))
            })?;
    }
    // t < 1, so pos is even
    debug_assert_eq!(pos % 2, 0);
    Ok(pos / 2 - 1)
}

/// `k`-th point of the canonical dense subset of `x`.
pub fn enumerate_d(x: &TopologicalGraph, k: u128) -> Result<DensePoint> {
    let nv = x.vertices.len() as u128;
    if k < nv {
        return Ok(DensePoint::Vertex(x.vertices[k as usize]));
    }
    let m = x.edges.len() as u128;
    if m == 0 {
        return Err(Error::EnumerationOverflow(
            "graph has no edges: D is finite".into(),
        ));
    }
    let j = k - nv;
    let edge = (j % m) as EdgeId;
    let t = calkin_wilf_01(j / m);
    Ok(DensePoint::Interior(edge, t))
}

/// Inverse of `enumerate_d`.
pub fn d_index(x: &TopologicalGraph, p: &DensePoint) -> Result<u128> {
    let nv = x.vertices.len() as u128;
    match p {
        DensePoint::Vertex(v) => x
            .vertices
            .binary_search(v)
            .map(|i| i as u128)
            .map_err(|_| Error::PointNotInSpace(format!("vertex {v}"))),
        DensePoint::Interior(e, t) => {
            let m = x.edges.len() as u128;
            if (*e as usize) >= x.edges.len() {
                return Err(Error::PointNotInSpace(format!("edge {e}")));
            }
            let i = calkin_wilf_01_index(*t)?;
            i.checked_mul(m)
                .and_then(|v| v.checked_add(*e as u128))
                .and_then(|v| v.checked_add(nv))
                .ok_or_else(|| Error::EnumerationOverflow("D index exceeds u128".into()))
        }
    }
}

/// Name of a tree node: the child indices along the path from the root.
pub type NodeName = Vec<u128>;

/// A finite subtree of the canonical labeled index tree, rooted at the
/// base node. Each non-root node stores the label of its parent edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledSubtree {
    labels: BTreeMap<NodeName, DensePoint>,
}

impl LabeledSubtree {
    pub fn root_only() -> Self {
        LabeledSubtree {
            labels: BTreeMap::new(),
        }
    }

    pub fn nodes(&self) -> Vec<NodeName> {
        let mut out = vec![Vec::new()];
        out.extend(self.labels.keys().cloned());
        out.sort();
        out
    }

    pub fn len(&self) -> usize {
        self.labels.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, name: &NodeName) -> bool {
        name.is_empty() || self.labels.contains_key(name)
    }

    /// Label of the edge joining `name` to its parent; `None` at the root.
    pub fn parent_edge_label(&self, name: &NodeName) -> Option<&DensePoint> {
        self.labels.get(name)
    }

    /// Non-root nodes with their parent-edge labels.
    pub fn edges(&self) -> impl Iterator<Item = (&NodeName, &DensePoint)> {
        self.labels.iter()
    }

    pub fn children_of(&self, name: &NodeName) -> Vec<NodeName> {
        self.labels
            .keys()
            .filter(|c| c.len() == name.len() + 1 && c.starts_with(name))
            .cloned()
            .collect()
    }

    /// Labels of all tree edges incident to `name` (parent edge plus child
    /// edges).
    pub fn incident_labels(&self, name: &NodeName) -> Vec<DensePoint> {
        let mut out = Vec::new();
        if let Some(l) = self.parent_edge_label(name) {
            out.push(l.clone());
        }
        for c in self.children_of(name) {
            out.push(self.labels[&c].clone());
        }
        out
    }

    /// Label of the `k`-th child edge of a node whose parent edge carries
    /// `skip` (None at the root): the `k`-th point of `D` minus `skip`.
    pub fn child_label(
        x: &TopologicalGraph,
        skip: Option<&DensePoint>,
        k: u128,
    ) -> Result<DensePoint> {
        match skip {
            None => enumerate_d(x, k),
            Some(p) => {
                let pi = d_index(x, p)?;
                enumerate_d(x, if k < pi { k } else { k + 1 })
            }
        }
    }

    /// Child index carrying `label` at a node whose parent edge carries
    /// `skip`.
    pub fn child_index(
        x: &TopologicalGraph,
        skip: Option<&DensePoint>,
        label: &DensePoint,
    ) -> Result<u128> {
        let d = d_index(x, label)?;
        match skip {
            None => Ok(d),
            Some(p) => {
                let pi = d_index(x, p)?;
                if d == pi {
                    return Err(Error::InvalidSubtree(
                        "child label equals parent label".into(),
                    ));
                }
                Ok(if d < pi { d } else { d - 1 })
            }
        }
    }

    /// Add the `k`-th child of `parent`; returns the new node's name.
    pub fn push_child_by_index(
        &mut self,
        x: &TopologicalGraph,
        parent: &NodeName,
        k: u128,
    ) -> Result<NodeName> {
        if !self.contains(parent) {
            return Err(Error::InvalidSubtree(format!("parent {parent:?} missing")));
        }
        let label = Self::child_label(x, self.parent_edge_label(parent), k)?;
        let mut name = parent.clone();
        name.push(k);
        if self.labels.contains_key(&name) {
            return Err(Error::InvalidSubtree(format!("node {name:?} present")));
        }
        self.labels.insert(name.clone(), label);
        Ok(name)
    }

    /// Add the child of `parent` whose edge carries `label`.
    pub fn push_child_by_label(
        &mut self,
        x: &TopologicalGraph,
        parent: &NodeName,
        label: &DensePoint,
    ) -> Result<NodeName> {
        let k = Self::child_index(x, self.parent_edge_label(parent), label)?;
        self.push_child_by_index(x, parent, k)
    }

    /// Is `self` a subtree of `other` (same node names)?
    pub fn is_subtree_of(&self, other: &LabeledSubtree) -> bool {
        self.labels
            .iter()
            .all(|(n, l)| other.labels.get(n) == Some(l))
    }

    /// Validate closure under parent and pairwise-distinct incident labels.
    pub fn validate(&self, x: &TopologicalGraph) -> Result<()> {
        for name in self.labels.keys() {
            let parent: NodeName = name[..name.len() - 1].to_vec();
            if !self.contains(&parent) {
                return Err(Error::InvalidSubtree(format!(
                    "node {name:?} lacks parent"
                )));
            }
        }
        for name in self.nodes() {
            let mut labels = self.incident_labels(&name);
            labels.sort();
            let before = labels.len();
            labels.dedup();
            if labels.len() != before {
                return Err(Error::InvalidSubtree(format!(
                    "repeated incident label at {name:?}"
                )));
            }
            // labels must agree with the canonical enumeration
            let skip = self.parent_edge_label(&name).cloned();
            for c in self.children_of(&name) {
                let k = *c.last().unwrap();
                let expect = Self::child_label(x, skip.as_ref(), k)?;
                if self.labels[&c] != expect {
                    return Err(Error::InvalidSubtree(format!(
                        "label mismatch at {c:?}: {} vs canonical {}",
                        self.labels[&c].describe(),
                        expect.describe()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Deepest node of `self` that is an ancestor of (or equal to) `name`.
    pub fn deepest_ancestor_in(&self, name: &NodeName) -> (NodeName, Option<NodeName>) {
        let mut cur = name.clone();
        let mut prev: Option<NodeName> = None;
        while !self.contains(&cur) {
            prev = Some(cur.clone());
            cur.pop();
        }
        (cur, prev)
    }
}

/// All labeled subtrees containing the root with at most `max_nodes` nodes
/// and child indices below `max_index`, in canonical order.
pub fn enumerate_subtrees(
    x: &TopologicalGraph,
    max_nodes: usize,
    max_index: u128,
) -> Result<Vec<LabeledSubtree>> {
    let mut out = Vec::new();
    let root = LabeledSubtree::root_only();
    fn grow(
        x: &TopologicalGraph,
        cur: &LabeledSubtree,
        last: Option<&NodeName>,
        max_nodes: usize,
        max_index: u128,
        out: &mut Vec<LabeledSubtree>,
    ) -> Result<()> {
        out.push(cur.clone());
        if cur.len() >= max_nodes {
            return Ok(());
        }
        // candidates: children of any present node, in lex order, strictly
        // after the last added name (each set is generated exactly once,
        // in sorted order)
        for parent in cur.nodes() {
            for k in 0..max_index {
                let mut cand = parent.clone();
                cand.push(k);
                if cur.contains(&cand) {
                    continue;
                }
                if let Some(last) = last {
                    if cand <= *last {
                        continue;
                    }
                }
                let mut next = cur.clone();
                next.push_child_by_index(x, &parent, k)?;
                grow(x, &next, Some(&cand), max_nodes, max_index, out)?;
            }
        }
        Ok(())
    }
    grow(x, &root, None, max_nodes, max_index, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circle, segment, theta};
    use crate::num::q;

    #[test]
    fn calkin_wilf_prefix() {
        let seq: Vec<Q> = (1..=8).map(|n| calkin_wilf(n as u128)).collect();
        assert_eq!(
            seq,
            vec![
                q(1, 1),
                q(1, 2),
                q(2, 1),
                q(1, 3),
                q(3, 2),
                q(2, 3),
                q(3, 1),
                q(1, 4)
            ]
        );
        let in01: Vec<Q> = (0..5).map(calkin_wilf_01).collect();
        assert_eq!(in01, vec![q(1, 2), q(1, 3), q(2, 3), q(1, 4), q(3, 5)]);
    }

    #[test]
    fn cw_index_inverts() {
        for i in 0..200u128 {
            let t = calkin_wilf_01(i);
            assert_eq!(calkin_wilf_01_index(t).unwrap(), i);
        }
    }

    #[test]
    fn enumerate_theta() {
        let x = theta(3);
        assert_eq!(enumerate_d(&x, 0).unwrap(), DensePoint::Vertex(0));
        assert_eq!(enumerate_d(&x, 1).unwrap(), DensePoint::Vertex(1));
        // first interior point: edge 0 at 1/2 (pinned golden value)
        assert_eq!(
            enumerate_d(&x, 2).unwrap(),
            DensePoint::Interior(0, q(1, 2))
        );
        assert_eq!(
            enumerate_d(&x, 3).unwrap(),
            DensePoint::Interior(1, q(1, 2))
        );
        assert_eq!(
            enumerate_d(&x, 4).unwrap(),
            DensePoint::Interior(2, q(1, 2))
        );
        assert_eq!(
            enumerate_d(&x, 5).unwrap(),
            DensePoint::Interior(0, q(1, 3))
        );
        // bijectivity on a prefix
        for k in 0..100u128 {
            let p = enumerate_d(&x, k).unwrap();
            assert_eq!(d_index(&x, &p).unwrap(), k);
        }
    }

    #[test]
    fn density_gap_on_segment() {
        // the first 64 interior points on the single edge of a segment
        // leave no gap bigger than 1/6 (density-check oracle: sort the
        // points and measure the largest gap, frozen here)
        let x = segment();
        let mut ts: Vec<Q> = (0..64u128)
            .map(|j| match enumerate_d(&x, 2 + j).unwrap() {
                DensePoint::Interior(0, t) => t,
                other => panic!("unexpected point {other:?}"),
            })
            .collect();
        ts.sort();
        let mut gap = ts[0];
        for w in ts.windows(2) {
            gap = gap.max(w[1] - w[0]);
        }
        gap = gap.max(q(1, 1) - *ts.last().unwrap());
        assert!(gap <= q(1, 6), "largest gap {} too big", crate::num::fmt_q(gap));
    }

    #[test]
    fn subtree_labels_canonical() {
        let x = theta(3);
        let mut f = LabeledSubtree::root_only();
        let c0 = f.push_child_by_index(&x, &vec![], 0).unwrap();
        assert_eq!(f.parent_edge_label(&c0), Some(&DensePoint::Vertex(0)));
        // child 0 of c0 skips the parent label v0: it is v1
        let c00 = f.push_child_by_index(&x, &c0, 0).unwrap();
        assert_eq!(f.parent_edge_label(&c00), Some(&DensePoint::Vertex(1)));
        // child 1 of c00 skips v1 (its parent label): index 1 -> e0@1/2
        let c001 = f.push_child_by_index(&x, &c00, 1).unwrap();
        assert_eq!(
            f.parent_edge_label(&c001),
            Some(&DensePoint::Interior(0, q(1, 2)))
        );
        f.validate(&x).unwrap();
        // round trip by label
        let mut g = LabeledSubtree::root_only();
        let d0 = g
            .push_child_by_label(&x, &vec![], &DensePoint::Vertex(0))
            .unwrap();
        assert_eq!(d0, c0);
    }

    #[test]
    fn subtree_enumeration_counts() {
        let x = circle();
        let subs = enumerate_subtrees(&x, 3, 2).unwrap();
        // sizes: 1 (root), 2 (two single children), then 3-node trees:
        // root with both children, chains of depth 2 (2*2), total 4+...
        let by_len: Vec<usize> = (1..=3)
            .map(|n| subs.iter().filter(|s| s.len() == n).count())
            .collect();
        assert_eq!(by_len[0], 1);
        assert_eq!(by_len[1], 2);
        // 3-node: {0,1}, {0,00}, {0,01}, {1,10}, {1,11} -> 5
        assert_eq!(by_len[2], 5);
        for s in &subs {
            s.validate(&x).unwrap();
        }
    }
}
