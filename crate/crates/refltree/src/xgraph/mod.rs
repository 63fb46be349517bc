//! X-graphs and X-blow-ups.
//!
//! An X-graph over a template graph X (no loop edges, no degree-1
//! vertices) is a finite labeled graph whose vertex links match the
//! template links label-bijectively. The two blow-up operations insert a
//! modified copy of the template at a vertex or along a segment; the class
//! of X-graphs is closed under both.

mod sequence;
mod quotient;

pub use sequence::{
    validate_sequence, BlowUpSequence, DirectLocus, Locus, SequenceReport, StructureReport,
};
pub use quotient::{
    check_partitions, good_quotient, shrink_loci, JKind, JSet, QuotientReport, QuotientSequence,
    StagePartition,
};

use crate::error::{Error, Result};
use crate::graph::{graph_iso_labeled, re_essentialize, EdgeId, TopEdge, TopologicalGraph, VertexId};
use crate::num::Q;
use crate::pw::{Img, MGraph, Piece, Pt, PwMap, Seg};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// The template graph with cached link data.
#[derive(Debug, Clone)]
pub struct Template {
    pub graph: TopologicalGraph,
}

impl Template {
    pub fn new(graph: TopologicalGraph) -> Result<Self> {
        graph.validate()?;
        if graph.edges.iter().any(|e| e.is_loop()) {
            return Err(Error::Hypothesis(
                "template must have no essential loop edges".into(),
            ));
        }
        for &v in &graph.vertices {
            if graph.degree(v) < 2 {
                return Err(Error::Hypothesis(format!(
                    "template vertex {v} has degree < 2"
                )));
            }
        }
        Ok(Template { graph })
    }

    /// Link of a template vertex: sorted incident edge ids (no loops, so
    /// each appears once).
    pub fn link(&self, v: VertexId) -> Vec<EdgeId> {
        self.graph.incident_edges(v)
    }

    pub fn edge_ends(&self, e: EdgeId) -> (VertexId, VertexId) {
        match self.graph.edges[e as usize].ends {
            [Some(a), Some(b)] => (a, b),
            _ => unreachable!("validated template"),
        }
    }

    /// Template edges parallel to `e` (same endpoints, distinct id).
    pub fn parallel_edges(&self, e: EdgeId) -> Vec<EdgeId> {
        let (u, v) = self.edge_ends(e);
        self.graph
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, te)| {
                i as EdgeId != e && {
                    let mut ends = [te.ends[0], te.ends[1]];
                    ends.sort();
                    ends == [Some(u.min(v)), Some(u.max(v))]
                }
            })
            .map(|(i, _)| i as EdgeId)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XVertex {
    pub label: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XEdge {
    pub ends: [usize; 2],
    pub label: EdgeId,
}

/// A finite topological graph with template labels; every essential edge
/// has length 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XGraph {
    pub vertices: Vec<XVertex>,
    pub edges: Vec<XEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkOffence {
    pub vertex: usize,
    pub expected: Vec<EdgeId>,
    pub got: Vec<EdgeId>,
}

impl XGraph {
    pub fn tautological(tpl: &Template) -> XGraph {
        let vidx = |v: VertexId| tpl.graph.vertices.binary_search(&v).unwrap();
        XGraph {
            vertices: tpl
                .graph
                .vertices
                .iter()
                .map(|&v| XVertex { label: v })
                .collect(),
            edges: tpl
                .graph
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| XEdge {
                    ends: [
                        vidx(e.ends[0].expect("no circles")),
                        vidx(e.ends[1].unwrap()),
                    ],
                    label: i as EdgeId,
                })
                .collect(),
        }
    }

    pub fn mg(&self) -> MGraph {
        MGraph {
            node_count: self.vertices.len(),
            segs: self
                .edges
                .iter()
                .map(|e| Seg {
                    a: e.ends[0],
                    b: e.ends[1],
                    len: Q::one(),
                })
                .collect(),
        }
    }

    pub fn incident(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.ends[0] == v || e.ends[1] == v)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn link_labels(&self, v: usize) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self.incident(v).iter().map(|&i| self.edges[i].label).collect();
        out.sort_unstable();
        out
    }

    /// Link-bijection condition at every vertex.
    pub fn validate(&self, tpl: &Template) -> std::result::Result<(), Vec<LinkOffence>> {
        let mut offenders = Vec::new();
        for (v, xv) in self.vertices.iter().enumerate() {
            let expected = tpl.link(xv.label);
            let got = self.link_labels(v);
            if expected != got {
                offenders.push(LinkOffence {
                    vertex: v,
                    expected,
                    got,
                });
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.ends[0] == e.ends[1] {
                offenders.push(LinkOffence {
                    vertex: e.ends[0],
                    expected: vec![],
                    got: vec![i as EdgeId],
                });
            }
        }
        if offenders.is_empty() {
            Ok(())
        } else {
            Err(offenders)
        }
    }

    pub fn to_topological(&self) -> TopologicalGraph {
        re_essentialize(&TopologicalGraph {
            vertices: (0..self.vertices.len() as VertexId).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| TopEdge {
                    ends: [Some(e.ends[0] as VertexId), Some(e.ends[1] as VertexId)],
                    subdiv: 1,
                })
                .collect(),
        })
    }

    /// Label-respecting isomorphism of X-graphs.
    pub fn iso_labeled(&self, other: &XGraph) -> Option<Vec<(usize, usize)>> {
        let a = TopologicalGraph {
            vertices: (0..self.vertices.len() as VertexId).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| TopEdge {
                    ends: [Some(e.ends[0] as VertexId), Some(e.ends[1] as VertexId)],
                    subdiv: 1,
                })
                .collect(),
        };
        let b = TopologicalGraph {
            vertices: (0..other.vertices.len() as VertexId).collect(),
            edges: other
                .edges
                .iter()
                .map(|e| TopEdge {
                    ends: [Some(e.ends[0] as VertexId), Some(e.ends[1] as VertexId)],
                    subdiv: 1,
                })
                .collect(),
        };
        graph_iso_labeled(
            &a,
            &|v| self.vertices[v as usize].label as u64,
            &|e| self.edges[e as usize].label as u64,
            &b,
            &|v| other.vertices[v as usize].label as u64,
            &|e| other.edges[e as usize].label as u64,
        )
        .map(|m| m.into_iter().map(|(x, y)| (x as usize, y as usize)).collect())
    }
}

/// Which endpoint bijection a segment blow-up uses: the low-parameter end
/// of the blow-up segment is glued to the template edge's low (`LowToLow`)
/// or high (`LowToHigh`) endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gluing {
    LowToLow,
    LowToHigh,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlowUpKind {
    Vertex {
        at: usize,
    },
    Segment {
        edge: usize,
        lo: Q,
        hi: Q,
        gluing: Gluing,
    },
}

/// An X-blow-up: the refined X-graph and its surjection onto the previous
/// stage, plus the correspondence bookkeeping the sequence machinery
/// needs.
#[derive(Debug, Clone)]
pub struct XBlowUp {
    pub kind: BlowUpKind,
    /// The refined stage `X''`.
    pub source: XGraph,
    /// Point map `source -> target`.
    pub map: PwMap,
    /// Source vertex index of each target vertex surviving identically
    /// (the blown vertex maps to `None`).
    pub old_vertex: Vec<Option<usize>>,
    /// Source index of each inserted template vertex, positioned by the
    /// template vertex list (blown-star vertices absent in vertex case).
    pub inserted_vertex: Vec<Option<usize>>,
    /// Source edge index of each target edge surviving identically (the
    /// split edge of a segment blow-up maps to `None`).
    pub old_edge: Vec<Option<usize>>,
    /// For a segment blow-up: the two pieces of the split edge, as source
    /// edge indices (low side, high side).
    pub split_pieces: Option<(usize, usize)>,
    /// Source edge index of each inserted template edge (deleted template
    /// edges absent).
    pub inserted_edge: Vec<Option<usize>>,
}

/// The X-blow-up at a vertex (Def 5.2 shape): delete the vertex, insert
/// the template minus the open star of the vertex's label, and glue each
/// dangling edge end to the far endpoint of the like-labeled template
/// edge.
pub fn xblowup_vertex(tpl: &Template, g: &XGraph, at: usize) -> Result<XBlowUp> {
    if at >= g.vertices.len() {
        return Err(Error::PointNotInSpace(format!("vertex {at}")));
    }
    let v = g.vertices[at].label;
    let star: Vec<EdgeId> = tpl.link(v);

    // source vertices: old minus `at`, then template vertices minus v
    let mut old_vertex: Vec<Option<usize>> = Vec::with_capacity(g.vertices.len());
    let mut vertices: Vec<XVertex> = Vec::new();
    for (i, xv) in g.vertices.iter().enumerate() {
        if i == at {
            old_vertex.push(None);
        } else {
            old_vertex.push(Some(vertices.len()));
            vertices.push(xv.clone());
        }
    }
    let mut inserted_vertex: Vec<Option<usize>> = Vec::new();
    let mut tpl_vertex_src: std::collections::BTreeMap<VertexId, usize> =
        std::collections::BTreeMap::new();
    for &w in &tpl.graph.vertices {
        if w == v {
            inserted_vertex.push(None);
            continue;
        }
        inserted_vertex.push(Some(vertices.len()));
        tpl_vertex_src.insert(w, vertices.len());
        vertices.push(XVertex { label: w });
    }

    // source edges: old edges with ends at `at` re-glued to the far
    // endpoint of the like-labeled template edge, then template edges off
    // the star
    let mut edges: Vec<XEdge> = Vec::new();
    let mut old_edge: Vec<Option<usize>> = Vec::new();
    for e in &g.edges {
        let mut ends = [0usize; 2];
        for (j, &end) in e.ends.iter().enumerate() {
            if end == at {
                // far endpoint of the template edge labeled like this edge
                let (u0, u1) = tpl.edge_ends(e.label);
                let far = if u0 == v { u1 } else { u0 };
                ends[j] = tpl_vertex_src[&far];
            } else {
                ends[j] = old_vertex[end].expect("kept vertex");
            }
        }
        old_edge.push(Some(edges.len()));
        edges.push(XEdge {
            ends,
            label: e.label,
        });
    }
    let mut inserted_edge: Vec<Option<usize>> = Vec::new();
    for (i, te) in tpl.graph.edges.iter().enumerate() {
        if star.contains(&(i as EdgeId)) {
            inserted_edge.push(None);
            continue;
        }
        let (a, b) = (te.ends[0].unwrap(), te.ends[1].unwrap());
        inserted_edge.push(Some(edges.len()));
        edges.push(XEdge {
            ends: [tpl_vertex_src[&a], tpl_vertex_src[&b]],
            label: i as EdgeId,
        });
    }

    let source = XGraph { vertices, edges };
    debug_assert!(source.validate(tpl).is_ok());

    // the point map: identity away from the blown vertex, constant on the
    // inserted part
    let blown_pt = Pt::Node(at);
    let mut node_img: Vec<Pt> = vec![blown_pt.clone(); source.vertices.len()];
    for (tgt, src) in old_vertex.iter().enumerate() {
        if let Some(s) = src {
            node_img[*s] = Pt::Node(tgt);
        }
    }
    let mut seg_img: Vec<Vec<Piece>> = Vec::with_capacity(source.edges.len());
    for si in 0..source.edges.len() {
        if let Some(tgt) = old_edge.iter().position(|o| *o == Some(si)) {
            seg_img.push(vec![Piece {
                lo: Q::zero(),
                hi: Q::one(),
                img: Img::Affine {
                    seg: tgt,
                    from: Q::zero(),
                    to: Q::one(),
                },
            }]);
        } else {
            seg_img.push(vec![Piece {
                lo: Q::zero(),
                hi: Q::one(),
                img: Img::Point(blown_pt.clone()),
            }]);
        }
    }
    let map = PwMap { node_img, seg_img };
    debug_assert!(map.validate(&source.mg(), &g.mg()));
    Ok(XBlowUp {
        kind: BlowUpKind::Vertex { at },
        source,
        map,
        old_vertex,
        inserted_vertex,
        old_edge,
        split_pieces: None,
        inserted_edge,
    })
}

/// The X-blow-up at a segment (Def 5.3 shape): delete the open segment
/// and the open template edge, glue the four endpoints by the chosen
/// bijection. The map is the identity off the segment; parallel template
/// edges cover the whole segment, side edges cover the half toward their
/// glued endpoint, and the rest collapses to the segment's midpoint.
pub fn xblowup_segment(
    tpl: &Template,
    g: &XGraph,
    edge: usize,
    lo: Q,
    hi: Q,
    gluing: Gluing,
) -> Result<XBlowUp> {
    if edge >= g.edges.len() {
        return Err(Error::PointNotInSpace(format!("edge {edge}")));
    }
    if lo <= Q::zero() || hi >= Q::one() || lo >= hi {
        return Err(Error::Hypothesis(
            "blow-up segment must be a closed segment interior to the edge".into(),
        ));
    }
    let e = g.edges[edge].label;
    let (u, v) = tpl.edge_ends(e);
    // the template endpoint glued to the low end of the segment
    let (glue_lo, glue_hi) = match gluing {
        Gluing::LowToLow => (u, v),
        Gluing::LowToHigh => (v, u),
    };

    // vertices: all old, then the whole template vertex list
    let mut old_vertex: Vec<Option<usize>> = Vec::with_capacity(g.vertices.len());
    let mut vertices: Vec<XVertex> = Vec::new();
    for xv in &g.vertices {
        old_vertex.push(Some(vertices.len()));
        vertices.push(xv.clone());
    }
    let mut inserted_vertex: Vec<Option<usize>> = Vec::new();
    let mut tpl_vertex_src: std::collections::BTreeMap<VertexId, usize> =
        std::collections::BTreeMap::new();
    for &w in &tpl.graph.vertices {
        inserted_vertex.push(Some(vertices.len()));
        tpl_vertex_src.insert(w, vertices.len());
        vertices.push(XVertex { label: w });
    }

    // edges: old edges except the split one, the two pieces, then the
    // template edges except e
    let mut edges: Vec<XEdge> = Vec::new();
    let mut old_edge: Vec<Option<usize>> = Vec::new();
    for (i, ge) in g.edges.iter().enumerate() {
        if i == edge {
            old_edge.push(None);
            continue;
        }
        old_edge.push(Some(edges.len()));
        edges.push(XEdge {
            ends: [old_vertex[ge.ends[0]].unwrap(), old_vertex[ge.ends[1]].unwrap()],
            label: ge.label,
        });
    }
    let piece_lo = edges.len();
    edges.push(XEdge {
        ends: [
            old_vertex[g.edges[edge].ends[0]].unwrap(),
            tpl_vertex_src[&glue_lo],
        ],
        label: e,
    });
    let piece_hi = edges.len();
    edges.push(XEdge {
        ends: [
            tpl_vertex_src[&glue_hi],
            old_vertex[g.edges[edge].ends[1]].unwrap(),
        ],
        label: e,
    });
    let mut inserted_edge: Vec<Option<usize>> = Vec::new();
    for (i, te) in tpl.graph.edges.iter().enumerate() {
        if i as EdgeId == e {
            inserted_edge.push(None);
            continue;
        }
        let (a, b) = (te.ends[0].unwrap(), te.ends[1].unwrap());
        inserted_edge.push(Some(edges.len()));
        edges.push(XEdge {
            ends: [tpl_vertex_src[&a], tpl_vertex_src[&b]],
            label: i as EdgeId,
        });
    }
    let source = XGraph { vertices, edges };
    debug_assert!(source.validate(tpl).is_ok());

    let mid = (lo + hi) / Q::new(2, 1);
    let mid_pt = Pt::In(edge, mid);
    // glued parameter of a template endpoint
    let glued_param = |w: VertexId| -> Q {
        if w == glue_lo {
            lo
        } else {
            hi
        }
    };

    let mut node_img: Vec<Pt> = vec![mid_pt.clone(); source.vertices.len()];
    for (tgt, src) in old_vertex.iter().enumerate() {
        node_img[src.unwrap()] = Pt::Node(tgt);
    }
    for (ti, src) in inserted_vertex.iter().enumerate() {
        let w = tpl.graph.vertices[ti];
        let s = src.unwrap();
        if w == u || w == v {
            node_img[s] = Pt::In(edge, glued_param(w));
        }
        // other template vertices keep the midpoint image
    }

    let parallels = tpl.parallel_edges(e);
    let mut seg_img: Vec<Vec<Piece>> = Vec::with_capacity(source.edges.len());
    for (si, se) in source.edges.iter().enumerate() {
        // old edges: identity
        if let Some(tgt) = old_edge.iter().position(|o| *o == Some(si)) {
            seg_img.push(vec![Piece {
                lo: Q::zero(),
                hi: Q::one(),
                img: Img::Affine {
                    seg: tgt,
                    from: Q::zero(),
                    to: Q::one(),
                },
            }]);
            continue;
        }
        if si == piece_lo {
            seg_img.push(vec![Piece {
                lo: Q::zero(),
                hi: Q::one(),
                img: Img::Affine {
                    seg: edge,
                    from: Q::zero(),
                    to: lo,
                },
            }]);
            continue;
        }
        if si == piece_hi {
            seg_img.push(vec![Piece {
                lo: Q::zero(),
                hi: Q::one(),
                img: Img::Affine {
                    seg: edge,
                    from: hi,
                    to: Q::one(),
                },
            }]);
            continue;
        }
        // inserted template edge
        let ti = inserted_edge
            .iter()
            .position(|o| *o == Some(si))
            .expect("inserted edge");
        let te = ti as EdgeId;
        let (a, b) = tpl.edge_ends(te);
        let img = if parallels.contains(&te) {
            // homeomorphically onto the whole segment, consistent with the
            // endpoint identification
            Img::Affine {
                seg: edge,
                from: glued_param(a),
                to: glued_param(b),
            }
        } else if a == u || a == v || b == u || b == v {
            // a side edge: onto the half toward its glued endpoint; the
            // template-end parameter is its glued parameter, the far end
            // collapses to the midpoint
            let (wend, at_end0) = if a == u || a == v { (a, true) } else { (b, false) };
            let gp = glued_param(wend);
            if at_end0 {
                Img::Affine {
                    seg: edge,
                    from: gp,
                    to: mid,
                }
            } else {
                Img::Affine {
                    seg: edge,
                    from: mid,
                    to: gp,
                }
            }
        } else {
            Img::Point(mid_pt.clone())
        };
        let _ = se;
        seg_img.push(vec![Piece {
            lo: Q::zero(),
            hi: Q::one(),
            img,
        }]);
    }
    let map = PwMap { node_img, seg_img };
    debug_assert!(map.validate(&source.mg(), &g.mg()));
    Ok(XBlowUp {
        kind: BlowUpKind::Segment {
            edge,
            lo,
            hi,
            gluing,
        },
        source,
        map,
        old_vertex,
        inserted_vertex,
        old_edge,
        split_pieces: Some((piece_lo, piece_hi)),
        inserted_edge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::theta;
    use crate::num::q;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn theta_template() -> Template {
        Template::new(theta(3)).unwrap()
    }

    #[test]
    fn tautological_is_valid() {
        let tpl = theta_template();
        let g = XGraph::tautological(&tpl);
        assert!(g.validate(&tpl).is_ok());
    }

    #[test]
    fn relabeled_vertex_fails_validation() {
        let tpl = theta_template();
        let mut g = XGraph::tautological(&tpl);
        g.vertices[0].label = g.vertices[1].label;
        let err = g.validate(&tpl).unwrap_err();
        assert_eq!(err[0].vertex, 0);
    }

    #[test]
    fn vertex_blowup_counts_and_identity_region() {
        let tpl = theta_template();
        let g = XGraph::tautological(&tpl);
        for at in [0usize, 1] {
            let bu = xblowup_vertex(&tpl, &g, at).unwrap();
            // |V''| = |V'| - 1 + |V_X| - 1
            assert_eq!(
                bu.source.vertices.len(),
                g.vertices.len() - 1 + tpl.graph.vertices.len() - 1
            );
            assert!(bu.source.validate(&tpl).is_ok());
            assert!(bu.map.is_surjective(&bu.source.mg(), &g.mg()));
            // points unaffected by the blow-up map identically
            let keep = bu.old_vertex[1 - at].unwrap();
            assert_eq!(bu.map.node_img[keep], Pt::Node(1 - at));
        }
    }

    #[test]
    fn segment_blowup_two_gluings_differ() {
        let tpl = theta_template();
        let g = XGraph::tautological(&tpl);
        let a = xblowup_segment(&tpl, &g, 0, q(1, 3), q(2, 3), Gluing::LowToLow).unwrap();
        let b = xblowup_segment(&tpl, &g, 0, q(1, 3), q(2, 3), Gluing::LowToHigh).unwrap();
        assert!(a.source.validate(&tpl).is_ok());
        assert!(b.source.validate(&tpl).is_ok());
        assert!(a.map.is_surjective(&a.source.mg(), &g.mg()));
        assert!(b.map.is_surjective(&b.source.mg(), &g.mg()));
        // the two gluings yield different point maps on the glued vertices
        let ua = a.inserted_vertex[0].unwrap();
        let ub = b.inserted_vertex[0].unwrap();
        assert_ne!(a.map.node_img[ua], b.map.node_img[ub]);
        // identity region: a point outside the segment maps to itself
        assert_eq!(
            a.map.eval(&g.mg(), &Pt::In(0, q(1, 6))),
            Pt::In(0, q(1, 6))
        );
        // parallel-edge clause: theta's parallel edges map onto the
        // segment homeomorphically
        let par = tpl.parallel_edges(0);
        assert_eq!(par.len(), 2);
        let pe = a.inserted_edge[par[0] as usize].unwrap();
        match &a.map.seg_img[pe][0].img {
            Img::Affine { seg, from, to } => {
                assert_eq!(*seg, 0);
                let (m, mx) = (from.min(to), from.max(to));
                assert_eq!((*m, *mx), (q(1, 3), q(2, 3)));
            }
            other => panic!("expected affine, got {other:?}"),
        }
    }

    #[test]
    fn segment_touching_endpoint_rejected() {
        let tpl = theta_template();
        let g = XGraph::tautological(&tpl);
        assert!(xblowup_segment(&tpl, &g, 0, q(0, 1), q(1, 2), Gluing::LowToLow).is_err());
        assert!(xblowup_segment(&tpl, &g, 0, q(1, 2), q(1, 1), Gluing::LowToLow).is_err());
    }

    #[test]
    fn closure_under_random_blowups() {
        let tpl = theta_template();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut g = XGraph::tautological(&tpl);
        for _ in 0..12 {
            if rng.gen_bool(0.5) {
                let at = rng.gen_range(0..g.vertices.len());
                let bu = xblowup_vertex(&tpl, &g, at).unwrap();
                assert!(bu.source.validate(&tpl).is_ok(), "vertex blow-up broke links");
                assert!(bu.map.is_surjective(&bu.source.mg(), &g.mg()));
                g = bu.source;
            } else {
                let edge = rng.gen_range(0..g.edges.len());
                let (lo, hi) = (q(1, 3), q(3, 5));
                let gl = if rng.gen_bool(0.5) {
                    Gluing::LowToLow
                } else {
                    Gluing::LowToHigh
                };
                let bu = xblowup_segment(&tpl, &g, edge, lo, hi, gl).unwrap();
                assert!(bu.source.validate(&tpl).is_ok(), "segment blow-up broke links");
                assert!(bu.map.is_surjective(&bu.source.mg(), &g.mg()));
                g = bu.source;
            }
        }
    }

    #[test]
    fn iso_labeled_detects_relabeling() {
        let tpl = theta_template();
        let g = XGraph::tautological(&tpl);
        let h = XGraph {
            vertices: vec![g.vertices[1].clone(), g.vertices[0].clone()],
            edges: g
                .edges
                .iter()
                .map(|e| XEdge {
                    ends: [1 - e.ends[0], 1 - e.ends[1]],
                    label: e.label,
                })
                .collect(),
        };
        assert!(g.iso_labeled(&h).is_some());
    }
}
