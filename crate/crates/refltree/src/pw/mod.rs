//! Exact-rational metric graphs and piecewise-affine maps between them.
//!
//! Every bonding map, blow-down, X-blow-up point map and stage isomorphism
//! in this crate is a `PwMap`: a total map that sends each node to a point
//! and each segment, piecewise, either affinely into a target segment or
//! to a constant point. All arithmetic is exact.

use crate::num::Q;
use num_traits::{Signed, Zero};
use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

/// A finite metric graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MGraph {
    pub node_count: usize,
    pub segs: Vec<Seg>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seg {
    pub a: usize,
    pub b: usize,
    pub len: Q,
}

/// A point of a metric graph: a node or a segment-interior point at a
/// given arc length from the segment's `a` end (always `0 < t < len`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Pt {
    Node(usize),
    In(usize, Q),
}

impl MGraph {
    pub fn canon(&self, seg: usize, t: Q) -> Pt {
        let s = &self.segs[seg];
        if t <= Q::zero() {
            debug_assert!(t == Q::zero());
            Pt::Node(s.a)
        } else if t >= s.len {
            debug_assert!(t == s.len);
            Pt::Node(s.b)
        } else {
            Pt::In(seg, t)
        }
    }

    pub fn incident(&self, n: usize) -> Vec<(usize, u8)> {
        let mut out = Vec::new();
        for (i, s) in self.segs.iter().enumerate() {
            if s.a == n {
                out.push((i, 0));
            }
            if s.b == n {
                out.push((i, 1));
            }
        }
        out
    }

    pub fn node_degree(&self, n: usize) -> usize {
        self.incident(n).len()
    }

    pub fn component_count(&self) -> usize {
        let mut uf: Vec<usize> = (0..self.node_count).collect();
        fn find(uf: &mut Vec<usize>, a: usize) -> usize {
            if uf[a] != a {
                let r = find(uf, uf[a]);
                uf[a] = r;
            }
            uf[a]
        }
        for s in &self.segs {
            let (ra, rb) = (find(&mut uf, s.a), find(&mut uf, s.b));
            if ra != rb {
                let m = ra.min(rb);
                uf[ra.max(rb)] = m;
                uf[ra.min(rb)] = m;
            }
        }
        (0..self.node_count)
            .filter(|&i| find(&mut uf, i) == i)
            .count()
    }

    /// Exact single-source shortest-path distances to all nodes.
    pub fn node_distances(&self, sources: &[(usize, Q)]) -> Vec<Option<Q>> {
        let mut dist: Vec<Option<Q>> = vec![None; self.node_count];
        let mut heap: BinaryHeap<Reverse<(Q, usize)>> = BinaryHeap::new();
        for &(n, d) in sources {
            if dist[n].map_or(true, |cur| d < cur) {
                dist[n] = Some(d);
                heap.push(Reverse((d, n)));
            }
        }
        while let Some(Reverse((d, n))) = heap.pop() {
            if dist[n] != Some(d) {
                continue;
            }
            for (si, _) in self.incident(n) {
                let s = &self.segs[si];
                let other = if s.a == n { s.b } else { s.a };
                let nd = d + s.len;
                if dist[other].map_or(true, |cur| nd < cur) {
                    dist[other] = Some(nd);
                    heap.push(Reverse((nd, other)));
                }
            }
            // self-loop segments add nothing new for node distances
        }
        dist
    }

    /// Exact distance between two points.
    pub fn distance(&self, p: &Pt, q: &Pt) -> Option<Q> {
        if p == q {
            return Some(Q::zero());
        }
        let seed = |p: &Pt| -> Vec<(usize, Q)> {
            match *p {
                Pt::Node(n) => vec![(n, Q::zero())],
                Pt::In(s, t) => {
                    let seg = &self.segs[s];
                    vec![(seg.a, t), (seg.b, seg.len - t)]
                }
            }
        };
        let dist = self.node_distances(&seed(p));
        let mut best: Option<Q> = None;
        let mut consider = |d: Option<Q>| {
            if let Some(d) = d {
                if best.map_or(true, |b| d < b) {
                    best = Some(d);
                }
            }
        };
        match *q {
            Pt::Node(n) => consider(dist[n]),
            Pt::In(s, t) => {
                let seg = &self.segs[s];
                consider(dist[seg.a].map(|d| d + t));
                consider(dist[seg.b].map(|d| d + (seg.len - t)));
                if let Pt::In(s2, t2) = *p {
                    if s2 == s {
                        consider(Some((t - t2).abs()));
                    }
                }
            }
        }
        best
    }
}

// ---------------------------------------------------------------------------
// subsets

/// A closed subset of a metric graph: nodes plus closed segment intervals.
/// Intervals touching a segment end always include the end node.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SubSet {
    pub nodes: BTreeSet<usize>,
    /// per segment: disjoint sorted closed intervals `[lo, hi]`, `lo <= hi`
    pub intervals: BTreeMap<usize, Vec<(Q, Q)>>,
}

impl SubSet {
    pub fn empty() -> Self {
        SubSet::default()
    }

    pub fn full(g: &MGraph) -> Self {
        let mut s = SubSet::empty();
        for n in 0..g.node_count {
            s.nodes.insert(n);
        }
        for (i, seg) in g.segs.iter().enumerate() {
            s.intervals.insert(i, vec![(Q::zero(), seg.len)]);
        }
        s
    }

    pub fn add_pt(&mut self, g: &MGraph, p: &Pt) {
        match *p {
            Pt::Node(n) => {
                self.nodes.insert(n);
            }
            Pt::In(s, t) => self.add_interval(g, s, t, t),
        }
    }

    pub fn add_interval(&mut self, g: &MGraph, seg: usize, lo: Q, hi: Q) {
        let (lo, hi) = (lo.min(hi), lo.max(hi));
        if lo == Q::zero() {
            self.nodes.insert(g.segs[seg].a);
        }
        if hi == g.segs[seg].len {
            self.nodes.insert(g.segs[seg].b);
        }
        let v = self.intervals.entry(seg).or_default();
        v.push((lo, hi));
        v.sort();
        // merge overlapping / touching
        let mut merged: Vec<(Q, Q)> = Vec::new();
        for &(a, b) in v.iter() {
            if let Some(last) = merged.last_mut() {
                if a <= last.1 {
                    last.1 = last.1.max(b);
                    continue;
                }
            }
            merged.push((a, b));
        }
        *v = merged;
    }

    pub fn union(&mut self, g: &MGraph, other: &SubSet) {
        for &n in &other.nodes {
            self.nodes.insert(n);
        }
        for (&s, ivs) in &other.intervals {
            for &(a, b) in ivs {
                self.add_interval(g, s, a, b);
            }
        }
    }

    pub fn contains_pt(&self, p: &Pt) -> bool {
        match *p {
            Pt::Node(n) => self.nodes.contains(&n),
            Pt::In(s, t) => self
                .intervals
                .get(&s)
                .is_some_and(|ivs| ivs.iter().any(|&(a, b)| a <= t && t <= b)),
        }
    }

    pub fn is_subset_of(&self, other: &SubSet) -> bool {
        if !self.nodes.is_subset(&other.nodes) {
            return false;
        }
        for (&s, ivs) in &self.intervals {
            for &(a, b) in ivs {
                let Some(os) = other.intervals.get(&s) else {
                    if a == b {
                        // degenerate interval may be covered by a node: it
                        // was registered in nodes only if at a segment end,
                        // which add_interval normalizes; interior degenerate
                        // intervals need an interval in `other`.
                        return false;
                    }
                    return false;
                };
                if !os.iter().any(|&(oa, ob)| oa <= a && b <= ob) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_disjoint_from(&self, other: &SubSet) -> bool {
        for (&s, ivs) in &self.intervals {
            if let Some(os) = other.intervals.get(&s) {
                for &(a, b) in ivs {
                    for &(oa, ob) in os {
                        if a <= ob && oa <= b {
                            return false;
                        }
                    }
                }
            }
        }
        // node overlap also counts as intersection
        self.nodes.is_disjoint(&other.nodes)
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.intervals.values().all(|v| v.is_empty())
    }

    /// Covered intervals on a segment (possibly empty).
    pub fn on_seg(&self, seg: usize) -> &[(Q, Q)] {
        self.intervals.get(&seg).map_or(&[], |v| v.as_slice())
    }

    /// True iff the subset covers the whole graph.
    pub fn covers(&self, g: &MGraph) -> bool {
        for n in 0..g.node_count {
            if !self.nodes.contains(&n) {
                return false;
            }
        }
        for (i, seg) in g.segs.iter().enumerate() {
            let ivs = self.on_seg(i);
            if ivs.len() != 1 || ivs[0] != (Q::zero(), seg.len) {
                return false;
            }
        }
        true
    }

    /// Candidate points for exact diameter computation: nodes, interval
    /// endpoints and interval midpoints.
    fn candidates(&self, g: &MGraph) -> Vec<Pt> {
        let mut out: Vec<Pt> = self.nodes.iter().map(|&n| Pt::Node(n)).collect();
        let two = Q::new(2, 1);
        for (&s, ivs) in &self.intervals {
            for &(a, b) in ivs {
                for t in [a, b, (a + b) / two] {
                    let p = g.canon(s, t);
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    /// Ambient diameter: maximum distance in `g` between points of the
    /// subset, evaluated on the candidate set.
    pub fn diameter(&self, g: &MGraph) -> Q {
        let cands = self.candidates(g);
        let mut best = Q::zero();
        for i in 0..cands.len() {
            for j in (i + 1)..cands.len() {
                if let Some(d) = g.distance(&cands[i], &cands[j]) {
                    if d > best {
                        best = d;
                    }
                }
            }
        }
        best
    }

    /// Exact covering radius: `max_x d(x, S)` over the whole graph.
    pub fn covering_radius(&self, g: &MGraph) -> Option<Q> {
        if self.is_empty() {
            return None;
        }
        // refined graph: nodes plus interval endpoints
        let mut extra: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
        for (&s, ivs) in &self.intervals {
            let v = extra.entry(s).or_default();
            for &(a, b) in ivs {
                v.push(a);
                v.push(b);
            }
        }
        // build refined node list
        let mut rg_nodes = g.node_count;
        let mut pt_id: BTreeMap<(usize, Q), usize> = BTreeMap::new();
        for (&s, ts) in &extra {
            for &t in ts {
                if t > Q::zero() && t < g.segs[s].len && !pt_id.contains_key(&(s, t)) {
                    pt_id.insert((s, t), rg_nodes);
                    rg_nodes += 1;
                }
            }
        }
        let mut rsegs: Vec<(usize, usize, Q, usize, Q, Q)> = Vec::new(); // a,b,len, orig seg, lo, hi
        for (i, seg) in g.segs.iter().enumerate() {
            let mut cuts: Vec<Q> = extra
                .get(&i)
                .map(|v| {
                    v.iter()
                        .copied()
                        .filter(|&t| t > Q::zero() && t < seg.len)
                        .collect()
                })
                .unwrap_or_default();
            cuts.sort();
            cuts.dedup();
            let mut prev_t = Q::zero();
            let mut prev_n = seg.a;
            for &t in &cuts {
                let n = pt_id[&(i, t)];
                rsegs.push((prev_n, n, t - prev_t, i, prev_t, t));
                prev_t = t;
                prev_n = n;
            }
            rsegs.push((prev_n, seg.b, seg.len - prev_t, i, prev_t, seg.len));
        }
        let rg = MGraph {
            node_count: rg_nodes,
            segs: rsegs
                .iter()
                .map(|&(a, b, len, _, _, _)| Seg { a, b, len })
                .collect(),
        };
        // sources: refined nodes lying in S
        let mut sources: Vec<(usize, Q)> = Vec::new();
        for &n in &self.nodes {
            sources.push((n, Q::zero()));
        }
        for ((s, t), &n) in pt_id.iter().map(|(k, v)| (*k, v)) {
            if self.contains_pt(&Pt::In(s, t)) {
                sources.push((n, Q::zero()));
            }
        }
        let dist = rg.node_distances(&sources);
        let mut best = Q::zero();
        for n in 0..rg_nodes {
            match dist[n] {
                Some(d) => {
                    if d > best {
                        best = d;
                    }
                }
                None => return None, // unreachable part: radius unbounded
            }
        }
        // peaks on refined sub-segments not covered by S
        let two = Q::new(2, 1);
        for (k, &(a, b, len, orig, lo, hi)) in rsegs.iter().enumerate() {
            let _ = k;
            // does S cover this stretch entirely?
            let covered = self.on_seg(orig).iter().any(|&(ia, ib)| ia <= lo && hi <= ib);
            if covered {
                continue;
            }
            let (da, db) = match (dist[a], dist[b]) {
                (Some(x), Some(y)) => (x, y),
                _ => return None,
            };
            let peak = (len + da + db) / two;
            if peak > best {
                best = peak;
            }
        }
        Some(best)
    }
}

// ---------------------------------------------------------------------------
// piecewise maps

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Img {
    Point(Pt),
    /// Affine onto a target segment: `lo -> from`, `hi -> to`; `from != to`;
    /// `from > to` means orientation-reversing.
    Affine { seg: usize, from: Q, to: Q },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub lo: Q,
    pub hi: Q,
    pub img: Img,
}

impl Piece {
    fn value_at(&self, g_tgt: &MGraph, t: Q) -> Pt {
        match &self.img {
            Img::Point(p) => p.clone(),
            Img::Affine { seg, from, to } => {
                let u = *from + (t - self.lo) * (*to - *from) / (self.hi - self.lo);
                g_tgt.canon(*seg, u)
            }
        }
    }
}

/// A total piecewise-affine map between metric graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PwMap {
    pub node_img: Vec<Pt>,
    /// per source segment: contiguous pieces from 0 to len
    pub seg_img: Vec<Vec<Piece>>,
}

impl PwMap {
    pub fn identity(g: &MGraph) -> PwMap {
        PwMap {
            node_img: (0..g.node_count).map(Pt::Node).collect(),
            seg_img: g
                .segs
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    vec![Piece {
                        lo: Q::zero(),
                        hi: s.len,
                        img: Img::Affine {
                            seg: i,
                            from: Q::zero(),
                            to: s.len,
                        },
                    }]
                })
                .collect(),
        }
    }

    /// Check structural totality: pieces tile each source segment.
    pub fn validate(&self, g_src: &MGraph, g_tgt: &MGraph) -> bool {
        if self.node_img.len() != g_src.node_count || self.seg_img.len() != g_src.segs.len() {
            return false;
        }
        for (i, pieces) in self.seg_img.iter().enumerate() {
            let len = g_src.segs[i].len;
            if pieces.is_empty() || pieces[0].lo != Q::zero() || pieces.last().unwrap().hi != len {
                return false;
            }
            for w in pieces.windows(2) {
                if w[0].hi != w[1].lo {
                    return false;
                }
            }
            for p in pieces {
                if p.lo >= p.hi {
                    return false;
                }
                if let Img::Affine { seg, from, to } = &p.img {
                    if *seg >= g_tgt.segs.len()
                        || from == to
                        || *from < Q::zero()
                        || *to < Q::zero()
                        || *from > g_tgt.segs[*seg].len
                        || *to > g_tgt.segs[*seg].len
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn eval(&self, g_tgt: &MGraph, p: &Pt) -> Pt {
        match *p {
            Pt::Node(n) => self.node_img[n].clone(),
            Pt::In(s, t) => {
                let pieces = &self.seg_img[s];
                let piece = pieces
                    .iter()
                    .find(|pc| pc.lo <= t && t <= pc.hi)
                    .expect("point within segment");
                piece.value_at(g_tgt, t)
            }
        }
    }

    /// Composition `self` after `first`; that is, the returned map sends
    /// `x` to `self(first(x))`.
    pub fn after(&self, first: &PwMap, g_mid: &MGraph, g_tgt: &MGraph) -> PwMap {
        let node_img = first
            .node_img
            .iter()
            .map(|p| self.eval(g_tgt, p))
            .collect();
        let mut seg_img = Vec::with_capacity(first.seg_img.len());
        for pieces in &first.seg_img {
            let mut out: Vec<Piece> = Vec::new();
            for pc in pieces {
                match &pc.img {
                    Img::Point(p) => out.push(Piece {
                        lo: pc.lo,
                        hi: pc.hi,
                        img: Img::Point(self.eval(g_tgt, p)),
                    }),
                    Img::Affine { seg, from, to } => {
                        // subdivide at the preimages of self's breakpoints
                        let mut cuts: Vec<Q> = vec![pc.lo, pc.hi];
                        let (ulo, uhi) = (*from.min(to), *from.max(to));
                        for bp in &self.seg_img[*seg] {
                            for u in [bp.lo, bp.hi] {
                                if u > ulo && u < uhi {
                                    // t with image u
                                    let t =
                                        pc.lo + (u - *from) * (pc.hi - pc.lo) / (*to - *from);
                                    cuts.push(t);
                                }
                            }
                        }
                        cuts.sort();
                        cuts.dedup();
                        for w in cuts.windows(2) {
                            let (ta, tb) = (w[0], w[1]);
                            let ua = *from + (ta - pc.lo) * (*to - *from) / (pc.hi - pc.lo);
                            let ub = *from + (tb - pc.lo) * (*to - *from) / (pc.hi - pc.lo);
                            let umid = (ua + ub) / Q::new(2, 1);
                            let inner = self.seg_img[*seg]
                                .iter()
                                .find(|ip| ip.lo <= umid && umid <= ip.hi)
                                .expect("interior point covered");
                            match &inner.img {
                                Img::Point(p) => out.push(Piece {
                                    lo: ta,
                                    hi: tb,
                                    img: Img::Point(p.clone()),
                                }),
                                Img::Affine {
                                    seg: s2,
                                    from: f2,
                                    to: t2,
                                } => {
                                    let va =
                                        *f2 + (ua - inner.lo) * (*t2 - *f2) / (inner.hi - inner.lo);
                                    let vb =
                                        *f2 + (ub - inner.lo) * (*t2 - *f2) / (inner.hi - inner.lo);
                                    debug_assert!(va != vb);
                                    out.push(Piece {
                                        lo: ta,
                                        hi: tb,
                                        img: Img::Affine {
                                            seg: *s2,
                                            from: va,
                                            to: vb,
                                        },
                                    });
                                }
                            }
                        }
                    }
                }
            }
            seg_img.push(merge_pieces(out));
        }
        let _ = g_mid;
        PwMap { node_img, seg_img }
    }

    /// Pointwise equality of two maps with the same source and target.
    pub fn same_map(&self, other: &PwMap, g_src: &MGraph, g_tgt: &MGraph) -> bool {
        if self.node_img != other.node_img {
            return false;
        }
        let three = Q::new(3, 1);
        for s in 0..g_src.segs.len() {
            let mut cuts: Vec<Q> = Vec::new();
            for m in [self, other] {
                for pc in &m.seg_img[s] {
                    cuts.push(pc.lo);
                    cuts.push(pc.hi);
                }
            }
            cuts.sort();
            cuts.dedup();
            for w in cuts.windows(2) {
                let (a, b) = (w[0], w[1]);
                for t in [a + (b - a) / three, a + (b - a) * Q::new(2, 1) / three] {
                    if self.eval(g_tgt, &Pt::In(s, t)) != other.eval(g_tgt, &Pt::In(s, t)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Image of a subset of the source.
    pub fn image_of(&self, g_tgt: &MGraph, sub: &SubSet) -> SubSet {
        let mut out = SubSet::empty();
        for &n in &sub.nodes {
            out.add_pt(g_tgt, &self.node_img[n]);
        }
        for (&s, ivs) in &sub.intervals {
            for &(a, b) in ivs {
                for pc in &self.seg_img[s] {
                    let lo = a.max(pc.lo);
                    let hi = b.min(pc.hi);
                    if lo > hi {
                        continue;
                    }
                    match &pc.img {
                        Img::Point(p) => out.add_pt(g_tgt, p),
                        Img::Affine { seg, from, to } => {
                            let ua = *from + (lo - pc.lo) * (*to - *from) / (pc.hi - pc.lo);
                            let ub = *from + (hi - pc.lo) * (*to - *from) / (pc.hi - pc.lo);
                            out.add_interval(g_tgt, *seg, ua, ub);
                        }
                    }
                }
            }
        }
        out
    }

    /// Full preimage of a closed subset of the target.
    pub fn preimage_of(&self, g_src: &MGraph, g_tgt: &MGraph, sub: &SubSet) -> SubSet {
        let mut out = SubSet::empty();
        for (n, img) in self.node_img.iter().enumerate() {
            if sub.contains_pt(img) {
                out.add_pt(g_src, &Pt::Node(n));
            }
        }
        for (s, pieces) in self.seg_img.iter().enumerate() {
            for pc in pieces {
                match &pc.img {
                    Img::Point(p) => {
                        if sub.contains_pt(p) {
                            out.add_interval(g_src, s, pc.lo, pc.hi);
                        }
                    }
                    Img::Affine { seg, from, to } => {
                        // intersect the target intervals with the image span
                        let (ulo, uhi) = (*from.min(to), *from.max(to));
                        let pull = |u: Q| -> Q {
                            pc.lo + (u - *from) * (pc.hi - pc.lo) / (*to - *from)
                        };
                        for &(ia, ib) in sub.on_seg(*seg) {
                            let lo = ia.max(ulo);
                            let hi = ib.min(uhi);
                            if lo > hi {
                                continue;
                            }
                            let (ta, tb) = (pull(lo), pull(hi));
                            out.add_interval(g_src, s, ta.min(tb), ta.max(tb));
                        }
                        // nodes of the target at the span ends correspond to
                        // source points already covered by intervals
                        for &n in &sub.nodes {
                            let seg_t = &g_tgt.segs[*seg];
                            if seg_t.a == n && ulo == Q::zero() {
                                let t = pull(Q::zero());
                                out.add_interval(g_src, s, t, t);
                            }
                            if seg_t.b == n && uhi == seg_t.len {
                                let t = pull(seg_t.len);
                                out.add_interval(g_src, s, t, t);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Total image of the map.
    pub fn total_image(&self, g_src: &MGraph, g_tgt: &MGraph) -> SubSet {
        self.image_of(g_tgt, &SubSet::full(g_src))
    }

    pub fn is_surjective(&self, g_src: &MGraph, g_tgt: &MGraph) -> bool {
        self.total_image(g_src, g_tgt).covers(g_tgt)
    }

    /// Is this map an isomorphism of metric graphs up to reparameterization
    /// (a homeomorphism sending nodes to nodes)?
    pub fn is_homeomorphism(&self, g_src: &MGraph, g_tgt: &MGraph) -> bool {
        // node bijection
        let mut seen = BTreeSet::new();
        for p in &self.node_img {
            match p {
                Pt::Node(n) => {
                    if !seen.insert(*n) {
                        return false;
                    }
                }
                Pt::In(..) => return false,
            }
        }
        if seen.len() != g_tgt.node_count {
            return false;
        }
        // every piece affine, and target segments exactly tiled
        let mut cover: BTreeMap<usize, Vec<(Q, Q)>> = BTreeMap::new();
        for pieces in &self.seg_img {
            for pc in pieces {
                match &pc.img {
                    Img::Point(_) => return false,
                    Img::Affine { seg, from, to } => {
                        cover
                            .entry(*seg)
                            .or_default()
                            .push((*from.min(to), *from.max(to)));
                    }
                }
            }
        }
        for (i, seg) in g_tgt.segs.iter().enumerate() {
            let Some(ivs) = cover.get_mut(&i) else {
                return false;
            };
            ivs.sort();
            let mut t = Q::zero();
            for &(a, b) in ivs.iter() {
                if a != t {
                    return false;
                }
                t = b;
            }
            if t != seg.len {
                return false;
            }
        }
        self.is_surjective(g_src, g_tgt)
    }
}

fn merge_pieces(pieces: Vec<Piece>) -> Vec<Piece> {
    let mut out: Vec<Piece> = Vec::new();
    for pc in pieces {
        if let Some(last) = out.last_mut() {
            if last.hi == pc.lo {
                let merged = match (&last.img, &pc.img) {
                    (Img::Point(p), Img::Point(q)) if p == q => true,
                    (
                        Img::Affine { seg: s1, from: f1, to: t1 },
                        Img::Affine { seg: s2, from: f2, to: t2 },
                    ) if s1 == s2 && t1 == f2 => {
                        let slope1 = (*t1 - *f1) / (last.hi - last.lo);
                        let slope2 = (*t2 - *f2) / (pc.hi - pc.lo);
                        slope1 == slope2
                    }
                    _ => false,
                };
                if merged {
                    last.hi = pc.hi;
                    if let (Img::Affine { to, .. }, Img::Affine { to: t2, .. }) =
                        (&mut last.img, &pc.img)
                    {
                        *to = *t2;
                    }
                    continue;
                }
            }
        }
        out.push(pc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::q;

    fn qz() -> Q {
        Q::zero()
    }

    /// Triangle graph with unit sides.
    fn triangle() -> MGraph {
        MGraph {
            node_count: 3,
            segs: vec![
                Seg { a: 0, b: 1, len: q(1, 1) },
                Seg { a: 1, b: 2, len: q(1, 1) },
                Seg { a: 2, b: 0, len: q(1, 1) },
            ],
        }
    }

    #[test]
    fn distances() {
        let g = triangle();
        assert_eq!(g.distance(&Pt::Node(0), &Pt::Node(2)), Some(q(1, 1)));
        assert_eq!(
            g.distance(&Pt::In(0, q(1, 2)), &Pt::Node(2)),
            Some(q(3, 2))
        );
        assert_eq!(
            g.distance(&Pt::In(0, q(1, 4)), &Pt::In(0, q(3, 4))),
            Some(q(1, 2))
        );
    }

    #[test]
    fn identity_and_compose() {
        let g = triangle();
        let id = PwMap::identity(&g);
        assert!(id.validate(&g, &g));
        let comp = id.after(&id, &g, &g);
        assert!(comp.same_map(&id, &g, &g));
        assert!(id.is_homeomorphism(&g, &g));
    }

    #[test]
    fn collapse_map_image() {
        let g = triangle();
        // collapse segment 1 to node 1, stretch segment 2 over segs 2 then 1 reversed
        let mut m = PwMap::identity(&g);
        m.node_img[2] = Pt::Node(1);
        m.seg_img[1] = vec![Piece {
            lo: qz(),
            hi: q(1, 1),
            img: Img::Point(Pt::Node(1)),
        }];
        m.seg_img[2] = vec![
            Piece {
                lo: qz(),
                hi: q(1, 2),
                img: Img::Affine { seg: 1, from: q(1, 1), to: qz() },
            },
            Piece {
                lo: q(1, 2),
                hi: q(1, 1),
                img: Img::Affine { seg: 2, from: qz(), to: q(1, 1) },
            },
        ];
        assert!(m.validate(&g, &g));
        assert!(m.is_surjective(&g, &g));
        assert!(!m.is_homeomorphism(&g, &g));
        // image of segment 1 is the single node 1
        let mut sub = SubSet::empty();
        sub.add_interval(&g, 1, q(1, 4), q(3, 4));
        let img = m.image_of(&g, &sub);
        assert!(img.contains_pt(&Pt::Node(1)));
        assert!(img.intervals.values().all(|v| v.is_empty()));
        // preimage of node 1 contains all of segment 1
        let mut tgt = SubSet::empty();
        tgt.add_pt(&g, &Pt::Node(1));
        let pre = m.preimage_of(&g, &g, &tgt);
        assert!(pre.contains_pt(&Pt::In(1, q(1, 2))));
    }

    #[test]
    fn subset_diameter_and_covering() {
        let g = triangle();
        let full = SubSet::full(&g);
        // diameter of the full triangle is 3/2 (antipodal midpoints)
        assert_eq!(full.diameter(&g), q(3, 2));
        assert_eq!(full.covering_radius(&g), Some(qz()));
        let mut s = SubSet::empty();
        s.add_pt(&g, &Pt::Node(0));
        // farthest point from node 0 is the midpoint of segment 1
        assert_eq!(s.covering_radius(&g), Some(q(3, 2)));
    }

    #[test]
    fn composition_through_breakpoints() {
        let g = triangle();
        let mut m = PwMap::identity(&g);
        // seg 0 traverses seg 0 then seg 1 (passing node 1 mid-piece)
        m.seg_img[0] = vec![
            Piece {
                lo: qz(),
                hi: q(1, 2),
                img: Img::Affine { seg: 0, from: qz(), to: q(1, 1) },
            },
            Piece {
                lo: q(1, 2),
                hi: q(1, 1),
                img: Img::Affine { seg: 1, from: qz(), to: q(1, 1) },
            },
        ];
        m.node_img[1] = Pt::Node(2);
        // compose with a map collapsing seg 1 to node 1
        let mut c = PwMap::identity(&g);
        c.seg_img[1] = vec![Piece {
            lo: qz(),
            hi: q(1, 1),
            img: Img::Point(Pt::Node(1)),
        }];
        c.node_img[2] = Pt::Node(1);
        let comp = c.after(&m, &g, &g);
        assert!(comp.validate(&g, &g));
        assert_eq!(comp.eval(&g, &Pt::In(0, q(1, 4))), Pt::In(0, q(1, 2)));
        assert_eq!(comp.eval(&g, &Pt::In(0, q(3, 4))), Pt::Node(1));
    }
}
