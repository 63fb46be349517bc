//! Inverse sequences of X-graphs and X-blow-ups: direct-locus bookkeeping
//! and the finite-horizon null/dense validators.

use super::{BlowUpKind, Template, XBlowUp, XGraph};
use crate::error::{Error, Result};
use crate::num::Q;
use crate::pw::{MGraph, Pt, PwMap, SubSet};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Locus {
    Vertex(usize),
    Segment { edge: usize, lo: Q, hi: Q },
}

impl Locus {
    pub fn subset(&self, mg: &MGraph) -> SubSet {
        let mut s = SubSet::empty();
        match self {
            Locus::Vertex(v) => s.add_pt(mg, &Pt::Node(*v)),
            Locus::Segment { edge, lo, hi } => s.add_interval(mg, *edge, *lo, *hi),
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct DirectLocus {
    /// Index of the step whose blow-up locus this is.
    pub origin: usize,
    pub locus: Locus,
    /// Inherited from the previous stage (all stage-0 loci count as
    /// inherited).
    pub inherited: bool,
}

#[derive(Debug, Clone)]
pub struct BlowUpSequence {
    pub tpl: Template,
    /// `stages[0]` is the template's tautological X-graph.
    pub stages: Vec<XGraph>,
    /// `steps[i].map : stages[i+1] -> stages[i]`.
    pub steps: Vec<XBlowUp>,
}

impl BlowUpSequence {
    pub fn new(tpl: Template) -> Self {
        let first = XGraph::tautological(&tpl);
        BlowUpSequence {
            tpl,
            stages: vec![first],
            steps: Vec::new(),
        }
    }

    pub fn push(&mut self, bu: XBlowUp) {
        self.stages.push(bu.source.clone());
        self.steps.push(bu);
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn locus_of_step(&self, m: usize) -> Locus {
        match &self.steps[m].kind {
            BlowUpKind::Vertex { at } => Locus::Vertex(*at),
            BlowUpKind::Segment { edge, lo, hi, .. } => Locus::Segment {
                edge: *edge,
                lo: *lo,
                hi: *hi,
            },
        }
    }

    /// Composed map `stages[from] -> stages[to]`, `to <= from`.
    pub fn composed(&self, from: usize, to: usize) -> PwMap {
        assert!(to <= from);
        let mut map = PwMap::identity(&self.stages[from].mg());
        for m in (to..from).rev() {
            // current map: stages[from] -> stages[m+1]; precompose target
            map = self.steps[m]
                .map
                .after(&map, &self.stages[m + 1].mg(), &self.stages[m].mg());
        }
        map
    }

    /// Descend the locus of step `m` to earlier stages while it is
    /// unaffected; `desc[i]` is its incarnation in `stages[i]` for
    /// `first..=m`.
    fn descend_locus(&self, m: usize) -> (usize, Vec<Locus>) {
        let mut chain = vec![self.locus_of_step(m)];
        let mut stage = m;
        while stage > 0 {
            let step = &self.steps[stage - 1];
            let prev_locus = self.locus_of_step(stage - 1);
            let prev_mg = self.stages[stage - 1].mg();
            let prev_sub = prev_locus.subset(&prev_mg);
            let cur = chain.last().unwrap();
            let down = match cur {
                Locus::Vertex(v) => match &step.map.node_img[*v] {
                    Pt::Node(w) if !prev_sub.contains_pt(&Pt::Node(*w)) => {
                        Some(Locus::Vertex(*w))
                    }
                    _ => None,
                },
                Locus::Segment { edge, lo, hi } => {
                    // the restriction must be one affine piece with image
                    // disjoint from the previous locus
                    let pieces = &step.map.seg_img[*edge];
                    let covering: Vec<_> = pieces
                        .iter()
                        .filter(|pc| pc.lo < *hi && *lo < pc.hi)
                        .collect();
                    if covering.len() != 1 {
                        None
                    } else {
                        match &covering[0].img {
                            crate::pw::Img::Affine { seg, from, to } => {
                                let pc = covering[0];
                                let at = |t: Q| {
                                    *from + (t - pc.lo) * (*to - *from) / (pc.hi - pc.lo)
                                };
                                let (a, b) = (at(*lo), at(*hi));
                                let (a, b) = (a.min(b), a.max(b));
                                let mut img = SubSet::empty();
                                img.add_interval(&prev_mg, *seg, a, b);
                                if img.is_disjoint_from(&prev_sub) {
                                    Some(Locus::Segment {
                                        edge: *seg,
                                        lo: a,
                                        hi: b,
                                    })
                                } else {
                                    None
                                }
                            }
                            _ => None,
                        }
                    }
                }
            };
            match down {
                Some(l) => {
                    chain.push(l);
                    stage -= 1;
                }
                None => break,
            }
        }
        chain.reverse();
        (stage, chain)
    }

    /// Direct blow-up loci per stage, with origin steps and inherited
    /// tags, up to the horizon (number of steps considered).
    pub fn registry(&self, horizon: usize) -> Vec<Vec<DirectLocus>> {
        let n = horizon.min(self.steps.len());
        let mut out: Vec<Vec<DirectLocus>> = vec![Vec::new(); self.stages.len()];
        for m in 0..n {
            let (first, chain) = self.descend_locus(m);
            for (k, locus) in chain.iter().enumerate() {
                let stage = first + k;
                let inherited = stage > first || first == 0;
                out[stage].push(DirectLocus {
                    origin: m,
                    locus: locus.clone(),
                    inherited,
                });
            }
        }
        for v in &mut out {
            v.sort_by_key(|d| d.origin);
        }
        out
    }
}

#[derive(Debug, Clone, Default)]
pub struct StructureReport {
    /// Stages failing the X-graph link condition.
    pub invalid_stages: Vec<usize>,
    /// Steps whose map fails surjectivity or totality.
    pub invalid_maps: Vec<usize>,
    /// (d1) failures: step whose locus preimage is not a subgraph.
    pub d1_failures: Vec<usize>,
    /// (d2) failures: (i, j) with the image of locus j neither inside nor
    /// disjoint from locus i.
    pub d2_failures: Vec<(usize, usize)>,
    /// (d3) failures: stages with overlapping direct loci.
    pub d3_failures: Vec<usize>,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.invalid_stages.is_empty()
            && self.invalid_maps.is_empty()
            && self.d1_failures.is_empty()
            && self.d2_failures.is_empty()
            && self.d3_failures.is_empty()
    }
}

impl BlowUpSequence {
    /// Exact structural checks: (i1) and the direct-locus bookkeeping
    /// (d1)-(d3).
    pub fn validate_structure(&self) -> StructureReport {
        let mut rep = StructureReport::default();
        for (i, st) in self.stages.iter().enumerate() {
            if st.validate(&self.tpl).is_err() {
                rep.invalid_stages.push(i);
            }
        }
        for (m, step) in self.steps.iter().enumerate() {
            let src = self.stages[m + 1].mg();
            let dst = self.stages[m].mg();
            if !step.map.validate(&src, &dst) || !step.map.is_surjective(&src, &dst) {
                rep.invalid_maps.push(m);
            }
            // (d1): the locus preimage is a subgraph
            let locus_sub = self.locus_of_step(m).subset(&dst);
            let pre = step.map.preimage_of(&src, &dst, &locus_sub);
            let mut is_subgraph = true;
            for (&s, ivs) in &pre.intervals {
                for &(a, b) in ivs {
                    if a == b {
                        // isolated points are endpoints (nodes) only
                        if a != Q::zero() && a != src.segs[s].len {
                            is_subgraph = false;
                        }
                    } else if !(a == Q::zero() && b == src.segs[s].len) {
                        is_subgraph = false;
                    }
                }
            }
            if !is_subgraph {
                rep.d1_failures.push(m);
            }
        }
        // (d2): images of later loci vs earlier loci
        for i in 0..self.steps.len() {
            let mg_i = self.stages[i].mg();
            let li = self.locus_of_step(i).subset(&mg_i);
            for j in (i + 1)..self.steps.len() {
                let comp = self.composed(j, i);
                let lj = self.locus_of_step(j).subset(&self.stages[j].mg());
                let img = comp.image_of(&mg_i, &lj);
                if !img.is_subset_of(&li) && !img.is_disjoint_from(&li) {
                    rep.d2_failures.push((i, j));
                }
            }
        }
        // (d3): per-stage direct loci pairwise disjoint
        let reg = self.registry(self.steps.len());
        for (stage, loci) in reg.iter().enumerate() {
            let mg = self.stages[stage].mg();
            for a in 0..loci.len() {
                for b in (a + 1)..loci.len() {
                    let sa = loci[a].locus.subset(&mg);
                    let sb = loci[b].locus.subset(&mg);
                    if !sa.is_disjoint_from(&sb) {
                        rep.d3_failures.push(stage);
                    }
                }
            }
        }
        rep
    }
}

#[derive(Debug, Clone)]
pub struct SequenceReport {
    pub structure: StructureReport,
    /// (i2): per stage, vertices with no blow-up step within the horizon
    /// (pending, not failures).
    pub pending_vertices: Vec<(usize, Vec<usize>)>,
    /// (i3): per stage, number of later blow-up segment images with
    /// diameter above the threshold.
    pub big_image_counts: Vec<(usize, usize)>,
    /// (i3): per stage, the largest later-segment image diameter.
    pub max_image_diameter: Vec<(usize, Q)>,
    /// (i4): per stage, covering radius of the union of later locus
    /// images (None when there are none).
    pub covering_radius: Vec<(usize, Option<Q>)>,
}

/// Finite-horizon validation of Def 5.4. (i2) lists pending vertices;
/// (i3) and (i4) are asymptotic, so the report carries exact values and
/// trends rather than verdicts.
pub fn validate_sequence(seq: &BlowUpSequence, horizon: usize, epsilon: Q) -> Result<SequenceReport> {
    if epsilon <= Q::zero() {
        return Err(Error::Hypothesis("epsilon must be positive".into()));
    }
    let n = horizon.min(seq.steps.len());
    let structure = seq.validate_structure();
    let reg = seq.registry(n);

    let mut pending_vertices = Vec::new();
    for (stage, g) in seq.stages.iter().enumerate().take(n) {
        let blown: Vec<usize> = reg[stage]
            .iter()
            .filter_map(|d| match d.locus {
                Locus::Vertex(v) => Some(v),
                _ => None,
            })
            .collect();
        let pending: Vec<usize> = (0..g.vertices.len())
            .filter(|v| !blown.contains(v))
            .collect();
        if !pending.is_empty() {
            pending_vertices.push((stage, pending));
        }
    }

    let mut big_image_counts = Vec::new();
    let mut max_image_diameter = Vec::new();
    let mut covering_radius = Vec::new();
    for stage in 0..n {
        let mg = seq.stages[stage].mg();
        let mut count = 0usize;
        let mut maxd = Q::zero();
        let mut union = SubSet::empty();
        for m in stage..n {
            if !matches!(seq.steps[m].kind, BlowUpKind::Segment { .. }) {
                continue;
            }
            let comp = seq.composed(m, stage);
            let sub = seq.locus_of_step(m).subset(&seq.stages[m].mg());
            let img = comp.image_of(&mg, &sub);
            let d = img.diameter(&mg);
            if d > epsilon {
                count += 1;
            }
            if d > maxd {
                maxd = d;
            }
            union.union(&mg, &img);
        }
        big_image_counts.push((stage, count));
        max_image_diameter.push((stage, maxd));
        covering_radius.push((
            stage,
            if union.is_empty() {
                None
            } else {
                union.covering_radius(&mg)
            },
        ));
    }

    Ok(SequenceReport {
        structure,
        pending_vertices,
        big_image_counts,
        max_image_diameter,
        covering_radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::theta;
    use crate::num::q;
    use crate::xgraph::{xblowup_segment, xblowup_vertex, Gluing};

    fn theta_seq(steps: usize) -> BlowUpSequence {
        let tpl = Template::new(theta(3)).unwrap();
        let mut seq = BlowUpSequence::new(tpl);
        for i in 0..steps {
            let g = seq.stages.last().unwrap().clone();
            let bu = if i % 2 == 0 {
                xblowup_vertex(&seq.tpl, &g, i % g.vertices.len()).unwrap()
            } else {
                xblowup_segment(
                    &seq.tpl,
                    &g,
                    i % g.edges.len(),
                    q(1, 3),
                    q(2, 3),
                    Gluing::LowToLow,
                )
                .unwrap()
            };
            seq.push(bu);
        }
        seq
    }

    #[test]
    fn structure_checks_pass() {
        let seq = theta_seq(6);
        let rep = seq.validate_structure();
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn registry_disjoint_and_tagged() {
        let seq = theta_seq(6);
        let reg = seq.registry(6);
        // the first stage sees every locus that descends to it
        assert!(!reg[0].is_empty());
        for d in &reg[0] {
            assert!(d.inherited);
        }
    }

    #[test]
    fn vertex_only_sequences_have_positive_covering_radius() {
        // pure vertex blow-ups: no segment images, so density fails
        let tpl = Template::new(theta(3)).unwrap();
        let mut seq = BlowUpSequence::new(tpl);
        for i in 0..4 {
            let g = seq.stages.last().unwrap().clone();
            let bu = xblowup_vertex(&seq.tpl, &g, i % g.vertices.len()).unwrap();
            seq.push(bu);
        }
        let rep = validate_sequence(&seq, 4, q(1, 10)).unwrap();
        assert!(rep.structure.ok());
        for (_, r) in &rep.covering_radius {
            assert!(r.is_none(), "no segment images expected");
        }
    }

    #[test]
    fn single_stage_sequence_vacuous() {
        let tpl = Template::new(theta(3)).unwrap();
        let seq = BlowUpSequence::new(tpl);
        let rep = validate_sequence(&seq, 1, q(1, 4)).unwrap();
        assert!(rep.structure.ok());
        assert!(rep.big_image_counts.is_empty() || rep.big_image_counts.iter().all(|c| c.1 == 0));
    }

    #[test]
    fn mixed_sequence_reports_diameters() {
        let seq = theta_seq(8);
        let rep = validate_sequence(&seq, 8, q(1, 100)).unwrap();
        assert!(rep.structure.ok(), "{:?}", rep.structure);
        // stage 0 sees segment images; their diameters are recorded
        let (_, d0) = rep.max_image_diameter[0];
        assert!(d0 > Q::zero());
        assert!(rep.covering_radius[0].1.is_some());
    }
}
