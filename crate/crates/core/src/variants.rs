//! Edge abstraction variants 0 to 6.
//!
//! * 0: every edge of the decomposition graph.
//! * 1: same edges, with a bend forced on every jumping cross edge.
//! * 2: per source and target path, only the edge to the earliest target.
//! * 3: per target and source path, only the edge from the latest source.
//! * 4: edges kept by both the rule of 2 and the rule of 3.
//! * 5: variant 0 without path edges.
//! * 6: variant 4 without path edges.
//!
//! Path edges are the only edges from a vertex into its own path and the only
//! edges into a vertex from its own path, so the rules of 2 and 3 never drop
//! them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::{DecompGraph, Edge, EdgeClass};
use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VariantError {
    #[error("unknown variant {0}, expected 0..=6")]
    Unknown(u8),
    #[error("path edges can only be stripped from variant 0 or 4, not {0}")]
    CannotStrip(Variant),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Variant {
    Baseline,
    JumpingBends,
    EarliestTarget,
    LatestSource,
    Combined,
    BaselineCrossOnly,
    CombinedCrossOnly,
}

impl Variant {
    pub const ALL: [Variant; 7] = [
        Variant::Baseline,
        Variant::JumpingBends,
        Variant::EarliestTarget,
        Variant::LatestSource,
        Variant::Combined,
        Variant::BaselineCrossOnly,
        Variant::CombinedCrossOnly,
    ];

    pub fn id(self) -> u8 {
        self as u8
    }
}

impl TryFrom<u8> for Variant {
    type Error = VariantError;

    fn try_from(id: u8) -> Result<Self, Self::Error> {
        Variant::ALL
            .get(id as usize)
            .copied()
            .ok_or(VariantError::Unknown(id))
    }
}

impl From<Variant> for u8 {
    fn from(v: Variant) -> u8 {
        v.id()
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

/// Why an edge of the decomposition graph is not drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RemovalReason {
    /// The source has an edge to an earlier vertex of the same target path.
    LaterTarget,
    /// The target has an edge from a later vertex of the same source path.
    EarlierSource,
    /// Both of the above.
    LaterTargetAndEarlierSource,
    /// Path edge, implied by the shared column.
    ImpliedPathEdge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantDrawing {
    variant: Variant,
    drawn: Vec<Edge>,
    forced_bends: BTreeSet<(VertexId, VertexId)>,
    removed: Vec<(Edge, RemovalReason)>,
}

impl VariantDrawing {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Drawn edges, sorted by `(source, target)`.
    pub fn drawn(&self) -> &[Edge] {
        &self.drawn
    }

    pub fn forced_bends(&self) -> &BTreeSet<(VertexId, VertexId)> {
        &self.forced_bends
    }

    pub fn removed(&self) -> &[(Edge, RemovalReason)] {
        &self.removed
    }

    pub fn drawn_pairs(&self) -> BTreeSet<(VertexId, VertexId)> {
        self.drawn.iter().map(Edge::pair).collect()
    }

    pub fn cross_pairs(&self) -> BTreeSet<(VertexId, VertexId)> {
        self.drawn
            .iter()
            .filter(|e| e.is_cross())
            .map(Edge::pair)
            .collect()
    }

    /// Drawn edges plus the path edges a reader infers from shared columns.
    pub fn reachability_edges<'a>(
        &'a self,
        h: &'a DecompGraph,
    ) -> impl Iterator<Item = (VertexId, VertexId)> + 'a {
        self.drawn
            .iter()
            .map(Edge::pair)
            .chain(h.decomposition().path_edges())
    }
}

/// Cross edges whose endpoint paths are not adjacent columns.
pub fn jumping_cross_edges(h: &DecompGraph) -> BTreeSet<(VertexId, VertexId)> {
    let sp = h.decomposition();
    h.cross_edges()
        .filter(|e| sp.path_of(e.source).abs_diff(sp.path_of(e.target)) > 1)
        .map(Edge::pair)
        .collect()
}

const VOID: usize = usize::MAX;

/// Per edge: is it the earliest-target edge of its source into that path?
///
/// One pass over the edges grouped by source with a k-slot scratch array
/// holding the smallest target position seen per path.
fn earliest_target_keep(h: &DecompGraph) -> Vec<bool> {
    let sp = h.decomposition();
    let edges = h.edges();
    let mut best = vec![VOID; sp.k()];
    let mut keep = vec![false; edges.len()];
    let mut start = 0;
    while start < edges.len() {
        let source = edges[start].source;
        let end = start
            + edges[start..]
                .iter()
                .take_while(|e| e.source == source)
                .count();
        let group = &edges[start..end];
        for e in group {
            let slot = &mut best[sp.path_of(e.target)];
            *slot = (*slot).min(sp.position(e.target));
        }
        for (i, e) in group.iter().enumerate() {
            keep[start + i] = best[sp.path_of(e.target)] == sp.position(e.target);
        }
        for e in group {
            best[sp.path_of(e.target)] = VOID;
        }
        start = end;
    }
    keep
}

/// Mirror of `earliest_target_keep`: groups by target and keeps the edge from
/// the latest source of each source path.
fn latest_source_keep(h: &DecompGraph) -> Vec<bool> {
    let sp = h.decomposition();
    let edges = h.edges();
    let n = h.vertex_count();

    // bucket edge indices by target
    let mut offsets = vec![0usize; n + 1];
    for e in edges {
        offsets[e.target + 1] += 1;
    }
    for v in 0..n {
        offsets[v + 1] += offsets[v];
    }
    let mut fill = offsets.clone();
    let mut by_target = vec![0usize; edges.len()];
    for (i, e) in edges.iter().enumerate() {
        by_target[fill[e.target]] = i;
        fill[e.target] += 1;
    }

    let mut best = vec![0usize; sp.k()];
    let mut keep = vec![false; edges.len()];
    for v in 0..n {
        let group = &by_target[offsets[v]..offsets[v + 1]];
        for &i in group {
            let s = edges[i].source;
            let slot = &mut best[sp.path_of(s)];
            *slot = (*slot).max(sp.position(s));
        }
        for &i in group {
            let s = edges[i].source;
            keep[i] = best[sp.path_of(s)] == sp.position(s);
        }
        for &i in group {
            best[sp.path_of(edges[i].source)] = 0;
        }
    }
    keep
}

fn baseline(h: &DecompGraph, variant: Variant) -> VariantDrawing {
    VariantDrawing {
        variant,
        drawn: h.edges().to_vec(),
        forced_bends: BTreeSet::new(),
        removed: Vec::new(),
    }
}

fn filtered(
    h: &DecompGraph,
    variant: Variant,
    reason: impl Fn(usize) -> Option<RemovalReason>,
) -> VariantDrawing {
    let mut drawn = Vec::new();
    let mut removed = Vec::new();
    for (i, e) in h.edges().iter().enumerate() {
        match reason(i) {
            Some(r) => removed.push((*e, r)),
            None => drawn.push(*e),
        }
    }
    VariantDrawing {
        variant,
        drawn,
        forced_bends: BTreeSet::new(),
        removed,
    }
}

pub fn compute_v2(h: &DecompGraph) -> VariantDrawing {
    let keep = earliest_target_keep(h);
    filtered(h, Variant::EarliestTarget, |i| {
        (!keep[i]).then_some(RemovalReason::LaterTarget)
    })
}

pub fn compute_v3(h: &DecompGraph) -> VariantDrawing {
    let keep = latest_source_keep(h);
    filtered(h, Variant::LatestSource, |i| {
        (!keep[i]).then_some(RemovalReason::EarlierSource)
    })
}

/// Both keep rules are evaluated against the full edge set of `h`; an edge is
/// drawn only if neither rule removes it.
pub fn compute_v4(h: &DecompGraph) -> VariantDrawing {
    let by_target = earliest_target_keep(h);
    let by_source = latest_source_keep(h);
    filtered(h, Variant::Combined, |i| {
        match (by_target[i], by_source[i]) {
            (true, true) => None,
            (false, true) => Some(RemovalReason::LaterTarget),
            (true, false) => Some(RemovalReason::EarlierSource),
            (false, false) => Some(RemovalReason::LaterTargetAndEarlierSource),
        }
    })
}

/// Variant 0 -> 5 and variant 4 -> 6.
pub fn strip_path_edges(vd: &VariantDrawing) -> Result<VariantDrawing, VariantError> {
    let variant = match vd.variant {
        Variant::Baseline => Variant::BaselineCrossOnly,
        Variant::Combined => Variant::CombinedCrossOnly,
        other => return Err(VariantError::CannotStrip(other)),
    };
    let mut removed = vd.removed.clone();
    let mut drawn = Vec::with_capacity(vd.drawn.len());
    for e in &vd.drawn {
        match e.class {
            EdgeClass::Cross => drawn.push(*e),
            EdgeClass::Path => removed.push((*e, RemovalReason::ImpliedPathEdge)),
        }
    }
    removed.sort();
    Ok(VariantDrawing {
        variant,
        drawn,
        forced_bends: BTreeSet::new(),
        removed,
    })
}

pub fn apply(h: &DecompGraph, variant: Variant) -> VariantDrawing {
    match variant {
        Variant::Baseline => baseline(h, variant),
        Variant::JumpingBends => {
            let mut vd = baseline(h, variant);
            vd.forced_bends = jumping_cross_edges(h);
            vd
        }
        Variant::EarliestTarget => compute_v2(h),
        Variant::LatestSource => compute_v3(h),
        Variant::Combined => compute_v4(h),
        Variant::BaselineCrossOnly => {
            strip_path_edges(&baseline(h, Variant::Baseline)).expect("variant 0 strips")
        }
        Variant::CombinedCrossOnly => strip_path_edges(&compute_v4(h)).expect("variant 4 strips"),
    }
}

pub fn apply_variant(h: &DecompGraph, id: u8) -> Result<VariantDrawing, VariantError> {
    Ok(apply(h, Variant::try_from(id)?))
}
