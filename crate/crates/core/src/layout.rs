//! Grid placement and edge routing for path-based hierarchical drawings.
//!
//! Vertex `v` on path `i` (0-based) sits at column `2(i + 1)` and row
//! `T(v)`, its 1-based topological position. Every edge is drawn straight
//! unless the straight segment runs through another vertex or the edge is
//! forced to bend; a bend goes to row `Y(v) - 1`, one column beside the
//! source, towards the target. Since the bend is one column away from the
//! source and one row above the target, neither leg can contain a lattice
//! point in its interior, so routed edges never touch a foreign vertex.
//! `route_edges` re-checks that anyway.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::decomposition::{DecompGraph, Edge, EdgeClass};
use crate::geometry::{interior_lattice_points, strictly_inside, Point};
use crate::graph::{TopoOrder, VertexId};
use crate::variants::{Variant, VariantDrawing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("order does not match the decomposition graph: {0}")]
    NotTopological(String),
    #[error("edge ({0}, {1}) would bend inside its own column")]
    SameColumnBend(VertexId, VertexId),
    #[error("edge ({from}, {to}) passes through vertex {vertex}")]
    VertexHit {
        from: VertexId,
        to: VertexId,
        vertex: VertexId,
    },
    #[error("bend at ({}, {}) is shared by edges that do not form a bundle", .0.x, .0.y)]
    BundleMismatch(Point),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexPlacement {
    pub point: Point,
    /// 0-based path index.
    pub path: usize,
    /// 1-based position along the path.
    pub position: usize,
}

/// Vertex coordinates plus a row index for O(1) point lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coords {
    placements: Vec<VertexPlacement>,
    by_row: Vec<VertexId>,
    k: usize,
}

pub fn column_of_path(path: usize) -> i64 {
    2 * (path as i64 + 1)
}

/// Places every vertex: `X(v) = 2i` for the `i`-th path (1-based), `Y(v) = T(v)`.
pub fn assign_coordinates(h: &DecompGraph, t: &TopoOrder) -> Result<Coords, LayoutError> {
    let sp = h.decomposition();
    let n = h.vertex_count();
    if t.len() != n {
        return Err(LayoutError::NotTopological(format!(
            "order has {} vertices, graph has {n}",
            t.len()
        )));
    }
    if let Some(e) = h
        .edges()
        .iter()
        .find(|e| t.position(e.source) >= t.position(e.target))
    {
        return Err(LayoutError::NotTopological(format!(
            "edge ({}, {}) points backwards",
            e.source, e.target
        )));
    }
    let placements = (0..n)
        .map(|v| VertexPlacement {
            point: Point::new(column_of_path(sp.path_of(v)), t.position(v) as i64),
            path: sp.path_of(v),
            position: sp.position(v),
        })
        .collect();
    Ok(Coords {
        placements,
        by_row: t.order().to_vec(),
        k: sp.k(),
    })
}

impl Coords {
    pub fn vertex_count(&self) -> usize {
        self.placements.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn placement(&self, v: VertexId) -> &VertexPlacement {
        &self.placements[v]
    }

    pub fn placements(&self) -> &[VertexPlacement] {
        &self.placements
    }

    pub fn point(&self, v: VertexId) -> Point {
        self.placements[v].point
    }

    /// The vertex drawn at `p`, if any. Rows hold exactly one vertex each.
    pub fn vertex_at(&self, p: Point) -> Option<VertexId> {
        let row = usize::try_from(p.y).ok()?.checked_sub(1)?;
        let v = *self.by_row.get(row)?;
        (self.placements[v].point.x == p.x).then_some(v)
    }

    /// First vertex strictly inside segment `a`-`b`, found by walking the
    /// segment's interior lattice points. Costs O(gcd(|dx|, |dy|)).
    pub fn first_obstruction(&self, a: Point, b: Point) -> Option<VertexId> {
        interior_lattice_points(a, b).find_map(|p| self.vertex_at(p))
    }
}

/// Returns a vertex lying strictly inside segment `a`-`b` by testing every
/// vertex for collinearity and bounding-box containment. Linear in `n`; the
/// router uses `Coords::first_obstruction` instead.
pub fn segment_hits_vertex(a: Point, b: Point, coords: &Coords) -> Option<VertexId> {
    coords
        .placements
        .iter()
        .position(|pl| strictly_inside(a, b, pl.point))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoutedEdge {
    pub source: VertexId,
    pub target: VertexId,
    pub class: EdgeClass,
    pub bend: Option<Point>,
}

impl RoutedEdge {
    pub fn polyline(&self, coords: &Coords) -> Vec<Point> {
        let (a, b) = (coords.point(self.source), coords.point(self.target));
        match self.bend {
            Some(m) => vec![a, m, b],
            None => vec![a, b],
        }
    }

    pub fn segments(&self, coords: &Coords) -> Vec<(Point, Point)> {
        self.polyline(coords)
            .windows(2)
            .map(|w| (w[0], w[1]))
            .collect()
    }
}

/// Bent edges sharing one bend point: same source path, same target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle {
    pub bend: Point,
    pub source_path: usize,
    pub target: VertexId,
    /// Indices into `Layout::edges`.
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    variant: Option<Variant>,
    coords: Coords,
    edges: Vec<RoutedEdge>,
    bundles: Vec<Bundle>,
}

impl Layout {
    pub fn variant(&self) -> Option<Variant> {
        self.variant
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn edges(&self) -> &[RoutedEdge] {
        &self.edges
    }

    pub fn bundles(&self) -> &[Bundle] {
        &self.bundles
    }

    /// Bundle index per edge, for bent edges that share their bend.
    pub fn bundle_of_edge(&self) -> Vec<Option<usize>> {
        let mut of = vec![None; self.edges.len()];
        for (b, bundle) in self.bundles.iter().enumerate() {
            for &e in &bundle.edges {
                of[e] = Some(b);
            }
        }
        of
    }
}

fn bend_point(a: Point, b: Point) -> Option<Point> {
    let x = match a.x.cmp(&b.x) {
        std::cmp::Ordering::Less => a.x + 1,
        std::cmp::Ordering::Greater => a.x - 1,
        std::cmp::Ordering::Equal => return None,
    };
    Some(Point::new(x, b.y - 1))
}

/// Routes `edges` over fixed coordinates. An edge bends if its straight
/// drawing hits a vertex or if it is listed in `forced_bends`.
pub fn route_edges(
    coords: Coords,
    edges: &[Edge],
    forced_bends: &BTreeSet<(VertexId, VertexId)>,
) -> Result<Layout, LayoutError> {
    let mut routed = Vec::with_capacity(edges.len());
    for e in edges {
        let (a, b) = (coords.point(e.source), coords.point(e.target));
        let bend = if forced_bends.contains(&e.pair()) || coords.first_obstruction(a, b).is_some() {
            Some(bend_point(a, b).ok_or(LayoutError::SameColumnBend(e.source, e.target))?)
        } else {
            None
        };
        let edge = RoutedEdge {
            source: e.source,
            target: e.target,
            class: e.class,
            bend,
        };
        for (p, q) in edge.segments(&coords) {
            if let Some(vertex) = coords.first_obstruction(p, q) {
                return Err(LayoutError::VertexHit {
                    from: e.source,
                    to: e.target,
                    vertex,
                });
            }
        }
        routed.push(edge);
    }
    let mut layout = Layout {
        variant: None,
        coords,
        edges: routed,
        bundles: Vec::new(),
    };
    layout.bundles = compute_bundles(&layout)?;
    Ok(layout)
}

/// Groups bent edges by bend point and checks that two bends coincide
/// exactly when the edges leave the same path for the same target.
pub fn compute_bundles(layout: &Layout) -> Result<Vec<Bundle>, LayoutError> {
    let coords = &layout.coords;
    let mut by_point: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
    let mut by_key: BTreeMap<(usize, VertexId), Point> = BTreeMap::new();
    for (i, e) in layout.edges.iter().enumerate() {
        let Some(bend) = e.bend else { continue };
        by_point.entry(bend).or_default().push(i);
        let key = (coords.placement(e.source).path, e.target);
        if *by_key.entry(key).or_insert(bend) != bend {
            return Err(LayoutError::BundleMismatch(bend));
        }
    }
    let mut bundles = Vec::new();
    for (bend, members) in by_point {
        let first = &layout.edges[members[0]];
        let key = (coords.placement(first.source).path, first.target);
        let consistent = members.iter().all(|&i| {
            let e = &layout.edges[i];
            (coords.placement(e.source).path, e.target) == key
        });
        if !consistent {
            return Err(LayoutError::BundleMismatch(bend));
        }
        if members.len() >= 2 {
            bundles.push(Bundle {
                bend,
                source_path: key.0,
                target: key.1,
                edges: members,
            });
        }
    }
    bundles.sort_by_key(|b| b.edges[0]);
    Ok(bundles)
}

/// Lays out one variant drawing of `h`.
pub fn draw(h: &DecompGraph, t: &TopoOrder, vd: &VariantDrawing) -> Result<Layout, LayoutError> {
    let coords = assign_coordinates(h, t)?;
    let mut layout = route_edges(coords, vd.drawn(), vd.forced_bends())?;
    layout.variant = Some(vd.variant());
    Ok(layout)
}
