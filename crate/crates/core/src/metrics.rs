//! Drawing quality measures.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::geometry::{canonical, segments_intersect, Point};
use crate::layout::Layout;
use crate::variants::VariantDrawing;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub edges_drawn: usize,
    pub cross_edges_drawn: usize,
    /// Distinct bend points; a bundle counts once.
    pub bends: usize,
    /// Edges drawn with a bend.
    pub bent_edges: usize,
    pub bends_per_edge: f64,
    pub crossings: usize,
    pub width: usize,
    pub height: usize,
    #[serde(rename = "elapsed_ns", with = "nanos")]
    pub elapsed: Duration,
}

mod nanos {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_nanos().min(u64::MAX as u128) as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_nanos(u64::deserialize(d)?))
    }
}

impl MetricsReport {
    /// Measures `layout`, which must be the routed form of `vd`.
    pub fn measure(vd: &VariantDrawing, layout: &Layout, elapsed: Duration) -> Self {
        let (edges_drawn, cross_edges_drawn) = count_edges(vd);
        let bends = count_bends(layout);
        let (width, height) = area(layout);
        MetricsReport {
            edges_drawn,
            cross_edges_drawn,
            bends,
            bent_edges: count_bent_edges(layout),
            bends_per_edge: if edges_drawn == 0 {
                0.0
            } else {
                bends as f64 / edges_drawn as f64
            },
            crossings: count_crossings(layout),
            width,
            height,
            elapsed,
        }
    }

    /// `key: value` lines.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "edges_drawn: {}", self.edges_drawn);
        let _ = writeln!(s, "cross_edges_drawn: {}", self.cross_edges_drawn);
        let _ = writeln!(s, "bends: {}", self.bends);
        let _ = writeln!(s, "bent_edges: {}", self.bent_edges);
        let _ = writeln!(s, "bends_per_edge: {:.4}", self.bends_per_edge);
        let _ = writeln!(s, "crossings: {}", self.crossings);
        let _ = writeln!(s, "width: {}", self.width);
        let _ = writeln!(s, "height: {}", self.height);
        let _ = writeln!(s, "elapsed_ms: {:.3}", self.elapsed.as_secs_f64() * 1e3);
        s
    }
}

pub fn count_edges(vd: &VariantDrawing) -> (usize, usize) {
    let cross = vd.drawn().iter().filter(|e| e.is_cross()).count();
    (vd.drawn().len(), cross)
}

pub fn count_bends(layout: &Layout) -> usize {
    layout
        .edges()
        .iter()
        .filter_map(|e| e.bend)
        .collect::<BTreeSet<_>>()
        .len()
}

pub fn count_bent_edges(layout: &Layout) -> usize {
    layout.edges().iter().filter(|e| e.bend.is_some()).count()
}

/// Distinct segments of the drawing; bundled legs into a common target
/// coincide and appear once.
pub fn distinct_segments(layout: &Layout) -> Vec<(Point, Point)> {
    let coords = layout.coords();
    layout
        .edges()
        .iter()
        .flat_map(|e| e.segments(coords))
        .map(|(a, b)| canonical(a, b))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Unordered pairs of distinct segments that meet, excluding pairs that
/// share an endpoint. A collinear overlap counts once.
pub fn count_crossings(layout: &Layout) -> usize {
    let segs = distinct_segments(layout);
    let mut count = 0;
    for (i, &(a, b)) in segs.iter().enumerate() {
        for &(c, d) in &segs[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if segments_intersect(a, b, c, d) {
                count += 1;
            }
        }
    }
    count
}

/// Bounding box over vertex and bend points, in grid units.
pub fn area(layout: &Layout) -> (usize, usize) {
    let points = layout
        .coords()
        .placements()
        .iter()
        .map(|p| p.point)
        .chain(layout.edges().iter().filter_map(|e| e.bend));
    let mut bounds: Option<(i64, i64, i64, i64)> = None;
    for p in points {
        bounds = Some(match bounds {
            None => (p.x, p.x, p.y, p.y),
            Some((x0, x1, y0, y1)) => (x0.min(p.x), x1.max(p.x), y0.min(p.y), y1.max(p.y)),
        });
    }
    match bounds {
        None => (0, 0),
        Some((x0, x1, y0, y1)) => ((x1 - x0 + 1) as usize, (y1 - y0 + 1) as usize),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{build_decomposition_graph, DecompGraph, PathDecomposition};
    use crate::graph::{Dag, Digraph, TopoOrder};
    use crate::layout::draw;
    use crate::variants::{apply, Variant};

    fn prepared(
        n: usize,
        edges: &[(usize, usize)],
        paths: Vec<Vec<usize>>,
        order: Vec<usize>,
    ) -> (DecompGraph, TopoOrder) {
        let d = Dag::new(Digraph::from_edges(n, edges.iter().copied()).unwrap().0).unwrap();
        let sp = PathDecomposition::validate(&d, paths).unwrap();
        let t = TopoOrder::from_order(d.graph(), order).unwrap();
        (build_decomposition_graph(&d, &sp), t)
    }

    fn fixture() -> (DecompGraph, TopoOrder) {
        prepared(
            6,
            &[(0, 1), (1, 2), (3, 4), (0, 3), (0, 4), (1, 4), (3, 2)],
            vec![vec![0, 1, 2], vec![3, 4], vec![5]],
            vec![0, 3, 1, 4, 2, 5],
        )
    }

    #[test]
    fn fixture_counts() {
        let (h, t) = fixture();
        let v0 = apply(&h, Variant::Baseline);
        assert_eq!(count_edges(&v0), (7, 4));
        assert_eq!(count_edges(&apply(&h, Variant::CombinedCrossOnly)), (3, 3));
        let layout = draw(&h, &t, &v0).unwrap();
        assert_eq!(area(&layout), (5, 6));
        assert_eq!(count_bends(&layout), 0);
    }

    #[test]
    fn fixture_crossings() {
        // (4,2)-(2,5) properly crosses both (2,1)-(4,4) and (2,3)-(4,4);
        // every other pair is disjoint or shares an endpoint
        let (h, t) = fixture();
        let layout = draw(&h, &t, &apply(&h, Variant::Baseline)).unwrap();
        assert_eq!(count_crossings(&layout), 2);
    }

    #[test]
    fn hand_checked_segment_pair() {
        let (a, b) = (Point::new(2, 1), Point::new(4, 4));
        let (c, d) = (Point::new(2, 3), Point::new(4, 2));
        assert!(segments_intersect(a, b, c, d));
    }

    #[test]
    fn empty_graph() {
        let (h, t) = prepared(0, &[], vec![], vec![]);
        let v0 = apply(&h, Variant::Baseline);
        let layout = draw(&h, &t, &v0).unwrap();
        assert_eq!(count_edges(&v0), (0, 0));
        assert_eq!(area(&layout), (0, 0));
        let m = MetricsReport::measure(&v0, &layout, Duration::ZERO);
        assert_eq!(m.bends_per_edge, 0.0);
    }

    #[test]
    fn single_vertex_area() {
        let (h, t) = prepared(1, &[], vec![vec![0]], vec![0]);
        let layout = draw(&h, &t, &apply(&h, Variant::Baseline)).unwrap();
        assert_eq!(area(&layout), (1, 1));
    }

    #[test]
    fn single_column_has_no_crossings() {
        let (h, t) = prepared(
            4,
            &[(0, 1), (1, 2), (2, 3), (0, 3)],
            vec![vec![0, 1, 2, 3]],
            vec![0, 1, 2, 3],
        );
        let layout = draw(&h, &t, &apply(&h, Variant::Baseline)).unwrap();
        assert_eq!(count_crossings(&layout), 0);
    }

    /// Paths [0,1,2] (col 2), [3] (col 4), [4] (col 6), [5] (col 8).
    /// Edges 0->4 and 1->4 jump to col 6 and bundle at (3, Y(4)-1); 2->5 is a
    /// lone jumping edge.
    fn bundled() -> (DecompGraph, TopoOrder) {
        prepared(
            6,
            &[(0, 1), (1, 2), (0, 4), (1, 4), (2, 5)],
            vec![vec![0, 1, 2], vec![3], vec![4], vec![5]],
            vec![0, 1, 2, 3, 4, 5],
        )
    }

    #[test]
    fn bends_count_distinct_points() {
        let (h, t) = bundled();
        let layout = draw(&h, &t, &apply(&h, Variant::JumpingBends)).unwrap();
        assert_eq!(layout.bundles().len(), 1);
        assert_eq!(count_bent_edges(&layout), 3);
        assert_eq!(count_bends(&layout), 2);
    }

    #[test]
    fn two_bundles_and_a_lone_bend() {
        // path [0,1,2] sends bundles into 4 and 5; 3 -> 5 bends on its own
        let (h, t) = prepared(
            6,
            &[(0, 1), (1, 2), (0, 4), (1, 4), (1, 5), (2, 5), (3, 5)],
            vec![vec![0, 1, 2], vec![3], vec![4], vec![5]],
            vec![0, 1, 2, 3, 4, 5],
        );
        let layout = draw(&h, &t, &apply(&h, Variant::JumpingBends)).unwrap();
        assert_eq!(layout.bundles().len(), 2);
        assert_eq!(count_bent_edges(&layout), 5);
        assert_eq!(count_bends(&layout), 3);
    }

    #[test]
    fn three_edge_bundle_is_one_bend() {
        let (h, t) = prepared(
            5,
            &[(0, 1), (1, 2), (0, 4), (1, 4), (2, 4)],
            vec![vec![0, 1, 2], vec![3], vec![4]],
            vec![0, 1, 2, 3, 4],
        );
        let layout = draw(&h, &t, &apply(&h, Variant::JumpingBends)).unwrap();
        assert_eq!(layout.bundles()[0].edges.len(), 3);
        assert_eq!(count_bends(&layout), 1);
    }

    #[test]
    fn transversal_through_bundle_counts_once() {
        // paths [0,1,5] col 2, [2] col 4, [3] col 6, [4] col 8
        // rows: 0:1 1:2 2:3 4:4 3:5 5:6
        // 0->3 and 1->3 bundle at (3,4); shared leg (3,4)-(6,5)
        // 2->5 runs (4,3)-(2,6) and crosses the shared leg once
        let (h, t) = prepared(
            6,
            &[(0, 1), (1, 5), (0, 3), (1, 3), (2, 5)],
            vec![vec![0, 1, 5], vec![2], vec![3], vec![4]],
            vec![0, 1, 2, 4, 3, 5],
        );
        let layout = draw(&h, &t, &apply(&h, Variant::JumpingBends)).unwrap();
        assert_eq!(layout.bundles().len(), 1);
        assert_eq!(layout.bundles()[0].bend, Point::new(3, 4));
        let shared = (Point::new(3, 4), Point::new(6, 5));
        let raw = layout
            .edges()
            .iter()
            .flat_map(|e| e.segments(layout.coords()))
            .filter(|&(a, b)| canonical(a, b) == shared)
            .count();
        assert_eq!(raw, 2);
        assert_eq!(
            distinct_segments(&layout)
                .iter()
                .filter(|&&s| s == shared)
                .count(),
            1
        );
        assert_eq!(count_crossings(&layout), 1);
    }
}
