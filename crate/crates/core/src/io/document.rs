//! Machine-readable layout document.

use serde::{Deserialize, Serialize};

use crate::decomposition::EdgeClass;
use crate::layout::Layout;
use crate::metrics::MetricsReport;
use crate::variants::Variant;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub label: String,
    pub x: i64,
    pub y: i64,
    /// 1-based path index.
    pub path: usize,
    /// 1-based position along the path.
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub from: String,
    pub to: String,
    pub class: EdgeClass,
    pub polyline: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bundle_id: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutDocument {
    pub variant: Option<Variant>,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    pub metrics: MetricsReport,
}

impl LayoutDocument {
    pub fn new(layout: &Layout, labels: &[String], metrics: MetricsReport) -> Self {
        let coords = layout.coords();
        let vertices = coords
            .placements()
            .iter()
            .enumerate()
            .map(|(v, pl)| VertexRecord {
                label: labels[v].clone(),
                x: pl.point.x,
                y: pl.point.y,
                path: pl.path + 1,
                pos: pl.position,
            })
            .collect();
        let bundle_of = layout.bundle_of_edge();
        let edges = layout
            .edges()
            .iter()
            .zip(bundle_of)
            .map(|(e, bundle_id)| EdgeRecord {
                from: labels[e.source].clone(),
                to: labels[e.target].clone(),
                class: e.class,
                polyline: e.polyline(coords).iter().map(|p| [p.x, p.y]).collect(),
                bundle_id,
            })
            .collect();
        LayoutDocument {
            variant: layout.variant(),
            vertices,
            edges,
            metrics,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("layout document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
