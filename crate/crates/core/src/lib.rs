//! Path-based hierarchical drawings of directed graphs.
//!
//! The vertices of a DAG are split into vertex-disjoint paths, each path is
//! drawn as one vertical column, and edges are routed with at most one bend.
//! Seven drawing variants progressively hide edges whose reachability is
//! implied by the rest of the drawing, and the same decomposition backs a
//! compact `n * k` reachability index.
//!
//! ```
//! use pbdraw::{io, prepare, DecompositionChoice, Variant};
//!
//! let parsed = io::parse_graph("a b\nb c\na c\nc d\n").unwrap();
//! let prepared = prepare(&parsed.graph, &DecompositionChoice::Minimum).unwrap();
//! let rendered = prepared.render(Variant::CombinedCrossOnly).unwrap();
//! assert_eq!(prepared.k(), 1);
//! assert_eq!(rendered.metrics.edges_drawn, 0);
//! assert!(prepared.index().query(0, 3).unwrap());
//! ```

pub mod bench;
pub mod decomposition;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod layout;
pub mod metrics;
pub mod reach;
pub mod variants;

use std::time::{Duration, Instant};

use thiserror::Error;

pub use decomposition::{
    build_decomposition_graph, greedy_decompose, min_path_cover, DecompGraph, DecompositionError,
    Edge, EdgeClass, PathDecomposition,
};
pub use graph::{
    condense, topo_sort, ClosureMatrix, Dag, Digraph, GraphError, TopoOrder, VertexId,
};
pub use layout::{Layout, LayoutError};
pub use metrics::MetricsReport;
pub use reach::{build_index, IndexError, ReachIndex};
pub use variants::{apply_variant, Variant, VariantDrawing, VariantError};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Variant(#[from] VariantError),
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error(transparent)]
    Parse(#[from] io::ParseError),
    #[error(transparent)]
    Generate(#[from] io::GenError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl Error {
    /// Geometry that contradicts the routing guarantees; indicates a bug
    /// rather than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::Layout(
                LayoutError::SameColumnBend(..)
                    | LayoutError::VertexHit { .. }
                    | LayoutError::BundleMismatch(_)
            )
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionChoice {
    Greedy,
    Minimum,
    /// Paths over the condensed vertex ids.
    Given(Vec<Vec<VertexId>>),
}

/// A condensed graph with its topological order, decomposition and
/// decomposition graph.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub dag: Dag,
    pub topo: TopoOrder,
    pub h: DecompGraph,
}

pub struct Rendered {
    pub drawing: VariantDrawing,
    pub layout: Layout,
    pub metrics: MetricsReport,
}

/// Condenses `g`, orders it and builds the decomposition graph.
pub fn prepare(g: &Digraph, choice: &DecompositionChoice) -> Result<Prepared, Error> {
    prepare_dag(condense(g), choice)
}

pub fn prepare_dag(dag: Dag, choice: &DecompositionChoice) -> Result<Prepared, Error> {
    let topo = topo_sort(&dag)?;
    let sp = match choice {
        DecompositionChoice::Greedy => greedy_decompose(&dag),
        DecompositionChoice::Minimum => min_path_cover(&dag),
        DecompositionChoice::Given(paths) => PathDecomposition::validate(&dag, paths.clone())?,
    };
    let h = build_decomposition_graph(&dag, &sp);
    Ok(Prepared { dag, topo, h })
}

impl Prepared {
    pub fn decomposition(&self) -> &PathDecomposition {
        self.h.decomposition()
    }

    pub fn k(&self) -> usize {
        self.h.decomposition().k()
    }

    pub fn labels(&self) -> &[String] {
        self.dag.graph().labels()
    }

    /// Builds the decomposition graph, the variant and its layout, timing
    /// those three steps, then measures the result.
    pub fn render(&self, variant: Variant) -> Result<Rendered, Error> {
        let (drawing, layout, elapsed) = self.timed_layout(variant)?;
        let metrics = MetricsReport::measure(&drawing, &layout, elapsed);
        Ok(Rendered {
            drawing,
            layout,
            metrics,
        })
    }

    /// The variant and its layout without metrics. Counting crossings is
    /// quadratic in the number of segments, so this is the cheap path for
    /// large graphs.
    pub fn layout(&self, variant: Variant) -> Result<(VariantDrawing, Layout), Error> {
        let drawing = variants::apply(&self.h, variant);
        let layout = layout::draw(&self.h, &self.topo, &drawing)?;
        Ok((drawing, layout))
    }

    fn timed_layout(&self, variant: Variant) -> Result<(VariantDrawing, Layout, Duration), Error> {
        let start = Instant::now();
        let h = build_decomposition_graph(&self.dag, self.decomposition());
        let drawing = variants::apply(&h, variant);
        let layout = layout::draw(&h, &self.topo, &drawing)?;
        Ok((drawing, layout, start.elapsed()))
    }

    /// Average wall-clock time of `runs` layout computations.
    pub fn time_layout(&self, variant: Variant, runs: usize) -> Result<Duration, Error> {
        let runs = runs.max(1);
        let mut total = Duration::ZERO;
        for _ in 0..runs {
            total += self.timed_layout(variant)?.2;
        }
        Ok(total / runs as u32)
    }

    pub fn index(&self) -> ReachIndex {
        build_index(&self.h, &self.topo)
    }

    /// Compares the closure of every variant's drawn edges plus implied path
    /// edges against the closure of the condensed graph.
    pub fn verify(&self, variants: &[Variant]) -> Vec<VerifyOutcome> {
        let n = self.dag.vertex_count();
        let truth = graph::transitive_closure(&self.dag);
        variants
            .iter()
            .map(|&variant| {
                let vd = variants::apply(&self.h, variant);
                let drawn = ClosureMatrix::from_edges(n, vd.reachability_edges(&self.h));
                VerifyOutcome {
                    variant,
                    mismatch: truth.first_difference(&drawn),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub variant: Variant,
    /// First pair whose reachability differs, if any.
    pub mismatch: Option<(VertexId, VertexId)>,
}
