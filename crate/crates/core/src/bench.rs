//! Benchmark harness: every variant over every input graph, one metrics row
//! per (graph, variant), with layout time averaged over repeated runs.

use std::fmt::Write as _;
use std::path::PathBuf;

use crate::io::{gen_random_dag_with_edges, parse_graph};
use crate::{prepare, DecompositionChoice, Digraph, Error, MetricsReport, Variant};

#[derive(Debug, Clone, PartialEq)]
pub enum BenchInput {
    File(PathBuf),
    Generated {
        name: String,
        nodes: usize,
        edges: usize,
        seed: u64,
    },
}

impl BenchInput {
    pub fn name(&self) -> String {
        match self {
            BenchInput::File(p) => p.display().to_string(),
            BenchInput::Generated { name, .. } => name.clone(),
        }
    }

    fn load(&self) -> Result<Digraph, Error> {
        match self {
            BenchInput::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                Ok(parse_graph(&text)?.graph)
            }
            BenchInput::Generated {
                nodes, edges, seed, ..
            } => Ok(gen_random_dag_with_edges(*nodes, *edges, *seed)?),
        }
    }
}

/// Node and edge counts of the five reference DAGs, with their nominal
/// completeness in percent.
pub const TABLE_PROFILES: [(usize, usize, u32); 5] = [
    (30, 69, 16),
    (50, 61, 5),
    (50, 121, 10),
    (100, 246, 5),
    (100, 494, 10),
];

pub fn table_profile_inputs(seed: u64) -> Vec<BenchInput> {
    TABLE_PROFILES
        .iter()
        .enumerate()
        .map(|(i, &(nodes, edges, _))| BenchInput::Generated {
            name: format!("dag{}-n{nodes}-m{edges}", i + 1),
            nodes,
            edges,
            seed: seed.wrapping_add(i as u64),
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub variants: Vec<Variant>,
    pub repeats: usize,
    pub decomposition: DecompositionChoice,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            variants: Variant::ALL.to_vec(),
            repeats: 5,
            decomposition: DecompositionChoice::Minimum,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub graph: String,
    pub nodes: usize,
    pub edges: usize,
    pub k: usize,
    /// `None` on rows that report an input error.
    pub variant: Option<Variant>,
    pub metrics: Option<MetricsReport>,
    pub error: Option<String>,
}

impl BenchRow {
    fn failed(graph: String, error: &Error) -> Self {
        BenchRow {
            graph,
            nodes: 0,
            edges: 0,
            k: 0,
            variant: None,
            metrics: None,
            error: Some(error.to_string()),
        }
    }

    pub fn is_error(&self) -> bool {
        self.error.is_some()
    }
}

/// Rows come out ordered by input, then by variant in `config` order. An
/// input that fails to load or prepare yields one error row and the run
/// continues with the next input.
pub fn run_bench(inputs: &[BenchInput], config: &BenchConfig) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for input in inputs {
        let name = input.name();
        let prepared = match input
            .load()
            .and_then(|g| prepare(&g, &config.decomposition))
        {
            Ok(p) => p,
            Err(e) => {
                rows.push(BenchRow::failed(name, &e));
                continue;
            }
        };
        for &variant in &config.variants {
            let result = prepared.render(variant).and_then(|r| {
                let elapsed = prepared.time_layout(variant, config.repeats)?;
                Ok(MetricsReport {
                    elapsed,
                    ..r.metrics
                })
            });
            let base = BenchRow {
                graph: name.clone(),
                nodes: prepared.dag.vertex_count(),
                edges: prepared.dag.edge_count(),
                k: prepared.k(),
                variant: Some(variant),
                metrics: None,
                error: None,
            };
            rows.push(match result {
                Ok(m) => BenchRow {
                    metrics: Some(m),
                    ..base
                },
                Err(e) => BenchRow {
                    error: Some(e.to_string()),
                    ..base
                },
            });
        }
    }
    rows
}

const COLUMNS: [&str; 13] = [
    "graph",
    "n",
    "m",
    "k",
    "variant",
    "edges",
    "cross",
    "bends",
    "bent_edges",
    "bends_per_edge",
    "crossings",
    "area",
    "time_ms",
];

fn fields(row: &BenchRow) -> Vec<String> {
    let mut f = vec![
        row.graph.clone(),
        row.nodes.to_string(),
        row.edges.to_string(),
        row.k.to_string(),
        row.variant.map_or_else(|| "-".into(), |v| v.to_string()),
    ];
    match (&row.metrics, &row.error) {
        (Some(m), _) => f.extend([
            m.edges_drawn.to_string(),
            m.cross_edges_drawn.to_string(),
            m.bends.to_string(),
            m.bent_edges.to_string(),
            format!("{:.3}", m.bends_per_edge),
            m.crossings.to_string(),
            format!("{}x{}", m.width, m.height),
            format!("{:.3}", m.elapsed.as_secs_f64() * 1e3),
        ]),
        (None, err) => {
            f.push(format!("error: {}", err.as_deref().unwrap_or("unknown")));
        }
    }
    f
}

/// Space-aligned table with a header line.
pub fn format_table(rows: &[BenchRow]) -> String {
    let body: Vec<Vec<String>> = rows.iter().map(fields).collect();
    let mut widths: Vec<usize> = COLUMNS.iter().map(|c| c.len()).collect();
    for r in body.iter().filter(|r| r.len() == COLUMNS.len()) {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| match widths.get(i) {
                Some(&w) if i + 1 < cells.len() => format!("{c:<w$}"),
                _ => c.clone(),
            })
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    let header: Vec<String> = COLUMNS.iter().map(|c| c.to_string()).collect();
    line(&mut out, &header);
    for r in &body {
        line(&mut out, r);
    }
    out
}

/// Comma-separated records with a header row.
pub fn format_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    w.write_record(COLUMNS).expect("in-memory csv write");
    for r in rows {
        w.write_record(fields(r)).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv output is utf-8")
}
