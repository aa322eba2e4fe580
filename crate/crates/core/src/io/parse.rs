//! Graph and path-decomposition file readers.
//!
//! Graphs come either as an edge list (`u v` per line, `#` starts a comment,
//! a lone label declares an isolated vertex) or as a JSON document
//! `{"nodes": [...], "edges": [[u, v], ...]}`. Labels are strings; JSON
//! numbers are accepted and used in their decimal form.

use std::collections::HashMap;

use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use crate::graph::{Digraph, NormalizeReport, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("line {line}: unknown vertex label {label:?}")]
    UnknownLabel { line: usize, label: String },
    #[error("invalid graph document: {0}")]
    Document(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: Digraph,
    pub report: NormalizeReport,
}

#[derive(Default)]
struct SymbolTable {
    labels: Vec<String>,
    ids: HashMap<String, VertexId>,
}

impl SymbolTable {
    fn intern(&mut self, label: &str) -> VertexId {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.ids.insert(label.to_string(), id);
        id
    }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(before, _)| before)
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph, ParseError> {
    if text.trim_start().starts_with('{') {
        return parse_document(text);
    }
    let mut symbols = SymbolTable::default();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let tokens: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        match tokens[..] {
            [] => {}
            [v] => {
                symbols.intern(v);
            }
            [u, v] => {
                let u = symbols.intern(u);
                let v = symbols.intern(v);
                edges.push((u, v));
            }
            _ => {
                return Err(ParseError::Line {
                    line: i + 1,
                    message: format!("expected `u v`, found {} fields", tokens.len()),
                })
            }
        }
    }
    finish(symbols, edges)
}

#[derive(Deserialize)]
struct GraphDocument {
    #[serde(default)]
    nodes: Vec<Value>,
    #[serde(default)]
    edges: Vec<(Value, Value)>,
}

fn label_of(v: &Value) -> Result<String, ParseError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(ParseError::Document(format!(
            "label must be a string or number, got {other}"
        ))),
    }
}

fn parse_document(text: &str) -> Result<ParsedGraph, ParseError> {
    let doc: GraphDocument =
        serde_json::from_str(text).map_err(|e| ParseError::Document(e.to_string()))?;
    let mut symbols = SymbolTable::default();
    for node in &doc.nodes {
        let label = label_of(node)?;
        if symbols.ids.contains_key(&label) {
            return Err(ParseError::Document(format!(
                "duplicate node label {label:?}"
            )));
        }
        symbols.intern(&label);
    }
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (u, v) in &doc.edges {
        let u = symbols.intern(&label_of(u)?);
        let v = symbols.intern(&label_of(v)?);
        edges.push((u, v));
    }
    finish(symbols, edges)
}

fn finish(
    symbols: SymbolTable,
    edges: Vec<(VertexId, VertexId)>,
) -> Result<ParsedGraph, ParseError> {
    let (graph, report) = Digraph::with_labels(symbols.labels, edges)
        .map_err(|e| ParseError::Document(e.to_string()))?;
    Ok(ParsedGraph { graph, report })
}

/// One path per line, whitespace separated labels; the first line is path 1.
pub fn parse_paths(text: &str, labels: &[String]) -> Result<Vec<Vec<VertexId>>, ParseError> {
    let ids: HashMap<&str, VertexId> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut paths = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let tokens: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let path = tokens
            .iter()
            .map(|t| {
                ids.get(t).copied().ok_or_else(|| ParseError::UnknownLabel {
                    line: i + 1,
                    label: t.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        paths.push(path);
    }
    Ok(paths)
}

/// Edge-list text for `g`. Every vertex is listed on its own line first, so
/// parsing the text back yields the same vertex ids.
pub fn to_edge_list(g: &Digraph) -> String {
    let mut out = String::new();
    for label in g.labels() {
        out.push_str(label);
        out.push('\n');
    }
    for &(u, v) in g.edges() {
        out.push_str(g.label(u));
        out.push(' ');
        out.push_str(g.label(v));
        out.push('\n');
    }
    out
}
