//! Chain-compressed reachability index.
//!
//! For every vertex `u` and path `j` the table stores the smallest position
//! on `j` that `u` reaches. Everything after that position is reachable too,
//! by walking down the path, so `u` reaches `v` iff
//! `entry(u, path(v)) <= position(v)`. The table has exactly `n * k` cells.

use std::fmt::Write as _;

use thiserror::Error;

use crate::decomposition::{DecompGraph, PathDecomposition};
use crate::graph::{TopoOrder, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("vertex {0} is not in the index")]
    UnknownVertex(VertexId),
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachIndex {
    k: usize,
    path_of: Vec<u32>,
    position: Vec<u32>,
    table: Vec<u32>,
}

/// Builds the index over the decomposition graph.
pub fn build_index(h: &DecompGraph, t: &TopoOrder) -> ReachIndex {
    build_index_from_edges(h.decomposition(), t, h.edges().iter().map(|e| e.pair()))
}

/// Builds the index over an arbitrary edge set whose closure, together with
/// the path edges of `sp`, is the relation to index. `t` must be a
/// topological order of those edges.
pub fn build_index_from_edges(
    sp: &PathDecomposition,
    t: &TopoOrder,
    edges: impl IntoIterator<Item = (VertexId, VertexId)>,
) -> ReachIndex {
    let n = sp.vertex_count();
    let k = sp.k();
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for (u, v) in edges.into_iter().chain(sp.path_edges()) {
        adj[u].push(v);
    }
    let mut table = vec![UNREACHABLE; n * k];
    for &u in t.order().iter().rev() {
        let (before, rest) = table.split_at_mut(u * k);
        let (row, after) = rest.split_at_mut(k);
        row[sp.path_of(u)] = sp.position(u) as u32;
        for &w in &adj[u] {
            debug_assert!(w != u);
            let other = if w < u {
                &before[w * k..(w + 1) * k]
            } else {
                let off = (w - u - 1) * k;
                &after[off..off + k]
            };
            for (a, &b) in row.iter_mut().zip(other) {
                *a = (*a).min(b);
            }
        }
    }
    ReachIndex {
        k,
        path_of: (0..n).map(|v| sp.path_of(v) as u32).collect(),
        position: (0..n).map(|v| sp.position(v) as u32).collect(),
        table,
    }
}

impl ReachIndex {
    pub fn vertex_count(&self) -> usize {
        self.path_of.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of table cells, always `n * k`.
    pub fn size(&self) -> usize {
        self.table.len()
    }

    /// Smallest reachable position of path `j` from `u`.
    pub fn entry(&self, u: VertexId, j: usize) -> Option<u32> {
        let e = self.table[u * self.k + j];
        (e != UNREACHABLE).then_some(e)
    }

    pub fn row(&self, u: VertexId) -> impl Iterator<Item = Option<u32>> + '_ {
        self.table[u * self.k..(u + 1) * self.k]
            .iter()
            .map(|&e| (e != UNREACHABLE).then_some(e))
    }

    pub fn path_of(&self, v: VertexId) -> usize {
        self.path_of[v] as usize
    }

    pub fn position(&self, v: VertexId) -> usize {
        self.position[v] as usize
    }

    pub fn query(&self, u: VertexId, v: VertexId) -> Result<bool, IndexError> {
        let n = self.vertex_count();
        if u >= n {
            return Err(IndexError::UnknownVertex(u));
        }
        if v >= n {
            return Err(IndexError::UnknownVertex(v));
        }
        Ok(self.table[u * self.k + self.path_of[v] as usize] <= self.position[v])
    }

    /// Header `n k`, then `label path position entry_1 .. entry_k` per
    /// vertex. Paths are numbered from 1; unreachable cells read `inf`.
    pub fn to_text(&self, labels: &[String]) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.vertex_count(), self.k);
        for (u, label) in labels.iter().enumerate().take(self.vertex_count()) {
            let _ = write!(s, "{} {} {}", label, self.path_of[u] + 1, self.position[u]);
            for e in self.row(u) {
                match e {
                    Some(p) => {
                        let _ = write!(s, " {p}");
                    }
                    None => s.push_str(" inf"),
                }
            }
            s.push('\n');
        }
        s
    }

    /// Inverse of `to_text`; returns the index and the vertex labels.
    pub fn from_text(text: &str) -> Result<(Self, Vec<String>), IndexError> {
        let err = |line: usize, message: &str| IndexError::Parse {
            line,
            message: message.into(),
        };
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| err(hl + 1, "header must be `n k`"))?;
        let [n, k] = nums[..] else {
            return Err(err(hl + 1, "header must be `n k`"));
        };
        let mut labels = Vec::with_capacity(n);
        let mut path_of = Vec::with_capacity(n);
        let mut position = Vec::with_capacity(n);
        let mut table = Vec::with_capacity(n * k);
        for (i, line) in lines {
            let lineno = i + 1;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 3 + k {
                return Err(err(lineno, &format!("expected {} fields", 3 + k)));
            }
            let num = |t: &str| {
                t.parse::<u32>()
                    .map_err(|_| err(lineno, &format!("bad number {t:?}")))
            };
            let path = num(tokens[1])?;
            if path == 0 || path as usize > k {
                return Err(err(lineno, "path index out of range"));
            }
            labels.push(tokens[0].to_string());
            path_of.push(path - 1);
            position.push(num(tokens[2])?);
            for t in &tokens[3..] {
                table.push(if *t == "inf" { UNREACHABLE } else { num(t)? });
            }
        }
        if labels.len() != n {
            return Err(err(
                0,
                &format!("expected {n} vertex lines, found {}", labels.len()),
            ));
        }
        Ok((
            ReachIndex {
                k,
                path_of,
                position,
                table,
            },
            labels,
        ))
    }
}
