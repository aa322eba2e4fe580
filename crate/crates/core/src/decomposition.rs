//! Path decompositions and the path decomposition graph.
//!
//! A path decomposition partitions the vertices of a DAG into vertex-disjoint
//! directed paths. The decomposition graph drops every edge that joins two
//! non-consecutive vertices of the same path; those edges are implied by the
//! path itself, so reachability is unchanged.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{Dag, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("vertex {0} appears in more than one place")]
    DuplicateVertex(VertexId),
    #[error("vertex {0} is not covered by any path")]
    MissingVertex(VertexId),
    #[error("consecutive pair ({0}, {1}) is not an edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("path {0} is empty")]
    EmptyPath(usize),
}

/// Vertex-disjoint paths covering every vertex exactly once.
///
/// Path indices are 0-based internally; positions inside a path are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDecomposition {
    paths: Vec<Vec<VertexId>>,
    path_of: Vec<usize>,
    position: Vec<usize>,
}

impl PathDecomposition {
    /// Checks that `candidate` is a path decomposition of `d`.
    pub fn validate(d: &Dag, candidate: Vec<Vec<VertexId>>) -> Result<Self, DecompositionError> {
        let n = d.vertex_count();
        let mut path_of = vec![usize::MAX; n];
        let mut position = vec![0; n];
        for (i, path) in candidate.iter().enumerate() {
            if path.is_empty() {
                return Err(DecompositionError::EmptyPath(i));
            }
            for (j, &v) in path.iter().enumerate() {
                if v >= n {
                    return Err(DecompositionError::UnknownVertex(v));
                }
                if path_of[v] != usize::MAX {
                    return Err(DecompositionError::DuplicateVertex(v));
                }
                path_of[v] = i;
                position[v] = j + 1;
            }
            if let Some(w) = path.windows(2).find(|w| !d.graph().has_edge(w[0], w[1])) {
                return Err(DecompositionError::NotAnEdge(w[0], w[1]));
            }
        }
        if let Some(v) = path_of.iter().position(|&p| p == usize::MAX) {
            return Err(DecompositionError::MissingVertex(v));
        }
        Ok(PathDecomposition {
            paths: candidate,
            path_of,
            position,
        })
    }

    pub fn paths(&self) -> &[Vec<VertexId>] {
        &self.paths
    }

    /// Number of paths.
    pub fn k(&self) -> usize {
        self.paths.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.path_of.len()
    }

    pub fn path_of(&self, v: VertexId) -> usize {
        self.path_of[v]
    }

    pub fn position(&self, v: VertexId) -> usize {
        self.position[v]
    }

    /// Vertex at 1-based `position` of `path`.
    pub fn vertex_at(&self, path: usize, position: usize) -> VertexId {
        self.paths[path][position - 1]
    }

    /// Consecutive pairs of every path: the edges a column layout implies.
    pub fn path_edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.paths
            .iter()
            .flat_map(|p| p.windows(2).map(|w| (w[0], w[1])))
    }
}

/// Peels maximal paths: start at the smallest-id unused vertex with no unused
/// predecessor and keep stepping to the smallest-id unused successor.
pub fn greedy_decompose(d: &Dag) -> PathDecomposition {
    let g = d.graph();
    let n = g.vertex_count();
    let mut unused_indeg = g.in_degrees();
    let mut used = vec![false; n];
    let mut sources: BTreeSet<VertexId> = (0..n).filter(|&v| unused_indeg[v] == 0).collect();
    let mut paths = Vec::new();

    let mut take = |v: VertexId, used: &mut Vec<bool>, sources: &mut BTreeSet<VertexId>| {
        used[v] = true;
        sources.remove(&v);
        for w in g.successor_ids(v) {
            unused_indeg[w] -= 1;
            if unused_indeg[w] == 0 && !used[w] {
                sources.insert(w);
            }
        }
    };

    while let Some(&start) = sources.iter().next() {
        let mut path = vec![start];
        take(start, &mut used, &mut sources);
        let mut cur = start;
        while let Some(next) = g.successor_ids(cur).find(|&w| !used[w]) {
            path.push(next);
            take(next, &mut used, &mut sources);
            cur = next;
        }
        paths.push(path);
    }
    PathDecomposition::validate(d, paths).expect("greedy peeling yields a valid decomposition")
}

/// Minimum path cover: `n` minus a maximum matching between out-copies and
/// in-copies of the vertices, one candidate pair per edge.
///
/// Paths are listed in order of their first vertex id.
pub fn min_path_cover(d: &Dag) -> PathDecomposition {
    let g = d.graph();
    let n = g.vertex_count();
    let adj: Vec<Vec<VertexId>> = (0..n).map(|u| g.successor_ids(u).collect()).collect();
    let next = hopcroft_karp(&adj, n);

    let mut has_pred = vec![false; n];
    for &v in next.iter().filter(|&&v| v != NONE) {
        has_pred[v] = true;
    }
    let paths = (0..n)
        .filter(|&v| !has_pred[v])
        .map(|start| {
            let mut path = vec![start];
            let mut cur = start;
            while next[cur] != NONE {
                cur = next[cur];
                path.push(cur);
            }
            path
        })
        .collect();
    PathDecomposition::validate(d, paths).expect("matching yields a valid decomposition")
}

const NONE: usize = usize::MAX;

/// Maximum bipartite matching, left side `0..adj.len()`, right side
/// `0..right`. Returns the matched right vertex per left vertex. Neighbour
/// lists are scanned in order, which makes the result deterministic.
pub(crate) fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> Vec<usize> {
    let left = adj.len();
    let mut match_left = vec![NONE; left];
    let mut match_right = vec![NONE; right];
    let mut dist = vec![0usize; left];
    let mut cursor = vec![0usize; left];
    let mut queue = VecDeque::new();
    let mut stack: Vec<usize> = Vec::new();

    // cheap greedy start
    for u in 0..left {
        if let Some(&v) = adj[u].iter().find(|&&v| match_right[v] == NONE) {
            match_left[u] = v;
            match_right[v] = u;
        }
    }

    loop {
        // BFS layering from free left vertices
        queue.clear();
        for u in 0..left {
            if match_left[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NONE;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_right[v];
                if w == NONE {
                    found = true;
                } else if dist[w] == NONE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }

        // layered DFS, iterative
        cursor.iter_mut().for_each(|c| *c = 0);
        for root in 0..left {
            if match_left[root] != NONE {
                continue;
            }
            stack.clear();
            stack.push(root);
            while let Some(&u) = stack.last() {
                if cursor[u] == adj[u].len() {
                    dist[u] = NONE;
                    stack.pop();
                    continue;
                }
                let v = adj[u][cursor[u]];
                let w = match_right[v];
                if w == NONE {
                    // augment along the stack
                    let mut v = v;
                    while let Some(u) = stack.pop() {
                        let prev = match_left[u];
                        match_left[u] = v;
                        match_right[v] = u;
                        v = prev;
                    }
                    break;
                }
                if dist[w] != NONE && dist[w] == dist[u] + 1 {
                    stack.push(w);
                } else {
                    cursor[u] += 1;
                }
            }
        }
    }
    match_left
}

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    Path,
    Cross,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
    pub class: EdgeClass,
}

impl Edge {
    pub fn pair(&self) -> (VertexId, VertexId) {
        (self.source, self.target)
    }

    pub fn is_cross(&self) -> bool {
        self.class == EdgeClass::Cross
    }
}

/// The graph `H`: the DAG minus transitive edges inside a path, with every
/// remaining edge classified as a path edge or a cross edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompGraph {
    decomposition: PathDecomposition,
    edges: Vec<Edge>,
    removed: Vec<(VertexId, VertexId)>,
}

pub fn build_decomposition_graph(d: &Dag, sp: &PathDecomposition) -> DecompGraph {
    let mut edges = Vec::with_capacity(d.edge_count());
    let mut removed = Vec::new();
    for &(u, v) in d.graph().edges() {
        if sp.path_of(u) != sp.path_of(v) {
            edges.push(Edge {
                source: u,
                target: v,
                class: EdgeClass::Cross,
            });
        } else if sp.position(v) == sp.position(u) + 1 {
            edges.push(Edge {
                source: u,
                target: v,
                class: EdgeClass::Path,
            });
        } else {
            removed.push((u, v));
        }
    }
    DecompGraph {
        decomposition: sp.clone(),
        edges,
        removed,
    }
}

impl DecompGraph {
    pub fn decomposition(&self) -> &PathDecomposition {
        &self.decomposition
    }

    pub fn vertex_count(&self) -> usize {
        self.decomposition.vertex_count()
    }

    /// Edges of `H`, sorted by `(source, target)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Transitive path edges dropped from the input.
    pub fn removed(&self) -> &[(VertexId, VertexId)] {
        &self.removed
    }

    pub fn cross_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.is_cross())
    }

    pub fn path_edge_count(&self) -> usize {
        self.edges.len() - self.cross_edges().count()
    }
}
