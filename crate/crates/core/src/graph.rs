//! Directed graphs, strongly connected component condensation, topological
//! ordering and a brute-force transitive closure used for verification.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(VertexId, VertexId, usize),
    #[error("graph contains a directed cycle through {0:?}")]
    Cycle(Vec<VertexId>),
    #[error("order is not a topological order: {0}")]
    InvalidOrder(String),
}

/// What `Digraph::from_edges` dropped while normalizing the input.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NormalizeReport {
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

impl NormalizeReport {
    pub fn warnings(&self) -> usize {
        self.duplicate_edges + self.self_loops
    }
}

/// A simple directed graph on dense vertex ids `0..n`.
///
/// Edges are kept sorted by `(source, target)` and indexed in compressed
/// sparse row form, so `successors(u)` is a sorted slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    labels: Vec<String>,
    edges: Vec<(VertexId, VertexId)>,
    offsets: Vec<usize>,
}

impl Digraph {
    /// Builds a graph, dropping duplicate edges and self-loops. Labels default
    /// to the decimal vertex id.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<(Self, NormalizeReport), GraphError> {
        let labels = (0..n).map(|v| v.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    pub fn with_labels(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<(Self, NormalizeReport), GraphError> {
        let n = labels.len();
        let mut report = NormalizeReport::default();
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                report.self_loops += 1;
                continue;
            }
            list.push((u, v));
        }
        list.sort_unstable();
        let before = list.len();
        list.dedup();
        report.duplicate_edges = before - list.len();
        Ok((Self::from_sorted(labels, list), report))
    }

    fn from_sorted(labels: Vec<String>, edges: Vec<(VertexId, VertexId)>) -> Self {
        let n = labels.len();
        let mut offsets = vec![0; n + 1];
        for &(u, _) in &edges {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Digraph {
            labels,
            edges,
            offsets,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn successors(&self, u: VertexId) -> &[(VertexId, VertexId)] {
        &self.edges[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn successor_ids(&self, u: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.successors(u).iter().map(|&(_, v)| v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.vertex_count() && self.successors(u).binary_search(&(u, v)).is_ok()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for &(_, v) in &self.edges {
            deg[v] += 1;
        }
        deg
    }
}

/// An acyclic graph together with the map from the vertices of the graph it
/// was condensed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    graph: Digraph,
    supernode_map: Vec<VertexId>,
}

impl Dag {
    /// Wraps an already acyclic graph; the supernode map is the identity.
    pub fn new(graph: Digraph) -> Result<Self, GraphError> {
        kahn_order(&graph)?;
        let supernode_map = (0..graph.vertex_count()).collect();
        Ok(Dag {
            graph,
            supernode_map,
        })
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Original vertex id -> condensed vertex id.
    pub fn supernode_map(&self) -> &[VertexId] {
        &self.supernode_map
    }
}

/// Collapses every strongly connected component into one vertex.
///
/// Components are numbered by their smallest original vertex id, so an
/// acyclic input comes back with the identity map. A condensed vertex is
/// labelled with its members' labels joined by `+`.
pub fn condense(g: &Digraph) -> Dag {
    let comp = tarjan_components(g);
    let n = g.vertex_count();

    // renumber by smallest member
    let mut first_member = vec![usize::MAX; n];
    for (v, &c) in comp.iter().enumerate() {
        if first_member[c] == usize::MAX {
            first_member[c] = v;
        }
    }
    let mut reps: Vec<(usize, usize)> = first_member
        .iter()
        .enumerate()
        .filter(|&(_, &m)| m != usize::MAX)
        .map(|(c, &m)| (m, c))
        .collect();
    reps.sort_unstable();
    let mut renumber = vec![0; n];
    for (new_id, &(_, c)) in reps.iter().enumerate() {
        renumber[c] = new_id;
    }
    let supernode_map: Vec<VertexId> = comp.iter().map(|&c| renumber[c]).collect();

    let count = reps.len();
    let mut members: Vec<Vec<&str>> = vec![Vec::new(); count];
    for v in 0..n {
        members[supernode_map[v]].push(g.label(v));
    }
    let labels = members.into_iter().map(|m| m.join("+")).collect();
    let edges = g
        .edges()
        .iter()
        .map(|&(u, v)| (supernode_map[u], supernode_map[v]))
        .filter(|(a, b)| a != b);
    let (graph, _) = Digraph::with_labels(labels, edges).expect("condensed ids are in range");
    Dag {
        graph,
        supernode_map,
    }
}

/// Iterative Tarjan; returns a component id per vertex.
fn tarjan_components(g: &Digraph) -> Vec<usize> {
    const UNVISITED: usize = usize::MAX;
    let n = g.vertex_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNVISITED; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    // (vertex, next successor offset)
    let mut call: Vec<(VertexId, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut cursor)) = call.last_mut() {
            let succ = g.successors(v);
            if *cursor < succ.len() {
                let w = succ[*cursor].1;
                *cursor += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

/// A topological order with 1-based positions (`position(v)` is the row of
/// `v` in the drawing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopoOrder {
    order: Vec<VertexId>,
    position: Vec<usize>,
}

impl TopoOrder {
    /// Validates a caller-supplied order against the edges of `g`.
    pub fn from_order(g: &Digraph, order: Vec<VertexId>) -> Result<Self, GraphError> {
        let n = g.vertex_count();
        if order.len() != n {
            return Err(GraphError::InvalidOrder(format!(
                "expected {n} vertices, got {}",
                order.len()
            )));
        }
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != 0 {
                return Err(GraphError::InvalidOrder(format!(
                    "vertex {v} invalid or repeated"
                )));
            }
            position[v] = i + 1;
        }
        if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| position[u] >= position[v]) {
            return Err(GraphError::InvalidOrder(format!(
                "edge ({u}, {v}) points backwards"
            )));
        }
        Ok(TopoOrder { order, position })
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn position(&self, v: VertexId) -> usize {
        self.position[v]
    }

    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Kahn's algorithm, always taking the smallest available vertex id.
pub fn topo_sort(d: &Dag) -> Result<TopoOrder, GraphError> {
    topo_sort_graph(d.graph())
}

pub fn topo_sort_graph(g: &Digraph) -> Result<TopoOrder, GraphError> {
    let order = kahn_order(g)?;
    let mut position = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i + 1;
    }
    Ok(TopoOrder { order, position })
}

fn kahn_order(g: &Digraph) -> Result<Vec<VertexId>, GraphError> {
    let n = g.vertex_count();
    let mut indeg = g.in_degrees();
    let mut ready: BinaryHeap<Reverse<VertexId>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(u)) = ready.pop() {
        order.push(u);
        for w in g.successor_ids(u) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    if order.len() < n {
        return Err(GraphError::Cycle(find_cycle(g, &indeg)));
    }
    Ok(order)
}

/// Every vertex left with positive in-degree after Kahn has a predecessor
/// that is also left; walking predecessors backwards must revisit a vertex.
fn find_cycle(g: &Digraph, indeg: &[usize]) -> Vec<VertexId> {
    let n = g.vertex_count();
    let mut pred = vec![usize::MAX; n];
    for &(u, v) in g.edges() {
        if indeg[u] > 0 && indeg[v] > 0 {
            pred[v] = u;
        }
    }
    let Some(start) = (0..n).find(|&v| indeg[v] > 0) else {
        return Vec::new();
    };
    let mut seen = vec![false; n];
    let mut v = start;
    while !seen[v] {
        seen[v] = true;
        v = pred[v];
    }
    let mut cycle = vec![v];
    let mut w = pred[v];
    while w != v {
        cycle.push(w);
        w = pred[w];
    }
    cycle.reverse();
    cycle
}

/// Reflexive reachability relation stored as one bitset row per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl ClosureMatrix {
    /// Per-vertex DFS over an arbitrary edge list. Quadratic in space; meant
    /// for verification on small graphs only.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            adj[u].push(v);
        }
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        let mut stack = Vec::new();
        for s in 0..n {
            let row = &mut bits[s * words..(s + 1) * words];
            row[s / 64] |= 1 << (s % 64);
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    let (word, bit) = (w / 64, 1u64 << (w % 64));
                    if row[word] & bit == 0 {
                        row[word] |= bit;
                        stack.push(w);
                    }
                }
            }
        }
        ClosureMatrix { n, words, bits }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn reaches(&self, u: VertexId, v: VertexId) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Number of reachable ordered pairs, diagonal included.
    pub fn pair_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// First pair on which two closures disagree.
    pub fn first_difference(&self, other: &ClosureMatrix) -> Option<(VertexId, VertexId)> {
        if self.n != other.n {
            return Some((self.n.min(other.n), 0));
        }
        (0..self.n)
            .flat_map(|u| (0..self.n).map(move |v| (u, v)))
            .find(|&(u, v)| self.reaches(u, v) != other.reaches(u, v))
    }
}

pub fn transitive_closure(d: &Dag) -> ClosureMatrix {
    ClosureMatrix::from_edges(d.vertex_count(), d.graph().edges().iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Digraph {
        Digraph::from_edges(n, edges.iter().copied()).unwrap().0
    }

    #[test]
    fn normalizes_duplicates_and_loops() {
        let (g, report) = Digraph::from_edges(3, [(0, 1), (0, 1), (1, 1), (1, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(report.duplicate_edges, 1);
        assert_eq!(report.self_loops, 1);
        assert_eq!(report.warnings(), 2);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(
            Digraph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange(0, 2, 2))
        ));
    }

    #[test]
    fn two_cycle_collapses() {
        // 1->2, 2->1, 2->3 with ids 0,1,2
        let d = condense(&graph(3, &[(0, 1), (1, 0), (1, 2)]));
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.graph().edges(), &[(0, 1)]);
        assert_eq!(d.supernode_map(), &[0, 0, 1]);
        assert_eq!(d.graph().label(0), "0+1");
    }

    #[test]
    fn acyclic_condense_is_identity() {
        let g = graph(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let d = condense(&g);
        assert_eq!(d.graph(), &g);
        assert_eq!(d.supernode_map(), &[0, 1, 2, 3]);
    }

    #[test]
    fn triangle_with_chord_is_one_vertex() {
        let d = condense(&graph(3, &[(0, 1), (1, 2), (2, 0), (0, 2)]));
        assert_eq!(d.vertex_count(), 1);
        assert_eq!(d.edge_count(), 0);
    }

    #[test]
    fn chain_order() {
        let d = Dag::new(graph(3, &[(0, 1), (1, 2)])).unwrap();
        let t = topo_sort(&d).unwrap();
        assert_eq!(t.order(), &[0, 1, 2]);
        assert_eq!(t.positions(), &[1, 2, 3]);
    }

    #[test]
    fn isolated_vertices_keep_id_order() {
        let d = Dag::new(graph(2, &[])).unwrap();
        assert_eq!(topo_sort(&d).unwrap().order(), &[0, 1]);
    }

    #[test]
    fn cycle_is_reported() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 1), (2, 3)]);
        match Dag::new(g) {
            Err(GraphError::Cycle(c)) => {
                let mut c = c;
                c.sort();
                assert_eq!(c, vec![1, 2]);
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn from_order_rejects_backward_edge() {
        let g = graph(2, &[(0, 1)]);
        assert!(TopoOrder::from_order(&g, vec![1, 0]).is_err());
        assert!(TopoOrder::from_order(&g, vec![0, 1]).is_ok());
    }

    #[test]
    fn closure_basics() {
        let c = transitive_closure(&Dag::new(graph(3, &[(0, 1), (1, 2)])).unwrap());
        assert!(c.reaches(0, 2));
        assert!(!c.reaches(2, 0));
        assert!(c.reaches(1, 1));

        let empty = transitive_closure(&Dag::new(graph(3, &[])).unwrap());
        assert_eq!(empty.pair_count(), 3);
    }

    #[test]
    fn diamond_closure() {
        let c = transitive_closure(&Dag::new(graph(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])).unwrap());
        assert!(c.reaches(0, 3));
        assert!(!c.reaches(1, 2));
        assert_eq!(c.first_difference(&c), None);
    }
}
