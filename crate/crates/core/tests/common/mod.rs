//! Brute-force oracles, independent of the library's algorithms.
#![allow(dead_code)]

use std::collections::BTreeSet;

use pbdraw::geometry::Point;
use pbdraw::layout::Layout;

/// Floyd-Warshall reachability, reflexive.
pub fn warshall(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for (v, row) in r.iter_mut().enumerate() {
        row[v] = true;
    }
    for &(u, v) in edges {
        r[u][v] = true;
    }
    for k in 0..n {
        let via = r[k].clone();
        for row in r.iter_mut() {
            if row[k] {
                for (cell, &step) in row.iter_mut().zip(&via) {
                    *cell |= step;
                }
            }
        }
    }
    r
}

/// Components as sets of mutually reachable vertices, listed by smallest member.
pub fn brute_scc(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let r = warshall(n, edges);
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for v in 0..n {
        if seen[v] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&w| r[v][w] && r[w][v]).collect();
        for &w in &comp {
            seen[w] = true;
        }
        comps.push(comp);
    }
    comps
}

/// Every topological order, by backtracking.
pub fn all_topo_orders(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    fn go(
        n: usize,
        edges: &[(usize, usize)],
        placed: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if placed.len() == n {
            out.push(placed.clone());
            return;
        }
        for v in 0..n {
            if used[v] || edges.iter().any(|&(a, b)| b == v && !used[a]) {
                continue;
            }
            used[v] = true;
            placed.push(v);
            go(n, edges, placed, used, out);
            placed.pop();
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    go(n, edges, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Minimum number of vertex-disjoint paths covering a DAG, by trying every
/// assignment of at most one successor per vertex with distinct successors.
pub fn exhaustive_min_cover(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut succ = vec![Vec::new(); n];
    for &(u, v) in edges {
        succ[u].push(v);
    }
    fn go(v: usize, succ: &[Vec<usize>], taken: &mut Vec<bool>, links: usize, best: &mut usize) {
        let n = succ.len();
        if v == n {
            *best = (*best).max(links);
            return;
        }
        // remaining vertices can add at most n - v links
        if links + (n - v) <= *best {
            return;
        }
        for &w in &succ[v] {
            if !taken[w] {
                taken[w] = true;
                go(v + 1, succ, taken, links + 1, best);
                taken[w] = false;
            }
        }
        go(v + 1, succ, taken, links, best);
    }
    let mut best = 0;
    go(0, &succ, &mut vec![false; n], 0, &mut best);
    n - best
}

/// Do closed segments `p0-p1` and `q0-q1` share a point? Solved
/// parametrically with exact rationals.
pub fn parametric_meet(p0: Point, p1: Point, q0: Point, q1: Point) -> bool {
    let r = (p1.x - p0.x, p1.y - p0.y);
    let s = (q1.x - q0.x, q1.y - q0.y);
    let qp = (q0.x - p0.x, q0.y - p0.y);
    let rxs = r.0 as i128 * s.1 as i128 - r.1 as i128 * s.0 as i128;
    let qpxs = qp.0 as i128 * s.1 as i128 - qp.1 as i128 * s.0 as i128;
    let qpxr = qp.0 as i128 * r.1 as i128 - qp.1 as i128 * r.0 as i128;
    if rxs != 0 {
        // t = qpxs / rxs, u = qpxr / rxs, both in [0, 1]
        let (t, u, d) = if rxs > 0 {
            (qpxs, qpxr, rxs)
        } else {
            (-qpxs, -qpxr, -rxs)
        };
        return (0..=d).contains(&t) && (0..=d).contains(&u);
    }
    if qpxr != 0 {
        return false; // parallel, not collinear
    }
    // collinear: project q0, q1 onto r and intersect with [0, |r|^2]
    let rr = r.0 as i128 * r.0 as i128 + r.1 as i128 * r.1 as i128;
    let t0 = qp.0 as i128 * r.0 as i128 + qp.1 as i128 * r.1 as i128;
    let t1 = t0 + s.0 as i128 * r.0 as i128 + s.1 as i128 * r.1 as i128;
    let (lo, hi) = (t0.min(t1), t0.max(t1));
    hi >= 0 && lo <= rr
}

/// Crossing count over the raw per-edge segments (no dedup): identical
/// segments are skipped and each geometric pair is recorded once.
pub fn naive_crossings(layout: &Layout) -> usize {
    let coords = layout.coords();
    let raw: Vec<(Point, Point)> = layout
        .edges()
        .iter()
        .flat_map(|e| e.segments(coords))
        .collect();
    let key = |(a, b): (Point, Point)| if a <= b { (a, b) } else { (b, a) };
    let mut pairs = BTreeSet::new();
    for i in 0..raw.len() {
        for j in i + 1..raw.len() {
            let (s, t) = (key(raw[i]), key(raw[j]));
            if s == t {
                continue;
            }
            let shared = [s.0, s.1].iter().any(|p| *p == t.0 || *p == t.1);
            if shared {
                continue;
            }
            if parametric_meet(s.0, s.1, t.0, t.1) {
                pairs.insert(if s < t { (s, t) } else { (t, s) });
            }
        }
    }
    pairs.len()
}

/// Reachability by depth-first search from every vertex, reflexive.
pub fn dfs_closure(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut succ = vec![Vec::new(); n];
    for &(u, v) in edges {
        succ[u].push(v);
    }
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for &w in &succ[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen
        })
        .collect()
}

/// The worked six-vertex example: three paths, seven edges.
pub const FIXTURE_GRAPH: &str = "1 2\n2 3\n4 5\n1 4\n1 5\n2 5\n4 3\n6\n";
pub const FIXTURE_PATHS: &str = "1 2 3\n4 5\n6\n";
pub const FIXTURE_ORDER: [usize; 6] = [0, 3, 1, 4, 2, 5];
