//! Random DAGs with a prescribed density.
//!
//! Completeness is `m / (n(n-1)/2)` in percent. Vertices are ordered by a
//! random permutation and `m` distinct forward pairs are drawn uniformly
//! without replacement, so the result is acyclic by construction.

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Digraph;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("completeness must be in (0, 100], got {0}")]
    InvalidCompleteness(f64),
    #[error("{requested} edges requested but {n} vertices allow at most {max}")]
    TooManyEdges {
        n: usize,
        requested: usize,
        max: usize,
    },
}

pub fn max_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `round(completeness / 100 * n(n-1)/2)`.
pub fn edge_count_for(n: usize, completeness_percent: f64) -> Result<usize, GenError> {
    if !(completeness_percent > 0.0 && completeness_percent <= 100.0) {
        return Err(GenError::InvalidCompleteness(completeness_percent));
    }
    Ok((completeness_percent / 100.0 * max_edges(n) as f64).round() as usize)
}

pub fn completeness_percent(n: usize, m: usize) -> f64 {
    match max_edges(n) {
        0 => 0.0,
        max => 100.0 * m as f64 / max as f64,
    }
}

pub fn gen_random_dag(n: usize, completeness_percent: f64, seed: u64) -> Result<Digraph, GenError> {
    gen_random_dag_with_edges(n, edge_count_for(n, completeness_percent)?, seed)
}

pub fn gen_random_dag_with_edges(n: usize, m: usize, seed: u64) -> Result<Digraph, GenError> {
    let max = max_edges(n);
    if m > max {
        return Err(GenError::TooManyEdges {
            n,
            requested: m,
            max,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let edges = index::sample(&mut rng, max, m).into_iter().map(|t| {
        let (i, j) = unrank_pair(n, t);
        (order[i], order[j])
    });
    let (g, report) = Digraph::from_edges(n, edges).expect("generated ids are in range");
    debug_assert_eq!(report.warnings(), 0);
    Ok(g)
}

/// Row-major rank of pair `(i, j)`, `i < j`, in the strict upper triangle.
fn unrank_pair(n: usize, t: usize) -> (usize, usize) {
    let offset = |i: usize| i * (2 * n - i - 1) / 2;
    // largest i with offset(i) <= t
    let (mut lo, mut hi) = (0, n - 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if offset(mid) <= t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let i = if offset(hi) <= t { hi } else { lo };
    (i, i + 1 + t - offset(i))
}
