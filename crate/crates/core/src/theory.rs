//! Closed-form replication-factor predictions for hash-based placement.
//!
//! For degree-aware hashing every edge is placed by the hash of its
//! lower-degree endpoint. A vertex `v` keeps all edges on which it is the
//! lower-degree side together, and its remaining `(1 - Ratio(v)) * D(v)` edges
//! land on hashed partitions of its neighbours, giving
//!
//! ```text
//! E[λ] = 1 + (p - 1)/|V| * Σ_v (1 - (1 - 1/p)^((1 - Ratio(v)) * D(v)))
//! ```
//!
//! Plain edge hashing is the `Ratio ≡ 0` case. Degrees are undirected and
//! `|V|` counts vertices with at least one incident edge, matching
//! [`crate::metrics::replication_factor`].

use crate::graph::{Graph, VertexId};

/// `Ratio(v)`: fraction of `v`'s incident edges whose other endpoint has
/// degree at least `D(v)`. Isolated vertices get 0.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioTable {
    ratios: Vec<f64>,
}

impl RatioTable {
    pub fn get(&self, v: VertexId) -> f64 {
        self.ratios[v.index()]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.ratios
    }
}

pub fn compute_ratio_table(graph: &Graph) -> RatioTable {
    let degree = graph.degree_table();
    let mut hits = vec![0u64; graph.vertex_count()];
    for e in graph.edges() {
        let (a, b) = (e.source.index(), e.target.index());
        if degree[a] <= degree[b] {
            hits[a] += 1;
        }
        if degree[b] <= degree[a] {
            hits[b] += 1;
        }
    }
    let ratios = hits
        .iter()
        .zip(&degree)
        .map(|(&h, &d)| if d == 0 { 0.0 } else { h as f64 / d as f64 })
        .collect();
    RatioTable { ratios }
}

/// Expected replication factor of degree-aware hashing on `p` partitions.
pub fn predict_random_degree(graph: &Graph, p: u32) -> f64 {
    let ratios = compute_ratio_table(graph);
    predict_with(graph, p, |v| 1.0 - ratios.get(v))
}

/// Expected replication factor of plain edge hashing on `p` partitions.
pub fn predict_random(graph: &Graph, p: u32) -> f64 {
    predict_with(graph, p, |_| 1.0)
}

fn predict_with(graph: &Graph, p: u32, spread_fraction: impl Fn(VertexId) -> f64) -> f64 {
    assert!(p >= 1, "partition count must be at least 1");
    let stay = 1.0 - 1.0 / p as f64;
    let (sum, touched) = graph
        .vertices()
        .filter(|&v| graph.total_degree(v) > 0)
        .fold((0.0, 0usize), |(sum, n), v| {
            let exponent = spread_fraction(v) * graph.total_degree(v) as f64;
            (sum + (1.0 - stay.powf(exponent)), n + 1)
        });
    if touched == 0 {
        return 1.0;
    }
    1.0 + (p - 1) as f64 / touched as f64 * sum
}
