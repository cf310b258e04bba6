//! Replication factor, imbalance factor and improvement over a baseline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{Algorithm, PartitionState};
use crate::stream::OrderKind;

/// Mean `|A(v)|` over vertices holding at least one replica. Vertices that
/// never received an edge are left out of the denominator.
pub fn replication_factor(state: &PartitionState) -> Result<f64> {
    let replicas = state.replicas();
    let (sum, touched) = (0..replicas.vertex_count() as u32)
        .map(|v| replicas.len(crate::graph::VertexId(v)) as u64)
        .filter(|&c| c > 0)
        .fold((0u64, 0u64), |(s, n), c| (s + c, n + 1));
    if touched == 0 {
        return Err(Error::NoAssignments);
    }
    Ok(sum as f64 / touched as f64)
}

/// `p * max_k |P(k)| / |E|`
pub fn imbalance_factor(state: &PartitionState) -> Result<f64> {
    let total = state.assigned_total();
    if total == 0 {
        return Err(Error::NoAssignments);
    }
    Ok(state.partitions() as f64 * state.max_edges() as f64 / total as f64)
}

/// Relative reduction of the replication factor against a baseline, in
/// percent. Negative when the algorithm replicates more than the baseline.
pub fn improvement(lambda_baseline: f64, lambda_alg: f64) -> Result<f64> {
    if !(lambda_baseline > 0.0) {
        return Err(Error::NonPositiveBaseline(lambda_baseline));
    }
    Ok((lambda_baseline - lambda_alg) / lambda_baseline * 100.0)
}

/// One run's quality numbers. Field names double as the CSV header.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub algorithm: Algorithm,
    pub order: OrderKind,
    pub p: u32,
    pub seed: u64,
    #[serde(rename = "lambda")]
    pub replication_factor: f64,
    #[serde(rename = "rho")]
    pub imbalance_factor: f64,
    pub improvement_pct: f64,
    pub runtime_ms: Option<u64>,
}

impl MetricsReport {
    pub const CSV_HEADER: &'static str =
        "algorithm,order,p,seed,lambda,rho,improvement_pct,runtime_ms";

    /// Report for a finished run; `improvement_pct` is measured against
    /// `lambda_baseline`.
    pub fn from_state(
        state: &PartitionState,
        algorithm: Algorithm,
        order: OrderKind,
        seed: u64,
        lambda_baseline: f64,
    ) -> Result<Self> {
        let lambda = replication_factor(state)?;
        Ok(Self {
            algorithm,
            order,
            p: state.partitions(),
            seed,
            replication_factor: lambda,
            imbalance_factor: imbalance_factor(state)?,
            improvement_pct: improvement(lambda_baseline, lambda)?,
            runtime_ms: None,
        })
    }
}
