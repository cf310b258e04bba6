//! Streaming vertex-cut partitioning for power-law graphs.
//!
//! Edges arrive grouped by source vertex ([`stream`]) and are assigned to one
//! of `p` partitions in a single pass ([`partition`]). [`metrics`] scores the
//! result, [`theory`] predicts what hash-based placement should achieve and
//! [`synth`] generates Zipf-degree test graphs.

pub mod error;
pub mod graph;
pub mod hash;
pub mod metrics;
pub mod partition;
pub mod stream;
pub mod synth;
pub mod theory;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, VertexId};
pub use metrics::{imbalance_factor, improvement, replication_factor, MetricsReport};
pub use partition::{
    run_on_graph, run_partition, Algorithm, AssignmentLog, PartitionId, PartitionState, Placement,
    RunSpec,
};
pub use stream::{build_stream, OrderKind, StreamEvent, StreamOrder};
pub use synth::{generate, SyntheticSpec, Zipf};
pub use theory::{compute_ratio_table, predict_random, predict_random_degree, RatioTable};
