//! Single-pass vertex-cut partitioning.
//!
//! Six heuristics share one [`PartitionState`]: hashed placement
//! ([`Algorithm::Random`]), grid-constrained hashing ([`Algorithm::Grid`]),
//! the balance-guarded greedy baseline ([`Algorithm::Balance`]), offline
//! degree-aware hashing ([`Algorithm::RandomDegree`]) and the two greedy
//! degree-aware streaming heuristics ([`Algorithm::Degree`],
//! [`Algorithm::DegreeIo`]).

mod grid;
mod replicas;
mod state;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::stream::StreamEvent;

pub use grid::GridLayout;
pub use replicas::ReplicaSets;
pub use state::{PartitionState, Placement, ScoreRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionId(pub u32);

impl fmt::Display for PartitionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Random,
    Grid,
    Balance,
    RandomDegree,
    Degree,
    DegreeIo,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Random,
        Algorithm::Grid,
        Algorithm::Balance,
        Algorithm::RandomDegree,
        Algorithm::Degree,
        Algorithm::DegreeIo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Random => "random",
            Algorithm::Grid => "grid",
            Algorithm::Balance => "balance",
            Algorithm::RandomDegree => "random-degree",
            Algorithm::Degree => "degree",
            Algorithm::DegreeIo => "degree-io",
        }
    }

    /// Needs the full degree table of the graph up front.
    pub fn needs_degree_table(self) -> bool {
        self == Algorithm::RandomDegree
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == lower)
            .or(match lower.as_str() {
                "powergraph" => Some(Algorithm::Balance),
                "degreeio" | "degree_io" => Some(Algorithm::DegreeIo),
                "random_degree" | "randomdegree" => Some(Algorithm::RandomDegree),
                _ => None,
            })
            .ok_or_else(|| {
                format!(
                    "unknown algorithm {s:?} (expected one of random, grid, balance, \
                     random-degree, degree, degree-io)"
                )
            })
    }
}

/// Edge-to-partition mapping in assignment order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AssignmentLog {
    entries: Vec<(Edge, PartitionId)>,
}

impl AssignmentLog {
    pub fn with_capacity(n: usize) -> Self {
        Self {
            entries: Vec::with_capacity(n),
        }
    }

    pub fn push(&mut self, edge: Edge, k: PartitionId) {
        self.entries.push((edge, k));
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Edge, PartitionId)] {
        &self.entries
    }

    /// One `source target partition` line per edge, with external labels.
    pub fn write_text<W: Write>(&self, graph: &Graph, mut out: W) -> Result<()> {
        for (e, k) in &self.entries {
            writeln!(
                out,
                "{} {} {}",
                graph.label(e.source),
                graph.label(e.target),
                k
            )?;
        }
        out.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSpec {
    pub algorithm: Algorithm,
    pub partitions: u32,
    pub seed: u64,
}

impl RunSpec {
    pub fn new(algorithm: Algorithm, partitions: u32, seed: u64) -> Self {
        Self {
            algorithm,
            partitions,
            seed,
        }
    }
}

/// Drives one heuristic over a stream, one event at a time.
#[derive(Debug)]
pub struct Partitioner<'d> {
    algorithm: Algorithm,
    state: PartitionState,
    log: AssignmentLog,
    degrees: Option<&'d [u32]>,
}

impl<'d> Partitioner<'d> {
    pub fn new(spec: RunSpec, vertex_count: usize, degrees: Option<&'d [u32]>) -> Result<Self> {
        if spec.algorithm.needs_degree_table() {
            let actual = degrees.map_or(0, <[u32]>::len);
            if actual < vertex_count {
                return Err(Error::MissingDegrees {
                    expected: vertex_count,
                    actual,
                });
            }
        }
        Ok(Self {
            algorithm: spec.algorithm,
            state: PartitionState::new(spec.partitions, spec.seed, vertex_count)?,
            log: AssignmentLog::default(),
            degrees,
        })
    }

    pub fn state(&self) -> &PartitionState {
        &self.state
    }

    pub fn log(&self) -> &AssignmentLog {
        &self.log
    }

    pub fn process(&mut self, event: &StreamEvent) -> Result<()> {
        let state = &mut self.state;
        match self.algorithm {
            Algorithm::DegreeIo => {
                for (e, k) in state.on_vertex_arrival(event) {
                    self.log.push(e, k);
                }
            }
            Algorithm::RandomDegree => {
                let degrees = self.degrees.unwrap_or_default();
                for &e in &event.out_edges {
                    let k = state.assign_random_degree(e, degrees)?;
                    self.log.push(e, k);
                }
            }
            algorithm => {
                for &e in &event.out_edges {
                    let k = match algorithm {
                        Algorithm::Random => state.assign_random(e),
                        Algorithm::Grid => state.assign_grid(e),
                        Algorithm::Balance => state.assign_balance(e),
                        _ => state.assign_degree(e),
                    };
                    self.log.push(e, k);
                }
            }
        }
        Ok(())
    }

    /// Flushes the DegreeIO buffer and hands back the log and final state.
    pub fn finish(mut self) -> (AssignmentLog, PartitionState) {
        for (e, k) in self.state.flush_stream() {
            self.log.push(e, k);
        }
        (self.log, self.state)
    }
}

/// Runs one heuristic over a full stream.
pub fn run_partition(
    stream: &[StreamEvent],
    vertex_count: usize,
    spec: RunSpec,
    degrees: Option<&[u32]>,
) -> Result<(AssignmentLog, PartitionState)> {
    let mut partitioner = Partitioner::new(spec, vertex_count, degrees)?;
    partitioner.log = AssignmentLog::with_capacity(stream.iter().map(|e| e.out_edges.len()).sum());
    for event in stream {
        partitioner.process(event)?;
    }
    Ok(partitioner.finish())
}

/// [`run_partition`] over `graph`, supplying its degree table when needed.
pub fn run_on_graph(
    graph: &Graph,
    stream: &[StreamEvent],
    spec: RunSpec,
) -> Result<(AssignmentLog, PartitionState)> {
    let degrees = spec
        .algorithm
        .needs_degree_table()
        .then(|| graph.degree_table());
    run_partition(stream, graph.vertex_count(), spec, degrees.as_deref())
}
