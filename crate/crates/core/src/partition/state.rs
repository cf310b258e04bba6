use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, VertexId};
use crate::hash::{RunSeeds, SeededHash};
use crate::stream::StreamEvent;

use super::grid::GridLayout;
use super::replicas::ReplicaSets;
use super::PartitionId;

/// Which degree indicators a greedy score includes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreRule {
    /// `1{k∈A(u)} + 1{k∈A(v)} + balance(k)`
    Plain,
    /// Adds the lower-degree-endpoint indicators using observed in-degrees.
    InDegree,
    /// Adds the indicators using observed in-degree plus known out-degree.
    TotalDegree,
}

/// Outcome of offering one edge to the DegreeIO heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    Assigned(PartitionId),
    Buffered,
}

/// Mutable state of one streaming partitioning run.
///
/// Holds the per-partition loads `|P(k)|`, the replica sets `A(v)`, the
/// degree evidence gathered so far, the DegreeIO buffer and the run's
/// random sources.
#[derive(Debug, Clone)]
pub struct PartitionState {
    partitions: u32,
    edge_counts: Vec<u64>,
    replicas: ReplicaSets,
    in_degree: Vec<u32>,
    out_degree: Vec<Option<u32>>,
    buffer: Vec<Vec<Edge>>,
    buffered: usize,
    assigned_total: u64,
    max_count: u64,
    edge_hash: SeededHash,
    vertex_hash: SeededHash,
    row_hash: SeededHash,
    col_hash: SeededHash,
    grid: GridLayout,
    rng: ChaCha8Rng,
    ties: Vec<u32>,
}

impl PartitionState {
    pub fn new(partitions: u32, seed: u64, vertex_count: usize) -> Result<Self> {
        if partitions == 0 {
            return Err(Error::NoPartitions);
        }
        let seeds = RunSeeds::derive(seed);
        Ok(Self {
            partitions,
            edge_counts: vec![0; partitions as usize],
            replicas: ReplicaSets::new(vertex_count, partitions),
            in_degree: vec![0; vertex_count],
            out_degree: vec![None; vertex_count],
            buffer: vec![Vec::new(); vertex_count],
            buffered: 0,
            assigned_total: 0,
            max_count: 0,
            edge_hash: SeededHash::new(seeds.edge_hash),
            vertex_hash: SeededHash::new(seeds.vertex_hash),
            row_hash: SeededHash::new(seeds.grid_row_hash),
            col_hash: SeededHash::new(seeds.grid_col_hash),
            grid: GridLayout::for_partitions(partitions),
            rng: ChaCha8Rng::seed_from_u64(seeds.tie_rng),
            ties: Vec::with_capacity(partitions as usize),
        })
    }

    pub fn partitions(&self) -> u32 {
        self.partitions
    }

    pub fn vertex_count(&self) -> usize {
        self.in_degree.len()
    }

    pub fn edge_counts(&self) -> &[u64] {
        &self.edge_counts
    }

    pub fn assigned_total(&self) -> u64 {
        self.assigned_total
    }

    pub fn max_edges(&self) -> u64 {
        self.max_count
    }

    pub fn min_edges(&self) -> u64 {
        self.edge_counts.iter().copied().min().unwrap_or(0)
    }

    pub fn replicas(&self) -> &ReplicaSets {
        &self.replicas
    }

    pub fn replica_count(&self, v: VertexId) -> u32 {
        self.replicas.len(v)
    }

    pub fn grid(&self) -> GridLayout {
        self.grid
    }

    pub fn buffered_len(&self) -> usize {
        self.buffered
    }

    pub fn observed_in_degree(&self, v: VertexId) -> u32 {
        self.in_degree[v.index()]
    }

    /// Out-degree of `v`, known only once `v`'s stream event has arrived.
    pub fn known_out_degree(&self, v: VertexId) -> Option<u32> {
        self.out_degree[v.index()]
    }

    pub fn has_arrived(&self, v: VertexId) -> bool {
        self.out_degree[v.index()].is_some()
    }

    /// Observed in-degree plus known out-degree (zero until arrival).
    pub fn observed_total_degree(&self, v: VertexId) -> u32 {
        self.in_degree[v.index()] + self.out_degree[v.index()].unwrap_or(0)
    }

    /// `(maxedges - |P(k)|) / (maxedges - minedges + 1)`
    pub fn balance_score(&self, k: PartitionId) -> f64 {
        let max = self.max_edges();
        let min = self.min_edges();
        (max - self.edge_counts[k.0 as usize]) as f64 / (max - min + 1) as f64
    }

    /// Full floating-point score of partition `k` for edge `e` under `rule`.
    /// Assignment never evaluates this directly; it exists for inspection.
    pub fn greedy_score(&self, k: PartitionId, e: Edge, rule: ScoreRule) -> f64 {
        let in_u = self.replicas.contains(e.source, k);
        let in_v = self.replicas.contains(e.target, k);
        let mut score = in_u as u32 + in_v as u32;
        if let Some((du, dv)) = self.rule_degrees(e, rule) {
            score += (in_u && du <= dv) as u32 + (in_v && dv <= du) as u32;
        }
        score as f64 + self.balance_score(k)
    }

    /// Whether the imbalance guard forces a pure balance choice:
    /// `max_k |P(k)| / (assigned_total / p) >= 1.1`, skipped until
    /// `assigned_total >= p`.
    pub fn guard_active(&self) -> bool {
        let total = self.assigned_total as u128;
        let p = self.partitions as u128;
        total >= p && 10 * self.max_edges() as u128 * p >= 11 * total
    }

    pub fn assign_random(&mut self, e: Edge) -> PartitionId {
        let h = self
            .edge_hash
            .hash_pair(e.source.0 as u64, e.target.0 as u64);
        let k = PartitionId((h % self.partitions as u64) as u32);
        self.place(e, k);
        k
    }

    pub fn grid_cell(&self, v: VertexId) -> (u32, u32) {
        (
            self.row_hash.bucket(v.0 as u64, self.grid.rows),
            self.col_hash.bucket(v.0 as u64, self.grid.cols),
        )
    }

    pub fn assign_grid(&mut self, e: Edge) -> PartitionId {
        let cu = self.grid_cell(e.source);
        let cv = self.grid_cell(e.target);
        let mut ties = std::mem::take(&mut self.ties);
        self.grid.shared_into(cu, cv, &mut ties);
        let k = self.pick(&ties);
        self.ties = ties;
        self.place(e, k);
        k
    }

    pub fn assign_balance(&mut self, e: Edge) -> PartitionId {
        let k = self.choose_greedy(e, ScoreRule::Plain);
        self.place(e, k);
        k
    }

    /// Hashes the endpoint with the smaller degree in `degrees` (ties pick the
    /// source).
    pub fn assign_random_degree(&mut self, e: Edge, degrees: &[u32]) -> Result<PartitionId> {
        let need = e.source.index().max(e.target.index()) + 1;
        if degrees.len() < need {
            return Err(Error::MissingDegrees {
                expected: need,
                actual: degrees.len(),
            });
        }
        let lower = if degrees[e.source.index()] <= degrees[e.target.index()] {
            e.source
        } else {
            e.target
        };
        let k = PartitionId(self.vertex_hash.bucket(lower.0 as u64, self.partitions));
        self.place(e, k);
        Ok(k)
    }

    pub fn assign_degree(&mut self, e: Edge) -> PartitionId {
        self.in_degree[e.target.index()] += 1;
        let k = self.choose_greedy(e, ScoreRule::InDegree);
        self.place(e, k);
        k
    }

    /// DegreeIO for an out-edge of an arrived source. Edges from a source with
    /// out-degree `>= p` towards a target that has not arrived yet are held
    /// until the target's event.
    pub fn assign_degree_io(&mut self, e: Edge) -> Placement {
        self.in_degree[e.target.index()] += 1;
        let source_out = self.out_degree[e.source.index()].unwrap_or(0);
        let target_known = self.has_arrived(e.target);
        if source_out >= self.partitions && !target_known {
            self.buffer[e.target.index()].push(e);
            self.buffered += 1;
            return Placement::Buffered;
        }
        let rule = if target_known {
            ScoreRule::TotalDegree
        } else {
            ScoreRule::InDegree
        };
        let k = self.choose_greedy(e, rule);
        self.place(e, k);
        Placement::Assigned(k)
    }

    /// Records the arriving vertex's out-degree, drains edges waiting on it,
    /// then offers its own out-edges to DegreeIO in event order.
    pub fn on_vertex_arrival(&mut self, event: &StreamEvent) -> Vec<(Edge, PartitionId)> {
        let v = event.vertex;
        self.out_degree[v.index()] = Some(event.out_edges.len() as u32);
        let mut emitted = self.drain_buffer(v);
        for &e in &event.out_edges {
            if let Placement::Assigned(k) = self.assign_degree_io(e) {
                emitted.push((e, k));
            }
        }
        emitted
    }

    /// Assigns every still-buffered edge, in ascending awaited-vertex order.
    /// Vertices that never arrived count with out-degree zero.
    pub fn flush_stream(&mut self) -> Vec<(Edge, PartitionId)> {
        let mut emitted = Vec::with_capacity(self.buffered);
        for v in 0..self.buffer.len() {
            if !self.buffer[v].is_empty() {
                emitted.extend(self.drain_buffer(VertexId(v as u32)));
            }
        }
        emitted
    }

    fn drain_buffer(&mut self, v: VertexId) -> Vec<(Edge, PartitionId)> {
        let pending = std::mem::take(&mut self.buffer[v.index()]);
        self.buffered -= pending.len();
        pending
            .into_iter()
            .map(|e| {
                let k = self.choose_greedy(e, ScoreRule::TotalDegree);
                self.place(e, k);
                (e, k)
            })
            .collect()
    }

    fn rule_degrees(&self, e: Edge, rule: ScoreRule) -> Option<(u32, u32)> {
        match rule {
            ScoreRule::Plain => None,
            ScoreRule::InDegree => Some((
                self.observed_in_degree(e.source),
                self.observed_in_degree(e.target),
            )),
            ScoreRule::TotalDegree => Some((
                self.observed_total_degree(e.source),
                self.observed_total_degree(e.target),
            )),
        }
    }

    // Scores are integer indicator counts plus balance(k) in [0, 1), and
    // balance strictly decreases with |P(k)|. Comparing (indicators, -|P(k)|)
    // lexicographically therefore selects exactly the argmax set of the full
    // score. Any partition in A(u) ∪ A(v) has at least one indicator set, so
    // when that union is non-empty only its members can win.
    fn choose_greedy(&mut self, e: Edge, rule: ScoreRule) -> PartitionId {
        let mut ties = std::mem::take(&mut self.ties);
        ties.clear();
        let union_empty = self.replicas.is_empty(e.source) && self.replicas.is_empty(e.target);
        if self.guard_active() || union_empty {
            let min = self.min_edges();
            ties.extend((0..self.partitions).filter(|&k| self.edge_counts[k as usize] == min));
        } else {
            let degrees = self.rule_degrees(e, rule);
            let mut best = (0u32, u64::MAX);
            for k in self.replicas.union_iter(e.source, e.target) {
                let in_u = self.replicas.contains(e.source, k);
                let in_v = self.replicas.contains(e.target, k);
                let mut bonus = in_u as u32 + in_v as u32;
                if let Some((du, dv)) = degrees {
                    bonus += (in_u && du <= dv) as u32 + (in_v && dv <= du) as u32;
                }
                let count = self.edge_counts[k.0 as usize];
                if bonus > best.0 || (bonus == best.0 && count < best.1) {
                    best = (bonus, count);
                    ties.clear();
                    ties.push(k.0);
                } else if bonus == best.0 && count == best.1 {
                    ties.push(k.0);
                }
            }
        }
        let k = self.pick(&ties);
        self.ties = ties;
        k
    }

    fn pick(&mut self, candidates: &[u32]) -> PartitionId {
        debug_assert!(!candidates.is_empty());
        if candidates.len() == 1 {
            PartitionId(candidates[0])
        } else {
            PartitionId(candidates[self.rng.gen_range(0..candidates.len())])
        }
    }

    fn place(&mut self, e: Edge, k: PartitionId) {
        let count = &mut self.edge_counts[k.0 as usize];
        *count += 1;
        self.max_count = self.max_count.max(*count);
        self.assigned_total += 1;
        self.replicas.insert(e.source, k);
        self.replicas.insert(e.target, k);
    }

    #[cfg(test)]
    pub(crate) fn seed_layout(&mut self, counts: &[u64], replicas: &[(u32, &[u32])]) {
        self.edge_counts.copy_from_slice(counts);
        self.max_count = counts.iter().copied().max().unwrap_or(0);
        self.assigned_total = counts.iter().sum();
        for &(v, ks) in replicas {
            for &k in ks {
                self.replicas.insert(VertexId(v), PartitionId(k));
            }
        }
    }

    #[cfg(test)]
    pub(crate) fn set_out_degree(&mut self, v: VertexId, d: u32) {
        self.out_degree[v.index()] = Some(d);
    }

    #[cfg(test)]
    pub(crate) fn set_in_degree(&mut self, v: VertexId, d: u32) {
        self.in_degree[v.index()] = d;
    }
}
