//! Straightforward re-implementation of every heuristic for cross-checking.
//!
//! Nothing is cached between steps: replica sets, loads, degrees and the
//! imbalance ratio are recomputed from the assignment history each time, and
//! greedy choices evaluate the floating-point score of every partition.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use streamcut_core::hash::{RunSeeds, SeededHash};
use streamcut_core::{Algorithm, Edge, Graph, StreamEvent};

pub struct Reference {
    p: u32,
    assigned: Vec<(Edge, u32)>,
    seen: Vec<Edge>,
    arrived: BTreeMap<u32, u32>,
    edge_hash: SeededHash,
    vertex_hash: SeededHash,
    row_hash: SeededHash,
    col_hash: SeededHash,
    rng: ChaCha8Rng,
}

#[derive(Clone, Copy)]
enum Degrees {
    None,
    In,
    Total,
}

impl Reference {
    fn new(p: u32, seed: u64) -> Self {
        let seeds = RunSeeds::derive(seed);
        Self {
            p,
            assigned: Vec::new(),
            seen: Vec::new(),
            arrived: BTreeMap::new(),
            edge_hash: SeededHash::new(seeds.edge_hash),
            vertex_hash: SeededHash::new(seeds.vertex_hash),
            row_hash: SeededHash::new(seeds.grid_row_hash),
            col_hash: SeededHash::new(seeds.grid_col_hash),
            rng: ChaCha8Rng::seed_from_u64(seeds.tie_rng),
        }
    }

    fn load(&self, k: u32) -> u64 {
        self.assigned.iter().filter(|(_, j)| *j == k).count() as u64
    }

    fn holds(&self, v: u32, k: u32) -> bool {
        self.assigned
            .iter()
            .any(|(e, j)| *j == k && (e.source.0 == v || e.target.0 == v))
    }

    fn in_seen(&self, v: u32) -> u32 {
        self.seen.iter().filter(|e| e.target.0 == v).count() as u32
    }

    fn degree(&self, v: u32, kind: Degrees) -> u32 {
        match kind {
            Degrees::None => 0,
            Degrees::In => self.in_seen(v),
            Degrees::Total => self.in_seen(v) + self.arrived.get(&v).copied().unwrap_or(0),
        }
    }

    fn pick(&mut self, candidates: &[u32]) -> u32 {
        if candidates.len() == 1 {
            candidates[0]
        } else {
            candidates[self.rng.gen_range(0..candidates.len())]
        }
    }

    fn guard(&self) -> bool {
        let total = self.assigned.len() as f64;
        if total < self.p as f64 {
            return false;
        }
        let max = (0..self.p).map(|k| self.load(k)).max().unwrap() as f64;
        max / (total / self.p as f64) >= 1.1
    }

    fn balance(&self, k: u32) -> f64 {
        let loads: Vec<u64> = (0..self.p).map(|j| self.load(j)).collect();
        let max = *loads.iter().max().unwrap();
        let min = *loads.iter().min().unwrap();
        (max - loads[k as usize]) as f64 / (max - min + 1) as f64
    }

    fn greedy(&mut self, e: Edge, kind: Degrees) -> u32 {
        let guard = self.guard();
        let (u, v) = (e.source.0, e.target.0);
        let (du, dv) = (self.degree(u, kind), self.degree(v, kind));
        let with_degrees = !matches!(kind, Degrees::None);
        let scores: Vec<f64> = (0..self.p)
            .map(|k| {
                if guard {
                    return self.balance(k);
                }
                let mut s = 0.0;
                if self.holds(u, k) {
                    s += 1.0;
                    if with_degrees && du <= dv {
                        s += 1.0;
                    }
                }
                if self.holds(v, k) {
                    s += 1.0;
                    if with_degrees && dv <= du {
                        s += 1.0;
                    }
                }
                s + self.balance(k)
            })
            .collect();
        let best = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let ties: Vec<u32> = (0..self.p)
            .filter(|&k| scores[k as usize] == best)
            .collect();
        self.pick(&ties)
    }

    fn grid(&mut self, e: Edge) -> u32 {
        // most square factorisation rows x cols with rows <= cols
        let (rows, cols) = (1..=self.p)
            .filter(|r| self.p % r == 0 && r * r <= self.p)
            .map(|r| (r, self.p / r))
            .min_by_key(|&(r, c)| c - r)
            .unwrap();
        let cell = |v: u32| {
            (
                (self.row_hash.hash(v as u64) % rows as u64) as u32,
                (self.col_hash.hash(v as u64) % cols as u64) as u32,
            )
        };
        let (cu, cv) = (cell(e.source.0), cell(e.target.0));
        let in_cell = |c: (u32, u32), k: u32| k / cols == c.0 || k % cols == c.1;
        let shared: Vec<u32> = (0..self.p)
            .filter(|&k| in_cell(cu, k) && in_cell(cv, k))
            .collect();
        self.pick(&shared)
    }

    fn place(&mut self, e: Edge, k: u32) -> (Edge, u32) {
        self.assigned.push((e, k));
        (e, k)
    }
}

/// Runs `algorithm` over `stream` and returns `(edge, partition)` in
/// assignment order.
pub fn simulate(
    graph: &Graph,
    stream: &[StreamEvent],
    algorithm: Algorithm,
    p: u32,
    seed: u64,
) -> Vec<(Edge, u32)> {
    let mut r = Reference::new(p, seed);
    let mut out = Vec::new();
    let degree = |v: u32| {
        graph
            .edges()
            .iter()
            .map(|e| (e.source.0 == v) as u32 + (e.target.0 == v) as u32)
            .sum::<u32>()
    };
    let mut waiting: BTreeMap<u32, Vec<Edge>> = BTreeMap::new();

    for event in stream {
        let v = event.vertex.0;
        if algorithm == Algorithm::DegreeIo {
            r.arrived.insert(v, event.out_edges.len() as u32);
            for e in waiting.remove(&v).unwrap_or_default() {
                let k = r.greedy(e, Degrees::Total);
                out.push(r.place(e, k));
            }
        }
        for &e in &event.out_edges {
            let (s, t) = (e.source.0, e.target.0);
            let k = match algorithm {
                Algorithm::Random => (r.edge_hash.hash_pair(s as u64, t as u64) % p as u64) as u32,
                Algorithm::Grid => r.grid(e),
                Algorithm::Balance => r.greedy(e, Degrees::None),
                Algorithm::RandomDegree => {
                    let lower = if degree(s) <= degree(t) { s } else { t };
                    (r.vertex_hash.hash(lower as u64) % p as u64) as u32
                }
                Algorithm::Degree => {
                    r.seen.push(e);
                    r.greedy(e, Degrees::In)
                }
                Algorithm::DegreeIo => {
                    r.seen.push(e);
                    let source_out = r.arrived[&s];
                    let target_known = r.arrived.contains_key(&t);
                    if source_out >= p && !target_known {
                        waiting.entry(t).or_default().push(e);
                        continue;
                    }
                    r.greedy(
                        e,
                        if target_known {
                            Degrees::Total
                        } else {
                            Degrees::In
                        },
                    )
                }
            };
            out.push(r.place(e, k));
        }
    }
    for (_, edges) in std::mem::take(&mut waiting) {
        for e in edges {
            let k = r.greedy(e, Degrees::Total);
            out.push(r.place(e, k));
        }
    }
    out
}
