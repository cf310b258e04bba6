//! Vertex-arrival streams.
//!
//! A stream is a sequence of [`StreamEvent`]s; each event is one vertex
//! arriving with all of its out-edges, shuffled. Every vertex of the graph
//! produces exactly one event, including vertices without out-edges.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{Edge, Graph, VertexId};
use crate::hash::SeededHash;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamEvent {
    pub vertex: VertexId,
    pub out_edges: Vec<Edge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Rnd,
    Bfs,
    Dfs,
}

impl OrderKind {
    pub const ALL: [OrderKind; 3] = [OrderKind::Rnd, OrderKind::Bfs, OrderKind::Dfs];

    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Rnd => "rnd",
            OrderKind::Bfs => "bfs",
            OrderKind::Dfs => "dfs",
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rnd" | "random" => Ok(OrderKind::Rnd),
            "bfs" => Ok(OrderKind::Bfs),
            "dfs" => Ok(OrderKind::Dfs),
            _ => Err(format!("unknown order {s:?} (expected rnd, bfs or dfs)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamOrder {
    pub kind: OrderKind,
    pub seed: u64,
}

impl StreamOrder {
    pub fn new(kind: OrderKind, seed: u64) -> Self {
        Self { kind, seed }
    }
}

/// Builds the stream for `graph` in the given order.
///
/// BFS and DFS start from a seeded-random vertex and walk the undirected view
/// of the graph; when a component is exhausted they restart from the lowest
/// unvisited id.
pub fn build_stream(graph: &Graph, order: StreamOrder) -> Vec<StreamEvent> {
    let n = graph.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SeededHash::new(order.seed).hash(0));
    let vertices = match order.kind {
        OrderKind::Rnd => {
            let mut perm: Vec<VertexId> = graph.vertices().collect();
            perm.shuffle(&mut rng);
            perm
        }
        OrderKind::Bfs | OrderKind::Dfs => {
            let start = VertexId(rng.gen_range(0..n as u32));
            traversal_order(graph, order.kind, start)
        }
    };
    events_for(graph, &vertices, order.seed)
}

/// Same as [`build_stream`] for BFS/DFS but with an explicit start vertex.
/// For `Rnd` the start is ignored.
pub fn build_stream_from(graph: &Graph, order: StreamOrder, start: VertexId) -> Vec<StreamEvent> {
    match order.kind {
        OrderKind::Rnd => build_stream(graph, order),
        kind => {
            let vertices = traversal_order(graph, kind, start);
            events_for(graph, &vertices, order.seed)
        }
    }
}

/// Vertex visiting order of a BFS or DFS over the undirected view.
pub fn traversal_order(graph: &Graph, kind: OrderKind, start: VertexId) -> Vec<VertexId> {
    let n = graph.vertex_count();
    let adj = graph.undirected_adjacency();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut next_unvisited = 0usize;
    let mut root = Some(start);

    while let Some(r) = root {
        match kind {
            OrderKind::Dfs => dfs_component(&adj, r, &mut visited, &mut order),
            _ => bfs_component(&adj, r, &mut visited, &mut order),
        }
        while next_unvisited < n && visited[next_unvisited] {
            next_unvisited += 1;
        }
        root = (next_unvisited < n).then_some(VertexId(next_unvisited as u32));
    }
    order
}

fn bfs_component(
    adj: &[Vec<VertexId>],
    root: VertexId,
    visited: &mut [bool],
    order: &mut Vec<VertexId>,
) {
    let mut queue = VecDeque::new();
    visited[root.index()] = true;
    queue.push_back(root);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &adj[v.index()] {
            if !visited[w.index()] {
                visited[w.index()] = true;
                queue.push_back(w);
            }
        }
    }
}

// Iterative preorder DFS equivalent to the recursive one: neighbors are
// explored in adjacency order.
fn dfs_component(
    adj: &[Vec<VertexId>],
    root: VertexId,
    visited: &mut [bool],
    order: &mut Vec<VertexId>,
) {
    visited[root.index()] = true;
    order.push(root);
    let mut stack = vec![(root, 0usize)];
    while let Some((v, cursor)) = stack.last_mut() {
        let neighbors = &adj[v.index()];
        match neighbors[*cursor..]
            .iter()
            .position(|w| !visited[w.index()])
        {
            Some(offset) => {
                let w = neighbors[*cursor + offset];
                *cursor += offset + 1;
                visited[w.index()] = true;
                order.push(w);
                stack.push((w, 0));
            }
            None => {
                stack.pop();
            }
        }
    }
}

fn events_for(graph: &Graph, vertices: &[VertexId], seed: u64) -> Vec<StreamEvent> {
    let shuffle_hash = SeededHash::new(seed ^ 0x005e_ed0f_ed9e);
    vertices
        .iter()
        .map(|&v| {
            let mut out_edges: Vec<Edge> = graph.out_edges(v).collect();
            if out_edges.len() > 1 {
                let mut rng = ChaCha8Rng::seed_from_u64(shuffle_hash.hash(v.0 as u64));
                out_edges.shuffle(&mut rng);
            }
            StreamEvent {
                vertex: v,
                out_edges,
            }
        })
        .collect()
}
