//! Directed edge-list graphs with per-vertex degree tables.
//!
//! External vertex labels may be sparse; internally every vertex gets a dense
//! [`VertexId`] assigned in ascending label order, so "lowest id" and "lowest
//! label" coincide.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
}

impl Edge {
    pub fn new(source: u32, target: u32) -> Self {
        Self {
            source: VertexId(source),
            target: VertexId(target),
        }
    }

    pub fn is_self_loop(&self) -> bool {
        self.source == self.target
    }
}

/// Immutable graph: edge sequence (duplicates and self-loops kept), out-edge
/// index and degree tables. Degrees follow the undirected convention
/// `total = in + out`, so a self-loop adds 2 to its vertex.
#[derive(Debug, Clone)]
pub struct Graph {
    labels: Vec<u64>,
    edges: Vec<Edge>,
    out_offsets: Vec<usize>,
    out_edge_ids: Vec<u32>,
    in_degree: Vec<u32>,
    out_degree: Vec<u32>,
}

impl Graph {
    /// Builds a graph over dense ids `0..vertex_count`, labels equal to ids.
    pub fn from_dense_edges(vertex_count: usize, edges: Vec<Edge>) -> Self {
        let labels = (0..vertex_count as u64).collect();
        Self::assemble(labels, edges)
    }

    /// Builds a graph from labelled pairs. Only labels that occur in some edge
    /// become vertices.
    pub fn from_labelled_edges(pairs: &[(u64, u64)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut labels: Vec<u64> = pairs.iter().flat_map(|&(s, t)| [s, t]).collect();
        labels.sort_unstable();
        labels.dedup();
        let dense: HashMap<u64, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as u32))
            .collect();
        let edges = pairs
            .iter()
            .map(|(s, t)| Edge::new(dense[s], dense[t]))
            .collect();
        Ok(Self::assemble(labels, edges))
    }

    fn assemble(labels: Vec<u64>, edges: Vec<Edge>) -> Self {
        let n = labels.len();
        let mut in_degree = vec![0u32; n];
        let mut out_degree = vec![0u32; n];
        for e in &edges {
            out_degree[e.source.index()] += 1;
            in_degree[e.target.index()] += 1;
        }
        let mut out_offsets = vec![0usize; n + 1];
        for v in 0..n {
            out_offsets[v + 1] = out_offsets[v] + out_degree[v] as usize;
        }
        let mut cursor = out_offsets.clone();
        let mut out_edge_ids = vec![0u32; edges.len()];
        for (i, e) in edges.iter().enumerate() {
            let slot = &mut cursor[e.source.index()];
            out_edge_ids[*slot] = i as u32;
            *slot += 1;
        }
        Self {
            labels,
            edges,
            out_offsets,
            out_edge_ids,
            in_degree,
            out_degree,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn label(&self, v: VertexId) -> u64 {
        self.labels[v.index()]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.labels.len() as u32).map(VertexId)
    }

    /// Out-edges of `v` in input order.
    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = Edge> + '_ {
        let range = self.out_offsets[v.index()]..self.out_offsets[v.index() + 1];
        self.out_edge_ids[range]
            .iter()
            .map(move |&i| self.edges[i as usize])
    }

    pub fn out_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out_edges(v).map(|e| e.target)
    }

    pub fn in_degree(&self, v: VertexId) -> u32 {
        self.in_degree[v.index()]
    }

    pub fn out_degree(&self, v: VertexId) -> u32 {
        self.out_degree[v.index()]
    }

    pub fn total_degree(&self, v: VertexId) -> u32 {
        self.in_degree[v.index()] + self.out_degree[v.index()]
    }

    /// Undirected degree of every vertex, indexed by dense id.
    pub fn degree_table(&self) -> Vec<u32> {
        self.in_degree
            .iter()
            .zip(&self.out_degree)
            .map(|(i, o)| i + o)
            .collect()
    }

    /// Neighbor lists of the undirected view, out-neighbors first then
    /// in-neighbors, each in edge order. Self-loops are omitted.
    pub fn undirected_adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj: Vec<Vec<VertexId>> = self
            .vertices()
            .map(|v| Vec::with_capacity(self.total_degree(v) as usize))
            .collect();
        for v in self.vertices() {
            adj[v.index()].extend(self.out_neighbors(v).filter(|&t| t != v));
        }
        for e in &self.edges {
            if !e.is_self_loop() {
                adj[e.target.index()].push(e.source);
            }
        }
        adj
    }

    /// Parses whitespace-separated `source target` lines. Blank lines and
    /// lines starting with `#` are skipped; extra tokens are an error.
    pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Self> {
        let mut pairs = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            pairs.push(parse_pair(trimmed, idx + 1)?);
        }
        Self::from_labelled_edges(&pairs)
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        Self::read_edge_list(text.as_bytes())
    }

    /// Writes one `source target` line per edge using external labels.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for e in &self.edges {
            writeln!(out, "{} {}", self.label(e.source), self.label(e.target))?;
        }
        out.flush()?;
        Ok(())
    }
}

fn parse_pair(line: &str, line_no: usize) -> Result<(u64, u64)> {
    let err = |message: String| Error::Parse {
        line: line_no,
        message,
    };
    let mut tokens = line.split_whitespace();
    let mut next = |what: &str| -> Result<u64> {
        let tok = tokens
            .next()
            .ok_or_else(|| err(format!("missing {what} vertex")))?;
        tok.parse::<u64>()
            .map_err(|_| err(format!("invalid {what} vertex {tok:?}")))
    };
    let source = next("source")?;
    let target = next("target")?;
    if let Some(extra) = tokens.next() {
        return Err(err(format!("unexpected token {extra:?}")));
    }
    Ok((source, target))
}
