use crate::graph::VertexId;

use super::PartitionId;

/// Per-vertex replica sets `A(v)` stored as fixed-width bitsets.
#[derive(Debug, Clone)]
pub struct ReplicaSets {
    words_per_vertex: usize,
    bits: Vec<u64>,
}

impl ReplicaSets {
    pub fn new(vertex_count: usize, partitions: u32) -> Self {
        let words_per_vertex = (partitions as usize).div_ceil(64).max(1);
        Self {
            words_per_vertex,
            bits: vec![0; vertex_count * words_per_vertex],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.bits.len() / self.words_per_vertex
    }

    #[inline]
    fn words(&self, v: VertexId) -> &[u64] {
        let start = v.index() * self.words_per_vertex;
        &self.bits[start..start + self.words_per_vertex]
    }

    #[inline]
    pub fn contains(&self, v: VertexId, k: PartitionId) -> bool {
        let k = k.0 as usize;
        (self.words(v)[k / 64] >> (k % 64)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: VertexId, k: PartitionId) {
        let k = k.0 as usize;
        self.bits[v.index() * self.words_per_vertex + k / 64] |= 1 << (k % 64);
    }

    pub fn is_empty(&self, v: VertexId) -> bool {
        self.words(v).iter().all(|&w| w == 0)
    }

    pub fn len(&self, v: VertexId) -> u32 {
        self.words(v).iter().map(|w| w.count_ones()).sum()
    }

    /// Members of `A(a) ∪ A(b)` in ascending order.
    pub fn union_iter(&self, a: VertexId, b: VertexId) -> impl Iterator<Item = PartitionId> + '_ {
        self.words(a)
            .iter()
            .zip(self.words(b))
            .enumerate()
            .flat_map(|(i, (&x, &y))| BitIter(x | y).map(move |b| PartitionId(i as u32 * 64 + b)))
    }

    pub fn iter(&self, v: VertexId) -> impl Iterator<Item = PartitionId> + '_ {
        self.words(v)
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| BitIter(w).map(move |b| PartitionId(i as u32 * 64 + b)))
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_partition_counts() {
        let mut r = ReplicaSets::new(3, 130);
        r.insert(VertexId(1), PartitionId(0));
        r.insert(VertexId(1), PartitionId(64));
        r.insert(VertexId(1), PartitionId(129));
        r.insert(VertexId(1), PartitionId(64));
        assert_eq!(r.len(VertexId(1)), 3);
        assert!(r.is_empty(VertexId(0)) && r.is_empty(VertexId(2)));
        let got: Vec<u32> = r.iter(VertexId(1)).map(|k| k.0).collect();
        assert_eq!(got, vec![0, 64, 129]);
        assert!(r.contains(VertexId(1), PartitionId(129)));
        assert!(!r.contains(VertexId(1), PartitionId(128)));
        r.insert(VertexId(2), PartitionId(5));
        r.insert(VertexId(2), PartitionId(64));
        let union: Vec<u32> = r
            .union_iter(VertexId(1), VertexId(2))
            .map(|k| k.0)
            .collect();
        assert_eq!(union, vec![0, 5, 64, 129]);
    }
}
