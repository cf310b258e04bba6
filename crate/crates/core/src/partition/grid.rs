use super::PartitionId;

/// `rows x cols` arrangement of the partitions used by the grid-constrained
/// heuristic. Partition `k` sits at `(k / cols, k % cols)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridLayout {
    pub rows: u32,
    pub cols: u32,
}

impl GridLayout {
    /// `rows` is the largest divisor of `partitions` not exceeding its square
    /// root; a prime count degenerates to `1 x p`.
    pub fn for_partitions(partitions: u32) -> Self {
        assert!(partitions > 0);
        let rows = (1..=partitions)
            .take_while(|r| (*r as u64) * (*r as u64) <= partitions as u64)
            .filter(|r| partitions % r == 0)
            .last()
            .unwrap_or(1);
        Self {
            rows,
            cols: partitions / rows,
        }
    }

    pub fn partitions(&self) -> u32 {
        self.rows * self.cols
    }

    #[inline]
    pub fn cell_of(&self, k: PartitionId) -> (u32, u32) {
        (k.0 / self.cols, k.0 % self.cols)
    }

    #[inline]
    pub fn partition_at(&self, row: u32, col: u32) -> PartitionId {
        PartitionId(row * self.cols + col)
    }

    /// Whether `k` lies in the row or column of `cell`.
    #[inline]
    pub fn in_constraint(&self, cell: (u32, u32), k: PartitionId) -> bool {
        let (r, c) = self.cell_of(k);
        r == cell.0 || c == cell.1
    }

    pub fn constraint_set(&self, cell: (u32, u32)) -> Vec<PartitionId> {
        (0..self.partitions())
            .map(PartitionId)
            .filter(|&k| self.in_constraint(cell, k))
            .collect()
    }

    /// `C(a) ∩ C(b)` in ascending partition order. Never empty: it always
    /// holds `(a.row, b.col)` and `(b.row, a.col)`.
    pub fn shared(&self, a: (u32, u32), b: (u32, u32)) -> Vec<PartitionId> {
        let mut out = Vec::new();
        self.shared_into(a, b, &mut out);
        out.into_iter().map(PartitionId).collect()
    }

    pub fn shared_into(&self, a: (u32, u32), b: (u32, u32), out: &mut Vec<u32>) {
        out.clear();
        let (rows, cols) = (self.rows, self.cols);
        match (a.0 == b.0, a.1 == b.1) {
            (true, true) => {
                for r in 0..rows {
                    if r == a.0 {
                        out.extend((0..cols).map(|c| r * cols + c));
                    } else {
                        out.push(r * cols + a.1);
                    }
                }
            }
            (true, false) => out.extend((0..cols).map(|c| a.0 * cols + c)),
            (false, true) => out.extend((0..rows).map(|r| r * cols + a.1)),
            (false, false) => {
                let x = a.0 * cols + b.1;
                let y = b.0 * cols + a.1;
                out.extend([x.min(y), x.max(y)]);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorizations() {
        let cases = [
            (1, (1, 1)),
            (4, (2, 2)),
            (7, (1, 7)),
            (12, (3, 4)),
            (48, (6, 8)),
            (64, (8, 8)),
        ];
        for (p, (r, c)) in cases {
            assert_eq!(
                GridLayout::for_partitions(p),
                GridLayout { rows: r, cols: c },
                "p={p}"
            );
        }
    }

    #[test]
    fn constraint_sizes() {
        let g = GridLayout::for_partitions(48);
        for row in 0..6 {
            for col in 0..8 {
                assert_eq!(g.constraint_set((row, col)).len(), 13);
            }
        }
        let g4 = GridLayout::for_partitions(4);
        assert_eq!(g4.shared((1, 0), (1, 0)).len(), 3);
        // same row, different column: the whole shared row
        assert_eq!(g4.shared((1, 0), (1, 1)).len(), 2);
        // different row and column: exactly the two crossing cells
        let crossing = g.shared((0, 1), (4, 6));
        assert_eq!(crossing, vec![g.partition_at(0, 6), g.partition_at(4, 1)]);
    }

    #[test]
    fn intersection_never_empty() {
        for p in 1..=40 {
            let g = GridLayout::for_partitions(p);
            for a in 0..p {
                for b in 0..p {
                    let (ca, cb) = (g.cell_of(PartitionId(a)), g.cell_of(PartitionId(b)));
                    let brute: Vec<PartitionId> = (0..p)
                        .map(PartitionId)
                        .filter(|&k| g.in_constraint(ca, k) && g.in_constraint(cb, k))
                        .collect();
                    assert!(!brute.is_empty());
                    assert_eq!(g.shared(ca, cb), brute);
                }
            }
        }
    }
}
