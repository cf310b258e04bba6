//! Synthetic power-law graphs.
//!
//! A synthetic graph is the edge-sequence union of two halves. In the first,
//! every vertex draws its out-degree from a truncated Zipf(alpha) law and picks
//! its targets uniformly; in the second, every vertex draws its in-degree from
//! Zipf(beta) and its sources are uniform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// Zipf law truncated to `[1, max_degree]`: `P(d) ∝ d^-exponent`, sampled by
/// inverse CDF over a precomputed table.
#[derive(Debug, Clone)]
pub struct Zipf {
    exponent: f64,
    cdf: Vec<f64>,
}

impl Zipf {
    pub fn new(exponent: f64, max_degree: u32) -> Result<Self> {
        if !(exponent > 1.0) || !exponent.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "Zipf exponent must be > 1, got {exponent}"
            )));
        }
        if max_degree == 0 {
            return Err(Error::InvalidSpec("max_degree must be at least 1".into()));
        }
        let weights: Vec<f64> = (1..=max_degree)
            .map(|d| (d as f64).powf(-exponent))
            .collect();
        let total: f64 = weights.iter().sum();
        let mut acc = 0.0;
        let mut cdf: Vec<f64> = weights
            .iter()
            .map(|w| {
                acc += w;
                acc / total
            })
            .collect();
        *cdf.last_mut().unwrap() = 1.0;
        Ok(Self { exponent, cdf })
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn max_degree(&self) -> u32 {
        self.cdf.len() as u32
    }

    pub fn pmf(&self, d: u32) -> f64 {
        match d {
            0 => 0.0,
            1 => self.cdf[0],
            d if d as usize <= self.cdf.len() => {
                self.cdf[d as usize - 1] - self.cdf[d as usize - 2]
            }
            _ => 0.0,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let u: f64 = rng.gen();
        let idx = self.cdf.partition_point(|&c| c <= u);
        (idx.min(self.cdf.len() - 1) + 1) as u32
    }
}

/// Draws one degree from the truncated Zipf law.
pub fn sample_zipf<R: Rng + ?Sized>(exponent: f64, max_degree: u32, rng: &mut R) -> Result<u32> {
    Ok(Zipf::new(exponent, max_degree)?.sample(rng))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub vertex_count: u32,
    pub alpha: f64,
    pub beta: f64,
    pub max_degree: u32,
    pub seed: u64,
}

impl SyntheticSpec {
    /// `max_degree` defaults to `n - 1`.
    pub fn new(vertex_count: u32, alpha: f64, beta: f64, seed: u64) -> Self {
        Self {
            vertex_count,
            alpha,
            beta,
            max_degree: vertex_count.saturating_sub(1),
            seed,
        }
    }

    pub fn with_max_degree(mut self, max_degree: u32) -> Self {
        self.max_degree = max_degree;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSpec(m));
        if self.vertex_count < 2 {
            return bad(format!(
                "need at least 2 vertices, got {}",
                self.vertex_count
            ));
        }
        for (name, x) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(x > 1.0) || !x.is_finite() {
                return bad(format!("{name} must be > 1, got {x}"));
            }
        }
        if self.max_degree < 1 || self.max_degree >= self.vertex_count {
            return bad(format!(
                "max_degree must be in [1, {}), got {}",
                self.vertex_count, self.max_degree
            ));
        }
        Ok(())
    }
}

/// Out-degree half followed by in-degree half. Self-loops are redrawn,
/// duplicate edges kept.
pub fn generate(spec: &SyntheticSpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.vertex_count;
    let out_law = Zipf::new(spec.alpha, spec.max_degree)?;
    let in_law = Zipf::new(spec.beta, spec.max_degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges = Vec::new();

    for v in 0..n {
        for _ in 0..out_law.sample(&mut rng) {
            edges.push(Edge::new(v, other_vertex(&mut rng, n, v)));
        }
    }
    for v in 0..n {
        for _ in 0..in_law.sample(&mut rng) {
            edges.push(Edge::new(other_vertex(&mut rng, n, v), v));
        }
    }
    Ok(Graph::from_dense_edges(n as usize, edges))
}

fn other_vertex(rng: &mut ChaCha8Rng, n: u32, avoid: u32) -> u32 {
    loop {
        let w = rng.gen_range(0..n);
        if w != avoid {
            return w;
        }
    }
}
