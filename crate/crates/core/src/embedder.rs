//! Random embeddings of a guest graph into a drawing of K_n.
//!
//! A bijection from guest vertices to host vertices draws every guest edge
//! along the host edge between the images; a guest edge pair then crosses iff
//! the host edges do. Monte-Carlo runs are split into fixed chunks of
//! [`CHUNK`] samples, chunk `c` drawing from the generator seeded with
//! `seed + c`, so results do not depend on thread count.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::crossing::CrossingMatrix;
use crate::drawing::{Coords, Drawing};
use crate::error::{Error, Result};
use crate::graph_model::GraphSpec;
use crate::hill::HillModel;
use crate::rng;

pub const CHUNK: usize = 1024;

/// Largest host for exhaustive enumeration (10! bijections).
pub const MAX_EXHAUSTIVE: usize = 10;

#[derive(Clone, Debug)]
pub struct HostCrossingOracle {
    matrix: CrossingMatrix,
    total: u64,
}

impl HostCrossingOracle {
    pub fn hill(n: usize) -> Result<Self> {
        let m = HillModel::new(n)?;
        let total = m.total();
        Ok(HostCrossingOracle { matrix: m.into_matrix(), total })
    }

    /// Host given by the points of a rectilinear drawing; its own graph is
    /// ignored and all C(n,2) segments are used.
    pub fn from_drawing(d: &Drawing) -> Result<Self> {
        let matrix = match d.coords() {
            Coords::Integer(p) => CrossingMatrix::from_points(p)?,
            Coords::Rational(p) => CrossingMatrix::from_points(p)?,
        };
        let total = matrix.total();
        Ok(HostCrossingOracle { matrix, total })
    }

    pub fn vertex_count(&self) -> usize {
        self.matrix.vertex_count()
    }

    /// Crossings of the host drawing of K_n.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn crosses(&self, e1: (usize, usize), e2: (usize, usize)) -> bool {
        self.matrix.crosses(e1, e2)
    }
}

/// Guest edges prepared for repeated evaluation.
struct Guest {
    edges: Vec<(usize, usize)>,
}

impl Guest {
    fn new(g: &GraphSpec, host: &HostCrossingOracle) -> Result<Self> {
        if g.vertex_count() != host.vertex_count() {
            return Err(Error::SizeMismatch { guest: g.vertex_count(), host: host.vertex_count() });
        }
        Ok(Guest { edges: g.edges() })
    }

    fn count(&self, host: &HostCrossingOracle, perm: &[usize], idx: &mut Vec<usize>) -> u64 {
        idx.clear();
        idx.extend(self.edges.iter().map(|&(u, v)| host.matrix.edge_index(perm[u], perm[v])));
        let mut c = 0;
        for (i, &a) in idx.iter().enumerate() {
            for &b in &idx[i + 1..] {
                c += host.matrix.crosses_index(a, b) as u64;
            }
        }
        c
    }
}

fn random_perm(n: usize, seed_rng: &mut rng::SplitMix64, perm: &mut Vec<usize>) {
    perm.clear();
    perm.extend(0..n);
    rng::shuffle(seed_rng, perm);
}

/// Crossings of one uniformly random embedding, determined by `seed`.
pub fn embed_once(g: &GraphSpec, host: &HostCrossingOracle, seed: u64) -> Result<u64> {
    let guest = Guest::new(g, host)?;
    let mut perm = Vec::new();
    random_perm(g.vertex_count(), &mut rng::seeded(seed), &mut perm);
    Ok(guest.count(host, &perm, &mut Vec::new()))
}

/// Summary of a batch of embeddings. Sums are exact.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbedStats {
    pub samples: u64,
    pub sum: u128,
    pub sum_sq: u128,
    pub min: u64,
    pub max: u64,
}

impl EmbedStats {
    fn empty() -> Self {
        EmbedStats { samples: 0, sum: 0, sum_sq: 0, min: u64::MAX, max: 0 }
    }

    fn push(&mut self, c: u64) {
        self.samples += 1;
        self.sum += c as u128;
        self.sum_sq += (c as u128) * (c as u128);
        self.min = self.min.min(c);
        self.max = self.max.max(c);
    }

    fn merge(mut self, o: EmbedStats) -> Self {
        self.samples += o.samples;
        self.sum += o.sum;
        self.sum_sq += o.sum_sq;
        self.min = self.min.min(o.min);
        self.max = self.max.max(o.max);
        self
    }

    pub fn mean_exact(&self) -> BigRational {
        BigRational::new(BigInt::from(self.sum), BigInt::from(self.samples))
    }

    pub fn mean(&self) -> f64 {
        self.sum as f64 / self.samples as f64
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.samples < 2 {
            return 0.0;
        }
        let n = self.samples as f64;
        ((self.sum_sq as f64) - (self.sum as f64).powi(2) / n) / (n - 1.0)
    }

    pub fn standard_error(&self) -> f64 {
        (self.variance() / self.samples as f64).sqrt()
    }
}

/// Monte-Carlo statistics over `samples` independent embeddings.
pub fn embed_mc(g: &GraphSpec, host: &HostCrossingOracle, samples: u64, seed: u64, serial: bool) -> Result<EmbedStats> {
    if samples == 0 {
        return Err(Error::InvalidGraph("embed_mc needs at least one sample".into()));
    }
    let guest = Guest::new(g, host)?;
    let n = g.vertex_count();
    let chunks = samples.div_ceil(CHUNK as u64);
    let run = |c: u64| {
        let mut r = rng::seeded(seed.wrapping_add(c));
        let mut stats = EmbedStats::empty();
        let (mut perm, mut idx) = (Vec::new(), Vec::new());
        let len = (samples - c * CHUNK as u64).min(CHUNK as u64);
        for _ in 0..len {
            random_perm(n, &mut r, &mut perm);
            stats.push(guest.count(host, &perm, &mut idx));
        }
        stats
    };
    Ok(if serial {
        (0..chunks).map(run).fold(EmbedStats::empty(), EmbedStats::merge)
    } else {
        (0..chunks).into_par_iter().map(run).reduce(EmbedStats::empty, EmbedStats::merge)
    })
}

/// Statistics over all n! bijections.
pub fn embed_exhaustive(g: &GraphSpec, host: &HostCrossingOracle) -> Result<EmbedStats> {
    let guest = Guest::new(g, host)?;
    let n = g.vertex_count();
    if n > MAX_EXHAUSTIVE {
        return Err(Error::InvalidGraph(format!("exhaustive embedding limited to n <= {MAX_EXHAUSTIVE}, got {n}")));
    }
    // Fix the image of vertex 0 per task, enumerate the rest lexicographically.
    let run = |first: usize| {
        let mut rest: Vec<usize> = (0..n).filter(|&x| x != first).collect();
        let mut stats = EmbedStats::empty();
        let (mut perm, mut idx) = (Vec::with_capacity(n), Vec::new());
        loop {
            perm.clear();
            perm.push(first);
            perm.extend_from_slice(&rest);
            stats.push(guest.count(host, &perm, &mut idx));
            if !next_permutation(&mut rest) {
                break;
            }
        }
        stats
    };
    if n == 0 {
        let mut s = EmbedStats::empty();
        s.push(0);
        return Ok(s);
    }
    Ok((0..n).into_par_iter().map(run).reduce(EmbedStats::empty, EmbedStats::merge))
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}
