//! Spin configurations, cut/energy objectives and incremental (delta)
//! evaluation.
//!
//! Everything in this layer is exact integer arithmetic. A configuration
//! assigns each vertex a spin in {+1, -1}; equivalently a bit in {0, 1}
//! with the fixed mapping bit 0 -> spin +1, bit 1 -> spin -1. For an
//! instance with total edge weight `W` and Ising energy
//! `H = sum w_ij s_i s_j`, the cut value satisfies `cut == (W - H) / 2`.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::instances::ProblemInstance;

/// Edge weight; Gset weights are +-1 but any i32 is accepted.
pub type Weight = i32;
/// Cut and energy values are kept in i64 for headroom.
pub type CutValue = i64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("configuration has {got} spins but instance has {expected} vertices")]
    LengthMismatch { got: usize, expected: usize },
    #[error("vertex index {0} out of range 1..={1}")]
    VertexOutOfRange(usize, usize),
}

/// Compressed-row adjacency built once per instance.
///
/// Vertex `i` (0-based internally) owns the slice
/// `neighbors[offsets[i]..offsets[i+1]]` with matching `weights`.
#[derive(Debug)]
pub struct Adjacency {
    offsets: Vec<u32>,
    neighbors: Vec<u32>,
    weights: Vec<Weight>,
    total_weight: i64,
    /// max over vertices of sum |w_ij|; bounds any single flip gain.
    max_strength: i64,
}

impl Adjacency {
    pub fn build(n: usize, edges: &[(u32, u32, Weight)]) -> Self {
        let mut deg = vec![0u32; n];
        for &(u, v, _) in edges {
            deg[u as usize - 1] += 1;
            deg[v as usize - 1] += 1;
        }
        let mut offsets = vec![0u32; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + deg[i];
        }
        let mut neighbors = vec![0u32; 2 * edges.len()];
        let mut weights = vec![0; 2 * edges.len()];
        let mut fill = offsets.clone();
        for &(u, v, w) in edges {
            let (ui, vi) = (u - 1, v - 1);
            neighbors[fill[ui as usize] as usize] = vi;
            weights[fill[ui as usize] as usize] = w;
            fill[ui as usize] += 1;
            neighbors[fill[vi as usize] as usize] = ui;
            weights[fill[vi as usize] as usize] = w;
            fill[vi as usize] += 1;
        }
        let total_weight = edges.iter().map(|&(_, _, w)| w as i64).sum();
        let max_strength = (0..n)
            .map(|i| {
                weights[offsets[i] as usize..offsets[i + 1] as usize]
                    .iter()
                    .map(|&w| (w as i64).abs())
                    .sum()
            })
            .max()
            .unwrap_or(0);
        Adjacency {
            offsets,
            neighbors,
            weights,
            total_weight,
            max_strength,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn total_weight(&self) -> i64 {
        self.total_weight
    }

    /// Upper bound on |flip gain| for any vertex.
    pub fn max_strength(&self) -> i64 {
        self.max_strength
    }

    #[inline]
    pub fn row(&self, i: usize) -> (&[u32], &[Weight]) {
        let lo = self.offsets[i] as usize;
        let hi = self.offsets[i + 1] as usize;
        (&self.neighbors[lo..hi], &self.weights[lo..hi])
    }

    pub fn degree(&self, i: usize) -> usize {
        (self.offsets[i + 1] - self.offsets[i]) as usize
    }
}

/// A length-n assignment of spins over {+1, -1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinConfig {
    spins: Vec<i8>,
}

impl SpinConfig {
    /// All spins +1.
    pub fn all_up(n: usize) -> Self {
        SpinConfig { spins: vec![1; n] }
    }

    pub fn from_spins(spins: Vec<i8>) -> Self {
        assert!(
            spins.iter().all(|&s| s == 1 || s == -1),
            "spins must be +1 or -1"
        );
        SpinConfig { spins }
    }

    /// Fixed mapping: bit 0 -> spin +1, bit 1 -> spin -1.
    pub fn from_bits(bits: &[u8]) -> Self {
        SpinConfig {
            spins: bits.iter().map(|&b| if b == 0 { 1 } else { -1 }).collect(),
        }
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.spins.iter().map(|&s| if s == 1 { 0 } else { 1 }).collect()
    }

    pub fn len(&self) -> usize {
        self.spins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    /// Spin of 1-based vertex `v`.
    pub fn spin(&self, v: usize) -> i8 {
        self.spins[v - 1]
    }

    pub fn spins(&self) -> &[i8] {
        &self.spins
    }

    pub fn flip(&mut self, v: usize) {
        self.spins[v - 1] = -self.spins[v - 1];
    }

    /// Global spin reversal; leaves every cut value unchanged.
    pub fn negated(&self) -> Self {
        SpinConfig {
            spins: self.spins.iter().map(|&s| -s).collect(),
        }
    }
}

/// Uniform random configuration; deterministic for a fixed seed
/// (ChaCha8 keyed with `seed`).
pub fn random_config(n: usize, seed: u64) -> SpinConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_config_from(n, &mut rng)
}

/// Uniform random configuration drawn from an existing generator.
pub fn random_config_from<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SpinConfig {
    SpinConfig {
        spins: (0..n).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect(),
    }
}

/// Total weight of edges crossing the partition induced by `cfg`.
pub fn cut_value(inst: &ProblemInstance, cfg: &SpinConfig) -> Result<CutValue, ModelError> {
    if cfg.len() != inst.n() {
        return Err(ModelError::LengthMismatch {
            got: cfg.len(),
            expected: inst.n(),
        });
    }
    let spins = cfg.spins();
    let mut cut = 0i64;
    for &(u, v, w) in inst.edges() {
        if spins[u as usize - 1] != spins[v as usize - 1] {
            cut += w as i64;
        }
    }
    Ok(cut)
}

/// Ising energy `H = sum w_ij s_i s_j`; satisfies `cut == (W - H) / 2`.
pub fn ising_energy(inst: &ProblemInstance, cfg: &SpinConfig) -> Result<CutValue, ModelError> {
    if cfg.len() != inst.n() {
        return Err(ModelError::LengthMismatch {
            got: cfg.len(),
            expected: inst.n(),
        });
    }
    let spins = cfg.spins();
    let mut h = 0i64;
    for &(u, v, w) in inst.edges() {
        h += w as i64 * (spins[u as usize - 1] * spins[v as usize - 1]) as i64;
    }
    Ok(h)
}

/// Spin configuration plus cached local fields, cut and energy, supporting
/// O(degree) single-spin flips.
///
/// The caches always equal a from-scratch recomputation; `debug_validate`
/// checks this and the property suites exercise it after long random flip
/// sequences.
pub struct IncrementalState<'a> {
    adj: &'a Adjacency,
    config: SpinConfig,
    local_field: Vec<i32>,
    cut: i64,
    energy: i64,
}

impl<'a> IncrementalState<'a> {
    pub fn new(adj: &'a Adjacency, config: SpinConfig) -> Result<Self, ModelError> {
        if config.len() != adj.num_vertices() {
            return Err(ModelError::LengthMismatch {
                got: config.len(),
                expected: adj.num_vertices(),
            });
        }
        let n = config.len();
        let spins = config.spins();
        let mut local_field = vec![0i32; n];
        let mut energy = 0i64;
        for i in 0..n {
            let (nbrs, ws) = adj.row(i);
            let mut h = 0i64;
            for (&j, &w) in nbrs.iter().zip(ws) {
                h += w as i64 * spins[j as usize] as i64;
            }
            local_field[i] = h as i32;
            energy += h * spins[i] as i64;
        }
        energy /= 2; // each edge counted from both endpoints
        let cut = (adj.total_weight() - energy) / 2;
        Ok(IncrementalState {
            adj,
            config,
            local_field,
            cut,
            energy,
        })
    }

    pub fn adjacency(&self) -> &'a Adjacency {
        self.adj
    }

    pub fn config(&self) -> &SpinConfig {
        &self.config
    }

    pub fn into_config(self) -> SpinConfig {
        self.config
    }

    pub fn num_vertices(&self) -> usize {
        self.config.len()
    }

    pub fn cut(&self) -> i64 {
        self.cut
    }

    pub fn energy(&self) -> i64 {
        self.energy
    }

    /// Local field `h_i = sum_{j in N(i)} w_ij s_j` of 1-based vertex `v`.
    pub fn local_field(&self, v: usize) -> Result<i32, ModelError> {
        self.check_vertex(v)?;
        Ok(self.local_field[v - 1])
    }

    /// Change in cut value from flipping 1-based vertex `v`; does not mutate.
    pub fn flip_gain(&self, v: usize) -> Result<i64, ModelError> {
        self.check_vertex(v)?;
        Ok(self.gain(v - 1))
    }

    /// Flip 1-based vertex `v`, updating caches in O(degree(v)).
    pub fn apply_flip(&mut self, v: usize) -> Result<(), ModelError> {
        self.check_vertex(v)?;
        self.flip_internal(v - 1);
        Ok(())
    }

    #[inline]
    pub(crate) fn gain(&self, i: usize) -> i64 {
        self.config.spins()[i] as i64 * self.local_field[i] as i64
    }

    #[inline]
    pub(crate) fn flip_internal(&mut self, i: usize) {
        let s_old = self.config.spins()[i];
        let h_old = self.local_field[i];
        let gain = s_old as i64 * h_old as i64;
        self.cut += gain;
        self.energy -= 2 * gain;
        self.config.flip(i + 1);
        let delta = -2 * s_old as i32;
        let (nbrs, ws) = self.adj.row(i);
        for (&j, &w) in nbrs.iter().zip(ws) {
            self.local_field[j as usize] += delta * w;
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), ModelError> {
        if v == 0 || v > self.config.len() {
            Err(ModelError::VertexOutOfRange(v, self.config.len()))
        } else {
            Ok(())
        }
    }

    /// Recompute every cache from scratch and assert equality. Test hook.
    pub fn validate(&self) -> bool {
        let fresh = IncrementalState::new(self.adj, self.config.clone()).unwrap();
        fresh.cut == self.cut
            && fresh.energy == self.energy
            && fresh.local_field == self.local_field
            && self.cut == (self.adj.total_weight() - self.energy) / 2
    }
}
