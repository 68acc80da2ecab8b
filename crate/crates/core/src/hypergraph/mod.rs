//! Weighted symmetric `2M`-uniform hypergraphs.
//!
//! Vertices are `0..m`. Every hyperedge has a source set and a destination
//! set of `M` distinct vertices each, disjoint from one another; the graph
//! is symmetric, so `(S, D, w)` is always accompanied by `(D, S, w)`.

mod connectivity;
mod ensemble;
mod laplacian;

pub use connectivity::is_m_connected;
pub use ensemble::{
    candidate_pairs, ensemble_laplacian, expected_laplacian, expected_laplacian_square,
    expected_trial_moments, normalization_scale, pair_laplacian, sample_hypergraph,
    support_laplacian, trial_laplacian, EnsembleSpec, TrialMoments, TrialTransform,
    WeightDistribution,
};
pub use laplacian::{
    adjacency_tensor, algebraic_connectivity, connectivity_index, degree_tensor,
    falling_factorial, laplacian_tensor, LaplacianTensor,
};

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperedge<R> {
    pub source: Vec<usize>,
    pub dest: Vec<usize>,
    pub weight: R,
}

impl<R: Scalar> Hyperedge<R> {
    pub fn new(source: Vec<usize>, dest: Vec<usize>, weight: R) -> Self {
        Hyperedge { source, dest, weight }
    }

    pub fn reversed(&self) -> Self {
        Hyperedge {
            source: self.dest.clone(),
            dest: self.source.clone(),
            weight: self.weight,
        }
    }

    /// Vertex set `S ∪ D`, sorted.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.source.iter().chain(&self.dest).copied().collect();
        v.sort_unstable();
        v
    }

    fn key(&self) -> (Vec<usize>, Vec<usize>) {
        (sorted(&self.source), sorted(&self.dest))
    }
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Hypergraph<R: Scalar> {
    pub m: usize,
    #[serde(rename = "M")]
    pub half: usize,
    pub edges: Vec<Hyperedge<R>>,
}

impl<R: Scalar> Hypergraph<R> {
    /// Checks every invariant, including presence of the mirror edges.
    pub fn new(m: usize, half: usize, edges: Vec<Hyperedge<R>>) -> Result<Self> {
        let g = Hypergraph { m, half, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn empty(m: usize, half: usize) -> Result<Self> {
        Self::new(m, half, Vec::new())
    }

    /// Build from one direction of each edge; mirrors are added. Mirrors
    /// already present are kept if their weight agrees.
    pub fn from_pairs<I>(m: usize, half: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Vec<usize>, R)>,
    {
        let edges = pairs
            .into_iter()
            .map(|(s, d, w)| Hyperedge::new(sorted(&s), sorted(&d), w))
            .collect();
        Self::with_mirrors(m, half, edges)
    }

    fn with_mirrors(m: usize, half: usize, edges: Vec<Hyperedge<R>>) -> Result<Self> {
        let mut by_key: BTreeMap<(Vec<usize>, Vec<usize>), R> = BTreeMap::new();
        let mut order = Vec::new();
        for e in edges {
            for dir in [e.clone(), e.reversed()] {
                let key = dir.key();
                match by_key.get(&key) {
                    Some(&w) if w != dir.weight => {
                        return Err(invalid(format!(
                            "edge {:?} -> {:?} given with weights {w} and {}",
                            key.0, key.1, dir.weight
                        )))
                    }
                    Some(_) => {}
                    None => {
                        by_key.insert(key.clone(), dir.weight);
                        order.push(key);
                    }
                }
            }
        }
        let edges = order
            .into_iter()
            .map(|k| {
                let w = by_key[&k];
                Hyperedge::new(k.0, k.1, w)
            })
            .collect();
        Self::new(m, half, edges)
    }

    /// `M`, the size of each side of a hyperedge.
    pub fn half_uniformity(&self) -> usize {
        self.half
    }

    pub fn validate(&self) -> Result<()> {
        let (m, half) = (self.m, self.half);
        if half == 0 {
            return Err(invalid("half-uniformity M must be at least 1"));
        }
        if m <= half {
            return Err(invalid(format!("need m > M, got m = {m}, M = {half}")));
        }
        let mut seen = BTreeMap::new();
        for e in &self.edges {
            if e.source.len() != half || e.dest.len() != half {
                return Err(invalid(format!(
                    "edge {:?} -> {:?} does not have {half} vertices per side",
                    e.source, e.dest
                )));
            }
            if let Some(&v) = e.source.iter().chain(&e.dest).find(|&&v| v >= m) {
                return Err(invalid(format!("vertex {v} out of range 0..{m}")));
            }
            let all = e.vertices();
            if all.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid(format!(
                    "edge {:?} -> {:?} repeats a vertex or has overlapping sides",
                    e.source, e.dest
                )));
            }
            if !e.weight.is_finite() {
                return Err(invalid("edge weight must be finite"));
            }
            if seen.insert(e.key(), e.weight).is_some() {
                return Err(invalid(format!("duplicate edge {:?} -> {:?}", e.source, e.dest)));
            }
        }
        for ((s, d), w) in &seen {
            match seen.get(&(d.clone(), s.clone())) {
                Some(wr) if wr == w => {}
                Some(wr) => {
                    return Err(invalid(format!(
                        "edge {s:?} -> {d:?} has weight {w} but its mirror has {wr}"
                    )))
                }
                None => return Err(invalid(format!("edge {s:?} -> {d:?} lacks its mirror"))),
            }
        }
        Ok(())
    }

    /// Parse the JSON interchange format; missing mirror edges are completed.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: Hypergraph<R> = serde_json::from_str(text)?;
        Self::with_mirrors(raw.m, raw.half, raw.edges)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json_string()?)?;
        Ok(())
    }

    /// Undirected vertex sets of the edges, one per mirror pair.
    pub fn vertex_sets(&self) -> Vec<Vec<usize>> {
        let mut sets: Vec<Vec<usize>> = self.edges.iter().map(|e| e.vertices()).collect();
        sets.sort();
        sets.dedup();
        sets
    }
}
