//! Embedding-space analytics: internal diversity of one set and directional
//! coverage between two sets.
//!
//! For sets A and B, `s(A_i → B) = max_j cos(a_i, b_j)`. A member of A is
//! covered by B when `s ≥ τ` (inclusive). MMS is the mean of these maxima,
//! coverage the share of covered members, novelty its complement, and
//! bidirectional coverage `(covered(A→B) + covered(B→A)) / (|A| + |B|)`.
//!
//! Members are always processed in cq_id order so every result is
//! independent of file order.

mod kmeans;

pub use kmeans::{kmeans, Clustering, MAX_ITERATIONS};

use serde::{Deserialize, Serialize};

use crate::corpus::{CQSet, EmbeddingStore};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::stats::{compensated_sum, MeanStd};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    /// Coverage threshold on cosine similarity.
    pub tau: f64,
    /// Cluster count for the entropy measure.
    pub k: usize,
    pub seed: u64,
    pub restarts: usize,
    #[serde(skip)]
    pub execution: Execution,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            tau: 0.75,
            k: 5,
            seed: 46,
            restarts: 10,
            execution: Execution::default(),
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0 && self.tau <= 1.0) {
            return Err(Error::InvalidConfig(format!("tau must be in (0, 1], got {}", self.tau)));
        }
        if self.k < 2 {
            return Err(Error::InvalidConfig(format!("k must be at least 2, got {}", self.k)));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be at least 1".into()));
        }
        Ok(())
    }
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Cosine similarity of two raw vectors.
pub fn cosine(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            cq_id: "<cosine>".into(),
            expected: u.len(),
            found: v.len(),
        });
    }
    let nu = dot(u, u).sqrt();
    let nv = dot(v, v).sqrt();
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::ZeroVector {
            cq_id: "<cosine>".into(),
        });
    }
    Ok((dot(u, v) / (nu * nv)).clamp(-1.0, 1.0))
}

/// Arithmetic mean of a set of vectors.
pub fn centroid(vectors: &[&[f64]]) -> Vec<f64> {
    let dim = vectors.first().map_or(0, |v| v.len());
    (0..dim)
        .map(|d| compensated_sum(vectors.iter().map(|v| v[d])) / vectors.len() as f64)
        .collect()
}

/// Shannon entropy (bits) of a count distribution; empty bins ignored.
pub fn entropy_bits(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let h: f64 = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total as f64;
            -p * p.log2()
        })
        .sum();
    h.max(0.0)
}

fn set_vectors<'a>(set: &CQSet, store: &'a EmbeddingStore) -> Result<Vec<&'a [f64]>> {
    if set.is_empty() {
        return Err(Error::EmptySet(set.set_id.clone()));
    }
    set.sorted_members()
        .into_iter()
        .map(|id| store.require(id).map(|e| e.values()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiversityResult {
    pub set_id: String,
    pub avg_pairwise_cos: MeanStd,
    pub avg_dist_to_centroid: MeanStd,
    pub entropy_bits: f64,
    /// Cluster sizes of the winning k-means run.
    pub cluster_sizes: Vec<usize>,
}

pub fn internal_diversity(set: &CQSet, store: &EmbeddingStore, cfg: &AnalysisConfig) -> Result<DiversityResult> {
    cfg.validate()?;
    let vectors = set_vectors(set, store)?;
    if vectors.len() < cfg.k {
        return Err(Error::SetSmallerThanK {
            set_id: set.set_id.clone(),
            size: vectors.len(),
            k: cfg.k,
        });
    }
    let n = vectors.len();
    let rows: Vec<Vec<f64>> = cfg
        .execution
        .map_range(n, |i| ((i + 1)..n).map(|j| dot(vectors[i], vectors[j])).collect());
    let pairwise: Vec<f64> = rows.into_iter().flatten().collect();
    let center = centroid(&vectors);
    let distances: Vec<f64> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .zip(&center)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    let clustering = kmeans(&vectors, cfg.k, cfg.seed, cfg.restarts, cfg.execution)?;
    let sizes = clustering.occupancy();
    Ok(DiversityResult {
        set_id: set.set_id.clone(),
        avg_pairwise_cos: MeanStd::from_samples(&pairwise).expect("k >= 2 gives at least one pair"),
        avg_dist_to_centroid: MeanStd::from_samples(&distances).expect("non-empty set"),
        entropy_bits: entropy_bits(&sizes),
        cluster_sizes: sizes,
    })
}

/// How well one set is represented by another.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionalCoverage {
    pub mms: MeanStd,
    pub covered: usize,
    pub total: usize,
    pub coverage_pct: f64,
    pub novelty_pct: f64,
    /// Best similarity per member, in cq_id order.
    pub max_similarities: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseComparison {
    pub set_a: String,
    pub set_b: String,
    pub centroid_sim: f64,
    /// A's members matched against B.
    pub a_from_b: DirectionalCoverage,
    /// B's members matched against A.
    pub b_from_a: DirectionalCoverage,
    pub bidirectional_pct: f64,
}

fn directional(from: &[&[f64]], against: &[&[f64]], tau: f64, exec: Execution) -> DirectionalCoverage {
    let max_similarities: Vec<f64> = exec.map(from, |u| {
        against.iter().map(|v| dot(u, v)).fold(f64::NEG_INFINITY, f64::max)
    });
    let covered = max_similarities.iter().filter(|&&s| s >= tau).count();
    let total = from.len();
    let coverage_pct = 100.0 * covered as f64 / total as f64;
    DirectionalCoverage {
        mms: MeanStd::from_samples(&max_similarities).expect("non-empty set"),
        covered,
        total,
        coverage_pct,
        novelty_pct: 100.0 - coverage_pct,
        max_similarities,
    }
}

pub fn pairwise_compare(
    a: &CQSet,
    b: &CQSet,
    store: &EmbeddingStore,
    cfg: &AnalysisConfig,
) -> Result<PairwiseComparison> {
    cfg.validate()?;
    let va = set_vectors(a, store)?;
    let vb = set_vectors(b, store)?;
    let centroid_sim = cosine(&centroid(&va), &centroid(&vb))?;
    let a_from_b = directional(&va, &vb, cfg.tau, cfg.execution);
    let b_from_a = directional(&vb, &va, cfg.tau, cfg.execution);
    let bidirectional_pct = 100.0 * (a_from_b.covered + b_from_a.covered) as f64 / (va.len() + vb.len()) as f64;
    Ok(PairwiseComparison {
        set_a: a.set_id.clone(),
        set_b: b.set_id.clone(),
        centroid_sim,
        a_from_b,
        b_from_a,
        bidirectional_pct,
    })
}

/// Every unordered pair of `sets` in listing order: (0,1), (0,2), ..., (1,2), ...
pub fn compare_all(sets: &[CQSet], store: &EmbeddingStore, cfg: &AnalysisConfig) -> Result<Vec<PairwiseComparison>> {
    let mut out = Vec::new();
    for i in 0..sets.len() {
        for j in (i + 1)..sets.len() {
            out.push(pairwise_compare(&sets[i], &sets[j], store, cfg)?);
        }
    }
    Ok(out)
}
