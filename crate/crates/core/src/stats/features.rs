//! Corpus-wide feature table: min-max profiles per set and Pearson
//! correlations against a target feature.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::summary::{mean, pearson};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Feature {
    Fkgl,
    Dcr,
    Gfi,
    Cli,
    Ari,
    C0,
    C1,
    C2,
    C3,
    Ambiguity,
    Relevance,
    Score,
}

impl Feature {
    pub const ALL: [Feature; 12] = [
        Feature::Fkgl,
        Feature::Dcr,
        Feature::Gfi,
        Feature::Cli,
        Feature::Ari,
        Feature::C0,
        Feature::C1,
        Feature::C2,
        Feature::C3,
        Feature::Ambiguity,
        Feature::Relevance,
        Feature::Score,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Feature::Fkgl => "fkgl",
            Feature::Dcr => "dcr",
            Feature::Gfi => "gfi",
            Feature::Cli => "cli",
            Feature::Ari => "ari",
            Feature::C0 => "c0",
            Feature::C1 => "c1",
            Feature::C2 => "c2",
            Feature::C3 => "c3",
            Feature::Ambiguity => "ambiguity",
            Feature::Relevance => "relevance",
            Feature::Score => "score",
        }
    }

    pub fn is_extra_readability(self) -> bool {
        matches!(self, Feature::Gfi | Feature::Cli | Feature::Ari)
    }
}

impl std::fmt::Display for Feature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Feature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Feature::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown feature {s:?}")))
    }
}

/// Feature values of one CQ. A feature that could not be computed is absent
/// from `values`, never zero-filled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub cq_id: String,
    pub set_id: String,
    pub values: BTreeMap<Feature, f64>,
}

impl FeatureVector {
    pub fn get(&self, f: Feature) -> Option<f64> {
        self.values.get(&f).copied()
    }
}

/// Per-set means of min-max normalized features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetProfile {
    pub set_id: String,
    pub means: BTreeMap<Feature, f64>,
}

/// Scales each feature to [0, 1] over the whole corpus, then averages per
/// set (sets in order of first appearance).
pub fn minmax_profiles(all: &[FeatureVector], features: &[Feature]) -> Result<Vec<SetProfile>> {
    let mut ranges = BTreeMap::new();
    for &f in features {
        let vals: Vec<f64> = all.iter().filter_map(|v| v.get(f)).collect();
        let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if vals.is_empty() || hi <= lo {
            return Err(Error::ZeroRange(f.name().to_string()));
        }
        ranges.insert(f, (lo, hi));
    }
    let mut order: Vec<&str> = Vec::new();
    for v in all {
        if !order.contains(&v.set_id.as_str()) {
            order.push(&v.set_id);
        }
    }
    Ok(order
        .into_iter()
        .map(|set_id| {
            let members: Vec<&FeatureVector> = all.iter().filter(|v| v.set_id == set_id).collect();
            let means = ranges
                .iter()
                .filter_map(|(&f, &(lo, hi))| {
                    let scaled: Vec<f64> = members
                        .iter()
                        .filter_map(|v| v.get(f))
                        .map(|x| (x - lo) / (hi - lo))
                        .collect();
                    mean(&scaled).map(|m| (f, m.clamp(0.0, 1.0)))
                })
                .collect();
            SetProfile {
                set_id: set_id.to_string(),
                means,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Correlation {
    pub feature: Feature,
    pub r: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub target: Feature,
    pub rows: Vec<Correlation>,
    /// Features left out because they had zero variance over the samples.
    pub skipped: Vec<Feature>,
}

/// Pearson r of every feature against `target`, over the CQs where both are
/// present.
pub fn correlate(all: &[FeatureVector], target: Feature, features: &[Feature]) -> Result<CorrelationReport> {
    let target_vals: Vec<f64> = all.iter().filter_map(|v| v.get(target)).collect();
    if target_vals.len() < 3 {
        return Err(Error::TooFewSamples {
            what: target.name().to_string(),
            n: target_vals.len(),
        });
    }
    if target_vals.iter().all(|v| *v == target_vals[0]) {
        return Err(Error::ConstantTarget(target.name().to_string()));
    }
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for &f in features.iter().filter(|f| **f != target) {
        let (xs, ys): (Vec<f64>, Vec<f64>) = all.iter().filter_map(|v| Some((v.get(f)?, v.get(target)?))).unzip();
        if xs.len() < 3 {
            return Err(Error::TooFewSamples {
                what: f.name().to_string(),
                n: xs.len(),
            });
        }
        match pearson(&xs, &ys) {
            Some(r) => rows.push(Correlation {
                feature: f,
                r,
                n: xs.len(),
            }),
            None => {
                log::warn!("correlate: {f} has zero variance, skipped");
                skipped.push(f);
            }
        }
    }
    Ok(CorrelationReport { target, rows, skipped })
}
