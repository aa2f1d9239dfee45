//! Assembles per-CQ features and per-set tables, and renders them as CSV
//! files plus a combined `summary.json`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complexity::{complexity_profile, set_complexity, ComplexityProfile, SetComplexity};
use crate::corpus::{AnnotationSet, CQSet, Dataset, EmbeddingStore};
use crate::error::{Error, Result};
use crate::evaluation::{
    dataset_agreement, set_summary, suitability, AgreementResult, SetEvaluationSummary, SuitabilityScore,
};
use crate::exec::Execution;
use crate::readability::{
    readability_scores, set_readability, text_counts, ReadabilityOptions, ReadabilityScores, SetReadability,
    TextCounts, WordList,
};
use crate::semantics::{compare_all, internal_diversity, AnalysisConfig, DiversityResult, PairwiseComparison};
use crate::stats::{correlate, minmax_profiles, CorrelationReport, Feature, FeatureVector, SetProfile};

/// Which report sections to compute.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Sections {
    pub features: bool,
    pub suitability: bool,
    pub diversity: bool,
    pub compare: bool,
    pub correlate: bool,
}

impl Sections {
    pub fn all(internal_diversity: bool) -> Self {
        Self {
            features: true,
            suitability: true,
            diversity: internal_diversity,
            compare: true,
            correlate: true,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ReportOptions {
    pub readability: ReadabilityOptions,
    /// Emit GFI, CLI and ARI next to FKGL and DCR.
    pub extra_readability: bool,
    pub analysis: AnalysisConfig,
}

pub struct ReportInputs<'a> {
    pub dataset: &'a Dataset,
    /// Sets to analyse, in output order.
    pub sets: Vec<CQSet>,
    pub annotations: Option<&'a AnnotationSet>,
    pub embeddings: Option<&'a EmbeddingStore>,
    pub word_list: &'a WordList,
}

/// Everything computed for one CQ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CqFeatures {
    pub cq_id: String,
    pub set_id: String,
    pub suitability: SuitabilityScore,
    pub ambiguous: bool,
    pub relevance: Option<u8>,
    pub counts: TextCounts,
    pub readability: ReadabilityScores,
    pub c0: usize,
    pub complexity: Option<ComplexityProfile>,
}

impl CqFeatures {
    pub fn feature_vector(&self, extra_readability: bool) -> FeatureVector {
        let mut values = BTreeMap::new();
        values.insert(Feature::Fkgl, self.readability.fkgl);
        values.insert(Feature::Dcr, self.readability.dcr);
        if extra_readability {
            values.insert(Feature::Gfi, self.readability.gfi);
            values.insert(Feature::Cli, self.readability.cli);
            values.insert(Feature::Ari, self.readability.ari);
        }
        values.insert(Feature::C0, self.c0 as f64);
        if let Some(p) = &self.complexity {
            values.insert(Feature::C1, p.c1 as f64);
            values.insert(Feature::C2, p.c2 as f64);
            values.insert(Feature::C3, p.c3 as f64);
        }
        values.insert(Feature::Ambiguity, f64::from(u8::from(self.ambiguous)));
        if let Some(r) = self.relevance {
            values.insert(Feature::Relevance, f64::from(r));
        }
        values.insert(Feature::Score, f64::from(self.suitability.score));
        FeatureVector {
            cq_id: self.cq_id.clone(),
            set_id: self.set_id.clone(),
            values,
        }
    }
}

/// Computes per-CQ features for every member of `inputs.sets`, in set order
/// then member order.
pub fn cq_features(inputs: &ReportInputs<'_>, opts: &ReportOptions, exec: Execution) -> Result<Vec<CqFeatures>> {
    let questions: Vec<_> = inputs.sets.iter().flat_map(|s| inputs.dataset.members(s)).collect();
    let results = exec.map(&questions, |q| -> Result<CqFeatures> {
        let counts = text_counts(&q.text, inputs.word_list).map_err(|_| Error::EmptyText { cq_id: q.cq_id.clone() })?;
        let complexity = match inputs.annotations {
            Some(ann) => {
                let parse = ann
                    .parses
                    .get(&q.cq_id)
                    .ok_or_else(|| Error::MissingAnnotation(q.cq_id.clone()))?;
                let prims = ann
                    .primitives
                    .get(&q.cq_id)
                    .ok_or_else(|| Error::MissingAnnotation(q.cq_id.clone()))?;
                Some(complexity_profile(q, parse, prims, ann.dep_scheme)?)
            }
            None => None,
        };
        Ok(CqFeatures {
            cq_id: q.cq_id.clone(),
            set_id: q.set_id.clone(),
            suitability: suitability(q)?,
            ambiguous: q.ambiguous,
            relevance: q.relevance,
            readability: readability_scores(&counts, opts.readability),
            counts,
            c0: q.text.chars().count(),
            complexity,
        })
    });
    results.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedReadability {
    pub set_id: String,
    #[serde(flatten)]
    pub stats: SetReadability,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedComplexity {
    pub set_id: String,
    #[serde(flatten)]
    pub stats: SetComplexity,
}

/// All computed sections. Absent sections were not requested.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    #[serde(skip)]
    pub extra_readability: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub features: Option<Vec<CqFeatures>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub readability: Option<Vec<NamedReadability>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complexity: Option<Vec<NamedComplexity>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suitability: Option<Vec<SetEvaluationSummary>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<AgreementResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diversity: Option<Vec<DiversityResult>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairwise: Option<Vec<PairwiseComparison>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profiles: Option<Vec<SetProfile>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correlations: Option<CorrelationReport>,
}

fn profile_features(report_has_complexity: bool, extra: bool) -> Vec<Feature> {
    Feature::ALL
        .into_iter()
        .filter(|f| extra || !f.is_extra_readability())
        .filter(|f| report_has_complexity || !matches!(f, Feature::C1 | Feature::C2 | Feature::C3))
        .collect()
}

pub fn build_report(inputs: &ReportInputs<'_>, opts: &ReportOptions, sections: Sections) -> Result<Report> {
    opts.analysis.validate()?;
    let exec = opts.analysis.execution;
    let mut report = Report {
        extra_readability: opts.extra_readability,
        ..Default::default()
    };
    let needs_features = sections.features || sections.correlate;
    let features = if needs_features {
        Some(cq_features(inputs, opts, exec)?)
    } else {
        None
    };

    if sections.features {
        let feats = features.as_ref().expect("computed above");
        let scores: BTreeMap<String, ReadabilityScores> =
            feats.iter().map(|f| (f.cq_id.clone(), f.readability)).collect();
        report.readability = Some(
            inputs
                .sets
                .iter()
                .map(|s| {
                    Ok(NamedReadability {
                        set_id: s.set_id.clone(),
                        stats: set_readability(s, &scores)?,
                    })
                })
                .collect::<Result<_>>()?,
        );
        if inputs.annotations.is_some() {
            let profiles: BTreeMap<String, ComplexityProfile> = feats
                .iter()
                .filter_map(|f| f.complexity.map(|p| (f.cq_id.clone(), p)))
                .collect();
            report.complexity = Some(
                inputs
                    .sets
                    .iter()
                    .map(|s| {
                        Ok(NamedComplexity {
                            set_id: s.set_id.clone(),
                            stats: set_complexity(s, &profiles)?,
                        })
                    })
                    .collect::<Result<_>>()?,
            );
        }
    }

    if sections.suitability {
        report.suitability = Some(
            inputs
                .sets
                .iter()
                .map(|s| set_summary(inputs.dataset, s))
                .collect::<Result<_>>()?,
        );
        report.agreement = Some(dataset_agreement(inputs.dataset, &inputs.sets)?);
    }

    if sections.diversity || sections.compare {
        let store = inputs
            .embeddings
            .ok_or_else(|| Error::InvalidConfig("embeddings are required for semantic analysis".into()))?;
        for s in &inputs.sets {
            for id in &s.members {
                store.require(id)?;
            }
        }
        if sections.diversity {
            report.diversity = Some(
                inputs
                    .sets
                    .iter()
                    .map(|s| internal_diversity(s, store, &opts.analysis))
                    .collect::<Result<_>>()?,
            );
        }
        if sections.compare {
            report.pairwise = Some(compare_all(&inputs.sets, store, &opts.analysis)?);
        }
    }

    if sections.correlate {
        let feats = features.as_ref().expect("computed above");
        let vectors: Vec<FeatureVector> = feats.iter().map(|f| f.feature_vector(opts.extra_readability)).collect();
        let wanted = profile_features(inputs.annotations.is_some(), opts.extra_readability);
        report.profiles = Some(minmax_profiles(&vectors, &wanted)?);
        report.correlations = Some(correlate(&vectors, Feature::Score, &wanted)?);
    }

    if sections.features {
        report.features = features;
    }
    Ok(report)
}

fn real(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn r4(x: f64) -> String {
    real(x, 4)
}

fn pct(x: f64) -> String {
    real(x, 1)
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

impl Report {
    fn features_csv(&self, feats: &[CqFeatures]) -> String {
        let has_complexity = feats.iter().any(|f| f.complexity.is_some());
        let mut header = vec![
            "cq_id",
            "set_id",
            "score",
            "accepted",
            "ambiguous",
            "relevance",
            "sentences",
            "words",
            "syllables",
            "difficult_words",
            "fkgl",
            "dcr",
        ];
        if self.extra_readability {
            header.extend(["gfi", "cli", "ari"]);
        }
        header.push("c0");
        if has_complexity {
            header.extend(["c1", "c2", "c3", "interrogative"]);
        }
        let rows = feats.iter().map(|f| {
            let mut row = vec![
                f.cq_id.clone(),
                f.set_id.clone(),
                f.suitability.score.to_string(),
                f.suitability.accepted.to_string(),
                f.ambiguous.to_string(),
                f.relevance.map(|r| r.to_string()).unwrap_or_default(),
                f.counts.sentences.to_string(),
                f.counts.words.to_string(),
                f.counts.syllables.to_string(),
                f.counts.difficult_words.to_string(),
                r4(f.readability.fkgl),
                r4(f.readability.dcr),
            ];
            if self.extra_readability {
                row.extend([r4(f.readability.gfi), r4(f.readability.cli), r4(f.readability.ari)]);
            }
            row.push(f.c0.to_string());
            if has_complexity {
                match &f.complexity {
                    Some(p) => row.extend([
                        p.c1.to_string(),
                        p.c2.to_string(),
                        p.c3.to_string(),
                        p.interrogative.as_str().to_string(),
                    ]),
                    None => row.extend(std::iter::repeat_n(String::new(), 4)),
                }
            }
            row
        });
        csv_table(&header, rows)
    }

    /// Output files as (file name, contents), in a fixed order.
    pub fn files(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        if let Some(feats) = &self.features {
            out.push(("features.csv".into(), self.features_csv(feats)));
        }
        if let Some(rows) = &self.readability {
            let mut header = vec!["set_id", "fkgl_mean", "fkgl_std", "dcr_mean", "dcr_std"];
            if self.extra_readability {
                header.extend(["gfi_mean", "gfi_std", "cli_mean", "cli_std", "ari_mean", "ari_std"]);
            }
            let body = rows.iter().map(|r| {
                let s = &r.stats;
                let mut row = vec![
                    r.set_id.clone(),
                    r4(s.fkgl.mean),
                    r4(s.fkgl.std),
                    r4(s.dcr.mean),
                    r4(s.dcr.std),
                ];
                if self.extra_readability {
                    row.extend([s.gfi, s.cli, s.ari].iter().flat_map(|m| [r4(m.mean), r4(m.std)]));
                }
                row
            });
            out.push(("readability.csv".into(), csv_table(&header, body)));
        }
        if let Some(rows) = &self.complexity {
            let header = [
                "set_id", "c0_mean", "c0_std", "c1_mean", "c1_std", "c2_mean", "c2_std", "c3_mean", "c3_std",
            ];
            let body = rows.iter().map(|r| {
                let s = &r.stats;
                std::iter::once(r.set_id.clone())
                    .chain([s.c0, s.c1, s.c2, s.c3].iter().flat_map(|m| [r4(m.mean), r4(m.std)]))
                    .collect()
            });
            out.push(("complexity.csv".into(), csv_table(&header, body)));
        }
        if let Some(rows) = &self.suitability {
            let header = [
                "set_id",
                "n",
                "commented_pct",
                "score_mean",
                "score_std",
                "accepted_pct",
            ];
            let body = rows.iter().map(|s| {
                vec![
                    s.set_id.clone(),
                    s.n.to_string(),
                    pct(s.commented_pct),
                    r4(s.score_mean),
                    r4(s.score_std),
                    pct(s.accepted_pct),
                ]
            });
            out.push(("suitability.csv".into(), csv_table(&header, body)));

            let header = ["set_id", "ambiguous_pct", "relevance3_pct"];
            let body = rows.iter().map(|s| {
                vec![
                    s.set_id.clone(),
                    pct(s.ambiguous_pct),
                    s.relevance_score3_pct.map(pct).unwrap_or_default(),
                ]
            });
            out.push(("ambiguity_relevance.csv".into(), csv_table(&header, body)));

            let header = ["set_id", "relevance", "pct", "unjudged"];
            let body = rows.iter().flat_map(|s| {
                (0..4).map(move |i| {
                    vec![
                        s.set_id.clone(),
                        (i + 1).to_string(),
                        pct(s.relevance_pct[i]),
                        s.relevance_missing.to_string(),
                    ]
                })
            });
            out.push(("relevance_long.csv".into(), csv_table(&header, body)));
        }
        if let Some(a) = &self.agreement {
            let header = ["kappa", "n_items", "n_raters", "n_categories", "degenerate"];
            let row = vec![
                r4(a.kappa),
                a.n_items.to_string(),
                a.n_raters.to_string(),
                a.n_categories.to_string(),
                a.degenerate.to_string(),
            ];
            out.push(("agreement.csv".into(), csv_table(&header, [row])));
        }
        if let Some(rows) = &self.diversity {
            let header = [
                "set_id",
                "n",
                "pairwise_cos_mean",
                "pairwise_cos_std",
                "dist_centroid_mean",
                "dist_centroid_std",
                "entropy_bits",
                "cluster_sizes",
            ];
            let body = rows.iter().map(|d| {
                vec![
                    d.set_id.clone(),
                    d.avg_dist_to_centroid.n.to_string(),
                    r4(d.avg_pairwise_cos.mean),
                    r4(d.avg_pairwise_cos.std),
                    r4(d.avg_dist_to_centroid.mean),
                    r4(d.avg_dist_to_centroid.std),
                    r4(d.entropy_bits),
                    d.cluster_sizes
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(";"),
                ]
            });
            out.push(("diversity.csv".into(), csv_table(&header, body)));
        }
        if let Some(rows) = &self.pairwise {
            let header = [
                "set_a",
                "set_b",
                "centroid_sim",
                "cov_a_pct",
                "mms_a",
                "mms_a_std",
                "cov_b_pct",
                "mms_b",
                "mms_b_std",
                "bidir_pct",
            ];
            let body = rows.iter().map(|p| {
                vec![
                    p.set_a.clone(),
                    p.set_b.clone(),
                    r4(p.centroid_sim),
                    pct(p.a_from_b.coverage_pct),
                    r4(p.a_from_b.mms.mean),
                    r4(p.a_from_b.mms.std),
                    pct(p.b_from_a.coverage_pct),
                    r4(p.b_from_a.mms.mean),
                    r4(p.b_from_a.mms.std),
                    pct(p.bidirectional_pct),
                ]
            });
            out.push(("pairwise.csv".into(), csv_table(&header, body)));
        }
        if let Some(profiles) = &self.profiles {
            let features: Vec<Feature> = profiles
                .iter()
                .flat_map(|p| p.means.keys().copied())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            let mut header = vec!["set_id"];
            header.extend(features.iter().map(|f| f.name()));
            let body = profiles.iter().map(|p| {
                std::iter::once(p.set_id.clone())
                    .chain(
                        features
                            .iter()
                            .map(|f| p.means.get(f).map(|v| r4(*v)).unwrap_or_default()),
                    )
                    .collect()
            });
            out.push(("profiles.csv".into(), csv_table(&header, body)));
        }
        if let Some(c) = &self.correlations {
            let body = c
                .rows
                .iter()
                .map(|r| vec![r.feature.name().to_string(), r4(r.r), r.n.to_string()]);
            out.push(("correlations.csv".into(), csv_table(&["feature", "r", "n"], body)));
        }
        out
    }

    pub fn summary_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
