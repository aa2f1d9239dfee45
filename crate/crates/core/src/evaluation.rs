//! Suitability scores, Fleiss' kappa and per-set evaluation summaries.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::corpus::{CQSet, CompetencyQuestion, Dataset};
use crate::error::{Error, Result};
use crate::stats::MeanStd;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuitabilityScore {
    pub cq_id: String,
    /// Sum of ±1 votes, in -R..=R.
    pub score: i32,
    /// Majority accepted (score > 0).
    pub accepted: bool,
}

pub fn suitability(cq: &CompetencyQuestion) -> Result<SuitabilityScore> {
    let r = cq.ratings.len();
    if r == 0 || r.is_multiple_of(2) {
        return Err(Error::EvenRaters {
            cq_id: cq.cq_id.clone(),
            raters: r,
        });
    }
    let score: i32 = cq.ratings.iter().map(|&v| i32::from(v)).sum();
    Ok(SuitabilityScore {
        cq_id: cq.cq_id.clone(),
        score,
        accepted: score > 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgreementResult {
    pub kappa: f64,
    pub n_items: usize,
    pub n_raters: usize,
    pub n_categories: usize,
    /// Chance agreement was 1 (a single category observed); kappa is
    /// reported as 1.0 by convention.
    pub degenerate: bool,
}

/// Fleiss' kappa over an items × raters label matrix.
///
/// `P̄` is the mean over items of the fraction of agreeing rater pairs and
/// `P̄e` the sum of squared category marginals; κ = (P̄ − P̄e) / (1 − P̄e).
pub fn fleiss_kappa<L>(ratings: &[Vec<L>], categories: &[L]) -> Result<AgreementResult>
where
    L: Eq + Hash,
{
    if ratings.len() < 2 {
        return Err(Error::IncompleteMatrix(format!(
            "{} items, need at least 2",
            ratings.len()
        )));
    }
    let n_raters = ratings[0].len();
    if n_raters < 2 {
        return Err(Error::IncompleteMatrix(format!("{n_raters} raters, need at least 2")));
    }
    let cat_index: HashMap<&L, usize> = categories.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let k = cat_index.len();
    let mut totals = vec![0usize; k];
    let mut per_item = vec![0usize; k];
    let mut p_bar_sum = 0.0;
    for (i, row) in ratings.iter().enumerate() {
        if row.len() != n_raters {
            return Err(Error::IncompleteMatrix(format!(
                "item {i} has {} ratings, expected {n_raters}",
                row.len()
            )));
        }
        per_item.iter_mut().for_each(|c| *c = 0);
        for label in row {
            let c = *cat_index
                .get(label)
                .ok_or_else(|| Error::IncompleteMatrix(format!("item {i} has a label outside the category set")))?;
            per_item[c] += 1;
            totals[c] += 1;
        }
        let agreeing: usize = per_item.iter().map(|&n| n * n.saturating_sub(1)).sum();
        p_bar_sum += agreeing as f64 / (n_raters * (n_raters - 1)) as f64;
    }
    let n_items = ratings.len();
    let p_bar = p_bar_sum / n_items as f64;
    let cells = (n_items * n_raters) as f64;
    let p_e: f64 = totals.iter().map(|&t| (t as f64 / cells).powi(2)).sum();
    let (kappa, degenerate) = if (1.0 - p_e).abs() < f64::EPSILON {
        log::warn!("fleiss_kappa: a single category was observed; reporting kappa = 1");
        (1.0, true)
    } else {
        ((p_bar - p_e) / (1.0 - p_e), false)
    };
    Ok(AgreementResult {
        kappa,
        n_items,
        n_raters,
        n_categories: k,
        degenerate,
    })
}

/// Kappa over the accept/reject votes of every CQ in `dataset` (or in the
/// given sets only).
pub fn dataset_agreement(dataset: &Dataset, sets: &[CQSet]) -> Result<AgreementResult> {
    let rows: Vec<Vec<i8>> = sets
        .iter()
        .flat_map(|s| dataset.members(s))
        .map(|q| q.ratings.clone())
        .collect();
    fleiss_kappa(&rows, &[1i8, -1])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetEvaluationSummary {
    pub set_id: String,
    pub n: usize,
    pub commented_pct: f64,
    pub score_mean: f64,
    pub score_std: f64,
    pub accepted_pct: f64,
    pub ambiguous_pct: f64,
    /// Share of relevance-judged CQs scored 3; `None` when none were judged.
    pub relevance_score3_pct: Option<f64>,
    /// Percentage per relevance score 1..=4 over the judged CQs.
    pub relevance_pct: [f64; 4],
    /// CQs without a relevance judgement.
    pub relevance_missing: usize,
}

fn pct(count: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        100.0 * count as f64 / total as f64
    }
}

pub fn set_summary(dataset: &Dataset, set: &CQSet) -> Result<SetEvaluationSummary> {
    if set.is_empty() {
        return Err(Error::EmptySet(set.set_id.clone()));
    }
    let members: Vec<&CompetencyQuestion> = set
        .sorted_members()
        .into_iter()
        .map(|id| {
            dataset.get(id).ok_or_else(|| Error::UnknownId {
                source_kind: "set",
                cq_id: id.to_string(),
            })
        })
        .collect::<Result<_>>()?;
    let scores = members.iter().map(|q| suitability(q)).collect::<Result<Vec<_>>>()?;
    let n = members.len();
    let values: Vec<f64> = scores.iter().map(|s| s.score as f64).collect();
    let ms = MeanStd::from_samples(&values).expect("non-empty set");
    let mut rel_counts = [0usize; 4];
    for q in &members {
        if let Some(r) = q.relevance {
            rel_counts[usize::from(r) - 1] += 1;
        }
    }
    let judged: usize = rel_counts.iter().sum();
    Ok(SetEvaluationSummary {
        set_id: set.set_id.clone(),
        n,
        commented_pct: pct(members.iter().filter(|q| q.commented).count(), n),
        score_mean: ms.mean,
        score_std: ms.std,
        accepted_pct: pct(scores.iter().filter(|s| s.accepted).count(), n),
        ambiguous_pct: pct(members.iter().filter(|q| q.ambiguous).count(), n),
        relevance_score3_pct: (judged > 0).then(|| pct(rel_counts[2], judged)),
        relevance_pct: rel_counts.map(|c| pct(c, judged)),
        relevance_missing: n - judged,
    })
}
