//! Four complexity facets per CQ: length (c0), requirement (c1),
//! linguistic (c2) and syntactic (c3).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::{
    CQSet, Cardinality, CompetencyQuestion, DepScheme, Interrogative, ParseAnnotation, RequirementPrimitives,
};
use crate::error::{Error, Result};
use crate::stats::MeanStd;

/// Relations counted by c3.
pub const SYNTACTIC_RELATIONS: [&str; 7] = ["nsubj", "dobj", "prep", "acl", "relcl", "conj", "agent"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityProfile {
    pub c0: usize,
    pub c1: usize,
    pub c2: usize,
    pub c3: usize,
    pub interrogative: Interrogative,
}

/// Count of primitives; cardinality adds one only when MULTIPLE.
pub fn c1_requirement(p: &RequirementPrimitives) -> usize {
    p.concepts.len()
        + p.properties.len()
        + p.relationships.len()
        + p.filters.len()
        + usize::from(p.aggregation)
        + usize::from(p.cardinality == Cardinality::Multiple)
}

/// Noun chunks + verbs (VERB/AUX) + prepositions (ADP) + coordinating
/// conjunctions (CCONJ) + modifiers (ADJ/ADV), equally weighted.
pub fn c2_linguistic(a: &ParseAnnotation) -> usize {
    let counted = a
        .tokens
        .iter()
        .filter(|t| {
            let pos = t.pos.to_ascii_uppercase();
            matches!(pos.as_str(), "VERB" | "AUX" | "ADP" | "CCONJ" | "ADJ" | "ADV")
        })
        .count();
    a.noun_chunks as usize + counted
}

fn relation_matches(dep: &str, scheme: DepScheme) -> bool {
    let dep = dep.to_ascii_lowercase();
    if SYNTACTIC_RELATIONS.contains(&dep.as_str()) {
        return true;
    }
    scheme == DepScheme::Ud && matches!(dep.as_str(), "case" | "obj")
}

/// Node count + tree depth + occurrences of the relations in
/// [`SYNTACTIC_RELATIONS`].
pub fn c3_syntactic(a: &ParseAnnotation, scheme: DepScheme) -> Result<usize> {
    let depths = a.depths().ok_or_else(|| {
        if a.root().is_none() {
            Error::NoRoot { cq_id: a.cq_id.clone() }
        } else {
            Error::CyclicTree { cq_id: a.cq_id.clone() }
        }
    })?;
    let depth = depths.iter().copied().max().unwrap_or(0);
    let relations = a.tokens.iter().filter(|t| relation_matches(&t.dep, scheme)).count();
    Ok(a.tokens.len() + depth + relations)
}

pub fn complexity_profile(
    cq: &CompetencyQuestion,
    a: &ParseAnnotation,
    p: &RequirementPrimitives,
    scheme: DepScheme,
) -> Result<ComplexityProfile> {
    for other in [&a.cq_id, &p.cq_id] {
        if *other != cq.cq_id {
            return Err(Error::IdMismatch {
                expected: cq.cq_id.clone(),
                found: other.clone(),
            });
        }
    }
    Ok(ComplexityProfile {
        c0: cq.text.chars().count(),
        c1: c1_requirement(p),
        c2: c2_linguistic(a),
        c3: c3_syntactic(a, scheme)?,
        interrogative: a.interrogative,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SetComplexity {
    pub c0: MeanStd,
    pub c1: MeanStd,
    pub c2: MeanStd,
    pub c3: MeanStd,
}

pub fn set_complexity(set: &CQSet, profiles: &BTreeMap<String, ComplexityProfile>) -> Result<SetComplexity> {
    if set.is_empty() {
        return Err(Error::EmptySet(set.set_id.clone()));
    }
    let members = set
        .sorted_members()
        .into_iter()
        .map(|id| profiles.get(id).ok_or_else(|| Error::MissingAnnotation(id.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let column = |f: fn(&ComplexityProfile) -> usize| {
        let v: Vec<f64> = members.iter().map(|p| f(p) as f64).collect();
        MeanStd::from_samples(&v).expect("non-empty set")
    };
    Ok(SetComplexity {
        c0: column(|p| p.c0),
        c1: column(|p| p.c1),
        c2: column(|p| p.c2),
        c3: column(|p| p.c3),
    })
}
