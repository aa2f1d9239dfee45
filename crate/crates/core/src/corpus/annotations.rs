use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    /// Coarse universal POS tag (NOUN, VERB, ADP, ...).
    pub pos: String,
    /// Dependency relation label.
    pub dep: String,
    /// Zero-based index of the head token; the root points at itself.
    pub head: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Interrogative {
    Wh,
    Boolean,
    Aggregation,
    Other,
}

impl Interrogative {
    pub fn as_str(self) -> &'static str {
        match self {
            Interrogative::Wh => "WH",
            Interrogative::Boolean => "BOOLEAN",
            Interrogative::Aggregation => "AGGREGATION",
            Interrogative::Other => "OTHER",
        }
    }
}

/// Label convention of the dependency relations in an annotations file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DepScheme {
    /// ClearNLP-style labels (`prep`, `dobj`, `pobj`, ...).
    #[default]
    Classic,
    /// Universal Dependencies labels (`case`, `obj`, `obl`, ...).
    Ud,
}

/// Dependency parse of one CQ. Only constructed through validation, so the
/// tree always has exactly one root and in-range heads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseAnnotation {
    pub cq_id: String,
    pub tokens: Vec<Token>,
    pub noun_chunks: u32,
    pub interrogative: Interrogative,
}

impl ParseAnnotation {
    /// Checks the single-root, in-range and acyclic constraints.
    pub fn validate(&self) -> Result<()> {
        let cq_id = || self.cq_id.clone();
        let n = self.tokens.len();
        if n == 0 {
            return Err(Error::NoTokens { cq_id: cq_id() });
        }
        let mut root = None;
        for (i, t) in self.tokens.iter().enumerate() {
            if t.head >= n {
                return Err(Error::HeadOutOfRange {
                    cq_id: cq_id(),
                    token: i,
                    head: t.head,
                });
            }
            if t.head == i {
                if root.is_some() {
                    return Err(Error::MultipleRoots { cq_id: cq_id() });
                }
                root = Some(i);
            }
        }
        if root.is_none() {
            return Err(Error::NoRoot { cq_id: cq_id() });
        }
        if self.depths().is_none() {
            return Err(Error::CyclicTree { cq_id: cq_id() });
        }
        Ok(())
    }

    pub fn root(&self) -> Option<usize> {
        self.tokens
            .iter()
            .enumerate()
            .find(|(i, t)| t.head == *i)
            .map(|(i, _)| i)
    }

    /// Depth (edges from the root) of every token, or `None` when some token
    /// cannot reach the root.
    pub fn depths(&self) -> Option<Vec<usize>> {
        let n = self.tokens.len();
        let root = self.root()?;
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, t) in self.tokens.iter().enumerate() {
            if i != root {
                children.get_mut(t.head)?.push(i);
            }
        }
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        let mut stack = vec![root];
        while let Some(node) = stack.pop() {
            for &c in &children[node] {
                depth[c] = depth[node] + 1;
                stack.push(c);
            }
        }
        depth.iter().all(|d| *d != usize::MAX).then_some(depth)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Cardinality {
    Single,
    Multiple,
    Existence,
}

/// Ontological primitives demanded by one CQ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequirementPrimitives {
    #[serde(default)]
    pub cq_id: String,
    #[serde(default)]
    pub concepts: Vec<String>,
    #[serde(default)]
    pub properties: Vec<String>,
    #[serde(default)]
    pub relationships: Vec<String>,
    #[serde(default)]
    pub filters: Vec<String>,
    pub cardinality: Cardinality,
    #[serde(default)]
    pub aggregation: bool,
}

impl RequirementPrimitives {
    pub fn validate(&self) -> Result<()> {
        for (field, list) in [
            ("concepts", &self.concepts),
            ("properties", &self.properties),
            ("relationships", &self.relationships),
            ("filters", &self.filters),
        ] {
            let mut seen = HashSet::new();
            for v in list {
                if !seen.insert(v.to_lowercase()) {
                    return Err(Error::DuplicatePrimitive {
                        cq_id: self.cq_id.clone(),
                        field,
                        value: v.clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct RawFile {
    #[serde(default)]
    dep_scheme: DepScheme,
    cqs: Vec<RawEntry>,
}

#[derive(Deserialize)]
struct RawEntry {
    cq_id: String,
    tokens: Vec<Token>,
    noun_chunks: u32,
    interrogative: Interrogative,
    primitives: RequirementPrimitives,
}

/// Parses and primitives keyed by cq_id, plus the file's label scheme.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AnnotationSet {
    pub dep_scheme: DepScheme,
    pub parses: BTreeMap<String, ParseAnnotation>,
    pub primitives: BTreeMap<String, RequirementPrimitives>,
}

impl AnnotationSet {
    pub fn len(&self) -> usize {
        self.parses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parses.is_empty()
    }
}

/// Loads an annotations file. When `dataset` is given, entries for unknown
/// cq_ids are rejected.
pub fn load_annotations(path: impl AsRef<Path>, dataset: Option<&Dataset>) -> Result<AnnotationSet> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_annotations(&text, dataset)
}

pub fn parse_annotations(json: &str, dataset: Option<&Dataset>) -> Result<AnnotationSet> {
    let raw: RawFile = serde_json::from_str(json).map_err(|e| Error::json("annotations", e))?;
    let mut out = AnnotationSet {
        dep_scheme: raw.dep_scheme,
        ..Default::default()
    };
    for entry in raw.cqs {
        if let Some(ds) = dataset {
            if !ds.contains(&entry.cq_id) {
                return Err(Error::UnknownId {
                    source_kind: "annotations",
                    cq_id: entry.cq_id,
                });
            }
        }
        if out.parses.contains_key(&entry.cq_id) {
            return Err(Error::DuplicateId(entry.cq_id));
        }
        let parse = ParseAnnotation {
            cq_id: entry.cq_id.clone(),
            tokens: entry.tokens,
            noun_chunks: entry.noun_chunks,
            interrogative: entry.interrogative,
        };
        parse.validate()?;
        let mut prims = entry.primitives;
        prims.cq_id = entry.cq_id.clone();
        prims.validate()?;
        out.parses.insert(entry.cq_id.clone(), parse);
        out.primitives.insert(entry.cq_id, prims);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(cq_id: &str, tokens: &str) -> String {
        format!(
            r#"{{"cq_id":"{cq_id}","tokens":{tokens},"noun_chunks":1,"interrogative":"WH",
               "primitives":{{"concepts":["Item"],"properties":[],"relationships":[],"filters":[],
               "cardinality":"SINGLE","aggregation":false}}}}"#
        )
    }

    fn file(entries: &[String]) -> String {
        format!(r#"{{"cqs":[{}]}}"#, entries.join(","))
    }

    #[test]
    fn root_only_tree_is_valid() {
        let json = file(&[entry(
            "q1",
            r#"[{"surface":"What","pos":"PRON","dep":"ROOT","head":0}]"#,
        )]);
        let set = parse_annotations(&json, None).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.parses["q1"].depths().unwrap(), [0]);
        assert_eq!(set.dep_scheme, DepScheme::Classic);
    }

    #[test]
    fn head_past_end_is_rejected() {
        let json = file(&[entry(
            "q1",
            r#"[{"surface":"What","pos":"PRON","dep":"ROOT","head":0},
                {"surface":"?","pos":"PUNCT","dep":"punct","head":2}]"#,
        )]);
        let err = parse_annotations(&json, None).unwrap_err();
        assert!(err.to_string().contains("head out of range"), "{err}");
    }

    #[test]
    fn missing_root_and_cycles_are_rejected() {
        let no_root = file(&[entry(
            "q1",
            r#"[{"surface":"a","pos":"X","dep":"x","head":1},{"surface":"b","pos":"X","dep":"x","head":0}]"#,
        )]);
        assert!(matches!(
            parse_annotations(&no_root, None).unwrap_err(),
            Error::NoRoot { .. }
        ));
        let cycle = file(&[entry(
            "q1",
            r#"[{"surface":"a","pos":"X","dep":"ROOT","head":0},
                {"surface":"b","pos":"X","dep":"x","head":2},
                {"surface":"c","pos":"X","dep":"x","head":1}]"#,
        )]);
        assert!(matches!(
            parse_annotations(&cycle, None).unwrap_err(),
            Error::CyclicTree { .. }
        ));
    }

    #[test]
    fn duplicates_are_rejected() {
        let tok = r#"[{"surface":"What","pos":"PRON","dep":"ROOT","head":0}]"#;
        let json = file(&[entry("q1", tok), entry("q1", tok)]);
        assert!(matches!(
            parse_annotations(&json, None).unwrap_err(),
            Error::DuplicateId(_)
        ));

        let dup_prim = r#"{"cqs":[{"cq_id":"q","tokens":[{"surface":"W","pos":"X","dep":"ROOT","head":0}],
            "noun_chunks":0,"interrogative":"OTHER","primitives":{"concepts":["Item","item"],
            "cardinality":"MULTIPLE"}}]}"#;
        assert!(matches!(
            parse_annotations(dup_prim, None).unwrap_err(),
            Error::DuplicatePrimitive { field: "concepts", .. }
        ));
    }

    #[test]
    fn unknown_ids_rejected_against_dataset() {
        let csv = "cq_id,set_id,text,rater1,rater2,rater3,commented,ambiguous,relevance\n\
                   q1,S,What?,1,1,1,false,false,4\n";
        let ds = crate::corpus::read_dataset(csv.as_bytes(), Default::default()).unwrap();
        let tok = r#"[{"surface":"What","pos":"PRON","dep":"ROOT","head":0}]"#;
        assert!(parse_annotations(&file(&[entry("q1", tok)]), Some(&ds)).is_ok());
        assert!(matches!(
            parse_annotations(&file(&[entry("q2", tok)]), Some(&ds)).unwrap_err(),
            Error::UnknownId { .. }
        ));
    }
}
