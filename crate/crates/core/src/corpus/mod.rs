//! CQ data model plus loaders for the dataset CSV, the annotations JSON and
//! the embeddings file.

mod annotations;
mod dataset;
mod embeddings;

pub use annotations::{
    load_annotations, parse_annotations, AnnotationSet, Cardinality, DepScheme, Interrogative, ParseAnnotation,
    RequirementPrimitives, Token,
};
pub use dataset::{load_dataset, read_dataset, write_dataset, Dataset, RatingEncoding};
pub use embeddings::{load_embeddings, parse_embeddings_json, EmbeddingStore, EmbeddingVector};

use serde::{Deserialize, Serialize};

/// One competency question with its expert ratings and flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompetencyQuestion {
    pub cq_id: String,
    pub set_id: String,
    pub text: String,
    /// One vote per annotator: +1 accept, -1 reject.
    pub ratings: Vec<i8>,
    pub commented: bool,
    pub ambiguous: bool,
    /// 1..=4 when judged.
    pub relevance: Option<u8>,
    /// Extra CSV columns, carried through untouched.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub metadata: Vec<(String, String)>,
}

/// An elicitation set: its id and member cq_ids in file order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CQSet {
    pub set_id: String,
    pub members: Vec<String>,
}

impl CQSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in canonical (cq_id-sorted) order.
    pub fn sorted_members(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = self.members.iter().map(String::as_str).collect();
        ids.sort_unstable();
        ids
    }
}
