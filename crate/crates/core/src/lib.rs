//! Quantitative characterisation of competency-question (CQ) sets.
//!
//! The crate loads a CQ dataset with expert ratings, dependency/primitive
//! annotations and sentence embeddings, and computes:
//!
//! * suitability scores, acceptance and Fleiss' kappa ([`evaluation`]),
//! * readability indices ([`readability`]),
//! * four complexity facets ([`complexity`]),
//! * internal diversity and pairwise coverage over embeddings ([`semantics`]),
//! * min-max feature profiles and Pearson correlations ([`stats`]).
//!
//! [`report`] assembles all of the above into CSV/JSON tables.

pub mod complexity;
pub mod corpus;
pub mod error;
pub mod evaluation;
pub mod exec;
pub mod readability;
pub mod report;
pub mod semantics;
pub mod stats;

pub use error::{Error, Result};
pub use exec::Execution;
