//! Descriptive statistics and cross-feature analysis.

mod features;
mod summary;

pub use features::{correlate, minmax_profiles, Correlation, CorrelationReport, Feature, FeatureVector, SetProfile};
pub use summary::{compensated_sum, mean, pearson, sample_std, MeanStd};
