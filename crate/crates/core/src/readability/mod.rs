//! Text-unit counts and grade-level readability indices.
//!
//! FKGL and DCR are evaluated as
//!
//! ```text
//! FKGL = 11.8 * (syllables / words) + 0.39 * (words / sentences) - 15.59
//! DCR  = 0.1579 * (difficult / words * 100) + 0.0496 * (words / sentences)
//! ```
//!
//! DCR omits the classic +3.6365 step for texts with more than 5% difficult
//! words; [`ReadabilityOptions::adjusted_dcr`] turns it back on. GFI, CLI and
//! ARI use their usual textbook forms.

mod dale_chall;
mod text;

pub use dale_chall::{WordList, BUNDLED_SHA256};
pub use text::{count_sentences, syllables, words};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::CQSet;
use crate::error::{Error, Result};
use crate::stats::MeanStd;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TextCounts {
    pub sentences: usize,
    pub words: usize,
    pub syllables: usize,
    pub characters_alnum: usize,
    pub difficult_words: usize,
    pub complex_words_3syl: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReadabilityScores {
    pub fkgl: f64,
    pub dcr: f64,
    pub gfi: f64,
    pub cli: f64,
    pub ari: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadabilityOptions {
    /// Add 3.6365 to DCR when more than 5% of words are difficult.
    pub adjusted_dcr: bool,
}

pub fn text_counts(text: &str, list: &WordList) -> Result<TextCounts> {
    if text.trim().is_empty() {
        return Err(Error::EmptyInput);
    }
    let words = words(text);
    if words.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut counts = TextCounts {
        sentences: count_sentences(text),
        words: words.len(),
        syllables: 0,
        characters_alnum: 0,
        difficult_words: 0,
        complex_words_3syl: 0,
    };
    for w in &words {
        let syl = syllables(w);
        counts.syllables += syl;
        counts.characters_alnum += w.chars().filter(|c| c.is_alphanumeric()).count();
        if list.is_difficult(w) {
            counts.difficult_words += 1;
        }
        if syl >= 3 {
            counts.complex_words_3syl += 1;
        }
    }
    Ok(counts)
}

pub fn readability_scores(c: &TextCounts, opts: ReadabilityOptions) -> ReadabilityScores {
    let w = c.words as f64;
    let s = c.sentences as f64;
    let syl = c.syllables as f64;
    let difficult_pct = c.difficult_words as f64 / w * 100.0;

    let fkgl = 11.8 * (syl / w) + 0.39 * (w / s) - 15.59;
    let mut dcr = 0.1579 * difficult_pct + 0.0496 * (w / s);
    if opts.adjusted_dcr && difficult_pct > 5.0 {
        dcr += 3.6365;
    }
    let gfi = 0.4 * (w / s + 100.0 * (c.complex_words_3syl as f64 / w));
    let letters_per_100 = c.characters_alnum as f64 / w * 100.0;
    let sentences_per_100 = s / w * 100.0;
    let cli = 0.0588 * letters_per_100 - 0.296 * sentences_per_100 - 15.8;
    let ari = 4.71 * (c.characters_alnum as f64 / w) + 0.5 * (w / s) - 21.43;
    ReadabilityScores {
        fkgl,
        dcr,
        gfi,
        cli,
        ari,
    }
}

/// Per-index mean ± sample std over one set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SetReadability {
    pub fkgl: MeanStd,
    pub dcr: MeanStd,
    pub gfi: MeanStd,
    pub cli: MeanStd,
    pub ari: MeanStd,
}

pub fn set_readability(set: &CQSet, scores: &BTreeMap<String, ReadabilityScores>) -> Result<SetReadability> {
    if set.is_empty() {
        return Err(Error::EmptySet(set.set_id.clone()));
    }
    let members = set
        .sorted_members()
        .into_iter()
        .map(|id| {
            scores.get(id).ok_or_else(|| Error::UnknownId {
                source_kind: "readability scores",
                cq_id: id.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let column = |f: fn(&ReadabilityScores) -> f64| {
        let v: Vec<f64> = members.iter().map(|s| f(s)).collect();
        MeanStd::from_samples(&v).expect("non-empty set")
    };
    Ok(SetReadability {
        fkgl: column(|s| s.fkgl),
        dcr: column(|s| s.dcr),
        gfi: column(|s| s.gfi),
        cli: column(|s| s.cli),
        ari: column(|s| s.ari),
    })
}
