//! Dale-Chall familiar-word list and the difficult-word rule.

use std::collections::HashSet;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

const BUNDLED: &str = include_str!("../../data/dale_chall.txt");

/// SHA-256 of the bundled list file.
pub const BUNDLED_SHA256: &str = "9c75ec6f1a0e7200bc677a4d100a9b13f864db57d800087b10d30b017a856360";

#[derive(Debug, Clone)]
pub struct WordList {
    words: HashSet<String>,
    checksum: String,
}

impl WordList {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::parse(&text))
    }

    /// One word per line; blank lines ignored, entries lowercased.
    pub fn parse(text: &str) -> Self {
        let words = text
            .lines()
            .map(|l| l.trim().to_lowercase())
            .filter(|l| !l.is_empty())
            .collect();
        let checksum = format!("{:x}", Sha256::digest(text.as_bytes()));
        Self { words, checksum }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn checksum(&self) -> &str {
        &self.checksum
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    /// True when `word` (any case) is on the list directly or after undoing a
    /// simple inflection. Tokens containing digits count as familiar.
    pub fn is_familiar(&self, word: &str) -> bool {
        let w = word.to_lowercase().replace('\u{2019}', "'");
        if w.chars().any(|c| c.is_ascii_digit()) {
            return true;
        }
        if self.familiar_form(&w) {
            return true;
        }
        if w.contains('-') {
            return w.split('-').filter(|p| !p.is_empty()).all(|p| self.familiar_form(p));
        }
        false
    }

    pub fn is_difficult(&self, word: &str) -> bool {
        !self.is_familiar(word)
    }

    fn familiar_form(&self, w: &str) -> bool {
        if self.contains(w) {
            return true;
        }
        let w = w.strip_suffix("'s").unwrap_or(w);
        if self.contains(w) {
            return true;
        }
        inflection_stems(w).iter().any(|s| self.contains(s))
    }
}

fn undouble(stem: &str) -> Option<String> {
    let b = stem.as_bytes();
    let n = b.len();
    (n >= 2 && b[n - 1] == b[n - 2] && !b"aeiou".contains(&b[n - 1])).then(|| stem[..n - 1].to_string())
}

/// Candidate base forms for -s, -es, -ies, -ed, -ied and -ing endings,
/// including silent-e restoration and consonant-doubling undo.
fn inflection_stems(w: &str) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(s) = w.strip_suffix("ies") {
        out.push(format!("{s}y"));
    }
    if let Some(s) = w.strip_suffix("es") {
        out.push(s.to_string());
    }
    if let Some(s) = w.strip_suffix('s') {
        out.push(s.to_string());
    }
    if let Some(s) = w.strip_suffix("ied") {
        out.push(format!("{s}y"));
    }
    for suffix in ["ed", "ing"] {
        if let Some(s) = w.strip_suffix(suffix) {
            if s.is_empty() {
                continue;
            }
            out.push(s.to_string());
            out.push(format!("{s}e"));
            out.extend(undouble(s));
        }
    }
    out
}
