use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CQSet, CompetencyQuestion};
use crate::error::{Error, Result};

/// How rater columns encode accept/reject in the CSV.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatingEncoding {
    /// -1 reject, 1 accept.
    #[default]
    PlusMinusOne,
    /// 0 reject, 1 accept.
    ZeroOne,
}

impl RatingEncoding {
    fn decode(self, raw: &str) -> Option<i8> {
        match (self, raw.trim()) {
            (RatingEncoding::PlusMinusOne, "1" | "+1") => Some(1),
            (RatingEncoding::PlusMinusOne, "-1") => Some(-1),
            (RatingEncoding::ZeroOne, "1") => Some(1),
            (RatingEncoding::ZeroOne, "0") => Some(-1),
            _ => None,
        }
    }
}

impl std::str::FromStr for RatingEncoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus-minus-one" | "pm1" => Ok(RatingEncoding::PlusMinusOne),
            "zero-one" => Ok(RatingEncoding::ZeroOne),
            other => Err(Error::InvalidConfig(format!("unknown rating encoding {other:?}"))),
        }
    }
}

/// A loaded, validated dataset. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    questions: Vec<CompetencyQuestion>,
    sets: Vec<CQSet>,
    index: HashMap<String, usize>,
    rater_count: usize,
    extra_columns: Vec<String>,
}

impl Dataset {
    /// Builds a dataset from already-parsed questions, enforcing every
    /// record invariant. Sets are derived in order of first appearance.
    pub fn from_questions(questions: Vec<CompetencyQuestion>) -> Result<Self> {
        if questions.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let rater_count = questions[0].ratings.len();
        let mut index = HashMap::with_capacity(questions.len());
        let mut sets: Vec<CQSet> = Vec::new();
        let mut set_pos: HashMap<String, usize> = HashMap::new();
        for (i, q) in questions.iter().enumerate() {
            if q.cq_id.trim().is_empty() {
                return Err(Error::MissingId { row: i + 1 });
            }
            if q.text.trim().is_empty() {
                return Err(Error::EmptyText { cq_id: q.cq_id.clone() });
            }
            if q.ratings.len() != rater_count || q.ratings.iter().any(|r| *r != 1 && *r != -1) {
                return Err(Error::InvalidRating {
                    cq_id: q.cq_id.clone(),
                    value: format!("{:?}", q.ratings),
                });
            }
            if let Some(rel) = q.relevance {
                if !(1..=4).contains(&rel) {
                    return Err(Error::InvalidRelevance {
                        cq_id: q.cq_id.clone(),
                        value: rel.to_string(),
                    });
                }
            }
            if index.insert(q.cq_id.clone(), i).is_some() {
                return Err(Error::DuplicateId(q.cq_id.clone()));
            }
            let pos = *set_pos.entry(q.set_id.clone()).or_insert_with(|| {
                sets.push(CQSet {
                    set_id: q.set_id.clone(),
                    members: Vec::new(),
                });
                sets.len() - 1
            });
            sets[pos].members.push(q.cq_id.clone());
        }
        let extra_columns = questions[0].metadata.iter().map(|(k, _)| k.clone()).collect();
        Ok(Self {
            questions,
            sets,
            index,
            rater_count,
            extra_columns,
        })
    }

    pub fn questions(&self) -> &[CompetencyQuestion] {
        &self.questions
    }

    pub fn sets(&self) -> &[CQSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.questions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.questions.is_empty()
    }

    pub fn rater_count(&self) -> usize {
        self.rater_count
    }

    pub fn get(&self, cq_id: &str) -> Option<&CompetencyQuestion> {
        self.index.get(cq_id).map(|&i| &self.questions[i])
    }

    pub fn contains(&self, cq_id: &str) -> bool {
        self.index.contains_key(cq_id)
    }

    pub fn set(&self, set_id: &str) -> Option<&CQSet> {
        self.sets.iter().find(|s| s.set_id == set_id)
    }

    /// Questions of one set, in member order.
    pub fn members<'a>(&'a self, set: &'a CQSet) -> impl Iterator<Item = &'a CompetencyQuestion> + 'a {
        set.members.iter().filter_map(move |id| self.get(id))
    }

    /// Restricts the dataset to the named sets, in the given order.
    pub fn select_sets(&self, names: &[String]) -> Result<Vec<CQSet>> {
        names
            .iter()
            .map(|n| self.set(n).cloned().ok_or_else(|| Error::UnknownSet(n.clone())))
            .collect()
    }
}

pub fn load_dataset(path: impl AsRef<Path>, encoding: RatingEncoding) -> Result<Dataset> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_dataset(file, encoding)
}

struct Columns {
    cq_id: usize,
    set_id: usize,
    text: usize,
    raters: Vec<usize>,
    commented: usize,
    ambiguous: usize,
    relevance: usize,
    extras: Vec<(usize, String)>,
}

impl Columns {
    fn from_header(header: &csv::StringRecord) -> Result<Self> {
        let find = |name: &'static str| {
            header
                .iter()
                .position(|h| h.trim() == name)
                .ok_or(Error::MissingColumn(name))
        };
        let mut raters: Vec<(usize, usize)> = header
            .iter()
            .enumerate()
            .filter_map(|(i, h)| {
                h.trim()
                    .strip_prefix("rater")
                    .and_then(|n| n.parse::<usize>().ok())
                    .map(|n| (n, i))
            })
            .collect();
        if raters.is_empty() {
            return Err(Error::MissingColumn("rater1"));
        }
        raters.sort_unstable();
        let mut cols = Columns {
            cq_id: find("cq_id")?,
            set_id: find("set_id")?,
            text: find("text")?,
            raters: raters.into_iter().map(|(_, i)| i).collect(),
            commented: find("commented")?,
            ambiguous: find("ambiguous")?,
            relevance: find("relevance")?,
            extras: Vec::new(),
        };
        let known: Vec<usize> = [
            cols.cq_id,
            cols.set_id,
            cols.text,
            cols.commented,
            cols.ambiguous,
            cols.relevance,
        ]
        .into_iter()
        .chain(cols.raters.iter().copied())
        .collect();
        cols.extras = header
            .iter()
            .enumerate()
            .filter(|(i, _)| !known.contains(i))
            .map(|(i, h)| (i, h.to_string()))
            .collect();
        Ok(cols)
    }
}

fn parse_bool(cq_id: &str, column: &'static str, raw: &str) -> Result<bool> {
    match raw.trim().to_ascii_lowercase().as_str() {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::InvalidBool {
            cq_id: cq_id.to_string(),
            column,
            value: raw.to_string(),
        }),
    }
}

/// Parses a dataset CSV from any reader.
pub fn read_dataset<R: Read>(reader: R, encoding: RatingEncoding) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let header = rdr.headers()?.clone();
    if header.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let cols = Columns::from_header(&header)?;
    let mut questions = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let field = |i: usize| rec.get(i).unwrap_or("");
        let cq_id = field(cols.cq_id).trim().to_string();
        if cq_id.is_empty() {
            return Err(Error::MissingId { row: row + 1 });
        }
        let ratings = cols
            .raters
            .iter()
            .map(|&i| {
                encoding.decode(field(i)).ok_or_else(|| Error::InvalidRating {
                    cq_id: cq_id.clone(),
                    value: field(i).to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let rel_raw = field(cols.relevance).trim();
        let relevance = if rel_raw.is_empty() {
            None
        } else {
            match rel_raw.parse::<u8>() {
                Ok(v @ 1..=4) => Some(v),
                _ => {
                    return Err(Error::InvalidRelevance {
                        cq_id,
                        value: rel_raw.to_string(),
                    })
                }
            }
        };
        questions.push(CompetencyQuestion {
            set_id: field(cols.set_id).trim().to_string(),
            text: field(cols.text).to_string(),
            ratings,
            commented: parse_bool(&cq_id, "commented", field(cols.commented))?,
            ambiguous: parse_bool(&cq_id, "ambiguous", field(cols.ambiguous))?,
            relevance,
            metadata: cols
                .extras
                .iter()
                .map(|(i, name)| (name.clone(), field(*i).to_string()))
                .collect(),
            cq_id,
        });
    }
    Dataset::from_questions(questions)
}

/// Writes the dataset in the canonical layout (ratings as -1/1, extra
/// columns appended after `relevance`).
pub fn write_dataset<W: Write>(dataset: &Dataset, writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    let mut header: Vec<String> = vec!["cq_id".into(), "set_id".into(), "text".into()];
    header.extend((1..=dataset.rater_count).map(|i| format!("rater{i}")));
    header.extend(["commented", "ambiguous", "relevance"].map(String::from));
    header.extend(dataset.extra_columns.iter().cloned());
    w.write_record(&header)?;
    for q in &dataset.questions {
        let mut rec: Vec<String> = vec![q.cq_id.clone(), q.set_id.clone(), q.text.clone()];
        rec.extend(q.ratings.iter().map(|r| r.to_string()));
        rec.push(q.commented.to_string());
        rec.push(q.ambiguous.to_string());
        rec.push(q.relevance.map(|r| r.to_string()).unwrap_or_default());
        rec.extend(q.metadata.iter().map(|(_, v)| v.clone()));
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::io("<writer>", e))?;
    Ok(())
}
