use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Unit-norm sentence embedding of one CQ.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingVector {
    cq_id: String,
    values: Vec<f64>,
}

impl EmbeddingVector {
    /// Validates and L2-normalizes `values`.
    pub fn new(cq_id: impl Into<String>, mut values: Vec<f64>) -> Result<Self> {
        let cq_id = cq_id.into();
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { cq_id, index });
        }
        let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector { cq_id });
        }
        values.iter_mut().for_each(|v| *v /= norm);
        Ok(Self { cq_id, values })
    }

    pub fn cq_id(&self) -> &str {
        &self.cq_id
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// All embeddings of a run, keyed by cq_id.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingStore {
    dim: usize,
    vectors: BTreeMap<String, EmbeddingVector>,
}

impl EmbeddingStore {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            vectors: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, v: EmbeddingVector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                cq_id: v.cq_id,
                expected: self.dim,
                found: v.values.len(),
            });
        }
        if self.vectors.contains_key(&v.cq_id) {
            return Err(Error::DuplicateId(v.cq_id));
        }
        self.vectors.insert(v.cq_id.clone(), v);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, cq_id: &str) -> Option<&EmbeddingVector> {
        self.vectors.get(cq_id)
    }

    pub fn require(&self, cq_id: &str) -> Result<&EmbeddingVector> {
        self.get(cq_id)
            .ok_or_else(|| Error::MissingEmbedding(cq_id.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &EmbeddingVector> {
        self.vectors.values()
    }

    /// Largest deviation of any vector's norm from 1.
    pub fn max_norm_error(&self) -> f64 {
        self.iter().map(|v| (v.norm() - 1.0).abs()).fold(0.0, f64::max)
    }
}

#[derive(Deserialize)]
struct JsonVectors {
    dim: usize,
    vectors: BTreeMap<String, Vec<f64>>,
}

#[derive(Deserialize)]
struct BinarySidecar {
    dim: usize,
    ids: Vec<String>,
    /// Path of the raw little-endian f32 file, relative to the sidecar.
    data: String,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EmbeddingFile {
    Binary(BinarySidecar),
    Json(JsonVectors),
}

/// Loads embeddings from the JSON form or from a binary sidecar, checking
/// every vector against `expected_dim`.
pub fn load_embeddings(path: impl AsRef<Path>, expected_dim: Option<usize>) -> Result<EmbeddingStore> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let file: EmbeddingFile = serde_json::from_str(&text).map_err(|e| Error::json("embeddings", e))?;
    match file {
        EmbeddingFile::Json(j) => build_store(j.dim, expected_dim, j.vectors),
        EmbeddingFile::Binary(b) => {
            let data_path = path.parent().unwrap_or(Path::new(".")).join(&b.data);
            let bytes = std::fs::read(&data_path).map_err(|e| Error::io(&data_path, e))?;
            if bytes.len() != b.ids.len() * b.dim * 4 {
                return Err(Error::DimensionMismatch {
                    cq_id: "<binary payload>".into(),
                    expected: b.ids.len() * b.dim * 4,
                    found: bytes.len(),
                });
            }
            let floats: Vec<f64> = bytes
                .chunks_exact(4)
                .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]) as f64)
                .collect();
            let rows = b
                .ids
                .into_iter()
                .zip(floats.chunks(b.dim.max(1)).map(<[f64]>::to_vec))
                .collect::<Vec<_>>();
            build_store(b.dim, expected_dim, rows)
        }
    }
}

/// Parses the JSON embeddings form from a string.
pub fn parse_embeddings_json(json: &str, expected_dim: Option<usize>) -> Result<EmbeddingStore> {
    let j: JsonVectors = serde_json::from_str(json).map_err(|e| Error::json("embeddings", e))?;
    build_store(j.dim, expected_dim, j.vectors)
}

fn build_store(
    declared: usize,
    expected: Option<usize>,
    rows: impl IntoIterator<Item = (String, Vec<f64>)>,
) -> Result<EmbeddingStore> {
    let dim = expected.unwrap_or(declared);
    if declared != dim {
        return Err(Error::DimensionMismatch {
            cq_id: "<declared dim>".into(),
            expected: dim,
            found: declared,
        });
    }
    let mut store = EmbeddingStore::new(dim);
    for (id, values) in rows {
        if values.len() != dim {
            return Err(Error::DimensionMismatch {
                cq_id: id,
                expected: dim,
                found: values.len(),
            });
        }
        store.insert(EmbeddingVector::new(id, values)?)?;
    }
    Ok(store)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_four_five() {
        let mut v = vec![3.0, 4.0];
        v.extend(std::iter::repeat_n(0.0, 382));
        let e = EmbeddingVector::new("q", v).unwrap();
        assert!((e.values()[0] - 0.6).abs() < 1e-15);
        assert!((e.values()[1] - 0.8).abs() < 1e-15);
        assert!(e.values()[2..].iter().all(|x| *x == 0.0));
    }

    #[test]
    fn degenerate_vectors() {
        let err = EmbeddingVector::new("q", vec![0.0; 4]).unwrap_err();
        assert_eq!(err.to_string(), "q: zero vector");
        assert!(matches!(
            EmbeddingVector::new("q", vec![1.0, f64::NAN]).unwrap_err(),
            Error::NonFinite { index: 1, .. }
        ));
    }

    #[test]
    fn json_dimension_checks() {
        let ok = r#"{"dim":2,"vectors":{"a":[1,1],"b":[0,2]}}"#;
        let store = parse_embeddings_json(ok, Some(2)).unwrap();
        assert_eq!(store.len(), 2);
        assert!(store.max_norm_error() < 1e-12);
        assert!(parse_embeddings_json(ok, Some(3)).is_err());
        let ragged = r#"{"dim":2,"vectors":{"a":[1,1,1]}}"#;
        assert!(matches!(
            parse_embeddings_json(ragged, None).unwrap_err(),
            Error::DimensionMismatch { found: 3, .. }
        ));
    }

    #[test]
    fn binary_sidecar() {
        let dir = tempfile::tempdir().unwrap();
        let data: Vec<u8> = [3.0f32, 4.0, 0.0, 2.0].iter().flat_map(|f| f.to_le_bytes()).collect();
        std::fs::write(dir.path().join("v.f32"), data).unwrap();
        let sidecar = dir.path().join("emb.json");
        std::fs::write(&sidecar, r#"{"dim":2,"ids":["x","y"],"data":"v.f32"}"#).unwrap();
        let store = load_embeddings(&sidecar, Some(2)).unwrap();
        assert_eq!(store.get("x").unwrap().values(), [0.6, 0.8]);
        assert_eq!(store.get("y").unwrap().values(), [0.0, 1.0]);

        std::fs::write(&sidecar, r#"{"dim":3,"ids":["x","y"],"data":"v.f32"}"#).unwrap();
        assert!(load_embeddings(&sidecar, None).is_err());
    }
}
