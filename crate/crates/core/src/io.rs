//! JSON documents for witnesses and states:
//! `{"dims": [2,2,2], "matrix": [[[re, im], ...], ...], "meta": {...}}`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::multipartite::{State, TensorShape};
use crate::witness::Witness;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub dims: Vec<usize>,
    pub matrix: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    pub meta: BTreeMap<String, Value>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &ComplexMatrix, shape: &TensorShape, meta: BTreeMap<String, Value>) -> Self {
        Self {
            dims: shape.dims().to_vec(),
            matrix: m.rows().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect(),
            meta,
        }
    }

    pub fn shape(&self) -> Result<TensorShape> {
        TensorShape::new(self.dims.clone())
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let rows = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect())
            .collect();
        let m = ComplexMatrix::from_rows(rows)?;
        self.shape()?.check_matrix(&m)?;
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

pub fn witness_document(w: &Witness) -> MatrixDocument {
    MatrixDocument::from_matrix(w.matrix(), w.shape(), w.meta().clone())
}

pub fn witness_from_document(doc: &MatrixDocument) -> Result<Witness> {
    let w = Witness::new(doc.to_matrix()?, doc.shape()?)?;
    Ok(doc.meta.iter().fold(w, |w, (k, v)| w.with_meta(k.clone(), v.clone())))
}

pub fn state_document(state: &State) -> MatrixDocument {
    let mut meta = BTreeMap::new();
    meta.insert("normalized".to_string(), Value::Bool(state.is_normalized()));
    MatrixDocument::from_matrix(state.matrix(), state.shape(), meta)
}

/// States are read as given; `meta` is informational only.
pub fn state_from_document(doc: &MatrixDocument) -> Result<State> {
    State::new(doc.to_matrix()?, doc.shape()?)
}

fn read(path: &Path) -> Result<MatrixDocument> {
    let text = fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    MatrixDocument::from_json(&text)
}

fn write(path: &Path, doc: &MatrixDocument) -> Result<()> {
    fs::write(path, doc.to_json() + "\n").map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

pub fn read_witness(path: impl AsRef<Path>) -> Result<Witness> {
    witness_from_document(&read(path.as_ref())?)
}

pub fn write_witness(path: impl AsRef<Path>, w: &Witness) -> Result<()> {
    write(path.as_ref(), &witness_document(w))
}

pub fn read_state(path: impl AsRef<Path>) -> Result<State> {
    state_from_document(&read(path.as_ref())?)
}

pub fn write_state(path: impl AsRef<Path>, state: &State) -> Result<()> {
    write(path.as_ref(), &state_document(state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kye::{witness_kye, KyeParams};
    use crate::linalg::c;

    #[test]
    fn witness_round_trip_is_exact() {
        let w = witness_kye(&KyeParams::symmetric()).unwrap();
        let text = witness_document(&w).to_json();
        let back = witness_from_document(&MatrixDocument::from_json(&text).unwrap()).unwrap();
        assert_eq!(back.matrix(), w.matrix());
        assert_eq!(back.meta(), w.meta());
        assert!(text.contains("2.8284271247461903"));
    }

    #[test]
    fn state_round_trip_through_file() {
        let m =
            ComplexMatrix::from_rows(vec![vec![c(0.5, 0.0), c(0.1, 0.2)], vec![c(0.1, -0.2), c(0.5, 0.0)]]).unwrap();
        let m = crate::linalg::kron(&m, &ComplexMatrix::identity(2).scale_real(0.5));
        let state = State::new(m, TensorShape::qubits(2)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("state.json");
        write_state(&path, &state).unwrap();
        assert_eq!(read_state(&path).unwrap().matrix(), state.matrix());
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(matches!(MatrixDocument::from_json("{"), Err(Error::Format(_))));
        let wrong_dims = r#"{"dims": [2, 2], "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}"#;
        assert!(state_from_document(&MatrixDocument::from_json(wrong_dims).unwrap()).is_err());
        let ragged = r#"{"dims": [2], "matrix": [[[1, 0]], [[0, 0], [1, 0]]]}"#;
        assert!(MatrixDocument::from_json(ragged).unwrap().to_matrix().is_err());
        let not_hermitian = r#"{"dims": [2, 2], "matrix": [[[0,0],[1,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]]}"#;
        let doc = MatrixDocument::from_json(not_hermitian).unwrap();
        assert!(matches!(state_from_document(&doc), Err(Error::NotHermitian { .. })));
        assert!(read_witness("/nonexistent/w.json").is_err());
    }
}
