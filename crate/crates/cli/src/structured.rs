//! JSON form of labelled polynomial matrices.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use chowform_core::{Error, Poly, PolyMatrix, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredMatrix {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    /// Row-major entries in canonical text.
    pub entries: Vec<Vec<String>>,
}

pub fn poly_matrix_to_json(m: &PolyMatrix) -> Value {
    let s = StructuredMatrix {
        rows: m.row_labels().to_vec(),
        cols: m.col_labels().to_vec(),
        entries: (0..m.nrows())
            .map(|i| m.row(i).iter().map(ToString::to_string).collect())
            .collect(),
    };
    serde_json::to_value(s).expect("matrix serializes")
}

pub fn poly_matrix_from_json(text: &str) -> Result<PolyMatrix> {
    let s: StructuredMatrix = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if s.entries.len() != s.rows.len() || s.entries.iter().any(|r| r.len() != s.cols.len()) {
        return Err(Error::Parse("entry grid does not match the labels".into()));
    }
    let mut m = PolyMatrix::labeled(s.rows, s.cols);
    for (i, row) in s.entries.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            m[(i, j)] = e.parse::<Poly>()?;
        }
    }
    Ok(m)
}
