//! JSON algebra files: `{"field", "dim", "basis", "mult": [[i, j, k, "c"]], "tags"?}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Algebra, StructureConstant};
use crate::error::{Error, Result};
use crate::exactmath::{FieldSpec, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularTag {
    /// Dimension of the ring part; the module part follows it.
    pub ring_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingTag {
    pub size: usize,
    /// One `size × size` matrix of literals per basis element.
    pub images: Vec<Vec<Vec<String>>>,
}

/// Optional metadata attached by the construction that produced an algebra.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tags {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    /// Distinguished subspaces as lists of basis vectors.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subspaces: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangular: Option<TriangularTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingTag>,
}

impl Tags {
    pub fn is_empty(&self) -> bool {
        *self == Tags::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub dim: usize,
    pub basis: Vec<String>,
    pub mult: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Tags::is_empty")]
    pub tags: Tags,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_algebra(a: &Algebra) -> Self {
        AlgebraFile {
            field: a.field().clone(),
            dim: a.dim(),
            basis: a.names().to_vec(),
            mult: a
                .constants()
                .iter()
                .map(|sc| (sc.i, sc.j, sc.k, sc.coeff.to_string()))
                .collect(),
            tags: Tags::default(),
        }
    }

    pub fn to_algebra(&self) -> Result<Algebra> {
        if self.dim != self.basis.len() {
            return Err(Error::Dimension {
                expected: self.dim,
                found: self.basis.len(),
            });
        }
        let constants = self
            .mult
            .iter()
            .map(|(i, j, k, c)| {
                let coeff = self.field.parse(c).map_err(|e| {
                    Error::InvalidAlgebra(format!("entry ({i}, {j}, {k}, {c:?}): {e}"))
                })?;
                Ok(StructureConstant {
                    i: *i,
                    j: *j,
                    k: *k,
                    coeff,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Algebra::new(&self.field, self.basis.clone(), constants)
    }

    /// Named tagged subspace, parsed in this file's field.
    pub fn subspace(&self, name: &str) -> Result<Option<Subspace>> {
        let Some(rows) = self.tags.subspaces.get(name) else {
            return Ok(None);
        };
        parse_vectors(&self.field, self.dim, rows).map(Some)
    }

    pub fn embedding_matrices(&self) -> Result<Option<(usize, Vec<Matrix>)>> {
        let Some(e) = &self.tags.embedding else {
            return Ok(None);
        };
        let mats = e
            .images
            .iter()
            .map(|m| {
                let rows = m
                    .iter()
                    .map(|r| r.iter().map(|s| self.field.parse(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                if rows.len() != e.size || rows.iter().any(|r| r.len() != e.size) {
                    return Err(Error::Format("embedding image has wrong shape".into()));
                }
                Ok(Matrix::from_rows_with_width(&self.field, e.size, rows))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Some((e.size, mats)))
    }
}

/// Subspace spanned by literal vectors of length `dim`.
pub(crate) fn parse_vectors(field: &FieldSpec, dim: usize, rows: &[Vec<String>]) -> Result<Subspace> {
    let vectors = rows
        .iter()
        .map(|r| {
            if r.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: r.len(),
                });
            }
            r.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Subspace::span(field, dim, vectors))
}

impl Algebra {
    pub fn to_json(&self) -> String {
        AlgebraFile::from_algebra(self).to_json()
    }

    pub fn from_json(text: &str) -> Result<Algebra> {
        AlgebraFile::parse(text)?.to_algebra()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_entry_names_triple() {
        let text = r#"{"field":{"kind":"rationals"},"dim":2,"basis":["a","b"],
            "mult":[[0,1,1,"1"],[0,1,1,"2"]]}"#;
        let err = Algebra::from_json(text).unwrap_err();
        assert_eq!(err, Error::DuplicateEntry { i: 0, j: 1, k: 1 });
        assert!(err.to_string().contains("(0, 1, 1)"));
    }

    #[test]
    fn normalizes_literals() {
        let text = r#"{"field":{"kind":"rationals"},"dim":1,"basis":["a"],"mult":[[0,0,0,"2/4"]]}"#;
        let a = Algebra::from_json(text).unwrap();
        let back = AlgebraFile::parse(&a.to_json()).unwrap();
        assert_eq!(back.mult, vec![(0, 0, 0, "1/2".to_string())]);
        assert_eq!(back.to_algebra().unwrap(), a);
    }

    #[test]
    fn syntax_error_has_position() {
        let err = Algebra::from_json("{\n  \"field\": ").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn unknown_field_rejected() {
        let text = r#"{"field":{"kind":"rationals"},"dim":0,"basis":[],"mult":[],"extra":1}"#;
        assert!(Algebra::from_json(text).is_err());
    }
}
