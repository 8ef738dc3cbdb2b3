//! The problem document: one algebra, its Levi splitting and an element.
//!
//! ```json
//! { "dim": 3, "basis": ["p", "q", "z"],
//!   "brackets": { "0,1": [[2, "1"]] },
//!   "levi": [], "nilradical": [0, 1, 2],
//!   "element": ["0", "0", "1"] }
//! ```
//!
//! Only pairs `i < j` may appear in `brackets`; omitted pairs bracket to zero.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use exact_linalg::Rational;
use lie_core::{Element, LeviData, LieAlgebra, LieError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl ToString) -> InstanceError {
    InstanceError::Field { field: field.into(), message: message.to_string() }
}

/// Wire form of a problem, field for field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: BTreeMap<String, Vec<(usize, Rational)>>,
    pub levi: Vec<usize>,
    pub nilradical: Vec<usize>,
    pub element: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemInstance {
    pub name: String,
    pub algebra: LieAlgebra,
    pub levi_data: LeviData,
    pub element: Element,
}

impl ProblemInstance {
    /// Reads a problem file; the instance is named after the file stem.
    pub fn load(path: &Path) -> Result<Self, InstanceError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| InstanceError::Io { path: path.to_path_buf(), source })?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "instance".to_string());
        Self::parse(&name, &text)
    }

    pub fn parse(name: &str, text: &str) -> Result<Self, InstanceError> {
        let doc: Document = serde_json::from_str(text)?;
        Self::from_document(name, doc)
    }

    pub fn from_document(name: &str, doc: Document) -> Result<Self, InstanceError> {
        let dim = doc.dim;
        if doc.basis.len() != dim {
            return Err(field_err("basis", format!("has {} names, dim is {dim}", doc.basis.len())));
        }
        if doc.element.len() != dim {
            return Err(field_err(
                "element",
                format!("has {} coordinates, dim is {dim}", doc.element.len()),
            ));
        }
        let mut pairs = Vec::with_capacity(doc.brackets.len());
        for (key, entries) in doc.brackets {
            let field = format!("brackets.\"{key}\"");
            let (i, j) = parse_pair(&key).ok_or_else(|| field_err(&field, "key must be \"i,j\""))?;
            if i >= j {
                return Err(field_err(&field, "only pairs with i < j may appear"));
            }
            if j >= dim {
                return Err(field_err(&field, format!("index {j} out of range for dim {dim}")));
            }
            if let Some((k, _)) = entries.iter().find(|(k, _)| *k >= dim) {
                return Err(field_err(&field, format!("index {k} out of range for dim {dim}")));
            }
            pairs.push(((i, j), entries));
        }
        let algebra = LieAlgebra::new(doc.basis, pairs).map_err(|e| match e {
            LieError::DuplicateName(_) => field_err("basis", e),
            e => field_err("brackets", e),
        })?;
        for (field, idx) in [("levi", &doc.levi), ("nilradical", &doc.nilradical)] {
            if let Some(i) = idx.iter().find(|&&i| i >= dim) {
                return Err(field_err(field, format!("index {i} out of range for dim {dim}")));
            }
        }
        let levi_data = LeviData::from_indices(dim, &doc.levi, &doc.nilradical)
            .map_err(|e| field_err("levi", e))?;
        Ok(ProblemInstance {
            name: name.to_string(),
            algebra,
            levi_data,
            element: Element::new(doc.element),
        })
    }

    /// The document this instance was read from, when its Levi data are
    /// spans of basis vectors.
    pub fn to_document(&self) -> Option<Document> {
        let dim = self.algebra.dim();
        let indices = |s: &exact_linalg::Subspace| -> Option<Vec<usize>> {
            let basis = s.basis_vectors();
            basis
                .iter()
                .map(|v| {
                    let nz: Vec<usize> = (0..dim).filter(|&i| !v[i].is_zero()).collect();
                    (nz.len() == 1 && v[nz[0]].is_one()).then(|| nz[0])
                })
                .collect()
        };
        Some(Document {
            dim,
            basis: self.algebra.basis_names().to_vec(),
            brackets: self
                .algebra
                .brackets()
                .map(|(&(i, j), v)| (format!("{i},{j}"), v.clone()))
                .collect(),
            levi: indices(self.levi_data.levi())?,
            nilradical: indices(self.levi_data.nilradical())?,
            element: self.element.coords().to_vec(),
        })
    }
}

fn parse_pair(key: &str) -> Option<(usize, usize)> {
    let (i, j) = key.split_once(',')?;
    Some((i.trim().parse().ok()?, j.trim().parse().ok()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::q;

    const HEISENBERG: &str = r#"{
        "dim": 3, "basis": ["p", "q", "z"],
        "brackets": { "0,1": [[2, "1"]] },
        "levi": [], "nilradical": [0, 1, 2],
        "element": ["0", "0", "1"]
    }"#;

    #[test]
    fn parses_heisenberg() {
        let inst = ProblemInstance::parse("h", HEISENBERG).unwrap();
        assert_eq!(inst.algebra.dim(), 3);
        assert_eq!(inst.algebra.basis_bracket(0, 1), vec![q(0, 1), q(0, 1), q(1, 1)]);
        assert_eq!(inst.levi_data.nilradical().dim(), 3);
        assert_eq!(inst.element, Element::from_i64(&[0, 0, 1]));
        let doc = inst.to_document().unwrap();
        assert_eq!(ProblemInstance::from_document("h", doc).unwrap(), inst);
    }

    #[test]
    fn reports_field_context() {
        let err = |text: &str| ProblemInstance::parse("x", text).unwrap_err().to_string();
        assert!(err(&HEISENBERG.replace("\"0,1\"", "\"1,0\"")).contains("brackets.\"1,0\""));
        assert!(err(&HEISENBERG.replace("\"0,1\"", "\"0;1\"")).contains("key must be"));
        assert!(err(&HEISENBERG.replace("[[2, \"1\"]]", "[[5, \"1\"]]")).contains("out of range"));
        assert!(err(&HEISENBERG.replace("\"z\"", "\"p\"")).contains("field `basis`"));
        assert!(err(&HEISENBERG.replace("\"dim\": 3", "\"dim\": 4")).contains("field `basis`"));
        assert!(err(&HEISENBERG.replace("\"0\", \"0\", \"1\"", "\"0\", \"1\"")).contains("element"));
        assert!(err(&HEISENBERG.replace("[0, 1, 2]", "[0, 1, 7]")).contains("nilradical"));
        assert!(err(&HEISENBERG.replace("\"1\"]]", "\"1/0\"]]")).contains("line"));
        let truncated = &HEISENBERG[..HEISENBERG.len() / 2];
        let msg = err(truncated);
        assert!(msg.starts_with("parse error") && msg.contains("line"), "{msg}");
        let extra = HEISENBERG.replacen('{', "{ \"extra\": 1,", 1);
        assert!(err(&extra).contains("unknown field"));
    }
}
